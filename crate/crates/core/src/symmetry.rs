//! Isomorphism and automorphism search on dart structures.
//!
//! A [`DartStructure`] is a finite set of darts carrying a few permutations
//! (an edge involution, a rotation, ...), an optional partition of the darts
//! into groups (vertices) and an invariant initial coloring. Graphs, rotation
//! maps and polygon tilings all reduce to this form, so one search engine
//! serves all of them.
//!
//! The search is the classical individualization/refinement backtrack: both
//! sides are refined in lockstep to an equitable coloring, the first
//! non-singleton cell of the left side is split by individualizing its
//! smallest dart, and every dart of the matching right cell is tried in
//! increasing order. Automorphism groups are computed level by level along a
//! base, giving the exact order as a product of basic orbit lengths.

use alloc::collections::VecDeque;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigUint;
use num_traits::One;

/// Darts with permutations, an optional grouping and invariant colors.
#[derive(Clone, Debug)]
pub struct DartStructure {
    pub perms: Vec<Vec<usize>>,
    pub groups: Option<Vec<usize>>,
    pub colors: Vec<u32>,
}

impl DartStructure {
    pub fn new(perms: Vec<Vec<usize>>, groups: Option<Vec<usize>>, colors: Vec<u32>) -> Self {
        Self { perms, groups, colors }
    }

    pub fn len(&self) -> usize {
        self.colors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.colors.is_empty()
    }
}

struct Prepared<'a> {
    s: &'a DartStructure,
    inverses: Vec<Vec<usize>>,
    members: Vec<Vec<usize>>,
}

impl<'a> Prepared<'a> {
    fn new(s: &'a DartStructure) -> Self {
        let n = s.len();
        let inverses = s
            .perms
            .iter()
            .map(|p| {
                let mut inv = vec![0; n];
                for (d, &e) in p.iter().enumerate() {
                    inv[e] = d;
                }
                inv
            })
            .collect();
        let members = match &s.groups {
            Some(g) => {
                let count = g.iter().copied().max().map_or(0, |m| m + 1);
                let mut members = vec![Vec::new(); count];
                for (d, &v) in g.iter().enumerate() {
                    members[v].push(d);
                }
                members
            }
            None => Vec::new(),
        };
        Self { s, inverses, members }
    }

    fn signatures(&self, colors: &[u32]) -> Vec<Vec<u32>> {
        let n = self.s.len();
        let group_colors: Vec<Vec<u32>> = self
            .members
            .iter()
            .map(|m| {
                let mut c: Vec<u32> = m.iter().map(|&d| colors[d]).collect();
                c.sort_unstable();
                c
            })
            .collect();
        (0..n)
            .map(|d| {
                let mut sig = Vec::with_capacity(1 + 2 * self.s.perms.len() + 4);
                sig.push(colors[d]);
                for (p, inv) in self.s.perms.iter().zip(&self.inverses) {
                    sig.push(colors[p[d]]);
                    sig.push(colors[inv[d]]);
                }
                if let Some(g) = &self.s.groups {
                    sig.extend_from_slice(&group_colors[g[d]]);
                }
                sig
            })
            .collect()
    }
}

fn class_count(colors: &[u32]) -> usize {
    let mut c: Vec<u32> = colors.to_vec();
    c.sort_unstable();
    c.dedup();
    c.len()
}

/// Refines both colorings in lockstep. Returns `false` as soon as the two
/// sides stop looking alike.
fn refine_pair(a: &Prepared, b: &Prepared, ca: &mut Vec<u32>, cb: &mut Vec<u32>) -> bool {
    let mut classes = class_count(ca);
    loop {
        let sa = a.signatures(ca);
        let sb = b.signatures(cb);
        let mut ia: Vec<usize> = (0..sa.len()).collect();
        let mut ib: Vec<usize> = (0..sb.len()).collect();
        ia.sort_by(|&x, &y| sa[x].cmp(&sa[y]));
        ib.sort_by(|&x, &y| sb[x].cmp(&sb[y]));
        if ia.iter().zip(&ib).any(|(&x, &y)| sa[x] != sb[y]) {
            return false;
        }
        let mut next = 0u32;
        for k in 0..ia.len() {
            if k > 0 && sa[ia[k]] != sa[ia[k - 1]] {
                next += 1;
            }
            ca[ia[k]] = next;
            cb[ib[k]] = next;
        }
        let now = next as usize + 1;
        if ia.is_empty() || now == classes {
            return true;
        }
        classes = now;
    }
}

fn first_open_cell(colors: &[u32]) -> Option<u32> {
    let max = colors.iter().copied().max()?;
    let mut counts = vec![0usize; max as usize + 1];
    for &c in colors {
        counts[c as usize] += 1;
    }
    counts.iter().position(|&k| k > 1).map(|c| c as u32)
}

fn individualize(colors: &mut [u32], dart: usize) {
    let fresh = colors.iter().copied().max().map_or(0, |m| m + 1);
    colors[dart] = fresh;
}

fn verify(a: &DartStructure, b: &DartStructure, phi: &[usize]) -> bool {
    let n = a.len();
    if b.len() != n || a.perms.len() != b.perms.len() {
        return false;
    }
    let mut seen = vec![false; n];
    for &x in phi {
        if x >= n || seen[x] {
            return false;
        }
        seen[x] = true;
    }
    if (0..n).any(|d| a.colors[d] != b.colors[phi[d]]) {
        return false;
    }
    for (pa, pb) in a.perms.iter().zip(&b.perms) {
        if (0..n).any(|d| phi[pa[d]] != pb[phi[d]]) {
            return false;
        }
    }
    match (&a.groups, &b.groups) {
        (None, None) => true,
        (Some(ga), Some(gb)) => {
            let ka = ga.iter().copied().max().map_or(0, |m| m + 1);
            let kb = gb.iter().copied().max().map_or(0, |m| m + 1);
            if ka != kb {
                return false;
            }
            let mut image = vec![usize::MAX; ka];
            let mut hit = vec![false; kb];
            for d in 0..n {
                let (u, v) = (ga[d], gb[phi[d]]);
                if image[u] == usize::MAX {
                    if hit[v] {
                        return false;
                    }
                    image[u] = v;
                    hit[v] = true;
                } else if image[u] != v {
                    return false;
                }
            }
            true
        }
        _ => false,
    }
}

fn search(a: &Prepared, b: &Prepared, mut ca: Vec<u32>, mut cb: Vec<u32>) -> Option<Vec<usize>> {
    if !refine_pair(a, b, &mut ca, &mut cb) {
        return None;
    }
    match first_open_cell(&ca) {
        None => {
            let n = ca.len();
            let mut by_color = vec![usize::MAX; n];
            for (d, &c) in cb.iter().enumerate() {
                by_color[c as usize] = d;
            }
            let phi: Vec<usize> = ca.iter().map(|&c| by_color[c as usize]).collect();
            verify(a.s, b.s, &phi).then_some(phi)
        }
        Some(cell) => {
            let x = ca.iter().position(|&c| c == cell)?;
            for y in (0..cb.len()).filter(|&y| cb[y] == cell) {
                let mut ca2 = ca.clone();
                let mut cb2 = cb.clone();
                individualize(&mut ca2, x);
                individualize(&mut cb2, y);
                if let Some(phi) = search(a, b, ca2, cb2) {
                    return Some(phi);
                }
            }
            None
        }
    }
}

/// Finds a structure isomorphism `a -> b` extending the prescribed dart
/// pairs, if one exists. The result maps dart `d` of `a` to `phi[d]` of `b`.
pub fn find_isomorphism(
    a: &DartStructure,
    b: &DartStructure,
    prescribed: &[(usize, usize)],
) -> Option<Vec<usize>> {
    if a.len() != b.len() || a.perms.len() != b.perms.len() || a.groups.is_some() != b.groups.is_some() {
        return None;
    }
    let pa = Prepared::new(a);
    let pb = Prepared::new(b);
    let mut ca = a.colors.clone();
    let mut cb = b.colors.clone();
    if !refine_pair(&pa, &pb, &mut ca, &mut cb) {
        return None;
    }
    for &(x, y) in prescribed {
        if ca[x] != cb[y] {
            return None;
        }
        individualize(&mut ca, x);
        individualize(&mut cb, y);
    }
    search(&pa, &pb, ca, cb)
}

/// Generators, exact order and base of an automorphism group.
#[derive(Clone, Debug)]
pub struct GroupData {
    pub generators: Vec<Vec<usize>>,
    pub order: BigUint,
    pub base: Vec<usize>,
}

/// Orbit of `start` under the given permutations.
pub fn orbit(start: usize, gens: &[Vec<usize>]) -> Vec<usize> {
    let n = gens.first().map_or(start + 1, |g| g.len());
    let mut seen = vec![false; n];
    let mut out = vec![start];
    seen[start] = true;
    let mut queue = VecDeque::from([start]);
    while let Some(x) = queue.pop_front() {
        for g in gens {
            let y = g[x];
            if !seen[y] {
                seen[y] = true;
                out.push(y);
                queue.push_back(y);
            }
        }
    }
    out.sort_unstable();
    out
}

/// Orbit representative (the smallest member) of every point.
pub fn orbit_labels(n: usize, gens: &[Vec<usize>]) -> Vec<usize> {
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    for g in gens {
        for (x, &y) in g.iter().enumerate() {
            let (rx, ry) = (find(&mut parent, x), find(&mut parent, y));
            if rx != ry {
                let (lo, hi) = if rx < ry { (rx, ry) } else { (ry, rx) };
                parent[hi] = lo;
            }
        }
    }
    (0..n).map(|x| find(&mut parent, x)).collect()
}

/// Number of distinct orbits among `0..n`.
pub fn orbit_count(n: usize, gens: &[Vec<usize>]) -> usize {
    let labels = orbit_labels(n, gens);
    labels.iter().enumerate().filter(|&(x, &r)| x == r).count()
}

/// Full automorphism group of a dart structure.
pub fn automorphism_group(s: &DartStructure) -> GroupData {
    let p = Prepared::new(s);
    let mut colors = s.colors.clone();
    let mut scratch = s.colors.clone();
    refine_pair(&p, &p, &mut colors, &mut scratch);
    let mut order = BigUint::one();
    let mut generators = Vec::new();
    let mut base = Vec::new();
    while let Some(cell) = first_open_cell(&colors) {
        let b = colors.iter().position(|&c| c == cell).expect("cell is non-empty");
        let candidates: Vec<usize> = (0..colors.len()).filter(|&d| colors[d] == cell).collect();
        let mut level: Vec<Vec<usize>> = Vec::new();
        let mut reached = orbit(b, &level);
        for &c in &candidates {
            if reached.binary_search(&c).is_ok() {
                continue;
            }
            let mut ca = colors.clone();
            let mut cb = colors.clone();
            individualize(&mut ca, b);
            individualize(&mut cb, c);
            if let Some(phi) = search(&p, &p, ca, cb) {
                level.push(phi);
                reached = orbit(b, &level);
            }
        }
        order *= BigUint::from(reached.len());
        generators.extend(level);
        base.push(b);
        individualize(&mut colors, b);
        let mut scratch = colors.clone();
        refine_pair(&p, &p, &mut colors, &mut scratch);
    }
    GroupData { generators, order, base }
}

/// Composition `(f ∘ g)(x) = f[g[x]]`.
pub fn compose(f: &[usize], g: &[usize]) -> Vec<usize> {
    g.iter().map(|&x| f[x]).collect()
}

pub fn inverse(f: &[usize]) -> Vec<usize> {
    let mut inv = vec![0; f.len()];
    for (x, &y) in f.iter().enumerate() {
        inv[y] = x;
    }
    inv
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cycle_structure(n: usize) -> DartStructure {
        // n darts on an oriented n-cycle, rotation only
        let rot: Vec<usize> = (0..n).map(|d| (d + 1) % n).collect();
        DartStructure::new(vec![rot], None, vec![0; n])
    }

    #[test]
    fn cyclic_rotation_group() {
        let g = automorphism_group(&cycle_structure(7));
        assert_eq!(g.order, BigUint::from(7u32));
    }

    #[test]
    fn free_darts_give_symmetric_group() {
        let s = DartStructure::new(vec![], None, vec![0; 5]);
        let g = automorphism_group(&s);
        assert_eq!(g.order, BigUint::from(120u32));
        assert_eq!(orbit_count(5, &g.generators), 1);
    }

    #[test]
    fn colors_block_isomorphism() {
        let a = DartStructure::new(vec![], None, vec![0, 1]);
        let b = DartStructure::new(vec![], None, vec![1, 1]);
        assert!(find_isomorphism(&a, &b, &[]).is_none());
        assert_eq!(find_isomorphism(&a, &a, &[]), Some(vec![0, 1]));
    }

    #[test]
    fn prescribed_pairs_are_respected() {
        let s = cycle_structure(6);
        let phi = find_isomorphism(&s, &s, &[(0, 4)]).unwrap();
        assert_eq!(phi, vec![4, 5, 0, 1, 2, 3]);
    }
}
