use alloc::collections::{BTreeMap, BTreeSet, VecDeque};
use alloc::vec;
use alloc::vec::Vec;

use super::{GraphError, HalfEdgeGraph};

/// Girth cycles are only enumerated up to this length.
pub const MAX_ENUMERATED_GIRTH: usize = 64;

/// A closed backtrack-free dart walk, stored in canonical form.
///
/// The canonical form is the lexicographically smallest dart sequence among
/// all rotations of the walk and of its reversal, so two `Cycle`s compare
/// equal exactly when they describe the same cycle.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Cycle {
    darts: Vec<usize>,
}

impl Cycle {
    /// Validates a closed walk and canonicalizes it.
    pub fn new(g: &HalfEdgeGraph, darts: &[usize]) -> Result<Self, GraphError> {
        let k = darts.len();
        if k == 0 || darts.iter().any(|&d| d >= g.num_darts()) {
            return Err(GraphError::NoCycle);
        }
        for i in 0..k {
            let (d, e) = (darts[i], darts[(i + 1) % k]);
            if g.head(d) != g.vertex_of(e) || e == g.theta(d) {
                return Err(GraphError::NoCycle);
            }
        }
        Ok(Self { darts: canonical_form(g, darts) })
    }

    pub fn darts(&self) -> &[usize] {
        &self.darts
    }

    pub fn len(&self) -> usize {
        self.darts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.darts.is_empty()
    }

    /// Vertices visited, starting at the tail of the first dart.
    pub fn vertices(&self, g: &HalfEdgeGraph) -> Vec<usize> {
        self.darts.iter().map(|&d| g.vertex_of(d)).collect()
    }
}

/// Lexicographic minimum over rotations of the walk and its reversal.
fn canonical_form(g: &HalfEdgeGraph, darts: &[usize]) -> Vec<usize> {
    let reversed: Vec<usize> = darts.iter().rev().map(|&d| g.theta(d)).collect();
    let mut best: Option<Vec<usize>> = None;
    for seq in [darts, &reversed[..]] {
        for r in 0..seq.len() {
            let rotated: Vec<usize> = seq[r..].iter().chain(&seq[..r]).copied().collect();
            if best.as_ref().is_none_or(|b| rotated < *b) {
                best = Some(rotated);
            }
        }
    }
    best.unwrap_or_default()
}

/// Girth together with every girth cycle.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Girth {
    pub length: usize,
    pub witnesses: Vec<Cycle>,
}

/// Length of a shortest non-trivial cycle, by breadth-first search from every vertex.
pub fn girth_length(g: &HalfEdgeGraph) -> Option<usize> {
    let n = g.num_vertices();
    let mut best = usize::MAX;
    let mut dist = vec![usize::MAX; n];
    let mut parent_edge = vec![usize::MAX; n];
    for root in 0..n {
        dist.iter_mut().for_each(|x| *x = usize::MAX);
        dist[root] = 0;
        parent_edge[root] = usize::MAX;
        let mut queue = VecDeque::from([root]);
        while let Some(u) = queue.pop_front() {
            if 2 * dist[u] + 1 >= best {
                break;
            }
            for &d in g.star(u) {
                let e = g.edge_of(d);
                if e == parent_edge[u] {
                    continue;
                }
                let w = g.head(d);
                if dist[w] == usize::MAX {
                    dist[w] = dist[u] + 1;
                    parent_edge[w] = e;
                    queue.push_back(w);
                } else {
                    best = best.min(dist[u] + dist[w] + 1);
                }
            }
        }
    }
    (best != usize::MAX).then_some(best)
}

/// Girth and all girth cycles, canonical and sorted.
pub fn girth(g: &HalfEdgeGraph) -> Result<Girth, GraphError> {
    let length = girth_length(g).ok_or(GraphError::NoCycle)?;
    if length > MAX_ENUMERATED_GIRTH {
        return Err(GraphError::GirthTooLarge(length));
    }
    Ok(Girth { length, witnesses: cycles_of_length(g, length) })
}

/// All girth cycles; shorthand for `girth(g)?.witnesses`.
pub fn girth_cycles(g: &HalfEdgeGraph) -> Result<Vec<Cycle>, GraphError> {
    girth(g).map(|r| r.witnesses)
}

/// Simple cycles of length `k` (a girth cycle is always simple).
fn cycles_of_length(g: &HalfEdgeGraph, k: usize) -> Vec<Cycle> {
    let mut found = BTreeSet::new();
    let mut on_path = vec![false; g.num_vertices()];
    let mut path = Vec::with_capacity(k);
    for s in 0..g.num_vertices() {
        on_path[s] = true;
        extend(g, s, s, k, &mut path, &mut on_path, &mut found);
        on_path[s] = false;
    }
    found.into_iter().map(|darts| Cycle { darts }).collect()
}

fn extend(
    g: &HalfEdgeGraph,
    start: usize,
    at: usize,
    k: usize,
    path: &mut Vec<usize>,
    on_path: &mut [bool],
    found: &mut BTreeSet<Vec<usize>>,
) {
    let last_edge = path.last().map(|&d| g.edge_of(d));
    for &d in g.star(at) {
        if Some(g.edge_of(d)) == last_edge {
            continue;
        }
        let w = g.head(d);
        if path.len() + 1 == k {
            if w == start {
                path.push(d);
                found.insert(canonical_form(g, path));
                path.pop();
            }
        } else if w > start && !on_path[w] {
            on_path[w] = true;
            path.push(d);
            extend(g, start, w, k, path, on_path, found);
            path.pop();
            on_path[w] = false;
        }
    }
}

/// An embedded path of length two: `first` ends where `second` starts.
///
/// Stored canonically under reversal, so `(a, b)` and `(θb, θa)` coincide.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TwoPath {
    pub first: usize,
    pub second: usize,
}

impl TwoPath {
    fn canonical(g: &HalfEdgeGraph, a: usize, b: usize) -> Self {
        let fwd = (a, b);
        let rev = (g.theta(b), g.theta(a));
        let (first, second) = fwd.min(rev);
        Self { first, second }
    }
}

/// Every backtrack-free path of two non-loop edges, canonical and sorted.
///
/// The two ends may coincide when parallel edges are present, so a theta
/// graph with `d` edges has `d(d-1)` of them.
pub fn embedded_two_paths(g: &HalfEdgeGraph) -> Vec<TwoPath> {
    let mut out = BTreeSet::new();
    for m in 0..g.num_vertices() {
        let star = g.star(m);
        for &a in star {
            if g.is_loop(g.edge_of(a)) {
                continue;
            }
            for &b in star {
                if b != a && !g.is_loop(g.edge_of(b)) {
                    out.insert(TwoPath::canonical(g, g.theta(a), b));
                }
            }
        }
    }
    out.into_iter().collect()
}

/// Outcome of the strict polygonality test.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StrictPolygonal {
    pub verdict: bool,
    /// First 2-path not lying in exactly one girth cycle, with its cycle count.
    pub violation: Option<(TwoPath, usize)>,
}

/// Whether every embedded 2-path lies in exactly one girth cycle.
pub fn is_strict_polygonal(g: &HalfEdgeGraph) -> Result<StrictPolygonal, GraphError> {
    let cycles = girth_cycles(g)?;
    let mut counts: BTreeMap<TwoPath, usize> = embedded_two_paths(g).into_iter().map(|p| (p, 0)).collect();
    for c in &cycles {
        let darts = c.darts();
        let k = darts.len();
        let mut seen = BTreeSet::new();
        for i in 0..k {
            let (a, b) = (darts[i], darts[(i + 1) % k]);
            if g.is_loop(g.edge_of(a)) || g.is_loop(g.edge_of(b)) {
                continue;
            }
            let p = TwoPath::canonical(g, a, b);
            if seen.insert(p) {
                *counts.entry(p).or_insert(0) += 1;
            }
        }
    }
    let violation = counts.into_iter().find(|&(_, c)| c != 1);
    Ok(StrictPolygonal { verdict: violation.is_none(), violation })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::catalog;

    #[test]
    fn theta_girth_and_bigons() {
        let g = catalog::theta(3);
        let r = girth(&g).unwrap();
        assert_eq!(r.length, 2);
        assert_eq!(r.witnesses.len(), 3);
    }

    #[test]
    fn loop_has_girth_one() {
        let g = catalog::bouquet(1);
        let r = girth(&g).unwrap();
        assert_eq!(r.length, 1);
        assert_eq!(r.witnesses.len(), 1);
    }

    #[test]
    fn forest_has_no_cycle() {
        assert_eq!(girth(&catalog::path(4)), Err(GraphError::NoCycle));
    }

    #[test]
    fn petersen_girth_five_twelve_pentagons() {
        let r = girth(&catalog::petersen()).unwrap();
        assert_eq!(r.length, 5);
        assert_eq!(r.witnesses.len(), 12);
    }

    #[test]
    fn two_path_counts() {
        assert_eq!(embedded_two_paths(&catalog::cycle(3)).len(), 3);
        assert_eq!(embedded_two_paths(&catalog::theta(3)).len(), 6);
        assert!(embedded_two_paths(&catalog::path(2)).is_empty());
    }

    #[test]
    fn strict_polygonal_examples() {
        assert!(is_strict_polygonal(&catalog::dodecahedron_skeleton()).unwrap().verdict);
        assert!(is_strict_polygonal(&catalog::theta(2)).unwrap().verdict);
        let pet = is_strict_polygonal(&catalog::petersen()).unwrap();
        assert!(!pet.verdict);
        assert_eq!(pet.violation.unwrap().1, 2);
    }

    #[test]
    fn cycle_canonical_form_ignores_rotation_and_reversal() {
        let g = catalog::cycle(4);
        // darts 0,2,4,6 walk 0->1->2->3->0
        let a = Cycle::new(&g, &[2, 4, 6, 0]).unwrap();
        let b = Cycle::new(&g, &[7, 5, 3, 1]).unwrap();
        assert_eq!(a, b);
        assert!(Cycle::new(&g, &[0, 1]).is_err());
    }
}
