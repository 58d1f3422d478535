//! Red and blue geodesics made of tile sides, and the fill test.

use alloc::vec;
use alloc::vec::Vec;

use super::{AssembledSurface, AssemblyError};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum CurveColor {
    Red,
    Blue,
}

/// A closed curve made of `p` sides, listed as the slots seen from the tile
/// on its left while walking once around it.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Curve {
    pub color: CurveColor,
    pub slots: Vec<usize>,
}

impl Curve {
    pub fn len(&self) -> usize {
        self.slots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.slots.is_empty()
    }

    /// Sides of the curve, each named by its smaller slot.
    pub fn sides(&self, x: &AssembledSurface) -> Vec<usize> {
        self.slots.iter().map(|&s| s.min(x.partner(s))).collect()
    }
}

/// All red curves, then all blue curves, each list sorted.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CurveSystem {
    red: Vec<Curve>,
    blue: Vec<Curve>,
    curve_of_slot: Vec<usize>,
}

impl CurveSystem {
    pub fn red(&self) -> &[Curve] {
        &self.red
    }

    pub fn blue(&self) -> &[Curve] {
        &self.blue
    }

    pub fn len(&self) -> usize {
        self.red.len() + self.blue.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Curve by combined index: red first, then blue.
    pub fn get(&self, i: usize) -> &Curve {
        if i < self.red.len() {
            &self.red[i]
        } else {
            &self.blue[i - self.red.len()]
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = &Curve> {
        self.red.iter().chain(self.blue.iter())
    }

    /// Combined index of the curve running along a slot.
    pub fn curve_of_slot(&self, slot: usize) -> usize {
        self.curve_of_slot[slot]
    }
}

fn rotate_to_min(seq: &[usize]) -> Vec<usize> {
    let i = (0..seq.len()).min_by_key(|&i| seq[i]).unwrap_or(0);
    seq[i..].iter().chain(&seq[..i]).copied().collect()
}

/// Follows every side straight through the tiling vertex at its end.
///
/// At each tiling vertex four sides meet at right angles, so the straight
/// continuation of slot `s` is two steps of the corner rotation past its partner.
pub(super) fn trace_curves(x: &AssembledSurface) -> Result<CurveSystem, AssemblyError> {
    let m = x.tile_map();
    let p = x.block().p();
    let step = |s: usize| m.face_step(m.face_step(x.partner(s)));
    let n = x.num_slots();
    let mut curve_of_slot = vec![usize::MAX; n];
    let mut found: Vec<(Curve, Vec<usize>)> = Vec::new();
    for start in 0..n {
        if curve_of_slot[start] != usize::MAX {
            continue;
        }
        let mut orbits = Vec::new();
        for s0 in [start, x.partner(start)] {
            let mut orbit = vec![s0];
            let mut s = step(s0);
            while s != s0 {
                orbit.push(s);
                if orbit.len() > p {
                    break;
                }
                s = step(s);
            }
            if orbit.len() != p {
                return Err(if x.is_red(s0) {
                    AssemblyError::RedCurveDoesNotClose { side: s0, steps: orbit.len() }
                } else {
                    AssemblyError::BlueCurveDoesNotClose { arc: s0, steps: orbit.len() }
                });
            }
            orbits.push(orbit);
        }
        let all: Vec<usize> = orbits.concat();
        let a = rotate_to_min(&orbits[0]);
        let b = rotate_to_min(&orbits[1]);
        let color = if x.is_red(start) { CurveColor::Red } else { CurveColor::Blue };
        for &s in &all {
            curve_of_slot[s] = found.len();
        }
        found.push((Curve { color, slots: a.min(b) }, all));
    }
    let mut order: Vec<usize> = (0..found.len()).collect();
    order.sort_by(|&i, &j| found[i].0.cmp(&found[j].0));
    let mut rank = vec![0; found.len()];
    for (r, &i) in order.iter().enumerate() {
        rank[i] = r;
    }
    for c in curve_of_slot.iter_mut() {
        *c = rank[*c];
    }
    let mut red = Vec::new();
    let mut blue = Vec::new();
    for i in order {
        let curve = found[i].0.clone();
        match curve.color {
            CurveColor::Red => red.push(curve),
            CurveColor::Blue => blue.push(curve),
        }
    }
    Ok(CurveSystem { red, blue, curve_of_slot })
}

/// A connected piece of the surface after cutting along some curves.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComponentInfo {
    pub tiles: Vec<usize>,
    pub euler_characteristic: i64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FillReport {
    /// Every component of the complement is an open disc.
    pub fills: bool,
    pub components: Vec<ComponentInfo>,
}

fn find(parent: &mut [usize], mut a: usize) -> usize {
    while parent[a] != a {
        parent[a] = parent[parent[a]];
        a = parent[a];
    }
    a
}

/// Cuts the surface along the chosen curves (combined indices) and reports
/// the complementary components. An open connected surface is a disc exactly
/// when its Euler characteristic is 1.
pub fn fills_check(x: &AssembledSurface, curves: &CurveSystem, subset: &[usize]) -> FillReport {
    let mut cut = vec![false; curves.len()];
    for &i in subset {
        cut[i] = true;
    }
    let is_cut = |s: usize| cut[curves.curve_of_slot(s)];
    let t = x.num_tiles();
    let mut parent: Vec<usize> = (0..t).collect();
    for s in 0..x.num_slots() {
        let o = x.partner(s);
        if s < o && !is_cut(s) {
            let (a, b) = (find(&mut parent, x.tile_of(s)), find(&mut parent, x.tile_of(o)));
            parent[a.max(b)] = a.min(b);
        }
    }
    let root: Vec<usize> = (0..t).map(|i| find(&mut parent, i)).collect();
    let mut index = vec![usize::MAX; t];
    let mut components: Vec<ComponentInfo> = Vec::new();
    for tile in 0..t {
        let r = root[tile];
        if index[r] == usize::MAX {
            index[r] = components.len();
            components.push(ComponentInfo { tiles: Vec::new(), euler_characteristic: 0 });
        }
        let c = &mut components[index[r]];
        c.tiles.push(tile);
        c.euler_characteristic += 1;
    }
    for s in 0..x.num_slots() {
        let o = x.partner(s);
        if s < o && !is_cut(s) {
            components[index[root[x.tile_of(s)]]].euler_characteristic -= 1;
        }
    }
    for corner in x.corners() {
        if corner.iter().all(|&s| !is_cut(s)) {
            components[index[root[x.tile_of(corner[0])]]].euler_characteristic += 1;
        }
    }
    let fills = components.iter().all(|c| c.euler_characteristic == 1);
    FillReport { fills, components }
}

#[cfg(test)]
mod tests {
    use super::super::tests::chain;
    use super::*;

    #[test]
    fn chain_curves() {
        for g in 2..=6 {
            let x = chain(g);
            let c = x.trace_curves().unwrap();
            assert_eq!(c.red().len(), g + 1);
            assert_eq!(c.blue().len(), g + 1);
            assert!(c.iter().all(|k| k.len() == 2));
            assert_eq!(x.systole_count(&c).unwrap(), 2 * g + 2);
            // every side lies on exactly one curve
            let mut sides: Vec<usize> = c.iter().flat_map(|k| k.sides(&x)).collect();
            sides.sort_unstable();
            sides.dedup();
            assert_eq!(sides.len(), x.num_sides());
        }
    }

    #[test]
    fn fill_extremes() {
        let x = chain(3);
        let c = x.trace_curves().unwrap();
        let none = fills_check(&x, &c, &[]);
        assert_eq!(none.components.len(), 1);
        assert_eq!(none.components[0].euler_characteristic, 2 - 2 * 3);
        let all: Vec<usize> = (0..c.len()).collect();
        let r = fills_check(&x, &c, &all);
        assert!(r.fills);
        assert_eq!(r.components.len(), x.num_tiles());
    }
}
