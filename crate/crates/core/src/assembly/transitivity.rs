//! Symmetry of the quadrilateral and triangle refinements of a surface tiling.

use alloc::vec::Vec;

use num_bigint::BigUint;

use super::{AssembledSurface, AssemblyError};
use crate::symmetry;

/// Largest number of slots for which the symmetry search runs by default.
pub const DEFAULT_CELL_CAP: usize = 200_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TransitivityReport {
    /// Orbits on quadrilaterals (centre, side midpoint, vertex, side midpoint).
    pub quad_orbits: usize,
    /// Orbits on triangles (centre, side midpoint, vertex).
    pub triangle_orbits: usize,
    pub quad_transitive: bool,
    pub triangle_transitive: bool,
    /// Some automorphism exchanges red and blue sides.
    pub color_swapping: bool,
    /// Order of the tiling's automorphism group, reflections included.
    pub group_order: BigUint,
}

/// Orbits of the tiling automorphisms on the refinement cells.
///
/// Colours are ignored, so an automorphism may swap red and blue; on the
/// right-angled surface the tile is regular and every such map is an isometry.
/// The quadrilateral after slot `s` is the corner between `s` and `next(s)`;
/// triangle `2s + b` is the half of side `s` at its end (`b = 0`) or start (`b = 1`).
pub fn quad_transitivity(x: &AssembledSurface, cell_cap: usize) -> Result<TransitivityReport, AssemblyError> {
    let n = x.num_slots();
    if n > cell_cap {
        return Err(AssemblyError::TooLarge { cells: n, cap: cell_cap });
    }
    let sym = x.tile_map().automorphisms();
    let mut quads: Vec<Vec<usize>> = sym.preserving.clone();
    let mut triangles: Vec<Vec<usize>> =
        sym.preserving.iter().map(|g| (0..2 * n).map(|t| 2 * g[t / 2] + t % 2).collect()).collect();
    if let Some(r) = &sym.reversing {
        quads.push((0..n).map(|s| x.tile_map().prev(r[s])).collect());
        triangles.push((0..2 * n).map(|t| 2 * r[t / 2] + 1 - t % 2).collect());
    }
    let color_swapping = sym
        .preserving
        .iter()
        .chain(sym.reversing.iter())
        .any(|g| g.iter().enumerate().any(|(s, &t)| x.is_red(s) != x.is_red(t)));
    let count = |size: usize, gens: &[Vec<usize>]| if gens.is_empty() { size } else { symmetry::orbit_count(size, gens) };
    let quad_orbits = count(n, &quads);
    let triangle_orbits = count(2 * n, &triangles);
    Ok(TransitivityReport {
        quad_orbits,
        triangle_orbits,
        quad_transitive: quad_orbits == 1,
        triangle_transitive: triangle_orbits == 1,
        color_swapping,
        group_order: sym.order,
    })
}

#[cfg(test)]
mod tests {
    use super::super::tests::chain;
    use super::*;

    #[test]
    fn chain_is_transitive() {
        for g in 2..=4 {
            let x = chain(g);
            let r = quad_transitivity(&x, DEFAULT_CELL_CAP).unwrap();
            assert!(r.quad_transitive, "g = {g}: {} quad orbits", r.quad_orbits);
            assert!(r.triangle_transitive, "g = {g}: {} triangle orbits", r.triangle_orbits);
            assert!(r.color_swapping);
            assert_eq!(r.group_order, BigUint::from(2 * x.num_slots()));
        }
    }

    #[test]
    fn cap_is_enforced() {
        assert!(matches!(quad_transitivity(&chain(2), 3), Err(AssemblyError::TooLarge { .. })));
    }
}
