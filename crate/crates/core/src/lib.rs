//! Combinatorial and hyperbolic machinery for closed hyperbolic surfaces
//! assembled from right-angled polygons.
//!
//! Surfaces are built in two stages. A *block* is glued from regular
//! right-angled `2q`-gons along a flag-transitive map `M` of type `{p,q}`;
//! copies of the block are then glued along their boundary components
//! following a gluing graph `G` (usually a girth-doubling cover of a theta
//! graph). The red boundary curves and the blue arc curves are the
//! candidate systoles, and the crate provides everything needed to count
//! them, certify them, measure them by holonomy and analyse their
//! intersection pattern with exact integer arithmetic.
//!
//! The crate is `no_std` and only needs `alloc`.

#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod analysis;
pub mod assembly;
pub mod covers;
pub mod graph;
pub mod hyperbolic;
pub mod maps;
mod math;
pub mod symmetry;

pub use analysis::{CriticalityReport, IntMatrix, IntersectionData};
pub use assembly::{AssembledSurface, Block, CurveSystem, Gluing};
pub use covers::{ColoredGluingGraph, CoveringMap};
pub use graph::{Cycle, HalfEdgeGraph};
pub use hyperbolic::{Isometry, PolygonMetric};
pub use maps::RotationMap;
