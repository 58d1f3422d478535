//! Lengths of closed curves by developing tile paths into the plane, and the
//! systole certificate built on them.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::f64::consts::FRAC_PI_2;

use super::{AssembledSurface, AssemblyError, Curve, CurveSystem};
use crate::graph;
use crate::hyperbolic::{build_polygon, HyperbolicError, Isometry, PolygonMetric};

/// Slack allowed when comparing curve lengths.
pub const DEFAULT_LENGTH_TOLERANCE: f64 = 1e-6;

/// Side pairings of a polygon, indexed `to · 2q + from`.
struct PairingTable {
    sides: usize,
    maps: Vec<Option<Isometry>>,
}

impl PairingTable {
    fn new(poly: &PolygonMetric) -> Self {
        let n = poly.num_sides();
        let maps = (0..n * n)
            .map(|i| {
                let (to, from) = (i / n, i % n);
                (to % 2 == from % 2).then(|| poly.side_pairing(to, from))
            })
            .collect();
        Self { sides: n, maps }
    }

    fn get(&self, to: usize, from: usize) -> &Isometry {
        self.maps[to * self.sides + from].as_ref().expect("sides of the same colour")
    }
}

impl AssembledSurface {
    /// Composite of side pairings along a tile path given by the slots it
    /// crosses. The result carries the last tile's coordinates into the first's.
    pub fn holonomy(&self, poly: &PolygonMetric, crossings: &[usize]) -> Isometry {
        let table = PairingTable::new(poly);
        self.holonomy_with(&table, crossings)
    }

    fn holonomy_with(&self, table: &PairingTable, crossings: &[usize]) -> Isometry {
        crossings.iter().fold(Isometry::identity(), |d, &c| {
            d.compose(table.get(self.side_index(c), self.side_index(self.partner(c))))
        })
    }

    /// Tile path running just left of a curve: after each side it crosses
    /// the next side of the same tile.
    pub fn left_push(&self, curve: &Curve) -> Vec<usize> {
        curve.slots.iter().map(|&s| self.next_slot(s)).collect()
    }

    /// Length of a curve on the surface tiled by the `2q`-gon with angles `θ`, `π-θ`.
    pub fn holonomy_length(&self, curve: &Curve, theta: f64) -> Result<f64, AssemblyError> {
        let poly = build_polygon(self.block().q(), theta)?;
        Ok(self.holonomy(&poly, &self.left_push(curve)).translation_length()?)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct CertificateClause {
    pub name: &'static str,
    pub passed: bool,
    pub witness: String,
}

/// Evidence that the red and blue curves are exactly the systoles of the
/// right-angled surface.
#[derive(Clone, Debug, PartialEq)]
pub struct SystoleCertificate {
    pub clauses: Vec<CertificateClause>,
    /// `p·L` for the regular right-angled `2q`-gon.
    pub systole_length: f64,
    /// Shortest curve length found by development.
    pub minimal_length: f64,
    /// Closed tile paths developed in the exhaustive check.
    pub loops_checked: usize,
}

/// Certifies that the curves of the right-angled surface are its systoles.
///
/// Clauses, in order: the block map has girth `p`; the gluing graph has
/// girth at least `p`; the gluing graph is strictly polygonal and every
/// curve closes after `p` sides; sides of the polygon two apart are at
/// distance `L` and farther ones strictly more; every closed tile path
/// crossing at most `p` sides is trivial or at least `p·L` long.
pub fn certify_systoles(x: &AssembledSurface, curves: &CurveSystem) -> Result<SystoleCertificate, AssemblyError> {
    let block = x.block();
    let (p, q) = (block.p(), block.q());
    let poly = build_polygon(q, FRAC_PI_2)?;
    let l = poly.side_length;
    let target = p as f64 * l;
    let mut clauses = Vec::new();
    let mut push = |name: &'static str, passed: bool, witness: String| {
        clauses.push(CertificateClause { name, passed, witness: witness.clone() });
        if passed {
            Ok(())
        } else {
            Err(AssemblyError::HypothesisFailed { clause: name, witness })
        }
    };

    let block_girth = block.map().girth()?.girth;
    push("block_girth", block_girth == p, format!("block map girth {block_girth}, p = {p}"))?;

    let g = x.gluing().graph();
    let gluing_girth = graph::girth_length(g);
    push(
        "gluing_girth",
        gluing_girth.is_none_or(|k| k >= p),
        format!("gluing graph girth {gluing_girth:?}, p = {p}"),
    )?;

    let strict = graph::is_strict_polygonal(g).map(|s| s.verdict).unwrap_or(false);
    let closed = curves.iter().all(|c| c.len() == p);
    push(
        "curves_close",
        strict && closed,
        format!("strictly polygonal: {strict}; all {} curves have {p} sides: {closed}", curves.len()),
    )?;

    let n = 2 * q;
    let mut worst_gap = f64::INFINITY;
    let mut one_apart_error: f64 = 0.0;
    for i in 0..n {
        for j in i + 2..n {
            let sep = (j - i).min(n + i - j);
            if sep < 2 {
                continue;
            }
            let dist = poly.side_distance(i, j)?;
            if sep == 2 {
                one_apart_error = one_apart_error.max((dist - l).abs());
            } else {
                worst_gap = worst_gap.min(dist - l);
            }
        }
    }
    push(
        "side_separation",
        one_apart_error < DEFAULT_LENGTH_TOLERANCE && worst_gap > DEFAULT_LENGTH_TOLERANCE,
        format!("|d - L| = {one_apart_error:e} at separation 2; min excess {worst_gap:e} beyond"),
    )?;

    let table = PairingTable::new(&poly);
    let mut minimal_length = f64::INFINITY;
    for c in curves.iter() {
        let len = x.holonomy_with(&table, &x.left_push(c)).translation_length()?;
        minimal_length = minimal_length.min(len);
    }
    let (loops_checked, shortest) = shortest_short_loop(x, &table, p)?;
    push(
        "short_loops",
        shortest.0 >= target - DEFAULT_LENGTH_TOLERANCE,
        format!("{loops_checked} closed tile paths; shortest {:.9} via {:?}; p·L = {target:.9}", shortest.0, shortest.1),
    )?;
    minimal_length = minimal_length.min(shortest.0);

    Ok(SystoleCertificate { clauses, systole_length: target, minimal_length, loops_checked })
}

/// Develops every closed non-backtracking tile path crossing at most `max`
/// sides, returning how many were hyperbolic and the shortest one.
fn shortest_short_loop(
    x: &AssembledSurface,
    table: &PairingTable,
    max: usize,
) -> Result<(usize, (f64, Vec<usize>)), AssemblyError> {
    struct Search<'a> {
        x: &'a AssembledSurface,
        table: &'a PairingTable,
        max: usize,
        start: usize,
        path: Vec<usize>,
        count: usize,
        best: (f64, Vec<usize>),
    }
    impl Search<'_> {
        fn extend(&mut self, tile: usize, d: &Isometry) -> Result<(), AssemblyError> {
            let n = self.x.sides_per_tile();
            for k in 0..n {
                let slot = tile * n + k;
                if self.path.last().is_some_and(|&c| self.x.partner(c) == slot) {
                    continue;
                }
                let across = self.x.partner(slot);
                let next = d.compose(self.table.get(k, self.x.side_index(across)));
                self.path.push(slot);
                if self.x.tile_of(across) == self.start && across != self.path[0] {
                    match next.translation_length() {
                        Ok(len) => {
                            self.count += 1;
                            if len < self.best.0 {
                                self.best = (len, self.path.clone());
                            }
                        }
                        Err(HyperbolicError::NotHyperbolic { .. }) => {}
                        Err(e) => return Err(e.into()),
                    }
                }
                if self.path.len() < self.max {
                    self.extend(self.x.tile_of(across), &next)?;
                }
                self.path.pop();
            }
            Ok(())
        }
    }
    let mut s = Search { x, table, max, start: 0, path: Vec::new(), count: 0, best: (f64::INFINITY, Vec::new()) };
    for start in 0..x.num_tiles() {
        s.start = start;
        s.extend(start, &Isometry::identity())?;
    }
    Ok((s.count, s.best))
}
