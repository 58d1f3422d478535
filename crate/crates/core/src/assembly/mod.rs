//! Blocks glued from polygons along a map, and closed surfaces glued from blocks.
//!
//! A block has one `2q`-gon tile per vertex `x` of a map `M` of type
//! `{p, q}`. Walking counterclockwise around tile `x` from its smallest dart
//! `d_0`, with `d_{i+1} = next(d_i)`, block side `2i` is the red side
//! `red(d_i)` and side `2i + 1` is the blue side `blue(d_i)`. Blue sides are
//! glued along the edges of `M`; the red side `red(c)` lies on the boundary
//! component of the face traced by `c`, so each face of `M` becomes a
//! boundary circle made of `p` red sides.
//!
//! A closed surface takes one block per vertex of a gluing graph `G` and
//! glues boundary circles along the edges of `G`. Tiles of the surface are
//! numbered `v·|V(M)| + x`; side `k` of a tile, counted counterclockwise in
//! the surface orientation, is the *slot* `tile·2q + k`. Blocks with sign
//! `-1` are mirrored, so their slot `k` is block side `-k mod 2q`. Even
//! slots are red and odd slots are blue either way.

mod curves;
mod holonomy;
pub mod search;
mod transitivity;

use alloc::vec;
use alloc::vec::Vec;

use crate::covers::ColoredGluingGraph;
use crate::graph::HalfEdgeGraph;
use crate::maps::{MapError, RotationMap};

pub use curves::{fills_check, ComponentInfo, Curve, CurveColor, CurveSystem, FillReport};
pub use holonomy::{certify_systoles, CertificateClause, SystoleCertificate, DEFAULT_LENGTH_TOLERANCE};
pub use transitivity::{quad_transitivity, TransitivityReport, DEFAULT_CELL_CAP};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum AssemblyError {
    #[error(transparent)]
    Map(#[from] MapError),
    #[error("blocks need q >= 3, got q = {0}")]
    TypeError(usize),
    #[error("gluing graph valence does not match the {expected} boundary components of the block")]
    ValenceMismatch { expected: usize },
    #[error("gluing data is improper: {0}")]
    ColoringImproper(&'static str),
    #[error("tiling vertex around slot {slot} has {corners} corners instead of 4")]
    CornerDefect { slot: usize, corners: usize },
    #[error("blue arc at slot {arc} closes after {steps} steps instead of p")]
    BlueCurveDoesNotClose { arc: usize, steps: usize },
    #[error("red side at slot {side} closes after {steps} steps instead of p")]
    RedCurveDoesNotClose { side: usize, steps: usize },
    #[error("systole count formula gives {formula:?} but {traced} curves were traced")]
    FormulaMismatch { formula: Option<usize>, traced: usize },
    #[error("hypothesis `{clause}` failed: {witness}")]
    HypothesisFailed { clause: &'static str, witness: alloc::string::String },
    #[error("{cells} cells exceed the cap of {cap}")]
    TooLarge { cells: usize, cap: usize },
    #[error(transparent)]
    Hyperbolic(#[from] crate::hyperbolic::HyperbolicError),
}

/// The block built from a map: one tile per map vertex.
#[derive(Clone, Debug, PartialEq)]
pub struct Block {
    map: RotationMap,
    p: usize,
    q: usize,
    stars: Vec<Vec<usize>>,
    position: Vec<usize>,
    faces: Vec<Vec<usize>>,
    face_of: Vec<usize>,
    face_position: Vec<usize>,
    girth_below_p: bool,
}

/// Which side of a tile a block side is.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BlockSide {
    /// Red side on boundary component `face`, at position `position` along it.
    Red { dart: usize, face: usize, position: usize },
    /// Blue side glued along the edge of `dart`.
    Blue { dart: usize },
}

/// Builds the block of a map of type `{p, q}` with `q ≥ 3`.
pub fn build_block(m: &RotationMap) -> Result<Block, AssemblyError> {
    let t = m.map_type()?;
    if t.q < 3 {
        return Err(AssemblyError::TypeError(t.q));
    }
    let g = m.graph();
    let mut stars = Vec::with_capacity(g.num_vertices());
    let mut position = vec![0; g.num_darts()];
    for x in 0..g.num_vertices() {
        let mut star = vec![g.star(x)[0]];
        while star.len() < t.q {
            star.push(m.next(*star.last().expect("non-empty")));
        }
        for (i, &d) in star.iter().enumerate() {
            position[d] = i;
        }
        stars.push(star);
    }
    let faces = m.faces();
    let mut face_of = vec![0; g.num_darts()];
    let mut face_position = vec![0; g.num_darts()];
    for (f, face) in faces.iter().enumerate() {
        for (k, &d) in face.iter().enumerate() {
            face_of[d] = f;
            face_position[d] = k;
        }
    }
    let girth_below_p = m.girth().map_or(true, |r| r.girth < t.p);
    Ok(Block {
        map: m.clone(),
        p: t.p,
        q: t.q,
        stars,
        position,
        faces,
        face_of,
        face_position,
        girth_below_p,
    })
}

impl Block {
    pub fn map(&self) -> &RotationMap {
        &self.map
    }

    /// Red sides per boundary component.
    pub fn p(&self) -> usize {
        self.p
    }

    /// Half the number of sides of each tile.
    pub fn q(&self) -> usize {
        self.q
    }

    pub fn num_tiles(&self) -> usize {
        self.stars.len()
    }

    /// Number of boundary components, one per face of the map.
    pub fn num_boundaries(&self) -> usize {
        self.faces.len()
    }

    /// Boundary component `f` as its darts `c_0, …, c_{p-1}`; the red sides
    /// `red(c_k)` follow each other around the boundary in this order.
    pub fn boundary(&self, f: usize) -> &[usize] {
        &self.faces[f]
    }

    /// Whether the map girth is below `p`, in which case the red curves are not the shortest.
    pub fn girth_below_p(&self) -> bool {
        self.girth_below_p
    }

    /// Darts at tile `x` in counterclockwise order from the smallest.
    pub fn star(&self, x: usize) -> &[usize] {
        &self.stars[x]
    }

    pub fn side(&self, x: usize, side: usize) -> BlockSide {
        let d = self.stars[x][side / 2];
        if side.is_multiple_of(2) {
            BlockSide::Red { dart: d, face: self.face_of[d], position: self.face_position[d] }
        } else {
            BlockSide::Blue { dart: d }
        }
    }

    /// `(tile, side)` of the red side of dart `c`.
    pub fn red_side(&self, c: usize) -> (usize, usize) {
        (self.map.graph().vertex_of(c), 2 * self.position[c])
    }

    /// `(tile, side)` of the blue side of dart `d`.
    pub fn blue_side(&self, d: usize) -> (usize, usize) {
        (self.map.graph().vertex_of(d), 2 * self.position[d] + 1)
    }

    /// Blue side pairings, one per map edge.
    pub fn blue_gluings(&self) -> Vec<((usize, usize), (usize, usize))> {
        let g = self.map.graph();
        (0..g.num_edges())
            .map(|e| {
                let [a, b] = g.edge_darts(e);
                (self.blue_side(a), self.blue_side(b))
            })
            .collect()
    }

    pub(crate) fn face_of(&self, d: usize) -> usize {
        self.face_of[d]
    }

    pub(crate) fn face_position(&self, d: usize) -> usize {
        self.face_position[d]
    }
}

/// How blocks are glued: a graph `G` whose vertices carry blocks, a sign
/// per vertex, the boundary component attached along each dart of `G` and a
/// cyclic shift per edge.
///
/// Along edge `e` with darts `a` (smaller) at `u` and `b` at `w`, position
/// `k` on boundary `face(a)` of block `u` meets position `k + shift` on
/// boundary `face(b)` of block `w` when the signs differ (both boundaries run
/// the same way in block coordinates), and position `shift - k` when the
/// signs agree (the boundaries run opposite ways).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Gluing {
    graph: HalfEdgeGraph,
    sign: Vec<i8>,
    face_of_dart: Vec<usize>,
    shift: Vec<usize>,
}

impl Gluing {
    pub fn new(
        graph: HalfEdgeGraph,
        sign: Vec<i8>,
        face_of_dart: Vec<usize>,
        shift: Vec<usize>,
    ) -> Result<Self, AssemblyError> {
        if sign.len() != graph.num_vertices() || face_of_dart.len() != graph.num_darts() || shift.len() != graph.num_edges()
        {
            return Err(AssemblyError::ColoringImproper("array lengths do not match the graph"));
        }
        if sign.iter().any(|&s| s != 1 && s != -1) {
            return Err(AssemblyError::ColoringImproper("signs must be +1 or -1"));
        }
        let d = graph.valence(0);
        for v in 0..graph.num_vertices() {
            let mut faces: Vec<usize> = graph.star(v).iter().map(|&a| face_of_dart[a]).collect();
            faces.sort_unstable();
            if faces != (0..d).collect::<Vec<_>>() {
                return Err(AssemblyError::ColoringImproper("boundary labels at a vertex are not 0..d"));
            }
        }
        Ok(Self { graph, sign, face_of_dart, shift })
    }

    /// The gluing of a colored theta cover: boundary `χ - 1` along each edge, no shift.
    pub fn from_colored(c: &ColoredGluingGraph) -> Self {
        let g = c.graph().clone();
        let face_of_dart = (0..g.num_darts()).map(|a| c.edge_color(g.edge_of(a)) - 1).collect();
        let shift = vec![0; g.num_edges()];
        Self { sign: c.vertex_signs().to_vec(), face_of_dart, shift, graph: g }
    }

    pub fn graph(&self) -> &HalfEdgeGraph {
        &self.graph
    }

    pub fn sign(&self, v: usize) -> i8 {
        self.sign[v]
    }

    pub fn signs(&self) -> &[i8] {
        &self.sign
    }

    pub fn face_of_dart(&self, a: usize) -> usize {
        self.face_of_dart[a]
    }

    pub fn face_labels(&self) -> &[usize] {
        &self.face_of_dart
    }

    pub fn shift(&self, e: usize) -> usize {
        self.shift[e]
    }

    pub fn shifts(&self) -> &[usize] {
        &self.shift
    }

    /// Whether the boundary map along `e` keeps the block direction.
    pub fn preserves_direction(&self, e: usize) -> bool {
        let [a, b] = self.graph.edge_darts(e);
        self.sign[self.graph.vertex_of(a)] != self.sign[self.graph.vertex_of(b)]
    }

    /// Position on the far boundary met by position `k` of the boundary along dart `a`.
    pub fn transfer(&self, a: usize, k: usize, p: usize) -> usize {
        let e = self.graph.edge_of(a);
        let s = self.shift[e] % p;
        if self.preserves_direction(e) {
            if a == self.graph.edge_darts(e)[0] {
                (k + s) % p
            } else {
                (k + p - s) % p
            }
        } else {
            (s + p - k % p) % p
        }
    }

    /// Dart of `G` at `v` carrying boundary `f`.
    pub(crate) fn dart_for_face(&self, v: usize, f: usize) -> usize {
        *self
            .graph
            .star(v)
            .iter()
            .find(|&&a| self.face_of_dart[a] == f)
            .expect("validated bijection")
    }
}

/// A closed surface glued from copies of a block.
#[derive(Clone, Debug)]
pub struct AssembledSurface {
    block: Block,
    gluing: Gluing,
    tile_map: RotationMap,
}

/// Glues one block per vertex of the gluing graph.
pub fn assemble(block: &Block, gluing: &Gluing) -> Result<AssembledSurface, AssemblyError> {
    let g = gluing.graph();
    let d = block.num_boundaries();
    if g.regular_valence() != Some(d) {
        return Err(AssemblyError::ValenceMismatch { expected: d });
    }
    let (nm, q2, p) = (block.num_tiles(), 2 * block.q, block.p);
    let tiles = g.num_vertices() * nm;
    let side_to_slot = |v: usize, k: usize| if gluing.sign[v] == 1 { k } else { (q2 - k) % q2 };
    let slot_id = |v: usize, x: usize, side: usize| (v * nm + x) * q2 + side_to_slot(v, side);
    let mgraph = block.map.graph();

    let mut pairing = vec![usize::MAX; tiles * q2];
    for v in 0..g.num_vertices() {
        for x in 0..nm {
            for side in 0..q2 {
                let partner = match block.side(x, side) {
                    BlockSide::Blue { dart } => {
                        let (x2, side2) = block.blue_side(mgraph.theta(dart));
                        slot_id(v, x2, side2)
                    }
                    BlockSide::Red { face, position, .. } => {
                        let a = gluing.dart_for_face(v, face);
                        let b = g.theta(a);
                        let w = g.vertex_of(b);
                        let far = &block.faces[gluing.face_of_dart[b]];
                        let c = far[gluing.transfer(a, position, p)];
                        let (x2, side2) = block.red_side(c);
                        slot_id(w, x2, side2)
                    }
                };
                pairing[slot_id(v, x, side)] = partner;
            }
        }
    }
    if (0..pairing.len()).any(|s| pairing[s] == s) {
        return Err(AssemblyError::ColoringImproper("a side is glued to itself"));
    }
    if (0..pairing.len()).any(|s| pairing[pairing[s]] != s) {
        return Err(AssemblyError::ColoringImproper("side gluing is not an involution"));
    }
    let vertex_of: Vec<usize> = (0..tiles * q2).map(|s| s / q2).collect();
    let graph = HalfEdgeGraph::new(tiles, vertex_of, pairing).map_err(MapError::from)?;
    let next: Vec<usize> = (0..tiles * q2).map(|s| s - s % q2 + (s + 1) % q2).collect();
    let tile_map = RotationMap::new(graph, next)?;
    for face in tile_map.faces() {
        if face.len() != 4 {
            return Err(AssemblyError::CornerDefect { slot: face[0], corners: face.len() });
        }
    }
    Ok(AssembledSurface { block: block.clone(), gluing: gluing.clone(), tile_map })
}

impl AssembledSurface {
    pub fn block(&self) -> &Block {
        &self.block
    }

    pub fn gluing(&self) -> &Gluing {
        &self.gluing
    }

    /// Tiles as vertices, slots as darts, side pairings as edges and the
    /// counterclockwise side order as rotation. Its faces are the tiling vertices.
    pub fn tile_map(&self) -> &RotationMap {
        &self.tile_map
    }

    pub fn num_tiles(&self) -> usize {
        self.tile_map.graph().num_vertices()
    }

    pub fn sides_per_tile(&self) -> usize {
        2 * self.block.q
    }

    pub fn num_slots(&self) -> usize {
        self.tile_map.graph().num_darts()
    }

    pub fn tile_of(&self, slot: usize) -> usize {
        slot / self.sides_per_tile()
    }

    /// Side index of a slot within its tile, counterclockwise in the surface.
    pub fn side_index(&self, slot: usize) -> usize {
        slot % self.sides_per_tile()
    }

    pub fn is_red(&self, slot: usize) -> bool {
        self.side_index(slot).is_multiple_of(2)
    }

    /// The slot on the other side of the same side.
    pub fn partner(&self, slot: usize) -> usize {
        self.tile_map.graph().theta(slot)
    }

    /// Next slot counterclockwise in the same tile.
    pub fn next_slot(&self, slot: usize) -> usize {
        self.tile_map.next(slot)
    }

    /// `(block vertex of G, tile vertex of M)` of a tile.
    pub fn tile_position(&self, tile: usize) -> (usize, usize) {
        let nm = self.block.num_tiles();
        (tile / nm, tile % nm)
    }

    /// Tiling vertices, each listed as the four slots starting there.
    pub fn corners(&self) -> Vec<Vec<usize>> {
        self.tile_map.faces()
    }

    pub fn num_sides(&self) -> usize {
        self.num_slots() / 2
    }

    /// Genus from the Euler characteristic of the quadrilateral tiling, which
    /// cuts each tile into `2q` quadrilaterals around its centre.
    pub fn genus(&self) -> i64 {
        let t = self.num_tiles() as i64;
        let s = self.num_sides() as i64;
        let c = self.corners().len() as i64;
        let q2 = self.sides_per_tile() as i64;
        let vertices = t + s + c;
        let edges = q2 * t + 2 * s;
        let faces = q2 * t;
        (2 - (vertices - edges + faces)) / 2
    }

    /// `1 + |V(G)|·|V(M)|·(q-2)/4`, when that is an integer.
    pub fn genus_closed_form(&self) -> Option<i64> {
        let num = (self.num_tiles() * (self.block.q - 2)) as i64;
        (num % 4 == 0).then_some(1 + num / 4)
    }

    /// `4q(g-1) / ((q-2)p)`, when that is an integer.
    pub fn systole_count_formula(&self) -> Option<usize> {
        let g = self.genus();
        let (p, q) = (self.block.p as i64, self.block.q as i64);
        let num = 4 * q * (g - 1);
        let den = (q - 2) * p;
        (num >= 0 && num % den == 0).then(|| (num / den) as usize)
    }

    /// Checks the closed-form count against the traced curves.
    pub fn systole_count(&self, curves: &CurveSystem) -> Result<usize, AssemblyError> {
        let traced = curves.len();
        match self.systole_count_formula() {
            Some(n) if n == traced => Ok(n),
            formula => Err(AssemblyError::FormulaMismatch { formula, traced }),
        }
    }

    pub fn trace_curves(&self) -> Result<CurveSystem, AssemblyError> {
        curves::trace_curves(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::covers::{make_colored_gluing_graph, CoveringMap};
    use crate::graph::catalog as graphs;
    use crate::maps::catalog as maps;

    pub(crate) fn chain(g: usize) -> AssembledSurface {
        let block = build_block(&maps::theta_map(g + 1)).unwrap();
        let cg = make_colored_gluing_graph(&CoveringMap::identity(&graphs::theta(g + 1))).unwrap();
        assemble(&block, &Gluing::from_colored(&cg)).unwrap()
    }

    #[test]
    fn block_sides_alternate() {
        let b = build_block(&maps::tetrahedron()).unwrap();
        assert_eq!((b.p(), b.q(), b.num_boundaries()), (3, 3, 4));
        assert!(matches!(b.side(0, 0), BlockSide::Red { .. }));
        assert!(matches!(b.side(0, 1), BlockSide::Blue { .. }));
        assert!(build_block(&maps::beach_ball(2)).is_err());
    }

    #[test]
    fn chain_genus() {
        for g in 2..=8 {
            let x = chain(g);
            assert_eq!(x.genus(), g as i64);
            assert_eq!(x.genus_closed_form(), Some(g as i64));
        }
    }

    #[test]
    fn valence_mismatch() {
        let block = build_block(&maps::tetrahedron()).unwrap();
        let cg = make_colored_gluing_graph(&CoveringMap::identity(&graphs::theta(3))).unwrap();
        assert!(matches!(
            assemble(&block, &Gluing::from_colored(&cg)),
            Err(AssemblyError::ValenceMismatch { expected: 4 })
        ));
    }

    #[test]
    fn transfer_is_consistent_both_ways() {
        let g = graphs::complete(3);
        let gl = Gluing::new(g.clone(), vec![1, 1, -1], vec![0, 0, 1, 0, 1, 1], vec![1, 2, 0]).unwrap();
        for e in 0..3 {
            let [a, b] = g.edge_darts(e);
            for k in 0..3 {
                assert_eq!(gl.transfer(b, gl.transfer(a, k, 3), 3), k);
            }
        }
    }
}
