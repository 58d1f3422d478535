//! Oriented maps given by rotation systems.
//!
//! A [`RotationMap`] is a graph plus, for every dart, the next dart
//! counterclockwise around its vertex. Faces are the orbits of
//! `d ↦ next(θ(d))`.

pub mod catalog;

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigUint;

use crate::graph::{self, GraphError, HalfEdgeGraph};
use crate::symmetry::{self, DartStructure};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum MapError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("rotation at dart {dart} does not cycle through its star")]
    NotRotation { dart: usize },
    #[error("faces or valences are not uniform")]
    NotUniformType,
    #[error("unknown catalog map `{0}`")]
    UnknownName(alloc::string::String),
    #[error("invalid face list: {0}")]
    InvalidFaces(&'static str),
}

/// A graph with a cyclic order on every star.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RotationMap {
    graph: HalfEdgeGraph,
    next: Vec<usize>,
    prev: Vec<usize>,
}

/// A vertex, an edge end at it and one of the two faces along that edge.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Flag {
    pub vertex: usize,
    pub dart: usize,
    pub face: usize,
    /// 0 for the face traced by `dart`, 1 for the face traced by `θ(dart)`.
    pub side: u8,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct MapType {
    pub p: usize,
    pub q: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct MapGirth {
    pub girth: usize,
    /// Whether the girth equals the common face length.
    pub equals_face_length: bool,
}

/// Map automorphisms: orientation-preserving generators plus, when one
/// exists, a single orientation-reversing element.
#[derive(Clone, Debug)]
pub struct MapSymmetry {
    pub preserving: Vec<Vec<usize>>,
    pub reversing: Option<Vec<usize>>,
    pub order: BigUint,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FlagTransitivity {
    pub verdict: bool,
    pub orbit_count: usize,
    pub group_order: BigUint,
}

impl RotationMap {
    pub fn new(graph: HalfEdgeGraph, next: Vec<usize>) -> Result<Self, MapError> {
        let n = graph.num_darts();
        if next.len() != n {
            return Err(GraphError::LengthMismatch("rotation").into());
        }
        let mut prev = vec![usize::MAX; n];
        for (d, &e) in next.iter().enumerate() {
            if e >= n || graph.vertex_of(e) != graph.vertex_of(d) || prev[e] != usize::MAX {
                return Err(MapError::NotRotation { dart: d });
            }
            prev[e] = d;
        }
        for v in 0..graph.num_vertices() {
            let star = graph.star(v);
            let mut len = 1;
            let mut d = next[star[0]];
            while d != star[0] {
                d = next[d];
                len += 1;
            }
            if len != star.len() {
                return Err(MapError::NotRotation { dart: star[0] });
            }
        }
        Ok(Self { graph, next, prev })
    }

    /// Builds a map from oriented face boundaries given as vertex cycles.
    ///
    /// Every directed edge must occur in exactly one face and its reverse in
    /// another (or the same) face. Edges are numbered in order of first
    /// appearance, dart `2k` pointing the way edge `k` was first traversed.
    pub fn from_oriented_faces(num_vertices: usize, faces: &[Vec<usize>]) -> Result<Self, MapError> {
        let mut dart_of: BTreeMap<(usize, usize), usize> = BTreeMap::new();
        let mut edges = Vec::new();
        for f in faces {
            for i in 0..f.len() {
                let (u, w) = (f[i], f[(i + 1) % f.len()]);
                if u == w {
                    return Err(MapError::InvalidFaces("loops are not supported"));
                }
                if dart_of.contains_key(&(u, w)) {
                    if dart_of[&(u, w)] % 2 == 1 {
                        // already created as the reverse of an earlier edge
                        continue;
                    }
                    return Err(MapError::InvalidFaces("directed edge used twice"));
                }
                let k = edges.len();
                edges.push((u, w));
                dart_of.insert((u, w), 2 * k);
                if dart_of.insert((w, u), 2 * k + 1).is_some() {
                    return Err(MapError::InvalidFaces("directed edge used twice"));
                }
            }
        }
        let mut used = vec![false; 2 * edges.len()];
        let graph = HalfEdgeGraph::from_edges(num_vertices, &edges)?;
        let mut next = vec![usize::MAX; graph.num_darts()];
        for f in faces {
            let k = f.len();
            for i in 0..k {
                let (u, w, x) = (f[i], f[(i + 1) % k], f[(i + 2) % k]);
                let into = dart_of[&(u, w)];
                if core::mem::replace(&mut used[into], true) {
                    return Err(MapError::InvalidFaces("directed edge used twice"));
                }
                next[dart_of[&(w, u)]] = dart_of[&(w, x)];
            }
        }
        if used.iter().any(|&u| !u) {
            return Err(MapError::InvalidFaces("some directed edge lies on no face"));
        }
        Self::new(graph, next)
    }

    pub fn graph(&self) -> &HalfEdgeGraph {
        &self.graph
    }

    pub fn next(&self, dart: usize) -> usize {
        self.next[dart]
    }

    pub fn prev(&self, dart: usize) -> usize {
        self.prev[dart]
    }

    pub fn next_slice(&self) -> &[usize] {
        &self.next
    }

    /// Face-tracing permutation `d ↦ next(θ(d))`.
    pub fn face_step(&self, dart: usize) -> usize {
        self.next[self.graph.theta(dart)]
    }

    /// The same graph with every rotation reversed.
    pub fn mirror(&self) -> Self {
        Self { graph: self.graph.clone(), next: self.prev.clone(), prev: self.next.clone() }
    }

    /// Faces as dart cycles, each starting at its smallest dart, ordered by that dart.
    pub fn faces(&self) -> Vec<Vec<usize>> {
        let n = self.graph.num_darts();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for s in 0..n {
            if seen[s] {
                continue;
            }
            let mut face = Vec::new();
            let mut d = s;
            while !seen[d] {
                seen[d] = true;
                face.push(d);
                d = self.face_step(d);
            }
            out.push(face);
        }
        out
    }

    /// Index into [`faces`](Self::faces) of the face traced by each dart.
    pub fn face_of_dart(&self) -> Vec<usize> {
        let mut of = vec![0; self.graph.num_darts()];
        for (i, f) in self.faces().iter().enumerate() {
            for &d in f {
                of[d] = i;
            }
        }
        of
    }

    pub fn num_faces(&self) -> usize {
        self.faces().len()
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.graph.num_vertices() as i64 - self.graph.num_edges() as i64 + self.num_faces() as i64
    }

    /// Genus of the closed oriented surface carrying the map (connected maps).
    pub fn genus(&self) -> i64 {
        (2 - self.euler_characteristic()) / 2
    }

    /// Common face length `p` and valence `q`.
    pub fn map_type(&self) -> Result<MapType, MapError> {
        let faces = self.faces();
        let p = faces[0].len();
        if faces.iter().any(|f| f.len() != p) {
            return Err(MapError::NotUniformType);
        }
        let q = self.graph.regular_valence().ok_or(MapError::NotUniformType)?;
        Ok(MapType { p, q })
    }

    pub fn girth(&self) -> Result<MapGirth, MapError> {
        let girth = graph::girth_length(&self.graph).ok_or(GraphError::NoCycle)?;
        let equals_face_length = self.map_type().is_ok_and(|t| t.p == girth);
        Ok(MapGirth { girth, equals_face_length })
    }

    /// Flags in index order `2·dart + side`.
    pub fn flags(&self) -> Vec<Flag> {
        let face_of = self.face_of_dart();
        (0..self.graph.num_darts())
            .flat_map(|d| {
                let v = self.graph.vertex_of(d);
                let t = self.graph.theta(d);
                [
                    Flag { vertex: v, dart: d, face: face_of[d], side: 0 },
                    Flag { vertex: v, dart: d, face: face_of[t], side: 1 },
                ]
            })
            .collect()
    }

    pub(crate) fn structure(&self, reversed: bool) -> DartStructure {
        let rot = if reversed { self.prev.clone() } else { self.next.clone() };
        DartStructure::new(
            vec![self.graph.theta_slice().to_vec(), rot],
            None,
            vec![0; self.graph.num_darts()],
        )
    }

    /// Orientation-preserving automorphisms and one orientation-reversing
    /// automorphism (a dart bijection carrying the rotation to its inverse).
    pub fn automorphisms(&self) -> MapSymmetry {
        let plain = self.structure(false);
        let group = symmetry::automorphism_group(&plain);
        let reversing = symmetry::find_isomorphism(&plain, &self.structure(true), &[]);
        let mut order = group.order;
        if reversing.is_some() {
            order *= 2u32;
        }
        MapSymmetry { preserving: group.generators, reversing, order }
    }

    /// Orbits of the map automorphism group on flags.
    pub fn flag_transitivity(&self) -> FlagTransitivity {
        let sym = self.automorphisms();
        let n = self.graph.num_darts();
        let mut gens: Vec<Vec<usize>> = sym
            .preserving
            .iter()
            .map(|g| (0..2 * n).map(|f| 2 * g[f / 2] + f % 2).collect())
            .collect();
        if let Some(r) = &sym.reversing {
            gens.push((0..2 * n).map(|f| 2 * r[f / 2] + (1 - f % 2)).collect());
        }
        let orbit_count = if gens.is_empty() { 2 * n } else { symmetry::orbit_count(2 * n, &gens) };
        FlagTransitivity { verdict: orbit_count == 1, orbit_count, group_order: sym.order }
    }

    pub fn is_flag_transitive(&self) -> bool {
        self.flag_transitivity().verdict
    }

    /// Dual map: faces become vertices, the face-tracing permutation becomes the rotation.
    pub fn dual(&self) -> Self {
        let face_of = self.face_of_dart();
        let graph = HalfEdgeGraph::new(self.num_faces(), face_of, self.graph.theta_slice().to_vec())
            .expect("dual of a valid map is valid");
        let next = (0..graph.num_darts()).map(|d| self.face_step(d)).collect();
        Self::new(graph, next).expect("face tracing cycles each face")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_broken_rotation() {
        let g = crate::graph::catalog::theta(3);
        // two cycles at vertex 0
        assert!(RotationMap::new(g.clone(), vec![0, 3, 4, 1, 2, 5]).is_err());
        assert!(RotationMap::new(g, vec![2, 5, 4, 1, 0, 3]).is_ok());
    }

    #[test]
    fn one_face_theta_is_a_torus() {
        let g = crate::graph::catalog::theta(3);
        // same cyclic order at both ends
        let m = RotationMap::new(g, vec![2, 3, 4, 5, 0, 1]).unwrap();
        assert_eq!(m.num_faces(), 1);
        assert_eq!(m.genus(), 1);
    }

    #[test]
    fn dual_swaps_type() {
        let cube = catalog::cube();
        let oct = cube.dual();
        assert_eq!(oct.map_type().unwrap(), MapType { p: 3, q: 4 });
        assert_eq!(oct.dual().faces(), cube.faces());
    }

    #[test]
    fn flags_count() {
        let m = catalog::tetrahedron();
        assert_eq!(m.flags().len(), 4 * m.graph().num_edges());
    }
}
