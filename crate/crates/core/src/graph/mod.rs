//! Half-edge multigraphs.
//!
//! A graph is a set of darts, a fixed-point-free involution pairing darts
//! into edges and an incidence map from darts to vertices. Loops and
//! parallel edges are ordinary citizens, which is what lets theta graphs,
//! rotation maps and polygon tilings share one representation.

mod automorphism;
pub mod catalog;
mod cycles;

pub use cycles::girth_length;

use alloc::collections::VecDeque;
use alloc::vec;
use alloc::vec::Vec;

pub use automorphism::{
    automorphism_group, find_graph_isomorphism, is_isotropic, is_vertex_transitive, AutomorphismGroup,
    GraphAutomorphism, Isotropy, StarInjection,
};
pub use cycles::{
    embedded_two_paths, girth, girth_cycles, is_strict_polygonal, Cycle, Girth, StrictPolygonal, TwoPath,
    MAX_ENUMERATED_GIRTH,
};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GraphError {
    #[error("dart {dart} is not paired by a fixed-point-free involution")]
    InvalidInvolution { dart: usize },
    #[error("dart {dart} refers to vertex {vertex}, out of range")]
    VertexOutOfRange { dart: usize, vertex: usize },
    #[error("vertex {0} has no darts")]
    IsolatedVertex(usize),
    #[error("array lengths disagree: {0}")]
    LengthMismatch(&'static str),
    #[error("graph has no cycle")]
    NoCycle,
    #[error("girth {0} exceeds the enumeration cap")]
    GirthTooLarge(usize),
    #[error("graph is not connected")]
    NotConnected,
    #[error("graph is not simple")]
    NotSimple,
}

/// A multigraph stored as darts.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HalfEdgeGraph {
    num_vertices: usize,
    vertex_of: Vec<usize>,
    theta: Vec<usize>,
    edge_of: Vec<usize>,
    edge_darts: Vec<[usize; 2]>,
    stars: Vec<Vec<usize>>,
    vertex_labels: Option<Vec<i64>>,
    edge_labels: Option<Vec<i64>>,
}

impl HalfEdgeGraph {
    /// Builds a graph from dart incidences and the edge involution.
    pub fn new(num_vertices: usize, vertex_of: Vec<usize>, theta: Vec<usize>) -> Result<Self, GraphError> {
        if vertex_of.len() != theta.len() {
            return Err(GraphError::LengthMismatch("vertex_of and theta"));
        }
        let n = theta.len();
        for d in 0..n {
            let e = theta[d];
            if e >= n || e == d || theta[e] != d {
                return Err(GraphError::InvalidInvolution { dart: d });
            }
            if vertex_of[d] >= num_vertices {
                return Err(GraphError::VertexOutOfRange { dart: d, vertex: vertex_of[d] });
            }
        }
        let mut stars = vec![Vec::new(); num_vertices];
        for (d, &v) in vertex_of.iter().enumerate() {
            stars[v].push(d);
        }
        if let Some(v) = stars.iter().position(|s| s.is_empty()) {
            return Err(GraphError::IsolatedVertex(v));
        }
        let mut edge_of = vec![usize::MAX; n];
        let mut edge_darts = Vec::with_capacity(n / 2);
        for d in 0..n {
            if edge_of[d] == usize::MAX {
                edge_of[d] = edge_darts.len();
                edge_of[theta[d]] = edge_darts.len();
                edge_darts.push([d, theta[d]]);
            }
        }
        Ok(Self {
            num_vertices,
            vertex_of,
            theta,
            edge_of,
            edge_darts,
            stars,
            vertex_labels: None,
            edge_labels: None,
        })
    }

    /// Edge `i` gets darts `2i` (at `u`) and `2i + 1` (at `v`).
    pub fn from_edges(num_vertices: usize, edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        let mut vertex_of = Vec::with_capacity(2 * edges.len());
        let mut theta = Vec::with_capacity(2 * edges.len());
        for (i, &(u, v)) in edges.iter().enumerate() {
            vertex_of.push(u);
            vertex_of.push(v);
            theta.push(2 * i + 1);
            theta.push(2 * i);
        }
        Self::new(num_vertices, vertex_of, theta)
    }

    pub fn with_vertex_labels(mut self, labels: Vec<i64>) -> Result<Self, GraphError> {
        if labels.len() != self.num_vertices {
            return Err(GraphError::LengthMismatch("vertex labels"));
        }
        self.vertex_labels = Some(labels);
        Ok(self)
    }

    pub fn with_edge_labels(mut self, labels: Vec<i64>) -> Result<Self, GraphError> {
        if labels.len() != self.num_edges() {
            return Err(GraphError::LengthMismatch("edge labels"));
        }
        self.edge_labels = Some(labels);
        Ok(self)
    }

    pub fn num_vertices(&self) -> usize {
        self.num_vertices
    }

    pub fn num_darts(&self) -> usize {
        self.theta.len()
    }

    pub fn num_edges(&self) -> usize {
        self.edge_darts.len()
    }

    pub fn vertex_of(&self, dart: usize) -> usize {
        self.vertex_of[dart]
    }

    pub fn theta(&self, dart: usize) -> usize {
        self.theta[dart]
    }

    /// Vertex the dart points to.
    pub fn head(&self, dart: usize) -> usize {
        self.vertex_of[self.theta[dart]]
    }

    pub fn edge_of(&self, dart: usize) -> usize {
        self.edge_of[dart]
    }

    /// The two darts of an edge, smaller dart first.
    pub fn edge_darts(&self, edge: usize) -> [usize; 2] {
        self.edge_darts[edge]
    }

    /// Darts at `v`, in increasing order.
    pub fn star(&self, v: usize) -> &[usize] {
        &self.stars[v]
    }

    pub fn valence(&self, v: usize) -> usize {
        self.stars[v].len()
    }

    /// Common valence, if the graph is regular.
    pub fn regular_valence(&self) -> Option<usize> {
        let d = self.valence(0);
        (0..self.num_vertices).all(|v| self.valence(v) == d).then_some(d)
    }

    pub fn is_loop(&self, edge: usize) -> bool {
        let [a, b] = self.edge_darts[edge];
        self.vertex_of[a] == self.vertex_of[b]
    }

    pub fn vertex_of_slice(&self) -> &[usize] {
        &self.vertex_of
    }

    pub fn theta_slice(&self) -> &[usize] {
        &self.theta
    }

    pub fn vertex_labels(&self) -> Option<&[i64]> {
        self.vertex_labels.as_deref()
    }

    pub fn edge_labels(&self) -> Option<&[i64]> {
        self.edge_labels.as_deref()
    }

    /// Edges as vertex pairs in edge order.
    pub fn edge_list(&self) -> Vec<(usize, usize)> {
        self.edge_darts
            .iter()
            .map(|&[a, b]| (self.vertex_of[a], self.vertex_of[b]))
            .collect()
    }

    /// Connected component index of every vertex.
    pub fn components(&self) -> Vec<usize> {
        let mut comp = vec![usize::MAX; self.num_vertices];
        let mut next = 0;
        for s in 0..self.num_vertices {
            if comp[s] != usize::MAX {
                continue;
            }
            comp[s] = next;
            let mut queue = VecDeque::from([s]);
            while let Some(u) = queue.pop_front() {
                for &d in &self.stars[u] {
                    let w = self.head(d);
                    if comp[w] == usize::MAX {
                        comp[w] = next;
                        queue.push_back(w);
                    }
                }
            }
            next += 1;
        }
        comp
    }

    pub fn is_connected(&self) -> bool {
        self.num_vertices <= 1 || self.components().iter().all(|&c| c == 0)
    }

    /// No loops and no parallel edges.
    pub fn is_simple(&self) -> bool {
        let mut pairs: Vec<(usize, usize)> = Vec::with_capacity(self.num_edges());
        for (u, v) in self.edge_list() {
            if u == v {
                return false;
            }
            pairs.push(if u < v { (u, v) } else { (v, u) });
        }
        pairs.sort_unstable();
        pairs.windows(2).all(|w| w[0] != w[1])
    }

    /// Vertex adjacency lists (neighbours with multiplicity), for simple-graph algorithms.
    pub fn neighbours(&self, v: usize) -> Vec<usize> {
        self.stars[v].iter().map(|&d| self.head(d)).collect()
    }

    /// Breadth-first distances from `source`; unreachable vertices get `usize::MAX`.
    pub fn distances_from(&self, source: usize) -> Vec<usize> {
        let mut dist = vec![usize::MAX; self.num_vertices];
        dist[source] = 0;
        let mut queue = VecDeque::from([source]);
        while let Some(u) = queue.pop_front() {
            for &d in &self.stars[u] {
                let w = self.head(d);
                if dist[w] == usize::MAX {
                    dist[w] = dist[u] + 1;
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    /// Invariant initial dart colors, optionally from vertex and edge labels.
    pub(crate) fn dart_colors(&self, respect_labels: bool) -> Vec<u32> {
        if !respect_labels || (self.vertex_labels.is_none() && self.edge_labels.is_none()) {
            return vec![0; self.num_darts()];
        }
        let keys: Vec<(i64, i64)> = (0..self.num_darts())
            .map(|d| {
                let vl = self.vertex_labels.as_ref().map_or(0, |l| l[self.vertex_of[d]]);
                let el = self.edge_labels.as_ref().map_or(0, |l| l[self.edge_of[d]]);
                (vl, el)
            })
            .collect();
        let mut distinct = keys.clone();
        distinct.sort_unstable();
        distinct.dedup();
        keys.iter()
            .map(|k| distinct.binary_search(k).expect("key present") as u32)
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_fixed_points_and_bad_pairs() {
        assert_eq!(
            HalfEdgeGraph::new(1, vec![0, 0], vec![0, 1]),
            Err(GraphError::InvalidInvolution { dart: 0 })
        );
        assert_eq!(
            HalfEdgeGraph::new(2, vec![0, 1, 1], vec![1, 2, 0]),
            Err(GraphError::InvalidInvolution { dart: 0 })
        );
        assert_eq!(
            HalfEdgeGraph::new(3, vec![0, 1], vec![1, 0]),
            Err(GraphError::IsolatedVertex(2))
        );
    }

    #[test]
    fn loops_and_multi_edges_are_representable() {
        let g = HalfEdgeGraph::from_edges(2, &[(0, 0), (0, 1), (0, 1)]).unwrap();
        assert!(g.is_loop(0));
        assert!(!g.is_simple());
        assert_eq!(g.valence(0), 4);
        assert_eq!(g.valence(1), 2);
        assert_eq!(g.head(2), 1);
    }

    #[test]
    fn components_of_disjoint_union() {
        let g = HalfEdgeGraph::from_edges(4, &[(0, 1), (2, 3)]).unwrap();
        assert_eq!(g.components(), vec![0, 0, 1, 1]);
        assert!(!g.is_connected());
    }
}
