use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigUint;

use super::HalfEdgeGraph;
use crate::symmetry::{self, DartStructure};

/// A graph automorphism in both vertex and dart form.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct GraphAutomorphism {
    pub vertex_perm: Vec<usize>,
    pub dart_perm: Vec<usize>,
}

impl GraphAutomorphism {
    fn from_darts(g: &HalfEdgeGraph, h: &HalfEdgeGraph, dart_perm: Vec<usize>) -> Self {
        let mut vertex_perm = vec![0; g.num_vertices()];
        for (d, &e) in dart_perm.iter().enumerate() {
            vertex_perm[g.vertex_of(d)] = h.vertex_of(e);
        }
        Self { vertex_perm, dart_perm }
    }

    /// Whether this really is an automorphism of `g`.
    pub fn is_automorphism_of(&self, g: &HalfEdgeGraph) -> bool {
        let n = g.num_darts();
        if self.dart_perm.len() != n || self.vertex_perm.len() != g.num_vertices() {
            return false;
        }
        let mut seen = vec![false; n];
        for &e in &self.dart_perm {
            if e >= n || core::mem::replace(&mut seen[e], true) {
                return false;
            }
        }
        (0..n).all(|d| {
            self.dart_perm[g.theta(d)] == g.theta(self.dart_perm[d])
                && g.vertex_of(self.dart_perm[d]) == self.vertex_perm[g.vertex_of(d)]
        })
    }
}

/// Generators and exact order of a graph's automorphism group.
#[derive(Clone, Debug)]
pub struct AutomorphismGroup {
    /// Sorted by vertex permutation, then dart permutation.
    pub generators: Vec<GraphAutomorphism>,
    pub order: BigUint,
}

impl AutomorphismGroup {
    pub fn dart_generators(&self) -> Vec<Vec<usize>> {
        self.generators.iter().map(|a| a.dart_perm.clone()).collect()
    }

    pub fn vertex_generators(&self) -> Vec<Vec<usize>> {
        self.generators.iter().map(|a| a.vertex_perm.clone()).collect()
    }
}

pub(crate) fn structure(g: &HalfEdgeGraph, respect_labels: bool) -> DartStructure {
    DartStructure::new(
        vec![g.theta_slice().to_vec()],
        Some(g.vertex_of_slice().to_vec()),
        g.dart_colors(respect_labels),
    )
}

/// Full automorphism group at dart level. With `respect_labels`, only
/// automorphisms preserving vertex and edge labels are kept.
pub fn automorphism_group(g: &HalfEdgeGraph, respect_labels: bool) -> AutomorphismGroup {
    let data = symmetry::automorphism_group(&structure(g, respect_labels));
    let mut generators: Vec<GraphAutomorphism> = data
        .generators
        .into_iter()
        .map(|p| GraphAutomorphism::from_darts(g, g, p))
        .collect();
    generators.sort();
    AutomorphismGroup { generators, order: data.order }
}

/// An isomorphism `a -> b` extending the prescribed dart pairs.
pub fn find_graph_isomorphism(
    a: &HalfEdgeGraph,
    b: &HalfEdgeGraph,
    respect_labels: bool,
    prescribed: &[(usize, usize)],
) -> Option<GraphAutomorphism> {
    if a.num_vertices() != b.num_vertices() {
        return None;
    }
    let phi = symmetry::find_isomorphism(&structure(a, respect_labels), &structure(b, respect_labels), prescribed)?;
    Some(GraphAutomorphism::from_darts(a, b, phi))
}

pub fn is_vertex_transitive(g: &HalfEdgeGraph) -> bool {
    let group = automorphism_group(g, false);
    symmetry::orbit(0, &group.vertex_generators()).len() == g.num_vertices()
}

/// A star injection that does not extend to an automorphism.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StarInjection {
    pub from_vertex: usize,
    pub to_vertex: usize,
    pub dart_pairs: Vec<(usize, usize)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Isotropy {
    pub verdict: bool,
    pub failing_injection: Option<StarInjection>,
}

/// Vertex transitivity plus local symmetry at vertex 0.
///
/// Local symmetry only needs the adjacent transpositions of the star, since
/// they generate every bijection of it.
pub fn is_isotropic(g: &HalfEdgeGraph) -> Isotropy {
    let group = automorphism_group(g, false);
    let labels = symmetry::orbit_labels(g.num_vertices(), &group.vertex_generators());
    if let Some(v) = (0..g.num_vertices()).find(|&v| labels[v] != labels[0]) {
        let (u, w) = if g.valence(0) <= g.valence(v) { (0, v) } else { (v, 0) };
        let dart_pairs = g.star(u).iter().copied().zip(g.star(w).iter().copied()).collect();
        return Isotropy {
            verdict: false,
            failing_injection: Some(StarInjection { from_vertex: u, to_vertex: w, dart_pairs }),
        };
    }
    let star = g.star(0);
    let s = structure(g, false);
    for i in 0..star.len().saturating_sub(1) {
        let pairs: Vec<(usize, usize)> = star
            .iter()
            .enumerate()
            .map(|(k, &d)| {
                let image = match k {
                    _ if k == i => star[i + 1],
                    _ if k == i + 1 => star[i],
                    _ => d,
                };
                (d, image)
            })
            .collect();
        if symmetry::find_isomorphism(&s, &s, &pairs).is_none() {
            return Isotropy {
                verdict: false,
                failing_injection: Some(StarInjection { from_vertex: 0, to_vertex: 0, dart_pairs: pairs }),
            };
        }
    }
    Isotropy { verdict: true, failing_injection: None }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::catalog;

    #[test]
    fn orders_of_small_groups() {
        assert_eq!(automorphism_group(&catalog::petersen(), false).order, BigUint::from(120u32));
        assert_eq!(automorphism_group(&catalog::theta(3), false).order, BigUint::from(12u32));
        assert_eq!(automorphism_group(&catalog::path(2), false).order, BigUint::from(2u32));
        // a loop can be reversed
        assert_eq!(automorphism_group(&catalog::bouquet(1), false).order, BigUint::from(2u32));
    }

    #[test]
    fn generators_are_automorphisms_and_sorted() {
        let g = catalog::petersen();
        let group = automorphism_group(&g, false);
        assert!(group.generators.iter().all(|a| a.is_automorphism_of(&g)));
        assert!(group.generators.windows(2).all(|w| w[0] <= w[1]));
    }

    #[test]
    fn labels_restrict_the_group() {
        let g = catalog::theta(3).with_edge_labels(vec![1, 2, 3]).unwrap();
        assert_eq!(automorphism_group(&g, true).order, BigUint::from(2u32));
        assert_eq!(automorphism_group(&g, false).order, BigUint::from(12u32));
    }

    #[test]
    fn isotropy_examples() {
        assert!(is_isotropic(&catalog::petersen()).verdict);
        assert!(is_isotropic(&catalog::theta(4)).verdict);
        let p3 = is_isotropic(&catalog::path(3));
        assert!(!p3.verdict);
        let inj = p3.failing_injection.unwrap();
        assert_eq!(inj.dart_pairs.len(), 1);
        // vertex transitive but not locally symmetric
        assert!(is_vertex_transitive(&catalog::cycle(6)));
        assert!(!is_isotropic(&catalog::prism(3)).verdict);
        assert!(is_vertex_transitive(&catalog::prism(3)));
    }
}
