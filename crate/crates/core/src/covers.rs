//! Graph coverings: the mod-2 homology cover, certification of girth
//! doubling, automorphism lifting and colorings pulled back from a theta graph.

use alloc::collections::VecDeque;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::graph::{self, GraphError, HalfEdgeGraph};

/// Default bound on the number of vertices of a constructed cover.
pub const DEFAULT_MAX_COVER_SIZE: usize = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CoverError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("not a covering map: {reason} (dart {dart})")]
    NotCovering { reason: &'static str, dart: usize },
    #[error("cover would have {vertices} vertices, above the cap of {cap}")]
    TooLarge { vertices: u128, cap: usize },
    #[error("automorphism does not lift")]
    NotLiftable,
    #[error("base graph is not a theta graph")]
    BaseNotTheta,
    #[error("certification failed at clause `{clause}`: {witness}")]
    CertificationFailed { clause: &'static str, witness: String },
}

/// A dart-level covering map `total -> base`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoveringMap {
    total: HalfEdgeGraph,
    base: HalfEdgeGraph,
    dart_map: Vec<usize>,
    vertex_map: Vec<usize>,
    degree: usize,
}

impl CoveringMap {
    /// Checks that `dart_map` commutes with the edge involutions, induces a
    /// vertex map, is bijective on every star and has fibers of equal size.
    pub fn new(total: HalfEdgeGraph, base: HalfEdgeGraph, dart_map: Vec<usize>) -> Result<Self, CoverError> {
        let bad = |reason, dart| Err(CoverError::NotCovering { reason, dart });
        if dart_map.len() != total.num_darts() {
            return bad("dart map has the wrong length", 0);
        }
        let mut vertex_map = vec![usize::MAX; total.num_vertices()];
        for (d, &b) in dart_map.iter().enumerate() {
            if b >= base.num_darts() {
                return bad("image out of range", d);
            }
            if dart_map[total.theta(d)] != base.theta(b) {
                return bad("does not commute with the edge involution", d);
            }
            let v = total.vertex_of(d);
            let image = base.vertex_of(b);
            if vertex_map[v] == usize::MAX {
                vertex_map[v] = image;
            } else if vertex_map[v] != image {
                return bad("does not induce a vertex map", d);
            }
        }
        for v in 0..total.num_vertices() {
            let mut images: Vec<usize> = total.star(v).iter().map(|&d| dart_map[d]).collect();
            images.sort_unstable();
            if images != base.star(vertex_map[v]) {
                return bad("not bijective on a star", total.star(v)[0]);
            }
        }
        let mut fiber = vec![0usize; base.num_vertices()];
        for &b in &vertex_map {
            fiber[b] += 1;
        }
        let degree = fiber[0];
        if fiber.iter().any(|&f| f != degree) {
            return bad("fibers have different sizes", 0);
        }
        Ok(Self { total, base, dart_map, vertex_map, degree })
    }

    pub fn identity(g: &HalfEdgeGraph) -> Self {
        Self::new(g.clone(), g.clone(), (0..g.num_darts()).collect()).expect("identity is a covering")
    }

    /// `lower ∘ upper`, for `upper: A -> B` and `lower: B -> C`.
    pub fn compose(upper: &Self, lower: &Self) -> Result<Self, CoverError> {
        if upper.base != lower.total {
            return Err(CoverError::NotCovering { reason: "covers do not chain", dart: 0 });
        }
        let dart_map = upper.dart_map.iter().map(|&d| lower.dart_map[d]).collect();
        Self::new(upper.total.clone(), lower.base.clone(), dart_map)
    }

    pub fn total(&self) -> &HalfEdgeGraph {
        &self.total
    }

    pub fn base(&self) -> &HalfEdgeGraph {
        &self.base
    }

    pub fn dart_map(&self) -> &[usize] {
        &self.dart_map
    }

    pub fn vertex_map(&self) -> &[usize] {
        &self.vertex_map
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    /// Total darts over base dart `b`, in increasing order.
    pub fn fiber_of_dart(&self, b: usize) -> Vec<usize> {
        (0..self.total.num_darts()).filter(|&d| self.dart_map[d] == b).collect()
    }

    /// Lifts a base automorphism (dart permutation) to the total graph.
    ///
    /// The smallest dart at total vertex 0 is sent to the first member of
    /// the target fiber that extends to a full lift; local bijectivity then
    /// determines everything else.
    pub fn lift_automorphism(&self, psi: &[usize]) -> Result<Vec<usize>, CoverError> {
        self.lifts(psi, true).into_iter().next().ok_or(CoverError::NotLiftable)
    }

    /// All deck transformations, identity first.
    pub fn deck_group(&self) -> Vec<Vec<usize>> {
        let id: Vec<usize> = (0..self.base.num_darts()).collect();
        self.lifts(&id, false)
    }

    fn lifts(&self, psi: &[usize], first_only: bool) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        if psi.len() != self.base.num_darts() || self.total.num_darts() == 0 {
            return out;
        }
        let t0 = self.total.star(0)[0];
        for candidate in self.fiber_of_dart(psi[self.dart_map[t0]]) {
            if let Some(phi) = self.propagate(psi, t0, candidate) {
                out.push(phi);
                if first_only {
                    break;
                }
            }
        }
        out
    }

    fn propagate(&self, psi: &[usize], t0: usize, image: usize) -> Option<Vec<usize>> {
        let t = &self.total;
        let n = t.num_darts();
        let mut phi = vec![usize::MAX; n];
        let mut done_vertex = vec![false; t.num_vertices()];
        let mut queue = VecDeque::new();
        phi[t0] = image;
        queue.push_back(t0);
        while let Some(d) = queue.pop_front() {
            let v = t.vertex_of(d);
            let w = t.vertex_of(phi[d]);
            if !done_vertex[v] {
                done_vertex[v] = true;
                for &x in t.star(v) {
                    let want = psi[self.dart_map[x]];
                    let y = *t.star(w).iter().find(|&&y| self.dart_map[y] == want)?;
                    if phi[x] == usize::MAX {
                        phi[x] = y;
                        queue.push_back(x);
                    } else if phi[x] != y {
                        return None;
                    }
                }
            }
            let (td, tphi) = (t.theta(d), t.theta(phi[d]));
            if phi[td] == usize::MAX {
                phi[td] = tphi;
                queue.push_back(td);
            } else if phi[td] != tphi {
                return None;
            }
        }
        let mut hit = vec![false; n];
        for &y in &phi {
            if y == usize::MAX || core::mem::replace(&mut hit[y], true) {
                return None;
            }
        }
        Some(phi)
    }
}

/// GF(2) coordinate vector of every edge for the cycle space of `g`:
/// tree edges of the breadth-first spanning tree from vertex 0 get 0, the
/// `i`-th remaining edge (in edge order) gets bit `i`.
pub fn cycle_space_coordinates(g: &HalfEdgeGraph) -> Result<Vec<u64>, CoverError> {
    if !g.is_connected() {
        return Err(GraphError::NotConnected.into());
    }
    let mut tree = vec![false; g.num_edges()];
    let mut seen = vec![false; g.num_vertices()];
    seen[0] = true;
    let mut queue = VecDeque::from([0usize]);
    while let Some(u) = queue.pop_front() {
        for &d in g.star(u) {
            let w = g.head(d);
            if !seen[w] {
                seen[w] = true;
                tree[g.edge_of(d)] = true;
                queue.push_back(w);
            }
        }
    }
    let rank = tree.iter().filter(|&&t| !t).count();
    if rank >= 64 {
        return Err(CoverError::TooLarge { vertices: u128::MAX, cap: 0 });
    }
    let mut next_bit = 0;
    Ok(tree
        .iter()
        .map(|&t| {
            if t {
                0
            } else {
                next_bit += 1;
                1u64 << (next_bit - 1)
            }
        })
        .collect())
}

/// The covering associated with the mod-2 reduction of the cycle space.
///
/// Total vertex `(x, v)` has id `x·V + v` and total dart `(x, d)` has id
/// `x·D + d`, where `x` ranges over GF(2)^r packed into an integer.
pub fn mod2_homology_cover(g: &HalfEdgeGraph, max_vertices: usize) -> Result<CoveringMap, CoverError> {
    let flips = cycle_space_coordinates(g).map_err(|e| match e {
        CoverError::TooLarge { .. } => CoverError::TooLarge { vertices: u128::MAX, cap: max_vertices },
        other => other,
    })?;
    let rank = flips.iter().filter(|&&f| f != 0).count() as u32;
    let sheets = 1u128 << rank;
    let size = sheets * g.num_vertices() as u128;
    if size > max_vertices as u128 {
        return Err(CoverError::TooLarge { vertices: size, cap: max_vertices });
    }
    let sheets = sheets as usize;
    let (nv, nd) = (g.num_vertices(), g.num_darts());
    let mut vertex_of = Vec::with_capacity(sheets * nd);
    let mut theta = Vec::with_capacity(sheets * nd);
    let mut dart_map = Vec::with_capacity(sheets * nd);
    for x in 0..sheets {
        for d in 0..nd {
            vertex_of.push(x * nv + g.vertex_of(d));
            let y = x ^ flips[g.edge_of(d)] as usize;
            theta.push(y * nd + g.theta(d));
            dart_map.push(d);
        }
    }
    let total = HalfEdgeGraph::new(sheets * nv, vertex_of, theta)?;
    CoveringMap::new(total, g.clone(), dart_map)
}

/// One checked statement of a certificate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Clause {
    pub name: &'static str,
    pub passed: bool,
    pub witness: String,
}

/// Per-instance evidence that a cover doubles the girth of its base.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DoublingCertificate {
    pub base_girth: usize,
    pub total_girth: usize,
    pub girth_cycles_checked: usize,
    pub clauses: Vec<Clause>,
}

/// Checks, in order: the girth doubles; every girth cycle of the total graph
/// projects to a girth cycle of the base traversed twice; strict
/// polygonality and isotropy pass from base to total.
pub fn certify_girth_doubling(c: &CoveringMap) -> Result<DoublingCertificate, CoverError> {
    let base = graph::girth(&c.base)?;
    let total_len = graph::girth_length(&c.total).ok_or(GraphError::NoCycle)?;
    let mut clauses = Vec::new();
    let push = |clauses: &mut Vec<Clause>, name, passed, witness: String| -> Result<(), CoverError> {
        clauses.push(Clause { name, passed, witness: witness.clone() });
        if passed {
            Ok(())
        } else {
            Err(CoverError::CertificationFailed { clause: name, witness })
        }
    };
    push(
        &mut clauses,
        "girth_doubled",
        total_len == 2 * base.length,
        format!("base girth {}, total girth {}", base.length, total_len),
    )?;

    let total = graph::girth(&c.total)?;
    let mut bad = None;
    for cyc in &total.witnesses {
        let img: Vec<usize> = cyc.darts().iter().map(|&d| c.dart_map[d]).collect();
        let k = base.length;
        let half_repeats = img[..k] == img[k..];
        let projected = half_repeats
            && graph::Cycle::new(&c.base, &img[..k]).is_ok_and(|b| base.witnesses.binary_search(&b).is_ok());
        if !projected {
            bad = Some(img);
            break;
        }
    }
    let witness = match &bad {
        None => format!("{} girth cycles, each a base girth cycle traversed twice", total.witnesses.len()),
        Some(img) => format!("girth cycle projecting to {img:?}"),
    };
    push(&mut clauses, "girth_cycles_project_to_squares", bad.is_none(), witness)?;

    let base_strict = graph::is_strict_polygonal(&c.base)?.verdict;
    let total_strict = graph::is_strict_polygonal(&c.total)?;
    push(
        &mut clauses,
        "strict_polygonal",
        !base_strict || total_strict.verdict,
        match total_strict.violation {
            None => format!("base {base_strict}, total true"),
            Some((p, count)) => format!("base {base_strict}, total 2-path {:?} lies in {count} girth cycles", (p.first, p.second)),
        },
    )?;

    let base_iso = graph::is_isotropic(&c.base).verdict;
    let total_iso = graph::is_isotropic(&c.total);
    push(
        &mut clauses,
        "isotropic",
        !base_iso || total_iso.verdict,
        match total_iso.failing_injection {
            None => format!("base {base_iso}, total true"),
            Some(inj) => format!(
                "base {base_iso}, star injection {} -> {} does not extend",
                inj.from_vertex, inj.to_vertex
            ),
        },
    )?;

    Ok(DoublingCertificate {
        base_girth: base.length,
        total_girth: total_len,
        girth_cycles_checked: total.witnesses.len(),
        clauses,
    })
}

/// A 2-colored, properly edge-colored gluing graph covering a theta graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ColoredGluingGraph {
    graph: HalfEdgeGraph,
    vertex_sign: Vec<i8>,
    edge_color: Vec<usize>,
    theta_cover: CoveringMap,
}

impl ColoredGluingGraph {
    pub fn graph(&self) -> &HalfEdgeGraph {
        &self.graph
    }

    /// `+1` over theta vertex 0, `-1` over theta vertex 1.
    pub fn vertex_sign(&self, v: usize) -> i8 {
        self.vertex_sign[v]
    }

    pub fn vertex_signs(&self) -> &[i8] {
        &self.vertex_sign
    }

    /// Color in `1..=d`: one more than the index of the theta edge below.
    pub fn edge_color(&self, e: usize) -> usize {
        self.edge_color[e]
    }

    pub fn edge_colors(&self) -> &[usize] {
        &self.edge_color
    }

    pub fn theta_cover(&self) -> &CoveringMap {
        &self.theta_cover
    }

    /// Number of colors, the valence of the theta graph below.
    pub fn valence(&self) -> usize {
        self.theta_cover.base.num_edges()
    }
}

/// Pulls the signs `(+1, -1)` and colors `1..=d` of a theta graph back
/// through a covering of it.
pub fn make_colored_gluing_graph(c: &CoveringMap) -> Result<ColoredGluingGraph, CoverError> {
    let base = &c.base;
    if base.num_vertices() != 2 || base.num_edges() == 0 || base.edge_list().iter().any(|&(u, v)| u == v) {
        return Err(CoverError::BaseNotTheta);
    }
    let g = &c.total;
    let vertex_sign: Vec<i8> = c.vertex_map.iter().map(|&b| if b == 0 { 1 } else { -1 }).collect();
    let edge_color: Vec<usize> = (0..g.num_edges())
        .map(|e| base.edge_of(c.dart_map[g.edge_darts(e)[0]]) + 1)
        .collect();
    for e in 0..g.num_edges() {
        let [a, b] = g.edge_darts(e);
        if vertex_sign[g.vertex_of(a)] == vertex_sign[g.vertex_of(b)] {
            return Err(CoverError::NotCovering { reason: "signs are not a proper coloring", dart: a });
        }
    }
    for v in 0..g.num_vertices() {
        let mut colors: Vec<usize> = g.star(v).iter().map(|&d| edge_color[g.edge_of(d)]).collect();
        colors.sort_unstable();
        colors.dedup();
        if colors.len() != g.valence(v) {
            return Err(CoverError::NotCovering { reason: "edge colors are not proper", dart: g.star(v)[0] });
        }
    }
    Ok(ColoredGluingGraph { graph: g.clone(), vertex_sign, edge_color, theta_cover: c.clone() })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::catalog;

    #[test]
    fn theta3_cover_sizes() {
        let c = mod2_homology_cover(&catalog::theta(3), DEFAULT_MAX_COVER_SIZE).unwrap();
        assert_eq!(c.degree(), 4);
        assert_eq!(c.total().num_vertices(), 8);
        assert_eq!(c.total().num_edges(), 12);
    }

    #[test]
    fn tree_and_loop_covers() {
        let t = mod2_homology_cover(&catalog::path(4), DEFAULT_MAX_COVER_SIZE).unwrap();
        assert_eq!(t.degree(), 1);
        assert_eq!(t.total(), &catalog::path(4));
        let l = mod2_homology_cover(&catalog::bouquet(1), DEFAULT_MAX_COVER_SIZE).unwrap();
        assert_eq!(l.degree(), 2);
        assert_eq!(graph::girth(l.total()).unwrap().length, 2);
        assert!(l.total().is_connected());
    }

    #[test]
    fn size_cap_is_enforced() {
        let err = mod2_homology_cover(&catalog::theta(5), 10).unwrap_err();
        assert!(matches!(err, CoverError::TooLarge { vertices: 32, cap: 10 }));
    }

    #[test]
    fn rejects_non_covers() {
        let base = catalog::theta(2);
        let total = catalog::cycle(4);
        // every dart onto dart 0 breaks theta-commutation
        assert!(CoveringMap::new(total, base, vec![0; 8]).is_err());
    }

    #[test]
    fn identity_cover_cannot_double() {
        let err = certify_girth_doubling(&CoveringMap::identity(&catalog::petersen())).unwrap_err();
        assert!(matches!(err, CoverError::CertificationFailed { clause: "girth_doubled", .. }));
    }

    #[test]
    fn theta3_doubling_certificate() {
        let c = mod2_homology_cover(&catalog::theta(3), DEFAULT_MAX_COVER_SIZE).unwrap();
        let cert = certify_girth_doubling(&c).unwrap();
        assert_eq!((cert.base_girth, cert.total_girth), (2, 4));
        assert!(cert.clauses.iter().all(|c| c.passed));
        assert_eq!(cert.clauses.len(), 4);
    }

    #[test]
    fn deck_group_is_transitive_on_fibers() {
        let c = mod2_homology_cover(&catalog::theta(3), DEFAULT_MAX_COVER_SIZE).unwrap();
        let deck = c.deck_group();
        assert_eq!(deck.len(), 4);
        let mut images: Vec<usize> = deck.iter().map(|phi| phi[0]).collect();
        images.sort_unstable();
        assert_eq!(images, c.fiber_of_dart(0));
    }

    #[test]
    fn colored_theta() {
        let g = make_colored_gluing_graph(&CoveringMap::identity(&catalog::theta(3))).unwrap();
        assert_eq!(g.vertex_signs(), &[1, -1]);
        assert_eq!(g.edge_colors(), &[1, 2, 3]);
        assert_eq!(
            make_colored_gluing_graph(&CoveringMap::identity(&catalog::cycle(3))),
            Err(CoverError::BaseNotTheta)
        );
    }
}
