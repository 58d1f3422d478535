//! Intersection patterns of the systoles and exact linear algebra on them.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::FRAC_PI_2;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::assembly::{fills_check, AssembledSurface, CurveSystem};
use crate::graph::HalfEdgeGraph;
use crate::math::cos;
use crate::symmetry::{self, DartStructure};

/// Largest graph the elementary-subgraph expansion accepts.
pub const HARARY_MAX_VERTICES: usize = 16;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum AnalysisError {
    #[error("matrix is {rows}×{cols}, not square")]
    NotSquare { rows: usize, cols: usize },
    #[error("matrix data has {len} entries, expected {rows}×{cols}")]
    Shape { rows: usize, cols: usize, len: usize },
    #[error("{vertices} vertices exceed the cap of {cap}")]
    TooLarge { vertices: usize, cap: usize },
    #[error("graph has loops or parallel edges")]
    NotSimple,
    #[error("red curve {red} and blue curve {blue} cross {count} times")]
    MultipleIntersection { red: usize, blue: usize, count: usize },
    #[error("curve {0} crosses no other curve")]
    IsolatedCurve(usize),
    #[error("theta must lie in (0, pi)")]
    DomainError,
}

/// A dense integer matrix, row-major.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<i64>,
}

impl IntMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<i64>) -> Result<Self, AnalysisError> {
        if data.len() != rows * cols {
            return Err(AnalysisError::Shape { rows, cols, len: data.len() });
        }
        Ok(Self { rows, cols, data })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    /// Builds from rows of equal length; an empty list gives the 0×0 matrix.
    pub fn from_rows(rows: &[Vec<i64>]) -> Result<Self, AnalysisError> {
        let cols = rows.first().map_or(0, Vec::len);
        if let Some(bad) = rows.iter().find(|r| r.len() != cols) {
            return Err(AnalysisError::Shape { rows: rows.len(), cols, len: bad.len() });
        }
        Ok(Self { rows: rows.len(), cols, data: rows.concat() })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: i64) {
        self.data[i * self.cols + j] = v;
    }

    pub fn to_rows(&self) -> Vec<Vec<i64>> {
        self.data.chunks(self.cols.max(1)).take(self.rows).map(<[i64]>::to_vec).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j));
            }
        }
        t
    }

    pub fn is_symmetric(&self) -> bool {
        self.rows == self.cols && (0..self.rows).all(|i| (0..i).all(|j| self.get(i, j) == self.get(j, i)))
    }

    /// `[[0, self], [sign·selfᵀ, 0]]`.
    pub fn bipartite_block(&self, sign: i64) -> Self {
        let n = self.rows + self.cols;
        let mut m = Self::zeros(n, n);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let v = self.get(i, j);
                m.set(i, self.rows + j, v);
                m.set(self.rows + j, i, sign * v);
            }
        }
        m
    }

    /// Exact determinant by fraction-free elimination.
    pub fn determinant(&self) -> Result<BigInt, AnalysisError> {
        if self.rows != self.cols {
            return Err(AnalysisError::NotSquare { rows: self.rows, cols: self.cols });
        }
        Ok(self.eliminate().1.unwrap_or_else(BigInt::one))
    }

    /// Exact rank over the rationals.
    pub fn rank(&self) -> usize {
        self.eliminate().0
    }

    /// Bareiss elimination: returns the rank and, for square input, the determinant.
    fn eliminate(&self) -> (usize, Option<BigInt>) {
        let (n, m) = (self.rows, self.cols);
        let mut a: Vec<Vec<BigInt>> = (0..n).map(|i| (0..m).map(|j| BigInt::from(self.get(i, j))).collect()).collect();
        let mut prev = BigInt::one();
        let mut negate = false;
        let mut r = 0;
        for c in 0..m {
            if r == n {
                break;
            }
            let Some(pivot) = (r..n).find(|&i| !a[i][c].is_zero()) else {
                continue;
            };
            if pivot != r {
                a.swap(pivot, r);
                negate = !negate;
            }
            for i in r + 1..n {
                for j in c + 1..m {
                    let v = (&a[r][c] * &a[i][j] - &a[i][c] * &a[r][j]) / &prev;
                    a[i][j] = v;
                }
                a[i][c] = BigInt::zero();
            }
            prev = a[r][c].clone();
            r += 1;
        }
        let det = (n == m && n > 0).then(|| {
            if r < n {
                BigInt::zero()
            } else if negate {
                -prev.clone()
            } else {
                prev.clone()
            }
        });
        (r, det)
    }

    /// Row and column permutations `(ρ, γ)` with `other[ρ(i)][γ(j)] = self[i][j]`, if any.
    pub fn permutation_equivalence(&self, other: &IntMatrix) -> Option<(Vec<usize>, Vec<usize>)> {
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return None;
        }
        let mut codes: Vec<(u8, i64)> = Vec::new();
        for m in [self, other] {
            for &v in m.data.iter().filter(|&&v| v != 0) {
                codes.push((0, v));
                codes.push((1, v));
            }
        }
        codes.sort_unstable();
        codes.dedup();
        let (sa, ga) = self.bipartite_structure(&codes);
        let (sb, gb) = other.bipartite_structure(&codes);
        let zero_rows = |m: &IntMatrix| (0..m.rows).filter(|&i| (0..m.cols).all(|j| m.get(i, j) == 0)).count();
        let zero_cols = |m: &IntMatrix| zero_rows(&m.transpose());
        if zero_rows(self) != zero_rows(other) || zero_cols(self) != zero_cols(other) {
            return None;
        }
        let phi = symmetry::find_isomorphism(&sa, &sb, &[])?;
        let mut images = vec![usize::MAX; self.rows + self.cols];
        for (d, &e) in phi.iter().enumerate() {
            images[ga[d]] = gb[e];
        }
        let fill = |range: core::ops::Range<usize>, images: &mut [usize]| {
            let used: Vec<usize> = range.clone().filter_map(|k| Some(images[k]).filter(|&x| x != usize::MAX)).collect();
            let mut free = range.clone().filter(|x| !used.contains(x));
            for k in range {
                if images[k] == usize::MAX {
                    images[k] = free.next().expect("equal zero counts");
                }
            }
        };
        fill(0..self.rows, &mut images);
        fill(self.rows..self.rows + self.cols, &mut images);
        let rho: Vec<usize> = images[..self.rows].to_vec();
        let gamma: Vec<usize> = images[self.rows..].iter().map(|&x| x - self.rows).collect();
        let ok = (0..self.rows).all(|i| (0..self.cols).all(|j| other.get(rho[i], gamma[j]) == self.get(i, j)));
        ok.then_some((rho, gamma))
    }

    /// Darts: one per (entry, side) for nonzero entries. Returns the structure
    /// and the row (`i`) or column (`rows + j`) owning each dart.
    fn bipartite_structure(&self, codes: &[(u8, i64)]) -> (DartStructure, Vec<usize>) {
        let mut owner = Vec::new();
        let mut colors = Vec::new();
        for i in 0..self.rows {
            for j in 0..self.cols {
                let v = self.get(i, j);
                if v != 0 {
                    owner.push(i);
                    colors.push(codes.binary_search(&(0, v)).expect("coded") as u32);
                    owner.push(self.rows + j);
                    colors.push(codes.binary_search(&(1, v)).expect("coded") as u32);
                }
            }
        }
        let theta: Vec<usize> = (0..owner.len()).map(|d| d ^ 1).collect();
        // group ids must be dense
        let mut ids: Vec<usize> = owner.clone();
        ids.sort_unstable();
        ids.dedup();
        let groups = owner.iter().map(|o| ids.binary_search(o).expect("present")).collect();
        (DartStructure::new(vec![theta], Some(groups), colors), owner)
    }
}

/// Adjacency matrix of a graph, with edge multiplicities (loops counted twice).
pub fn adjacency_matrix(g: &HalfEdgeGraph) -> IntMatrix {
    let n = g.num_vertices();
    let mut m = IntMatrix::zeros(n, n);
    for d in 0..g.num_darts() {
        let (u, w) = (g.vertex_of(d), g.head(d));
        m.set(u, w, m.get(u, w) + 1);
    }
    m
}

fn simple_adjacency(g: &HalfEdgeGraph) -> Result<Vec<Vec<bool>>, AnalysisError> {
    let n = g.num_vertices();
    let mut adj = vec![vec![false; n]; n];
    for d in 0..g.num_darts() {
        let (u, w) = (g.vertex_of(d), g.head(d));
        if u == w || core::mem::replace(&mut adj[u][w], true) {
            return Err(AnalysisError::NotSimple);
        }
    }
    Ok(adj)
}

/// Determinant of the adjacency matrix as a sum over spanning subgraphs whose
/// components are single edges or cycles, each weighted
/// `(-1)^(even components) · 2^(cycles)`.
pub fn harary_determinant(g: &HalfEdgeGraph) -> Result<BigInt, AnalysisError> {
    let n = g.num_vertices();
    if n > HARARY_MAX_VERTICES {
        return Err(AnalysisError::TooLarge { vertices: n, cap: HARARY_MAX_VERTICES });
    }
    let adj = simple_adjacency(g)?;
    let mut total = BigInt::zero();
    harary_rec(&adj, 0, 0, 0, &mut total);
    Ok(total)
}

fn harary_rec(adj: &[Vec<bool>], covered: u32, even: u32, cycles: u32, total: &mut BigInt) {
    let n = adj.len();
    let Some(v) = (0..n).find(|&v| covered & (1 << v) == 0) else {
        let term = BigInt::one() << cycles;
        *total += if even % 2 == 1 { -term } else { term };
        return;
    };
    let covered = covered | 1 << v;
    for u in v + 1..n {
        if adj[v][u] && covered & (1 << u) == 0 {
            harary_rec(adj, covered | 1 << u, even + 1, cycles, total);
        }
    }
    // cycles through v whose other vertices are uncovered; each undirected
    // cycle once, by requiring the second vertex below the last
    let mut path = vec![v];
    cycle_rec(adj, v, covered, &mut path, even, cycles, total);
}

fn cycle_rec(adj: &[Vec<bool>], start: usize, covered: u32, path: &mut Vec<usize>, even: u32, cycles: u32, total: &mut BigInt) {
    let last = *path.last().expect("path starts at start");
    for u in 0..adj.len() {
        if !adj[last][u] || covered & (1 << u) != 0 {
            continue;
        }
        path.push(u);
        if path.len() >= 3 && adj[u][start] && path[1] < u {
            let parity = path.len().is_multiple_of(2) as u32;
            harary_rec(adj, covered | 1 << u, even + parity, cycles + 1, total);
        }
        cycle_rec(adj, start, covered | 1 << u, path, even, cycles, total);
        path.pop();
    }
}

/// Number of perfect matchings of a simple graph, up to the Harary size cap.
pub fn perfect_matching_count(g: &HalfEdgeGraph) -> Result<u64, AnalysisError> {
    let n = g.num_vertices();
    if n > HARARY_MAX_VERTICES {
        return Err(AnalysisError::TooLarge { vertices: n, cap: HARARY_MAX_VERTICES });
    }
    let adj = simple_adjacency(g)?;
    fn rec(adj: &[Vec<bool>], covered: u32) -> u64 {
        let Some(v) = (0..adj.len()).find(|&v| covered & (1 << v) == 0) else {
            return 1;
        };
        (v + 1..adj.len())
            .filter(|&u| adj[v][u] && covered & (1 << u) == 0)
            .map(|u| rec(adj, covered | 1 << v | 1 << u))
            .sum()
    }
    Ok(rec(&adj, 0))
}

/// Red–blue crossing pattern of the curves on a surface.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntersectionData {
    /// Number of red curves; they are vertices `0..red_count` of the graph.
    pub red_count: usize,
    pub blue_count: usize,
    /// `a[i][j]` = crossings of red curve `i` with blue curve `j`.
    pub a: IntMatrix,
    /// One vertex per curve (red first), one edge per crossing point.
    pub graph: HalfEdgeGraph,
}

/// Reads the crossings off the tiling vertices: each one is where exactly
/// one red and one blue curve meet.
pub fn intersection_data(x: &AssembledSurface, curves: &CurveSystem) -> Result<IntersectionData, AnalysisError> {
    let (r, b) = (curves.red().len(), curves.blue().len());
    let mut a = IntMatrix::zeros(r, b);
    for corner in x.corners() {
        let red = corner.iter().find(|&&s| x.is_red(s)).map(|&s| curves.curve_of_slot(s));
        let blue = corner.iter().find(|&&s| !x.is_red(s)).map(|&s| curves.curve_of_slot(s));
        if let (Some(i), Some(j)) = (red, blue) {
            a.set(i, j - r, a.get(i, j - r) + 1);
        }
    }
    let mut edges = Vec::new();
    for i in 0..r {
        for j in 0..b {
            let count = a.get(i, j);
            if count > 1 {
                return Err(AnalysisError::MultipleIntersection { red: i, blue: j, count: count as usize });
            }
            if count == 1 {
                edges.push((i, r + j));
            }
        }
    }
    let graph = intersection_graph(r + b, &edges)?;
    Ok(IntersectionData { red_count: r, blue_count: b, a, graph })
}

fn intersection_graph(n: usize, edges: &[(usize, usize)]) -> Result<HalfEdgeGraph, AnalysisError> {
    let mut touched = vec![false; n];
    for &(u, w) in edges {
        touched[u] = true;
        touched[w] = true;
    }
    if let Some(v) = touched.iter().position(|&t| !t) {
        return Err(AnalysisError::IsolatedCurve(v));
    }
    Ok(HalfEdgeGraph::from_edges(n, edges).expect("vertex indices in range"))
}

impl IntersectionData {
    /// Builds intersection data straight from a red-by-blue 0/1 matrix.
    pub fn from_matrix(a: IntMatrix) -> Result<Self, AnalysisError> {
        let (r, b) = (a.rows(), a.cols());
        let mut edges = Vec::new();
        for i in 0..r {
            for j in 0..b {
                match a.get(i, j) {
                    0 => {}
                    1 => edges.push((i, r + j)),
                    count => {
                        return Err(AnalysisError::MultipleIntersection { red: i, blue: j, count: count as usize })
                    }
                }
            }
        }
        let graph = intersection_graph(r + b, &edges)?;
        Ok(Self { red_count: r, blue_count: b, a, graph })
    }

    pub fn num_curves(&self) -> usize {
        self.red_count + self.blue_count
    }
}

/// `[[0, A], [Aᵀ, 0]]`: the adjacency matrix of the intersection graph.
pub fn dtilde(d: &IntersectionData) -> IntMatrix {
    d.a.bipartite_block(1)
}

/// Derivatives of curve lengths along the twists about each curve: every
/// crossing contributes the cosine of its angle, `θ` from red to blue and
/// `π - θ` from blue to red, giving `cos θ · [[0, A], [-Aᵀ, 0]]`.
pub fn twist_matrix(d: &IntersectionData, theta: f64) -> Result<Vec<Vec<f64>>, AnalysisError> {
    if !(theta > 0.0 && theta < core::f64::consts::PI) {
        return Err(AnalysisError::DomainError);
    }
    let c = cos(theta);
    Ok(d.a.bipartite_block(-1).to_rows().into_iter().map(|row| row.into_iter().map(|v| c * v as f64).collect()).collect())
}

/// What the exact linear algebra says about the surface as a critical point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CriticalityReport {
    pub systole_count: usize,
    pub genus: i64,
    pub det_dtilde: BigInt,
    pub rank_dtilde: usize,
    pub theta_dependence: &'static str,
    /// The index of the surface as a critical point is at most the number of systoles.
    pub index_upper_bound: usize,
    /// Set when the twist matrix is invertible: the locus keeping all systoles
    /// has codimension at most `|S| - 1`.
    pub codimension_bound: Option<usize>,
    /// `6g - 6 - (|S| - 1)` when the codimension bound applies.
    pub dimension_lower_bound: Option<i64>,
}

pub const THETA_DEPENDENCE: &str = "D = cos(theta) * [[0, A], [-A^T, 0]]";

pub fn criticality_report(x: &AssembledSurface, d: &IntersectionData, theta: f64) -> Result<CriticalityReport, AnalysisError> {
    if !(theta > 0.0 && theta < core::f64::consts::PI) {
        return Err(AnalysisError::DomainError);
    }
    let m = dtilde(d);
    let det = m.determinant()?;
    let rank = m.rank();
    let count = d.num_curves();
    let genus = x.genus();
    let transversal = !det.is_zero() && (theta - FRAC_PI_2).abs() > 1e-12;
    let codimension_bound = transversal.then(|| count.saturating_sub(1));
    let dimension_lower_bound = codimension_bound.map(|c| 6 * genus - 6 - c as i64);
    Ok(CriticalityReport {
        systole_count: count,
        genus,
        det_dtilde: det,
        rank_dtilde: rank,
        theta_dependence: THETA_DEPENDENCE,
        index_upper_bound: count,
        codimension_bound,
        dimension_lower_bound,
    })
}

impl CriticalityReport {
    pub fn det_magnitude(&self) -> BigInt {
        self.det_dtilde.abs()
    }
}

/// Outcome of an induced-subtree search.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubtreeSearch {
    /// The first accepted vertex set, sorted.
    pub found: Option<Vec<usize>>,
    /// Candidate trees handed to the predicate.
    pub tested: usize,
    /// Whether the enumeration stopped at the limit before finishing.
    pub truncated: bool,
}

/// Enumerates induced subtrees of a simple graph by size, then
/// lexicographically, and returns the first whose vertex set satisfies
/// `accept`. With `even_only`, odd orders are skipped. At most `limit`
/// subtrees are generated.
pub fn induced_subtree_search<F: FnMut(&[usize]) -> bool>(
    g: &HalfEdgeGraph,
    even_only: bool,
    limit: usize,
    mut accept: F,
) -> Result<SubtreeSearch, AnalysisError> {
    let adj = simple_adjacency(g)?;
    let n = g.num_vertices();
    let mut by_size: BTreeMap<usize, Vec<Vec<usize>>> = BTreeMap::new();
    let mut generated = 0;
    let mut truncated = false;
    'roots: for v in 0..n {
        let ext: Vec<usize> = (v + 1..n).filter(|&u| adj[v][u]).collect();
        let mut stack = vec![(vec![v], ext)];
        while let Some((sub, mut ext)) = stack.pop() {
            generated += 1;
            if generated > limit {
                truncated = true;
                break 'roots;
            }
            if !even_only || sub.len() % 2 == 0 {
                let mut sorted = sub.clone();
                sorted.sort_unstable();
                by_size.entry(sub.len()).or_default().push(sorted);
            }
            while let Some(w) = ext.pop() {
                // keep the induced subgraph a tree: w touches exactly one chosen vertex
                if sub.iter().filter(|&&s| adj[w][s]).count() != 1 {
                    continue;
                }
                let mut next_ext = ext.clone();
                for u in v + 1..n {
                    if adj[w][u] && !sub.contains(&u) && u != w && !next_ext.contains(&u) && !sub.iter().any(|&s| adj[s][u]) {
                        next_ext.push(u);
                    }
                }
                let mut next_sub = sub.clone();
                next_sub.push(w);
                stack.push((next_sub, next_ext));
            }
        }
    }
    let mut tested = 0;
    for (_, mut sets) in by_size {
        sets.sort_unstable();
        for s in sets {
            tested += 1;
            if accept(&s) {
                return Ok(SubtreeSearch { found: Some(s), tested, truncated });
            }
        }
    }
    Ok(SubtreeSearch { found: None, tested, truncated })
}

/// Default cap on generated subtrees.
pub const DEFAULT_SUBTREE_LIMIT: usize = 2_000_000;

/// Smallest induced subtree of even order in the intersection graph whose
/// curves fill the surface.
pub fn tree_subset_search(
    d: &IntersectionData,
    x: &AssembledSurface,
    curves: &CurveSystem,
    limit: usize,
) -> Result<SubtreeSearch, AnalysisError> {
    induced_subtree_search(&d.graph, true, limit, |s| fills_check(x, curves, s).fills)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::catalog as graphs;

    pub(crate) fn k5_matrix() -> IntMatrix {
        IntMatrix::from_rows(&[
            vec![1, 0, 0, 1, 0, 1, 0, 0, 0, 0],
            vec![0, 1, 0, 1, 1, 0, 0, 0, 0, 0],
            vec![0, 0, 1, 0, 1, 1, 0, 0, 0, 0],
            vec![0, 0, 0, 1, 0, 0, 1, 0, 0, 1],
            vec![0, 0, 0, 0, 1, 0, 0, 1, 0, 1],
            vec![0, 0, 0, 0, 0, 1, 0, 0, 1, 1],
            vec![1, 0, 0, 0, 0, 0, 1, 0, 1, 0],
            vec![0, 1, 0, 0, 0, 0, 1, 1, 0, 0],
            vec![0, 0, 1, 0, 0, 0, 0, 1, 1, 0],
            vec![1, 1, 1, 0, 0, 0, 0, 0, 0, 0],
        ])
        .unwrap()
    }

    /// Cofactor expansion, exponential but independent of elimination.
    fn laplace(m: &[Vec<i64>]) -> i128 {
        let n = m.len();
        if n == 0 {
            return 1;
        }
        (0..n)
            .filter(|&j| m[0][j] != 0)
            .map(|j| {
                let minor: Vec<Vec<i64>> =
                    m[1..].iter().map(|r| r.iter().enumerate().filter(|&(k, _)| k != j).map(|(_, &v)| v).collect()).collect();
                let s = if j % 2 == 0 { 1 } else { -1 };
                s * m[0][j] as i128 * laplace(&minor)
            })
            .sum()
    }

    #[test]
    fn k5_determinant() {
        let a = k5_matrix();
        assert_eq!(a.determinant().unwrap(), BigInt::from(48));
        assert_eq!(laplace(&a.to_rows()), 48);
        assert_eq!(a.bipartite_block(1).determinant().unwrap().abs(), BigInt::from(48 * 48));
    }

    #[test]
    fn trivial_determinants() {
        assert_eq!(IntMatrix::identity(7).determinant().unwrap(), BigInt::one());
        let m = IntMatrix::from_rows(&[vec![1, 2, 3], vec![4, 5, 6], vec![1, 2, 3]]).unwrap();
        assert!(m.determinant().unwrap().is_zero());
        assert_eq!(m.rank(), 2);
        assert!(IntMatrix::zeros(2, 3).determinant().is_err());
        assert_eq!(IntMatrix::zeros(0, 0).determinant().unwrap(), BigInt::one());
    }

    #[test]
    fn harary_small_cases() {
        assert_eq!(harary_determinant(&graphs::path(2)).unwrap(), BigInt::from(-1));
        assert_eq!(harary_determinant(&graphs::cycle(3)).unwrap(), BigInt::from(2));
        for n in 3..=12 {
            let c = graphs::cycle(n);
            assert_eq!(harary_determinant(&c).unwrap(), adjacency_matrix(&c).determinant().unwrap(), "C{n}");
        }
        assert_eq!(harary_determinant(&graphs::cycle(6)).unwrap(), BigInt::from(-4));
        assert!(harary_determinant(&graphs::path(17)).is_err());
        assert!(matches!(harary_determinant(&graphs::theta(2)), Err(AnalysisError::NotSimple)));
    }

    #[test]
    fn permutation_equivalence_finds_witness() {
        let a = k5_matrix();
        let rows = [3, 1, 4, 0, 2, 9, 8, 5, 7, 6];
        let cols = [9, 0, 4, 2, 8, 6, 1, 3, 7, 5];
        let mut b = IntMatrix::zeros(10, 10);
        for i in 0..10 {
            for j in 0..10 {
                b.set(rows[i], cols[j], a.get(i, j));
            }
        }
        assert!(a.permutation_equivalence(&b).is_some());
        assert!(a.permutation_equivalence(&a.transpose()).is_some());
        let mut c = b.clone();
        c.set(0, 0, 1 - c.get(0, 0));
        assert!(a.permutation_equivalence(&c).is_none());
    }

    #[test]
    fn subtree_search_on_paths_and_cycles() {
        let c6 = graphs::cycle(6);
        let mut sizes = Vec::new();
        let r = induced_subtree_search(&c6, false, usize::MAX, |s| {
            sizes.push(s.len());
            false
        })
        .unwrap();
        assert!(r.found.is_none());
        // induced subtrees of C6: 6 of each order 1..=5
        assert_eq!(sizes.len(), 30);
        assert!(sizes.windows(2).all(|w| w[0] <= w[1]));
        let k = induced_subtree_search(&graphs::complete(4), true, usize::MAX, |_| true).unwrap();
        assert_eq!(k.found, Some(vec![0, 1]));
        let empty = HalfEdgeGraph::from_edges(0, &[]).unwrap();
        assert!(induced_subtree_search(&empty, true, 10, |_| true).unwrap().found.is_none());
    }

    #[test]
    fn twist_matrix_is_antisymmetric() {
        let d = IntersectionData::from_matrix(k5_matrix()).unwrap();
        let t = twist_matrix(&d, 1.0).unwrap();
        for i in 0..20 {
            for j in 0..20 {
                assert!((t[i][j] + t[j][i]).abs() < 1e-15);
            }
        }
        let zero = twist_matrix(&d, FRAC_PI_2).unwrap();
        assert!(zero.iter().flatten().all(|v| v.abs() < 1e-15));
    }
}
