//! Property tests: exact linear algebra against independent oracles, geometry
//! identities, and structural invariants of graphs, maps and covers.

use std::f64::consts::PI;

use forge_core::analysis::{self, IntMatrix};
use forge_core::graph::{self, catalog as graphs, HalfEdgeGraph};
use forge_core::hyperbolic::{self, build_polygon, distance, Isometry};
use num_bigint::BigInt;
use num_traits::Signed;
use proptest::prelude::*;

fn laplace(m: &[Vec<i64>]) -> i128 {
    if m.is_empty() {
        return 1;
    }
    (0..m.len())
        .filter(|&j| m[0][j] != 0)
        .map(|j| {
            let minor: Vec<Vec<i64>> =
                m[1..].iter().map(|r| r.iter().enumerate().filter(|&(k, _)| k != j).map(|(_, &v)| v).collect()).collect();
            let s = if j % 2 == 0 { 1 } else { -1 };
            s * m[0][j] as i128 * laplace(&minor)
        })
        .sum()
}

/// Rank modulo a prime by Gaussian elimination.
fn rank_mod(m: &[Vec<i64>], p: i64) -> usize {
    let mut a: Vec<Vec<i64>> = m.iter().map(|r| r.iter().map(|v| v.rem_euclid(p)).collect()).collect();
    let cols = a.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        let Some(piv) = (r..a.len()).find(|&i| a[i][c] != 0) else { continue };
        a.swap(r, piv);
        let inv = pow_mod(a[r][c], p - 2, p);
        for i in 0..a.len() {
            if i != r && a[i][c] != 0 {
                let f = a[i][c] * inv % p;
                for j in 0..cols {
                    a[i][j] = (a[i][j] - f * a[r][j]).rem_euclid(p);
                }
            }
        }
        r += 1;
    }
    r
}

fn pow_mod(mut b: i64, mut e: i64, p: i64) -> i64 {
    let mut acc = 1;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    acc
}

fn square(max: usize, lo: i64, hi: i64) -> impl Strategy<Value = Vec<Vec<i64>>> {
    (0..=max).prop_flat_map(move |n| prop::collection::vec(prop::collection::vec(lo..=hi, n), n))
}

fn simple_graph(max: usize) -> impl Strategy<Value = HalfEdgeGraph> {
    (2..=max).prop_flat_map(|n| {
        prop::collection::vec(any::<bool>(), n * (n - 1) / 2).prop_filter_map("isolated vertex", move |bits| {
            let mut edges = Vec::new();
            let mut k = 0;
            for i in 0..n {
                for j in i + 1..n {
                    if bits[k] {
                        edges.push((i, j));
                    }
                    k += 1;
                }
            }
            HalfEdgeGraph::from_edges(n, &edges).ok()
        })
    })
}

fn bipartite_graph(max: usize) -> impl Strategy<Value = HalfEdgeGraph> {
    (1..=max / 2, 1..=max / 2).prop_flat_map(|(r, b)| {
        prop::collection::vec(any::<bool>(), r * b).prop_filter_map("isolated vertex", move |bits| {
            let edges: Vec<(usize, usize)> =
                (0..r * b).filter(|&k| bits[k]).map(|k| (k / b, r + k % b)).collect();
            HalfEdgeGraph::from_edges(r + b, &edges).ok()
        })
    })
}

/// A random labelled tree from a Prüfer sequence.
fn tree(max: usize) -> impl Strategy<Value = HalfEdgeGraph> {
    (2..=max).prop_flat_map(|n| {
        prop::collection::vec(0..n, n - 2).prop_map(move |seq| {
            let mut degree = vec![1; n];
            for &v in &seq {
                degree[v] += 1;
            }
            let mut edges = Vec::new();
            for &v in &seq {
                let leaf = (0..n).find(|&u| degree[u] == 1).unwrap();
                edges.push((leaf, v));
                degree[leaf] -= 1;
                degree[v] -= 1;
            }
            let rest: Vec<usize> = (0..n).filter(|&u| degree[u] == 1).collect();
            edges.push((rest[0], rest[1]));
            HalfEdgeGraph::from_edges(n, &edges).unwrap()
        })
    })
}

fn relabel(g: &HalfEdgeGraph, perm: &[usize]) -> HalfEdgeGraph {
    let edges: Vec<(usize, usize)> = g.edge_list().iter().map(|&(u, w)| (perm[u], perm[w])).collect();
    HalfEdgeGraph::from_edges(g.num_vertices(), &edges).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn bareiss_matches_cofactor_expansion(rows in square(6, -6, 6)) {
        let m = IntMatrix::from_rows(&rows).unwrap();
        prop_assert_eq!(m.determinant().unwrap(), BigInt::from(laplace(&rows)));
    }

    #[test]
    fn rank_matches_modular_rank(rows in (1usize..=6, 1usize..=6).prop_flat_map(|(r, c)| prop::collection::vec(prop::collection::vec(-3i64..=3, c), r))) {
        let m = IntMatrix::from_rows(&rows).unwrap();
        let oracle = rank_mod(&rows, 1_000_000_007).max(rank_mod(&rows, 998_244_353));
        prop_assert_eq!(m.rank(), oracle);
    }

    #[test]
    fn block_determinant_is_square_of_a(rows in square(5, 0, 1)) {
        let a = IntMatrix::from_rows(&rows).unwrap();
        let det_a = a.determinant().unwrap();
        let det_d = a.bipartite_block(1).determinant().unwrap();
        prop_assert_eq!(det_d.abs(), &det_a * &det_a);
        // the antisymmetric twist pattern has the same rank as the symmetric one
        prop_assert_eq!(a.bipartite_block(-1).rank(), a.bipartite_block(1).rank());
    }

    #[test]
    fn harary_matches_elimination(g in simple_graph(9)) {
        let det = analysis::adjacency_matrix(&g).determinant().unwrap();
        prop_assert_eq!(analysis::harary_determinant(&g).unwrap(), det);
    }

    #[test]
    fn harary_matches_elimination_on_bipartite(g in bipartite_graph(12)) {
        let det = analysis::adjacency_matrix(&g).determinant().unwrap();
        prop_assert_eq!(analysis::harary_determinant(&g).unwrap(), det);
    }

    #[test]
    fn even_trees_have_at_most_one_matching(t in tree(14)) {
        let m = analysis::perfect_matching_count(&t).unwrap();
        prop_assert!(m <= 1);
        prop_assert_eq!(analysis::harary_determinant(&t).unwrap().abs(), BigInt::from(m));
    }

    #[test]
    fn permutation_equivalence_recovers_shuffles(
        rows in (1usize..=7, 1usize..=7).prop_flat_map(|(r, c)| prop::collection::vec(prop::collection::vec(0i64..=2, c), r)),
        seed in any::<u64>(),
    ) {
        let a = IntMatrix::from_rows(&rows).unwrap();
        let shuffle = |n: usize, salt: u64| {
            let mut p: Vec<usize> = (0..n).collect();
            p.sort_by_key(|&i| (i as u64 + 1).wrapping_mul(seed ^ salt).rotate_left(17));
            p
        };
        let (rp, cp) = (shuffle(a.rows(), 1), shuffle(a.cols(), 2));
        let mut b = IntMatrix::zeros(a.rows(), a.cols());
        for i in 0..a.rows() {
            for j in 0..a.cols() {
                b.set(rp[i], cp[j], a.get(i, j));
            }
        }
        let (r, c) = a.permutation_equivalence(&b).expect("shuffled copy is equivalent");
        for i in 0..a.rows() {
            for j in 0..a.cols() {
                prop_assert_eq!(b.get(r[i], c[j]), a.get(i, j));
            }
        }
    }

    #[test]
    fn isomorphism_survives_relabelling(g in simple_graph(8), seed in any::<u64>()) {
        let n = g.num_vertices();
        let mut perm: Vec<usize> = (0..n).collect();
        perm.sort_by_key(|&i| (i as u64 + 7).wrapping_mul(seed | 1).rotate_left(29));
        let h = relabel(&g, &perm);
        let iso = graph::find_graph_isomorphism(&g, &h, false, &[]);
        prop_assert!(iso.is_some());
        let order_g = graph::automorphism_group(&g, false).order;
        prop_assert_eq!(order_g, graph::automorphism_group(&h, false).order);
    }

    #[test]
    fn bfs_girth_matches_cycle_enumeration(g in simple_graph(7)) {
        match graph::girth(&g) {
            Ok(gi) => {
                prop_assert_eq!(Some(gi.length), graph::girth_length(&g));
                prop_assert!(!gi.witnesses.is_empty());
                prop_assert!(gi.witnesses.iter().all(|c| c.len() == gi.length));
            }
            Err(_) => prop_assert_eq!(graph::girth_length(&g), None),
        }
    }

    #[test]
    fn deformed_polygons_are_equilateral(q in 3usize..=12, theta in 0.15f64..(PI - 0.15)) {
        let p = build_polygon(q, theta).unwrap();
        for (k, l) in p.side_lengths().iter().enumerate() {
            prop_assert!((l - p.side_length).abs() < 1e-10, "side {}", k);
        }
        let sum: f64 = p.interior_angles().iter().sum();
        prop_assert!((sum - q as f64 * PI).abs() < 1e-9);
        let s = hyperbolic::deformed_side_length(q, theta).unwrap();
        let mirrored = hyperbolic::deformed_side_length(q, PI - theta).unwrap();
        prop_assert!((s - mirrored).abs() < 1e-12);
    }

    #[test]
    fn side_pairings_are_isometries(q in 3usize..=8, theta in 0.3f64..2.8, i in 0usize..16, j in 0usize..16) {
        let p = build_polygon(q, theta).unwrap();
        let n = 2 * q;
        let (to, from) = (i % n, j % n);
        let g = p.side_pairing(to, from);
        prop_assert!(g.form_defect() < 1e-9);
        prop_assert!(g.preserves_orientation());
        let a = g.apply(p.vertex(from));
        prop_assert!(distance(&a, p.vertex(to + 1)) < 1e-8);
        let composite = g.compose(&g.inverse());
        prop_assert!(composite.form_defect() < 1e-8);
    }

    #[test]
    fn boosts_have_their_rapidity_as_length(t in 0.01f64..5.0, angle in 0.0f64..6.28) {
        let r = Isometry::rotation(angle);
        let conj = r.compose(&Isometry::boost(t)).compose(&r.inverse());
        prop_assert!((conj.translation_length().unwrap() - t).abs() < 1e-9);
    }
}

#[test]
fn cover_family_doubles_girth() {
    for d in 2..=5 {
        let c = forge_core::covers::mod2_homology_cover(&graphs::theta(d), 1 << 20).unwrap();
        let cert = forge_core::covers::certify_girth_doubling(&c).unwrap();
        assert_eq!((cert.base_girth, cert.total_girth), (2, 4));
        assert_eq!(c.deck_group().len(), c.degree());
    }
}
