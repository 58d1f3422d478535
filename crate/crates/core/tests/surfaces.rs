//! End-to-end constructions: covers, blocks, assembled surfaces and their analysis.

use forge_core::analysis::{self, IntMatrix};
use forge_core::assembly::{self, search, AssembledSurface, Gluing};
use forge_core::covers::{self, CoveringMap, DEFAULT_MAX_COVER_SIZE};
use forge_core::graph::catalog as graphs;
use forge_core::hyperbolic::deformed_side_length;
use forge_core::maps::catalog as maps;
use num_bigint::BigInt;

fn chain(g: usize) -> AssembledSurface {
    let block = assembly::build_block(&maps::theta_map(g + 1)).unwrap();
    let cg = covers::make_colored_gluing_graph(&CoveringMap::identity(&graphs::theta(g + 1))).unwrap();
    assembly::assemble(&block, &Gluing::from_colored(&cg)).unwrap()
}

fn cube_over_theta6_cover() -> AssembledSurface {
    let cover = covers::mod2_homology_cover(&graphs::theta(6), DEFAULT_MAX_COVER_SIZE).unwrap();
    let cg = covers::make_colored_gluing_graph(&cover).unwrap();
    let block = assembly::build_block(&maps::cube()).unwrap();
    assembly::assemble(&block, &Gluing::from_colored(&cg)).unwrap()
}

fn k5_fixture() -> IntMatrix {
    let rows: Vec<Vec<i64>> = [
        "1001010000", "0101100000", "0010110000", "0001001001", "0000100101",
        "0000010011", "1000001010", "0100001100", "0010000110", "1110000000",
    ]
    .iter()
    .map(|r| r.bytes().map(|b| (b - b'0') as i64).collect())
    .collect();
    IntMatrix::from_rows(&rows).unwrap()
}

#[test]
fn chain_determinants_alternate() {
    for g in 2..=8 {
        let x = chain(g);
        let curves = x.trace_curves().unwrap();
        let d = analysis::intersection_data(&x, &curves).unwrap();
        // intersection graph is one cycle through all 2g + 2 curves
        assert_eq!(d.graph.num_edges(), 2 * g + 2);
        assert!(d.graph.is_connected());
        assert!((0..d.graph.num_vertices()).all(|v| d.graph.valence(v) == 2));
        let det = analysis::dtilde(&d).determinant().unwrap();
        let want = if g % 2 == 0 { -4 } else { 0 };
        assert_eq!(det, BigInt::from(want), "g = {g}");
        if d.graph.num_vertices() <= 14 {
            assert_eq!(analysis::harary_determinant(&d.graph).unwrap(), det);
        }
    }
}

#[test]
fn chain_criticality() {
    let x = chain(2);
    let curves = x.trace_curves().unwrap();
    let d = analysis::intersection_data(&x, &curves).unwrap();
    let r = analysis::criticality_report(&x, &d, 1.0).unwrap();
    assert_eq!(r.index_upper_bound, 6);
    assert_eq!(r.dimension_lower_bound, Some(1));
    let odd = chain(3);
    let c3 = odd.trace_curves().unwrap();
    let d3 = analysis::intersection_data(&odd, &c3).unwrap();
    let r3 = analysis::criticality_report(&odd, &d3, 1.0).unwrap();
    assert_eq!(r3.codimension_bound, None);
    assert!(r3.rank_dtilde < r3.systole_count);
}

#[test]
fn chain_filling_subsets() {
    for g in [2, 4] {
        let x = chain(g);
        let curves = x.trace_curves().unwrap();
        let d = analysis::intersection_data(&x, &curves).unwrap();
        let found = analysis::tree_subset_search(&d, &x, &curves, analysis::DEFAULT_SUBTREE_LIMIT).unwrap();
        let set = found.found.expect("an even induced path fills");
        assert_eq!(set.len(), 2 * g);
        // removing two intersecting curves
        let (u, w) = d.graph.edge_list()[0];
        let rest: Vec<usize> = (0..curves.len()).filter(|&i| i != u && i != w).collect();
        assert!(assembly::fills_check(&x, &curves, &rest).fills);
    }
}

#[test]
fn k5_gluing_reproduces_the_matrix() {
    let block = assembly::build_block(&maps::tetrahedron()).unwrap();
    let fixture = k5_fixture();
    let out = search::search_gluings(&block, &graphs::complete(5), |g| {
        let x = assembly::assemble(&block, g).unwrap();
        let curves = x.trace_curves().unwrap();
        analysis::intersection_data(&x, &curves).is_ok_and(|d| d.a.permutation_equivalence(&fixture).is_some())
    });
    let gluing = out.gluing.expect("a gluing with the fixture's intersection matrix");
    let x = assembly::assemble(&block, &gluing).unwrap();
    assert_eq!(x.genus(), 6);
    let curves = x.trace_curves().unwrap();
    let d = analysis::intersection_data(&x, &curves).unwrap();
    assert_eq!(d.a.determinant().unwrap().magnitude(), &48u32.into());
    let r = analysis::criticality_report(&x, &d, 1.0).unwrap();
    assert_eq!(r.systole_count, 20);
    assert_eq!(r.dimension_lower_bound, Some(11));
    let cert = assembly::certify_systoles(&x, &curves).unwrap();
    assert_eq!(cert.clauses.len(), 5);
}

#[test]
fn cube_block_over_girth_four_cover() {
    let x = cube_over_theta6_cover();
    assert_eq!(x.genus(), 129);
    assert_eq!(x.genus_closed_form(), Some(129));
    let curves = x.trace_curves().unwrap();
    assert_eq!((curves.red().len(), curves.blue().len()), (192, 192));
    assert_eq!(x.systole_count(&curves).unwrap(), 384);
    let s = deformed_side_length(3, 1.3).unwrap();
    for c in curves.iter() {
        assert!((x.holonomy_length(c, 1.3).unwrap() - 4.0 * s).abs() < 1e-8);
    }
    let cert = assembly::certify_systoles(&x, &curves).unwrap();
    assert!((cert.minimal_length - cert.systole_length).abs() < 1e-6);
}
