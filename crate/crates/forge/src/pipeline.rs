//! Pipelines behind `reproduce`, `verify-lemmas`, `assemble` and `analyze`.

use std::f64::consts::{FRAC_PI_2, PI};

use anyhow::{bail, Result};
use forge_core::analysis::{self, IntersectionData};
use forge_core::assembly::{self, AssembledSurface, CurveSystem};
use forge_core::covers::{self, CoveringMap};
use forge_core::graph::{self, HalfEdgeGraph};
use forge_core::hyperbolic::{self, build_polygon};
use num_bigint::BigInt;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use serde_json::{json, Value};

use crate::config::Settings;
use crate::examples::{self, Example};
use crate::report::{exact, RunReport};

/// Values of `q` accepted by [`verify_lemmas`].
pub const LEMMA_Q_RANGE: std::ops::RangeInclusive<usize> = 3..=12;

pub fn reproduce(ex: Example, s: &Settings) -> Result<RunReport> {
    let mut r = RunReport::new(format!("reproduce {ex}"));
    r.input("example", ex.to_string().as_bytes());
    if let Example::DoubledThetaTower { d, n } = ex {
        tower_clauses(&mut r, d, n, s);
        return Ok(r);
    }
    if ex == Example::K5 {
        r.input("k5_intersection_matrix.v1.json", examples::K5_MATRIX_JSON.as_bytes());
    }
    let x = match ex {
        Example::K5 => match examples::k5_surface() {
            Ok((x, out)) => {
                r.check(
                    "k5_gluing_found",
                    "a gluing of tetrahedra along K5 closes every blue curve and matches the matrix fixture",
                    true,
                    json!({ "closing_gluings_seen": exact(out.closing_gluings), "search_nodes": exact(out.nodes) }),
                );
                x
            }
            Err(e) => {
                r.error("k5_gluing_found", "a gluing of tetrahedra along K5 matches the matrix fixture", e);
                return Ok(r);
            }
        },
        _ => ex.surface(s.max_cover_size)?,
    };
    r.lap("assemble");
    surface_clauses(&mut r, &x, Some(ex), s);
    Ok(r)
}

/// Checks shared by every assembled surface, with family expectations when `ex` names one.
pub fn surface_clauses(r: &mut RunReport, x: &AssembledSurface, ex: Option<Example>, s: &Settings) {
    let chain_g = match ex {
        Some(Example::Chain(g)) => Some(g),
        Some(Example::BeachballTheta(q)) => Some(q - 1),
        _ => None,
    };
    let euler = x.genus();
    let closed = x.genus_closed_form();
    let expected = ex.and_then(|e| e.expected_genus());
    r.check(
        "genus",
        "the Euler count of the tiling and the closed form give the same genus, equal to the expected one",
        closed == Some(euler) && expected.is_none_or(|g| g == euler),
        json!({ "euler": exact(euler), "closed_form": closed.map(exact), "expected": expected.map(exact) }),
    );

    let curves = match x.trace_curves() {
        Ok(c) => c,
        Err(e) => {
            r.error("curves_close", "every red and blue curve closes up after p sides", e);
            return;
        }
    };
    r.lap("trace curves");
    let formula = x.systole_count_formula();
    let traced = curves.len();
    let expected = ex.and_then(|e| e.expected_systoles());
    let (red, blue) = (curves.red().len(), curves.blue().len());
    r.check(
        "systole_count",
        "the number of traced red and blue curves equals 4q(g-1)/((q-2)p)",
        formula == Some(traced) && expected.is_none_or(|n| n == traced) && (ex != Some(Example::K5) || red == blue),
        json!({
            "formula": formula.map(exact), "traced": exact(traced), "red": exact(red), "blue": exact(blue),
            "expected": expected.map(exact),
        }),
    );
    let (p, q) = (x.block().p(), x.block().q());
    if (p, q) == (2, 3) {
        let want = 6 * euler - 6;
        r.check(
            "six_g_minus_six",
            "with hexagons glued two around each boundary the systole count is 6g-6",
            traced as i64 == want,
            json!({ "traced": exact(traced), "six_g_minus_six": exact(want) }),
        );
    }

    holonomy_clauses(r, x, &curves, s);
    r.lap("holonomy");

    match assembly::certify_systoles(x, &curves) {
        Ok(cert) => {
            r.check(
                "systole_certificate",
                "no closed path in the tiling is shorter than the red and blue curves",
                cert.clauses.iter().all(|c| c.passed),
                json!({
                    "loops_checked": exact(cert.loops_checked),
                    "systole_length": cert.systole_length,
                    "minimal_length": cert.minimal_length,
                    "clauses": cert.clauses.iter().map(|c| json!({ "name": c.name, "passed": c.passed, "witness": c.witness })).collect::<Vec<_>>(),
                }),
            );
        }
        Err(e) => r.error("systole_certificate", "no closed path in the tiling is shorter than the curves", e),
    }
    r.lap("certificate");

    let full: Vec<usize> = (0..curves.len()).collect();
    let fill = assembly::fills_check(x, &curves, &full);
    r.check(
        "fills",
        "the red and blue curves cut the surface into the interiors of the tiles",
        fill.fills && fill.components.len() == x.num_tiles(),
        json!({ "components": exact(fill.components.len()), "tiles": exact(x.num_tiles()) }),
    );

    let data = match analysis::intersection_data(x, &curves) {
        Ok(d) => d,
        Err(e) => {
            r.error("intersection_data", "each red curve meets each blue curve at most once", e);
            return;
        }
    };
    if ex == Some(Example::K5) {
        k5_matrix_clauses(r, &data);
    }
    let expected_det = match (chain_g, ex) {
        (Some(g), _) => Some(BigInt::from(if g % 2 == 0 { -4 } else { 0 })),
        // a bipartite block of even half-size has determinant det(A)^2
        (None, Some(Example::K5)) => examples::k5_fixture().determinant().ok().map(|d| &d * &d),
        _ => None,
    };
    determinant_clauses(r, x, &data, expected_det, chain_g, s);
    r.lap("determinants");

    if let Some(g) = chain_g {
        chain_filling_clauses(r, x, &curves, &data, g);
        r.lap("filling subsets");
    }

    if x.num_slots() <= assembly::DEFAULT_CELL_CAP {
        match assembly::quad_transitivity(x, assembly::DEFAULT_CELL_CAP) {
            Ok(t) => {
                let required = chain_g.is_some();
                r.check(
                    "transitivity",
                    "the tiling automorphisms act transitively on quadrilaterals and on triangles",
                    !required || (t.quad_transitive && t.triangle_transitive),
                    json!({
                        "required": required,
                        "quad_orbits": exact(t.quad_orbits),
                        "triangle_orbits": exact(t.triangle_orbits),
                        "color_swapping": t.color_swapping,
                        "group_order": exact(&t.group_order),
                    }),
                );
            }
            Err(e) => r.error("transitivity", "the tiling automorphisms act transitively on quadrilaterals", e),
        }
        r.lap("transitivity");
    }
}

fn holonomy_clauses(r: &mut RunReport, x: &AssembledSurface, curves: &CurveSystem, s: &Settings) {
    let (p, q) = (x.block().p(), x.block().q());
    let mut thetas = vec![FRAC_PI_2];
    if (s.theta - FRAC_PI_2).abs() > 1e-15 {
        thetas.push(s.theta);
    }
    for theta in thetas {
        let name = if theta == FRAC_PI_2 { "holonomy_right_angled" } else { "holonomy_deformed" };
        let anchor = "every red and blue curve is a closed geodesic of length p times the side length";
        let side = match hyperbolic::deformed_side_length(q, theta) {
            Ok(v) => v,
            Err(e) => {
                r.error(name, anchor, e);
                continue;
            }
        };
        let want = p as f64 * side;
        let mut worst: f64 = 0.0;
        let mut failure = None;
        for c in curves.iter() {
            match x.holonomy_length(c, theta) {
                Ok(len) => worst = worst.max((len - want).abs()),
                Err(e) => failure = Some(e.to_string()),
            }
        }
        r.check(
            name,
            anchor,
            failure.is_none() && worst <= s.tolerance,
            json!({
                "theta": theta, "expected_length": want, "max_deviation": worst,
                "tolerance": s.tolerance, "curves": exact(curves.len()), "error": failure,
            }),
        );
    }
}

fn k5_matrix_clauses(r: &mut RunReport, data: &IntersectionData) {
    let fixture = examples::k5_fixture();
    let fixture_det = fixture.determinant();
    r.check(
        "fixture_determinant",
        "the shipped 10x10 intersection matrix has determinant 48",
        fixture_det.as_ref().is_ok_and(|d| *d == BigInt::from(48)),
        json!({ "determinant": fixture_det.as_ref().map(exact).ok() }),
    );
    let equiv = data.a.permutation_equivalence(&fixture);
    r.check(
        "intersection_matrix",
        "the traced intersection matrix is the fixture up to relabelling red and blue curves",
        equiv.is_some(),
        json!({
            "row_permutation": equiv.as_ref().map(|e| e.0.clone()),
            "column_permutation": equiv.as_ref().map(|e| e.1.clone()),
        }),
    );
    let det = data.a.determinant();
    r.check(
        "determinant",
        "the traced intersection matrix has determinant of absolute value 48",
        det.as_ref().is_ok_and(|d| d.magnitude() == &48u32.into()),
        json!({ "determinant": det.as_ref().map(exact).ok() }),
    );
}

fn determinant_clauses(
    r: &mut RunReport,
    x: &AssembledSurface,
    data: &IntersectionData,
    expected: Option<BigInt>,
    chain_g: Option<usize>,
    s: &Settings,
) {
    let m = analysis::dtilde(data);
    let det = match m.determinant() {
        Ok(d) => d,
        Err(e) => {
            r.error("dtilde_determinant", "determinant of the symmetric block intersection matrix", e);
            return;
        }
    };
    r.check(
        "dtilde_determinant",
        "the symmetric block intersection matrix has determinant -4 for even chains, 0 for odd chains and det(A)^2 for K5",
        expected.as_ref().is_none_or(|e| *e == det),
        json!({ "determinant": exact(&det), "expected": expected.map(exact), "rank": exact(m.rank()), "size": exact(m.rows()) }),
    );
    if data.num_curves() <= 14 {
        let h = analysis::harary_determinant(&data.graph);
        r.check(
            "harary_agrees",
            "the elementary spanning subgraph expansion gives the same determinant",
            h.as_ref().is_ok_and(|h| *h == det),
            json!({ "harary": h.as_ref().map(exact).ok(), "elimination": exact(&det) }),
        );
    }
    let theta = if (s.theta - FRAC_PI_2).abs() > 1e-12 { s.theta } else { 1.3 };
    match analysis::criticality_report(x, data, theta) {
        Ok(c) => {
            let g = c.genus;
            let expected = match chain_g {
                Some(cg) if cg % 2 == 0 => Some(Some(4 * g - 7)),
                Some(_) => Some(None),
                None if c.systole_count == 20 && g == 6 => Some(Some(11)),
                None => None,
            };
            r.check(
                "criticality",
                "away from right angles, full rank of the twist derivatives bounds the dimension of the critical locus below by 6g-6 minus the systole count plus one",
                expected.is_none_or(|e| e == c.dimension_lower_bound) && (c.codimension_bound.is_some() || c.rank_dtilde < c.systole_count),
                json!({
                    "theta": theta,
                    "systole_count": exact(c.systole_count),
                    "genus": exact(g),
                    "det_dtilde": exact(&c.det_dtilde),
                    "rank_dtilde": exact(c.rank_dtilde),
                    "theta_dependence": c.theta_dependence,
                    "index_upper_bound": exact(c.index_upper_bound),
                    "codimension_bound": c.codimension_bound.map(exact),
                    "dimension_lower_bound": c.dimension_lower_bound.map(exact),
                    "expected_dimension_lower_bound": expected.flatten().map(exact),
                }),
            );
        }
        Err(e) => r.error("criticality", "criticality bounds from the twist derivatives", e),
    }
}

/// Whether `set` induces a path in `g`.
pub fn induces_path(g: &HalfEdgeGraph, set: &[usize]) -> bool {
    let inside = |v: usize| set.contains(&v);
    let mut degree = vec![0usize; set.len()];
    let mut edges = 0;
    for (u, w) in g.edge_list() {
        if inside(u) && inside(w) {
            edges += 1;
            degree[set.iter().position(|&v| v == u).unwrap()] += 1;
            degree[set.iter().position(|&v| v == w).unwrap()] += 1;
        }
    }
    if set.is_empty() || edges + 1 != set.len() || degree.iter().any(|&d| d > 2) {
        return false;
    }
    // a forest with one fewer edge than vertices is connected; with degrees at most 2 it is a path
    let mut seen = vec![set[0]];
    let mut i = 0;
    while i < seen.len() {
        let v = seen[i];
        for w in g.neighbours(v) {
            if inside(w) && !seen.contains(&w) {
                seen.push(w);
            }
        }
        i += 1;
    }
    seen.len() == set.len()
}

fn chain_filling_clauses(r: &mut RunReport, x: &AssembledSurface, curves: &CurveSystem, data: &IntersectionData, g: usize) {
    let (u, w) = data.graph.edge_list()[0];
    let rest: Vec<usize> = (0..curves.len()).filter(|&i| i != u && i != w).collect();
    let fill = assembly::fills_check(x, curves, &rest);
    r.check(
        "fills_without_intersecting_pair",
        "dropping two intersecting systoles leaves 2g curves that still fill",
        fill.fills && rest.len() == 2 * g,
        json!({ "removed": [u, w], "remaining": exact(rest.len()), "components": exact(fill.components.len()) }),
    );
    if g % 2 == 1 {
        return;
    }
    match analysis::tree_subset_search(data, x, curves, analysis::DEFAULT_SUBTREE_LIMIT) {
        Ok(found) => {
            let ok = found.found.as_ref().is_some_and(|set| {
                induces_path(&data.graph, set) && set.len() % 2 == 0 && assembly::fills_check(x, curves, set).fills
            });
            r.check(
                "tree_subset",
                "some even induced path in the intersection graph is a filling set of systoles",
                ok,
                json!({
                    "subset": found.found, "tested": exact(found.tested), "truncated": found.truncated,
                }),
            );
        }
        Err(e) => r.error("tree_subset", "some even induced tree of systoles fills", e),
    }
}

fn tower_clauses(r: &mut RunReport, d: usize, n: usize, s: &Settings) {
    match examples::theta_tower(d, n, s.max_cover_size) {
        Ok(levels) => {
            r.lap("build tower");
            cover_tower_clauses(r, &levels);
        }
        Err(e) => r.error("tower_built", "the iterated mod-2 homology covers exist within the size cap", e),
    }
}

/// Certifies every level of a tower of covers, then the top graph; a theta
/// graph at the bottom must also pull back to a colored gluing graph.
pub fn cover_tower_clauses(r: &mut RunReport, levels: &[CoveringMap]) {
    let Some(first) = levels.first() else {
        r.check("tower_built", "the tower has at least one level", false, Value::Null);
        return;
    };
    for (k, c) in levels.iter().enumerate() {
        let name = format!("level_{}_doubles_girth", k + 1);
        let anchor = "the cover doubles the girth and its girth cycles project to base girth cycles traversed twice";
        match covers::certify_girth_doubling(c) {
            Ok(cert) => {
                let clauses: serde_json::Map<String, Value> =
                    cert.clauses.iter().map(|c| (c.name.to_string(), json!({ "passed": c.passed, "witness": c.witness }))).collect();
                r.check(
                    &name,
                    anchor,
                    cert.clauses.iter().all(|c| c.passed) && cert.total_girth == 2 * cert.base_girth,
                    json!({
                        "vertices": exact(c.total().num_vertices()),
                        "base_girth": exact(cert.base_girth),
                        "total_girth": exact(cert.total_girth),
                        "girth_cycles_checked": exact(cert.girth_cycles_checked),
                        "clauses": clauses,
                    }),
                );
            }
            Err(e) => r.error(&name, anchor, e),
        }
        r.lap(&name);
    }
    let top = levels.last().expect("non-empty").total();
    let girth = graph::girth_length(top);
    let want = graph::girth_length(first.base()).map(|g| g << levels.len());
    r.check(
        "final_girth",
        "each level doubles the girth, so the top has girth 2^n times the bottom's",
        girth.is_some() && girth == want,
        json!({ "girth": girth.map(exact), "expected": want.map(exact), "vertices": exact(top.num_vertices()) }),
    );
    let strict = graph::is_strict_polygonal(top);
    r.check(
        "strict_polygonal",
        "every embedded 2-path at the top lies in exactly one girth cycle",
        strict.as_ref().is_ok_and(|p| p.verdict),
        json!({ "violation": strict.ok().and_then(|p| p.violation).map(|(t, c)| json!([t.first, t.second, c])) }),
    );
    let iso = graph::is_isotropic(top);
    r.check(
        "isotropic",
        "the top is vertex-transitive and every star injection extends to an automorphism",
        iso.verdict,
        json!({ "failing_injection": iso.failing_injection.map(|i| [i.from_vertex, i.to_vertex]) }),
    );
    let base = first.base();
    if base.num_vertices() == 2 && (0..base.num_edges()).all(|e| !base.is_loop(e)) {
        let colored = examples::compose_tower(levels).and_then(|c| Ok(covers::make_colored_gluing_graph(&c)?));
        r.check(
            "colored_gluing_graph",
            "the top carries proper signs and edge colors pulled back from the theta graph",
            colored.is_ok(),
            json!({ "colors": colored.as_ref().ok().map(|c| exact(c.valence())), "error": colored.err().map(|e| e.to_string()) }),
        );
    }
    r.lap("top level");
}

/// Parses `3`, `3..12`, `3..=12` or `3,5,7`.
pub fn parse_q_range(text: &str) -> Result<Vec<usize>> {
    let t = text.trim();
    let qs: Vec<usize> = if let Some((a, b)) = t.split_once("..") {
        let b = b.strip_prefix('=').unwrap_or(b);
        (a.trim().parse()?..=b.trim().parse()?).collect()
    } else {
        t.split(',').map(|v| v.trim().parse()).collect::<Result<_, _>>()?
    };
    if qs.is_empty() {
        bail!("empty q range `{text}`");
    }
    Ok(qs)
}

/// Numerical checks on the polygons for each `q`; every `q` must lie in 3..=12.
pub fn verify_lemmas(qs: &[usize], s: &Settings) -> Result<RunReport> {
    if let Some(q) = qs.iter().find(|q| !LEMMA_Q_RANGE.contains(q)) {
        bail!("q = {q} is outside 3..=12");
    }
    let mut r = RunReport::new(format!("verify-lemmas {qs:?}"));
    r.input("q_range", format!("{qs:?}").as_bytes());
    r.input("seed", s.seed.to_string().as_bytes());

    let mut identity = Vec::new();
    let mut deformation = Vec::new();
    let mut quads = Vec::new();
    let mut adjacent = Vec::new();
    let mut margins = Vec::new();
    for &q in qs {
        let l = hyperbolic::regular_side_length(q)?;
        identity.push((l.cosh() - (1.0 + 2.0 * (PI / q as f64).cos())).abs());
        deformation.push((hyperbolic::deformed_side_length(q, FRAC_PI_2)? - l).abs());
        let poly = build_polygon(q, FRAC_PI_2)?;
        let n = poly.num_sides();
        quads.push(
            (0..n)
                .map(|k| {
                    let (a, b) = poly.quadrilateral_sides(k);
                    hyperbolic::quad_relation_check(a, b, q).abs()
                })
                .fold(0.0, f64::max),
        );
        let mut adj: f64 = 0.0;
        let mut margin = f64::INFINITY;
        for i in 0..n {
            for gap in 2..=n / 2 {
                let dist = poly.side_distance(i, i + gap)?;
                if gap == 2 {
                    adj = adj.max((dist - l).abs());
                } else {
                    margin = margin.min(dist - l);
                }
            }
        }
        adjacent.push(adj);
        margins.push(margin);
    }
    let max = |v: &[f64]| v.iter().copied().fold(0.0, f64::max);
    let per_q = |v: &[f64]| qs.iter().zip(v).map(|(q, x)| json!([q, x])).collect::<Vec<_>>();
    r.check(
        "side_length_identity",
        "the right-angled 2q-gon's side length L satisfies cosh L = 1 + 2cos(pi/q)",
        max(&identity) < 1e-12,
        json!({ "tolerance": 1e-12, "residuals": per_q(&identity) }),
    );
    r.check(
        "right_angle_deformation",
        "the deformed side length at theta = pi/2 is the regular side length",
        max(&deformation) < 1e-12,
        json!({ "tolerance": 1e-12, "residuals": per_q(&deformation) }),
    );
    r.check(
        "quadrilateral_relation",
        "quadrilaterals with three right angles and one angle pi/q satisfy sinh a sinh b = cos(pi/q)",
        max(&quads) < 1e-10,
        json!({ "tolerance": 1e-10, "residuals": per_q(&quads) }),
    );
    r.check(
        "separation_one_distance",
        "sides separated by one side are at distance exactly L",
        max(&adjacent) < 1e-9,
        json!({ "tolerance": 1e-9, "residuals": per_q(&adjacent) }),
    );
    let finite: Vec<f64> = margins.iter().copied().filter(|m| m.is_finite()).collect();
    let monotone = finite.windows(2).all(|w| w[1] >= w[0]);
    r.check(
        "wider_separations_exceed",
        "sides separated by two or more sides are more than L apart",
        finite.iter().all(|&m| m > 1e-6),
        json!({
            "threshold": 1e-6,
            "margins": qs.iter().zip(&margins).map(|(q, m)| json!([q, m.is_finite().then_some(*m)])).collect::<Vec<_>>(),
        }),
    );
    r.check(
        "margins_monotone",
        "the gap between L and the wider separations grows with q",
        monotone,
        json!({ "values_compared": exact(finite.len()) }),
    );

    let mut rng = StdRng::seed_from_u64(s.seed);
    let mut worst: f64 = 0.0;
    let samples = 16;
    for &q in qs {
        for _ in 0..samples {
            let theta = rng.gen_range(0.1..PI - 0.1);
            let poly = build_polygon(q, theta)?;
            let sides = poly.side_lengths();
            worst = worst.max(poly.residual());
            worst = worst.max(sides.iter().map(|v| (v - poly.side_length).abs()).fold(0.0, f64::max));
        }
    }
    r.check(
        "sampled_deformations",
        "deformed polygons are equilateral with angles alternating theta and pi - theta",
        worst < 1e-9,
        json!({ "seed": exact(s.seed), "samples_per_q": exact(samples), "max_residual": worst, "tolerance": 1e-9 }),
    );
    Ok(r)
}

/// Report for a surface given on the command line rather than by example name.
pub fn analyze(x: &AssembledSurface, label: &str, input: &[u8], s: &Settings) -> RunReport {
    let mut r = RunReport::new(format!("analyze {label}"));
    r.input(label, input);
    surface_clauses(&mut r, x, None, s);
    r
}
