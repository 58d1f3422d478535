//! Named example constructions and the shipped K5 matrix fixture.

use std::fmt;
use std::str::FromStr;

use anyhow::{anyhow, bail, ensure, Context, Result};
use forge_core::analysis::{self, IntMatrix};
use forge_core::assembly::{self, search, AssembledSurface, Gluing};
use forge_core::covers::{self, CoveringMap};
use forge_core::graph::catalog as graphs;
use forge_core::maps::catalog as maps;

/// Intersection matrix of the tetrahedral blocks glued along K5: red curves
/// (one per edge of K5) against blue curves.
pub const K5_MATRIX_JSON: &str = include_str!("../fixtures/k5_intersection_matrix.v1.json");

pub fn k5_fixture() -> IntMatrix {
    crate::formats::matrix_from_json(K5_MATRIX_JSON).expect("shipped fixture parses")
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Example {
    /// Genus `g` surface from the beach-ball block on `g + 1` bigons glued along Θ_{g+1}.
    Chain(usize),
    /// Tetrahedral blocks glued along the complete graph on five vertices.
    K5,
    /// Beach-ball block on `q` bigons over Θ_q.
    BeachballTheta(usize),
    /// `n` iterated mod-2 homology covers of Θ_d.
    DoubledThetaTower { d: usize, n: usize },
    /// Cube blocks over the mod-2 homology cover of Θ_6.
    CubeTheta6,
}

impl fmt::Display for Example {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Chain(g) => write!(f, "chain({g})"),
            Self::K5 => write!(f, "k5"),
            Self::BeachballTheta(q) => write!(f, "beachball_theta({q})"),
            Self::DoubledThetaTower { d, n } => write!(f, "doubled_theta_tower({d},{n})"),
            Self::CubeTheta6 => write!(f, "cube_theta6"),
        }
    }
}

/// Accepts `chain(3)`, `chain:3`, `doubled_theta_tower(3, 2)` and `doubled_theta_tower:3:2`.
impl FromStr for Example {
    type Err = anyhow::Error;

    fn from_str(s: &str) -> Result<Self> {
        let flat: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let flat = flat.trim_end_matches(')').replace(['(', ','], ":");
        let mut parts = flat.split(':');
        let name = parts.next().unwrap_or_default();
        let args: Vec<usize> = parts
            .map(|a| a.parse().map_err(|_| anyhow!("bad argument `{a}` in example `{s}`")))
            .collect::<Result<_>>()?;
        let ex = match (name, args.as_slice()) {
            ("chain", &[g]) => Self::Chain(g),
            ("k5", []) => Self::K5,
            ("beachball_theta", &[q]) => Self::BeachballTheta(q),
            ("doubled_theta_tower", &[d, n]) => Self::DoubledThetaTower { d, n },
            ("cube_theta6", []) => Self::CubeTheta6,
            _ => bail!(
                "unknown example `{s}`; expected chain(g), k5, beachball_theta(q), doubled_theta_tower(d,n) or cube_theta6"
            ),
        };
        ex.validate()?;
        Ok(ex)
    }
}

impl Example {
    fn validate(&self) -> Result<()> {
        match *self {
            Self::Chain(g) => ensure!(g >= 2, "chain(g) needs g >= 2"),
            Self::BeachballTheta(q) => ensure!(q >= 3, "beachball_theta(q) needs q >= 3"),
            Self::DoubledThetaTower { d, n } => ensure!(d >= 2 && n >= 1, "doubled_theta_tower(d, n) needs d >= 2, n >= 1"),
            Self::K5 | Self::CubeTheta6 => {}
        }
        Ok(())
    }

    pub fn is_surface(&self) -> bool {
        !matches!(self, Self::DoubledThetaTower { .. })
    }

    /// Genus the construction is meant to produce.
    pub fn expected_genus(&self) -> Option<i64> {
        match *self {
            Self::Chain(g) => Some(g as i64),
            Self::BeachballTheta(q) => Some(q as i64 - 1),
            Self::K5 => Some(6),
            Self::CubeTheta6 => Some(129),
            Self::DoubledThetaTower { .. } => None,
        }
    }

    /// Number of systoles the construction is meant to produce.
    pub fn expected_systoles(&self) -> Option<usize> {
        match *self {
            Self::Chain(g) => Some(2 * g + 2),
            Self::BeachballTheta(q) => Some(2 * q),
            Self::K5 => Some(20),
            Self::CubeTheta6 => Some(384),
            Self::DoubledThetaTower { .. } => None,
        }
    }

    /// Builds the assembled surface; `max_cover_size` bounds any cover built on the way.
    pub fn surface(&self, max_cover_size: usize) -> Result<AssembledSurface> {
        match *self {
            Self::Chain(g) => theta_surface(g + 1),
            Self::BeachballTheta(q) => theta_surface(q),
            Self::K5 => k5_surface().map(|(x, _)| x),
            Self::CubeTheta6 => {
                let cover = covers::mod2_homology_cover(&graphs::theta(6), max_cover_size)?;
                let cg = covers::make_colored_gluing_graph(&cover)?;
                let block = assembly::build_block(&maps::cube())?;
                Ok(assembly::assemble(&block, &Gluing::from_colored(&cg))?)
            }
            Self::DoubledThetaTower { .. } => bail!("{self} is a cover tower, not a surface"),
        }
    }
}

/// Beach-ball block on `d` bigons glued along Θ_d itself.
pub fn theta_surface(d: usize) -> Result<AssembledSurface> {
    let block = assembly::build_block(&maps::beach_ball(d))?;
    let cg = covers::make_colored_gluing_graph(&CoveringMap::identity(&graphs::theta(d)))?;
    Ok(assembly::assemble(&block, &Gluing::from_colored(&cg))?)
}

/// The first searched gluing of tetrahedra along K5 whose intersection matrix
/// is a row and column permutation of the fixture.
pub fn k5_surface() -> Result<(AssembledSurface, search::SearchOutcome)> {
    let block = assembly::build_block(&maps::tetrahedron())?;
    let fixture = k5_fixture();
    let out = search::search_gluings(&block, &graphs::complete(5), |g| {
        let Ok(x) = assembly::assemble(&block, g) else { return false };
        let Ok(curves) = x.trace_curves() else { return false };
        analysis::intersection_data(&x, &curves).is_ok_and(|d| d.a.permutation_equivalence(&fixture).is_some())
    });
    let gluing = out.gluing.clone().context("no gluing of tetrahedra along K5 reproduces the fixture")?;
    Ok((assembly::assemble(&block, &gluing)?, out))
}

/// Θ_d and its first `n` iterated mod-2 homology covers, each over the previous one.
pub fn theta_tower(d: usize, n: usize, max_cover_size: usize) -> Result<Vec<CoveringMap>> {
    let mut levels: Vec<CoveringMap> = Vec::with_capacity(n);
    let mut current = graphs::theta(d);
    for _ in 0..n {
        let c = covers::mod2_homology_cover(&current, max_cover_size)?;
        current = c.total().clone();
        levels.push(c);
    }
    Ok(levels)
}

/// Composes a tower into one cover of its bottom graph.
pub fn compose_tower(levels: &[CoveringMap]) -> Result<CoveringMap> {
    let (first, rest) = levels.split_first().context("empty tower")?;
    rest.iter().try_fold(first.clone(), |acc, c| Ok(CoveringMap::compose(c, &acc)?))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identifiers_parse_both_ways() {
        for s in ["chain(4)", "k5", "beachball_theta(5)", "doubled_theta_tower(3,2)", "cube_theta6"] {
            let ex: Example = s.parse().unwrap();
            assert_eq!(ex.to_string(), s);
        }
        assert_eq!("chain:3".parse::<Example>().unwrap(), Example::Chain(3));
        assert_eq!(
            "doubled_theta_tower( 3, 2 )".parse::<Example>().unwrap(),
            Example::DoubledThetaTower { d: 3, n: 2 }
        );
        assert!("chain(1)".parse::<Example>().is_err());
        assert!("beachball_theta(2)".parse::<Example>().is_err());
        assert!("torus".parse::<Example>().is_err());
    }

    #[test]
    fn fixture_is_ten_by_ten() {
        let a = k5_fixture();
        assert_eq!((a.rows(), a.cols()), (10, 10));
        // every red and every blue curve meets exactly three others
        assert!((0..10).all(|i| (0..10).map(|j| a.get(i, j)).sum::<i64>() == 3));
        assert!((0..10).all(|j| (0..10).map(|i| a.get(i, j)).sum::<i64>() == 3));
    }

    #[test]
    fn tower_composes_down_to_theta() {
        let levels = theta_tower(3, 2, 1 << 12).unwrap();
        let c = compose_tower(&levels).unwrap();
        assert_eq!(c.base(), &graphs::theta(3));
        assert_eq!(c.total().num_vertices(), 256);
    }
}
