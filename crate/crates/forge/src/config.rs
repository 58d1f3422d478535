//! Run settings from an optional TOML file, overridden by command-line flags.

use std::path::Path;

use anyhow::{Context, Result};
use forge_core::covers::DEFAULT_MAX_COVER_SIZE;
use serde::Deserialize;

/// Keys accepted in the config file; all optional.
#[derive(Clone, Debug, Default, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FileConfig {
    pub max_cover_size: Option<usize>,
    pub tolerance: Option<f64>,
    pub theta: Option<f64>,
    pub seed: Option<u64>,
}

impl FileConfig {
    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        toml::from_str(&text).with_context(|| format!("parsing {}", path.display()))
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Settings {
    /// Largest cover, in vertices, that may be built.
    pub max_cover_size: usize,
    /// Absolute tolerance on geodesic lengths.
    pub tolerance: f64,
    /// Deformation angle used alongside `π/2`.
    pub theta: f64,
    /// Seed for randomized oracle sampling.
    pub seed: u64,
}

impl Default for Settings {
    fn default() -> Self {
        Self { max_cover_size: DEFAULT_MAX_COVER_SIZE, tolerance: 1e-8, theta: 1.3, seed: 0 }
    }
}

impl Settings {
    /// Defaults, then the file, then flags.
    pub fn resolve(file: Option<&FileConfig>, flags: &FileConfig) -> Self {
        let d = Self::default();
        let pick = |f: fn(&FileConfig) -> Option<f64>, fallback: f64| f(flags).or_else(|| file.and_then(f)).unwrap_or(fallback);
        Self {
            max_cover_size: flags.max_cover_size.or_else(|| file.and_then(|c| c.max_cover_size)).unwrap_or(d.max_cover_size),
            tolerance: pick(|c| c.tolerance, d.tolerance),
            theta: pick(|c| c.theta, d.theta),
            seed: flags.seed.or_else(|| file.and_then(|c| c.seed)).unwrap_or(d.seed),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn flags_win_over_file() {
        let file: FileConfig = toml::from_str("tolerance = 1e-6\ntheta = 1.0\nseed = 7").unwrap();
        let flags = FileConfig { theta: Some(1.2), ..Default::default() };
        let s = Settings::resolve(Some(&file), &flags);
        assert_eq!((s.tolerance, s.theta, s.seed), (1e-6, 1.2, 7));
        assert_eq!(s.max_cover_size, DEFAULT_MAX_COVER_SIZE);
    }

    #[test]
    fn unknown_keys_are_rejected() {
        assert!(toml::from_str::<FileConfig>("tolerence = 1").is_err());
    }
}
