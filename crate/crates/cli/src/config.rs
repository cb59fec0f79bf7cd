use std::path::Path;

use anyhow::{bail, Context, Result};
use folium_core::rational::DEFAULT_QUINTIC_BUDGET;
use folium_core::Tolerances;
use serde::{Deserialize, Serialize};

pub const SEED_ENV: &str = "FOLIUM_SEED";

/// Settings shared by every subcommand. Echoed in each report.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    /// Truncation order of series produced by the run.
    pub order: usize,
    pub coef_tol: f64,
    pub root_tol: f64,
    pub matching_tol: f64,
    pub real_tol: f64,
    pub seed: u64,
    /// Sample budget of randomized searches.
    pub budget: usize,
}

impl Default for RunConfig {
    fn default() -> Self {
        let t = Tolerances::default();
        RunConfig {
            order: 24,
            coef_tol: t.coef,
            root_tol: t.root,
            matching_tol: t.matching,
            real_tol: t.real,
            seed: 0,
            budget: DEFAULT_QUINTIC_BUDGET,
        }
    }
}

impl RunConfig {
    /// Defaults, overlaid by the `key = value` file if given.
    pub fn load(path: Option<&Path>) -> Result<Self> {
        let cfg: RunConfig = match path {
            Some(p) => {
                let text = std::fs::read_to_string(p)
                    .with_context(|| format!("reading config {}", p.display()))?;
                toml::from_str(&text).with_context(|| format!("parsing config {}", p.display()))?
            }
            None => RunConfig::default(),
        };
        cfg.validate()?;
        Ok(cfg)
    }

    /// The seed environment variable overrides every other source.
    pub fn apply_env_seed(&mut self, value: Option<String>) -> Result<()> {
        if let Some(s) = value {
            self.seed = s
                .trim()
                .parse()
                .with_context(|| format!("{SEED_ENV}={s:?} is not an unsigned integer"))?;
        }
        Ok(())
    }

    pub fn validate(&self) -> Result<()> {
        if self.order < 4 {
            bail!("order must be at least 4, got {}", self.order);
        }
        for (name, v) in [
            ("coef_tol", self.coef_tol),
            ("root_tol", self.root_tol),
            ("matching_tol", self.matching_tol),
            ("real_tol", self.real_tol),
        ] {
            if !(v > 0.0 && v.is_finite()) {
                bail!("{name} must be positive, got {v}");
            }
        }
        if self.budget == 0 {
            bail!("budget must be positive");
        }
        Ok(())
    }

    pub fn tolerances(&self) -> Tolerances {
        Tolerances {
            coef: self.coef_tol,
            root: self.root_tol,
            matching: self.matching_tol,
            real: self.real_tol,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::io::Write;

    #[test]
    fn file_then_env() {
        let mut f = tempfile::NamedTempFile::new().unwrap();
        writeln!(f, "order = 12\nseed = 3\ncoef_tol = 1e-9").unwrap();
        let mut cfg = RunConfig::load(Some(f.path())).unwrap();
        assert_eq!((cfg.order, cfg.seed, cfg.coef_tol), (12, 3, 1e-9));
        cfg.apply_env_seed(Some("11".into())).unwrap();
        assert_eq!(cfg.seed, 11);
    }

    #[test]
    fn rejects_bad_values() {
        let mut f = tempfile::NamedTempFile::new().unwrap();
        writeln!(f, "order = 3").unwrap();
        assert!(RunConfig::load(Some(f.path())).is_err());
        let mut g = tempfile::NamedTempFile::new().unwrap();
        writeln!(g, "colour = 3").unwrap();
        assert!(RunConfig::load(Some(g.path())).is_err());
        assert!(RunConfig::default()
            .apply_env_seed(Some("x".into()))
            .is_err());
    }
}
