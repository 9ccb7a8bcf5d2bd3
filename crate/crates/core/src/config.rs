//! Run configuration read from a `key = value` file.
//!
//! Every key is optional; unknown keys are rejected so typos fail loudly.

use crate::error::{Error, Result};
use crate::metric::{SearchConfig, JACOBI_TOL};
use crate::repbuild::REP_DIM_CAP;
use crate::repweights::SUPPORT_CAP;
use crate::rootsys::ORBIT_CAP;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    #[default]
    Pretty,
    Json,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Config {
    pub orbit_cap: usize,
    pub support_cap: usize,
    pub rep_dim_cap: usize,
    pub jacobi_tol: f64,
    /// Relative agreement required between the fast Ricci operator and the
    /// Koszul oracle when a certificate is cross-checked.
    pub ricci_oracle_tol: f64,
    /// A certificate needs `λ_max < −accept_rel · ρ`.
    pub accept_rel: f64,
    pub budget: usize,
    pub restarts: usize,
    pub seed: u64,
    pub format: OutputFormat,
}

impl Default for Config {
    fn default() -> Self {
        let search = SearchConfig::default();
        Config {
            orbit_cap: ORBIT_CAP,
            support_cap: SUPPORT_CAP,
            rep_dim_cap: REP_DIM_CAP,
            jacobi_tol: JACOBI_TOL,
            ricci_oracle_tol: 1e-9,
            accept_rel: search.accept_rel,
            budget: search.budget,
            restarts: search.restarts,
            seed: search.seed,
            format: OutputFormat::Pretty,
        }
    }
}

impl Config {
    pub fn parse(text: &str) -> Result<Self> {
        let cfg: Config = toml::from_str(text).map_err(|e| Error::Config(e.message().to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        let caps = [
            ("orbit_cap", self.orbit_cap),
            ("support_cap", self.support_cap),
            ("rep_dim_cap", self.rep_dim_cap),
            ("budget", self.budget),
            ("restarts", self.restarts),
        ];
        for (name, v) in caps {
            if v == 0 {
                return Err(Error::Config(format!("{name} must be positive")));
            }
        }
        let tols = [
            ("jacobi_tol", self.jacobi_tol),
            ("ricci_oracle_tol", self.ricci_oracle_tol),
            ("accept_rel", self.accept_rel),
        ];
        for (name, v) in tols {
            if !(v.is_finite() && v > 0.0) {
                return Err(Error::Config(format!("{name} must be a positive finite number")));
            }
        }
        Ok(())
    }

    pub fn search(&self) -> SearchConfig {
        SearchConfig {
            restarts: self.restarts,
            budget: self.budget,
            seed: self.seed,
            accept_rel: self.accept_rel,
            ..SearchConfig::default()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_file_gives_defaults() {
        assert_eq!(Config::parse("").unwrap(), Config::default());
        assert_eq!(Config::parse("# nothing\n\n").unwrap(), Config::default());
    }

    #[test]
    fn keys_override_defaults() {
        let c = Config::parse("seed = 7\nbudget = 50\nformat = \"json\"\njacobi_tol = 1e-6\n").unwrap();
        assert_eq!(c.seed, 7);
        assert_eq!(c.budget, 50);
        assert_eq!(c.format, OutputFormat::Json);
        assert_eq!(c.jacobi_tol, 1e-6);
        assert_eq!(c.rep_dim_cap, REP_DIM_CAP);
        assert_eq!(c.search().budget, 50);
    }

    #[test]
    fn rejects_unknown_keys_bad_values_and_syntax() {
        for bad in [
            "sede = 1",
            "budget = 0",
            "accept_rel = -1.0",
            "jacobi_tol = nan",
            "ricci_oracle_tol = inf",
            "budget = -3",
            "budget = \"many\"",
            "format = \"xml\"",
            "seed",
            "[section]\nseed = 1",
        ] {
            assert!(matches!(Config::parse(bad), Err(Error::Config(_))), "{bad}");
        }
    }
}
