//! Lab configuration: grid defaults, seeds, case counts and refinement depth.

use serde::{Deserialize, Serialize};
use std::path::Path;

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(default)]
pub struct LabConfig {
    /// Cells for the exact suite (convergence runs pass their own base).
    pub n_cells: usize,
    pub t_max: f64,
    pub seed: u64,
    pub cases_per_identity: usize,
    /// Override for the exact-tier tolerance; `None` uses `1e-10·2^n`.
    pub tol_exact: Option<f64>,
    /// Number of grid levels in a convergence run: n, 2n, 4n, …
    pub refinement_levels: usize,
}

impl Default for LabConfig {
    fn default() -> Self {
        LabConfig {
            n_cells: 6,
            t_max: 1.0,
            seed: 1729,
            cases_per_identity: 100,
            tol_exact: None,
            refinement_levels: 3,
        }
    }
}

#[derive(Debug)]
pub enum ConfigError {
    Io(String),
    Parse(String),
    Invalid(String),
}

impl std::fmt::Display for ConfigError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ConfigError::Io(m) => write!(f, "config io: {m}"),
            ConfigError::Parse(m) => write!(f, "config parse: {m}"),
            ConfigError::Invalid(m) => write!(f, "config invalid: {m}"),
        }
    }
}

impl std::error::Error for ConfigError {}

impl LabConfig {
    pub fn from_file(path: &Path) -> Result<LabConfig, ConfigError> {
        let text =
            std::fs::read_to_string(path).map_err(|e| ConfigError::Io(e.to_string()))?;
        let config: LabConfig =
            serde_json::from_str(&text).map_err(|e| ConfigError::Parse(e.to_string()))?;
        config.validate()?;
        Ok(config)
    }

    pub fn validate(&self) -> Result<(), ConfigError> {
        if self.n_cells == 0 || self.n_cells > fock_core::MAX_CELLS {
            return Err(ConfigError::Invalid(format!(
                "n_cells must be 1..={}, got {}",
                fock_core::MAX_CELLS,
                self.n_cells
            )));
        }
        if self.t_max.partial_cmp(&0.0) != Some(std::cmp::Ordering::Greater) {
            return Err(ConfigError::Invalid("t_max must be positive".into()));
        }
        if self.cases_per_identity == 0 {
            return Err(ConfigError::Invalid("cases_per_identity must be positive".into()));
        }
        if self.refinement_levels == 0 {
            return Err(ConfigError::Invalid("refinement_levels must be positive".into()));
        }
        Ok(())
    }

    /// The cap for convergence runs: the finest grid must stay inside the
    /// cell budget.
    pub fn validate_for_convergence(&self) -> Result<(), ConfigError> {
        self.validate()?;
        let finest = self.n_cells << (self.refinement_levels - 1);
        if finest > fock_core::MAX_CELLS {
            return Err(ConfigError::Invalid(format!(
                "finest grid {finest} cells exceeds the {}-cell budget; \
                 lower n_cells or refinement_levels",
                fock_core::MAX_CELLS
            )));
        }
        Ok(())
    }

    /// Apply the FOCKSTOP_SEED environment override, when present.
    pub fn with_env_seed(mut self) -> LabConfig {
        if let Ok(s) = std::env::var("FOCKSTOP_SEED") {
            if let Ok(seed) = s.trim().parse::<u64>() {
                self.seed = seed;
            }
        }
        self
    }

    pub fn tol_for(&self, n_cells: usize) -> f64 {
        self.tol_exact.unwrap_or(1e-10 * (1u64 << n_cells) as f64)
    }
}
