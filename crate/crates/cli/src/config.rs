use std::path::{Path, PathBuf};

use carleson::boundary::MIN_GRID;
use carleson::{ChainConfig, PickOptions};
use serde::{Deserialize, Serialize};

use crate::error::{CliError, CliResult};

pub const MAX_RESOLUTION: usize = 4096;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunConfig {
    pub grid_resolution: usize,
    pub boundary_grid: usize,
    pub psd_tol: f64,
    pub bisect_rel_tol: f64,
    pub seed: u64,
    pub output_path: Option<PathBuf>,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            grid_resolution: 128,
            boundary_grid: 4096,
            psd_tol: 1e-10,
            bisect_rel_tol: 1e-8,
            seed: 0,
            output_path: None,
        }
    }
}

/// Every field optional; missing ones fall through to the defaults.
#[derive(Debug, Default, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigLayer {
    pub grid_resolution: Option<usize>,
    pub boundary_grid: Option<usize>,
    pub psd_tol: Option<f64>,
    pub bisect_rel_tol: Option<f64>,
    pub seed: Option<u64>,
    pub output_path: Option<PathBuf>,
}

impl ConfigLayer {
    pub fn from_file(path: &Path) -> CliResult<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
        serde_json::from_str(&text).map_err(|e| CliError::Usage(format!("config {}: {e}", path.display())))
    }
}

impl RunConfig {
    /// Later layers win.
    pub fn resolve(layers: &[ConfigLayer]) -> CliResult<Self> {
        let mut cfg = RunConfig::default();
        for l in layers {
            cfg.grid_resolution = l.grid_resolution.unwrap_or(cfg.grid_resolution);
            cfg.boundary_grid = l.boundary_grid.unwrap_or(cfg.boundary_grid);
            cfg.psd_tol = l.psd_tol.unwrap_or(cfg.psd_tol);
            cfg.bisect_rel_tol = l.bisect_rel_tol.unwrap_or(cfg.bisect_rel_tol);
            cfg.seed = l.seed.unwrap_or(cfg.seed);
            if l.output_path.is_some() {
                cfg.output_path = l.output_path.clone();
            }
        }
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> CliResult<()> {
        if !(32..=MAX_RESOLUTION).contains(&self.grid_resolution) {
            return Err(CliError::Usage(format!(
                "grid_resolution must lie in [32, {MAX_RESOLUTION}], got {}",
                self.grid_resolution
            )));
        }
        if !(MIN_GRID..=MAX_RESOLUTION).contains(&self.boundary_grid) {
            return Err(CliError::Usage(format!(
                "boundary_grid must lie in [{MIN_GRID}, {MAX_RESOLUTION}], got {}",
                self.boundary_grid
            )));
        }
        for (name, v) in [("psd_tol", self.psd_tol), ("bisect_rel_tol", self.bisect_rel_tol)] {
            if !(v > 0.0 && v < 1.0) {
                return Err(CliError::Usage(format!("{name} must lie in (0, 1), got {v}")));
            }
        }
        Ok(())
    }

    pub fn pick_options(&self) -> PickOptions {
        PickOptions {
            psd_tol: self.psd_tol,
            bisect_rel_tol: self.bisect_rel_tol,
            ..PickOptions::default()
        }
    }

    pub fn chain_config(&self) -> ChainConfig {
        ChainConfig {
            grid_resolution: self.grid_resolution,
            boundary_grid: self.boundary_grid,
            pick: self.pick_options(),
            ..ChainConfig::default()
        }
    }
}
