//! Run configuration: defaults for the headline experiment, a flat
//! `key = value` config-file format, and merging of command-line overrides.
//! Precedence is defaults < config file < explicit overrides.

use std::path::{Path, PathBuf};

use crate::error::{Error, Result};
use crate::model::{make_two_mode_state, DriveParams, NumericsConfig, ThreeModeState};

/// Environment variable naming the default output directory.
pub const OUT_DIR_ENV: &str = "RING_RATCHET_OUT";

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub g: f64,
    pub k: f64,
    pub omega: f64,
    pub grid_points: usize,
    pub steps_per_period: usize,
    pub horizon_periods: usize,
    pub sample_stride: usize,
    /// Initial weight of mode -1; mode 0 carries 1 - w_minus1.
    pub w_minus1: f64,
    pub relative_phase: f64,
    pub out_dir: PathBuf,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            g: 0.1,
            k: 2.0,
            omega: 10.0,
            grid_points: 256,
            steps_per_period: 1000,
            horizon_periods: 8000,
            sample_stride: 10,
            w_minus1: 0.5,
            relative_phase: 0.0,
            out_dir: std::env::var_os(OUT_DIR_ENV)
                .map(PathBuf::from)
                .unwrap_or_else(|| PathBuf::from(".")),
        }
    }
}

impl RunConfig {
    pub fn drive_params(&self) -> Result<DriveParams> {
        DriveParams::new(self.g, self.k, self.omega)
    }

    pub fn numerics(&self) -> Result<NumericsConfig> {
        let cfg = NumericsConfig {
            grid_points: self.grid_points,
            steps_per_period: self.steps_per_period,
            horizon_periods: self.horizon_periods,
            sample_stride: self.sample_stride,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn initial_state(&self) -> Result<ThreeModeState> {
        make_two_mode_state(self.w_minus1, 1.0 - self.w_minus1, self.relative_phase)
    }

    /// Apply `key = value` assignments from a flat text file. Blank lines
    /// and `#` comments are ignored; unknown keys are rejected.
    pub fn merge_file(&mut self, path: &Path) -> Result<()> {
        let text = std::fs::read_to_string(path)?;
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line.split_once('=').ok_or_else(|| {
                Error::InvalidArgument(format!(
                    "{}:{}: expected 'key = value', got '{raw}'",
                    path.display(),
                    lineno + 1
                ))
            })?;
            self.set(key.trim(), value.trim()).map_err(|e| {
                Error::InvalidArgument(format!("{}:{}: {e}", path.display(), lineno + 1))
            })?;
        }
        Ok(())
    }

    pub fn set(&mut self, key: &str, value: &str) -> Result<()> {
        fn num<T: std::str::FromStr>(key: &str, value: &str) -> Result<T> {
            value.parse().map_err(|_| {
                Error::InvalidArgument(format!("cannot parse '{value}' for key '{key}'"))
            })
        }
        match key {
            "g" => self.g = num(key, value)?,
            "k" | "K" => self.k = num(key, value)?,
            "omega" => self.omega = num(key, value)?,
            "grid_points" => self.grid_points = num(key, value)?,
            "steps_per_period" => self.steps_per_period = num(key, value)?,
            "horizon_periods" | "periods" => self.horizon_periods = num(key, value)?,
            "sample_stride" => self.sample_stride = num(key, value)?,
            "w_minus1" => self.w_minus1 = num(key, value)?,
            "relative_phase" => self.relative_phase = num(key, value)?,
            "out_dir" => self.out_dir = PathBuf::from(value),
            other => {
                return Err(Error::InvalidArgument(format!(
                    "unknown config key '{other}'"
                )));
            }
        }
        Ok(())
    }
}
