//! Run configuration: a flat `key = value` file mirroring [`RunConfig`].
//!
//! ```text
//! # desk.cfg
//! seed = 7
//! cases = 100
//! log_x_min = 1e-3
//! ```

use std::path::PathBuf;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::grid::LogGrid;
use crate::report::digest;

/// Overrides `output_dir` when set.
pub const OUTPUT_DIR_ENV: &str = "MEASLP_OUTPUT_DIR";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunConfig {
    /// Half-width `T` of the default transform grid `[-T, T]`.
    pub window: f64,
    pub grid_points: usize,
    pub log_x_min: f64,
    pub log_x_max: f64,
    pub log_points: usize,
    pub tol_relative: f64,
    pub tol_quadrature: f64,
    /// Modulations per dilation/translation pair in the test dictionary.
    pub dictionary_size: usize,
    /// Recursion depth `K` of self-similar measures.
    pub depth: u32,
    pub seed: u64,
    pub cases: usize,
    #[serde(skip)]
    pub output_dir: Option<PathBuf>,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            window: 8.0,
            grid_points: 2049,
            log_x_min: 1e-3,
            log_x_max: 1e3,
            log_points: 200,
            tol_relative: 1e-6,
            tol_quadrature: 1e-6,
            dictionary_size: 17,
            depth: crate::measure::DEFAULT_DEPTH,
            seed: 7,
            cases: 100,
            output_dir: None,
        }
    }
}

fn value<T: std::str::FromStr>(raw: &str, line: usize, column: usize) -> Result<T> {
    raw.parse().map_err(|_| Error::Parse {
        line,
        column,
        message: format!("cannot read {raw:?}"),
    })
}

impl RunConfig {
    pub fn parse(text: &str) -> Result<Self> {
        let mut cfg = Self::default();
        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            let body = raw.split('#').next().unwrap_or("");
            if body.trim().is_empty() {
                continue;
            }
            let Some(eq) = body.find('=') else {
                return Err(Error::Parse {
                    line,
                    column: body.len() - body.trim_start().len() + 1,
                    message: "expected `key = value`".into(),
                });
            };
            let key = body[..eq].trim();
            let rest = &body[eq + 1..];
            let v = rest.trim();
            let col = eq + 2 + (rest.len() - rest.trim_start().len());
            match key {
                "window" => cfg.window = value(v, line, col)?,
                "grid_points" => cfg.grid_points = value(v, line, col)?,
                "log_x_min" => cfg.log_x_min = value(v, line, col)?,
                "log_x_max" => cfg.log_x_max = value(v, line, col)?,
                "log_points" => cfg.log_points = value(v, line, col)?,
                "tol_relative" => cfg.tol_relative = value(v, line, col)?,
                "tol_quadrature" => cfg.tol_quadrature = value(v, line, col)?,
                "dictionary_size" => cfg.dictionary_size = value(v, line, col)?,
                "depth" => cfg.depth = value(v, line, col)?,
                "seed" => cfg.seed = value(v, line, col)?,
                "cases" => cfg.cases = value(v, line, col)?,
                "output_dir" => cfg.output_dir = Some(PathBuf::from(v)),
                other => {
                    return Err(Error::Parse {
                        line,
                        column: body.len() - body.trim_start().len() + 1,
                        message: format!("unknown key {other:?}"),
                    })
                }
            }
        }
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn load(path: &std::path::Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::Config(format!("{}: {e}", path.display())))?;
        Self::parse(&text)
    }

    pub fn validate(&self) -> Result<()> {
        let positive = [
            ("window", self.window),
            ("log_x_min", self.log_x_min),
            ("log_x_max", self.log_x_max),
            ("tol_relative", self.tol_relative),
            ("tol_quadrature", self.tol_quadrature),
        ];
        if let Some((k, _)) = positive.iter().find(|(_, v)| !(v.is_finite() && *v > 0.0)) {
            return Err(Error::Config(format!("{k} must be positive and finite")));
        }
        let counts = [
            ("grid_points", self.grid_points),
            ("log_points", self.log_points),
            ("dictionary_size", self.dictionary_size),
            ("depth", self.depth as usize),
            ("cases", self.cases),
        ];
        if let Some((k, _)) = counts.iter().find(|(_, v)| *v == 0) {
            return Err(Error::Config(format!("{k} must be positive")));
        }
        if self.grid_points < 2 || self.log_points < 2 {
            return Err(Error::Config("grids need at least 2 points".into()));
        }
        if self.log_x_min >= self.log_x_max {
            return Err(Error::Config("log_x_min must be below log_x_max".into()));
        }
        Ok(())
    }

    /// Applies [`OUTPUT_DIR_ENV`].
    pub fn with_env(mut self) -> Self {
        if let Some(dir) = std::env::var_os(OUTPUT_DIR_ENV) {
            self.output_dir = Some(PathBuf::from(dir));
        }
        self
    }

    pub fn log_grid(&self) -> LogGrid {
        LogGrid {
            x_min: self.log_x_min,
            x_max: self.log_x_max,
            points: self.log_points,
        }
    }

    /// Digest of every field that affects results (not the output path).
    pub fn digest(&self) -> String {
        digest(self)
    }
}
