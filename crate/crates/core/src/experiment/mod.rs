//! Batch experiments: parameter sweeps, Monte-Carlo campaigns over arbitrary
//! channels, table rendering and concatenation runs.

mod csvio;
mod montecarlo;
mod sweep;
mod tables;

use std::path::PathBuf;

use serde::{Deserialize, Serialize};

use crate::channel::{make_standard_channel, StandardKind};
use crate::code::CodeName;
use crate::effective::NoiseModel;
use crate::error::{Error, Result};

pub use csvio::{format_real, read_run_stats, write_run_stats, write_sweep};
pub use montecarlo::{run_montecarlo, sample_seed, splitmix64, RunStats};
pub use sweep::{run_sweep, SweepRow};
pub use tables::{emit_tables, TableRow, TableSet};

/// Default initial fidelities of a Monte-Carlo campaign.
pub const DEFAULT_F0_GRID: [f64; 13] = [
    0.9, 0.91, 0.92, 0.93, 0.94, 0.945, 0.95, 0.96, 0.97, 0.98, 0.99, 0.992, 0.9993,
];
pub const DEFAULT_SAMPLES: usize = 10_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Sweep,
    Montecarlo,
    Tables,
    Concat,
}

/// Noise families used by sweeps and concatenation runs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum NoiseFamily {
    /// Depolarizing noise on every qubit.
    Dep,
    /// BF⊗BPF⊗PF⊗AD⊗GAD, padded with DEP for the Steane code.
    Mixed,
    /// Bit flip on every qubit.
    Bitflip,
}

impl NoiseFamily {
    pub fn noise_model(self, code: CodeName, p: f64) -> Result<NoiseModel> {
        let n = code.n_physical();
        let kinds: Vec<StandardKind> = match self {
            Self::Dep => vec![StandardKind::Dep; n],
            Self::Bitflip => vec![StandardKind::Bf; n],
            Self::Mixed => {
                let mut k = vec![
                    StandardKind::Bf,
                    StandardKind::Bpf,
                    StandardKind::Pf,
                    StandardKind::Ad,
                    StandardKind::Gad,
                ];
                k.resize(n, StandardKind::Dep);
                k
            }
        };
        let per_qubit = kinds
            .into_iter()
            .map(|k| make_standard_channel(k, p))
            .collect::<Result<_>>()?;
        Ok(NoiseModel::new(per_qubit))
    }
}

/// Inclusive, evenly spaced grid of `steps` points.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PGrid {
    pub min: f64,
    pub max: f64,
    pub steps: usize,
}

impl PGrid {
    pub fn points(&self) -> Result<Vec<f64>> {
        if self.steps == 0 || !(0.0..=1.0).contains(&self.min) || !(0.0..=1.0).contains(&self.max) {
            return Err(Error::Config(format!("invalid grid {self:?}")));
        }
        if self.min > self.max || (self.steps == 1 && self.min != self.max) {
            return Err(Error::Config(format!("invalid grid {self:?}")));
        }
        if self.steps == 1 {
            return Ok(vec![self.min]);
        }
        let h = (self.max - self.min) / (self.steps - 1) as f64;
        Ok((0..self.steps)
            .map(|k| {
                if k + 1 == self.steps {
                    self.max
                } else {
                    self.min + h * k as f64
                }
            })
            .collect())
    }
}

impl Default for PGrid {
    fn default() -> Self {
        Self {
            min: 0.9,
            max: 1.0,
            steps: 11,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentConfig {
    pub code: CodeName,
    pub mode: Mode,
    pub model: NoiseFamily,
    pub f0_list: Vec<f64>,
    pub samples: usize,
    pub master_seed: u64,
    pub workers: usize,
    pub p_grid: PGrid,
    pub output_path: Option<PathBuf>,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        Self {
            code: CodeName::Five,
            mode: Mode::Sweep,
            model: NoiseFamily::Dep,
            f0_list: DEFAULT_F0_GRID.to_vec(),
            samples: DEFAULT_SAMPLES,
            master_seed: 0,
            workers: std::thread::available_parallelism().map_or(1, |n| n.get()),
            p_grid: PGrid::default(),
            output_path: None,
        }
    }
}

impl ExperimentConfig {
    pub fn validate(&self) -> Result<()> {
        if self.samples == 0 {
            return Err(Error::Config("sample count must be at least 1".into()));
        }
        if self.workers == 0 {
            return Err(Error::Config("worker count must be at least 1".into()));
        }
        if let Some(bad) = self.f0_list.iter().find(|&&f| !(f > 0.25 && f <= 1.0)) {
            return Err(Error::Config(format!("F₀ = {bad} is outside (1/4, 1]")));
        }
        Ok(())
    }
}

/// Neumaier-compensated sum.
pub(crate) fn compensated_sum(values: impl IntoIterator<Item = f64>) -> f64 {
    let mut sum = 0.0f64;
    let mut comp = 0.0f64;
    for v in values {
        let t = sum + v;
        if sum.abs() >= v.abs() {
            comp += (sum - t) + v;
        } else {
            comp += (v - t) + sum;
        }
        sum = t;
    }
    sum + comp
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_endpoints() {
        let g = PGrid {
            min: 0.92,
            max: 1.0,
            steps: 9,
        }
        .points()
        .unwrap();
        assert_eq!(g.len(), 9);
        assert_eq!(g[0], 0.92);
        assert_eq!(g[8], 1.0);
        assert!(PGrid {
            min: 0.9,
            max: 0.8,
            steps: 3
        }
        .points()
        .is_err());
        assert!(PGrid {
            min: 0.9,
            max: 1.0,
            steps: 0
        }
        .points()
        .is_err());
        assert!(PGrid {
            min: 0.9,
            max: 1.2,
            steps: 3
        }
        .points()
        .is_err());
    }

    #[test]
    fn config_validation() {
        let mut cfg = ExperimentConfig::default();
        assert!(cfg.validate().is_ok());
        cfg.f0_list = vec![0.2];
        assert!(cfg.validate().is_err());
        cfg.f0_list = vec![0.9];
        cfg.samples = 0;
        assert!(cfg.validate().is_err());
    }

    #[test]
    fn compensated_sum_beats_naive() {
        let vals = std::iter::once(1e16)
            .chain(std::iter::repeat_n(1.0, 1000))
            .chain(std::iter::once(-1e16));
        assert_eq!(compensated_sum(vals), 1000.0);
    }

    #[test]
    fn mixed_family_pads_steane_with_dep() {
        let m = NoiseFamily::Mixed
            .noise_model(CodeName::Steane, 0.9)
            .unwrap();
        assert_eq!(m.len(), 7);
        assert_eq!(m.per_qubit[5].label(), "dep(0.9)");
        assert_eq!(m.per_qubit[3].label(), "ad(0.9)");
    }
}
