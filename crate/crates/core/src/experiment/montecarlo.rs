use std::time::Instant;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{compensated_sum, ExperimentConfig};
use crate::channel::sample_arbitrary_channel;
use crate::code::CodeName;
use crate::effective::{effective_fidelity, NoiseModel};
use crate::error::{Error, Result};
use crate::oracles;

/// Summary of one Monte-Carlo campaign at fixed initial fidelity.
///
/// `df_min` is the largest `F'_dep − F'_N` over samples and `df_avg` the mean
/// of `|F'_N − F'_dep|`; `dr_*` divide them by `F'_dep − F₀`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunStats {
    pub f0: f64,
    pub n_samples: usize,
    pub df_min: f64,
    pub df_avg: f64,
    pub dr_min: f64,
    pub dr_avg: f64,
    /// Largest `F'_N − F'_dep` observed.
    pub gap_max: f64,
    /// Samples that beat the depolarizing reference.
    pub n_positive: usize,
    pub seed: u64,
    #[serde(skip)]
    pub wall_time_s: f64,
}

pub fn splitmix64(x: u64) -> u64 {
    let mut z = x.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Seed of one sample, a pure function of its coordinates in the campaign.
pub fn sample_seed(master: u64, f0_index: u64, sample_index: u64) -> u64 {
    splitmix64(splitmix64(splitmix64(master) ^ f0_index) ^ sample_index)
}

fn reference_fidelity(code: CodeName, f0: f64) -> f64 {
    match code {
        CodeName::Five => oracles::f5_dep(f0),
        CodeName::Steane => oracles::f7_dep(f0),
    }
}

/// Runs `cfg.samples` random channel draws for every `F₀` in `cfg.f0_list`.
///
/// Output is bitwise independent of `cfg.workers`.
pub fn run_montecarlo(cfg: &ExperimentConfig) -> Result<Vec<RunStats>> {
    cfg.validate()?;
    let code = cfg.code.build()?;
    let n = code.n_physical;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.workers)
        .build()
        .map_err(|e| Error::Config(e.to_string()))?;

    let mut out = Vec::with_capacity(cfg.f0_list.len());
    for (fi, &f0) in cfg.f0_list.iter().enumerate() {
        let start = Instant::now();
        let fidelities: Vec<f64> = pool.install(|| {
            (0..cfg.samples)
                .into_par_iter()
                .map(|si| {
                    let seed = sample_seed(cfg.master_seed, fi as u64, si as u64);
                    let mut rng = ChaCha8Rng::seed_from_u64(seed);
                    let per_qubit = (0..n)
                        .map(|_| sample_arbitrary_channel(f0, &mut rng))
                        .collect::<Result<Vec<_>>>()?;
                    effective_fidelity(&code, &NoiseModel::new(per_qubit))
                })
                .collect::<Result<_>>()
        })?;

        let f_dep = reference_fidelity(cfg.code, f0);
        let improvement = f_dep - f0;
        let df_min = fidelities
            .iter()
            .map(|f| f_dep - f)
            .fold(f64::NEG_INFINITY, f64::max);
        let df_avg =
            compensated_sum(fidelities.iter().map(|f| (f - f_dep).abs())) / fidelities.len() as f64;
        let gap_max = fidelities
            .iter()
            .map(|f| f - f_dep)
            .fold(f64::NEG_INFINITY, f64::max);
        let n_positive = fidelities.iter().filter(|&&f| f > f_dep).count();

        out.push(RunStats {
            f0,
            n_samples: fidelities.len(),
            df_min,
            df_avg,
            dr_min: df_min / improvement,
            dr_avg: df_avg / improvement,
            gap_max,
            n_positive,
            seed: cfg.master_seed,
            wall_time_s: start.elapsed().as_secs_f64(),
        });
    }
    Ok(out)
}
