//! Effective fidelity across a grid, as plot-ready CSV on stdout.
//!
//! cargo run --release --example sweep -- [five|steane] [dep|mixed|bitflip]

use clap::ValueEnum;
use qec_lab::experiment::{run_sweep, write_sweep, ExperimentConfig, NoiseFamily, PGrid};
use qec_lab::CodeName;

fn main() -> qec_lab::Result<()> {
    let mut args = std::env::args().skip(1);
    let code = args.next().map_or(CodeName::Five, |s| {
        CodeName::from_str(&s, true).expect("code")
    });
    let model = args.next().map_or(NoiseFamily::Mixed, |s| {
        NoiseFamily::from_str(&s, true).expect("model")
    });
    let cfg = ExperimentConfig {
        code,
        model,
        p_grid: PGrid {
            min: 0.92,
            max: 1.0,
            steps: 17,
        },
        ..Default::default()
    };
    write_sweep(&run_sweep(&cfg)?, std::io::stdout().lock())
}
