//! A small arbitrary-channel campaign rendered as summary tables.
//!
//! cargo run --release --example monte_carlo -- [samples] [seed]

use qec_lab::experiment::{emit_tables, run_montecarlo, ExperimentConfig};

fn main() -> qec_lab::Result<()> {
    let mut args = std::env::args().skip(1);
    let samples = args.next().map_or(500, |s| s.parse().expect("samples"));
    let master_seed = args.next().map_or(7, |s| s.parse().expect("seed"));
    let cfg = ExperimentConfig {
        samples,
        master_seed,
        ..Default::default()
    };
    let stats = run_montecarlo(&cfg)?;
    for s in &stats {
        eprintln!(
            "F0 = {:<6} {} samples, {} above the depolarizing reference, {:.2}s",
            s.f0, s.n_samples, s.n_positive, s.wall_time_s
        );
    }
    print!("{}", emit_tables(&stats)?);
    Ok(())
}
