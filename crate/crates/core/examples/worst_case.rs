//! Where the worst case lives: sampled minima versus channels whose axes are
//! aligned across all five qubits.
//!
//! cargo run --release --example worst_case -- [F0] [N]

use qec_lab::build_five_qubit_code;
use qec_lab::channel::sample_arbitrary_channel;
use qec_lab::effective::{effective_fidelity, NoiseModel};
use qec_lab::experiment::{run_montecarlo, ExperimentConfig};
use qec_lab::oracles::{f5_dep, gap5_bitflip};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> qec_lab::Result<()> {
    let mut args = std::env::args().skip(1);
    let f0: f64 = args.next().map_or(0.95, |s| s.parse().expect("F0"));
    let n: usize = args.next().map_or(10_000, |s| s.parse().expect("N"));
    let bound = gap5_bitflip(f0).abs();

    let cfg = ExperimentConfig {
        f0_list: vec![f0],
        samples: n,
        master_seed: 1,
        ..Default::default()
    };
    let independent = run_montecarlo(&cfg)?[0].df_min;

    // same channel on every qubit
    let code = build_five_qubit_code()?;
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let f_dep = f5_dep(f0);
    let mut aligned = f64::NEG_INFINITY;
    for _ in 0..n {
        let ch = sample_arbitrary_channel(f0, &mut rng)?;
        let f = effective_fidelity(&code, &NoiseModel::uniform(&ch, 5))?;
        aligned = aligned.max(f_dep - f);
    }

    println!("F0 = {f0}, N = {n}, bit-flip bound {bound:.6e}");
    println!(
        "independent draws: dF_min = {independent:.6e} ({:.3} of bound)",
        independent / bound
    );
    println!(
        "aligned draws:     dF_min = {aligned:.6e} ({:.3} of bound)",
        aligned / bound
    );
    Ok(())
}
