//! Feeds the effective channel back in as physical noise, level by level.
//!
//! cargo run --release --example concatenation -- [p] [levels]

use qec_lab::experiment::NoiseFamily;
use qec_lab::oracles::f5_dep;
use qec_lab::{concatenate, CodeName};

fn main() -> qec_lab::Result<()> {
    let mut args = std::env::args().skip(1);
    let p: f64 = args.next().map_or(0.95, |s| s.parse().expect("p"));
    let levels: usize = args.next().map_or(4, |s| s.parse().expect("levels"));
    let code = CodeName::Five.build()?;
    let base = NoiseFamily::Dep.noise_model(CodeName::Five, p)?;

    // for depolarizing noise each level is the closed form applied once more
    let mut iterated = p;
    println!("level  F'                 closed-form iterate");
    for (k, rep) in concatenate(&code, &base, levels)?.iter().enumerate() {
        iterated = f5_dep(iterated);
        println!("{:<6} {:.15}  {:.15}", k + 1, rep.fidelity, iterated);
    }
    Ok(())
}
