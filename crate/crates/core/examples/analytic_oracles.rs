//! Closed-form fidelities next to the simulator, on a coarse grid.
//!
//! cargo run --release --example analytic_oracles

use qec_lab::effective_fidelity;
use qec_lab::experiment::NoiseFamily;
use qec_lab::oracles::{oracle_eval, OracleId};
use qec_lab::CodeName;

fn main() -> qec_lab::Result<()> {
    let five = CodeName::Five.build()?;
    let steane = CodeName::Steane.build()?;
    let cases = [
        (OracleId::F5Dep, &five, CodeName::Five, NoiseFamily::Dep),
        (OracleId::F5Mixed, &five, CodeName::Five, NoiseFamily::Mixed),
        (
            OracleId::F5Bitflip,
            &five,
            CodeName::Five,
            NoiseFamily::Bitflip,
        ),
        (OracleId::F7Dep, &steane, CodeName::Steane, NoiseFamily::Dep),
        (
            OracleId::F7Mixed,
            &steane,
            CodeName::Steane,
            NoiseFamily::Mixed,
        ),
    ];
    println!(
        "{:<11} {:>6} {:>20} {:>10}",
        "oracle", "p", "value", "|sim-exact|"
    );
    for (id, code, name, family) in cases {
        for p in [0.9, 0.95, 0.99] {
            let exact = oracle_eval(id, p)?;
            let sim = effective_fidelity(code, &family.noise_model(name, p)?)?;
            println!(
                "{:<11} {:>6} {:>20.15} {:>10.1e}",
                id,
                p,
                exact,
                (sim - exact).abs()
            );
        }
    }
    println!();
    for id in [
        OracleId::Gap5,
        OracleId::Rdev5,
        OracleId::Gap7,
        OracleId::Rdev7,
        OracleId::Gap5Bitflip,
    ] {
        println!("{:<13} p = 0.95: {:+.6e}", id, oracle_eval(id, 0.95)?);
    }
    Ok(())
}
