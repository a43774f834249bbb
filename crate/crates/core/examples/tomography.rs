//! Process tomography of the encoded qubit under heterogeneous noise:
//! tomogram, Choi matrix, extracted Kraus operators and fidelity.
//!
//! cargo run --example tomography -- [p]

use qec_lab::effective::{effective_channel, kraus_route_fidelity};
use qec_lab::experiment::NoiseFamily;
use qec_lab::oracles::f5_mixed;
use qec_lab::CodeName;

fn main() -> qec_lab::Result<()> {
    let p: f64 = std::env::args()
        .nth(1)
        .map_or(0.92, |s| s.parse().expect("p"));
    let code = CodeName::Five.build()?;
    let noise = NoiseFamily::Mixed.noise_model(CodeName::Five, p)?;
    let rep = effective_channel(&code, &noise)?;

    println!(
        "noise: {}",
        noise
            .per_qubit
            .iter()
            .map(|c| c.label())
            .collect::<Vec<_>>()
            .join(" ")
    );
    println!("chi =");
    for i in 0..4 {
        let row: Vec<String> = (0..4)
            .map(|j| {
                let z = rep.choi.chi.get(i, j);
                format!("{:+.6}{:+.6}i", z.re, z.im)
            })
            .collect();
        println!("  {}", row.join("  "));
    }
    println!("invariants: {:?}", rep.choi.invariants());
    println!("{} Kraus operators", rep.kraus.kraus().len());
    println!("F' (Choi)   = {:.15}", rep.fidelity);
    println!("F' (Kraus)  = {:.15}", kraus_route_fidelity(&rep));
    println!("closed form = {:.15}", f5_mixed(p));
    Ok(())
}
