//! Builds both codes, checks their invariants and lists the correctable errors.
//!
//! cargo run --example code_construction

use qec_lab::code::{build_five_qubit_code, build_steane_code, verify_code};

fn main() -> qec_lab::Result<()> {
    for code in [build_five_qubit_code()?, build_steane_code()?] {
        let r = verify_code(&code);
        println!(
            "{} code: {} qubits, {} correctable errors, encoder {}x{}",
            code.name,
            code.n_physical,
            code.errors.len(),
            code.encoder.rows(),
            code.encoder.cols()
        );
        println!(
            "  residuals: unitarity {:.1e}, gram {:.1e}, decode {:.1e}",
            r.unitarity_residual, r.gram_residual, r.roundtrip_residual
        );
        let names: Vec<String> = code.errors.iter().map(|e| e.to_string()).collect();
        for chunk in names.chunks(12) {
            println!("  {}", chunk.join(" "));
        }
    }
    Ok(())
}
