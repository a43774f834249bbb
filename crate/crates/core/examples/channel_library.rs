//! The standard single-qubit channels at one fidelity, with their CPTP
//! residuals and JSON form.
//!
//! cargo run --example channel_library -- [p]

use qec_lab::channel::{average_fidelity, two_design_average_fidelity, validate_cptp, ChannelSpec};
use qec_lab::{make_standard_channel, StandardKind};

fn main() -> qec_lab::Result<()> {
    let p: f64 = std::env::args()
        .nth(1)
        .map_or(0.9, |s| s.parse().expect("p"));
    println!(
        "{:<10} {:>6} {:>12} {:>12} {:>12} {:>10}",
        "channel", "kraus", "F_e", "F_avg", "F_2design", "TP resid"
    );
    for kind in StandardKind::ALL {
        let ch = make_standard_channel(kind, p)?;
        let fid = average_fidelity(&ch);
        let cptp = validate_cptp(&ch);
        println!(
            "{:<10} {:>6} {:>12.9} {:>12.9} {:>12.9} {:>10.1e}",
            ch.label(),
            ch.kraus().len(),
            fid.entanglement_fidelity,
            fid.average_fidelity,
            two_design_average_fidelity(&ch),
            cptp.trace_residual
        );
    }
    let spec = ChannelSpec::standard(StandardKind::Gad, p);
    println!("\n{}", serde_json::to_string(&spec)?);
    println!(
        "{}",
        serde_json::to_string(&make_standard_channel(StandardKind::Ad, p)?.kraus())?
    );
    Ok(())
}
