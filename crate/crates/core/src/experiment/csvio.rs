use std::io::{Read, Write};

use super::{RunStats, SweepRow};
use crate::error::{Error, Result};

const SWEEP_HEADER: [&str; 5] = ["p", "F_eff_simulated", "F_oracle", "gap", "rdev"];
const STATS_HEADER: [&str; 9] = [
    "f0",
    "n_samples",
    "dF_min",
    "dF_avg",
    "dR_min",
    "dR_avg",
    "gap_max",
    "n_positive",
    "seed",
];

/// 17 significant digits, enough to round-trip any `f64`.
pub fn format_real(x: f64) -> String {
    if x.is_nan() {
        "NaN".to_string()
    } else {
        format!("{x:.16e}")
    }
}

fn parse_real(field: &str) -> Result<f64> {
    field
        .trim()
        .parse()
        .map_err(|_| Error::Config(format!("`{field}` is not a number")))
}

pub fn write_sweep<W: Write>(rows: &[SweepRow], w: W) -> Result<()> {
    let mut out = csv::Writer::from_writer(w);
    out.write_record(SWEEP_HEADER)?;
    for r in rows {
        out.write_record([r.p, r.f_eff_simulated, r.f_oracle, r.gap, r.rdev].map(format_real))?;
    }
    out.flush()?;
    Ok(())
}

pub fn write_run_stats<W: Write>(stats: &[RunStats], w: W) -> Result<()> {
    let mut out = csv::Writer::from_writer(w);
    out.write_record(STATS_HEADER)?;
    for s in stats {
        out.write_record([
            format_real(s.f0),
            s.n_samples.to_string(),
            format_real(s.df_min),
            format_real(s.df_avg),
            format_real(s.dr_min),
            format_real(s.dr_avg),
            format_real(s.gap_max),
            s.n_positive.to_string(),
            s.seed.to_string(),
        ])?;
    }
    out.flush()?;
    Ok(())
}

pub fn read_run_stats<R: Read>(r: R) -> Result<Vec<RunStats>> {
    let mut rdr = csv::Reader::from_reader(r);
    let header = rdr.headers()?.clone();
    if header.iter().ne(STATS_HEADER) {
        return Err(Error::Config(format!(
            "unexpected header `{}`, want `{}`",
            header.iter().collect::<Vec<_>>().join(","),
            STATS_HEADER.join(",")
        )));
    }
    let mut out = Vec::new();
    for rec in rdr.records() {
        let rec = rec?;
        let int = |i: usize| {
            rec[i]
                .trim()
                .parse::<u64>()
                .map_err(|_| Error::Config(format!("`{}` is not an integer", &rec[i])))
        };
        out.push(RunStats {
            f0: parse_real(&rec[0])?,
            n_samples: int(1)? as usize,
            df_min: parse_real(&rec[2])?,
            df_avg: parse_real(&rec[3])?,
            dr_min: parse_real(&rec[4])?,
            dr_avg: parse_real(&rec[5])?,
            gap_max: parse_real(&rec[6])?,
            n_positive: int(7)? as usize,
            seed: int(8)?,
            wall_time_s: 0.0,
        });
    }
    Ok(out)
}
