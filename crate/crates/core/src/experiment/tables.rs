use std::fmt;
use std::io::Write;

use serde::Serialize;

use super::{format_real, RunStats};
use crate::error::{Error, Result};
use crate::oracles;

/// One `F₀` row of both summary tables. The Steane columns are `None`
/// where that code does not improve on the bare channel.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TableRow {
    pub f0: f64,
    pub df_min: f64,
    pub df_avg: f64,
    pub gap7_abs: Option<f64>,
    pub dr_min: f64,
    pub dr_avg: f64,
    pub rdev7: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TableSet {
    pub rows: Vec<TableRow>,
}

/// Joins Monte-Carlo statistics with the analytic Steane columns.
pub fn emit_tables(stats: &[RunStats]) -> Result<TableSet> {
    if stats.is_empty() {
        return Err(Error::Config("no Monte-Carlo rows to tabulate".into()));
    }
    let rows = stats
        .iter()
        .map(|s| {
            let improves = oracles::f7_dep(s.f0) > s.f0;
            TableRow {
                f0: s.f0,
                df_min: s.df_min.abs(),
                df_avg: s.df_avg,
                gap7_abs: improves.then(|| oracles::gap7(s.f0).abs()),
                dr_min: s.dr_min.abs(),
                dr_avg: s.dr_avg,
                rdev7: improves.then(|| oracles::gap7(s.f0).abs() / (oracles::f7_dep(s.f0) - s.f0)),
            }
        })
        .collect();
    Ok(TableSet { rows })
}

fn short(x: Option<f64>) -> String {
    x.map_or_else(|| "None".to_string(), |v| format!("{v:.5e}"))
}

impl TableSet {
    pub fn write_csv<W: Write>(&self, w: W) -> Result<()> {
        let mut out = csv::Writer::from_writer(w);
        out.write_record([
            "f0",
            "dF_min",
            "dF_avg",
            "dF_steane",
            "dR_min",
            "dR_avg",
            "dR_steane",
        ])?;
        let opt = |x: Option<f64>| x.map_or_else(|| "None".to_string(), format_real);
        for r in &self.rows {
            out.write_record([
                format_real(r.f0),
                format_real(r.df_min),
                format_real(r.df_avg),
                opt(r.gap7_abs),
                format_real(r.dr_min),
                format_real(r.dr_avg),
                opt(r.rdev7),
            ])?;
        }
        out.flush()?;
        Ok(())
    }
}

impl fmt::Display for TableSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "{:<8} {:>14} {:>14} {:>14}",
            "F0", "|dF'_min|", "|dF'|_avg", "|dF'_steane|"
        )?;
        for r in &self.rows {
            writeln!(
                f,
                "{:<8} {:>14} {:>14} {:>14}",
                r.f0,
                short(Some(r.df_min)),
                short(Some(r.df_avg)),
                short(r.gap7_abs)
            )?;
        }
        writeln!(f)?;
        writeln!(
            f,
            "{:<8} {:>14} {:>14} {:>14}",
            "F0", "dR_min", "dR_avg", "dR_steane"
        )?;
        for r in &self.rows {
            writeln!(
                f,
                "{:<8} {:>14} {:>14} {:>14}",
                r.f0,
                short(Some(r.dr_min)),
                short(Some(r.dr_avg)),
                short(r.rdev7)
            )?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn stub(f0: f64) -> RunStats {
        RunStats {
            f0,
            n_samples: 1,
            df_min: 0.0,
            df_avg: 0.0,
            dr_min: 0.0,
            dr_avg: 0.0,
            gap_max: 0.0,
            n_positive: 0,
            seed: 0,
            wall_time_s: 0.0,
        }
    }

    #[test]
    fn steane_columns() {
        let t = emit_tables(&[stub(0.9), stub(0.91), stub(0.92), stub(0.93)]).unwrap();
        assert_eq!(t.rows[0].gap7_abs, None);
        assert_eq!(t.rows[1].rdev7, None);
        assert!((t.rows[2].rdev7.unwrap() - 1.45506).abs() < 5e-5);
        assert!((t.rows[3].gap7_abs.unwrap() - 8.58032e-4).abs() < 5e-9);
        let text = t.to_string();
        assert_eq!(text.matches("None").count(), 4);
    }

    #[test]
    fn empty_input_is_an_error() {
        assert!(emit_tables(&[]).is_err());
    }
}
