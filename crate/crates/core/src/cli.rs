//! Command-line front end. `run` is the whole program; the binary only
//! forwards `std::env::args` and the process exit code.

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::channel::ChannelSpec;
use crate::code::CodeName;
use crate::effective::{concatenate, effective_channel, EffectiveChannelReport, NoiseModel};
use crate::experiment::{
    emit_tables, format_real, read_run_stats, run_montecarlo, run_sweep, write_run_stats,
    write_sweep, ExperimentConfig, Mode, NoiseFamily, PGrid, DEFAULT_F0_GRID, DEFAULT_SAMPLES,
};

#[derive(Debug, Parser)]
#[command(
    name = "qec-lab",
    version,
    about = "Effective-channel simulator for the five-qubit and Steane codes"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Effective fidelity over a grid of channel fidelities.
    Sweep(SweepArgs),
    /// Random arbitrary-channel campaign at fixed initial fidelities.
    Montecarlo(MonteCarloArgs),
    /// Summary tables from a Monte-Carlo CSV (or a fresh run).
    Tables(TablesArgs),
    /// Repeated encoding with the effective channel fed back as noise.
    Concat(ConcatArgs),
    /// Process tomogram, Choi matrix and fidelity for a channel file.
    Tomography(TomographyArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Csv,
    Json,
}

#[derive(Debug, Args)]
struct SweepArgs {
    #[arg(long, value_enum, default_value_t = CodeName::Five)]
    code: CodeName,
    #[arg(long, value_enum, default_value_t = NoiseFamily::Dep)]
    model: NoiseFamily,
    #[arg(long, default_value_t = 0.9)]
    pmin: f64,
    #[arg(long, default_value_t = 1.0)]
    pmax: f64,
    #[arg(long, default_value_t = 11)]
    steps: usize,
    #[arg(long)]
    workers: Option<usize>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct CampaignArgs {
    #[arg(long, value_enum, default_value_t = CodeName::Five)]
    code: CodeName,
    /// Comma-separated initial fidelities; defaults to the standard 13-point grid.
    #[arg(long, value_delimiter = ',')]
    f0: Vec<f64>,
    #[arg(long, default_value_t = DEFAULT_SAMPLES)]
    samples: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    workers: Option<usize>,
}

#[derive(Debug, Args)]
struct MonteCarloArgs {
    #[command(flatten)]
    campaign: CampaignArgs,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct TablesArgs {
    /// Monte-Carlo CSV written by `montecarlo`.
    #[arg(long)]
    from: Option<PathBuf>,
    #[command(flatten)]
    campaign: CampaignArgs,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct ConcatArgs {
    #[arg(long, value_enum, default_value_t = CodeName::Five)]
    code: CodeName,
    #[arg(long, value_enum, default_value_t = NoiseFamily::Dep)]
    model: NoiseFamily,
    #[arg(long, required_unless_present = "channels")]
    p: Option<f64>,
    /// JSON array of channel specs, one per physical qubit.
    #[arg(long, conflicts_with = "p")]
    channels: Option<PathBuf>,
    #[arg(long, default_value_t = 3)]
    levels: usize,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct TomographyArgs {
    #[arg(long, value_enum, default_value_t = CodeName::Five)]
    code: CodeName,
    /// JSON array of channel specs, one per physical qubit.
    #[arg(long)]
    channels: PathBuf,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[arg(long)]
    out: Option<PathBuf>,
}

/// Parses `args` (including the program name) and runs the command.
/// Returns 0 on success, 2 on a usage error and 1 on a runtime failure.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let rendered = e.render().to_string();
            return if e.use_stderr() {
                let _ = write!(stderr, "{rendered}");
                2
            } else {
                let _ = write!(stdout, "{rendered}");
                0
            };
        }
    };
    match dispatch(cli.command, stdout) {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e:#}");
            1
        }
    }
}

fn dispatch(cmd: Command, stdout: &mut dyn Write) -> anyhow::Result<()> {
    match cmd {
        Command::Sweep(a) => {
            let mut cfg = ExperimentConfig {
                code: a.code,
                mode: Mode::Sweep,
                model: a.model,
                p_grid: PGrid {
                    min: a.pmin,
                    max: a.pmax,
                    steps: a.steps,
                },
                output_path: a.out.clone(),
                ..Default::default()
            };
            if let Some(w) = a.workers {
                cfg.workers = w;
            }
            let rows = run_sweep(&cfg)?;
            with_output(a.out.as_deref(), stdout, |w| Ok(write_sweep(&rows, w)?))
        }
        Command::Montecarlo(a) => {
            let cfg = campaign_config(&a.campaign, Mode::Montecarlo)?;
            let stats = run_montecarlo(&cfg)?;
            with_output(a.out.as_deref(), stdout, |w| {
                Ok(write_run_stats(&stats, w)?)
            })
        }
        Command::Tables(a) => {
            let stats = match &a.from {
                Some(path) => {
                    let f =
                        File::open(path).with_context(|| format!("opening {}", path.display()))?;
                    read_run_stats(f).with_context(|| format!("reading {}", path.display()))?
                }
                None => run_montecarlo(&campaign_config(&a.campaign, Mode::Tables)?)?,
            };
            let tables = emit_tables(&stats)?;
            with_output(a.out.as_deref(), stdout, |w| {
                match a.format {
                    Format::Text => write!(w, "{tables}")?,
                    Format::Csv => tables.write_csv(w)?,
                    Format::Json => writeln!(w, "{}", serde_json::to_string_pretty(&tables)?)?,
                }
                Ok(())
            })
        }
        Command::Concat(a) => {
            let code = a.code.build()?;
            let noise = match (&a.channels, a.p) {
                (Some(path), _) => load_noise(path, a.code)?,
                (None, Some(p)) => a.model.noise_model(a.code, p)?,
                (None, None) => unreachable!("clap requires --p or --channels"),
            };
            let reports = concatenate(&code, &noise, a.levels)?;
            with_output(a.out.as_deref(), stdout, |w| {
                match a.format {
                    Format::Json => writeln!(w, "{}", serde_json::to_string_pretty(&reports)?)?,
                    Format::Csv | Format::Text => {
                        let mut out = csv::Writer::from_writer(w);
                        out.write_record(["level", "fidelity"])?;
                        for (k, r) in reports.iter().enumerate() {
                            out.write_record([(k + 1).to_string(), format_real(r.fidelity)])?;
                        }
                        out.flush()?;
                    }
                }
                Ok(())
            })
        }
        Command::Tomography(a) => {
            let code = a.code.build()?;
            let noise = load_noise(&a.channels, a.code)?;
            let report = effective_channel(&code, &noise)?;
            with_output(a.out.as_deref(), stdout, |w| {
                match a.format {
                    Format::Json => writeln!(w, "{}", serde_json::to_string_pretty(&report)?)?,
                    Format::Text | Format::Csv => write_tomography_text(&report, w)?,
                }
                Ok(())
            })
        }
    }
}

fn campaign_config(a: &CampaignArgs, mode: Mode) -> anyhow::Result<ExperimentConfig> {
    let mut cfg = ExperimentConfig {
        code: a.code,
        mode,
        f0_list: if a.f0.is_empty() {
            DEFAULT_F0_GRID.to_vec()
        } else {
            a.f0.clone()
        },
        samples: a.samples,
        master_seed: a.seed,
        ..Default::default()
    };
    if let Some(w) = a.workers {
        cfg.workers = w;
    }
    cfg.validate()?;
    Ok(cfg)
}

fn load_noise(path: &Path, code: CodeName) -> anyhow::Result<NoiseModel> {
    let text =
        std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let specs: Vec<ChannelSpec> =
        serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))?;
    if specs.len() != code.n_physical() {
        bail!(
            "{} lists {} channels, the {code} code needs {}",
            path.display(),
            specs.len(),
            code.n_physical()
        );
    }
    let per_qubit = specs
        .iter()
        .map(ChannelSpec::build)
        .collect::<Result<_, _>>()?;
    Ok(NoiseModel::new(per_qubit))
}

fn with_output(
    path: Option<&Path>,
    stdout: &mut dyn Write,
    body: impl FnOnce(&mut dyn Write) -> anyhow::Result<()>,
) -> anyhow::Result<()> {
    match path {
        Some(p) => {
            let f = File::create(p).with_context(|| format!("creating {}", p.display()))?;
            let mut w = BufWriter::new(f);
            body(&mut w)?;
            w.flush()?;
            Ok(())
        }
        None => body(stdout),
    }
}

fn write_tomography_text(r: &EffectiveChannelReport, w: &mut dyn Write) -> std::io::Result<()> {
    writeln!(w, "lambda[a][b][c][d] = <a|E(|c><d|)|b>")?;
    for c in 0..2 {
        for d in 0..2 {
            let m = r.tomogram.output(c, d);
            writeln!(w, "  E(|{c}><{d}|):")?;
            for a in 0..2 {
                writeln!(w, "    {}  {}", fmt_c(m.get(a, 0)), fmt_c(m.get(a, 1)))?;
            }
        }
    }
    writeln!(w, "chi:")?;
    for i in 0..4 {
        let row: Vec<String> = (0..4).map(|j| fmt_c(r.choi.chi.get(i, j))).collect();
        writeln!(w, "  {}", row.join("  "))?;
    }
    writeln!(w, "kraus operators: {}", r.kraus.kraus().len())?;
    writeln!(w, "F' = {}", format_real(r.fidelity))
}

fn fmt_c(z: num_complex::Complex64) -> String {
    format!("{:+.10e}{:+.10e}i", z.re, z.im)
}
