//! Command-line front end.
//!
//! Exit codes: 0 success, 1 bad arguments or configuration, 2 runtime
//! failure (including a failed `verify`).

use std::ffi::OsString;
use std::path::PathBuf;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::adiabatic::{EvolutionMode, Regime, Shape, DEFAULT_KAPPA};
use crate::error::{Error, Result};
use crate::experiment::{
    run, sweep, write_csv, write_summary, write_sweep_csv, ExperimentConfig, SweepAxis,
};
use crate::nmr_model::{DEFAULT_ZETA, TEST_ZETA};
use crate::verify::run_checks;

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_RUNTIME: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "monogamy-ising", version, about = "Adiabatic three-spin Ising triangle and monogamy scores")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Evolve, sample and write run.csv and summary.txt.
    Run(RunArgs),
    /// Tabulate ε_max and final ground-state probabilities over κ or M.
    Sweep(SweepArgs),
    /// Run the built-in oracle and invariant checks.
    Verify,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum RegimeArg {
    Frustrated,
    Nonfrustrated,
    Both,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ModeArg {
    Exact,
    Trotter2,
    Both,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ShapeArg {
    Linear,
    Sinh,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum SweepOver {
    Kappa,
    Steps,
}

#[derive(Args, Debug)]
struct CommonArgs {
    #[arg(long, value_enum, default_value = "both")]
    regime: RegimeArg,
    /// Final step index M (M + 1 steps).
    #[arg(long, default_value_t = 20)]
    steps: usize,
    #[arg(long, value_enum, default_value = "sinh")]
    shape: ShapeArg,
    /// Sinh ramp sharpness.
    #[arg(long)]
    kappa: Option<f64>,
    /// Field angle per step, hΔt.
    #[arg(long, default_value_t = std::f64::consts::PI / 21.0)]
    h_dt: f64,
    /// Magnitude of the final coupling angle per step, |J(T)|Δt.
    #[arg(long, default_value_t = std::f64::consts::FRAC_PI_4)]
    j_final_dt: f64,
    #[arg(long, default_value = "results")]
    out: PathBuf,
}

#[derive(Args, Debug)]
struct RunArgs {
    #[command(flatten)]
    common: CommonArgs,
    #[arg(long, value_enum, default_value = "both")]
    mode: ModeArg,
    #[arg(long, default_value_t = DEFAULT_ZETA)]
    zeta: f64,
    #[arg(long, default_value_t = TEST_ZETA)]
    zeta_test: f64,
    /// Comma-separated step counts, e.g. "3,5,7".
    #[arg(long)]
    samples: Option<String>,
}

#[derive(Args, Debug)]
struct SweepArgs {
    #[command(flatten)]
    common: CommonArgs,
    #[arg(long, value_enum, default_value = "kappa")]
    over: SweepOver,
    /// Comma-separated values of the swept parameter; defaults to the
    /// configured κ or M.
    #[arg(long)]
    values: Option<String>,
}

fn parse_list<T: std::str::FromStr>(flag: &str, text: &str) -> Result<Vec<T>> {
    text.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| {
            s.parse()
                .map_err(|_| Error::Usage(format!("--{flag}: cannot parse '{s}'")))
        })
        .collect()
}

fn base_config(common: &CommonArgs) -> Result<ExperimentConfig> {
    let shape = match (common.shape, common.kappa) {
        (ShapeArg::Linear, Some(_)) => {
            return Err(Error::Usage("--kappa only applies to --shape sinh".into()))
        }
        (ShapeArg::Linear, None) => Shape::Linear,
        (ShapeArg::Sinh, kappa) => Shape::Sinh {
            kappa: kappa.unwrap_or(DEFAULT_KAPPA),
        },
    };
    let regimes = match common.regime {
        RegimeArg::Frustrated => vec![Regime::Frustrated],
        RegimeArg::Nonfrustrated => vec![Regime::NonFrustrated],
        RegimeArg::Both => Regime::ALL.to_vec(),
    };
    Ok(ExperimentConfig {
        steps: common.steps,
        h_dt: common.h_dt,
        j_final_dt: common.j_final_dt,
        shape,
        regimes,
        output_dir: common.out.clone(),
        ..ExperimentConfig::default()
    })
}

fn cmd_run(args: &RunArgs) -> Result<()> {
    let mut config = base_config(&args.common)?;
    config.modes = match args.mode {
        ModeArg::Exact => vec![EvolutionMode::Exact],
        ModeArg::Trotter2 => vec![EvolutionMode::Trotter2],
        ModeArg::Both => EvolutionMode::ALL.to_vec(),
    };
    config.zeta = args.zeta;
    config.zeta_test = args.zeta_test;
    if let Some(s) = &args.samples {
        config.sample_steps = Some(parse_list("samples", s)?);
    }
    let report = run(&config)?;
    let csv = config.output_dir.join("run.csv");
    write_csv(&report.records, &csv)?;
    write_summary(&report, &config.output_dir.join("summary.txt"))?;
    for w in &report.warnings {
        eprintln!("warning: {w}");
    }
    println!("wrote {} records to {}", report.records.len(), csv.display());
    Ok(())
}

fn cmd_sweep(args: &SweepArgs) -> Result<()> {
    let config = base_config(&args.common)?;
    let axis = match args.over {
        SweepOver::Kappa => {
            if matches!(config.shape, Shape::Linear) {
                return Err(Error::Usage("sweeping κ needs --shape sinh".into()));
            }
            let values = match &args.values {
                Some(v) => parse_list("values", v)?,
                None => vec![args.common.kappa.unwrap_or(DEFAULT_KAPPA)],
            };
            SweepAxis::Kappa(values)
        }
        SweepOver::Steps => SweepAxis::Steps(match &args.values {
            Some(v) => parse_list("values", v)?,
            None => vec![config.steps],
        }),
    };
    let rows = sweep(&config, &axis)?;
    println!("regime,kappa,steps,epsilon_max,final_ground_prob_exact,final_ground_prob_trotter2");
    for r in &rows {
        println!(
            "{},{},{},{:.6},{:.6},{:.6}",
            r.regime,
            r.kappa.map(|k| k.to_string()).unwrap_or_default(),
            r.steps,
            r.epsilon_max,
            r.final_ground_prob[0],
            r.final_ground_prob[1]
        );
    }
    write_sweep_csv(&rows, &config.output_dir.join("sweep.csv"))
}

fn cmd_verify() -> i32 {
    let outcomes = run_checks();
    let failed = outcomes.iter().filter(|o| !o.passed).count();
    for o in &outcomes {
        println!("{} {}: {}", if o.passed { "PASS" } else { "FAIL" }, o.name, o.detail);
    }
    println!("{} checks, {} failed", outcomes.len(), failed);
    if failed == 0 {
        EXIT_OK
    } else {
        EXIT_RUNTIME
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn main_with_args<I, S>(args: I) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => EXIT_OK,
                _ => EXIT_USAGE,
            };
        }
    };
    let result = match &cli.command {
        Command::Run(a) => cmd_run(a),
        Command::Sweep(a) => cmd_sweep(a),
        Command::Verify => return cmd_verify(),
    };
    match result {
        Ok(()) => EXIT_OK,
        Err(e) => {
            eprintln!("error: {e}");
            if e.is_validation() {
                EXIT_USAGE
            } else {
                EXIT_RUNTIME
            }
        }
    }
}
