use clap::{Parser, Subcommand, ValueEnum};
use quadalg::cli::config::RunConfig;
use quadalg::cli::{run, CliError, Command, Report};
use quadalg::verify::ModeKind;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "quadalg", version, about = "Build and verify composition, Jordan and quadrangular algebras and their root groups")]
struct Args {
    #[command(subcommand)]
    command: Sub,
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Symbolic,
    Random,
}

#[derive(clap::Args)]
struct RunArgs {
    /// JSON run configuration
    config: PathBuf,
    #[arg(long, value_enum)]
    mode: Option<Mode>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    trials: Option<u64>,
    /// Write the JSON report here instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
    /// Print one line per check instead of JSON
    #[arg(long)]
    text: bool,
}

#[derive(Subcommand)]
enum Sub {
    /// Construct the instance and report its dimensions and verdicts
    Build(RunArgs),
    /// Construct the instance and emit its structure constants
    Construct(RunArgs),
    /// Run the verification suite of the construction
    Verify(RunArgs),
    /// Commutator tables and comparison with the classical description
    Rootgroups(RunArgs),
    /// Summarize saved reports
    Report {
        reports: Vec<PathBuf>,
    },
}

fn load_config(a: &RunArgs) -> Result<RunConfig, CliError> {
    let mut cfg = RunConfig::load(&a.config)?;
    if let Some(m) = a.mode {
        cfg.verify.mode = match m {
            Mode::Symbolic => ModeKind::Symbolic,
            Mode::Random => ModeKind::Random,
        };
    }
    if let Some(s) = a.seed {
        cfg.verify.seed = s;
    }
    if let Some(t) = a.trials {
        cfg.verify.trials = t;
    }
    if a.out.is_some() {
        cfg.out = a.out.clone();
    }
    Ok(cfg)
}

fn emit(report: &Report, out: Option<&Path>, text: bool) -> Result<(), CliError> {
    let body = if text { report.render_text() } else { report.to_json() + "\n" };
    match out {
        Some(p) => std::fs::write(p, body).map_err(|e| CliError::Io(format!("{}: {e}", p.display()))),
        None => {
            print!("{body}");
            Ok(())
        }
    }
}

fn execute(args: Args) -> Result<bool, CliError> {
    let (a, command) = match &args.command {
        Sub::Build(a) => (a, Command::Build),
        Sub::Construct(a) => (a, Command::Construct),
        Sub::Verify(a) => (a, Command::Verify),
        Sub::Rootgroups(a) => (a, Command::Rootgroups),
        Sub::Report { reports } => {
            let mut ok = true;
            for p in reports {
                let text = std::fs::read_to_string(p).map_err(|e| CliError::Io(format!("{}: {e}", p.display())))?;
                let r: Report = serde_json::from_str(&text).map_err(|e| CliError::ConfigParse { origin: p.display().to_string(), line: e.line(), column: e.column(), message: e.to_string() })?;
                print!("{}", r.render_text());
                ok &= r.passed;
            }
            return Ok(ok);
        }
    };
    let cfg = load_config(a)?;
    let report = run(&cfg, command)?;
    emit(&report, cfg.out.as_deref(), a.text)?;
    Ok(report.passed)
}

fn main() -> ExitCode {
    match execute(Args::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
