use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use sphlevy::report::{has_csv_form, Report, Status};
use sphlevy::run::run_scenario;
use sphlevy::scenario::{load_scenario, Kind};
use sphlevy::CliError;

/// Batch runner for spherical-function evaluation, definiteness
/// certification, and drift/measure recovery jobs.
///
/// Exit status: 0 pass/success, 1 verdict fail, 2 input or IO error.
#[derive(Parser)]
#[command(name = "sphlevy", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate a spherical function at a matrix point
    Eval(JobArgs),
    /// Average spherical functions over a probability mixture
    Bochner(JobArgs),
    /// Evaluate a drift-plus-jumps negative-type function
    LkForward(JobArgs),
    /// Certify positive type of a kernel on a point set
    CheckPd(JobArgs),
    /// Certify negative type of a function on a point set
    CheckNd(JobArgs),
    /// Positive-type checks of exp(-t psi) over a t-grid
    Schoenberg(JobArgs),
    /// Recover the drift coefficient from large-argument scaling
    RecoverA(JobArgs),
    /// Recover drift and grid-supported measure by nonnegative least squares
    RecoverMeasure(JobArgs),
    /// Monte Carlo multiplicativity ladder over Haar-random unitaries
    HaarTest(JobArgs),
    /// Expansion remainder against its explicit bound
    LemmaBounds(JobArgs),
    /// Run a full scenario file (the file names its kind)
    Run(JobArgs),
}

#[derive(Args)]
struct JobArgs {
    /// Scenario file: a payload document, or a full scenario with kind/tol/seed
    #[arg(long)]
    scenario: PathBuf,
    /// Spectral tolerance (default 1e-8); overrides the scenario file
    #[arg(long)]
    tol: Option<f64>,
    /// Seed for all randomness in the job (default 0); overrides the file
    #[arg(long)]
    seed: Option<u64>,
    /// Write the report here instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
    /// Report format; csv exists for recover-a, haar-test, schoenberg
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

fn kind_of(command: &Command) -> (Option<Kind>, &JobArgs) {
    match command {
        Command::Eval(a) => (Some(Kind::Eval), a),
        Command::Bochner(a) => (Some(Kind::Bochner), a),
        Command::LkForward(a) => (Some(Kind::LkForward), a),
        Command::CheckPd(a) => (Some(Kind::CheckPd), a),
        Command::CheckNd(a) => (Some(Kind::CheckNd), a),
        Command::Schoenberg(a) => (Some(Kind::Schoenberg), a),
        Command::RecoverA(a) => (Some(Kind::RecoverA), a),
        Command::RecoverMeasure(a) => (Some(Kind::RecoverMeasure), a),
        Command::HaarTest(a) => (Some(Kind::HaarTest), a),
        Command::LemmaBounds(a) => (Some(Kind::LemmaBounds), a),
        Command::Run(a) => (None, a),
    }
}

fn execute(command: &Command) -> Result<Report, CliError> {
    let (kind, args) = kind_of(command);
    let text = std::fs::read_to_string(&args.scenario).map_err(|e| {
        CliError::Io(format!("cannot read {}: {e}", args.scenario.display()))
    })?;
    let (kind, payload, tol, seed) = load_scenario(&text, kind, args.tol, args.seed)?;
    if args.format == Format::Csv && !has_csv_form(kind) {
        return Err(CliError::Input(format!(
            "kind `{kind}` has no CSV form (CSV covers recover-a, haar-test, schoenberg)"
        )));
    }
    run_scenario(kind, &payload, tol, seed)
}

fn emit(report: &Report, args: &JobArgs) -> Result<(), CliError> {
    let body = match args.format {
        Format::Json => report.to_json(),
        Format::Csv => report.to_csv()?,
    };
    match &args.out {
        Some(path) => std::fs::write(path, body)
            .map_err(|e| CliError::Io(format!("cannot write {}: {e}", path.display()))),
        None => {
            print!("{body}");
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (_, args) = kind_of(&cli.command);
    match execute(&cli.command) {
        Ok(report) => {
            if let Err(err) = emit(&report, args) {
                eprintln!("{err}");
                return ExitCode::from(2);
            }
            match report.status {
                Status::Pass => ExitCode::SUCCESS,
                Status::Fail => ExitCode::from(1),
            }
        }
        Err(err) => {
            eprintln!("{err}");
            ExitCode::from(2)
        }
    }
}
