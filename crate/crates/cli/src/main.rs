use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use cmv_cli::error::{CliError, EXIT_NUMERICAL, EXIT_RESIDUAL};
use cmv_cli::input::parse_complex;
use cmv_cli::report::{bands_csv, dirichlet_csv, residuals_csv};
use cmv_cli::{parse_input, run_analyze, run_random_sweep, EnsembleSpec, InputDocument};
use cmv_core::{c64, Tolerances};

#[derive(Parser)]
#[command(name = "cmvtrace", version, about = "Dirichlet data, band layouts and circular trace identities for periodic Verblunsky coefficients")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Full report: twisted word, Dirichlet data, band edges, layout, residuals.
    Analyze(Common),
    /// Dirichlet points and weights.
    Dirichlet(Common),
    /// Band/gap layout.
    Bands(Common),
    /// Residuals of the trace identities only.
    TraceCheck(Common),
    /// Random-ensemble sweep over several periods.
    Sweep(SweepArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Args)]
struct Common {
    /// Input JSON document ("-" for stdin).
    #[arg(long, conflicts_with = "json")]
    input: Option<PathBuf>,
    /// Inline input JSON document.
    #[arg(long)]
    json: Option<String>,
    /// Pass tolerance for residuals.
    #[arg(long)]
    tol: Option<f64>,
    /// Rotation parameter "re,im"; repeatable, replaces the document's lambda_list.
    #[arg(long = "lambda", value_parser = parse_complex, allow_hyphen_values = true)]
    lambdas: Vec<c64>,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
}

#[derive(Args)]
struct SweepArgs {
    /// Comma-separated even periods.
    #[arg(long, value_delimiter = ',', default_value = "2,4,6,8")]
    periods: Vec<usize>,
    #[arg(long, default_value_t = 200)]
    samples: usize,
    #[arg(long, default_value_t = 0.9)]
    radius: f64,
    #[arg(long, default_value_t = 42)]
    seed: u64,
    #[arg(long, default_value_t = 1e-8)]
    tol: f64,
}

fn load(common: &Common) -> Result<InputDocument, CliError> {
    let text = match (&common.input, &common.json) {
        (_, Some(j)) => j.clone(),
        (Some(p), None) if p.as_os_str() == "-" => {
            let mut s = String::new();
            std::io::stdin()
                .read_to_string(&mut s)
                .map_err(|e| CliError::Parse(format!("stdin: {e}")))?;
            s
        }
        (Some(p), None) => std::fs::read_to_string(p).map_err(|e| CliError::Parse(format!("{}: {e}", p.display())))?,
        (None, None) => return Err(CliError::Validation("one of --input or --json is required".into())),
    };
    let mut doc = parse_input(&text)?;
    if let Some(t) = common.tol {
        if !(t > 0.0) {
            return Err(CliError::Validation("--tol must be positive".into()));
        }
        doc.tolerances.pass = t;
    }
    if !common.lambdas.is_empty() {
        for l in &common.lambdas {
            if (l.norm() - 1.0).abs() > doc.tolerances.circle {
                return Err(CliError::Validation(format!("--lambda {l} is not unimodular")));
            }
        }
        doc.lambdas = common.lambdas.clone();
    }
    Ok(doc)
}

fn run(cli: Cli) -> Result<i32, CliError> {
    match cli.command {
        Command::Sweep(args) => {
            let spec = EnsembleSpec {
                periods: args.periods,
                samples_per_period: args.samples,
                radius_max: args.radius,
                base_seed: args.seed,
            };
            let tol = Tolerances { pass: args.tol, ..Default::default() };
            let summary = run_random_sweep(&spec, &tol)?;
            println!("{}", summary.to_json());
            Ok(if summary.pass { 0 } else { EXIT_RESIDUAL })
        }
        Command::Analyze(c) => {
            let out = run_analyze(&load(&c)?)?;
            match c.format {
                Format::Json => println!("{}", out.report.to_json()),
                Format::Csv => print!("{}", residuals_csv(&out.report.residuals)),
            }
            Ok(out.exit_code)
        }
        Command::Dirichlet(c) => {
            let out = run_analyze(&load(&c)?)?;
            match c.format {
                Format::Json => println!("{}", serde_json::to_string_pretty(&out.report.dirichlet).unwrap()),
                Format::Csv => print!("{}", dirichlet_csv(&out.report.dirichlet)),
            }
            Ok(0)
        }
        Command::Bands(c) => {
            let out = run_analyze(&load(&c)?)?;
            let Some(layout) = &out.report.layout else {
                eprintln!("{}", serde_json::json!({"error": "NumericalError", "message": out.report.warnings.join("; "), "exit_code": EXIT_NUMERICAL}));
                return Ok(EXIT_NUMERICAL);
            };
            match c.format {
                Format::Json => println!(
                    "{}",
                    serde_json::to_string_pretty(&serde_json::json!({
                        "band_edges": out.report.band_edges,
                        "layout": layout,
                    }))
                    .unwrap()
                ),
                Format::Csv => print!("{}", bands_csv(&out.report).expect("layout present")),
            }
            Ok(0)
        }
        Command::TraceCheck(c) => {
            let out = run_analyze(&load(&c)?)?;
            match c.format {
                Format::Json => println!(
                    "{}",
                    serde_json::to_string_pretty(&serde_json::json!({
                        "word": out.report.word,
                        "residuals": out.report.residuals,
                        "max_residual": out.report.max_residual,
                        "tolerance": out.report.tolerance,
                        "pass": out.report.pass,
                    }))
                    .unwrap()
                ),
                Format::Csv => print!("{}", residuals_csv(&out.report.residuals)),
            }
            Ok(if out.report.pass { 0 } else { EXIT_RESIDUAL })
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("{}", e.to_json());
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
