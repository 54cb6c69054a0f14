use std::io::Read;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use gkz_core::pipeline::{exit_code_for, run_until, Stage};
use gkz_core::{fixture, fixtures, ProblemSpec};

mod render;

#[derive(Parser)]
#[command(name = "gkz", version, about = "Feynman integrals as GKZ canonical series")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Symanzik polynomials U, F and g = U + F.
    Symanzik(RunArgs),
    /// Toric ideal, initial ideal, standard pairs and fake exponents.
    Gkz(RunArgs),
    /// Canonical series and their hypergeometric forms.
    Series(RunArgs),
    /// Integration constants and the numeric value when kinematics are given.
    Solve(RunArgs),
    /// Solve and compare against the quadrature oracle.
    Verify(RunArgs),
    /// List the built-in examples.
    Fixtures {
        #[arg(long)]
        json: bool,
    },
}

#[derive(Args)]
struct RunArgs {
    /// Problem specification (JSON); `-` reads stdin.
    #[arg(long, conflicts_with = "fixture")]
    spec: Option<String>,
    /// Built-in example by name.
    #[arg(long)]
    fixture: Option<String>,
    /// Weight vector, comma separated.
    #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
    weight: Option<Vec<i64>>,
    /// Series truncation order.
    #[arg(long)]
    order: Option<u32>,
    /// Target relative tolerance of the quadrature oracle.
    #[arg(long)]
    tolerance: Option<f64>,
    #[arg(long)]
    json: bool,
}

fn load(args: &RunArgs) -> Result<ProblemSpec, String> {
    let mut spec = match (&args.spec, &args.fixture) {
        (Some(path), _) => {
            let text = if path == "-" {
                let mut s = String::new();
                std::io::stdin().read_to_string(&mut s).map_err(|e| e.to_string())?;
                s
            } else {
                std::fs::read_to_string(path).map_err(|e| format!("{path}: {e}"))?
            };
            ProblemSpec::from_json(&text).map_err(|e| e.to_string())?
        }
        (None, Some(name)) => fixture(name).ok_or_else(|| format!("unknown fixture `{name}`"))?,
        (None, None) => return Err("pass --spec <file> or --fixture <name>".into()),
    };
    if let Some(w) = &args.weight {
        spec.weight = Some(w.clone());
    }
    if let Some(n) = args.order {
        spec.truncation_order = n;
    }
    if let Some(t) = args.tolerance {
        spec.tolerance = Some(t);
    }
    Ok(spec)
}

fn execute(args: &RunArgs, stage: Stage) -> ExitCode {
    let spec = match load(args) {
        Ok(s) => s,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(exit_code_for("InvalidSpec") as u8);
        }
    };
    let report = run_until(&spec, stage);
    if args.json {
        println!("{}", serde_json::to_string_pretty(&report).expect("report serialises"));
    } else {
        print!("{}", render::text(&report, stage));
    }
    if let Some(e) = &report.error {
        eprintln!("error in {}: {}", e.stage, e.message);
    }
    ExitCode::from(report.exit_code() as u8)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match &cli.command {
        Command::Symanzik(a) => execute(a, Stage::Symanzik),
        Command::Gkz(a) => execute(a, Stage::Gkz),
        Command::Series(a) => execute(a, Stage::Series),
        Command::Solve(a) => execute(a, Stage::Solve),
        Command::Verify(a) => execute(a, Stage::Verify),
        Command::Fixtures { json } => {
            let all = fixtures();
            if *json {
                let map: serde_json::Map<String, serde_json::Value> = all
                    .into_iter()
                    .map(|(n, s)| (n, serde_json::to_value(s).expect("spec serialises")))
                    .collect();
                println!("{}", serde_json::to_string_pretty(&map).expect("fixtures serialise"));
            } else {
                for (name, s) in all {
                    let w = s.weight.unwrap_or_default();
                    println!("{name:<16} w = ({})", w.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(","));
                }
            }
            ExitCode::SUCCESS
        }
    }
}
