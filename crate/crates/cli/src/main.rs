use std::io::{Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use hypstokes::Complex64;
use hypstokes_cli::commands::{self, IntegralKind, IntegralRequest, Options, VerifyRequest};
use hypstokes_cli::{ArrangementSpec, CliError};
use serde::Serialize;

/// Stokes matrices of hypergeometric integrals over generic hyperplane arrangements.
#[derive(Parser)]
#[command(name = "hypstokes", version)]
struct Cli {
    /// Seed for sampled inputs (demo weights).
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Relative tolerance of every quadrature.
    #[arg(long, global = true)]
    quad_tol: Option<f64>,
    /// Node budget of each one-dimensional quadrature.
    #[arg(long, global = true)]
    max_nodes: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Vertices, chambers, D+ and pair classification.
    Analyze {
        /// Arrangement document; standard input when absent or "-".
        input: Option<PathBuf>,
    },
    /// Combinatorics plus the ODE and both Stokes matrices.
    Stokes { input: Option<PathBuf> },
    /// One chamber or cone integral with an error estimate.
    Integrate {
        input: Option<PathBuf>,
        #[arg(long, value_enum)]
        kind: Kind,
        /// Hyperplanes (1-based) of the vertex X; for chambers, the chamber D_X.
        #[arg(long, value_delimiter = ',', required = true)]
        target: Vec<usize>,
        /// Hyperplanes of the vertex X' whose form is integrated [default: target].
        #[arg(long, value_delimiter = ',')]
        form: Option<Vec<usize>>,
        #[arg(long, allow_hyphen_values = true)]
        lambda: f64,
        #[arg(long, allow_hyphen_values = true, default_value_t = 0.0)]
        lambda_im: f64,
    },
    /// Numerical verification; exits with status 1 if any check fails.
    Verify {
        input: Option<PathBuf>,
        /// Comma-separated check names or "all".
        #[arg(long, value_delimiter = ',', default_value = "all")]
        checks: Vec<String>,
        /// Sample points of λ.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        lambda: Vec<f64>,
        /// Residual tolerance of the identity checks.
        #[arg(long)]
        tol: Option<f64>,
    },
    /// Built-in examples compared with their closed forms.
    Demo {
        #[command(subcommand)]
        example: Demo,
    },
}

#[derive(Subcommand)]
enum Demo {
    /// Points 0, 1, ..., n-1 on a line.
    Example1 {
        #[arg(long)]
        n: usize,
        #[arg(long, value_delimiter = ',')]
        weights: Option<Vec<f64>>,
    },
    /// The triangle x = 0, y = 0, x + y = 1 with f0 = ax + by.
    Example2 {
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: String,
        #[arg(long, value_delimiter = ',')]
        weights: Option<Vec<f64>>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    #[value(name = "chamber")]
    Chamber,
    #[value(name = "cone_plus")]
    ConePlus,
    #[value(name = "cone_minus")]
    ConeMinus,
}

fn read_spec(input: &Option<PathBuf>) -> Result<ArrangementSpec, CliError> {
    let text = match input {
        Some(p) if p.as_os_str() != "-" => std::fs::read_to_string(p)
            .map_err(|e| CliError::Request(format!("cannot read {}: {e}", p.display())))?,
        _ => {
            let mut s = String::new();
            std::io::stdin()
                .read_to_string(&mut s)
                .map_err(|e| CliError::Request(format!("cannot read standard input: {e}")))?;
            s
        }
    };
    ArrangementSpec::from_json(&text)
}

fn json<T: Serialize>(doc: &T) -> String {
    serde_json::to_string_pretty(doc).expect("documents serialize")
}

fn emit(doc: &str) {
    let mut out = std::io::stdout().lock();
    let _ = writeln!(out, "{doc}").and_then(|_| out.flush());
}

/// Output document and whether it reports success.
fn run(cli: Cli) -> Result<(String, bool), CliError> {
    let opts = Options { seed: cli.seed, quad_tol: cli.quad_tol, max_nodes: cli.max_nodes };
    Ok(match cli.command {
        Command::Analyze { input } => (json(&commands::analyze(&read_spec(&input)?)?), true),
        Command::Stokes { input } => (json(&commands::stokes(&read_spec(&input)?)?), true),
        Command::Integrate { input, kind, target, form, lambda, lambda_im } => {
            let kind = match kind {
                Kind::Chamber => IntegralKind::Chamber,
                Kind::ConePlus => IntegralKind::ConePlus,
                Kind::ConeMinus => IntegralKind::ConeMinus,
            };
            let req = IntegralRequest { kind, target, form, lambda: Complex64::new(lambda, lambda_im) };
            let record = commands::integrate(&read_spec(&input)?, &req, &opts)?;
            (json(&record), record.converged)
        }
        Command::Verify { input, checks, lambda, tol } => {
            let bundle = commands::verify(&read_spec(&input)?, &VerifyRequest { checks, lambdas: lambda, tol }, &opts)?;
            let ok = bundle.all_checks_pass();
            (json(&bundle), ok)
        }
        Command::Demo { example } => {
            let bundle = match example {
                Demo::Example1 { n, weights } => commands::demo_example1(n, weights, &opts)?,
                Demo::Example2 { a, b, weights } => commands::demo_example2(&a, &b, weights, &opts)?,
            };
            (json(&bundle), true)
        }
    })
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if e.use_stderr() => {
            let _ = e.print();
            emit(&json(&CliError::Request(e.kind().to_string()).document()));
            return ExitCode::from(2);
        }
        Err(e) => e.exit(),
    };
    match run(cli) {
        Ok((doc, ok)) => {
            emit(&doc);
            ExitCode::from(if ok { 0 } else { 1 })
        }
        Err(e) => {
            log::error!("{e}");
            emit(&json(&e.document()));
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
