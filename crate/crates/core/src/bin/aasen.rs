use std::path::PathBuf;
use std::process::ExitCode;

use aasen::cli::{self, CliError, Outcome, SearchArgs, EXIT_OK, EXIT_USAGE};
use aasen::TieRule;
use clap::{Parser, Subcommand, ValueEnum};

#[derive(Parser)]
#[command(
    name = "aasen",
    version,
    about = "Aasen LTL^T factorization and growth-factor tools"
)]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Clone, Copy, ValueEnum)]
enum Rule {
    First,
    Lowest,
}

impl From<Rule> for TieRule {
    fn from(r: Rule) -> Self {
        match r {
            Rule::First => TieRule::First,
            Rule::Lowest => TieRule::Lowest,
        }
    }
}

#[derive(Subcommand)]
enum Cmd {
    /// Factor a matrix file and report P, L, T and the residual.
    Factor {
        input: PathBuf,
        #[arg(long, value_enum, default_value = "first")]
        rule: Rule,
        /// Write the report here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Report the growth factor against the known bounds.
    Growth {
        input: PathBuf,
        #[arg(long, value_enum, default_value = "first")]
        rule: Rule,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check every entrywise bound on T.
    Certify {
        input: PathBuf,
        #[arg(long, value_enum, default_value = "first")]
        rule: Rule,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Solve the slack linear program for dimension n.
    Lp {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Generate an extremal example matrix and verify it.
    Examples {
        #[arg(long)]
        n: usize,
        #[arg(long, allow_negative_numbers = true)]
        delta: f64,
        #[arg(long, value_enum, default_value = "first")]
        rule: Rule,
        /// Directory for the matrix file and report.json.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Pattern search for matrices with large growth.
    Search {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 64)]
        restarts: usize,
        #[arg(long, default_value_t = 2000)]
        max_iters: usize,
        /// Warm-start matrix file; may be repeated.
        #[arg(long)]
        warm: Vec<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn emit(outcome: Outcome, out: Option<PathBuf>) -> Result<u8, CliError> {
    let json = outcome.report.to_json();
    match out {
        Some(path) => std::fs::write(&path, &json).map_err(|e| CliError {
            code: EXIT_USAGE,
            message: format!("{}: {e}", path.display()),
        })?,
        None => print!("{json}"),
    }
    if let Some(msg) = &outcome.report.message {
        eprintln!("error: {msg}");
    }
    Ok(outcome.exit_code)
}

fn run(cli: Cli) -> Result<u8, CliError> {
    match cli.command {
        Cmd::Factor { input, rule, out } => emit(cli::factor(&input, rule.into())?, out),
        Cmd::Growth { input, rule, out } => emit(cli::growth(&input, rule.into())?, out),
        Cmd::Certify { input, rule, out } => emit(cli::certify(&input, rule.into())?, out),
        Cmd::Lp { n, out } => emit(cli::lp(n)?, out),
        Cmd::Examples {
            n,
            delta,
            rule,
            out,
        } => {
            let outcome = cli::examples(n, delta, rule.into(), out.as_deref())?;
            let report_path = out.map(|dir| dir.join("report.json"));
            if report_path.is_some() {
                print!("{}", outcome.report.to_json());
            }
            emit(outcome, report_path)
        }
        Cmd::Search {
            n,
            seed,
            restarts,
            max_iters,
            warm,
            out,
        } => emit(
            cli::search(&SearchArgs {
                n,
                seed,
                restarts,
                max_iters,
                warm,
            })?,
            out,
        ),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_USAGE } else { EXIT_OK });
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {}", e.message);
            ExitCode::from(e.code)
        }
    }
}
