//! Subcommand implementations behind the `aasen` binary.
//!
//! Each command returns a [`Report`] plus the process exit code; argument
//! parsing and printing live in the binary.

use std::path::{Path, PathBuf};

use crate::error::Error;
use crate::extremal::{extremal_example, verify_example};
use crate::factor::{factorize, TieRule};
use crate::growth::{
    bound_table, growth_factor, lemma_certificate, reference_growth_targets, reference_target,
};
use crate::io::{read_matrix, write_matrix};
use crate::lpcert::{build_program, simplex::LpStatus, solve_lp};
use crate::report::{
    Command, ExampleOutputs, Inputs, LpOutputs, Outputs, Report, SearchOutputs, Status, Tridiagonal,
};
use crate::search::{maximize_growth, SearchConfig};

pub const EXIT_OK: u8 = 0;
pub const EXIT_USAGE: u8 = 1;
pub const EXIT_DOMAIN: u8 = 2;
pub const EXIT_INVARIANT: u8 = 3;

/// Slack for comparing growth values against `2^(n-1)`.
const BOUND_SLACK: f64 = 1e-9;

#[derive(Debug, thiserror::Error)]
#[error("{message}")]
pub struct CliError {
    pub code: u8,
    pub message: String,
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        let code = match &e {
            Error::Parse { .. }
            | Error::Asymmetric { .. }
            | Error::NonFinite { .. }
            | Error::Io { .. }
            | Error::DimensionMismatch { .. }
            | Error::EmptyMatrix
            | Error::InvalidPermutation { .. } => EXIT_USAGE,
            Error::Domain(_)
            | Error::Infeasible
            | Error::Unbounded
            | Error::UndefinedGrowth
            | Error::Singular { .. } => EXIT_DOMAIN,
            Error::InvalidFactor(_) => EXIT_INVARIANT,
        };
        Self {
            code,
            message: e.to_string(),
        }
    }
}

#[derive(Debug, Clone)]
pub struct Outcome {
    pub report: Report,
    pub exit_code: u8,
}

impl Outcome {
    fn ok(report: Report) -> Self {
        Self {
            report,
            exit_code: EXIT_OK,
        }
    }

    fn violation(mut report: Report, message: String) -> Self {
        report.status = Status::InvariantViolation;
        report.message = Some(message);
        Self {
            report,
            exit_code: EXIT_INVARIANT,
        }
    }
}

type CliResult = Result<Outcome, CliError>;

fn file_inputs(path: &Path, n: usize, rule: TieRule) -> Inputs {
    Inputs {
        path: Some(path.display().to_string()),
        n: Some(n),
        rule: Some(rule),
        ..Default::default()
    }
}

pub fn factor(input: &Path, rule: TieRule) -> CliResult {
    let a = read_matrix(input)?;
    let f = factorize(&a, rule)?;
    let outputs = Outputs {
        permutation: Some(f.p.as_slice().to_vec()),
        lower: Some(f.l.strict_rows()),
        tridiagonal: Some(Tridiagonal {
            diag: f.t.diag().to_vec(),
            offdiag: f.t.offdiag().to_vec(),
        }),
        residual: Some(f.residual(&a)?),
        growth: growth_factor(&a, &f).ok(),
        bounds: bound_table(a.dim()).ok(),
        ..Default::default()
    };
    Ok(Outcome::ok(Report::new(
        Command::Factor,
        file_inputs(input, a.dim(), rule),
        outputs,
    )))
}

pub fn growth(input: &Path, rule: TieRule) -> CliResult {
    let a = read_matrix(input)?;
    let f = factorize(&a, rule)?;
    let rho = growth_factor(&a, &f)?;
    let n = a.dim();
    let bounds = bound_table(n.max(2))?;
    let outputs = Outputs {
        growth: Some(rho),
        bounds: Some(bounds),
        reference_targets: Some(reference_growth_targets()),
        ..Default::default()
    };
    let report = Report::new(Command::Growth, file_inputs(input, n, rule), outputs);
    if rho > bounds.new_bound + BOUND_SLACK {
        return Ok(Outcome::violation(
            report,
            format!("growth {rho} exceeds 2^(n-1) = {}", bounds.new_bound),
        ));
    }
    Ok(Outcome::ok(report))
}

pub fn certify(input: &Path, rule: TieRule) -> CliResult {
    let a = read_matrix(input)?;
    let f = factorize(&a, rule)?;
    let cert = lemma_certificate(&a, &f)?;
    let failed: Vec<String> = cert.failures().map(|r| r.label.clone()).collect();
    let outputs = Outputs {
        growth: Some(cert.rho),
        residual: Some(f.residual(&a)?),
        certificate: Some(cert),
        ..Default::default()
    };
    let report = Report::new(Command::Certify, file_inputs(input, a.dim(), rule), outputs);
    if failed.is_empty() {
        Ok(Outcome::ok(report))
    } else {
        Ok(Outcome::violation(
            report,
            format!("entrywise bounds violated: {}", failed.join(", ")),
        ))
    }
}

pub fn lp(n: usize) -> CliResult {
    let program = build_program(n)?;
    let sol = solve_lp(&program);
    if sol.status != LpStatus::Optimal {
        return Err(CliError::from(Error::Infeasible));
    }
    let objective = sol.objective_value.max(0.0);
    let tnn = 2.0_f64.powi(n as i32 - 1) - objective;
    let outputs = Outputs {
        bounds: Some(bound_table(n)?),
        lp: Some(LpOutputs {
            program,
            status: sol.status,
            objective,
            point: sol.point,
            iterations: sol.iterations,
            tnn_upper_bound: tnn,
            bound_not_tight: objective > crate::lpcert::FEAS_TOL,
        }),
        ..Default::default()
    };
    let inputs = Inputs {
        n: Some(n),
        ..Default::default()
    };
    Ok(Outcome::ok(Report::new(Command::Lp, inputs, outputs)))
}

/// Writes the example matrix to `out_dir/extremal-n{n}.txt` when a
/// directory is given.
pub fn examples(n: usize, delta: f64, rule: TieRule, out_dir: Option<&Path>) -> CliResult {
    let ex = extremal_example(n, delta)?;
    let rep = verify_example(&ex, rule)?;
    let matrix_file = match out_dir {
        Some(dir) => {
            std::fs::create_dir_all(dir).map_err(|e| crate::io::io_err(dir, e))?;
            let path: PathBuf = dir.join(format!("extremal-n{n}.txt"));
            write_matrix(&path, &ex.matrix)?;
            Some(path.display().to_string())
        }
        None => None,
    };
    let pass = rep.reference_certificate.all_pass && rep.recomputed_certificate.all_pass;
    let outputs = Outputs {
        growth: Some(rep.recomputed_growth),
        residual: Some(rep.recomputed_residual),
        bounds: Some(bound_table(n)?),
        permutation: Some(rep.recomputed.p.as_slice().to_vec()),
        example: Some(ExampleOutputs {
            expected_growth: rep.expected_growth,
            reference_residual: rep.reference_residual,
            reference_growth: rep.reference_growth,
            reference_all_pass: rep.reference_certificate.all_pass,
            recomputed_residual: rep.recomputed_residual,
            recomputed_growth: rep.recomputed_growth,
            recomputed_all_pass: rep.recomputed_certificate.all_pass,
            matrix_file,
        }),
        ..Default::default()
    };
    let inputs = Inputs {
        n: Some(n),
        delta: Some(delta),
        rule: Some(rule),
        ..Default::default()
    };
    let report = Report::new(Command::Examples, inputs, outputs);
    if pass {
        Ok(Outcome::ok(report))
    } else {
        Ok(Outcome::violation(
            report,
            "entrywise bound certificate failed".into(),
        ))
    }
}

#[derive(Debug, Clone)]
pub struct SearchArgs {
    pub n: usize,
    pub seed: u64,
    pub restarts: usize,
    pub max_iters: usize,
    pub warm: Vec<PathBuf>,
}

pub fn search(args: &SearchArgs) -> CliResult {
    let mut config = SearchConfig::new(args.n);
    config.seed = args.seed;
    config.restarts = args.restarts;
    config.max_iters = args.max_iters;
    for path in &args.warm {
        config.warm_starts.push(read_matrix(path)?);
    }
    let out = maximize_growth(&config)?;
    let bound = 2.0_f64.powi(args.n as i32 - 1);
    let outputs = Outputs {
        growth: Some(out.best_growth),
        bounds: Some(bound_table(args.n)?),
        search: Some(SearchOutputs {
            best_growth: out.best_growth,
            bound,
            gap: bound - out.best_growth,
            evaluations: out.evaluations,
            best_restart: out.best_restart,
            per_restart_best: out.per_restart_best,
            best_matrix: out.best_matrix.to_rows(),
            reference_target: reference_target(args.n),
        }),
        ..Default::default()
    };
    let inputs = Inputs {
        n: Some(args.n),
        seed: Some(args.seed),
        restarts: Some(args.restarts),
        rule: Some(TieRule::First),
        warm: args.warm.iter().map(|p| p.display().to_string()).collect(),
        ..Default::default()
    };
    let report = Report::new(Command::Search, inputs, outputs);
    if out.best_growth > bound + BOUND_SLACK {
        return Ok(Outcome::violation(
            report,
            format!(
                "search found growth {} above 2^(n-1) = {bound}",
                out.best_growth
            ),
        ));
    }
    Ok(Outcome::ok(report))
}
