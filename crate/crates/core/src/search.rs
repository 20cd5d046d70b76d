//! Coordinate pattern search for symmetric matrices with large Aasen growth.
//!
//! The free parameters are the `n(n+1)/2` lower-triangle entries, each kept
//! in `[-1, 1]`. Every sweep probes `+-step` along each coordinate and moves
//! to the best strictly improving probe; a sweep without improvement halves
//! (by default) the step.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::factor::{factorize, TieRule};
use crate::growth::growth_factor;
use crate::matrix::SymmetricMatrix;

#[derive(Debug, Clone, PartialEq)]
pub struct SearchConfig {
    pub n: usize,
    pub restarts: usize,
    pub max_iters: usize,
    pub initial_step: f64,
    pub shrink: f64,
    pub min_step: f64,
    pub seed: u64,
    pub warm_starts: Vec<SymmetricMatrix>,
}

impl SearchConfig {
    pub fn new(n: usize) -> Self {
        Self {
            n,
            restarts: 64,
            max_iters: 2000,
            initial_step: 0.25,
            shrink: 0.5,
            min_step: 1e-6,
            seed: 0,
            warm_starts: Vec::new(),
        }
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::Domain(msg));
        if self.n < 3 {
            return bad(format!("search needs n >= 3, got {}", self.n));
        }
        if self.restarts == 0 {
            return bad("restarts must be at least 1".into());
        }
        if !(self.min_step > 0.0 && self.min_step < self.initial_step) {
            return bad("need 0 < min_step < initial_step".into());
        }
        if !(self.shrink > 0.0 && self.shrink < 1.0) {
            return bad("shrink must lie in (0, 1)".into());
        }
        for (k, w) in self.warm_starts.iter().enumerate() {
            if w.dim() != self.n {
                return bad(format!(
                    "warm start {k} has dimension {}, expected {}",
                    w.dim(),
                    self.n
                ));
            }
            if w.max_abs() > 1.0 || w.first_non_finite().is_some() {
                return bad(format!("warm start {k} has entries outside [-1, 1]"));
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RestartTrace {
    pub start_growth: f64,
    pub best_growth: f64,
    /// Objective after every accepted move (starting with the initial value).
    pub accepted: Vec<f64>,
    pub evaluations: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SearchOutcome {
    pub best_matrix: SymmetricMatrix,
    pub best_growth: f64,
    pub best_restart: usize,
    pub evaluations: usize,
    pub per_restart_best: Vec<f64>,
    pub traces: Vec<RestartTrace>,
}

/// Growth of `m` under [`TieRule::First`]; the zero matrix scores 0.
pub fn evaluate_candidate(m: &SymmetricMatrix) -> f64 {
    match factorize(m, TieRule::First) {
        Ok(f) => growth_factor(m, &f).unwrap_or(0.0),
        Err(_) => 0.0,
    }
}

/// Runs `max(restarts, warm_starts.len())` independent restarts: the warm
/// starts first, then seeded uniform random matrices. Restarts run in
/// parallel; the result is the best restart, ties going to the lowest index,
/// so the outcome does not depend on scheduling.
pub fn maximize_growth(config: &SearchConfig) -> Result<SearchOutcome> {
    config.validate()?;
    let runs = config.restarts.max(config.warm_starts.len());
    let results: Vec<(SymmetricMatrix, RestartTrace)> = (0..runs)
        .into_par_iter()
        .map(|k| {
            let start = match config.warm_starts.get(k) {
                Some(w) => w.clone(),
                None => random_start(config.n, config.seed, k as u64),
            };
            run_restart(config, start)
        })
        .collect();

    let mut best = 0;
    for (k, (_, tr)) in results.iter().enumerate() {
        if tr.best_growth > results[best].1.best_growth {
            best = k;
        }
    }
    let evaluations = results.iter().map(|(_, t)| t.evaluations).sum();
    let per_restart_best = results.iter().map(|(_, t)| t.best_growth).collect();
    let best_growth = results[best].1.best_growth;
    let best_matrix = results[best].0.clone();
    Ok(SearchOutcome {
        best_matrix,
        best_growth,
        best_restart: best,
        evaluations,
        per_restart_best,
        traces: results.into_iter().map(|(_, t)| t).collect(),
    })
}

fn random_start(n: usize, seed: u64, restart: u64) -> SymmetricMatrix {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(restart);
    SymmetricMatrix::from_lower_fn(n, |_, _| rng.random_range(-1.0..=1.0))
}

fn to_matrix(n: usize, x: &[f64]) -> SymmetricMatrix {
    let mut k = 0;
    SymmetricMatrix::from_lower_fn(n, |_, _| {
        k += 1;
        x[k - 1]
    })
}

fn run_restart(config: &SearchConfig, start: SymmetricMatrix) -> (SymmetricMatrix, RestartTrace) {
    let n = config.n;
    let mut x: Vec<f64> = (0..n)
        .flat_map(|i| (0..=i).map(move |j| (i, j)))
        .map(|(i, j)| start.get(i, j))
        .collect();
    let mut fx = evaluate_candidate(&start);
    let start_growth = fx;
    let mut accepted = vec![fx];
    let mut evaluations = 1;
    let mut step = config.initial_step;

    for _ in 0..config.max_iters {
        if step < config.min_step {
            break;
        }
        let mut best: Option<(usize, f64, f64)> = None;
        for k in 0..x.len() {
            for dir in [1.0, -1.0] {
                let trial = (x[k] + dir * step).clamp(-1.0, 1.0);
                if trial == x[k] {
                    continue;
                }
                let old = x[k];
                x[k] = trial;
                let f = evaluate_candidate(&to_matrix(n, &x));
                x[k] = old;
                evaluations += 1;
                if f > fx && best.is_none_or(|(_, _, bf)| f > bf) {
                    best = Some((k, trial, f));
                }
            }
        }
        match best {
            Some((k, v, f)) => {
                x[k] = v;
                fx = f;
                accepted.push(f);
            }
            None => step *= config.shrink,
        }
    }

    (
        to_matrix(n, &x),
        RestartTrace {
            start_growth,
            best_growth: fx,
            accepted,
            evaluations,
        },
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn evaluate_simple_candidates() {
        assert_eq!(evaluate_candidate(&SymmetricMatrix::identity(4)), 1.0);
        assert_eq!(evaluate_candidate(&SymmetricMatrix::zeros(4)), 0.0);
    }

    #[test]
    fn config_validation() {
        assert!(SearchConfig::new(3).validate().is_ok());
        assert!(SearchConfig::new(2).validate().is_err());
        let mut c = SearchConfig::new(4);
        c.restarts = 0;
        assert!(c.validate().is_err());
        let mut c = SearchConfig::new(4);
        c.shrink = 1.0;
        assert!(c.validate().is_err());
        let mut c = SearchConfig::new(4);
        c.min_step = 1.0;
        assert!(c.validate().is_err());
        let mut c = SearchConfig::new(4);
        c.warm_starts = vec![SymmetricMatrix::identity(3)];
        assert!(c.validate().is_err());
        let mut c = SearchConfig::new(3);
        c.warm_starts = vec![SymmetricMatrix::identity(3).scaled(2.0)];
        assert!(c.validate().is_err());
    }

    #[test]
    fn small_search_is_monotone_and_deterministic() {
        let mut c = SearchConfig::new(3);
        c.restarts = 4;
        c.max_iters = 200;
        let a = maximize_growth(&c).unwrap();
        let b = maximize_growth(&c).unwrap();
        assert_eq!(a, b);
        for tr in &a.traces {
            assert!(tr.accepted.windows(2).all(|w| w[1] > w[0]));
        }
        assert!(a.best_matrix.max_abs() <= 1.0);
        assert_eq!(a.best_growth, evaluate_candidate(&a.best_matrix));
        assert!(a.best_growth <= 4.0 + 1e-9);
    }

    #[test]
    fn warm_starts_all_run() {
        let mut c = SearchConfig::new(3);
        c.restarts = 1;
        c.max_iters = 5;
        c.warm_starts = vec![
            SymmetricMatrix::identity(3),
            SymmetricMatrix::identity(3).scaled(-1.0),
        ];
        let out = maximize_growth(&c).unwrap();
        assert_eq!(out.traces.len(), 2);
        assert_eq!(out.traces[0].start_growth, 1.0);
    }
}
