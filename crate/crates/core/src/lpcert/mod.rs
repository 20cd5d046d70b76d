//! The slack program on `t(n,n)`.
//!
//! If `t(n,n)` reached `2^(n-1) max|A|`, the slacks `delta_0 .. delta_(n-2)`
//! with `t(n,n) = 2^(n-1) - sum(delta)` would have to satisfy the linear
//! constraints built here. Minimizing `sum(delta)` gives 0 for `n <= 5` and a
//! strictly positive value for `n >= 6`, so the bound is not attained there.

pub mod simplex;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use simplex::{LinearProgram, LpStatus, Row};

/// Row feasibility tolerance for reported solutions.
pub const FEAS_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RowFamily {
    /// `0 <= delta_j <= 2^(j+1)`.
    Box,
    /// `0 <= delta_(q-2) - sum_(j<=q-3) delta_j <= 2`.
    Chain,
    /// `2^q - 14 <= 7 sum_(j<=q-4) delta_j - delta_(q-3) + delta_(q-2) <= 2^q`.
    Power,
    /// `-6 <= 3 sum_(j<=n-5) delta_j - delta_(n-4) + delta_(n-3) - delta_(n-2) <= 0`.
    Tail,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConstraintRow {
    pub family: RowFamily,
    /// `j` for box rows, `q` for chain and power rows, `n` for the tail row.
    pub index: usize,
    pub coeffs: Vec<f64>,
    pub lower: f64,
    pub upper: f64,
}

impl ConstraintRow {
    pub fn value(&self, x: &[f64]) -> f64 {
        self.coeffs.iter().zip(x).map(|(a, b)| a * b).sum()
    }

    pub fn satisfied(&self, x: &[f64], tol: f64) -> bool {
        let v = self.value(x);
        v >= self.lower - tol && v <= self.upper + tol
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DeltaProgram {
    pub n: usize,
    pub num_vars: usize,
    pub objective: Vec<f64>,
    pub constraints: Vec<ConstraintRow>,
}

impl DeltaProgram {
    pub fn rows_of(&self, family: RowFamily) -> impl Iterator<Item = &ConstraintRow> {
        self.constraints.iter().filter(move |r| r.family == family)
    }

    pub fn is_feasible(&self, x: &[f64], tol: f64) -> bool {
        x.len() == self.num_vars && self.constraints.iter().all(|r| r.satisfied(x, tol))
    }

    fn as_linear_program(&self) -> LinearProgram {
        LinearProgram {
            objective: self.objective.clone(),
            rows: self
                .constraints
                .iter()
                .map(|r| Row {
                    coeffs: r.coeffs.clone(),
                    lower: r.lower,
                    upper: r.upper,
                })
                .collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LpSolution {
    pub status: LpStatus,
    pub objective_value: f64,
    pub point: Vec<f64>,
    pub iterations: usize,
}

fn pow2(e: usize) -> f64 {
    2.0_f64.powi(e as i32)
}

/// Builds the slack program for an `n x n` matrix (`n >= 3`).
pub fn build_program(n: usize) -> Result<DeltaProgram> {
    if n < 3 {
        return Err(Error::Domain(format!(
            "slack program needs n >= 3, got {n}"
        )));
    }
    let m = n - 1;
    let mut constraints = Vec::new();
    let mut row = |family, index, fill: &dyn Fn(&mut [f64]), lower, upper| {
        let mut coeffs = vec![0.0; m];
        fill(&mut coeffs);
        constraints.push(ConstraintRow {
            family,
            index,
            coeffs,
            lower,
            upper,
        });
    };

    for j in 0..m {
        row(RowFamily::Box, j, &|c| c[j] = 1.0, 0.0, pow2(j + 1));
    }
    for q in 3..n {
        row(
            RowFamily::Chain,
            q,
            &|c| {
                c[..q - 2].iter_mut().for_each(|v| *v = -1.0);
                c[q - 2] = 1.0;
            },
            0.0,
            2.0,
        );
    }
    for q in 3..n.saturating_sub(1) {
        row(
            RowFamily::Power,
            q,
            &|c| {
                c[..q - 3].iter_mut().for_each(|v| *v = 7.0);
                c[q - 3] -= 1.0;
                c[q - 2] += 1.0;
            },
            pow2(q) - 14.0,
            pow2(q),
        );
    }
    if n >= 4 {
        row(
            RowFamily::Tail,
            n,
            &|c| {
                c[..n - 4].iter_mut().for_each(|v| *v = 3.0);
                c[n - 4] -= 1.0;
                c[n - 3] += 1.0;
                c[n - 2] -= 1.0;
            },
            -6.0,
            0.0,
        );
    }

    Ok(DeltaProgram {
        n,
        num_vars: m,
        objective: vec![1.0; m],
        constraints,
    })
}

pub fn solve_lp(prog: &DeltaProgram) -> LpSolution {
    let r = prog.as_linear_program().solve();
    LpSolution {
        status: r.status,
        objective_value: r.objective,
        point: r.point,
        iterations: r.iterations,
    }
}

/// Minimum total slack; 0 for `n <= 5`, positive for `n >= 6`.
pub fn min_delta(n: usize) -> Result<f64> {
    let sol = solve_lp(&build_program(n)?);
    match sol.status {
        LpStatus::Optimal => Ok(sol.objective_value.max(0.0)),
        LpStatus::Infeasible => Err(Error::Infeasible),
        LpStatus::Unbounded => Err(Error::Unbounded),
    }
}

/// `2^(n-1) - min_delta(n)`: the largest `t(n,n) / max|A|` the program admits.
pub fn tnn_upper_bound(n: usize) -> Result<f64> {
    Ok(pow2(n - 1) - min_delta(n)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn n3_has_only_box_rows() {
        let p = build_program(3).unwrap();
        assert_eq!(p.num_vars, 2);
        assert!(p.constraints.iter().all(|r| r.family == RowFamily::Box));
        assert_eq!(p.constraints.len(), 2);
        assert_eq!(p.constraints[1].upper, 4.0);
    }

    #[test]
    fn family_index_ranges() {
        for n in 3..12 {
            let p = build_program(n).unwrap();
            assert_eq!(p.rows_of(RowFamily::Box).count(), n - 1);
            assert_eq!(p.rows_of(RowFamily::Chain).count(), n.saturating_sub(3));
            assert_eq!(p.rows_of(RowFamily::Power).count(), n.saturating_sub(4));
            assert_eq!(p.rows_of(RowFamily::Tail).count(), usize::from(n >= 4));
        }
        assert!(build_program(2).is_err());
    }

    #[test]
    fn power_rows_match_closed_form() {
        let p = build_program(6).unwrap();
        let q4 = p.rows_of(RowFamily::Power).find(|r| r.index == 4).unwrap();
        assert_eq!(q4.coeffs, vec![7.0, -1.0, 1.0, 0.0, 0.0]);
        assert_eq!((q4.lower, q4.upper), (2.0, 16.0));

        let p = build_program(5).unwrap();
        let rows: Vec<_> = p.rows_of(RowFamily::Power).collect();
        assert_eq!(rows.len(), 1);
        assert_eq!(rows[0].coeffs, vec![-1.0, 1.0, 0.0, 0.0]);
        assert_eq!((rows[0].lower, rows[0].upper), (-6.0, 8.0));
    }

    #[test]
    fn tail_row_for_n4_and_n7() {
        let p = build_program(4).unwrap();
        let tail = p.rows_of(RowFamily::Tail).next().unwrap();
        assert_eq!(tail.coeffs, vec![-1.0, 1.0, -1.0]);
        let p = build_program(7).unwrap();
        let tail = p.rows_of(RowFamily::Tail).next().unwrap();
        assert_eq!(tail.coeffs, vec![3.0, 3.0, 3.0, -1.0, 1.0, -1.0]);
        assert_eq!((tail.lower, tail.upper), (-6.0, 0.0));
    }

    #[test]
    fn zero_is_feasible_exactly_up_to_five() {
        for n in 3..=12 {
            let p = build_program(n).unwrap();
            let zero = vec![0.0; p.num_vars];
            assert_eq!(p.is_feasible(&zero, 0.0), n <= 5, "n = {n}");
        }
    }

    #[test]
    fn dichotomy() {
        for n in 3..=5 {
            let sol = solve_lp(&build_program(n).unwrap());
            assert_eq!(sol.status, LpStatus::Optimal);
            assert!(sol.objective_value.abs() <= 1e-9);
            assert!(sol.point.iter().all(|v| v.abs() <= 1e-9));
        }
        for n in 6..=10 {
            assert!(min_delta(n).unwrap() > 1e-9, "n = {n}");
        }
        assert_eq!(tnn_upper_bound(4).unwrap(), 8.0);
        assert_eq!(tnn_upper_bound(5).unwrap(), 16.0);
        assert!(tnn_upper_bound(7).unwrap() < 64.0);
    }

    #[test]
    fn solutions_are_feasible() {
        for n in 3..=16 {
            let p = build_program(n).unwrap();
            let sol = solve_lp(&p);
            assert_eq!(sol.status, LpStatus::Optimal);
            assert!(p.is_feasible(&sol.point, FEAS_TOL), "n = {n}");
            let sum: f64 = sol.point.iter().sum();
            assert!((sum - sol.objective_value).abs() <= 1e-9);
            assert!(sol.objective_value >= -1e-12);
        }
    }
}
