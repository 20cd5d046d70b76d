//! Dense two-phase tableau simplex with Bland's rule.
//!
//! Solves `min c.x` subject to `lower_i <= a_i.x <= upper_i` and `x >= 0`.
//! Either bound of a row may be infinite; two-sided rows are split into two
//! one-sided inequalities.

use serde::{Deserialize, Serialize};

/// Smallest magnitude accepted as a pivot element or a negative reduced cost.
const PIVOT_EPS: f64 = 1e-11;
/// Phase-one objective above which the program is declared infeasible.
const FEAS_TOL: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq)]
pub struct Row {
    pub coeffs: Vec<f64>,
    pub lower: f64,
    pub upper: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct LinearProgram {
    pub objective: Vec<f64>,
    pub rows: Vec<Row>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum LpStatus {
    Optimal,
    Infeasible,
    Unbounded,
}

#[derive(Debug, Clone, PartialEq)]
pub struct LpResult {
    pub status: LpStatus,
    pub objective: f64,
    pub point: Vec<f64>,
    pub iterations: usize,
}

#[derive(Clone, Copy, PartialEq)]
enum Sense {
    Le,
    Ge,
    Eq,
}

struct Tableau {
    /// `m` constraint rows of `cols + 1` entries; the last is the right-hand side.
    a: Vec<Vec<f64>>,
    basis: Vec<usize>,
    cols: usize,
    iterations: usize,
}

impl Tableau {
    fn pivot(&mut self, r: usize, c: usize, cost: &mut [f64]) {
        let piv = self.a[r][c];
        for v in self.a[r].iter_mut() {
            *v /= piv;
        }
        let prow = self.a[r].clone();
        for (i, row) in self.a.iter_mut().enumerate() {
            if i == r {
                continue;
            }
            let f = row[c];
            if f != 0.0 {
                for (v, p) in row.iter_mut().zip(&prow) {
                    *v -= f * p;
                }
                row[c] = 0.0;
            }
        }
        let f = cost[c];
        if f != 0.0 {
            for (v, p) in cost.iter_mut().zip(&prow) {
                *v -= f * p;
            }
            cost[c] = 0.0;
        }
        self.basis[r] = c;
        self.iterations += 1;
    }

    /// Runs Bland's rule on `cost` (reduced costs, last entry = -objective)
    /// over columns `< allowed`. Returns false when unbounded.
    fn optimize(&mut self, cost: &mut [f64], allowed: usize) -> bool {
        loop {
            let Some(c) = (0..allowed).find(|&j| cost[j] < -PIVOT_EPS) else {
                return true;
            };
            let rhs = self.cols;
            let mut best: Option<(usize, f64)> = None;
            for (i, row) in self.a.iter().enumerate() {
                if row[c] > PIVOT_EPS {
                    let ratio = row[rhs] / row[c];
                    best = match best {
                        None => Some((i, ratio)),
                        Some((bi, br)) => {
                            if ratio < br - PIVOT_EPS
                                || (ratio <= br + PIVOT_EPS && self.basis[i] < self.basis[bi])
                            {
                                Some((i, ratio))
                            } else {
                                Some((bi, br))
                            }
                        }
                    };
                }
            }
            let Some((r, _)) = best else {
                return false;
            };
            self.pivot(r, c, cost);
        }
    }

    fn reduced_costs(&self, c: &[f64]) -> Vec<f64> {
        let mut cost = c.to_vec();
        cost.resize(self.cols + 1, 0.0);
        for (row, &b) in self.a.iter().zip(&self.basis) {
            let cb = cost[b];
            if cb != 0.0 {
                for (v, x) in cost.iter_mut().zip(row) {
                    *v -= cb * x;
                }
            }
        }
        cost
    }
}

impl LinearProgram {
    /// Deterministic for a fixed program.
    pub fn solve(&self) -> LpResult {
        let nv = self.objective.len();
        let mut cons: Vec<(Vec<f64>, Sense, f64)> = Vec::new();
        for row in &self.rows {
            assert_eq!(row.coeffs.len(), nv, "row width must match the objective");
            if row.lower == row.upper {
                cons.push((row.coeffs.clone(), Sense::Eq, row.lower));
                continue;
            }
            if row.lower.is_finite() {
                cons.push((row.coeffs.clone(), Sense::Ge, row.lower));
            }
            if row.upper.is_finite() {
                cons.push((row.coeffs.clone(), Sense::Le, row.upper));
            }
        }
        // Nonnegative right-hand sides.
        for (coeffs, sense, rhs) in cons.iter_mut() {
            if *rhs < 0.0 {
                coeffs.iter_mut().for_each(|v| *v = -*v);
                *rhs = -*rhs;
                *sense = match *sense {
                    Sense::Le => Sense::Ge,
                    Sense::Ge => Sense::Le,
                    Sense::Eq => Sense::Eq,
                };
            }
        }

        let m = cons.len();
        let n_slack = cons.iter().filter(|c| c.1 != Sense::Eq).count();
        let n_art = cons.iter().filter(|c| c.1 != Sense::Le).count();
        let art_start = nv + n_slack;
        let cols = art_start + n_art;
        let mut a = vec![vec![0.0; cols + 1]; m];
        let mut basis = vec![0; m];
        let (mut s, mut t) = (nv, art_start);
        for (i, (coeffs, sense, rhs)) in cons.iter().enumerate() {
            a[i][..nv].copy_from_slice(coeffs);
            a[i][cols] = *rhs;
            match sense {
                Sense::Le => {
                    a[i][s] = 1.0;
                    basis[i] = s;
                    s += 1;
                }
                Sense::Ge => {
                    a[i][s] = -1.0;
                    s += 1;
                    a[i][t] = 1.0;
                    basis[i] = t;
                    t += 1;
                }
                Sense::Eq => {
                    a[i][t] = 1.0;
                    basis[i] = t;
                    t += 1;
                }
            }
        }
        let mut tab = Tableau {
            a,
            basis,
            cols,
            iterations: 0,
        };

        if n_art > 0 {
            let mut phase1 = vec![0.0; cols];
            phase1[art_start..].iter_mut().for_each(|v| *v = 1.0);
            let mut cost = tab.reduced_costs(&phase1);
            tab.optimize(&mut cost, cols);
            if -cost[cols] > FEAS_TOL {
                return LpResult {
                    status: LpStatus::Infeasible,
                    objective: f64::NAN,
                    point: Vec::new(),
                    iterations: tab.iterations,
                };
            }
            // Drive zero-level artificials out of the basis; rows where that
            // is impossible are redundant and dropped.
            let mut r = 0;
            while r < tab.a.len() {
                if tab.basis[r] >= art_start {
                    match (0..art_start).find(|&j| tab.a[r][j].abs() > PIVOT_EPS) {
                        Some(c) => tab.pivot(r, c, &mut cost),
                        None => {
                            tab.a.remove(r);
                            tab.basis.remove(r);
                            continue;
                        }
                    }
                }
                r += 1;
            }
        }

        let mut cost = tab.reduced_costs(&self.objective);
        for v in cost[art_start..cols].iter_mut() {
            *v = 0.0;
        }
        if !tab.optimize(&mut cost, art_start) {
            return LpResult {
                status: LpStatus::Unbounded,
                objective: f64::NEG_INFINITY,
                point: Vec::new(),
                iterations: tab.iterations,
            };
        }

        let mut point = vec![0.0; nv];
        for (row, &b) in tab.a.iter().zip(&tab.basis) {
            if b < nv {
                point[b] = row[cols];
            }
        }
        let objective = self.objective.iter().zip(&point).map(|(c, x)| c * x).sum();
        LpResult {
            status: LpStatus::Optimal,
            objective,
            point,
            iterations: tab.iterations,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn row(coeffs: &[f64], lower: f64, upper: f64) -> Row {
        Row {
            coeffs: coeffs.to_vec(),
            lower,
            upper,
        }
    }

    #[test]
    fn single_variable_box() {
        let lp = LinearProgram {
            objective: vec![1.0],
            rows: vec![row(&[1.0], 1.0, 2.0)],
        };
        let r = lp.solve();
        assert_eq!(r.status, LpStatus::Optimal);
        assert!((r.objective - 1.0).abs() < 1e-12);
    }

    #[test]
    fn textbook_maximization() {
        // max 3x + 5y, x <= 4, 2y <= 12, 3x + 2y <= 18 -> (2, 6), value 36.
        let inf = f64::INFINITY;
        let lp = LinearProgram {
            objective: vec![-3.0, -5.0],
            rows: vec![
                row(&[1.0, 0.0], -inf, 4.0),
                row(&[0.0, 2.0], -inf, 12.0),
                row(&[3.0, 2.0], -inf, 18.0),
            ],
        };
        let r = lp.solve();
        assert_eq!(r.status, LpStatus::Optimal);
        assert!((r.objective + 36.0).abs() < 1e-12);
        assert!((r.point[0] - 2.0).abs() < 1e-12 && (r.point[1] - 6.0).abs() < 1e-12);
    }

    #[test]
    fn equality_and_redundant_rows() {
        let lp = LinearProgram {
            objective: vec![1.0, 2.0],
            rows: vec![row(&[1.0, 1.0], 3.0, 3.0), row(&[2.0, 2.0], 6.0, 6.0)],
        };
        let r = lp.solve();
        assert_eq!(r.status, LpStatus::Optimal);
        assert!((r.objective - 3.0).abs() < 1e-12);
    }

    #[test]
    fn detects_infeasible_and_unbounded() {
        let inf = f64::INFINITY;
        let lp = LinearProgram {
            objective: vec![1.0],
            rows: vec![row(&[1.0], 2.0, inf), row(&[1.0], -inf, 1.0)],
        };
        assert_eq!(lp.solve().status, LpStatus::Infeasible);
        let lp = LinearProgram {
            objective: vec![-1.0],
            rows: vec![row(&[1.0], 1.0, inf)],
        };
        assert_eq!(lp.solve().status, LpStatus::Unbounded);
    }

    #[test]
    fn degenerate_program_terminates() {
        // Beale's classic cycling example under the textbook rule.
        let inf = f64::INFINITY;
        let lp = LinearProgram {
            objective: vec![-0.75, 150.0, -0.02, 6.0],
            rows: vec![
                row(&[0.25, -60.0, -0.04, 9.0], -inf, 0.0),
                row(&[0.5, -90.0, -0.02, 3.0], -inf, 0.0),
                row(&[0.0, 0.0, 1.0, 0.0], -inf, 1.0),
            ],
        };
        let r = lp.solve();
        assert_eq!(r.status, LpStatus::Optimal);
        assert!((r.objective + 0.05).abs() < 1e-12);
    }
}
