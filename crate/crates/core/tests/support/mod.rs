//! Independent oracles shared by the integration tests. Nothing here calls
//! into the code path it is used to check.
#![allow(dead_code, clippy::needless_range_loop)]

use aasen::lpcert::simplex::{LinearProgram, LpStatus, Row};
use aasen::{AasenFactors, DeltaProgram, SymmetricMatrix};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Symmetric matrix with lower-triangle entries uniform in `[-1, 1]`.
pub fn random_symmetric(rng: &mut ChaCha8Rng, n: usize) -> SymmetricMatrix {
    SymmetricMatrix::from_lower_fn(n, |_, _| rng.random_range(-1.0..=1.0))
}

pub fn dense_l(f: &AasenFactors) -> Vec<Vec<f64>> {
    let n = f.dim();
    (0..n)
        .map(|i| (0..n).map(|j| f.l.get(i, j)).collect())
        .collect()
}

pub fn dense_t(f: &AasenFactors) -> Vec<Vec<f64>> {
    let n = f.dim();
    (0..n)
        .map(|i| (0..n).map(|j| f.t.get(i, j)).collect())
        .collect()
}

/// Plain triple-loop `L T L^T`.
pub fn naive_ltlt(l: &[Vec<f64>], t: &[Vec<f64>]) -> Vec<Vec<f64>> {
    let n = l.len();
    let mut lt = vec![vec![0.0; n]; n];
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                lt[i][j] += l[i][k] * t[k][j];
            }
        }
    }
    let mut out = vec![vec![0.0; n]; n];
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                out[i][j] += lt[i][k] * l[j][k];
            }
        }
    }
    out
}

pub fn max_abs_diff(a: &[Vec<f64>], b: &[Vec<f64>]) -> f64 {
    a.iter()
        .flatten()
        .zip(b.iter().flatten())
        .fold(0.0_f64, |m, (x, y)| m.max((x - y).abs()))
}

/// Gaussian elimination with partial pivoting on a dense copy; `None` when a
/// pivot falls below `tiny`.
pub fn dense_solve(mut m: Vec<Vec<f64>>, mut b: Vec<f64>, tiny: f64) -> Option<Vec<f64>> {
    let n = b.len();
    for c in 0..n {
        let r = (c..n).max_by(|&x, &y| m[x][c].abs().total_cmp(&m[y][c].abs()))?;
        if m[r][c].abs() <= tiny {
            return None;
        }
        m.swap(c, r);
        b.swap(c, r);
        for i in c + 1..n {
            let f = m[i][c] / m[c][c];
            for k in c..n {
                m[i][k] -= f * m[c][k];
            }
            b[i] -= f * b[c];
        }
    }
    let mut x = vec![0.0; n];
    for i in (0..n).rev() {
        let s: f64 = (i + 1..n).map(|k| m[i][k] * x[k]).sum();
        x[i] = (b[i] - s) / m[i][i];
    }
    Some(x)
}

/// LU factors with partial pivoting for repeated solves.
struct Lu {
    lu: Vec<Vec<f64>>,
    perm: Vec<usize>,
}

impl Lu {
    fn new(mut a: Vec<Vec<f64>>) -> Option<Self> {
        let n = a.len();
        let mut perm: Vec<usize> = (0..n).collect();
        for c in 0..n {
            let r = (c..n).max_by(|&x, &y| a[x][c].abs().total_cmp(&a[y][c].abs()))?;
            if a[r][c].abs() < 1e-10 {
                return None;
            }
            a.swap(c, r);
            perm.swap(c, r);
            for i in c + 1..n {
                let f = a[i][c] / a[c][c];
                a[i][c] = f;
                for k in c + 1..n {
                    a[i][k] -= f * a[c][k];
                }
            }
        }
        Some(Self { lu: a, perm })
    }

    fn solve(&self, b: &[f64], x: &mut [f64]) {
        let n = b.len();
        for i in 0..n {
            let mut s = b[self.perm[i]];
            for k in 0..i {
                s -= self.lu[i][k] * x[k];
            }
            x[i] = s;
        }
        for i in (0..n).rev() {
            let mut s = x[i];
            for k in i + 1..n {
                s -= self.lu[i][k] * x[k];
            }
            x[i] = s / self.lu[i][i];
        }
    }
}

/// Minimum of the objective over all basic feasible points: every choice of
/// `m` rows, each held at one of its bounds, that determines a unique point
/// satisfying every row to `1e-9`.
pub fn enumerate_vertices(prog: &DeltaProgram) -> Option<(f64, Vec<f64>)> {
    let m = prog.num_vars;
    let rows = &prog.constraints;
    let r = rows.len();
    let sides: Vec<Vec<f64>> = rows
        .iter()
        .map(|row| {
            if row.lower == row.upper {
                vec![row.lower]
            } else {
                vec![row.lower, row.upper]
            }
        })
        .collect();

    let mut best: Option<(f64, Vec<f64>)> = None;
    let mut idx: Vec<usize> = (0..m).collect();
    let mut x = vec![0.0; m];
    let mut rhs = vec![0.0; m];
    loop {
        let mat: Vec<Vec<f64>> = idx.iter().map(|&i| rows[i].coeffs.clone()).collect();
        if let Some(lu) = Lu::new(mat) {
            let combos: usize = idx.iter().map(|&i| sides[i].len()).product();
            for mut code in 0..combos {
                for (k, &i) in idx.iter().enumerate() {
                    let s = &sides[i];
                    rhs[k] = s[code % s.len()];
                    code /= s.len();
                }
                lu.solve(&rhs, &mut x);
                let feasible = rows.iter().all(|row| {
                    let v: f64 = row.coeffs.iter().zip(&x).map(|(a, b)| a * b).sum();
                    v >= row.lower - 1e-9 && v <= row.upper + 1e-9
                });
                if feasible {
                    let obj: f64 = prog.objective.iter().zip(&x).map(|(c, v)| c * v).sum();
                    if best.as_ref().is_none_or(|(b, _)| obj < *b) {
                        best = Some((obj, x.clone()));
                    }
                }
            }
        }
        // Next m-combination of 0..r in lexicographic order.
        let mut k = m;
        loop {
            if k == 0 {
                return best;
            }
            k -= 1;
            if idx[k] != k + r - m {
                break;
            }
            if k == 0 && idx[0] == r - m {
                return best;
            }
        }
        idx[k] += 1;
        for q in k + 1..m {
            idx[q] = idx[q - 1] + 1;
        }
    }
}

/// Weak-duality certificate for `min 1.x` over `prog` with `x >= 0`.
///
/// Solves the dual `max sum(lam_i lo_i) - sum(mu_i hi_i)` subject to
/// `A^T (lam - mu) <= c`, `lam, mu >= 0`, then checks the dual point by hand.
/// Returns the verified dual objective, a lower bound on the primal optimum.
pub fn verified_dual_bound(prog: &DeltaProgram) -> Result<f64, String> {
    let m = prog.num_vars;
    let r = prog.constraints.len();
    // Variables: lam_0..lam_(r-1), mu_0..mu_(r-1).
    let mut objective = vec![0.0; 2 * r];
    for (i, row) in prog.constraints.iter().enumerate() {
        objective[i] = -row.lower;
        objective[r + i] = row.upper;
    }
    let rows = (0..m)
        .map(|j| {
            let mut coeffs = vec![0.0; 2 * r];
            for (i, row) in prog.constraints.iter().enumerate() {
                coeffs[i] = row.coeffs[j];
                coeffs[r + i] = -row.coeffs[j];
            }
            Row {
                coeffs,
                lower: f64::NEG_INFINITY,
                upper: prog.objective[j],
            }
        })
        .collect();
    let dual = LinearProgram { objective, rows }.solve();
    if dual.status != LpStatus::Optimal {
        return Err(format!("dual status {:?}", dual.status));
    }
    let y = &dual.point;
    if y.iter().any(|&v| v < -1e-12) {
        return Err("negative dual multiplier".into());
    }
    for j in 0..m {
        let s: f64 = prog
            .constraints
            .iter()
            .enumerate()
            .map(|(i, row)| (y[i] - y[r + i]) * row.coeffs[j])
            .sum();
        if s > prog.objective[j] + 1e-9 {
            return Err(format!(
                "dual constraint {j} violated by {}",
                s - prog.objective[j]
            ));
        }
    }
    Ok(prog
        .constraints
        .iter()
        .enumerate()
        .map(|(i, row)| y[i] * row.lower - y[r + i] * row.upper)
        .sum())
}
