//! Aasen's `P A P^T = L T L^T` factorization with partial pivoting, and the
//! linear solver built on it.
//!
//! The factorization runs column by column. At step `j` the known rows of
//! `L` and the leading part of `T` give column `j` of `H = T L^T`; that fixes
//! `t(j, j)`, and the residual of column `j` of `A` below the diagonal is
//! `t(j+1, j)` times the next column of `L`. The largest residual entry is
//! swapped into row `j + 1`, which keeps every multiplier at most 1 in
//! magnitude.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::{
    self, check_dim, Permutation, SymmetricMatrix, SymmetricTridiagonal, UnitLowerTriangular,
};

/// Relative slack under which two pivot candidates count as tied.
///
/// Exact ties are common in structured inputs and roundoff can split them by
/// an ulp or two. The winning candidate is within this factor of the true
/// maximum, so multipliers stay below `1 + TIE_RTOL < 1 + TOL_PIVOT`.
pub const TIE_RTOL: f64 = 4e-15;

/// Pivot magnitude at or below which the tridiagonal solve reports singularity.
pub const SINGULAR_PIVOT: f64 = 1e-300;

/// How to choose among pivot candidates that tie for the largest magnitude.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TieRule {
    /// Keep the current row when it ties; otherwise take the first tied row
    /// in the current ordering.
    #[default]
    First,
    /// Take the tied row whose original (unpermuted) index is smallest.
    Lowest,
}

impl std::str::FromStr for TieRule {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "first" => Ok(Self::First),
            "lowest" | "lowest-index" => Ok(Self::Lowest),
            other => Err(Error::Domain(format!("unknown tie rule `{other}`"))),
        }
    }
}

impl std::fmt::Display for TieRule {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Self::First => "first",
            Self::Lowest => "lowest",
        })
    }
}

/// The factors of `P A P^T = L T L^T`.
#[derive(Debug, Clone, PartialEq)]
pub struct AasenFactors {
    pub p: Permutation,
    pub l: UnitLowerTriangular,
    pub t: SymmetricTridiagonal,
}

impl AasenFactors {
    pub fn dim(&self) -> usize {
        self.t.dim()
    }

    /// `max |(P A P^T - L T L^T)_ij|` for the matrix these factors came from.
    pub fn residual(&self, a: &SymmetricMatrix) -> Result<f64> {
        matrix::residual(a, &self.p, &self.l, &self.t)
    }

    /// Solves `A x = b`.
    pub fn solve(&self, b: &[f64]) -> Result<Vec<f64>> {
        solve(self, b)
    }
}

/// Factorizes `A` as `P A P^T = L T L^T`.
///
/// Fails only for non-finite input. A working column that is entirely zero
/// produces zero multipliers.
pub fn factorize(a: &SymmetricMatrix, rule: TieRule) -> Result<AasenFactors> {
    if let Some((row, col)) = a.first_non_finite() {
        return Err(Error::NonFinite { row, col });
    }
    let n = a.dim();
    let mut w = a.to_rows();
    let mut p = Permutation::identity(n);
    let mut l = vec![0.0; n * n];
    let mut alpha = vec![0.0; n];
    let mut beta = vec![0.0; n.saturating_sub(1)];
    let mut h = vec![0.0; n];
    let mut v = vec![0.0; n];

    // l(i, k) with the unit diagonal and zero upper triangle.
    let lv = |l: &[f64], i: usize, k: usize| -> f64 {
        use std::cmp::Ordering::*;
        match k.cmp(&i) {
            Less => l[i * n + k],
            Equal => 1.0,
            Greater => 0.0,
        }
    };

    for j in 0..n {
        // h(i) = (T L^T)(i, j) for i < j.
        for i in 0..j {
            let mut s = alpha[i] * lv(&l, j, i) + beta[i] * lv(&l, j, i + 1);
            if i > 0 {
                s += beta[i - 1] * lv(&l, j, i - 1);
            }
            h[i] = s;
        }
        let mut hj = w[j][j];
        for i in 0..j {
            hj -= lv(&l, j, i) * h[i];
        }
        h[j] = hj;
        alpha[j] = if j > 0 {
            hj - beta[j - 1] * lv(&l, j, j - 1)
        } else {
            hj
        };
        if j + 1 == n {
            break;
        }

        for i in j + 1..n {
            let mut s = w[i][j];
            for k in 0..=j {
                s -= lv(&l, i, k) * h[k];
            }
            v[i] = s;
        }

        let next = j + 1;
        let r = select_pivot(&v[next..], &p.as_slice()[next..], rule) + next;
        if r != next {
            w.swap(next, r);
            for row in w.iter_mut() {
                row.swap(next, r);
            }
            for k in 0..=j {
                l.swap(next * n + k, r * n + k);
            }
            v.swap(next, r);
            p.swap(next, r);
        }

        let pivot = v[next];
        beta[j] = pivot;
        for i in next + 1..n {
            l[i * n + next] = if pivot != 0.0 { v[i] / pivot } else { 0.0 };
        }
    }

    Ok(AasenFactors {
        p,
        l: UnitLowerTriangular::from_raw(n, l),
        t: SymmetricTridiagonal::new(alpha, beta)?,
    })
}

/// Index (relative to `cands`) of the pivot row.
fn select_pivot(cands: &[f64], original: &[usize], rule: TieRule) -> usize {
    match rule {
        TieRule::First => {
            let mut best = 0;
            for (i, c) in cands.iter().enumerate().skip(1) {
                if c.abs() > cands[best].abs() * (1.0 + TIE_RTOL) {
                    best = i;
                }
            }
            best
        }
        TieRule::Lowest => {
            let max = cands.iter().fold(0.0_f64, |m, c| m.max(c.abs()));
            let threshold = max / (1.0 + TIE_RTOL);
            cands
                .iter()
                .enumerate()
                .filter(|(_, c)| c.abs() >= threshold)
                .min_by_key(|(i, _)| original[*i])
                .map_or(0, |(i, _)| i)
        }
    }
}

/// Solves `A x = b` through the factors: permute, forward substitution with
/// `L`, tridiagonal solve, back substitution with `L^T`, inverse permute.
pub fn solve(f: &AasenFactors, b: &[f64]) -> Result<Vec<f64>> {
    let n = f.dim();
    check_dim(n, b.len())?;
    let p = f.p.as_slice();
    let mut y: Vec<f64> = p.iter().map(|&k| b[k]).collect();
    for i in 0..n {
        let mut s = y[i];
        for k in 1..i {
            s -= f.l.get(i, k) * y[k];
        }
        y[i] = s;
    }
    let mut z = tridiag_solve(&f.t, &y)?;
    for i in (0..n).rev() {
        let mut s = z[i];
        for k in i + 1..n {
            s -= f.l.get(k, i) * z[k];
        }
        z[i] = s;
    }
    let mut x = vec![0.0; n];
    for (i, &k) in p.iter().enumerate() {
        x[k] = z[i];
    }
    Ok(x)
}

/// Solves `T z = y` by Gaussian elimination with row partial pivoting; row
/// swaps create at most one extra superdiagonal.
pub fn tridiag_solve(t: &SymmetricTridiagonal, y: &[f64]) -> Result<Vec<f64>> {
    let n = t.dim();
    check_dim(n, y.len())?;
    let mut d = t.diag().to_vec();
    let mut dl = t.offdiag().to_vec();
    let mut du = t.offdiag().to_vec();
    let mut du2 = vec![0.0; n.saturating_sub(2)];
    let mut b = y.to_vec();

    for i in 0..n.saturating_sub(1) {
        if d[i].abs() >= dl[i].abs() {
            if d[i].abs() <= SINGULAR_PIVOT {
                return Err(Error::Singular { index: i });
            }
            let fact = dl[i] / d[i];
            d[i + 1] -= fact * du[i];
            b[i + 1] -= fact * b[i];
        } else {
            let fact = d[i] / dl[i];
            d[i] = dl[i];
            let temp = d[i + 1];
            d[i + 1] = du[i] - fact * temp;
            if i + 2 < n {
                du2[i] = du[i + 1];
                du[i + 1] = -fact * du2[i];
            }
            du[i] = temp;
            let bi = b[i];
            b[i] = b[i + 1];
            b[i + 1] = bi - fact * b[i];
        }
        dl[i] = 0.0;
    }
    if d[n - 1].abs() <= SINGULAR_PIVOT {
        return Err(Error::Singular { index: n - 1 });
    }

    let mut z = vec![0.0; n];
    for i in (0..n).rev() {
        let mut s = b[i];
        if i + 1 < n {
            s -= du[i] * z[i + 1];
        }
        if i + 2 < n {
            s -= du2[i] * z[i + 2];
        }
        z[i] = s / d[i];
    }
    Ok(z)
}
