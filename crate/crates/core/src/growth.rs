//! Growth factor of an Aasen factorization and the entrywise bounds on `T`
//! that imply the `2^(n-1)` growth bound.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::factor::AasenFactors;
use crate::matrix::SymmetricMatrix;

/// A certificate row passes when its margin is at least `-MARGIN_TOL`.
pub const MARGIN_TOL: f64 = 1e-10;

/// `max |t_ij| / max |a_ij|` over the final tridiagonal factor.
pub fn growth_factor(a: &SymmetricMatrix, f: &AasenFactors) -> Result<f64> {
    let scale = a.max_abs();
    if scale == 0.0 {
        return Err(Error::UndefinedGrowth);
    }
    Ok(f.t.max_abs() / scale)
}

/// Which family of entrywise bounds a certificate row instantiates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum BoundFamily {
    /// `|t11|, |t21|, |t22| <= 1` and `|l(i,2) t21| <= 1`.
    Leading,
    /// `|l(i,j-1) t(j-1,j) + l(i,j) t(j,j) + l(i,j+1) t(j+1,j)| <= 2^(j-2)`.
    Combination,
    /// `|l(n,n-1) t(n-1,n) + t(n,n)| <= 2^(n-2)`.
    Trailing,
    /// `|t(i,i-1)| <= 2^(i-2)`, `|t(i,i)| <= 2^(i-1)`.
    Entry,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CertificateRow {
    pub family: BoundFamily,
    pub label: String,
    pub lhs: f64,
    pub bound: f64,
    pub margin: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GrowthCertificate {
    pub n: usize,
    pub rho: f64,
    pub all_pass: bool,
    pub checks: Vec<CertificateRow>,
}

impl GrowthCertificate {
    /// The row with the smallest margin.
    pub fn tightest(&self) -> Option<&CertificateRow> {
        self.checks
            .iter()
            .min_by(|a, b| a.margin.total_cmp(&b.margin))
    }

    pub fn find(&self, label: &str) -> Option<&CertificateRow> {
        self.checks.iter().find(|r| r.label == label)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CertificateRow> {
        self.checks.iter().filter(|r| r.margin < -MARGIN_TOL)
    }
}

/// Instantiates every entrywise bound on `T / max|A|` for the given factors.
///
/// Indices in labels are 1-based. Entries of `L` outside the lower triangle
/// take their structural values (1 on the diagonal, 0 above it).
pub fn lemma_certificate(a: &SymmetricMatrix, f: &AasenFactors) -> Result<GrowthCertificate> {
    let scale = a.max_abs();
    if scale == 0.0 {
        return Err(Error::UndefinedGrowth);
    }
    let n = f.dim();
    let t = f.t.scaled(1.0 / scale);
    let l = &f.l;
    let mut checks = Vec::new();
    let mut push = |family, label: String, lhs: f64, bound: f64| {
        checks.push(CertificateRow {
            family,
            label,
            lhs,
            bound,
            margin: bound - lhs,
        });
    };

    push(
        BoundFamily::Leading,
        "|t(1,1)|".into(),
        t.get(0, 0).abs(),
        1.0,
    );
    if n >= 2 {
        push(
            BoundFamily::Leading,
            "|t(2,1)|".into(),
            t.get(1, 0).abs(),
            1.0,
        );
        push(
            BoundFamily::Leading,
            "|t(2,2)|".into(),
            t.get(1, 1).abs(),
            1.0,
        );
    }
    for i in 2..n {
        push(
            BoundFamily::Leading,
            format!("|l({},2)*t(2,1)|", i + 1),
            (l.get(i, 1) * t.get(1, 0)).abs(),
            1.0,
        );
    }

    // 0-based column j runs over 1..i, bound 2^(j-1).
    for i in 2..n {
        for j in 1..i {
            let lhs = l.get(i, j - 1) * t.get(j - 1, j)
                + l.get(i, j) * t.get(j, j)
                + l.get(i, j + 1) * t.get(j + 1, j);
            push(
                BoundFamily::Combination,
                format!("|h(i={},j={})|", i + 1, j + 1),
                lhs.abs(),
                pow2(j as i32 - 1),
            );
        }
    }

    if n >= 3 {
        let lhs = l.get(n - 1, n - 2) * t.get(n - 2, n - 1) + t.get(n - 1, n - 1);
        push(
            BoundFamily::Trailing,
            format!("|l({n},{})*t({},{n})+t({n},{n})|", n - 1, n - 1),
            lhs.abs(),
            pow2(n as i32 - 2),
        );
    }

    for i in 2..n {
        push(
            BoundFamily::Entry,
            format!("|t({},{})|", i + 1, i),
            t.get(i, i - 1).abs(),
            pow2(i as i32 - 1),
        );
        push(
            BoundFamily::Entry,
            format!("|t({},{})|", i + 1, i + 1),
            t.get(i, i).abs(),
            pow2(i as i32),
        );
    }

    let all_pass = checks.iter().all(|r| r.margin >= -MARGIN_TOL);
    Ok(GrowthCertificate {
        n,
        rho: t.max_abs(),
        all_pass,
        checks,
    })
}

fn pow2(e: i32) -> f64 {
    2.0_f64.powi(e)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BoundTable {
    pub n: usize,
    /// `4^(n-2)`, the earlier bound.
    pub higham_bound: f64,
    /// `2^(n-1)`.
    pub new_bound: f64,
    /// The `2^(n-1)` bound cannot be attained once `n >= 6`.
    pub not_tight: bool,
}

pub fn bound_table(n: usize) -> Result<BoundTable> {
    if n < 2 {
        return Err(Error::Domain(format!("bound table needs n >= 2, got {n}")));
    }
    Ok(BoundTable {
        n,
        higham_bound: 4.0_f64.powi(n as i32 - 2),
        new_bound: pow2(n as i32 - 1),
        not_tight: n >= 6,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum TargetSource {
    /// Reported by Cheng (constructed for n = 3, direct search otherwise).
    Cheng,
    /// The explicit extremal matrix in [`crate::extremal`].
    ExtremalConstruction,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ReferenceTarget {
    pub n: usize,
    pub value: f64,
    pub source: TargetSource,
}

/// Best growth values on record for small `n`. These are reference targets,
/// not values the search is expected to reproduce.
pub fn reference_growth_targets() -> Vec<ReferenceTarget> {
    use TargetSource::*;
    vec![
        ReferenceTarget {
            n: 3,
            value: 4.0,
            source: Cheng,
        },
        ReferenceTarget {
            n: 4,
            value: 7.99,
            source: Cheng,
        },
        ReferenceTarget {
            n: 5,
            value: 14.61,
            source: Cheng,
        },
        ReferenceTarget {
            n: 6,
            value: 24.0,
            source: ExtremalConstruction,
        },
    ]
}

pub fn reference_target(n: usize) -> Option<ReferenceTarget> {
    reference_growth_targets().into_iter().find(|t| t.n == n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::factor::{factorize, TieRule};

    #[test]
    fn identity_growth_and_certificate() {
        let a = SymmetricMatrix::identity(5);
        let f = factorize(&a, TieRule::First).unwrap();
        assert_eq!(growth_factor(&a, &f).unwrap(), 1.0);

        let a = SymmetricMatrix::identity(6);
        let f = factorize(&a, TieRule::First).unwrap();
        let cert = lemma_certificate(&a, &f).unwrap();
        assert!(cert.all_pass);
        assert!(cert.checks.iter().all(|r| r.margin >= 0.0));
    }

    #[test]
    fn zero_matrix_has_undefined_growth() {
        let a = SymmetricMatrix::zeros(3);
        let f = factorize(&a, TieRule::First).unwrap();
        assert_eq!(growth_factor(&a, &f), Err(Error::UndefinedGrowth));
        assert_eq!(
            lemma_certificate(&a, &f).unwrap_err(),
            Error::UndefinedGrowth
        );
    }

    #[test]
    fn row_counts() {
        // n = 5: 3 + 3 leading, 1+2+3 combination, 1 trailing, 2*3 entry.
        let a = SymmetricMatrix::identity(5);
        let f = factorize(&a, TieRule::First).unwrap();
        let cert = lemma_certificate(&a, &f).unwrap();
        assert_eq!(cert.checks.len(), 6 + 6 + 1 + 6);

        let a = SymmetricMatrix::identity(2);
        let f = factorize(&a, TieRule::First).unwrap();
        let cert = lemma_certificate(&a, &f).unwrap();
        assert!(cert.checks.iter().all(|r| r.family == BoundFamily::Leading));
        assert_eq!(cert.checks.len(), 3);
    }

    #[test]
    fn violated_bound_fails_certificate() {
        use crate::matrix::{Permutation, SymmetricTridiagonal, UnitLowerTriangular};
        let f = AasenFactors {
            p: Permutation::identity(3),
            l: UnitLowerTriangular::identity(3),
            t: SymmetricTridiagonal::new(vec![1.0, 1.0, 5.0], vec![0.0, 0.0]).unwrap(),
        };
        let cert = lemma_certificate(&SymmetricMatrix::identity(3), &f).unwrap();
        assert!(!cert.all_pass);
        let failed: Vec<_> = cert.failures().map(|r| r.label.as_str()).collect();
        assert_eq!(failed, vec!["|l(3,2)*t(2,3)+t(3,3)|", "|t(3,3)|"]);
    }

    #[test]
    fn bound_table_values() {
        let t = bound_table(3).unwrap();
        assert_eq!(
            (t.higham_bound, t.new_bound, t.not_tight),
            (4.0, 4.0, false)
        );
        let t = bound_table(4).unwrap();
        assert_eq!((t.higham_bound, t.new_bound), (16.0, 8.0));
        let t = bound_table(6).unwrap();
        assert_eq!(
            (t.higham_bound, t.new_bound, t.not_tight),
            (256.0, 32.0, true)
        );
        assert!(bound_table(1).is_err());
        for n in 2..40 {
            let (a, b) = (bound_table(n).unwrap(), bound_table(n + 1).unwrap());
            assert_eq!(b.new_bound, 2.0 * a.new_bound);
            if n >= 3 {
                assert!(a.new_bound <= a.higham_bound);
            }
        }
    }

    #[test]
    fn reference_lookups() {
        assert_eq!(reference_target(4).unwrap().value, 7.99);
        assert_eq!(reference_target(5).unwrap().value, 14.61);
        assert_eq!(reference_target(6).unwrap().value, 24.0);
        assert_eq!(reference_target(3).unwrap().value, 4.0);
        assert!(reference_target(7).is_none());
    }
}
