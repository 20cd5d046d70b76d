//! Closed-form extremal matrices for `n = 4, 5, 6` with their reference
//! factorizations, parameterized by `delta`.
//!
//! For `n = 4, 5` the growth `8 - 2 delta` and `16 - 12 delta` approaches the
//! `2^(n-1)` bound as `delta -> 0+`. The `n = 6` family needs
//! `2/5 <= delta <= 4/5` to keep `|a_ij| <= 1` and peaks at growth 24.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::factor::{factorize, AasenFactors, TieRule};
use crate::growth::{growth_factor, lemma_certificate, GrowthCertificate};
use crate::matrix::{
    residual, Permutation, SymmetricMatrix, SymmetricTridiagonal, UnitLowerTriangular,
};

#[derive(Debug, Clone, PartialEq)]
pub struct ExtremalExample {
    pub n: usize,
    pub delta: f64,
    pub matrix: SymmetricMatrix,
    pub reference_l: UnitLowerTriangular,
    pub reference_t: SymmetricTridiagonal,
    pub reference_p: Permutation,
    pub expected_growth: f64,
}

/// `delta`-dependent entries of `A`, used to explain window violations.
type EntryFormula = (&'static str, fn(f64) -> f64);

const N4_ENTRIES: &[EntryFormula] = &[
    ("a(2,2) = delta/2 - 1", |d| d / 2.0 - 1.0),
    ("a(2,4) = delta - 1", |d| d - 1.0),
];
const N5_ENTRIES: &[EntryFormula] = &[
    ("a(2,2) = delta/4", |d| d / 4.0),
    ("a(2,3) = 1 - delta/2", |d| 1.0 - d / 2.0),
    ("a(2,4) = delta - 1", |d| d - 1.0),
    ("a(2,5) = 1 - delta", |d| 1.0 - d),
    ("a(3,5) = 2 delta - 1", |d| 2.0 * d - 1.0),
];
const N6_ENTRIES: &[EntryFormula] = &[
    ("a(2,2) = delta/2 - 3/4", |d| d / 2.0 - 0.75),
    ("a(2,4) = delta - 1", |d| d - 1.0),
    ("a(4,4) = 5 delta - 3", |d| 5.0 * d - 3.0),
    ("a(4,6) = 2 delta - 1", |d| 2.0 * d - 1.0),
];

/// Human-readable admissible `delta` range for each `n`.
pub fn delta_window(n: usize) -> Option<&'static str> {
    match n {
        4 => Some("0 < delta <= 2"),
        5 => Some("0 < delta <= 1"),
        6 => Some("2/5 <= delta <= 4/5"),
        _ => None,
    }
}

fn check_window(n: usize, delta: f64) -> Result<()> {
    let window = delta_window(n).ok_or_else(|| {
        Error::Domain(format!(
            "extremal examples exist for n = 4, 5, 6; got n = {n}"
        ))
    })?;
    if !delta.is_finite() {
        return Err(Error::Domain(format!(
            "delta must be finite (n = {n} requires {window})"
        )));
    }
    if n != 6 && delta <= 0.0 {
        return Err(Error::Domain(format!(
            "delta = {delta} outside window: n = {n} requires {window} (delta = 0 degenerates T)"
        )));
    }
    let entries = match n {
        4 => N4_ENTRIES,
        5 => N5_ENTRIES,
        _ => N6_ENTRIES,
    };
    // The windows are stated in exact arithmetic; allow an ulp of slack so
    // values like 2/5 computed in floating point land inside.
    for (label, f) in entries {
        let v = f(delta);
        if v.abs() > 1.0 + 4.0 * f64::EPSILON {
            return Err(Error::Domain(format!(
                "delta = {delta} outside window: n = {n} requires {window} ({label} = {v} leaves [-1, 1])"
            )));
        }
    }
    Ok(())
}

fn lower(n: usize, rows: &[&[f64]]) -> UnitLowerTriangular {
    UnitLowerTriangular::from_strict_lower_fn(n, |i, j| rows[i][j])
        .expect("reference factor entries are in {-1, 0, 1}")
}

/// The extremal matrix of order `n` at parameter `delta`, with its reference
/// factors. The reference permutation is the identity.
pub fn extremal_example(n: usize, delta: f64) -> Result<ExtremalExample> {
    check_window(n, delta)?;
    let d = delta;
    let (rows, l, diag, off, expected): (Vec<Vec<f64>>, _, Vec<f64>, Vec<f64>, f64) = match n {
        4 => (
            vec![
                vec![1.0, 1.0, -1.0, 1.0],
                vec![1.0, d / 2.0 - 1.0, 1.0, d - 1.0],
                vec![-1.0, 1.0, 1.0, -1.0],
                vec![1.0, d - 1.0, -1.0, 1.0],
            ],
            lower(4, &[&[], &[0.0], &[0.0, -1.0], &[0.0, 1.0, 1.0]]),
            vec![1.0, -1.0 + d / 2.0, 2.0 + d / 2.0, 8.0 - 2.0 * d],
            vec![1.0, d / 2.0, -4.0],
            8.0 - 2.0 * d,
        ),
        5 => (
            vec![
                vec![1.0, 1.0, 1.0, 1.0, -1.0],
                vec![1.0, d / 4.0, 1.0 - d / 2.0, d - 1.0, 1.0 - d],
                vec![1.0, 1.0 - d / 2.0, 1.0, 1.0, 2.0 * d - 1.0],
                vec![1.0, d - 1.0, 1.0, 1.0, -1.0],
                vec![-1.0, 1.0 - d, 2.0 * d - 1.0, -1.0, 1.0],
            ],
            lower(
                5,
                &[
                    &[],
                    &[0.0],
                    &[0.0, 1.0],
                    &[0.0, 1.0, -1.0],
                    &[0.0, -1.0, 1.0, 1.0],
                ],
            ),
            vec![1.0, d / 4.0, -1.0 + 5.0 * d / 4.0, 4.0 - d, 16.0 - 12.0 * d],
            vec![1.0, 1.0 - 3.0 * d / 4.0, d, -8.0 + 4.0 * d],
            16.0 - 12.0 * d,
        ),
        _ => (
            vec![
                vec![1.0, 1.0, 1.0, 1.0, 1.0, -1.0],
                vec![1.0, d / 2.0 - 0.75, -0.5, d - 1.0, d - 1.0, 1.0 - d],
                vec![1.0, -0.5, -1.0, -1.0, 1.0, -1.0],
                vec![1.0, d - 1.0, -1.0, 5.0 * d - 3.0, 1.0, 2.0 * d - 1.0],
                vec![1.0, d - 1.0, 1.0, 1.0, 1.0, -1.0],
                vec![-1.0, 1.0 - d, -1.0, 2.0 * d - 1.0, -1.0, 1.0],
            ],
            lower(
                6,
                &[
                    &[],
                    &[0.0],
                    &[0.0, 1.0],
                    &[0.0, 1.0, -1.0],
                    &[0.0, 1.0, -1.0, -1.0],
                    &[0.0, -1.0, 1.0, 1.0, 1.0],
                ],
            ),
            vec![
                1.0,
                -0.75 + d / 2.0,
                -0.75 + d / 2.0,
                -3.0 + 3.0 * d,
                8.0 - 3.0 * d,
                32.0 - 20.0 * d,
            ],
            vec![1.0, 0.25 - d / 2.0, -1.0, d, -16.0 + 8.0 * d],
            32.0 - 20.0 * d,
        ),
    };
    Ok(ExtremalExample {
        n,
        delta,
        matrix: SymmetricMatrix::from_rows(&rows)?,
        reference_l: l,
        reference_t: SymmetricTridiagonal::new(diag, off)?,
        reference_p: Permutation::identity(n),
        expected_growth: expected,
    })
}

/// Cross-check of an example against its reference factors and a fresh
/// factorization.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExampleReport {
    pub n: usize,
    pub delta: f64,
    pub expected_growth: f64,
    pub reference_residual: f64,
    pub reference_growth: f64,
    pub reference_certificate: GrowthCertificate,
    pub recomputed_residual: f64,
    pub recomputed_growth: f64,
    pub recomputed_certificate: GrowthCertificate,
    #[serde(skip)]
    pub recomputed: AasenFactors,
}

pub fn verify_example(ex: &ExtremalExample, rule: TieRule) -> Result<ExampleReport> {
    let reference = AasenFactors {
        p: ex.reference_p.clone(),
        l: ex.reference_l.clone(),
        t: ex.reference_t.clone(),
    };
    let recomputed = factorize(&ex.matrix, rule)?;
    Ok(ExampleReport {
        n: ex.n,
        delta: ex.delta,
        expected_growth: ex.expected_growth,
        reference_residual: residual(&ex.matrix, &reference.p, &reference.l, &reference.t)?,
        reference_growth: growth_factor(&ex.matrix, &reference)?,
        reference_certificate: lemma_certificate(&ex.matrix, &reference)?,
        recomputed_residual: recomputed.residual(&ex.matrix)?,
        recomputed_growth: growth_factor(&ex.matrix, &recomputed)?,
        recomputed_certificate: lemma_certificate(&ex.matrix, &recomputed)?,
        recomputed,
    })
}
