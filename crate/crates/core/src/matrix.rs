//! Dense symmetric, unit lower triangular, symmetric tridiagonal and
//! permutation types.
//!
//! All types are immutable once built (apart from the explicit setters on
//! [`SymmetricMatrix`]) and every operation here is a pure function.

use crate::error::{Error, Result};

/// Slack on the `|l_ij| <= 1` multiplier bound.
pub const TOL_PIVOT: f64 = 1e-14;

/// Dense real symmetric matrix.
///
/// The full square is stored; the only mutator writes `(i, j)` and `(j, i)`
/// together so the two triangles can never disagree.
#[derive(Debug, Clone, PartialEq)]
pub struct SymmetricMatrix {
    n: usize,
    data: Vec<f64>,
}

impl SymmetricMatrix {
    /// # Panics
    /// Panics when `n == 0`.
    pub fn zeros(n: usize) -> Self {
        assert!(n >= 1, "matrix dimension must be at least 1");
        Self {
            n,
            data: vec![0.0; n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m.set(i, i, 1.0);
        }
        m
    }

    /// Builds a matrix from its lower triangle: `f(i, j)` is called for `j <= i`.
    pub fn from_lower_fn(n: usize, mut f: impl FnMut(usize, usize) -> f64) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            for j in 0..=i {
                m.set(i, j, f(i, j));
            }
        }
        m
    }

    /// Builds a matrix from full rows, requiring exact symmetry.
    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        Self::from_rows_with_tolerance(rows, 0.0)
    }

    /// Builds a matrix from full rows, accepting `|a_ij - a_ji| <= tol` and
    /// replacing each off-diagonal pair by its mean.
    pub fn from_rows_with_tolerance(rows: &[Vec<f64>], tol: f64) -> Result<Self> {
        let n = rows.len();
        if n == 0 {
            return Err(Error::EmptyMatrix);
        }
        for row in rows {
            if row.len() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    found: row.len(),
                });
            }
        }
        let mut m = Self::zeros(n);
        for i in 0..n {
            for j in 0..=i {
                let (a, b) = (rows[i][j], rows[j][i]);
                let diff = (a - b).abs();
                if diff > tol {
                    return Err(Error::Asymmetric {
                        row: i,
                        col: j,
                        diff,
                    });
                }
                m.set(i, j, if a == b { a } else { 0.5 * (a + b) });
            }
        }
        Ok(m)
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.n + j]
    }

    /// Writes `value` at `(i, j)` and `(j, i)`.
    #[inline]
    pub fn set(&mut self, i: usize, j: usize, value: f64) {
        self.data[i * self.n + j] = value;
        self.data[j * self.n + i] = value;
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.n..(i + 1) * self.n]
    }

    pub fn to_rows(&self) -> Vec<Vec<f64>> {
        (0..self.n).map(|i| self.row(i).to_vec()).collect()
    }

    /// Largest entry magnitude; zero only for the zero matrix.
    pub fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0_f64, |acc, v| acc.max(v.abs()))
    }

    pub fn scaled(&self, c: f64) -> Self {
        Self {
            n: self.n,
            data: self.data.iter().map(|v| c * v).collect(),
        }
    }

    /// Returns the position of the first non-finite entry, if any.
    pub fn first_non_finite(&self) -> Option<(usize, usize)> {
        self.data
            .iter()
            .position(|v| !v.is_finite())
            .map(|k| (k / self.n, k % self.n))
    }

    pub fn mul_vec(&self, x: &[f64]) -> Result<Vec<f64>> {
        check_dim(self.n, x.len())?;
        Ok((0..self.n)
            .map(|i| self.row(i).iter().zip(x).map(|(a, b)| a * b).sum())
            .collect())
    }

    /// `P A P^T`, i.e. `result[i][j] = A[p[i]][p[j]]`.
    pub fn permute(&self, p: &Permutation) -> Result<Self> {
        check_dim(self.n, p.len())?;
        let idx = p.as_slice();
        let mut out = Self::zeros(self.n);
        for i in 0..self.n {
            for j in 0..self.n {
                out.data[i * self.n + j] = self.get(idx[i], idx[j]);
            }
        }
        Ok(out)
    }
}

/// A bijection on `0..n`, stored as the image sequence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Permutation(Vec<usize>);

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Self((0..n).collect())
    }

    pub fn new(p: Vec<usize>) -> Result<Self> {
        let n = p.len();
        let mut seen = vec![false; n];
        for &k in &p {
            if k >= n || seen[k] {
                return Err(Error::InvalidPermutation { n });
            }
            seen[k] = true;
        }
        Ok(Self(p))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &k)| i == k)
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.0.len()];
        for (i, &k) in self.0.iter().enumerate() {
            inv[k] = i;
        }
        Self(inv)
    }

    pub(crate) fn swap(&mut self, a: usize, b: usize) {
        self.0.swap(a, b);
    }
}

/// Unit lower triangular matrix whose first column is `e_1`.
///
/// Only the strictly lower triangle is stored; the diagonal reads as 1 and the
/// upper triangle as 0.
#[derive(Debug, Clone, PartialEq)]
pub struct UnitLowerTriangular {
    n: usize,
    data: Vec<f64>,
}

impl UnitLowerTriangular {
    pub fn identity(n: usize) -> Self {
        Self {
            n,
            data: vec![0.0; n * n],
        }
    }

    /// Builds the factor from `f(i, j)` for `j < i`, checking the `e_1` first
    /// column and the multiplier bound.
    pub fn from_strict_lower_fn(n: usize, mut f: impl FnMut(usize, usize) -> f64) -> Result<Self> {
        let mut l = Self::identity(n);
        for i in 1..n {
            for j in 0..i {
                l.data[i * n + j] = f(i, j);
            }
        }
        l.validate(TOL_PIVOT)?;
        Ok(l)
    }

    pub(crate) fn from_raw(n: usize, data: Vec<f64>) -> Self {
        debug_assert_eq!(data.len(), n * n);
        Self { n, data }
    }

    pub fn validate(&self, tol: f64) -> Result<()> {
        for i in 1..self.n {
            if self.data[i * self.n] != 0.0 {
                return Err(Error::InvalidFactor(format!(
                    "first column is not e1 (row {i})"
                )));
            }
            for j in 0..i {
                let v = self.data[i * self.n + j];
                if !v.is_finite() || v.abs() > 1.0 + tol {
                    return Err(Error::InvalidFactor(format!(
                        "|l({i},{j})| = {v} exceeds 1"
                    )));
                }
            }
        }
        Ok(())
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        use std::cmp::Ordering::*;
        match j.cmp(&i) {
            Less => self.data[i * self.n + j],
            Equal => 1.0,
            Greater => 0.0,
        }
    }

    /// Strictly lower rows: row `i` has `i` entries.
    pub fn strict_rows(&self) -> Vec<Vec<f64>> {
        (0..self.n)
            .map(|i| self.data[i * self.n..i * self.n + i].to_vec())
            .collect()
    }

    /// Largest `|l_ij|` over the strictly lower triangle (0 for `n <= 1`).
    pub fn max_abs_multiplier(&self) -> f64 {
        (1..self.n)
            .flat_map(|i| (0..i).map(move |j| (i, j)))
            .fold(0.0_f64, |acc, (i, j)| acc.max(self.get(i, j).abs()))
    }
}

/// Symmetric tridiagonal matrix as a diagonal and one off-diagonal.
#[derive(Debug, Clone, PartialEq)]
pub struct SymmetricTridiagonal {
    diag: Vec<f64>,
    offdiag: Vec<f64>,
}

impl SymmetricTridiagonal {
    /// `offdiag[i]` is `t(i+1, i) = t(i, i+1)`.
    pub fn new(diag: Vec<f64>, offdiag: Vec<f64>) -> Result<Self> {
        if diag.is_empty() {
            return Err(Error::EmptyMatrix);
        }
        check_dim(diag.len() - 1, offdiag.len())?;
        Ok(Self { diag, offdiag })
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.diag.len()
    }

    pub fn diag(&self) -> &[f64] {
        &self.diag
    }

    pub fn offdiag(&self) -> &[f64] {
        &self.offdiag
    }

    /// Entry `t(i, j)`; zero outside the band or the matrix.
    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        let n = self.dim();
        if i >= n || j >= n {
            return 0.0;
        }
        if i == j {
            self.diag[i]
        } else if i.abs_diff(j) == 1 {
            self.offdiag[i.min(j)]
        } else {
            0.0
        }
    }

    pub fn max_abs(&self) -> f64 {
        self.diag
            .iter()
            .chain(&self.offdiag)
            .fold(0.0_f64, |acc, v| acc.max(v.abs()))
    }

    pub fn scaled(&self, c: f64) -> Self {
        Self {
            diag: self.diag.iter().map(|v| c * v).collect(),
            offdiag: self.offdiag.iter().map(|v| c * v).collect(),
        }
    }

    pub fn mul_vec(&self, x: &[f64]) -> Result<Vec<f64>> {
        let n = self.dim();
        check_dim(n, x.len())?;
        Ok((0..n)
            .map(|i| {
                let mut s = self.diag[i] * x[i];
                if i > 0 {
                    s += self.offdiag[i - 1] * x[i - 1];
                }
                if i + 1 < n {
                    s += self.offdiag[i] * x[i + 1];
                }
                s
            })
            .collect())
    }
}

/// `L T L^T`, symmetrized as `(M + M^T) / 2`.
pub fn assemble(l: &UnitLowerTriangular, t: &SymmetricTridiagonal) -> Result<SymmetricMatrix> {
    let n = l.dim();
    check_dim(n, t.dim())?;
    // W = T L^T; column j of L^T is row j of L, so W[i][j] only involves
    // l(j, i-1), l(j, i), l(j, i+1).
    let mut w = vec![0.0; n * n];
    for i in 0..n {
        for j in 0..n {
            let mut s = t.get(i, i) * l.get(j, i);
            if i > 0 {
                s += t.get(i, i - 1) * l.get(j, i - 1);
            }
            if i + 1 < n {
                s += t.get(i, i + 1) * l.get(j, i + 1);
            }
            w[i * n + j] = s;
        }
    }
    let mut full = vec![0.0; n * n];
    for i in 0..n {
        for j in 0..n {
            full[i * n + j] = (0..=i).map(|k| l.get(i, k) * w[k * n + j]).sum();
        }
    }
    Ok(SymmetricMatrix::from_lower_fn(n, |i, j| {
        0.5 * (full[i * n + j] + full[j * n + i])
    }))
}

/// Max-abs entry of `P A P^T - L T L^T`.
pub fn residual(
    a: &SymmetricMatrix,
    p: &Permutation,
    l: &UnitLowerTriangular,
    t: &SymmetricTridiagonal,
) -> Result<f64> {
    let pa = a.permute(p)?;
    let ltl = assemble(l, t)?;
    check_dim(pa.dim(), ltl.dim())?;
    Ok(pa
        .data
        .iter()
        .zip(&ltl.data)
        .fold(0.0_f64, |acc, (x, y)| acc.max((x - y).abs())))
}

pub(crate) fn check_dim(expected: usize, found: usize) -> Result<()> {
    if expected == found {
        Ok(())
    } else {
        Err(Error::DimensionMismatch { expected, found })
    }
}

/// Largest magnitude in a slice; 0 when empty.
pub fn max_abs_slice(v: &[f64]) -> f64 {
    v.iter().fold(0.0_f64, |acc, x| acc.max(x.abs()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn max_abs_simple_cases() {
        assert_eq!(SymmetricMatrix::identity(3).max_abs(), 1.0);
        assert_eq!(SymmetricMatrix::zeros(2).max_abs(), 0.0);
    }

    #[test]
    fn setter_writes_both_triangles() {
        let mut m = SymmetricMatrix::zeros(3);
        m.set(2, 0, -4.5);
        assert_eq!(m.get(0, 2), -4.5);
        assert_eq!(m.get(2, 0), -4.5);
    }

    #[test]
    fn permute_two_by_two() {
        let a = SymmetricMatrix::from_rows(&[vec![1.0, 2.0], vec![2.0, 3.0]]).unwrap();
        let p = Permutation::new(vec![1, 0]).unwrap();
        let pa = a.permute(&p).unwrap();
        assert_eq!(pa.to_rows(), vec![vec![3.0, 2.0], vec![2.0, 1.0]]);
        assert_eq!(a.permute(&Permutation::identity(2)).unwrap(), a);
    }

    #[test]
    fn permute_rejects_wrong_length() {
        let a = SymmetricMatrix::identity(3);
        assert!(matches!(
            a.permute(&Permutation::identity(2)),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn permutation_validation() {
        assert!(Permutation::new(vec![0, 0]).is_err());
        assert!(Permutation::new(vec![0, 2]).is_err());
        let p = Permutation::new(vec![2, 0, 1]).unwrap();
        assert_eq!(p.inverse().as_slice(), &[1, 2, 0]);
    }

    #[test]
    fn from_rows_rejects_asymmetry() {
        let rows = vec![vec![1.0, 2.0], vec![2.5, 1.0]];
        assert!(matches!(
            SymmetricMatrix::from_rows(&rows),
            Err(Error::Asymmetric { row: 1, col: 0, .. })
        ));
        let near = vec![vec![1.0, 2.0], vec![2.0 + 1e-13, 1.0]];
        let m = SymmetricMatrix::from_rows_with_tolerance(&near, 1e-12).unwrap();
        assert_eq!(m.get(0, 1), m.get(1, 0));
    }

    #[test]
    fn unit_lower_rejects_bad_first_column() {
        let err =
            UnitLowerTriangular::from_strict_lower_fn(
                3,
                |i, j| if j == 0 && i == 2 { 0.5 } else { 0.0 },
            );
        assert!(err.is_err());
        let big =
            UnitLowerTriangular::from_strict_lower_fn(
                3,
                |i, j| if (i, j) == (2, 1) { 1.5 } else { 0.0 },
            );
        assert!(big.is_err());
    }

    #[test]
    fn assemble_identity() {
        let l = UnitLowerTriangular::identity(2);
        let t = SymmetricTridiagonal::new(vec![1.0, 1.0], vec![0.0]).unwrap();
        assert_eq!(assemble(&l, &t).unwrap(), SymmetricMatrix::identity(2));
    }

    #[test]
    fn residual_of_exact_two_by_two() {
        let a = SymmetricMatrix::from_rows(&[vec![2.0, -1.0], vec![-1.0, 4.0]]).unwrap();
        let t = SymmetricTridiagonal::new(vec![2.0, 4.0], vec![-1.0]).unwrap();
        let r = residual(
            &a,
            &Permutation::identity(2),
            &UnitLowerTriangular::identity(2),
            &t,
        )
        .unwrap();
        assert_eq!(r, 0.0);
    }

    #[test]
    fn tridiagonal_accessors() {
        let t = SymmetricTridiagonal::new(vec![1.0, 2.0, 3.0], vec![4.0, 5.0]).unwrap();
        assert_eq!(t.get(1, 2), 5.0);
        assert_eq!(t.get(2, 1), 5.0);
        assert_eq!(t.get(0, 2), 0.0);
        assert_eq!(t.max_abs(), 5.0);
        assert_eq!(t.mul_vec(&[1.0, 1.0, 1.0]).unwrap(), vec![5.0, 11.0, 8.0]);
        assert!(SymmetricTridiagonal::new(vec![1.0, 2.0], vec![]).is_err());
    }

    fn sym_strategy() -> impl Strategy<Value = SymmetricMatrix> {
        (1usize..8).prop_flat_map(|n| {
            proptest::collection::vec(-10.0f64..10.0, n * n)
                .prop_map(move |v| SymmetricMatrix::from_lower_fn(n, |i, j| v[i * n + j]))
        })
    }

    proptest! {
        #[test]
        fn permute_then_inverse_is_identity(a in sym_strategy(), seed in any::<u64>()) {
            use rand::{seq::SliceRandom, SeedableRng};
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            let mut idx: Vec<usize> = (0..a.dim()).collect();
            idx.shuffle(&mut rng);
            let p = Permutation::new(idx).unwrap();
            let back = a.permute(&p).unwrap().permute(&p.inverse()).unwrap();
            prop_assert_eq!(back, a);
        }

        #[test]
        fn max_abs_is_homogeneous(a in sym_strategy(), c in -100.0f64..100.0) {
            // Rounding is monotone, so the identity holds exactly.
            prop_assert_eq!(a.scaled(c).max_abs(), c.abs() * a.max_abs());
        }
    }
}
