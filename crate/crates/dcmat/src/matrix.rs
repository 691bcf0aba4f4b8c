//! The double-constant matrix and its closed-form spectral theory.
//!
//! A double-constant matrix is an n×n real symmetric matrix with one
//! constant `a` on the main diagonal and another constant `t` on every
//! off-diagonal element:
//!
//! ```text
//! M(a, t) = (a − t)·I + t·1
//! ```
//!
//! where `1` is the all-ones matrix. The whole spectral theory collapses
//! to two numbers: the major eigenvalue λ* = a − t (multiplicity n − 1)
//! and the minor eigenvalue λ** = a − t + nt (multiplicity 1). Every
//! operation in this module is O(1) arithmetic on (n, a, t); nothing here
//! ever touches an n×n array except [`DoubleConstant::materialize`].

use crate::error::{Error, Result};

/// An n×n matrix with constant diagonal `a` and constant off-diagonal `t`,
/// stored as the three scalars that determine it.
///
/// Values are immutable; every operation returns a new value. Eigenvalues
/// are always derived from (a, t), never stored, so the element view and
/// the spectral view cannot drift apart.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DoubleConstant {
    n: usize,
    a: f64,
    t: f64,
}

/// The eigenvalue-space view of a double-constant matrix: the major
/// eigenvalue λ* (multiplicity n − 1) and minor eigenvalue λ** =
/// λ* + nt (multiplicity 1).
///
/// For n = 1 the major eigenvalue has multiplicity 0; it is still carried
/// as the number a − t so that the conversion formulas stay total, but
/// only λ** is spectrally meaningful.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CanonicalForm {
    n: usize,
    lambda_major: f64,
    lambda_minor: f64,
}

/// Exhaustive partition of the double-constant matrices by the signs of
/// their eigenvalues and the degeneracy of their constants.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MatrixClass {
    /// a = t = 0.
    Zero,
    /// a = t ≠ 0: rank-one constant matrix.
    NonZeroConstant,
    /// t = 0, a ≠ 0: a·I.
    ScaledIdentity,
    /// λ** = 0, λ* ≠ 0: a nonzero multiple of the centering matrix.
    CenteringProportional,
    /// λ* > 0 and λ** > 0.
    PositiveDefinite,
    /// λ* < 0 and λ** < 0.
    NegativeDefinite,
    /// λ* and λ** have opposite signs.
    Indefinite,
}

impl MatrixClass {
    /// Stable label used in CLI output and reports.
    pub fn label(&self) -> &'static str {
        match self {
            MatrixClass::Zero => "Zero",
            MatrixClass::NonZeroConstant => "NonZeroConstant",
            MatrixClass::ScaledIdentity => "ScaledIdentity",
            MatrixClass::CenteringProportional => "CenteringProportional",
            MatrixClass::PositiveDefinite => "PositiveDefinite",
            MatrixClass::NegativeDefinite => "NegativeDefinite",
            MatrixClass::Indefinite => "Indefinite",
        }
    }
}

impl std::fmt::Display for MatrixClass {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.label())
    }
}

/// Row-major dense matrix of f64. Used as the materialization target and
/// by the dense reference routines in [`crate::oracle`].
#[derive(Debug, Clone, PartialEq)]
pub struct DenseMatrix {
    rows: usize,
    cols: usize,
    data: Vec<f64>,
}

impl DenseMatrix {
    /// Wraps a row-major buffer; fails if the length is not rows × cols.
    pub fn new(rows: usize, cols: usize, data: Vec<f64>) -> Result<Self> {
        let expected = rows
            .checked_mul(cols)
            .ok_or(Error::AllocationOverflow { n: rows.max(cols) })?;
        if data.len() != expected {
            return Err(Error::BadBufferLength {
                expected,
                found: data.len(),
            });
        }
        Ok(DenseMatrix { rows, cols, data })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        DenseMatrix {
            rows,
            cols,
            data: vec![0.0; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = 1.0;
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn data(&self) -> &[f64] {
        &self.data
    }

    /// Borrow row `i` as a slice.
    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    /// Copy column `j` out.
    pub fn column(&self, j: usize) -> Vec<f64> {
        (0..self.rows).map(|i| self[(i, j)]).collect()
    }

    pub fn transpose(&self) -> DenseMatrix {
        let mut out = DenseMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out[(j, i)] = self[(i, j)];
            }
        }
        out
    }

    pub fn trace(&self) -> f64 {
        (0..self.rows.min(self.cols)).map(|i| self[(i, i)]).sum()
    }

    /// Largest absolute entry.
    pub fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0_f64, |m, &v| m.max(v.abs()))
    }

    /// Largest absolute entrywise difference against `other`.
    pub fn max_abs_diff(&self, other: &DenseMatrix) -> f64 {
        assert_eq!(self.rows, other.rows);
        assert_eq!(self.cols, other.cols);
        self.data
            .iter()
            .zip(&other.data)
            .fold(0.0_f64, |m, (&x, &y)| m.max((x - y).abs()))
    }
}

impl std::ops::Index<(usize, usize)> for DenseMatrix {
    type Output = f64;
    fn index(&self, (i, j): (usize, usize)) -> &f64 {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for DenseMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut f64 {
        &mut self.data[i * self.cols + j]
    }
}

fn require_finite(name: &'static str, value: f64) -> Result<()> {
    if value.is_finite() {
        Ok(())
    } else {
        Err(Error::NonFinite { name, value })
    }
}

impl DoubleConstant {
    /// Builds M(a, t) = (a − t)·I + t·1 of dimension n.
    ///
    /// No arrays are allocated; the value is just the three scalars.
    pub fn new(n: usize, a: f64, t: f64) -> Result<Self> {
        if n == 0 {
            return Err(Error::ZeroDimension);
        }
        require_finite("diagonal constant a", a)?;
        require_finite("off-diagonal constant t", t)?;
        Ok(DoubleConstant { n, a, t })
    }

    /// The n×n zero matrix.
    pub fn zero(n: usize) -> Result<Self> {
        Self::new(n, 0.0, 0.0)
    }

    /// The n×n identity matrix.
    pub fn identity(n: usize) -> Result<Self> {
        Self::new(n, 1.0, 0.0)
    }

    /// The constant matrix c·1.
    pub fn constant(n: usize, c: f64) -> Result<Self> {
        Self::new(n, c, c)
    }

    /// The centering matrix C = M(1 − 1/n, −1/n) = I − 1/n.
    ///
    /// The stored constants are chosen so that the minor eigenvalue
    /// evaluates to exactly 0.0 for every n: with a = (n−1)·u and
    /// t = −u, the row sum a + (n−1)·t cancels bit for bit. Singularity,
    /// rank and classification of centering matrices therefore never
    /// depend on a tolerance. Among the admissible representations of
    /// 1/n the constructor prefers one whose major eigenvalue is exactly
    /// 1.0; for the remaining n it is 1 to within one ulp.
    pub fn centering(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::ZeroDimension);
        }
        let base = 1.0 / n as f64;
        let candidates = [
            base,
            base.next_up(),
            base.next_down(),
            base.next_up().next_up(),
            base.next_down().next_down(),
        ];
        let nm1 = n as f64 - 1.0;
        let mut fallback = None;
        for &u in &candidates {
            let m = DoubleConstant {
                n,
                a: nm1 * u,
                t: -u,
            };
            if m.lambda_minor() == 0.0 {
                if m.lambda_major() == 1.0 {
                    return Ok(m);
                }
                if fallback.is_none() {
                    fallback = Some(m);
                }
            }
        }
        Ok(fallback.expect("a = (n-1)*u forces an exactly zero minor eigenvalue"))
    }

    /// The mean matrix 1/n, the complementary projection to the
    /// centering matrix.
    pub fn mean_matrix(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::ZeroDimension);
        }
        let inv_n = 1.0 / n as f64;
        Self::new(n, inv_n, inv_n)
    }

    /// Lower limiting equicorrelation matrix M(1, −1/(n−1)), the ρ →
    /// −1/(n−1) limit of the equicorrelation family. Needs n ≥ 2.
    pub fn equicorrelation_lower_limit(n: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::InsufficientData {
                needed: 2,
                found: n,
            });
        }
        Self::new(n, 1.0, -1.0 / (n as f64 - 1.0))
    }

    /// Upper limiting equicorrelation matrix M(1, 1), the ρ → 1 limit.
    pub fn equicorrelation_upper_limit(n: usize) -> Result<Self> {
        Self::new(n, 1.0, 1.0)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// The diagonal constant a.
    pub fn diag(&self) -> f64 {
        self.a
    }

    /// The off-diagonal constant t.
    pub fn off_diag(&self) -> f64 {
        self.t
    }

    /// Major eigenvalue λ* = a − t, multiplicity n − 1.
    pub fn lambda_major(&self) -> f64 {
        self.a - self.t
    }

    /// Minor eigenvalue λ** = a − t + nt, multiplicity 1.
    ///
    /// Evaluated as the row sum a + (n−1)·t; together with the
    /// representations picked by [`DoubleConstant::centering`] this makes
    /// the projection's zero eigenvalue exact.
    pub fn lambda_minor(&self) -> f64 {
        self.a + (self.n as f64 - 1.0) * self.t
    }

    /// Both eigenvalues, bundled with the dimension.
    pub fn eigenvalues(&self) -> CanonicalForm {
        CanonicalForm {
            n: self.n,
            lambda_major: self.lambda_major(),
            lambda_minor: self.lambda_minor(),
        }
    }

    /// det M = λ*^(n−1) · λ**.
    ///
    /// Closed form only; large n with |λ| > 1 overflows to ±∞ under the
    /// usual IEEE rules rather than erroring.
    pub fn determinant(&self) -> f64 {
        let c = self.eigenvalues();
        pow_int(c.lambda_major, self.n as u32 - 1) * c.lambda_minor
    }

    /// Characteristic polynomial p(λ) = (λ* − λ)^(n−1) (λ** − λ).
    ///
    /// p(0) reproduces the determinant exactly (same expression), and p
    /// vanishes at both eigenvalues.
    pub fn char_poly(&self, lambda: f64) -> f64 {
        let c = self.eigenvalues();
        pow_int(c.lambda_major - lambda, self.n as u32 - 1) * (c.lambda_minor - lambda)
    }

    /// tr M = n·a, which also equals λ** + (n−1)·λ*.
    pub fn trace(&self) -> f64 {
        self.n as f64 * self.a
    }

    /// Places the matrix in its class, treating |x| ≤ tol as zero for
    /// every degeneracy test.
    pub fn classify(&self, tol: f64) -> MatrixClass {
        debug_assert!(tol >= 0.0);
        let is_zero = |x: f64| x.abs() <= tol;
        let lam_major = self.lambda_major();
        let lam_minor = self.lambda_minor();
        if is_zero(self.t) {
            if is_zero(self.a) {
                MatrixClass::Zero
            } else {
                MatrixClass::ScaledIdentity
            }
        } else if is_zero(lam_major) {
            // a = t ≠ 0: the constant matrix.
            MatrixClass::NonZeroConstant
        } else if is_zero(lam_minor) {
            MatrixClass::CenteringProportional
        } else if lam_major > 0.0 && lam_minor > 0.0 {
            MatrixClass::PositiveDefinite
        } else if lam_major < 0.0 && lam_minor < 0.0 {
            MatrixClass::NegativeDefinite
        } else {
            MatrixClass::Indefinite
        }
    }

    /// Matrix rank with |x| ≤ tol as the zero test: n for the
    /// non-singular classes, n − 1 when only λ** vanishes, 1 for a
    /// nonzero constant matrix, 0 for the zero matrix.
    pub fn rank(&self, tol: f64) -> usize {
        match self.classify(tol) {
            MatrixClass::Zero => 0,
            MatrixClass::NonZeroConstant => 1,
            MatrixClass::CenteringProportional => self.n - 1,
            _ => self.n,
        }
    }

    /// Fills the n×n dense array: a on the diagonal, t elsewhere.
    pub fn materialize(&self) -> Result<DenseMatrix> {
        let len = self
            .n
            .checked_mul(self.n)
            .filter(|&l| l <= isize::MAX as usize / std::mem::size_of::<f64>())
            .ok_or(Error::AllocationOverflow { n: self.n })?;
        let mut data = vec![self.t; len];
        for i in 0..self.n {
            data[i * self.n + i] = self.a;
        }
        Ok(DenseMatrix {
            rows: self.n,
            cols: self.n,
            data,
        })
    }

    /// Applies the matrix to a vector in O(n) without materializing:
    /// M x = (a − t)·x + t·(Σx)·1.
    pub fn apply(&self, x: &[f64]) -> Result<Vec<f64>> {
        if x.len() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                found: x.len(),
            });
        }
        let sum: f64 = x.iter().sum();
        let scale = self.lambda_major();
        Ok(x.iter().map(|&v| scale * v + self.t * sum).collect())
    }

    /// Writes M as A·b1 + T·b2 over any two non-proportional
    /// double-constant matrices of the same dimension, solving
    ///
    /// ```text
    /// a = A·a₁ + T·a₂      t = A·t₁ + T·t₂
    /// ```
    ///
    /// The pair (A, T) = ((a·t₂ − a₂·t), (a₁·t − a·t₁)) / (a₁t₂ − a₂t₁).
    pub fn decompose_in_basis(
        &self,
        b1: &DoubleConstant,
        b2: &DoubleConstant,
    ) -> Result<(f64, f64)> {
        if b1.n != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                found: b1.n,
            });
        }
        if b2.n != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                found: b2.n,
            });
        }
        let det = b1.a * b2.t - b2.a * b1.t;
        // Proportionality test at machine scale relative to the entries.
        let scale = b1.a.abs().max(b1.t.abs()).max(b2.a.abs()).max(b2.t.abs());
        if det.abs() <= f64::EPSILON * scale * scale {
            return Err(Error::ProportionalBasis { determinant: det });
        }
        let weight1 = (self.a * b2.t - b2.a * self.t) / det;
        let weight2 = (b1.a * self.t - self.a * b1.t) / det;
        Ok((weight1, weight2))
    }

    /// The canonical decomposition M = λ*·C + λ**·(1/n): weights on the
    /// centering matrix and the mean matrix are exactly the eigenvalues.
    pub fn decompose_canonical(&self) -> (f64, f64) {
        let c = self.eigenvalues();
        (c.lambda_major, c.lambda_minor)
    }

    /// Weights of the same decomposition written over the limiting
    /// equicorrelation matrices: M = (n−1)/n·λ*·Σ*² + 1/n·λ**·Σ**²,
    /// where Σ*² = M(1, −1/(n−1)) and Σ**² = M(1, 1).
    pub fn decompose_equicorrelation_limits(&self) -> (f64, f64) {
        let c = self.eigenvalues();
        let n = self.n as f64;
        ((n - 1.0) / n * c.lambda_major, c.lambda_minor / n)
    }
}

impl CanonicalForm {
    /// Builds the eigenvalue view directly.
    pub fn new(n: usize, lambda_major: f64, lambda_minor: f64) -> Result<Self> {
        if n == 0 {
            return Err(Error::ZeroDimension);
        }
        require_finite("major eigenvalue", lambda_major)?;
        require_finite("minor eigenvalue", lambda_minor)?;
        Ok(CanonicalForm {
            n,
            lambda_major,
            lambda_minor,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn lambda_major(&self) -> f64 {
        self.lambda_major
    }

    pub fn lambda_minor(&self) -> f64 {
        self.lambda_minor
    }

    /// Recovers the element constants:
    ///
    /// ```text
    /// a = (λ** + (n − 1)·λ*)/n      t = (λ** − λ*)/n
    /// ```
    pub fn matrix(&self) -> DoubleConstant {
        let n = self.n as f64;
        let a = (self.lambda_minor + (n - 1.0) * self.lambda_major) / n;
        let t = (self.lambda_minor - self.lambda_major) / n;
        DoubleConstant { n: self.n, a, t }
    }
}

/// x^k by binary exponentiation with x^0 = 1 for every x, so determinant
/// and characteristic-polynomial formulas stay total at n = 1.
fn pow_int(x: f64, k: u32) -> f64 {
    x.powi(k as i32)
}
