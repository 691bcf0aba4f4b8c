//! The unitary DFT matrix and the Fourier-space view of double-constant
//! transformation.
//!
//! Every double-constant matrix is diagonalized by the same symmetric
//! unitary DFT matrix U with entries ω^{jk}/√n, ω = exp(−2πi/n). Applying
//! M to a vector is therefore the same as scaling its spectrum: the zero
//! frequency by λ** and every other frequency by λ*. This module computes
//! transforms by direct O(n²) summation — it exists to verify and exploit
//! the duality at moderate n, not to compete with an FFT.

use num_complex::Complex64;

pub use num_complex::Complex64 as Complex;

use crate::error::{Error, Result};
use crate::matrix::{DenseMatrix, DoubleConstant};

/// Complex spectrum of a real vector, one entry per frequency.
pub type ComplexVector = Vec<Complex64>;

/// The symmetric unitary DFT matrix of order n: entry (j, k) is
/// ω^{jk}/√n with ω = exp(−2πi/n).
#[derive(Debug, Clone)]
pub struct UnitaryDFT {
    n: usize,
    entries: Vec<Complex64>,
}

/// ω_n^m for the reduced exponent m = e mod n, evaluated from the angle
/// −2π·m/n. Reducing first keeps the argument small so the roots of
/// unity stay accurate for every exponent.
fn root_of_unity(n: usize, exponent: i64) -> Complex64 {
    let reduced = exponent.rem_euclid(n as i64) as f64;
    let angle = -2.0 * std::f64::consts::PI * reduced / n as f64;
    Complex64::new(angle.cos(), angle.sin())
}

impl UnitaryDFT {
    pub fn new(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::ZeroDimension);
        }
        let scale = 1.0 / (n as f64).sqrt();
        let mut entries = Vec::with_capacity(n * n);
        for j in 0..n {
            for k in 0..n {
                entries.push(root_of_unity(n, (j * k) as i64) * scale);
            }
        }
        Ok(UnitaryDFT { n, entries })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Entry (j, k); the matrix is symmetric, so entry(j, k) and
    /// entry(k, j) are the same computed value.
    pub fn entry(&self, j: usize, k: usize) -> Complex64 {
        self.entries[j * self.n + k]
    }

    /// U·x for a real vector.
    pub fn forward_real(&self, x: &[f64]) -> Result<ComplexVector> {
        if x.len() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                found: x.len(),
            });
        }
        Ok((0..self.n)
            .map(|r| {
                (0..self.n)
                    .map(|s| self.entry(r, s) * x[s])
                    .sum::<Complex64>()
            })
            .collect())
    }

    /// conj(U)·z, the inverse transform.
    pub fn inverse(&self, z: &[Complex64]) -> Result<ComplexVector> {
        if z.len() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                found: z.len(),
            });
        }
        Ok((0..self.n)
            .map(|r| {
                (0..self.n)
                    .map(|s| self.entry(r, s).conj() * z[s])
                    .sum::<Complex64>()
            })
            .collect())
    }
}

/// Unitary DFT of a real vector by direct summation:
/// F_x(r) = (1/√n) Σ_s x_{s+1} exp(−2πirs/n).
pub fn dft(x: &[f64]) -> Result<ComplexVector> {
    if x.is_empty() {
        return Err(Error::EmptyMatrix);
    }
    let n = x.len();
    let scale = 1.0 / (n as f64).sqrt();
    Ok((0..n)
        .map(|r| {
            (0..n)
                .map(|s| root_of_unity(n, (r * s) as i64) * x[s])
                .sum::<Complex64>()
                * scale
        })
        .collect())
}

/// The normalized geometric sum (1/n) Σ_{k<n} exp(−2πirk/n), evaluated
/// as the complex sum. Equals the indicator of r ≡ 0 (mod n); the real
/// part is returned and the imaginary part is checked to be negligible.
pub fn geometric_sum(n: usize, r: i64) -> f64 {
    assert!(n >= 1);
    // Reduce r first so r·k cannot overflow for any integer argument.
    let reduced = r.rem_euclid(n as i64);
    let total: Complex64 = (0..n).map(|k| root_of_unity(n, reduced * k as i64)).sum();
    let mean = total / n as f64;
    debug_assert!(mean.im.abs() <= 1e-12);
    mean.re
}

/// The indicator the geometric sum must reproduce.
pub fn geometric_sum_indicator(n: usize, r: i64) -> f64 {
    if r.rem_euclid(n as i64) == 0 {
        1.0
    } else {
        0.0
    }
}

/// Eigendecomposition M = U·diag(Λ)·conj(U): returns the DFT matrix and
/// the eigenvalue list Λ = (λ**, λ*, …, λ*).
pub fn diagonalize(m: &DoubleConstant) -> Result<(UnitaryDFT, Vec<f64>)> {
    let u = UnitaryDFT::new(m.n())?;
    let c = m.eigenvalues();
    let mut lambda = vec![c.lambda_major(); m.n()];
    lambda[0] = c.lambda_minor();
    Ok((u, lambda))
}

/// Absolute imaginary residue allowed when an inverse transform of
/// mathematically real data is cast back to reals.
pub const IMAGINARY_RESIDUE_TOLERANCE: f64 = 1e-10;

/// Applies M to each column of x through Fourier space: transform, scale
/// the zero frequency by λ** and the rest by λ*, transform back.
///
/// The imaginary parts of the result must cancel; if any exceeds
/// [`IMAGINARY_RESIDUE_TOLERANCE`] the call reports an internal
/// inconsistency instead of silently truncating.
pub fn apply_via_fourier(m: &DoubleConstant, x: &DenseMatrix) -> Result<DenseMatrix> {
    if x.rows() != m.n() {
        return Err(Error::DimensionMismatch {
            expected: m.n(),
            found: x.rows(),
        });
    }
    if x.cols() == 0 {
        return Err(Error::EmptyMatrix);
    }
    let u = UnitaryDFT::new(m.n())?;
    let c = m.eigenvalues();
    let mut out = DenseMatrix::zeros(x.rows(), x.cols());
    for j in 0..x.cols() {
        let column = x.column(j);
        let mut spectrum = u.forward_real(&column)?;
        spectrum[0] *= c.lambda_minor();
        for entry in spectrum.iter_mut().skip(1) {
            *entry *= c.lambda_major();
        }
        let back = u.inverse(&spectrum)?;
        for (i, value) in back.iter().enumerate() {
            if value.im.abs() > IMAGINARY_RESIDUE_TOLERANCE {
                return Err(Error::ImaginaryResidue {
                    max_abs: value.im.abs(),
                });
            }
            out[(i, j)] = value.re;
        }
    }
    Ok(out)
}

/// The dot product (M₁x)·(M₂y) evaluated on the Fourier side:
///
/// ```text
/// λ₁**·λ₂**·F_x(0)·conj(F_y(0)) + λ₁*·λ₂*·Σ_{t≥1} F_x(t)·conj(F_y(t))
/// ```
///
/// The imaginary parts cancel for real data; the real part is returned.
pub fn parseval_product(
    m1: &DoubleConstant,
    m2: &DoubleConstant,
    x: &[f64],
    y: &[f64],
) -> Result<f64> {
    let n = m1.n();
    if m2.n() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: m2.n(),
        });
    }
    if x.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: x.len(),
        });
    }
    if y.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: y.len(),
        });
    }
    let fx = dft(x)?;
    let fy = dft(y)?;
    let c1 = m1.eigenvalues();
    let c2 = m2.eigenvalues();
    let zero_term = fx[0] * fy[0].conj() * (c1.lambda_minor() * c2.lambda_minor());
    let rest: Complex64 = fx
        .iter()
        .zip(&fy)
        .skip(1)
        .map(|(&a, &b)| a * b.conj())
        .sum();
    let total = zero_term + rest * (c1.lambda_major() * c2.lambda_major());
    Ok(total.re)
}

/// ‖M·x‖² evaluated on the Fourier side:
/// λ**²·‖F_x(0)‖² + λ*²·Σ_{t≥1}‖F_x(t)‖². Always nonnegative.
pub fn plancherel_norm(m: &DoubleConstant, x: &[f64]) -> Result<f64> {
    if x.len() != m.n() {
        return Err(Error::DimensionMismatch {
            expected: m.n(),
            found: x.len(),
        });
    }
    let fx = dft(x)?;
    let c = m.eigenvalues();
    let zero = fx[0].norm_sqr() * c.lambda_minor() * c.lambda_minor();
    let rest: f64 = fx.iter().skip(1).map(|z| z.norm_sqr()).sum();
    Ok(zero + rest * c.lambda_major() * c.lambda_major())
}
