//! Dense reference implementations and seeded simulation support.
//!
//! Everything here is deliberately naive: textbook loops, partial
//! pivoting, no blocking. These routines exist so that the closed-form
//! structured operations can be checked against an independent dense
//! route; they bound their use to moderate n and are never called from
//! the structured computation paths.

use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

use crate::error::{Error, Result};
use crate::matrix::DenseMatrix;
use crate::stats::Equicorrelation;

/// Textbook O(r·k·c) matrix product.
pub fn dense_matmul(a: &DenseMatrix, b: &DenseMatrix) -> Result<DenseMatrix> {
    if a.cols() != b.rows() {
        return Err(Error::DimensionMismatch {
            expected: a.cols(),
            found: b.rows(),
        });
    }
    let mut out = DenseMatrix::zeros(a.rows(), b.cols());
    for i in 0..a.rows() {
        for k in 0..a.cols() {
            let aik = a[(i, k)];
            if aik == 0.0 {
                continue;
            }
            for j in 0..b.cols() {
                out[(i, j)] += aik * b[(k, j)];
            }
        }
    }
    Ok(out)
}

/// Dense matrix–vector product.
pub fn dense_matvec(a: &DenseMatrix, x: &[f64]) -> Result<Vec<f64>> {
    if a.cols() != x.len() {
        return Err(Error::DimensionMismatch {
            expected: a.cols(),
            found: x.len(),
        });
    }
    Ok((0..a.rows())
        .map(|i| a.row(i).iter().zip(x).map(|(&m, &v)| m * v).sum())
        .collect())
}

/// Determinant by LU decomposition with partial pivoting; the value is
/// the sign-tracked product of pivots. Singular inputs return 0 (or a
/// value at rounding scale).
pub fn dense_det(a: &DenseMatrix) -> Result<f64> {
    if !a.is_square() {
        return Err(Error::DimensionMismatch {
            expected: a.rows(),
            found: a.cols(),
        });
    }
    let n = a.rows();
    let mut lu = a.clone();
    let mut det = 1.0;
    for col in 0..n {
        let mut pivot_row = col;
        let mut pivot_val = lu[(col, col)].abs();
        for r in col + 1..n {
            if lu[(r, col)].abs() > pivot_val {
                pivot_val = lu[(r, col)].abs();
                pivot_row = r;
            }
        }
        if pivot_val == 0.0 {
            return Ok(0.0);
        }
        if pivot_row != col {
            for j in 0..n {
                let tmp = lu[(col, j)];
                lu[(col, j)] = lu[(pivot_row, j)];
                lu[(pivot_row, j)] = tmp;
            }
            det = -det;
        }
        det *= lu[(col, col)];
        for r in col + 1..n {
            let factor = lu[(r, col)] / lu[(col, col)];
            for j in col..n {
                lu[(r, j)] -= factor * lu[(col, j)];
            }
        }
    }
    Ok(det)
}

/// Solves a·x = b by Gaussian elimination with partial pivoting.
/// Declares the matrix singular when a pivot falls below
/// 1e−12 · max|a|.
pub fn dense_solve(a: &DenseMatrix, b: &[f64]) -> Result<Vec<f64>> {
    if !a.is_square() {
        return Err(Error::DimensionMismatch {
            expected: a.rows(),
            found: a.cols(),
        });
    }
    if b.len() != a.rows() {
        return Err(Error::DimensionMismatch {
            expected: a.rows(),
            found: b.len(),
        });
    }
    let n = a.rows();
    let tol = 1e-12 * a.max_abs();
    let mut work = a.clone();
    let mut rhs = b.to_vec();
    for col in 0..n {
        let mut pivot_row = col;
        for r in col + 1..n {
            if work[(r, col)].abs() > work[(pivot_row, col)].abs() {
                pivot_row = r;
            }
        }
        if work[(pivot_row, col)].abs() <= tol {
            return Err(Error::Singular {
                which: crate::error::EigenvalueKind::Minor,
            });
        }
        if pivot_row != col {
            for j in 0..n {
                let tmp = work[(col, j)];
                work[(col, j)] = work[(pivot_row, j)];
                work[(pivot_row, j)] = tmp;
            }
            rhs.swap(col, pivot_row);
        }
        for r in col + 1..n {
            let factor = work[(r, col)] / work[(col, col)];
            if factor == 0.0 {
                continue;
            }
            for j in col..n {
                work[(r, j)] -= factor * work[(col, j)];
            }
            rhs[r] -= factor * rhs[col];
        }
    }
    let mut x = vec![0.0; n];
    for row in (0..n).rev() {
        let mut acc = rhs[row];
        for j in row + 1..n {
            acc -= work[(row, j)] * x[j];
        }
        x[row] = acc / work[(row, row)];
    }
    Ok(x)
}

/// Matrix inverse by Gauss–Jordan elimination with partial pivoting.
pub fn dense_inverse(a: &DenseMatrix) -> Result<DenseMatrix> {
    if !a.is_square() {
        return Err(Error::DimensionMismatch {
            expected: a.rows(),
            found: a.cols(),
        });
    }
    let n = a.rows();
    let tol = 1e-12 * a.max_abs();
    let mut work = a.clone();
    let mut inv = DenseMatrix::identity(n);
    for col in 0..n {
        let mut pivot_row = col;
        for r in col + 1..n {
            if work[(r, col)].abs() > work[(pivot_row, col)].abs() {
                pivot_row = r;
            }
        }
        if work[(pivot_row, col)].abs() <= tol {
            return Err(Error::Singular {
                which: crate::error::EigenvalueKind::Minor,
            });
        }
        if pivot_row != col {
            for j in 0..n {
                let tmp = work[(col, j)];
                work[(col, j)] = work[(pivot_row, j)];
                work[(pivot_row, j)] = tmp;
                let tmp = inv[(col, j)];
                inv[(col, j)] = inv[(pivot_row, j)];
                inv[(pivot_row, j)] = tmp;
            }
        }
        let pivot = work[(col, col)];
        for j in 0..n {
            work[(col, j)] /= pivot;
            inv[(col, j)] /= pivot;
        }
        for r in 0..n {
            if r == col {
                continue;
            }
            let factor = work[(r, col)];
            if factor == 0.0 {
                continue;
            }
            for j in 0..n {
                work[(r, j)] -= factor * work[(col, j)];
                inv[(r, j)] -= factor * inv[(col, j)];
            }
        }
    }
    Ok(inv)
}

/// Numerical rank by row echelon reduction: pivots with magnitude
/// ≤ tol · max|a| count as zero.
pub fn dense_rank(a: &DenseMatrix, tol: f64) -> usize {
    let mut work = a.clone();
    let threshold = tol * work.max_abs().max(1.0);
    let mut rank = 0;
    let mut pivot_col = 0;
    while rank < work.rows() && pivot_col < work.cols() {
        let mut pivot_row = rank;
        for r in rank + 1..work.rows() {
            if work[(r, pivot_col)].abs() > work[(pivot_row, pivot_col)].abs() {
                pivot_row = r;
            }
        }
        if work[(pivot_row, pivot_col)].abs() <= threshold {
            pivot_col += 1;
            continue;
        }
        if pivot_row != rank {
            for j in 0..work.cols() {
                let tmp = work[(rank, j)];
                work[(rank, j)] = work[(pivot_row, j)];
                work[(pivot_row, j)] = tmp;
            }
        }
        for r in rank + 1..work.rows() {
            let factor = work[(r, pivot_col)] / work[(rank, pivot_col)];
            for j in pivot_col..work.cols() {
                work[(r, j)] -= factor * work[(rank, j)];
            }
        }
        rank += 1;
        pivot_col += 1;
    }
    rank
}

/// Eigenvalues of a symmetric matrix by cyclic Jacobi rotations.
///
/// Handles repeated eigenvalues robustly, which is what the structured
/// matrices here always have. Returned unsorted.
pub fn dense_sym_eigenvalues(a: &DenseMatrix) -> Result<Vec<f64>> {
    if !a.is_square() {
        return Err(Error::DimensionMismatch {
            expected: a.rows(),
            found: a.cols(),
        });
    }
    let n = a.rows();
    let mut work = a.clone();
    let scale = work.max_abs().max(1.0);
    for _sweep in 0..64 {
        let mut off = 0.0_f64;
        for i in 0..n {
            for j in i + 1..n {
                off = off.max(work[(i, j)].abs());
            }
        }
        if off <= 1e-14 * scale {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                let apq = work[(p, q)];
                if apq.abs() <= 1e-300 {
                    continue;
                }
                let theta = (work[(q, q)] - work[(p, p)]) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..n {
                    let akp = work[(k, p)];
                    let akq = work[(k, q)];
                    work[(k, p)] = c * akp - s * akq;
                    work[(k, q)] = s * akp + c * akq;
                }
                for k in 0..n {
                    let apk = work[(p, k)];
                    let aqk = work[(q, k)];
                    work[(p, k)] = c * apk - s * aqk;
                    work[(q, k)] = s * apk + c * aqk;
                }
            }
        }
    }
    Ok((0..n).map(|i| work[(i, i)]).collect())
}

/// Matrix exponential by scaling and squaring with a truncated Taylor
/// series. Error stays below ~1e−10 for max-norm up to about 10.
pub fn dense_expm(a: &DenseMatrix) -> Result<DenseMatrix> {
    if !a.is_square() {
        return Err(Error::DimensionMismatch {
            expected: a.rows(),
            found: a.cols(),
        });
    }
    let n = a.rows();
    let norm = a.max_abs() * n as f64;
    let squarings = if norm > 0.5 {
        (norm / 0.5).log2().ceil() as u32
    } else {
        0
    };
    let scale = 0.5_f64.powi(squarings as i32);
    let mut scaled = a.clone();
    for i in 0..n {
        for j in 0..n {
            scaled[(i, j)] *= scale;
        }
    }
    let mut result = DenseMatrix::identity(n);
    let mut term = DenseMatrix::identity(n);
    for k in 1..=30 {
        term = dense_matmul(&term, &scaled)?;
        let inv_k = 1.0 / k as f64;
        for i in 0..n {
            for j in 0..n {
                term[(i, j)] *= inv_k;
                result[(i, j)] += term[(i, j)];
            }
        }
        if term.max_abs() < 1e-18 * result.max_abs().max(1.0) {
            break;
        }
    }
    for _ in 0..squarings {
        result = dense_matmul(&result, &result)?;
    }
    Ok(result)
}

/// Deterministic per-trial random stream.
///
/// ChaCha8 is a counter-based generator: the same `seed` always produces
/// the same stream on every platform, and distinct `trial` indices select
/// disjoint streams, so trials can be evaluated in any order (or in
/// parallel) without changing a single draw.
pub fn trial_rng(seed: u64, trial: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    rng
}

/// Uniform draw in (0, 1), strictly exclusive on both ends: the high 53
/// bits of one `u64` plus a half-step offset.
pub fn uniform_open01(rng: &mut ChaCha8Rng) -> f64 {
    ((rng.next_u64() >> 11) as f64 + 0.5) * (1.0 / 9007199254740992.0)
}

/// Uniform draw in [lo, hi).
pub fn uniform_in(rng: &mut ChaCha8Rng, lo: f64, hi: f64) -> f64 {
    lo + (hi - lo) * ((rng.next_u64() >> 11) as f64) * (1.0 / 9007199254740992.0)
}

/// Standard normal draw by the inverse CDF.
///
/// Uses Acklam's rational approximation of the normal quantile function
/// (relative error below 1.15e−9). A fixed seed must reproduce the same
/// sample stream in every build, so no library sampler with an unpinned
/// algorithm is involved.
pub fn standard_normal(rng: &mut ChaCha8Rng) -> f64 {
    inverse_normal_cdf(uniform_open01(rng))
}

/// Acklam's approximation to Φ⁻¹(p) for p ∈ (0, 1).
pub fn inverse_normal_cdf(p: f64) -> f64 {
    const A: [f64; 6] = [
        -3.969683028665376e+01,
        2.209460984245205e+02,
        -2.759285104469687e+02,
        1.38357751867269e+02,
        -3.066479806614716e+01,
        2.506628277459239e+00,
    ];
    const B: [f64; 5] = [
        -5.447609879822406e+01,
        1.615858368580409e+02,
        -1.556989798598866e+02,
        6.680131188771972e+01,
        -1.328068155288572e+01,
    ];
    const C: [f64; 6] = [
        -7.784894002430293e-03,
        -3.223964580411365e-01,
        -2.400758277161838e+00,
        -2.549732539343734e+00,
        4.374664141464968e+00,
        2.938163982698783e+00,
    ];
    const D: [f64; 4] = [
        7.784695709041462e-03,
        3.224671290700398e-01,
        2.445134137142996e+00,
        3.754408661907416e+00,
    ];
    const P_LOW: f64 = 0.02425;
    assert!(p > 0.0 && p < 1.0, "quantile argument must be in (0, 1)");
    if p < P_LOW {
        let q = (-2.0 * p.ln()).sqrt();
        (((((C[0] * q + C[1]) * q + C[2]) * q + C[3]) * q + C[4]) * q + C[5])
            / ((((D[0] * q + D[1]) * q + D[2]) * q + D[3]) * q + 1.0)
    } else if p <= 1.0 - P_LOW {
        let q = p - 0.5;
        let r = q * q;
        (((((A[0] * r + A[1]) * r + A[2]) * r + A[3]) * r + A[4]) * r + A[5]) * q
            / (((((B[0] * r + B[1]) * r + B[2]) * r + B[3]) * r + B[4]) * r + 1.0)
    } else {
        let q = (-2.0 * (1.0 - p).ln()).sqrt();
        -(((((C[0] * q + C[1]) * q + C[2]) * q + C[3]) * q + C[4]) * q + C[5])
            / ((((D[0] * q + D[1]) * q + D[2]) * q + D[3]) * q + 1.0)
    }
}

/// Running mean and spread via Welford's update.
#[derive(Debug, Clone, Copy, Default)]
pub struct RunningMoments {
    count: u64,
    mean: f64,
    m2: f64,
}

impl RunningMoments {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, x: f64) {
        self.count += 1;
        let delta = x - self.mean;
        self.mean += delta / self.count as f64;
        self.m2 += delta * (x - self.mean);
    }

    pub fn count(&self) -> u64 {
        self.count
    }

    pub fn mean(&self) -> f64 {
        self.mean
    }

    /// Sample variance (n − 1 divisor); 0 for fewer than two samples.
    pub fn variance(&self) -> f64 {
        if self.count > 1 {
            self.m2 / (self.count - 1) as f64
        } else {
            0.0
        }
    }

    /// Standard error of the mean.
    pub fn standard_error(&self) -> f64 {
        if self.count > 0 {
            (self.variance() / self.count as f64).sqrt()
        } else {
            0.0
        }
    }
}

/// Simulates `trials` draws of X = σ·Σ_ρ·ε with ε IID standard normal
/// (Σ_ρ the equicorrelation root matrix) and returns the sample mean and
/// standard error of ‖X − X̄‖².
///
/// The mean of X is irrelevant to the statistic — centering removes it —
/// so the simulation sets it to zero.
pub fn monte_carlo_mean_ss(
    n: usize,
    sigma: f64,
    rho: f64,
    trials: u64,
    seed: u64,
) -> Result<(f64, f64)> {
    if trials < 1_000 {
        return Err(Error::InsufficientData {
            needed: 1_000,
            found: trials as usize,
        });
    }
    let equi = Equicorrelation::new(n, rho)?;
    let root = equi.forms().root;
    let mut moments = RunningMoments::new();
    let mut eps = vec![0.0; n];
    for trial in 0..trials {
        let mut rng = trial_rng(seed, trial);
        for e in eps.iter_mut() {
            *e = standard_normal(&mut rng);
        }
        let x = root.apply(&eps)?;
        let mean = x.iter().sum::<f64>() / n as f64;
        let ss: f64 = x
            .iter()
            .map(|&v| {
                let d = sigma * (v - mean);
                d * d
            })
            .sum();
        moments.push(ss);
    }
    Ok((moments.mean(), moments.standard_error()))
}
