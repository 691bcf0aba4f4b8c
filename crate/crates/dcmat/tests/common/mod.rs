//! Shared helpers for the property suites: seeded draws and tolerance
//! comparisons.

#![allow(dead_code)]

use dcmat::matrix::{DenseMatrix, DoubleConstant};
use dcmat::oracle;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    oracle::trial_rng(seed, 0)
}

pub fn uniform(rng: &mut ChaCha8Rng, lo: f64, hi: f64) -> f64 {
    oracle::uniform_in(rng, lo, hi)
}

pub fn usize_in(rng: &mut ChaCha8Rng, lo: usize, hi: usize) -> usize {
    use rand_core::RngCore;
    lo + (rng.next_u64() % (hi - lo + 1) as u64) as usize
}

/// Random matrix with constants drawn uniformly from [lo, hi].
pub fn random_matrix(rng: &mut ChaCha8Rng, n: usize, lo: f64, hi: f64) -> DoubleConstant {
    DoubleConstant::new(n, uniform(rng, lo, hi), uniform(rng, lo, hi)).unwrap()
}

/// Random matrix built from eigenvalues in [lo, hi]; keeps every derived
/// quantity well scaled.
pub fn random_from_eigenvalues(rng: &mut ChaCha8Rng, n: usize, lo: f64, hi: f64) -> DoubleConstant {
    dcmat::CanonicalForm::new(n, uniform(rng, lo, hi), uniform(rng, lo, hi))
        .unwrap()
        .matrix()
}

pub fn random_vec(rng: &mut ChaCha8Rng, n: usize, lo: f64, hi: f64) -> Vec<f64> {
    (0..n).map(|_| uniform(rng, lo, hi)).collect()
}

pub fn random_dense(
    rng: &mut ChaCha8Rng,
    rows: usize,
    cols: usize,
    lo: f64,
    hi: f64,
) -> DenseMatrix {
    let mut m = DenseMatrix::zeros(rows, cols);
    for i in 0..rows {
        for j in 0..cols {
            m[(i, j)] = uniform(rng, lo, hi);
        }
    }
    m
}

/// Distance in representation steps between two doubles of the same sign;
/// `u64::MAX` when the signs differ.
pub fn ulp_distance(x: f64, y: f64) -> u64 {
    if x == y {
        return 0;
    }
    if x.is_sign_negative() != y.is_sign_negative() {
        return u64::MAX;
    }
    let (a, b) = (x.abs().to_bits(), y.abs().to_bits());
    a.abs_diff(b)
}

pub fn assert_close(got: f64, want: f64, tol: f64, context: &str) {
    let scale = 1.0_f64.max(got.abs()).max(want.abs());
    assert!(
        (got - want).abs() <= tol * scale,
        "{context}: {got} vs {want} (tol {tol}, scale {scale})"
    );
}
