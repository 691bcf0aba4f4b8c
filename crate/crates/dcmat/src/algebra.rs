//! Closure of the double-constant matrices under algebra and analytic
//! functions.
//!
//! Linear combinations act on the constants, products and analytic
//! functions act on the eigenvalues; either way the result is again a
//! double-constant matrix, because all of them share the same eigenvector
//! system. Every operation here works on (n, a, t) triples in O(1) per
//! matrix — no dense arrays.

use crate::error::{EigenvalueKind, Error, Result};
use crate::matrix::{CanonicalForm, DenseMatrix, DoubleConstant};

/// A scalar function together with its domain, to be applied to the two
/// eigenvalues. The resulting matrix has constants
///
/// ```text
/// ã = (f(λ**) + (n−1)·f(λ*))/n      t̃ = (f(λ**) − f(λ*))/n
/// ```
pub struct AnalyticSpec {
    name: &'static str,
    f: Box<dyn Fn(f64) -> f64 + Send + Sync>,
    domain: Box<dyn Fn(f64) -> bool + Send + Sync>,
}

impl AnalyticSpec {
    pub fn new(
        name: &'static str,
        f: impl Fn(f64) -> f64 + Send + Sync + 'static,
        domain: impl Fn(f64) -> bool + Send + Sync + 'static,
    ) -> Self {
        AnalyticSpec {
            name,
            f: Box::new(f),
            domain: Box::new(domain),
        }
    }

    /// A function defined on the whole real line.
    pub fn total(name: &'static str, f: impl Fn(f64) -> f64 + Send + Sync + 'static) -> Self {
        Self::new(name, f, |_| true)
    }

    pub fn identity() -> Self {
        Self::total("identity", |x| x)
    }

    pub fn exp() -> Self {
        Self::total("exp", f64::exp)
    }

    pub fn ln() -> Self {
        Self::new("log", f64::ln, |x| x > 0.0)
    }

    pub fn sqrt() -> Self {
        Self::new("sqrt", f64::sqrt, |x| x >= 0.0)
    }

    pub fn name(&self) -> &'static str {
        self.name
    }

    pub fn eval(&self, x: f64) -> f64 {
        (self.f)(x)
    }

    pub fn admits(&self, x: f64) -> bool {
        (self.domain)(x)
    }
}

impl std::fmt::Debug for AnalyticSpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("AnalyticSpec")
            .field("name", &self.name)
            .finish()
    }
}

/// Ordered positive block sizes n₁ + … + n_k for block decompositions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Partition {
    blocks: Vec<usize>,
}

impl Partition {
    pub fn new(blocks: Vec<usize>) -> Result<Self> {
        if blocks.is_empty() {
            return Err(Error::EmptySequence);
        }
        if blocks.contains(&0) {
            return Err(Error::ZeroDimension);
        }
        Ok(Partition { blocks })
    }

    pub fn blocks(&self) -> &[usize] {
        &self.blocks
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        false // construction requires at least one block
    }

    pub fn total(&self) -> usize {
        self.blocks.iter().sum()
    }

    /// Starting offset of each block in the concatenated vector.
    pub fn offsets(&self) -> Vec<usize> {
        let mut offsets = Vec::with_capacity(self.blocks.len());
        let mut acc = 0;
        for &b in &self.blocks {
            offsets.push(acc);
            acc += b;
        }
        offsets
    }
}

/// Result of splitting an n×n double-constant matrix over a partition:
/// chosen double-constant blocks on the diagonal plus the dense remainder
/// that restores the original when added back.
#[derive(Debug, Clone)]
pub struct BlockDecomposition {
    pub diagonal_blocks: Vec<DoubleConstant>,
    pub remainder: DenseMatrix,
}

fn shared_dimension<'a, I>(matrices: I) -> Result<usize>
where
    I: IntoIterator<Item = &'a DoubleConstant>,
{
    let mut iter = matrices.into_iter();
    let first = iter.next().ok_or(Error::EmptySequence)?;
    let n = first.n();
    for m in iter {
        if m.n() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: m.n(),
            });
        }
    }
    Ok(n)
}

/// Σ κᵢ·M(aᵢ, tᵢ) = M(Σ κᵢ·aᵢ, Σ κᵢ·tᵢ).
pub fn linear_combination(terms: &[(f64, DoubleConstant)]) -> Result<DoubleConstant> {
    let n = shared_dimension(terms.iter().map(|(_, m)| m))?;
    let a = terms.iter().map(|(k, m)| k * m.diag()).sum();
    let t = terms.iter().map(|(k, m)| k * m.off_diag()).sum();
    DoubleConstant::new(n, a, t)
}

/// Matrix product of any number of factors. Eigenvalues multiply:
/// λ_×* = Πλᵢ*, λ_×** = Πλᵢ**, so the product is commutative and
/// associative and the factor order never matters.
pub fn product(factors: &[DoubleConstant]) -> Result<DoubleConstant> {
    let n = shared_dimension(factors)?;
    let lambda_major = factors.iter().map(|m| m.lambda_major()).product();
    let lambda_minor = factors.iter().map(|m| m.lambda_minor()).product();
    Ok(CanonicalForm::new(n, lambda_major, lambda_minor)?.matrix())
}

/// Applies f to both eigenvalues; fails if either one is outside the
/// domain of f, naming the offending eigenvalue.
pub fn apply_analytic(m: &DoubleConstant, spec: &AnalyticSpec) -> Result<DoubleConstant> {
    let c = m.eigenvalues();
    if !spec.admits(c.lambda_major()) {
        return Err(Error::DomainViolation {
            op: spec.name(),
            which: EigenvalueKind::Major,
            value: c.lambda_major(),
        });
    }
    if !spec.admits(c.lambda_minor()) {
        return Err(Error::DomainViolation {
            op: spec.name(),
            which: EigenvalueKind::Minor,
            value: c.lambda_minor(),
        });
    }
    Ok(CanonicalForm::new(
        m.n(),
        spec.eval(c.lambda_major()),
        spec.eval(c.lambda_minor()),
    )?
    .matrix())
}

/// True when y is mathematically an integer (and small enough that the
/// floating-point representation is unambiguous about it).
fn as_exact_integer(y: f64) -> Option<i32> {
    if y.fract() == 0.0 && y.abs() <= i32::MAX as f64 {
        Some(y as i32)
    } else {
        None
    }
}

/// M^y through the eigenvalues.
///
/// Integer exponents use repeated multiplication, so any matrix admits a
/// nonnegative integer power (including singular ones) and any
/// non-singular matrix admits a negative integer power. Fractional
/// exponents require both eigenvalues positive.
pub fn power(m: &DoubleConstant, y: f64) -> Result<DoubleConstant> {
    let c = m.eigenvalues();
    match as_exact_integer(y) {
        Some(k) if k >= 0 => {
            Ok(
                CanonicalForm::new(m.n(), c.lambda_major().powi(k), c.lambda_minor().powi(k))?
                    .matrix(),
            )
        }
        Some(k) => {
            for (which, lam) in [
                (EigenvalueKind::Major, c.lambda_major()),
                (EigenvalueKind::Minor, c.lambda_minor()),
            ] {
                if lam == 0.0 {
                    return Err(Error::DomainViolation {
                        op: "negative integer power",
                        which,
                        value: lam,
                    });
                }
            }
            Ok(
                CanonicalForm::new(m.n(), c.lambda_major().powi(k), c.lambda_minor().powi(k))?
                    .matrix(),
            )
        }
        None => {
            for (which, lam) in [
                (EigenvalueKind::Major, c.lambda_major()),
                (EigenvalueKind::Minor, c.lambda_minor()),
            ] {
                if lam <= 0.0 {
                    return Err(Error::DomainViolation {
                        op: "fractional power",
                        which,
                        value: lam,
                    });
                }
            }
            Ok(
                CanonicalForm::new(m.n(), c.lambda_major().powf(y), c.lambda_minor().powf(y))?
                    .matrix(),
            )
        }
    }
}

/// M⁻¹, defined when both eigenvalues are nonzero. The inverse has
/// eigenvalues 1/λ* and 1/λ**; in element form
/// M⁻¹ = 1/(a−t) · [I − t/(a−t+nt) · 1].
pub fn inverse(m: &DoubleConstant) -> Result<DoubleConstant> {
    let c = m.eigenvalues();
    if c.lambda_major() == 0.0 {
        return Err(Error::Singular {
            which: EigenvalueKind::Major,
        });
    }
    if c.lambda_minor() == 0.0 {
        return Err(Error::Singular {
            which: EigenvalueKind::Minor,
        });
    }
    Ok(CanonicalForm::new(m.n(), 1.0 / c.lambda_major(), 1.0 / c.lambda_minor())?.matrix())
}

/// Principal square root, defined for nonnegative eigenvalues. Squaring
/// the result (via [`product`]) recovers the input.
pub fn sqrt_principal(m: &DoubleConstant) -> Result<DoubleConstant> {
    apply_analytic(m, &AnalyticSpec::sqrt())
}

/// Matrix exponential: eigenvalues exponentiate, so the result is always
/// positive definite (overflow to ∞ is allowed under IEEE rules).
pub fn exp_m(m: &DoubleConstant) -> Result<DoubleConstant> {
    apply_analytic(m, &AnalyticSpec::exp())
}

/// Principal matrix logarithm, defined when both eigenvalues are
/// strictly positive.
///
/// Computed as ln(λ*)·I + (ln λ** − ln λ*)/n · 1 rather than the form
/// that factors out ln(a−t): the factored expression divides by zero at
/// λ* = 1 even though the logarithm is perfectly well defined there.
pub fn log_m(m: &DoubleConstant) -> Result<DoubleConstant> {
    apply_analytic(m, &AnalyticSpec::ln())
}

/// Splits M over the partition, with caller-chosen constants (a_ℓ, t_ℓ)
/// for the diagonal blocks. The remainder carries M_ℓ(a − a_ℓ, t − t_ℓ)
/// on the diagonal and t·1 off the diagonal, so that diagonal blocks plus
/// remainder reassemble M exactly.
pub fn block_decompose(
    m: &DoubleConstant,
    partition: &Partition,
    inner_constants: &[(f64, f64)],
) -> Result<BlockDecomposition> {
    if partition.total() != m.n() {
        return Err(Error::PartitionMismatch {
            expected: m.n(),
            found: partition.total(),
        });
    }
    if inner_constants.len() != partition.len() {
        return Err(Error::ConstantsLengthMismatch {
            expected: partition.len(),
            found: inner_constants.len(),
        });
    }
    let diagonal_blocks = partition
        .blocks()
        .iter()
        .zip(inner_constants)
        .map(|(&size, &(a, t))| DoubleConstant::new(size, a, t))
        .collect::<Result<Vec<_>>>()?;

    let n = m.n();
    let t = m.off_diag();
    let mut remainder = DenseMatrix::zeros(n, n);
    for v in 0..n {
        for w in 0..n {
            remainder[(v, w)] = t;
        }
    }
    let offsets = partition.offsets();
    for (block, (&size, &(a_l, t_l))) in partition.blocks().iter().zip(inner_constants).enumerate()
    {
        let start = offsets[block];
        for v in start..start + size {
            for w in start..start + size {
                remainder[(v, w)] = if v == w { m.diag() - a_l } else { t - t_l };
            }
        }
    }
    Ok(BlockDecomposition {
        diagonal_blocks,
        remainder,
    })
}

/// [`block_decompose`] with the centering constants a_ℓ = 1 − 1/n_ℓ,
/// t_ℓ = −1/n_ℓ for every block, the choice that splits a centering
/// matrix into per-block centering matrices plus a mean-coupling
/// remainder with diagonal blocks (1/n)·w_ℓ·1, w_ℓ = (n − n_ℓ)/n_ℓ.
pub fn block_decompose_centering(
    m: &DoubleConstant,
    partition: &Partition,
) -> Result<BlockDecomposition> {
    let constants: Vec<(f64, f64)> = partition
        .blocks()
        .iter()
        .map(|&size| {
            let c = DoubleConstant::centering(size)?;
            Ok((c.diag(), c.off_diag()))
        })
        .collect::<Result<_>>()?;
    block_decompose(m, partition, &constants)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle;

    fn m(n: usize, a: f64, t: f64) -> DoubleConstant {
        DoubleConstant::new(n, a, t).unwrap()
    }

    fn assemble(decomp: &BlockDecomposition, partition: &Partition) -> DenseMatrix {
        let n = partition.total();
        let mut out = decomp.remainder.clone();
        let offsets = partition.offsets();
        for (block, dc) in decomp.diagonal_blocks.iter().enumerate() {
            let dense = dc.materialize().unwrap();
            let start = offsets[block];
            for v in 0..dc.n() {
                for w in 0..dc.n() {
                    out[(start + v, start + w)] += dense[(v, w)];
                }
            }
        }
        assert_eq!(out.rows(), n);
        out
    }

    #[test]
    fn linear_combination_componentwise() {
        let sum = linear_combination(&[(2.0, m(3, 1.0, 0.0)), (3.0, m(3, 0.0, 1.0))]).unwrap();
        assert_eq!(sum, m(3, 2.0, 3.0));
        let x = m(4, 1.5, -0.5);
        let zero = linear_combination(&[(1.0, x), (-1.0, x)]).unwrap();
        assert_eq!(zero, DoubleConstant::zero(4).unwrap());
    }

    #[test]
    fn linear_combination_errors() {
        assert_eq!(linear_combination(&[]), Err(Error::EmptySequence));
        assert!(matches!(
            linear_combination(&[(1.0, m(2, 1.0, 0.0)), (1.0, m(3, 1.0, 0.0))]),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn product_of_all_ones_doubles() {
        // [[1,1],[1,1]]² = [[2,2],[2,2]], checked by dense multiply.
        let ones = m(2, 1.0, 1.0);
        let sq = product(&[ones, ones]).unwrap();
        assert_eq!(sq, m(2, 2.0, 2.0));
        let dense =
            oracle::dense_matmul(&ones.materialize().unwrap(), &ones.materialize().unwrap())
                .unwrap();
        assert_eq!(dense.max_abs_diff(&sq.materialize().unwrap()), 0.0);
    }

    #[test]
    fn identity_is_neutral_for_product() {
        let x = m(3, 2.0, 1.0);
        let id = DoubleConstant::identity(3).unwrap();
        assert_eq!(product(&[x, id]).unwrap(), x);
    }

    #[test]
    fn centering_times_equicorrelation_scales_centering() {
        let n = 5;
        let rho = 0.3;
        let c = DoubleConstant::centering(n).unwrap();
        let sigma2 = m(n, 1.0, rho);
        let prod = product(&[c, sigma2]).unwrap();
        let scaled = linear_combination(&[(1.0 - rho, c)]).unwrap();
        let diff = prod
            .materialize()
            .unwrap()
            .max_abs_diff(&scaled.materialize().unwrap());
        assert!(diff < 1e-12);

        // With the root matrix instead, the factor becomes √(1 − ρ).
        let root = sqrt_principal(&sigma2).unwrap();
        let prod_root = product(&[c, root]).unwrap();
        let scaled_root = linear_combination(&[((1.0 - rho).sqrt(), c)]).unwrap();
        let diff_root = prod_root
            .materialize()
            .unwrap()
            .max_abs_diff(&scaled_root.materialize().unwrap());
        assert!(diff_root < 1e-12);
    }

    #[test]
    fn analytic_identity_is_identity() {
        let x = m(3, 2.0, 1.0);
        assert_eq!(apply_analytic(&x, &AnalyticSpec::identity()).unwrap(), x);
    }

    #[test]
    fn exp_of_zero_matrix_is_identity() {
        let z = DoubleConstant::zero(4).unwrap();
        let e = exp_m(&z).unwrap();
        assert_eq!(e, DoubleConstant::identity(4).unwrap());
    }

    #[test]
    fn analytic_square_matches_product_and_dense() {
        let x = m(3, 2.0, 1.0);
        let via_f = apply_analytic(&x, &AnalyticSpec::total("square", |v| v * v)).unwrap();
        let via_product = product(&[x, x]).unwrap();
        assert!((via_f.diag() - via_product.diag()).abs() < 1e-12);
        assert!((via_f.off_diag() - via_product.off_diag()).abs() < 1e-12);
        let dense =
            oracle::dense_matmul(&x.materialize().unwrap(), &x.materialize().unwrap()).unwrap();
        assert!(dense.max_abs_diff(&via_f.materialize().unwrap()) < 1e-12);
    }

    #[test]
    fn power_zero_gives_identity() {
        assert_eq!(
            power(&m(3, 2.0, 1.0), 0.0).unwrap(),
            DoubleConstant::identity(3).unwrap()
        );
        // Even for a singular matrix.
        assert_eq!(
            power(&DoubleConstant::centering(4).unwrap(), 0.0).unwrap(),
            DoubleConstant::identity(4).unwrap()
        );
    }

    #[test]
    fn negative_one_power_is_the_inverse() {
        let x = m(3, 2.0, 1.0);
        let inv = power(&x, -1.0).unwrap();
        assert_eq!(inv, m(3, 0.75, -0.25));
        let prod =
            oracle::dense_matmul(&x.materialize().unwrap(), &inv.materialize().unwrap()).unwrap();
        assert!(prod.max_abs_diff(&DenseMatrix::identity(3)) < 1e-12);
    }

    #[test]
    fn half_power_squares_back() {
        let sigma2 = m(4, 1.0, 0.6);
        let root = power(&sigma2, 0.5).unwrap();
        let squared = product(&[root, root]).unwrap();
        let diff = squared
            .materialize()
            .unwrap()
            .max_abs_diff(&sigma2.materialize().unwrap());
        assert!(diff < 1e-12);
    }

    #[test]
    fn fractional_power_requires_positive_spectrum() {
        let err = power(&m(3, 0.2, -0.5), 0.5).unwrap_err();
        assert!(matches!(err, Error::DomainViolation { .. }));
        // Singular matrices still take nonnegative integer powers...
        assert!(power(&DoubleConstant::centering(3).unwrap(), 2.0).is_ok());
        // ...but not negative ones.
        assert!(power(&DoubleConstant::centering(3).unwrap(), -1.0).is_err());
    }

    #[test]
    fn inverse_of_identity_and_equicorrelation() {
        let id = DoubleConstant::identity(4).unwrap();
        assert_eq!(inverse(&id).unwrap(), id);
        // ρ = 0.5, n = 2 has inverse [[4/3, −2/3], [−2/3, 4/3]].
        let inv = inverse(&m(2, 1.0, 0.5)).unwrap();
        let dense = inv.materialize().unwrap();
        assert!((dense[(0, 0)] - 4.0 / 3.0).abs() < 1e-15);
        assert!((dense[(0, 1)] + 2.0 / 3.0).abs() < 1e-15);
    }

    #[test]
    fn inverse_of_centering_matrix_fails() {
        let err = inverse(&DoubleConstant::centering(5).unwrap()).unwrap_err();
        assert_eq!(
            err,
            Error::Singular {
                which: EigenvalueKind::Minor
            }
        );
    }

    #[test]
    fn sqrt_fixed_points() {
        let id = DoubleConstant::identity(3).unwrap();
        assert_eq!(sqrt_principal(&id).unwrap(), id);
        // Eigenvalues 0 and 1 are fixed under the square root.
        let c = DoubleConstant::centering(6).unwrap();
        let root = sqrt_principal(&c).unwrap();
        let diff = root
            .materialize()
            .unwrap()
            .max_abs_diff(&c.materialize().unwrap());
        assert!(diff < 1e-15);
    }

    #[test]
    fn sqrt_of_equicorrelation_has_root_eigenvalues() {
        let n = 5;
        let rho = 0.4;
        let root = sqrt_principal(&m(n, 1.0, rho)).unwrap();
        let c = root.eigenvalues();
        assert!((c.lambda_major() - (1.0 - rho).sqrt()).abs() < 1e-15);
        assert!((c.lambda_minor() - (1.0 - rho + n as f64 * rho).sqrt()).abs() < 1e-15);
    }

    #[test]
    fn sqrt_rejects_negative_spectrum() {
        assert!(matches!(
            sqrt_principal(&m(3, -1.0, 0.0)),
            Err(Error::DomainViolation {
                which: EigenvalueKind::Major,
                ..
            })
        ));
    }

    #[test]
    fn exp_log_round_trip() {
        let x = m(4, 2.0, 0.3);
        let back = exp_m(&log_m(&x).unwrap()).unwrap();
        assert!((back.diag() - x.diag()).abs() < 1e-10);
        assert!((back.off_diag() - x.off_diag()).abs() < 1e-10);

        let sigma2 = m(6, 1.0, 0.3);
        let back2 = exp_m(&log_m(&sigma2).unwrap()).unwrap();
        let diff = back2
            .materialize()
            .unwrap()
            .max_abs_diff(&sigma2.materialize().unwrap());
        assert!(diff < 1e-10);
    }

    #[test]
    fn log_of_identity_is_zero() {
        let id = DoubleConstant::identity(5).unwrap();
        let l = log_m(&id).unwrap();
        assert_eq!(l, DoubleConstant::zero(5).unwrap());
    }

    #[test]
    fn log_handles_unit_major_eigenvalue() {
        // λ* = 1 makes ln(a − t) = 0; the unfactored form must survive.
        let x = m(3, 1.5, 0.5);
        assert_eq!(x.lambda_major(), 1.0);
        let l = log_m(&x).unwrap();
        let expected_t = (2.5_f64).ln() / 3.0;
        assert!((l.off_diag() - expected_t).abs() < 1e-15);
        assert!((l.diag() - expected_t).abs() < 1e-15);
        let back = exp_m(&l).unwrap();
        assert!((back.diag() - 1.5).abs() < 1e-14);
        assert!((back.off_diag() - 0.5).abs() < 1e-14);
    }

    #[test]
    fn log_rejects_singular_input() {
        let err = log_m(&DoubleConstant::centering(4).unwrap()).unwrap_err();
        assert!(matches!(
            err,
            Error::DomainViolation {
                which: EigenvalueKind::Minor,
                ..
            }
        ));
    }

    #[test]
    fn exp_matches_dense_scaling_and_squaring() {
        let x = m(2, 0.0, 0.5);
        let structured = exp_m(&x).unwrap().materialize().unwrap();
        let dense = oracle::dense_expm(&x.materialize().unwrap()).unwrap();
        assert!(structured.max_abs_diff(&dense) < 1e-8);
    }

    #[test]
    fn block_decompose_against_itself_leaves_nothing() {
        let x = m(5, 2.0, 0.5);
        // Trivial partition: the single block absorbs the whole matrix.
        let whole = Partition::new(vec![5]).unwrap();
        let decomp = block_decompose(&x, &whole, &[(2.0, 0.5)]).unwrap();
        assert_eq!(decomp.remainder.max_abs(), 0.0);
        assert_eq!(decomp.diagonal_blocks[0], x);

        let partition = Partition::new(vec![2, 3]).unwrap();
        let decomp = block_decompose(&x, &partition, &[(2.0, 0.5), (2.0, 0.5)]).unwrap();
        // Diagonal part of the remainder is zero; off-diagonal keeps t.
        for v in 0..2 {
            for w in 0..2 {
                assert_eq!(decomp.remainder[(v, w)], 0.0);
            }
        }
        assert_eq!(decomp.remainder[(0, 3)], 0.5);
        let rebuilt = assemble(&decomp, &partition);
        assert_eq!(rebuilt.max_abs_diff(&x.materialize().unwrap()), 0.0);
    }

    #[test]
    fn centering_split_yields_weighted_ones_blocks() {
        let n = 6;
        let c = DoubleConstant::centering(n).unwrap();
        let partition = Partition::new(vec![2, 4]).unwrap();
        let decomp = block_decompose_centering(&c, &partition).unwrap();
        let offsets = partition.offsets();
        for (block, &size) in partition.blocks().iter().enumerate() {
            let w = (n - size) as f64 / size as f64;
            let expected = w / n as f64;
            let start = offsets[block];
            for v in start..start + size {
                for u in start..start + size {
                    assert!(
                        (decomp.remainder[(v, u)] - expected).abs() < 1e-15,
                        "block {block}"
                    );
                }
            }
            // Diagonal blocks are the smaller centering matrices.
            assert_eq!(
                decomp.diagonal_blocks[block],
                DoubleConstant::centering(size).unwrap()
            );
        }
        // Off-diagonal remainder entries stay at t = −1/n.
        assert!((decomp.remainder[(0, 3)] + 1.0 / n as f64).abs() < 1e-15);
        let rebuilt = assemble(&decomp, &partition);
        assert!(rebuilt.max_abs_diff(&c.materialize().unwrap()) < 1e-15);
    }

    #[test]
    fn block_decompose_validates_inputs() {
        let x = m(5, 2.0, 0.5);
        let bad_partition = Partition::new(vec![2, 2]).unwrap();
        assert!(matches!(
            block_decompose(&x, &bad_partition, &[(0.0, 0.0), (0.0, 0.0)]),
            Err(Error::PartitionMismatch { .. })
        ));
        let partition = Partition::new(vec![2, 3]).unwrap();
        assert!(matches!(
            block_decompose(&x, &partition, &[(0.0, 0.0)]),
            Err(Error::ConstantsLengthMismatch { .. })
        ));
        assert!(Partition::new(vec![]).is_err());
        assert!(Partition::new(vec![2, 0]).is_err());
    }
}
