//! Statistical applications of the centering and equicorrelation
//! matrices: centering data, sums of squares and cross products,
//! Mahalanobis distance, regression residuals through the annihilator,
//! degrees of freedom, pooled sum-of-squares decomposition, and variance
//! estimation under equicorrelated observations.
//!
//! Convention: Σ² = M(1, ρ) is the variance (correlation) matrix and Σ
//! its principal root. Equicorrelated draws are modelled as X = μ1 + σΣε
//! with V(X) = σ²Σ², which scales centered residuals by C·Σ = √(1−ρ)·C;
//! the degrees-of-freedom accounting comes from the variance-matrix side,
//! E‖X − X̄‖² = σ²·tr(C·Σ²) = σ²(1−ρ)(n−1). Both scaling identities are
//! pinned by tests.

use crate::algebra::Partition;
use crate::error::{Error, Result};
use crate::fourier;
use crate::matrix::{DenseMatrix, DoubleConstant};

/// The centering projection C = M(1 − 1/n, −1/n) = I − 1/n.
///
/// Idempotent with trace = rank = n − 1; its kernel is the constant
/// vectors, so pre-multiplying removes the sample mean.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CenteringMatrix {
    n: usize,
}

impl CenteringMatrix {
    pub fn new(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::ZeroDimension);
        }
        Ok(CenteringMatrix { n })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn matrix(&self) -> DoubleConstant {
        DoubleConstant::centering(self.n).expect("n validated at construction")
    }
}

/// The equicorrelation matrix Σ² = M(1, ρ) with −1/(n−1) < ρ < 1, the
/// archetype of the positive-definite double-constant matrices.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Equicorrelation {
    n: usize,
    rho: f64,
}

/// The four closed forms attached to an equicorrelation matrix: the
/// variance matrix Σ², its principal root Σ, and their inverses.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EquicorrelationForms {
    /// Σ² = (1−ρ)·I + ρ·1.
    pub variance: DoubleConstant,
    /// Σ = √(1−ρ)·I + (√(1−ρ+nρ) − √(1−ρ))/n · 1.
    pub root: DoubleConstant,
    /// Σ⁻² = 1/(1−ρ)·I − ρ/((1−ρ)(1−ρ+nρ)) · 1.
    pub variance_inv: DoubleConstant,
    /// Σ⁻¹ = 1/√(1−ρ)·I + (1/√(1−ρ+nρ) − 1/√(1−ρ))/n · 1.
    pub root_inv: DoubleConstant,
}

impl Equicorrelation {
    /// Validates −1/(n−1) < ρ < 1 (strict on both sides; any ρ < 1 is
    /// admissible for n = 1).
    pub fn new(n: usize, rho: f64) -> Result<Self> {
        if n == 0 {
            return Err(Error::ZeroDimension);
        }
        let lower = Self::lower_bound(n);
        if !rho.is_finite() || rho <= lower || rho >= 1.0 {
            return Err(Error::RhoOutOfRange { rho, lower });
        }
        Ok(Equicorrelation { n, rho })
    }

    /// The exclusive lower bound −1/(n−1).
    pub fn lower_bound(n: usize) -> f64 {
        if n > 1 {
            -1.0 / (n as f64 - 1.0)
        } else {
            f64::NEG_INFINITY
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn rho(&self) -> f64 {
        self.rho
    }

    /// The variance matrix Σ² = M(1, ρ).
    pub fn matrix(&self) -> DoubleConstant {
        DoubleConstant::new(self.n, 1.0, self.rho).expect("validated at construction")
    }

    /// All four explicit forms. Each is written with its own closed-form
    /// constants; consistency (Σ·Σ = Σ², Σ²·Σ⁻² = I, Σ·Σ⁻¹ = I) is
    /// checked by the test suite rather than assumed.
    pub fn forms(&self) -> EquicorrelationForms {
        let n = self.n as f64;
        let rho = self.rho;
        let lam_major = 1.0 - rho;
        let lam_minor = 1.0 - rho + n * rho;

        let variance = self.matrix();

        let root_t = (lam_minor.sqrt() - lam_major.sqrt()) / n;
        let root = DoubleConstant::new(self.n, lam_major.sqrt() + root_t, root_t)
            .expect("root constants are finite for valid ρ");

        let vinv_t = -rho / (lam_major * lam_minor);
        let variance_inv = DoubleConstant::new(self.n, 1.0 / lam_major + vinv_t, vinv_t)
            .expect("inverse constants are finite for valid ρ");

        let rinv_t = (1.0 / lam_minor.sqrt() - 1.0 / lam_major.sqrt()) / n;
        let root_inv = DoubleConstant::new(self.n, 1.0 / lam_major.sqrt() + rinv_t, rinv_t)
            .expect("root-inverse constants are finite for valid ρ");

        EquicorrelationForms {
            variance,
            root,
            variance_inv,
            root_inv,
        }
    }
}

/// Degrees-of-freedom accounting for variance estimation, with and
/// without an equicorrelation adjustment.
///
/// `df_eff` and `n_eff` are the trace-derived values: E‖X − X̄‖² =
/// σ²·tr(C·Σ²) = σ²(1−ρ)(n−1), so dividing by (1−ρ)(n−1) is what makes
/// the estimator unbiased. `df_eff_alt` and `n_eff_alt` carry the
/// alternative (1−ρ)² accounting for comparison output; the two cannot
/// both be unbiased, and only the trace-derived pair is.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DfReport {
    pub n: usize,
    /// rank C = n − 1.
    pub df: usize,
    /// The equicorrelation parameter used, if any.
    pub rho: Option<f64>,
    /// (1−ρ)·(n−1) when ρ is supplied, else n − 1.
    pub df_eff: f64,
    /// 1 + (1−ρ)·(n−1).
    pub n_eff: f64,
    /// (1−ρ)²·(n−1), the alternative accounting; equals df_eff iff ρ = 0.
    pub df_eff_alt: f64,
    /// 1 + (1−ρ)²·(n−1).
    pub n_eff_alt: f64,
    /// ‖x − x̄‖²/df_eff when a data vector has been supplied.
    pub variance_estimate: Option<f64>,
}

/// Subtracts the mean from a vector: C·x computed in O(n).
pub fn center_vec(x: &[f64]) -> Vec<f64> {
    if x.is_empty() {
        return Vec::new();
    }
    let mean = x.iter().sum::<f64>() / x.len() as f64;
    x.iter().map(|&v| v - mean).collect()
}

fn require_nonempty(x: &DenseMatrix) -> Result<()> {
    if x.rows() == 0 || x.cols() == 0 {
        Err(Error::EmptyMatrix)
    } else {
        Ok(())
    }
}

/// Removes the column means: C_n·x.
pub fn center_columns(x: &DenseMatrix) -> Result<DenseMatrix> {
    require_nonempty(x)?;
    let mut out = x.clone();
    for j in 0..x.cols() {
        let mean = (0..x.rows()).map(|i| x[(i, j)]).sum::<f64>() / x.rows() as f64;
        for i in 0..x.rows() {
            out[(i, j)] -= mean;
        }
    }
    Ok(out)
}

/// Removes the row means: x·C_m.
pub fn center_rows(x: &DenseMatrix) -> Result<DenseMatrix> {
    require_nonempty(x)?;
    let mut out = x.clone();
    for i in 0..x.rows() {
        let mean = x.row(i).iter().sum::<f64>() / x.cols() as f64;
        for j in 0..x.cols() {
            out[(i, j)] -= mean;
        }
    }
    Ok(out)
}

/// Removes both row and column means: C_n·x·C_m, leaving every row and
/// column summing to zero. Entrywise this is
/// x_{ij} − x̄_{i·} − x̄_{·j} + x̄_{··}.
pub fn double_center(x: &DenseMatrix) -> Result<DenseMatrix> {
    center_rows(&center_columns(x)?)
}

/// Σ(xᵢ − x̄)² = xᵀCx, the squared norm of the centered vector.
pub fn sum_of_squares(x: &[f64]) -> f64 {
    if x.is_empty() {
        return 0.0;
    }
    let mean = x.iter().sum::<f64>() / x.len() as f64;
    x.iter().map(|&v| (v - mean) * (v - mean)).sum()
}

/// Σ(xᵢ − x̄)(yᵢ − ȳ) = xᵀCy, the centered cross product.
pub fn cross_products(x: &[f64], y: &[f64]) -> Result<f64> {
    if x.len() != y.len() {
        return Err(Error::LengthMismatch {
            left: x.len(),
            right: y.len(),
        });
    }
    if x.is_empty() {
        return Ok(0.0);
    }
    let xbar = x.iter().sum::<f64>() / x.len() as f64;
    let ybar = y.iter().sum::<f64>() / y.len() as f64;
    Ok(x.iter()
        .zip(y)
        .map(|(&a, &b)| (a - xbar) * (b - ybar))
        .sum())
}

/// Squared Mahalanobis distance D²(x) = (x − x̄)ᵀ·Σ⁻¹·(x − x̄).
///
/// Takes the precision matrix Σ⁻¹ directly so the caller controls the
/// inversion; the caller asserts it is symmetric positive definite.
pub fn mahalanobis_sq(x: &[f64], sigma_inverse: &DenseMatrix) -> Result<f64> {
    if !sigma_inverse.is_square() {
        return Err(Error::DimensionMismatch {
            expected: sigma_inverse.rows(),
            found: sigma_inverse.cols(),
        });
    }
    if sigma_inverse.rows() != x.len() {
        return Err(Error::DimensionMismatch {
            expected: sigma_inverse.rows(),
            found: x.len(),
        });
    }
    let centered = center_vec(x);
    let mut total = 0.0;
    for (i, &ci) in centered.iter().enumerate() {
        let row: f64 = sigma_inverse
            .row(i)
            .iter()
            .zip(&centered)
            .map(|(&m, &c)| m * c)
            .sum();
        total += ci * row;
    }
    Ok(total)
}

/// Mahalanobis distance against an equicorrelation covariance, using the
/// closed-form inverse so no dense inversion ever happens.
pub fn mahalanobis_sq_equicorrelated(x: &[f64], equi: &Equicorrelation) -> Result<f64> {
    if x.len() != equi.n() {
        return Err(Error::DimensionMismatch {
            expected: equi.n(),
            found: x.len(),
        });
    }
    let centered = center_vec(x);
    let transformed = equi.forms().variance_inv.apply(&centered)?;
    Ok(centered
        .iter()
        .zip(&transformed)
        .map(|(&a, &b)| a * b)
        .sum())
}

/// Solves the symmetric system g·β = b by Gaussian elimination with
/// partial pivoting, declaring rank deficiency when a pivot falls below
/// 1e−10 times the largest diagonal of g.
fn solve_gram(g: &DenseMatrix, b: &[f64]) -> Result<Vec<f64>> {
    let m = g.rows();
    let max_diag = (0..m).fold(0.0_f64, |acc, i| acc.max(g[(i, i)].abs()));
    let tol = 1e-10 * max_diag;
    let mut work = g.clone();
    let mut rhs = b.to_vec();
    for col in 0..m {
        let mut pivot_row = col;
        for r in col + 1..m {
            if work[(r, col)].abs() > work[(pivot_row, col)].abs() {
                pivot_row = r;
            }
        }
        if work[(pivot_row, col)].abs() <= tol {
            return Err(Error::RankDeficient { pivot: col });
        }
        if pivot_row != col {
            for j in 0..m {
                let tmp = work[(col, j)];
                work[(col, j)] = work[(pivot_row, j)];
                work[(pivot_row, j)] = tmp;
            }
            rhs.swap(col, pivot_row);
        }
        for r in col + 1..m {
            let factor = work[(r, col)] / work[(col, col)];
            if factor == 0.0 {
                continue;
            }
            for j in col..m {
                work[(r, j)] -= factor * work[(col, j)];
            }
            rhs[r] -= factor * rhs[col];
        }
    }
    let mut beta = vec![0.0; m];
    for row in (0..m).rev() {
        let mut acc = rhs[row];
        for j in row + 1..m {
            acc -= work[(row, j)] * beta[j];
        }
        beta[row] = acc / work[(row, row)];
    }
    Ok(beta)
}

/// Least-squares residuals of y on an intercept plus the columns of x,
/// computed through the annihilator decomposition
///
/// ```text
/// I − H = C − x_c(x_cᵀx_c)⁻¹x_cᵀ,    x_c = C·x,
/// ```
///
/// i.e. r = C·y − x_c·β̂ with β̂ solving (x_cᵀx_c)β̂ = x_cᵀy. The result
/// is orthogonal to the constant vector and to every explanatory column.
/// With no explanatory columns this is just the centered response.
pub fn annihilator_residuals(y: &[f64], x: &DenseMatrix) -> Result<Vec<f64>> {
    let n = y.len();
    if n == 0 {
        return Err(Error::EmptyMatrix);
    }
    let m = x.cols();
    if m > 0 && x.rows() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: x.rows(),
        });
    }
    if n < m + 1 {
        return Err(Error::InsufficientData {
            needed: m + 1,
            found: n,
        });
    }
    let mut residuals = center_vec(y);
    if m == 0 {
        return Ok(residuals);
    }
    let xc = center_columns(x)?;
    // Gram matrix x_cᵀx_c and moment vector x_cᵀy.
    let mut gram = DenseMatrix::zeros(m, m);
    for i in 0..m {
        for j in i..m {
            let g: f64 = (0..n).map(|r| xc[(r, i)] * xc[(r, j)]).sum();
            gram[(i, j)] = g;
            gram[(j, i)] = g;
        }
    }
    let moment: Vec<f64> = (0..m)
        .map(|i| (0..n).map(|r| xc[(r, i)] * y[r]).sum())
        .collect();
    let beta = solve_gram(&gram, &moment)?;
    for r in 0..n {
        let fitted: f64 = (0..m).map(|i| xc[(r, i)] * beta[i]).sum();
        residuals[r] -= fitted;
    }
    Ok(residuals)
}

/// Maximum componentwise gap in the Fourier form of the least-squares
/// normal equations: for each explanatory column i,
///
/// ```text
/// Σ_{t≥1} (β̂·F_x(t))·conj(F_{x_i}(t))  vs  Σ_{t≥1} F_y(t)·conj(F_{x_i}(t)),
/// ```
///
/// where β̂·F_x(t) is the coefficient-weighted sum over columns. At the
/// least-squares solution both sides agree to rounding; off the solution
/// the gap is positive. A verification probe, not an estimator.
pub fn fourier_normal_equations_gap(beta_hat: &[f64], x: &DenseMatrix, y: &[f64]) -> Result<f64> {
    let n = y.len();
    if n == 0 {
        return Err(Error::EmptyMatrix);
    }
    let m = x.cols();
    if m > 0 && x.rows() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: x.rows(),
        });
    }
    if beta_hat.len() != m {
        return Err(Error::LengthMismatch {
            left: beta_hat.len(),
            right: m,
        });
    }
    let fy = fourier::dft(y)?;
    let spectra: Vec<fourier::ComplexVector> = (0..m)
        .map(|j| fourier::dft(&x.column(j)))
        .collect::<Result<_>>()?;
    let mut gap = 0.0_f64;
    for i in 0..m {
        let mut lhs = fourier::Complex::new(0.0, 0.0);
        let mut rhs = fourier::Complex::new(0.0, 0.0);
        for t in 1..n {
            let weighted: fourier::Complex = (0..m).map(|k| spectra[k][t] * beta_hat[k]).sum();
            lhs += weighted * spectra[i][t].conj();
            rhs += fy[t] * spectra[i][t].conj();
        }
        gap = gap.max((lhs - rhs).norm());
    }
    Ok(gap)
}

/// DF = dim{C·x | x ∈ ℝⁿ} = rank C = n − 1.
pub fn degrees_of_freedom(n: usize) -> usize {
    n.saturating_sub(1)
}

/// The unbiased sample variance S² = ‖x − x̄‖²/(n − 1).
pub fn sample_variance(x: &[f64]) -> Result<f64> {
    if x.len() < 2 {
        return Err(Error::InsufficientData {
            needed: 2,
            found: x.len(),
        });
    }
    Ok(sum_of_squares(x) / degrees_of_freedom(x.len()) as f64)
}

/// Validated equicorrelation parameters; see [`Equicorrelation::new`].
pub fn equicorrelation(n: usize, rho: f64) -> Result<Equicorrelation> {
    Equicorrelation::new(n, rho)
}

/// Effective degrees of freedom under equicorrelated observations with
/// known ρ; see [`DfReport`] for what the fields mean and which variant
/// is the unbiased one.
pub fn effective_df(n: usize, rho: f64) -> Result<DfReport> {
    if n < 2 {
        return Err(Error::InsufficientData {
            needed: 2,
            found: n,
        });
    }
    Equicorrelation::new(n, rho)?;
    let df = degrees_of_freedom(n);
    let shrink = 1.0 - rho;
    let df_eff = shrink * df as f64;
    let df_eff_alt = shrink * shrink * df as f64;
    Ok(DfReport {
        n,
        df,
        rho: Some(rho),
        df_eff,
        n_eff: 1.0 + df_eff,
        df_eff_alt,
        n_eff_alt: 1.0 + df_eff_alt,
        variance_estimate: None,
    })
}

/// Unbiased variance estimate under the equicorrelated model
/// V(X) = σ²Σ²: ‖x − x̄‖²/((1−ρ)(n−1)).
pub fn adjusted_sample_variance(x: &[f64], rho: f64) -> Result<f64> {
    let report = effective_df(x.len(), rho)?;
    Ok(sum_of_squares(x) / report.df_eff)
}

/// [`effective_df`] with the variance estimate filled in from data.
pub fn adjusted_variance_report(x: &[f64], rho: f64) -> Result<DfReport> {
    let mut report = effective_df(x.len(), rho)?;
    report.variance_estimate = Some(sum_of_squares(x) / report.df_eff);
    Ok(report)
}

/// Pooled-versus-within sum-of-squares split for a partitioned sample.
#[derive(Debug, Clone, PartialEq)]
pub struct SsDecomposition {
    /// ‖x − x̄‖² on the concatenated sample.
    pub pooled_ss: f64,
    /// ‖x_ℓ − x̄_ℓ‖² per group.
    pub group_ss: Vec<f64>,
    /// The between-group quadratic form; pooled = Σ within + between.
    pub between_term: f64,
    /// The group sizes the split was computed over.
    pub group_sizes: Partition,
}

impl SsDecomposition {
    /// |pooled − (Σ group + between)|, the defect in the reconstruction
    /// identity. Zero up to rounding.
    pub fn identity_residual(&self) -> f64 {
        let within: f64 = self.group_ss.iter().sum();
        (self.pooled_ss - (within + self.between_term)).abs()
    }
}

/// Splits the pooled sum of squares over groups:
///
/// ```text
/// SS_pooled = Σ_ℓ SS_ℓ + (1/n)·[Σ_ℓ w_ℓ·S_ℓ² − Σ_{ℓ≠h} S_ℓ·S_h],
/// ```
///
/// with S_ℓ the group totals and w_ℓ = (n − n_ℓ)/n_ℓ. The between term
/// is computed from that weighted form, independently of the pooled
/// computation, so the reconstruction identity is a real check. It is a
/// quadratic form in the group means and cannot be negative; a value
/// below rounding is clamped to zero, anything worse is reported as an
/// inconsistency.
pub fn pooled_ss_decomposition(groups: &[Vec<f64>]) -> Result<SsDecomposition> {
    if groups.is_empty() {
        return Err(Error::EmptySequence);
    }
    for (index, g) in groups.iter().enumerate() {
        if g.is_empty() {
            return Err(Error::EmptyGroup { index });
        }
    }
    let sizes = Partition::new(groups.iter().map(Vec::len).collect())?;
    let n = sizes.total() as f64;

    let pooled: Vec<f64> = groups.iter().flatten().copied().collect();
    let pooled_ss = sum_of_squares(&pooled);
    let group_ss: Vec<f64> = groups.iter().map(|g| sum_of_squares(g)).collect();

    let totals: Vec<f64> = groups.iter().map(|g| g.iter().sum()).collect();
    let mut weighted = 0.0;
    for (g, &total) in groups.iter().zip(&totals) {
        let w = (n - g.len() as f64) / g.len() as f64;
        weighted += w * total * total;
    }
    let mut cross = 0.0;
    for (l, &s_l) in totals.iter().enumerate() {
        for (h, &s_h) in totals.iter().enumerate() {
            if l != h {
                cross += s_l * s_h;
            }
        }
    }
    let mut between_term = (weighted - cross) / n;
    if between_term < 0.0 {
        let tol = 1e-12 * pooled_ss.max(1.0);
        if between_term >= -tol {
            between_term = 0.0;
        } else {
            return Err(Error::NegativeBetweenTerm {
                value: between_term,
            });
        }
    }
    Ok(SsDecomposition {
        pooled_ss,
        group_ss,
        between_term,
        group_sizes: sizes,
    })
}

/// The two-group closed form of the between term:
/// n₁n₂/(n₁+n₂)·(x̄₁ − x̄₂)².
pub fn two_group_between_term(x1: &[f64], x2: &[f64]) -> Result<f64> {
    if x1.is_empty() {
        return Err(Error::EmptyGroup { index: 0 });
    }
    if x2.is_empty() {
        return Err(Error::EmptyGroup { index: 1 });
    }
    let n1 = x1.len() as f64;
    let n2 = x2.len() as f64;
    let mean1 = x1.iter().sum::<f64>() / n1;
    let mean2 = x2.iter().sum::<f64>() / n2;
    let delta = mean1 - mean2;
    Ok(n1 * n2 / (n1 + n2) * delta * delta)
}
