//! The runtime identity suite behind `dcmat verify`: every closed form in
//! the library is exercised against an independent dense computation on
//! seeded random instances. Output is deterministic for a fixed seed.

use dcmat::matrix::{CanonicalForm, DenseMatrix, DoubleConstant};
use dcmat::{algebra, fourier, oracle, stats};
use rand_chacha::ChaCha8Rng;
use rand_core::RngCore;

pub struct Check {
    pub name: &'static str,
    pub run: fn(&mut ChaCha8Rng, usize) -> Result<(), String>,
}

pub struct VerifyReport {
    lines: Vec<String>,
    first_failure: Option<String>,
    count: usize,
}

impl VerifyReport {
    pub fn rendered(&self) -> String {
        let mut out = String::new();
        for line in &self.lines {
            out.push_str(line);
            out.push('\n');
        }
        out
    }

    pub fn first_failure(&self) -> Option<&str> {
        self.first_failure.as_deref()
    }

    pub fn len(&self) -> usize {
        self.count
    }
}

/// Runs every check with its own seeded stream; collects one report line
/// per check and remembers the first failure.
pub fn run_checks(seed: u64, max_n: usize, checks: &[Check]) -> VerifyReport {
    let mut lines = Vec::with_capacity(checks.len());
    let mut first_failure = None;
    for (index, check) in checks.iter().enumerate() {
        let mut rng = oracle::trial_rng(seed, index as u64);
        match (check.run)(&mut rng, max_n.max(2)) {
            Ok(()) => lines.push(format!("ok {}", check.name)),
            Err(detail) => {
                lines.push(format!("FAIL {}: {detail}", check.name));
                if first_failure.is_none() {
                    first_failure = Some(format!("{}: {detail}", check.name));
                }
            }
        }
    }
    VerifyReport {
        lines,
        first_failure,
        count: checks.len(),
    }
}

fn uniform(rng: &mut ChaCha8Rng, lo: f64, hi: f64) -> f64 {
    oracle::uniform_in(rng, lo, hi)
}

fn dim(rng: &mut ChaCha8Rng, lo: usize, hi: usize) -> usize {
    lo + (rng.next_u64() % (hi - lo + 1) as u64) as usize
}

fn rand_matrix(rng: &mut ChaCha8Rng, n: usize) -> DoubleConstant {
    DoubleConstant::new(n, uniform(rng, -10.0, 10.0), uniform(rng, -10.0, 10.0)).unwrap()
}

fn rand_spectral(rng: &mut ChaCha8Rng, n: usize, lo: f64, hi: f64) -> DoubleConstant {
    CanonicalForm::new(n, uniform(rng, lo, hi), uniform(rng, lo, hi))
        .unwrap()
        .matrix()
}

fn rand_vec(rng: &mut ChaCha8Rng, n: usize, lo: f64, hi: f64) -> Vec<f64> {
    (0..n).map(|_| uniform(rng, lo, hi)).collect()
}

fn describe(m: &DoubleConstant) -> String {
    format!("n={}, a={}, t={}", m.n(), m.diag(), m.off_diag())
}

fn ensure(cond: bool, detail: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(detail())
    }
}

fn determinant_closed_form(rng: &mut ChaCha8Rng, max_n: usize) -> Result<(), String> {
    for n in 1..=max_n.min(8) {
        for _ in 0..50 {
            let m = rand_matrix(rng, n);
            let fast = m.determinant();
            let dense = oracle::dense_det(&m.materialize().unwrap()).unwrap();
            let tol = 1e-9 * fast.abs().max(dense.abs()).max(1.0);
            ensure((fast - dense).abs() <= tol, || {
                format!("{}: closed form {fast} vs dense {dense}", describe(&m))
            })?;
        }
    }
    Ok(())
}

fn charpoly_roots(rng: &mut ChaCha8Rng, max_n: usize) -> Result<(), String> {
    for n in 1..=max_n.min(8) {
        for _ in 0..50 {
            let m = rand_matrix(rng, n);
            let c = m.eigenvalues();
            let mut roots = vec![c.lambda_minor()];
            if n >= 2 {
                roots.push(c.lambda_major());
            }
            for lam in roots {
                let p = m.char_poly(lam);
                let tol = 1e-9 * 1.0_f64.max(lam.abs().powi(n as i32));
                ensure(p.abs() <= tol, || {
                    format!("{}: p({lam}) = {p}", describe(&m))
                })?;
            }
        }
    }
    Ok(())
}

fn eigenvalue_roundtrip(rng: &mut ChaCha8Rng, max_n: usize) -> Result<(), String> {
    for _ in 0..200 {
        let n = dim(rng, 1, max_n);
        let a = uniform(rng, 0.5, 100.0) * if rng.next_u64() & 1 == 0 { 1.0 } else { -1.0 };
        let t = a * uniform(rng, 0.25, 1.0) * if rng.next_u64() & 1 == 0 { 1.0 } else { -1.0 };
        let m = DoubleConstant::new(n, a, t).unwrap();
        let back = m.eigenvalues().matrix();
        let budget = 4.0 * f64::EPSILON * a.abs();
        ensure(
            (back.diag() - a).abs() <= budget && (back.off_diag() - t).abs() <= budget,
            || {
                format!(
                    "{}: round trip gave a={}, t={}",
                    describe(&m),
                    back.diag(),
                    back.off_diag()
                )
            },
        )?;
    }
    Ok(())
}

fn eigenvector_structure(rng: &mut ChaCha8Rng, max_n: usize) -> Result<(), String> {
    for _ in 0..20 {
        let n = dim(rng, 2, max_n);
        let m = rand_matrix(rng, n);
        if m.off_diag().abs() < 1e-6 {
            continue;
        }
        let dense = m.materialize().unwrap();
        let c = m.eigenvalues();
        let m_ones = oracle::dense_matvec(&dense, &vec![1.0; n]).unwrap();
        for &v in &m_ones {
            ensure((v - c.lambda_minor()).abs() <= 1e-10, || {
                format!(
                    "{}: M·1 entry {v} vs λ** {}",
                    describe(&m),
                    c.lambda_minor()
                )
            })?;
        }
        for k in 0..n - 1 {
            let mut v = vec![0.0; n];
            v[k] = 1.0;
            v[k + 1] = -1.0;
            let mv = oracle::dense_matvec(&dense, &v).unwrap();
            for i in 0..n {
                ensure((mv[i] - c.lambda_major() * v[i]).abs() <= 1e-10, || {
                    format!("{}: zero-sum eigenvector defect at k={k}", describe(&m))
                })?;
            }
        }
    }
    Ok(())
}

fn dft_unitarity(_rng: &mut ChaCha8Rng, max_n: usize) -> Result<(), String> {
    for n in 1..=max_n {
        let u = fourier::UnitaryDFT::new(n).unwrap();
        for i in 0..n {
            for j in 0..n {
                let entry: fourier::Complex =
                    (0..n).map(|k| u.entry(i, k) * u.entry(j, k).conj()).sum();
                let expected = if i == j { 1.0 } else { 0.0 };
                ensure((entry - expected).norm() <= 1e-12, || {
                    format!("n={n}: (U·conj U)[{i},{j}] = {entry}")
                })?;
            }
        }
    }
    Ok(())
}

fn dft_diagonalization(rng: &mut ChaCha8Rng, max_n: usize) -> Result<(), String> {
    for _ in 0..10 {
        let n = dim(rng, 2, max_n);
        let m = rand_spectral(rng, n, -3.0, 3.0);
        let (u, lambda) = fourier::diagonalize(&m).unwrap();
        let dense = m.materialize().unwrap();
        for i in 0..n {
            for j in 0..n {
                let rebuilt: fourier::Complex = (0..n)
                    .map(|k| u.entry(i, k) * lambda[k] * u.entry(k, j).conj())
                    .sum();
                ensure(
                    (rebuilt.re - dense[(i, j)]).abs() <= 1e-10 && rebuilt.im.abs() <= 1e-10,
                    || format!("{}: U Λ conj(U) defect at ({i},{j})", describe(&m)),
                )?;
            }
        }
    }
    Ok(())
}

fn geometric_sum_indicator(_rng: &mut ChaCha8Rng, max_n: usize) -> Result<(), String> {
    for n in 1..=max_n {
        for r in -(2 * n as i64)..=(2 * n as i64) {
            let got = fourier::geometric_sum(n, r);
            let want = fourier::geometric_sum_indicator(n, r);
            ensure((got - want).abs() <= 1e-12, || {
                format!("n={n}, r={r}: sum {got} vs indicator {want}")
            })?;
        }
    }
    Ok(())
}

fn fourier_apply(rng: &mut ChaCha8Rng, max_n: usize) -> Result<(), String> {
    for _ in 0..30 {
        let n = dim(rng, 2, max_n);
        let cols = dim(rng, 1, 3);
        let m = rand_spectral(rng, n, -3.0, 3.0);
        let mut x = DenseMatrix::zeros(n, cols);
        for i in 0..n {
            for j in 0..cols {
                x[(i, j)] = uniform(rng, -1.0, 1.0);
            }
        }
        let via_fourier =
            fourier::apply_via_fourier(&m, &x).map_err(|e| format!("{}: {e}", describe(&m)))?;
        let dense = oracle::dense_matmul(&m.materialize().unwrap(), &x).unwrap();
        ensure(via_fourier.max_abs_diff(&dense) <= 1e-9, || {
            format!(
                "{}: fourier apply defect {}",
                describe(&m),
                via_fourier.max_abs_diff(&dense)
            )
        })?;
    }
    Ok(())
}

fn parseval(rng: &mut ChaCha8Rng, max_n: usize) -> Result<(), String> {
    for _ in 0..50 {
        let n = dim(rng, 2, max_n);
        let m1 = rand_spectral(rng, n, -3.0, 3.0);
        let m2 = rand_spectral(rng, n, -3.0, 3.0);
        let x = rand_vec(rng, n, -1.0, 1.0);
        let y = rand_vec(rng, n, -1.0, 1.0);
        let fourier_side = fourier::parseval_product(&m1, &m2, &x, &y).unwrap();
        let m1x = oracle::dense_matvec(&m1.materialize().unwrap(), &x).unwrap();
        let m2y = oracle::dense_matvec(&m2.materialize().unwrap(), &y).unwrap();
        let dense_side: f64 = m1x.iter().zip(&m2y).map(|(&p, &q)| p * q).sum();
        ensure(
            (fourier_side - dense_side).abs() <= 1e-10 * dense_side.abs().max(1.0),
            || format!("n={n}: parseval {fourier_side} vs dense {dense_side}"),
        )?;
    }
    Ok(())
}

fn plancherel(rng: &mut ChaCha8Rng, max_n: usize) -> Result<(), String> {
    for _ in 0..50 {
        let n = dim(rng, 2, max_n);
        let m = rand_spectral(rng, n, -3.0, 3.0);
        let x = rand_vec(rng, n, -1.0, 1.0);
        let fourier_side = fourier::plancherel_norm(&m, &x).unwrap();
        let mx = oracle::dense_matvec(&m.materialize().unwrap(), &x).unwrap();
        let dense_side: f64 = mx.iter().map(|&v| v * v).sum();
        ensure(
            fourier_side >= 0.0 && (fourier_side - dense_side).abs() <= 1e-10 * dense_side.max(1.0),
            || format!("n={n}: plancherel {fourier_side} vs dense {dense_side}"),
        )?;
    }
    Ok(())
}

fn linear_combination_closure(rng: &mut ChaCha8Rng, max_n: usize) -> Result<(), String> {
    for _ in 0..50 {
        let n = dim(rng, 1, max_n);
        let k = dim(rng, 1, 5);
        let terms: Vec<(f64, DoubleConstant)> = (0..k)
            .map(|_| {
                let kappa = uniform(rng, -2.0, 2.0);
                let m = DoubleConstant::new(n, uniform(rng, -2.0, 2.0), uniform(rng, -2.0, 2.0))
                    .unwrap();
                (kappa, m)
            })
            .collect();
        let fast = algebra::linear_combination(&terms).unwrap();
        let mut dense = DenseMatrix::zeros(n, n);
        for (kappa, m) in &terms {
            let dm = m.materialize().unwrap();
            for i in 0..n {
                for j in 0..n {
                    dense[(i, j)] += kappa * dm[(i, j)];
                }
            }
        }
        let defect = fast.materialize().unwrap().max_abs_diff(&dense);
        ensure(defect <= 1e-12, || {
            format!("n={n}, k={k}: linear combination defect {defect}")
        })?;
    }
    Ok(())
}

fn product_closure(rng: &mut ChaCha8Rng, max_n: usize) -> Result<(), String> {
    for _ in 0..50 {
        let n = dim(rng, 1, max_n);
        let k = dim(rng, 1, 4);
        let factors: Vec<DoubleConstant> =
            (0..k).map(|_| rand_spectral(rng, n, -1.5, 1.5)).collect();
        let fast = algebra::product(&factors).unwrap();
        let mut dense = DenseMatrix::identity(n);
        for f in &factors {
            dense = oracle::dense_matmul(&dense, &f.materialize().unwrap()).unwrap();
        }
        let defect = fast.materialize().unwrap().max_abs_diff(&dense);
        ensure(defect <= 1e-10, || {
            format!("n={n}, k={k}: product defect {defect}")
        })?;
    }
    Ok(())
}

fn analytic_functions(rng: &mut ChaCha8Rng, max_n: usize) -> Result<(), String> {
    for _ in 0..50 {
        let n = dim(rng, 1, max_n);
        let m = rand_spectral(rng, n, -1.5, 1.5);
        let square =
            algebra::apply_analytic(&m, &algebra::AnalyticSpec::total("square", |x| x * x))
                .unwrap();
        let dense =
            oracle::dense_matmul(&m.materialize().unwrap(), &m.materialize().unwrap()).unwrap();
        let defect = square.materialize().unwrap().max_abs_diff(&dense);
        ensure(defect <= 1e-10, || {
            format!("{}: analytic square defect {defect}", describe(&m))
        })?;
    }
    Ok(())
}

fn exp_matches_dense(rng: &mut ChaCha8Rng, max_n: usize) -> Result<(), String> {
    for _ in 0..20 {
        let n = dim(rng, 1, max_n.min(8));
        let m = rand_spectral(rng, n, -3.0, 3.0);
        let structured = algebra::exp_m(&m).unwrap().materialize().unwrap();
        let dense = oracle::dense_expm(&m.materialize().unwrap()).unwrap();
        let defect = structured.max_abs_diff(&dense);
        ensure(defect <= 1e-8 * structured.max_abs().max(1.0), || {
            format!("{}: exp defect {defect}", describe(&m))
        })?;
    }
    Ok(())
}

fn inverse_roundtrip(rng: &mut ChaCha8Rng, max_n: usize) -> Result<(), String> {
    for _ in 0..50 {
        let n = dim(rng, 1, max_n);
        let m = loop {
            let m = rand_spectral(rng, n, -3.0, 3.0);
            if m.lambda_major().abs() > 0.05 && m.lambda_minor().abs() > 0.05 {
                break m;
            }
        };
        let inv = algebra::inverse(&m).unwrap();
        let prod = algebra::product(&[m, inv]).unwrap();
        let defect = prod
            .materialize()
            .unwrap()
            .max_abs_diff(&DenseMatrix::identity(n));
        ensure(defect <= 1e-10, || {
            format!("{}: M·M⁻¹ defect {defect}", describe(&m))
        })?;
    }
    Ok(())
}

fn sqrt_roundtrip(rng: &mut ChaCha8Rng, max_n: usize) -> Result<(), String> {
    for _ in 0..50 {
        let n = dim(rng, 1, max_n);
        let m = rand_spectral(rng, n, 0.0, 3.0);
        let root = algebra::sqrt_principal(&m).unwrap();
        let squared = algebra::product(&[root, root]).unwrap();
        let defect = squared
            .materialize()
            .unwrap()
            .max_abs_diff(&m.materialize().unwrap());
        ensure(defect <= 1e-12, || {
            format!("{}: sqrt² defect {defect}", describe(&m))
        })?;
    }
    Ok(())
}

fn exp_log_roundtrip(rng: &mut ChaCha8Rng, max_n: usize) -> Result<(), String> {
    for _ in 0..50 {
        let n = dim(rng, 1, max_n);
        let m = rand_spectral(rng, n, 0.05, 5.0);
        let back = algebra::exp_m(&algebra::log_m(&m).unwrap()).unwrap();
        let defect = back
            .materialize()
            .unwrap()
            .max_abs_diff(&m.materialize().unwrap());
        ensure(defect <= 1e-10, || {
            format!("{}: exp(log) defect {defect}", describe(&m))
        })?;
    }
    Ok(())
}

fn basis_decomposition(rng: &mut ChaCha8Rng, max_n: usize) -> Result<(), String> {
    let mut done = 0;
    while done < 50 {
        let n = dim(rng, 1, max_n);
        let m = rand_matrix(rng, n);
        let b1 = DoubleConstant::new(n, uniform(rng, -3.0, 3.0), uniform(rng, -3.0, 3.0)).unwrap();
        let b2 = DoubleConstant::new(n, uniform(rng, -3.0, 3.0), uniform(rng, -3.0, 3.0)).unwrap();
        let det = b1.diag() * b2.off_diag() - b2.diag() * b1.off_diag();
        if det.abs() < 0.05 {
            continue;
        }
        done += 1;
        let (w1, w2) = m.decompose_in_basis(&b1, &b2).unwrap();
        let rebuilt = algebra::linear_combination(&[(w1, b1), (w2, b2)]).unwrap();
        let defect = rebuilt
            .materialize()
            .unwrap()
            .max_abs_diff(&m.materialize().unwrap());
        ensure(defect <= 1e-10, || {
            format!("{}: basis reconstruction defect {defect}", describe(&m))
        })?;
    }
    Ok(())
}

fn canonical_decomposition(rng: &mut ChaCha8Rng, max_n: usize) -> Result<(), String> {
    for _ in 0..50 {
        let n = dim(rng, 1, max_n);
        let m = rand_matrix(rng, n);
        let (wc, wm) = m.decompose_canonical();
        let rebuilt = algebra::linear_combination(&[
            (wc, DoubleConstant::centering(n).unwrap()),
            (wm, DoubleConstant::mean_matrix(n).unwrap()),
        ])
        .unwrap();
        let defect = rebuilt
            .materialize()
            .unwrap()
            .max_abs_diff(&m.materialize().unwrap());
        ensure(defect <= 1e-12, || {
            format!("{}: canonical weights defect {defect}", describe(&m))
        })?;
    }
    Ok(())
}

fn equicorrelation_limits(rng: &mut ChaCha8Rng, max_n: usize) -> Result<(), String> {
    for _ in 0..50 {
        let n = dim(rng, 2, max_n);
        let m = rand_matrix(rng, n);
        let (w_lo, w_hi) = m.decompose_equicorrelation_limits();
        let rebuilt = algebra::linear_combination(&[
            (
                w_lo,
                DoubleConstant::equicorrelation_lower_limit(n).unwrap(),
            ),
            (
                w_hi,
                DoubleConstant::equicorrelation_upper_limit(n).unwrap(),
            ),
        ])
        .unwrap();
        let defect = rebuilt
            .materialize()
            .unwrap()
            .max_abs_diff(&m.materialize().unwrap());
        ensure(defect <= 1e-10, || {
            format!("{}: limit-matrix weights defect {defect}", describe(&m))
        })?;
    }
    Ok(())
}

fn centering_projection(_rng: &mut ChaCha8Rng, max_n: usize) -> Result<(), String> {
    for n in 1..=max_n {
        let c = DoubleConstant::centering(n).unwrap();
        ensure(c.lambda_minor() == 0.0, || {
            format!("n={n}: centering λ** = {}", c.lambda_minor())
        })?;
        let dense = c.materialize().unwrap();
        let cc = oracle::dense_matmul(&dense, &dense).unwrap();
        let ccc = oracle::dense_matmul(&cc, &dense).unwrap();
        ensure(ccc.max_abs_diff(&dense) <= 1e-12, || {
            format!("n={n}: C·C·C differs from C")
        })?;
        ensure(cc.max_abs_diff(&cc.transpose()) <= 1e-12, || {
            format!("n={n}: C·C is not symmetric")
        })?;
        ensure(
            c.rank(0.0) == n - 1 && (c.trace() - (n as f64 - 1.0)).abs() <= 1e-9,
            || format!("n={n}: rank {} trace {}", c.rank(0.0), c.trace()),
        )?;
    }
    Ok(())
}

fn centering_kernel(rng: &mut ChaCha8Rng, max_n: usize) -> Result<(), String> {
    for _ in 0..30 {
        let n = dim(rng, 2, max_n);
        let c = DoubleConstant::centering(n).unwrap();
        let constant = vec![uniform(rng, -10.0, 10.0); n];
        let image = c.apply(&constant).unwrap();
        for &v in &image {
            ensure(v.abs() <= 1e-12, || {
                format!("n={n}: C·constant has entry {v}")
            })?;
        }
    }
    Ok(())
}

fn ss_decomposition(rng: &mut ChaCha8Rng, _max_n: usize) -> Result<(), String> {
    for _ in 0..100 {
        let k = dim(rng, 1, 5);
        let groups: Vec<Vec<f64>> = (0..k)
            .map(|_| {
                let size = dim(rng, 1, 8);
                rand_vec(rng, size, -10.0, 10.0)
            })
            .collect();
        let d = stats::pooled_ss_decomposition(&groups).unwrap();
        let within: f64 = d.group_ss.iter().sum();
        let residual = (d.pooled_ss - (within + d.between_term)).abs();
        ensure(
            residual <= 1e-9 * d.pooled_ss.abs().max(1.0) && d.between_term >= 0.0,
            || {
                format!(
                    "k={k}: pooled {} within {within} between {}",
                    d.pooled_ss, d.between_term
                )
            },
        )?;
    }
    Ok(())
}

fn two_group_between(rng: &mut ChaCha8Rng, _max_n: usize) -> Result<(), String> {
    for _ in 0..100 {
        let n1 = dim(rng, 1, 12);
        let g1 = rand_vec(rng, n1, -5.0, 5.0);
        let n2 = dim(rng, 1, 12);
        let g2 = rand_vec(rng, n2, -5.0, 5.0);
        let d = stats::pooled_ss_decomposition(&[g1.clone(), g2.clone()]).unwrap();
        let closed = stats::two_group_between_term(&g1, &g2).unwrap();
        ensure(
            (d.between_term - closed).abs() <= 1e-10 * closed.max(1.0),
            || format!("n1={n1}, n2={n2}: {} vs closed {closed}", d.between_term),
        )?;
    }
    Ok(())
}

fn residual_scaling(rng: &mut ChaCha8Rng, max_n: usize) -> Result<(), String> {
    for _ in 0..30 {
        let n = dim(rng, 2, max_n);
        let rho = uniform(rng, stats::Equicorrelation::lower_bound(n) * 0.9, 0.95);
        let e = stats::Equicorrelation::new(n, rho).unwrap();
        let c = DoubleConstant::centering(n).unwrap();
        let forms = e.forms();
        let via_root = algebra::product(&[c, forms.root]).unwrap();
        let via_var = algebra::product(&[c, forms.variance]).unwrap();
        let scaled_root = algebra::linear_combination(&[((1.0 - rho).sqrt(), c)]).unwrap();
        let scaled_var = algebra::linear_combination(&[(1.0 - rho, c)]).unwrap();
        let root_defect = via_root
            .materialize()
            .unwrap()
            .max_abs_diff(&scaled_root.materialize().unwrap());
        let var_defect = via_var
            .materialize()
            .unwrap()
            .max_abs_diff(&scaled_var.materialize().unwrap());
        ensure(root_defect <= 1e-10 && var_defect <= 1e-10, || {
            format!("n={n}, rho={rho}: root defect {root_defect}, variance defect {var_defect}")
        })?;
    }
    Ok(())
}

fn trace_eigenvalue_sum(rng: &mut ChaCha8Rng, max_n: usize) -> Result<(), String> {
    for _ in 0..100 {
        let n = dim(rng, 1, max_n);
        let m = rand_matrix(rng, n);
        let c = m.eigenvalues();
        let sum = c.lambda_minor() + (n as f64 - 1.0) * c.lambda_major();
        let envelope = (n as f64) * (m.diag().abs() + n as f64 * m.off_diag().abs()).max(1.0);
        ensure(
            (m.trace() - sum).abs() <= 4.0 * f64::EPSILON * envelope,
            || {
                format!(
                    "{}: trace {} vs eigenvalue sum {sum}",
                    describe(&m),
                    m.trace()
                )
            },
        )?;
    }
    Ok(())
}

fn equicorrelation_forms(rng: &mut ChaCha8Rng, max_n: usize) -> Result<(), String> {
    for _ in 0..30 {
        let n = dim(rng, 2, max_n);
        let rho = uniform(rng, stats::Equicorrelation::lower_bound(n) * 0.9, 0.95);
        let f = stats::Equicorrelation::new(n, rho).unwrap().forms();
        let id = DenseMatrix::identity(n);
        let root_sq = algebra::product(&[f.root, f.root])
            .unwrap()
            .materialize()
            .unwrap();
        let var_inv = algebra::product(&[f.variance, f.variance_inv])
            .unwrap()
            .materialize()
            .unwrap();
        let root_inv = algebra::product(&[f.root, f.root_inv])
            .unwrap()
            .materialize()
            .unwrap();
        let d1 = root_sq.max_abs_diff(&f.variance.materialize().unwrap());
        let d2 = var_inv.max_abs_diff(&id);
        let d3 = root_inv.max_abs_diff(&id);
        ensure(d1 <= 1e-10 && d2 <= 1e-10 && d3 <= 1e-10, || {
            format!("n={n}, rho={rho}: form defects {d1}, {d2}, {d3}")
        })?;
    }
    Ok(())
}

fn effective_df_trace(rng: &mut ChaCha8Rng, max_n: usize) -> Result<(), String> {
    for _ in 0..30 {
        let n = dim(rng, 2, max_n);
        let rho = uniform(rng, stats::Equicorrelation::lower_bound(n) * 0.9, 0.95);
        let report = stats::effective_df(n, rho).unwrap();
        let c = DoubleConstant::centering(n).unwrap().materialize().unwrap();
        let s = DoubleConstant::new(n, 1.0, rho)
            .unwrap()
            .materialize()
            .unwrap();
        let tr = oracle::dense_matmul(&c, &s).unwrap().trace();
        ensure(
            (tr - report.df_eff).abs() <= 1e-12 * report.df_eff.abs().max(1.0),
            || {
                format!(
                    "n={n}, rho={rho}: tr(C·Σ²) = {tr} vs df_eff {}",
                    report.df_eff
                )
            },
        )?;
    }
    Ok(())
}

fn annihilator_orthogonality(rng: &mut ChaCha8Rng, max_n: usize) -> Result<(), String> {
    for _ in 0..30 {
        let n = dim(rng, 4, max_n.max(6));
        let m = dim(rng, 0, 3.min(n - 2));
        let mut x = DenseMatrix::zeros(n, m);
        for i in 0..n {
            for j in 0..m {
                x[(i, j)] = uniform(rng, -3.0, 3.0);
            }
        }
        let y = rand_vec(rng, n, -3.0, 3.0);
        let res = stats::annihilator_residuals(&y, &x).unwrap();
        let mean_defect = res.iter().sum::<f64>().abs();
        ensure(mean_defect <= 1e-8, || {
            format!("n={n}, m={m}: residual sum {mean_defect}")
        })?;
        for j in 0..m {
            let dot: f64 = (0..n).map(|i| res[i] * x[(i, j)]).sum();
            ensure(dot.abs() <= 1e-8, || {
                format!("n={n}, m={m}: residual·column{j} = {dot}")
            })?;
        }
    }
    Ok(())
}

/// The full suite run by `dcmat verify`.
pub fn standard_checks() -> Vec<Check> {
    vec![
        Check {
            name: "determinant_closed_form",
            run: determinant_closed_form,
        },
        Check {
            name: "charpoly_roots",
            run: charpoly_roots,
        },
        Check {
            name: "eigenvalue_roundtrip",
            run: eigenvalue_roundtrip,
        },
        Check {
            name: "eigenvector_structure",
            run: eigenvector_structure,
        },
        Check {
            name: "dft_unitarity",
            run: dft_unitarity,
        },
        Check {
            name: "dft_diagonalization",
            run: dft_diagonalization,
        },
        Check {
            name: "geometric_sum_indicator",
            run: geometric_sum_indicator,
        },
        Check {
            name: "fourier_apply",
            run: fourier_apply,
        },
        Check {
            name: "parseval",
            run: parseval,
        },
        Check {
            name: "plancherel",
            run: plancherel,
        },
        Check {
            name: "linear_combination_closure",
            run: linear_combination_closure,
        },
        Check {
            name: "product_closure",
            run: product_closure,
        },
        Check {
            name: "analytic_functions",
            run: analytic_functions,
        },
        Check {
            name: "exp_matches_dense",
            run: exp_matches_dense,
        },
        Check {
            name: "inverse_roundtrip",
            run: inverse_roundtrip,
        },
        Check {
            name: "sqrt_roundtrip",
            run: sqrt_roundtrip,
        },
        Check {
            name: "exp_log_roundtrip",
            run: exp_log_roundtrip,
        },
        Check {
            name: "basis_decomposition",
            run: basis_decomposition,
        },
        Check {
            name: "canonical_decomposition",
            run: canonical_decomposition,
        },
        Check {
            name: "equicorrelation_limits",
            run: equicorrelation_limits,
        },
        Check {
            name: "centering_projection",
            run: centering_projection,
        },
        Check {
            name: "centering_kernel",
            run: centering_kernel,
        },
        Check {
            name: "ss_decomposition",
            run: ss_decomposition,
        },
        Check {
            name: "two_group_between",
            run: two_group_between,
        },
        Check {
            name: "residual_scaling",
            run: residual_scaling,
        },
        Check {
            name: "trace_eigenvalue_sum",
            run: trace_eigenvalue_sum,
        },
        Check {
            name: "equicorrelation_forms",
            run: equicorrelation_forms,
        },
        Check {
            name: "effective_df_trace",
            run: effective_df_trace,
        },
        Check {
            name: "annihilator_orthogonality",
            run: annihilator_orthogonality,
        },
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn standard_suite_passes_at_small_n() {
        let report = run_checks(42, 12, &standard_checks());
        assert!(report.first_failure().is_none(), "{}", report.rendered());
        assert_eq!(report.len(), standard_checks().len());
    }

    #[test]
    fn injected_fault_is_named_first() {
        fn broken(_: &mut ChaCha8Rng, _: usize) -> Result<(), String> {
            Err("forced counterexample: n=3, a=1, t=1".into())
        }
        let mut checks = standard_checks();
        checks.insert(
            3,
            Check {
                name: "injected_fault",
                run: broken,
            },
        );
        let report = run_checks(42, 8, &checks);
        let failure = report.first_failure().expect("must fail");
        assert!(failure.starts_with("injected_fault:"), "{failure}");
        assert!(failure.contains("counterexample"), "{failure}");
        assert!(report.rendered().contains("FAIL injected_fault"));
        // Every other check still reports.
        assert_eq!(report.rendered().lines().count(), checks.len());
    }

    #[test]
    fn same_seed_renders_identical_reports() {
        let a = run_checks(7, 10, &standard_checks()).rendered();
        let b = run_checks(7, 10, &standard_checks()).rendered();
        assert_eq!(a, b);
    }
}
