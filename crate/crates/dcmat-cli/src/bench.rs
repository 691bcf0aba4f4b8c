//! Timing harness: structured closed-form operations against their dense
//! equivalents.
//!
//! The structured operations are O(1) parameter arithmetic (O(n) for
//! apply), so they are batched and the batch time divided out; the dense
//! equivalents run once per trial. Medians over trials are reported. Rows
//! are ordered by (n, op) so output layout never depends on timing.

use std::hint::black_box;
use std::time::Instant;

use dcmat::matrix::{DenseMatrix, DoubleConstant};
use dcmat::{algebra, oracle, Result};

use crate::json::fmt_f64;

pub const CSV_HEADER: &str = "n,op,structured_ns,dense_ns,speedup";

struct Row {
    n: usize,
    op: &'static str,
    structured_ns: f64,
    dense_ns: f64,
}

fn median(samples: &mut [f64]) -> f64 {
    samples.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let mid = samples.len() / 2;
    if samples.len() % 2 == 1 {
        samples[mid]
    } else {
        0.5 * (samples[mid - 1] + samples[mid])
    }
}

fn time_batched<T>(batch: usize, mut f: impl FnMut() -> T) -> f64 {
    let start = Instant::now();
    for _ in 0..batch {
        black_box(f());
    }
    start.elapsed().as_nanos() as f64 / batch as f64
}

fn time_once<T>(mut f: impl FnMut() -> T) -> f64 {
    let start = Instant::now();
    black_box(f());
    start.elapsed().as_nanos() as f64
}

fn bench_dimension(n: usize, trials: usize, rows: &mut Vec<Row>) -> Result<()> {
    // Positive-definite factors keep the dense inverse well posed.
    let m1 = DoubleConstant::new(n, 2.0, 0.5)?;
    let m2 = DoubleConstant::new(n, 1.0, 0.25)?;
    let d1 = m1.materialize()?;
    let d2 = m2.materialize()?;
    let x: Vec<f64> = (0..n).map(|i| (i as f64).sin()).collect();
    let x_dense = DenseMatrix::new(n, 1, x.clone())?;

    let structured_batch = 4096;
    let apply_batch = (1 << 16) / n.max(1) + 1;

    let samples = |op: &'static str,
                   structured: &mut dyn FnMut() -> f64,
                   dense: &mut dyn FnMut() -> f64|
     -> Row {
        let mut s: Vec<f64> = (0..trials).map(|_| structured()).collect();
        let mut d: Vec<f64> = (0..trials).map(|_| dense()).collect();
        Row {
            n,
            op,
            structured_ns: median(&mut s),
            dense_ns: median(&mut d),
        }
    };

    rows.push(samples(
        "apply",
        &mut || time_batched(apply_batch, || m1.apply(&x).unwrap()),
        &mut || time_once(|| oracle::dense_matmul(&d1, &x_dense).unwrap()),
    ));
    rows.push(samples(
        "inverse",
        &mut || time_batched(structured_batch, || algebra::inverse(&m1).unwrap()),
        &mut || time_once(|| oracle::dense_inverse(&d1).unwrap()),
    ));
    rows.push(samples(
        "product",
        &mut || time_batched(structured_batch, || algebra::product(&[m1, m2]).unwrap()),
        &mut || time_once(|| oracle::dense_matmul(&d1, &d2).unwrap()),
    ));
    Ok(())
}

pub fn run(n_list: &[usize], trials: usize) -> Result<String> {
    let mut dims: Vec<usize> = n_list.iter().copied().filter(|&n| n > 0).collect();
    dims.sort_unstable();
    dims.dedup();
    let trials = trials.max(1);
    let mut rows = Vec::new();
    for &n in &dims {
        bench_dimension(n, trials, &mut rows)?;
    }
    rows.sort_by(|p, q| p.n.cmp(&q.n).then(p.op.cmp(q.op)));
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for row in rows {
        let speedup = row.dense_ns / row.structured_ns;
        out.push_str(&format!(
            "{},{},{},{},{}\n",
            row.n,
            row.op,
            fmt_f64(row.structured_ns),
            fmt_f64(row.dense_ns),
            fmt_f64(speedup)
        ));
    }
    Ok(out)
}
