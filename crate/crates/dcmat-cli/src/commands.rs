//! Subcommand implementations that return the exact output text.

use dcmat::matrix::{DenseMatrix, DoubleConstant};
use dcmat::{algebra, stats};

use crate::json::{fmt_f64, JsonObject};
use crate::{input, CmdError, OutputFormat};

#[derive(Debug, Clone, Copy)]
pub enum CenterMode {
    Columns,
    Rows,
    Both,
}

fn dense_to_csv(m: &DenseMatrix) -> String {
    let mut out = String::new();
    for i in 0..m.rows() {
        let rendered: Vec<String> = m.row(i).iter().map(|&v| fmt_f64(v)).collect();
        out.push_str(&rendered.join(","));
        out.push('\n');
    }
    out
}

fn dense_to_json(m: &DenseMatrix) -> String {
    let rows: Vec<Vec<f64>> = (0..m.rows()).map(|i| m.row(i).to_vec()).collect();
    JsonObject::new()
        .int("rows", m.rows())
        .int("cols", m.cols())
        .num_matrix("data", &rows)
        .render()
}

pub fn run_center(
    text: &str,
    header: bool,
    ws: bool,
    mode: CenterMode,
    format: OutputFormat,
) -> Result<String, CmdError> {
    let matrix = input::parse_matrix(text, header, ws)?.into_dense()?;
    let centered = match mode {
        CenterMode::Columns => stats::center_columns(&matrix)?,
        CenterMode::Rows => stats::center_rows(&matrix)?,
        CenterMode::Both => stats::double_center(&matrix)?,
    };
    Ok(match format {
        OutputFormat::Csv => dense_to_csv(&centered),
        OutputFormat::Json => dense_to_json(&centered),
    })
}

pub fn run_ss_decomp(
    text: &str,
    header: bool,
    ws: bool,
    group_col: Option<usize>,
) -> Result<String, CmdError> {
    let groups = match group_col {
        Some(col) => {
            if ws {
                return Err(CmdError::Shape(
                    "--group-col requires CSV input (drop --ws)".into(),
                ));
            }
            input::parse_labeled_groups(text, header, col)?
        }
        None => input::parse_blank_line_groups(text, header)?,
    };
    let decomposition = stats::pooled_ss_decomposition(&groups)?;
    let residual = decomposition.identity_residual() / decomposition.pooled_ss.abs().max(1.0);
    Ok(JsonObject::new()
        .num("pooled_ss", decomposition.pooled_ss)
        .num_array("group_ss", &decomposition.group_ss)
        .num("between_term", decomposition.between_term)
        .num("identity_residual", residual)
        .render())
}

pub fn run_variance(
    text: &str,
    header: bool,
    ws: bool,
    rho: Option<f64>,
) -> Result<String, CmdError> {
    let column = input::parse_matrix(text, header, ws)?.into_column()?;
    let n = column.len();
    let s2 = stats::sample_variance(&column)?;
    let ss = stats::sum_of_squares(&column);
    let mut obj = JsonObject::new()
        .int("n", n)
        .num("ss", ss)
        .int("df", stats::degrees_of_freedom(n))
        .num("s2", s2);
    if let Some(rho) = rho {
        let report = stats::adjusted_variance_report(&column, rho)?;
        obj = obj
            .num("rho", rho)
            .num("df_eff_trace", report.df_eff)
            .num("df_eff_paper", report.df_eff_alt)
            .num(
                "s2_adjusted",
                report.variance_estimate.expect("estimate filled from data"),
            );
    }
    Ok(obj.render())
}

/// Matrix function selector for `matfun --fn`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum MatFun {
    Inverse,
    Sqrt,
    Exp,
    Log,
    Pow(f64),
}

pub fn parse_matfun(raw: &str) -> Result<MatFun, String> {
    match raw {
        "inv" => Ok(MatFun::Inverse),
        "sqrt" => Ok(MatFun::Sqrt),
        "exp" => Ok(MatFun::Exp),
        "log" => Ok(MatFun::Log),
        other => {
            if let Some(exponent) = other.strip_prefix("pow:") {
                exponent
                    .parse::<f64>()
                    .map(MatFun::Pow)
                    .map_err(|_| format!("cannot parse power exponent '{exponent}'"))
            } else {
                Err(format!(
                    "unknown function '{other}' (expected inv, sqrt, exp, log, or pow:<y>)"
                ))
            }
        }
    }
}

pub fn run_matfun(n: usize, a: f64, t: f64, f: MatFun, tol: f64) -> Result<String, CmdError> {
    let m = DoubleConstant::new(n, a, t)?;
    let result = match f {
        MatFun::Inverse => algebra::inverse(&m)?,
        MatFun::Sqrt => algebra::sqrt_principal(&m)?,
        MatFun::Exp => algebra::exp_m(&m)?,
        MatFun::Log => algebra::log_m(&m)?,
        MatFun::Pow(y) => algebra::power(&m, y)?,
    };
    let c = result.eigenvalues();
    Ok(JsonObject::new()
        .int("n", n)
        .num("a_out", result.diag())
        .num("t_out", result.off_diag())
        .num("lambda_major", c.lambda_major())
        .num("lambda_minor", c.lambda_minor())
        .str("class", result.classify(tol).label())
        .render())
}

pub fn run_classify(n: usize, a: f64, t: f64, tol: f64) -> Result<String, CmdError> {
    if tol < 0.0 || !tol.is_finite() {
        return Err(CmdError::Domain(format!(
            "tolerance must be a finite nonnegative number, got {tol}"
        )));
    }
    let m = DoubleConstant::new(n, a, t)?;
    let c = m.eigenvalues();
    Ok(JsonObject::new()
        .int("n", n)
        .num("a", a)
        .num("t", t)
        .num("lambda_major", c.lambda_major())
        .num("lambda_minor", c.lambda_minor())
        .str("class", m.classify(tol).label())
        .num("determinant", m.determinant())
        .num("trace", m.trace())
        .int("rank", m.rank(tol))
        .render())
}
