//! Input parsing: RFC-4180 CSV (default) or whitespace-delimited numeric
//! data, with line/column diagnostics on failure.

use dcmat::matrix::DenseMatrix;

use crate::CmdError;

/// Raw numeric rows in input order.
#[derive(Debug)]
pub struct NumericRows {
    pub rows: Vec<Vec<f64>>,
}

fn parse_field(raw: &str, line: u64, column: usize) -> Result<f64, CmdError> {
    raw.trim().parse::<f64>().map_err(|_| {
        CmdError::Parse(format!(
            "line {line}, column {column}: cannot parse '{raw}' as a number"
        ))
    })
}

/// Parses CSV text into numeric rows. `header` skips the first record.
pub fn parse_csv_matrix(text: &str, header: bool) -> Result<NumericRows, CmdError> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(false)
        .trim(csv::Trim::All)
        .from_reader(text.as_bytes());
    let mut rows = Vec::new();
    for (index, record) in reader.records().enumerate() {
        let record = record.map_err(|e| CmdError::Parse(format!("{e}")))?;
        if header && index == 0 {
            continue;
        }
        let line = record.position().map(|p| p.line()).unwrap_or(0);
        let row = record
            .iter()
            .enumerate()
            .map(|(j, field)| parse_field(field, line, j + 1))
            .collect::<Result<Vec<f64>, _>>()?;
        rows.push(row);
    }
    Ok(NumericRows { rows })
}

/// Parses whitespace-delimited text into numeric rows; blank lines are
/// skipped, every row must have the same width.
pub fn parse_ws_matrix(text: &str, header: bool) -> Result<NumericRows, CmdError> {
    let mut rows: Vec<Vec<f64>> = Vec::new();
    let mut width: Option<usize> = None;
    let mut seen_rows = 0usize;
    for (i, raw_line) in text.lines().enumerate() {
        let line_no = (i + 1) as u64;
        if raw_line.trim().is_empty() {
            continue;
        }
        seen_rows += 1;
        if header && seen_rows == 1 {
            continue;
        }
        let row = raw_line
            .split_whitespace()
            .enumerate()
            .map(|(j, field)| parse_field(field, line_no, j + 1))
            .collect::<Result<Vec<f64>, _>>()?;
        match width {
            None => width = Some(row.len()),
            Some(w) if w != row.len() => {
                return Err(CmdError::Parse(format!(
                    "line {line_no}: found {} fields, expected {w}",
                    row.len()
                )));
            }
            _ => {}
        }
        rows.push(row);
    }
    Ok(NumericRows { rows })
}

pub fn parse_matrix(text: &str, header: bool, ws: bool) -> Result<NumericRows, CmdError> {
    if ws {
        parse_ws_matrix(text, header)
    } else {
        parse_csv_matrix(text, header)
    }
}

impl NumericRows {
    /// Requires at least one row and rectangular shape.
    pub fn into_dense(self) -> Result<DenseMatrix, CmdError> {
        if self.rows.is_empty() {
            return Err(CmdError::Shape("input contains no data rows".into()));
        }
        let cols = self.rows[0].len();
        if cols == 0 {
            return Err(CmdError::Shape("input rows have no fields".into()));
        }
        for (i, row) in self.rows.iter().enumerate() {
            if row.len() != cols {
                return Err(CmdError::Shape(format!(
                    "row {} has {} fields, expected {cols}",
                    i + 1,
                    row.len()
                )));
            }
        }
        let rows = self.rows.len();
        let data: Vec<f64> = self.rows.into_iter().flatten().collect();
        DenseMatrix::new(rows, cols, data).map_err(CmdError::from)
    }

    /// Requires exactly one column; returns it.
    pub fn into_column(self) -> Result<Vec<f64>, CmdError> {
        if self.rows.is_empty() {
            return Err(CmdError::Shape("input contains no data rows".into()));
        }
        let mut column = Vec::with_capacity(self.rows.len());
        for (i, row) in self.rows.iter().enumerate() {
            if row.len() != 1 {
                return Err(CmdError::Shape(format!(
                    "expected a single numeric column, but row {} has {} fields",
                    i + 1,
                    row.len()
                )));
            }
            column.push(row[0]);
        }
        Ok(column)
    }
}

/// Groups for the sum-of-squares decomposition: one value per line,
/// blank lines separate groups.
pub fn parse_blank_line_groups(text: &str, header: bool) -> Result<Vec<Vec<f64>>, CmdError> {
    let mut groups: Vec<Vec<f64>> = Vec::new();
    let mut current: Vec<f64> = Vec::new();
    let mut skipped_header = !header;
    for (i, raw_line) in text.lines().enumerate() {
        let line_no = (i + 1) as u64;
        let trimmed = raw_line.trim();
        if trimmed.is_empty() {
            if !current.is_empty() {
                groups.push(std::mem::take(&mut current));
            }
            continue;
        }
        if !skipped_header {
            skipped_header = true;
            continue;
        }
        current.push(parse_field(trimmed, line_no, 1)?);
    }
    if !current.is_empty() {
        groups.push(current);
    }
    if groups.is_empty() {
        return Err(CmdError::Shape("input contains no data rows".into()));
    }
    Ok(groups)
}

/// Groups keyed by a label column: records must have exactly two fields,
/// the label at `group_col` and one numeric value. Group order follows
/// first appearance.
pub fn parse_labeled_groups(
    text: &str,
    header: bool,
    group_col: usize,
) -> Result<Vec<Vec<f64>>, CmdError> {
    if group_col > 1 {
        return Err(CmdError::Shape(format!(
            "--group-col must be 0 or 1 for two-column input, got {group_col}"
        )));
    }
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(false)
        .trim(csv::Trim::All)
        .from_reader(text.as_bytes());
    let mut order: Vec<String> = Vec::new();
    let mut groups: Vec<Vec<f64>> = Vec::new();
    for (index, record) in reader.records().enumerate() {
        let record = record.map_err(|e| CmdError::Parse(format!("{e}")))?;
        if header && index == 0 {
            continue;
        }
        let line = record.position().map(|p| p.line()).unwrap_or(0);
        if record.len() != 2 {
            return Err(CmdError::Shape(format!(
                "line {line}: labeled input needs exactly 2 columns, found {}",
                record.len()
            )));
        }
        let label = record.get(group_col).unwrap_or_default().to_string();
        let value_col = 1 - group_col;
        let value = parse_field(
            record.get(value_col).unwrap_or_default(),
            line,
            value_col + 1,
        )?;
        match order.iter().position(|l| l == &label) {
            Some(slot) => groups[slot].push(value),
            None => {
                order.push(label);
                groups.push(vec![value]);
            }
        }
    }
    if groups.is_empty() {
        return Err(CmdError::Shape("input contains no data rows".into()));
    }
    Ok(groups)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn csv_matrix_round_trip() {
        let parsed = parse_csv_matrix("1,2\n3,4\n", false).unwrap();
        assert_eq!(parsed.rows, vec![vec![1.0, 2.0], vec![3.0, 4.0]]);
        let dense = parsed.into_dense().unwrap();
        assert_eq!(dense.rows(), 2);
        assert_eq!(dense[(1, 0)], 3.0);
    }

    #[test]
    fn header_is_skipped() {
        let parsed = parse_csv_matrix("x,y\n1,2\n", true).unwrap();
        assert_eq!(parsed.rows, vec![vec![1.0, 2.0]]);
    }

    #[test]
    fn parse_errors_carry_position() {
        let err = parse_csv_matrix("1,2\n3,oops\n", false).unwrap_err();
        match err {
            CmdError::Parse(msg) => {
                assert!(msg.contains("line 2"), "{msg}");
                assert!(msg.contains("column 2"), "{msg}");
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn ragged_csv_is_a_parse_error() {
        assert!(matches!(
            parse_csv_matrix("1,2\n3\n", false),
            Err(CmdError::Parse(_))
        ));
    }

    #[test]
    fn whitespace_mode_parses_columns() {
        let parsed = parse_ws_matrix("  1  2\n3\t4\n", false).unwrap();
        assert_eq!(parsed.rows, vec![vec![1.0, 2.0], vec![3.0, 4.0]]);
    }

    #[test]
    fn single_column_extraction() {
        let parsed = parse_csv_matrix("1\n2\n3\n", false).unwrap();
        assert_eq!(parsed.into_column().unwrap(), vec![1.0, 2.0, 3.0]);
        let wide = parse_csv_matrix("1,2\n", false).unwrap();
        assert!(matches!(wide.into_column(), Err(CmdError::Shape(_))));
    }

    #[test]
    fn blank_line_groups() {
        let groups = parse_blank_line_groups("1\n2\n\n4\n6\n", false).unwrap();
        assert_eq!(groups, vec![vec![1.0, 2.0], vec![4.0, 6.0]]);
        // Consecutive separators collapse.
        let groups = parse_blank_line_groups("1\n\n\n2\n", false).unwrap();
        assert_eq!(groups, vec![vec![1.0], vec![2.0]]);
    }

    #[test]
    fn labeled_groups_follow_first_appearance() {
        let groups = parse_labeled_groups("a,1\nb,4\na,2\nb,6\n", false, 0).unwrap();
        assert_eq!(groups, vec![vec![1.0, 2.0], vec![4.0, 6.0]]);
        let flipped = parse_labeled_groups("1,a\n2,a\n", false, 1).unwrap();
        assert_eq!(flipped, vec![vec![1.0, 2.0]]);
    }

    #[test]
    fn empty_input_is_a_shape_error() {
        assert!(matches!(
            parse_csv_matrix("", false).unwrap().into_dense(),
            Err(CmdError::Shape(_))
        ));
        assert!(matches!(
            parse_blank_line_groups("\n\n", false),
            Err(CmdError::Shape(_))
        ));
    }
}
