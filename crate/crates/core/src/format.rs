//! Plain-text matrix files.
//!
//! ```text
//! # comment
//! field gf 7
//! 2 2
//! 1 2
//! 3 4
//! ```
//!
//! The first significant line names the field (`field q` or `field gf <p>`),
//! the second gives `<rows> <cols>`, then one line of entries per row.
//! Blank lines are ignored and `#` starts a comment anywhere on a line.

use crate::error::{Error, Result};
use crate::field::{Field, Scalar};
use crate::linalg::Matrix;

/// Parses `q`, `gf 7`, `gf7` or `gf:7` (case-insensitive).
pub fn parse_field(text: &str) -> Result<Field> {
    let lower = text.trim().to_ascii_lowercase();
    if lower == "q" {
        return Ok(Field::Rationals);
    }
    let rest = lower
        .strip_prefix("gf")
        .ok_or_else(|| Error::parse(None, format!("unknown field `{}`", text.trim())))?;
    let digits = rest.trim_start_matches([':', ' ', '(']).trim_end_matches(')').trim();
    let p: u64 = digits
        .parse()
        .map_err(|_| Error::parse(None, format!("bad modulus in `{}`", text.trim())))?;
    Field::prime(p)
}

fn at_line(line: usize, e: Error) -> Error {
    match e {
        Error::Parse { message, .. } => Error::parse(Some(line), message),
        Error::CompositeModulus(p) => Error::parse(Some(line), format!("modulus {p} is not prime")),
        other => Error::parse(Some(line), other.to_string()),
    }
}

pub fn parse_matrix(text: &str) -> Result<Matrix> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty());

    let (ln, header) = lines.next().ok_or_else(|| Error::parse(None, "empty matrix file"))?;
    let spec = header
        .strip_prefix("field")
        .filter(|rest| rest.is_empty() || rest.starts_with(char::is_whitespace))
        .ok_or_else(|| Error::parse(Some(ln), "expected `field q` or `field gf <p>`"))?;
    let field = parse_field(spec).map_err(|e| at_line(ln, e))?;

    let (ln, dims) = lines
        .next()
        .ok_or_else(|| Error::parse(None, "missing dimensions line"))?;
    let dims: Vec<usize> = dims
        .split_whitespace()
        .map(str::parse)
        .collect::<std::result::Result<_, _>>()
        .map_err(|_| Error::parse(Some(ln), "dimensions must be two nonnegative integers"))?;
    let [rows, cols] = dims[..] else {
        return Err(Error::parse(Some(ln), "dimensions must be two nonnegative integers"));
    };

    let expected_rows = if cols == 0 { 0 } else { rows };
    let mut entries = Vec::with_capacity(rows * cols);
    for r in 0..expected_rows {
        let (ln, row) = lines
            .next()
            .ok_or_else(|| Error::parse(None, format!("expected {rows} rows, found {r}")))?;
        let tokens: Vec<&str> = row.split_whitespace().collect();
        if tokens.len() != cols {
            return Err(Error::parse(
                Some(ln),
                format!("expected {cols} entries, found {}", tokens.len()),
            ));
        }
        for tok in tokens {
            entries.push(Scalar::parse(tok, field).map_err(|e| at_line(ln, e))?);
        }
    }
    if let Some((ln, _)) = lines.next() {
        return Err(Error::parse(Some(ln), "unexpected content after the last row"));
    }
    Matrix::new(field, rows, cols, entries)
}

pub fn render_matrix(m: &Matrix) -> String {
    let mut out = format!("field {}\n{} {}\n", m.field(), m.rows(), m.cols());
    if m.cols() > 0 {
        for row in m.to_rows_text() {
            out.push_str(&row);
            out.push('\n');
        }
    }
    out
}
