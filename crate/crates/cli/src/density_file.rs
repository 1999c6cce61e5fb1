//! Plain-text density matrices.
//!
//! ```text
//! dim 2
//! 0.5 0 0 0
//! 0 0 0.5 0
//! ```
//!
//! The header gives the dimension `N`; each of the following `N` lines holds
//! one row as `2N` reals, real and imaginary parts interleaved.

use std::fmt::Write as _;
use std::path::Path;

use mixmeter_core::qmatrix::ComplexMatrix;
use mixmeter_core::{Complex64, Error};

use crate::error::{CliError, Result};

pub fn read_density_file(path: impl AsRef<Path>) -> Result<ComplexMatrix> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
    parse_density(&text)
}

fn parse_error(line: usize, column: usize, message: impl Into<String>) -> CliError {
    CliError::Parse {
        line,
        column,
        message: message.into(),
    }
}

/// Whitespace-separated tokens with their 1-based column.
fn tokens(line: &str) -> impl Iterator<Item = (usize, &str)> {
    line.split_whitespace()
        .map(move |tok| (tok.as_ptr() as usize - line.as_ptr() as usize + 1, tok))
}

pub fn parse_density(text: &str) -> Result<ComplexMatrix> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l))
        .filter(|(_, l)| !l.trim().is_empty());

    let (header_no, header) = lines.next().ok_or_else(|| parse_error(1, 1, "empty file, expected `dim N`"))?;
    let mut head = tokens(header);
    match head.next() {
        Some((_, "dim")) => {}
        Some((col, tok)) => return Err(parse_error(header_no, col, format!("expected `dim`, found `{tok}`"))),
        None => unreachable!("blank lines are skipped"),
    }
    let dim = match head.next() {
        Some((col, tok)) => tok
            .parse::<usize>()
            .ok()
            .filter(|&n| n > 0)
            .ok_or_else(|| parse_error(header_no, col, format!("`{tok}` is not a positive dimension")))?,
        None => return Err(parse_error(header_no, header.len() + 1, "missing dimension after `dim`")),
    };
    if let Some((col, tok)) = head.next() {
        return Err(parse_error(header_no, col, format!("unexpected `{tok}` after the dimension")));
    }

    let mut data = Vec::with_capacity(dim * dim);
    let mut rows = 0;
    for (line_no, line) in lines {
        if rows == dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: rows + 1 + text.lines().skip(line_no).filter(|l| !l.trim().is_empty()).count(),
            }
            .into());
        }
        let mut values = Vec::with_capacity(2 * dim);
        for (col, tok) in tokens(line) {
            let v: f64 = tok
                .parse()
                .map_err(|_| parse_error(line_no, col, format!("`{tok}` is not a number")))?;
            if !v.is_finite() {
                return Err(parse_error(line_no, col, format!("`{tok}` is not finite")));
            }
            values.push(v);
        }
        if values.len() != 2 * dim {
            return Err(parse_error(
                line_no,
                1,
                format!("expected {} values (re/im pairs), found {}", 2 * dim, values.len()),
            ));
        }
        data.extend(values.chunks_exact(2).map(|c| Complex64::new(c[0], c[1])));
        rows += 1;
    }
    if rows != dim {
        return Err(Error::DimensionMismatch {
            expected: dim,
            found: rows,
        }
        .into());
    }
    Ok(ComplexMatrix::from_row_major(dim, dim, data)?)
}

/// Text form of a square matrix, 17 significant digits per value.
pub fn format_density(m: &ComplexMatrix) -> Result<String> {
    if !m.is_square() {
        return Err(Error::NonSquare {
            rows: m.rows(),
            cols: m.cols(),
        }
        .into());
    }
    let n = m.rows();
    let mut out = format!("dim {n}\n");
    for i in 0..n {
        for j in 0..n {
            let z = m[(i, j)];
            let sep = if j == 0 { "" } else { " " };
            write!(out, "{sep}{:.16e} {:.16e}", z.re, z.im).expect("writing to a String");
        }
        out.push('\n');
    }
    Ok(out)
}

pub fn write_density(path: impl AsRef<Path>, m: &ComplexMatrix) -> Result<()> {
    let path = path.as_ref();
    std::fs::write(path, format_density(m)?).map_err(|e| CliError::io(path, e))
}
