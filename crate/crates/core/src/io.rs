//! Plain-text matrix files.
//!
//! ```text
//! symmetric 2
//! 1.0000000000000000e0 -5.0000000000000000e-1
//! -5.0000000000000000e-1 2.0000000000000000e0
//! ```
//!
//! The header is followed by `n` rows of `n` whitespace-separated numbers.
//! Rows must agree with their transpose to within [`SYMMETRY_TOL`]; the
//! stored matrix is then exactly symmetric. Numbers are written with 17
//! significant digits, so a written file parses back to the same bits and
//! re-emits byte for byte.

use std::path::Path;

use crate::error::{Error, Result};
use crate::matrix::SymmetricMatrix;

pub const SYMMETRY_TOL: f64 = 1e-12;

const HEADER: &str = "symmetric";

pub fn format_number(v: f64) -> String {
    format!("{v:.16e}")
}

pub fn emit_matrix(a: &SymmetricMatrix) -> String {
    let n = a.dim();
    let mut out = format!("{HEADER} {n}\n");
    for i in 0..n {
        let row: Vec<String> = a.row(i).iter().map(|&v| format_number(v)).collect();
        out.push_str(&row.join(" "));
        out.push('\n');
    }
    out
}

fn parse_err(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        column,
        message: message.into(),
    }
}

/// Whitespace-separated tokens with their 1-based starting column.
fn tokens(line: &str) -> impl Iterator<Item = (usize, &str)> {
    line.split_whitespace().map(move |tok| {
        let offset = tok.as_ptr() as usize - line.as_ptr() as usize;
        (line[..offset].chars().count() + 1, tok)
    })
}

pub fn parse_matrix(text: &str) -> Result<SymmetricMatrix> {
    let mut lines = text.lines().enumerate().map(|(k, l)| (k + 1, l));

    let (hline, header) = lines
        .next()
        .ok_or_else(|| parse_err(1, 1, format!("empty input, expected `{HEADER} <n>`")))?;
    let mut htoks = tokens(header);
    match htoks.next() {
        Some((_, HEADER)) => {}
        Some((col, tok)) => {
            return Err(parse_err(
                hline,
                col,
                format!("expected `{HEADER}`, found `{tok}`"),
            ))
        }
        None => return Err(parse_err(hline, 1, format!("expected `{HEADER} <n>`"))),
    }
    let n = match htoks.next() {
        Some((col, tok)) => match tok.parse::<usize>() {
            Ok(n) if n >= 1 => n,
            _ => return Err(parse_err(hline, col, format!("invalid dimension `{tok}`"))),
        },
        None => {
            return Err(parse_err(
                hline,
                header.chars().count() + 1,
                "missing dimension",
            ))
        }
    };
    if let Some((col, tok)) = htoks.next() {
        return Err(parse_err(
            hline,
            col,
            format!("unexpected `{tok}` after dimension"),
        ));
    }

    let mut rows = Vec::with_capacity(n);
    let mut last_line = hline;
    for r in 0..n {
        let (lno, line) = lines.next().ok_or_else(|| {
            parse_err(last_line + 1, 1, format!("file ends after {r} of {n} rows"))
        })?;
        last_line = lno;
        let mut row = Vec::with_capacity(n);
        for (col, tok) in tokens(line) {
            if row.len() == n {
                return Err(parse_err(
                    lno,
                    col,
                    format!("row has more than {n} entries"),
                ));
            }
            let v: f64 = tok
                .parse()
                .map_err(|_| parse_err(lno, col, format!("invalid number `{tok}`")))?;
            if !v.is_finite() {
                return Err(parse_err(lno, col, format!("non-finite value `{tok}`")));
            }
            row.push(v);
        }
        if row.len() < n {
            return Err(parse_err(
                lno,
                line.chars().count() + 1,
                format!("row has {} of {n} entries", row.len()),
            ));
        }
        rows.push(row);
    }
    for (lno, line) in lines {
        if let Some((col, tok)) = tokens(line).next() {
            return Err(parse_err(
                lno,
                col,
                format!("unexpected `{tok}` after the last row"),
            ));
        }
    }

    SymmetricMatrix::from_rows_with_tolerance(&rows, SYMMETRY_TOL).map_err(|e| match e {
        Error::Asymmetric { row, col, diff } => parse_err(
            hline + 1 + row,
            1,
            format!(
                "entry ({}, {}) differs from its transpose by {diff:e}",
                row + 1,
                col + 1
            ),
        ),
        other => other,
    })
}

pub fn read_matrix(path: &Path) -> Result<SymmetricMatrix> {
    let text = std::fs::read_to_string(path).map_err(|e| io_err(path, e))?;
    parse_matrix(&text)
}

pub fn write_matrix(path: &Path, a: &SymmetricMatrix) -> Result<()> {
    std::fs::write(path, emit_matrix(a)).map_err(|e| io_err(path, e))
}

pub(crate) fn io_err(path: &Path, e: std::io::Error) -> Error {
    Error::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    }
}
