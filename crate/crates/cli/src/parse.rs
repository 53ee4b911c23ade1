//! Matrix and vector files.
//!
//! Two matrix layouts are accepted and told apart by the presence of a
//! comma:
//!
//! - plain text: the dimension `n`, then `n * n` whitespace-separated
//!   numbers in row-major order;
//! - CSV: `n` lines of `n` comma-separated numbers, no header.
//!
//! Numbers are decimals or fractions `p/q` of two integers. Blank lines and
//! lines starting with `#` are ignored.

use std::fmt::Write;
use std::path::Path;

use nekrasov_lcp::Matrix;

use crate::error::CliError;

#[derive(Debug, Clone, Copy)]
struct Token<'a> {
    text: &'a str,
    line: usize,
    column: usize,
}

fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l))
        .filter(|(_, l)| {
            let t = l.trim();
            !t.is_empty() && !t.starts_with('#')
        })
}

fn split_tokens<'a>(line_no: usize, line: &'a str, sep: impl Fn(char) -> bool) -> Vec<Token<'a>> {
    let mut out = Vec::new();
    let mut start = None;
    for (pos, ch) in line.char_indices().chain(std::iter::once((line.len(), ' '))) {
        let boundary = pos == line.len() || sep(ch);
        match (start, boundary) {
            (None, false) => start = Some(pos),
            (Some(s), true) => {
                let raw = &line[s..pos];
                let trimmed = raw.trim();
                if !trimmed.is_empty() {
                    let lead = raw.len() - raw.trim_start().len();
                    out.push(Token {
                        text: trimmed,
                        line: line_no,
                        column: s + lead + 1,
                    });
                }
                start = None;
            }
            _ => {}
        }
    }
    out
}

/// Parses a decimal or an integer fraction `p/q`.
pub fn parse_number(text: &str) -> Option<f64> {
    let value = match text.split_once('/') {
        Some((p, q)) => {
            let p: i64 = p.trim().parse().ok()?;
            let q: i64 = q.trim().parse().ok()?;
            if q == 0 {
                return None;
            }
            p as f64 / q as f64
        }
        None => text.parse::<f64>().ok()?,
    };
    value.is_finite().then_some(value)
}

fn number(tok: Token<'_>) -> Result<f64, CliError> {
    parse_number(tok.text).ok_or_else(|| CliError::Parse {
        line: tok.line,
        column: tok.column,
        message: format!("invalid number {:?}", tok.text),
    })
}

/// Parses matrix file contents in either layout.
pub fn parse_matrix_str(text: &str) -> Result<Matrix, CliError> {
    if content_lines(text).any(|(_, l)| l.contains(',')) {
        parse_csv(text)
    } else {
        parse_plain(text)
    }
}

fn parse_plain(text: &str) -> Result<Matrix, CliError> {
    let tokens: Vec<Token<'_>> = content_lines(text)
        .flat_map(|(no, l)| split_tokens(no, l, char::is_whitespace))
        .collect();
    let (head, rest) = tokens.split_first().ok_or(CliError::EmptyFile)?;
    let n: usize = head
        .text
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| CliError::Parse {
            line: head.line,
            column: head.column,
            message: format!("expected a positive dimension, found {:?}", head.text),
        })?;
    if rest.len() != n * n {
        return Err(CliError::NonSquare(format!(
            "dimension {n} needs {} entries, found {}",
            n * n,
            rest.len()
        )));
    }
    let data = rest.iter().map(|&t| number(t)).collect::<Result<Vec<_>, _>>()?;
    Ok(Matrix::from_row_major(n, data)?)
}

fn parse_csv(text: &str) -> Result<Matrix, CliError> {
    let rows: Vec<Vec<Token<'_>>> = content_lines(text)
        .map(|(no, l)| split_tokens(no, l, |c| c == ','))
        .collect();
    if rows.is_empty() {
        return Err(CliError::EmptyFile);
    }
    let n = rows.len();
    let mut data = Vec::with_capacity(n * n);
    for row in &rows {
        if row.len() != n {
            return Err(CliError::NonSquare(format!(
                "{n} rows but line {} has {} entries",
                row.first().map_or(0, |t| t.line),
                row.len()
            )));
        }
        for &t in row {
            data.push(number(t)?);
        }
    }
    Ok(Matrix::from_row_major(n, data)?)
}

/// Reads and parses a matrix file.
pub fn parse_matrix(path: &Path) -> Result<Matrix, CliError> {
    let text = std::fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    parse_matrix_str(&text)
}

/// Parses a vector: numbers separated by whitespace and/or commas.
pub fn parse_vector_str(text: &str) -> Result<Vec<f64>, CliError> {
    let values = content_lines(text)
        .flat_map(|(no, l)| split_tokens(no, l, |c| c == ',' || c.is_whitespace()))
        .map(number)
        .collect::<Result<Vec<_>, _>>()?;
    if values.is_empty() {
        return Err(CliError::EmptyFile);
    }
    Ok(values)
}

pub fn parse_vector(path: &Path) -> Result<Vec<f64>, CliError> {
    let text = std::fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    parse_vector_str(&text)
}

/// Plain-text dump that [`parse_matrix_str`] reads back bit-exactly.
pub fn format_matrix(m: &Matrix) -> String {
    let mut out = format!("{}\n", m.n());
    for row in m.rows() {
        let line: Vec<String> = row.iter().map(|v| format!("{v:?}")).collect();
        let _ = writeln!(out, "{}", line.join(" "));
    }
    out
}
