//! Plain-text matrix files.
//!
//! ```text
//! 2 3
//! 101
//! 011
//! ```
//!
//! The header holds the row and column counts as base-10 integers separated
//! by a single space. Each following line holds one row as `0`/`1`
//! characters. CRLF line endings and a missing final newline are accepted;
//! [`render`] always writes LF with a trailing newline.

use lrcx::{BitMatrix, BitVec};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {message}")]
pub struct ParseError {
    /// One-based.
    pub line: usize,
    pub message: String,
}

fn err(line: usize, message: impl Into<String>) -> ParseError {
    ParseError {
        line,
        message: message.into(),
    }
}

fn parse_count(field: &[u8], what: &str) -> Result<usize, ParseError> {
    if field.is_empty() || !field.iter().all(u8::is_ascii_digit) {
        return Err(err(1, format!("{what} count is not a base-10 integer")));
    }
    std::str::from_utf8(field)
        .ok()
        .and_then(|s| s.parse().ok())
        .ok_or_else(|| err(1, format!("{what} count is too large")))
}

fn strip_cr(line: &[u8]) -> &[u8] {
    line.strip_suffix(b"\r").unwrap_or(line)
}

pub fn parse_bytes(input: &[u8]) -> Result<BitMatrix, ParseError> {
    let body = input.strip_suffix(b"\n").unwrap_or(input);
    let mut lines = body.split(|&b| b == b'\n').map(strip_cr);
    let header = lines.next().filter(|h| !h.is_empty()).ok_or_else(|| err(1, "missing header"))?;
    let mut fields = header.split(|&b| b == b' ');
    let (rows, cols) = match (fields.next(), fields.next(), fields.next()) {
        (Some(r), Some(c), None) => (parse_count(r, "row")?, parse_count(c, "column")?),
        _ => return Err(err(1, "header must be \"rows cols\"")),
    };
    if cols == 0 {
        return Err(err(1, "column count must be at least 1"));
    }

    let mut parsed: Vec<BitVec> = Vec::new();
    for (k, line) in lines.enumerate() {
        let number = k + 2;
        if k >= rows {
            return Err(err(number, format!("unexpected line after {rows} rows")));
        }
        if line.len() != cols {
            return Err(err(number, format!("expected {cols} characters, found {}", line.len())));
        }
        let mut row = BitVec::zeros(cols);
        for (j, &b) in line.iter().enumerate() {
            match b {
                b'0' => {}
                b'1' => row.set(j, true),
                _ => return Err(err(number, format!("column {}: expected 0 or 1", j + 1))),
            }
        }
        parsed.push(row);
    }
    if parsed.len() < rows {
        return Err(err(
            parsed.len() + 2,
            format!("expected {rows} rows, found {}", parsed.len()),
        ));
    }
    Ok(BitMatrix::from_rows(cols, &parsed))
}

pub fn parse(input: &str) -> Result<BitMatrix, ParseError> {
    parse_bytes(input.as_bytes())
}

pub fn render(m: &BitMatrix) -> String {
    let mut out = format!("{} {}\n", m.rows(), m.cols());
    for i in 0..m.rows() {
        out.push_str(&m.row(i).to_string());
        out.push('\n');
    }
    out
}
