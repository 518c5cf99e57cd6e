//! Plain-text matrix formats.
//!
//! * bit rows: one line per row of `0`/`1` characters, all the same length.
//! * compact: the integers `n m` followed by the `n` decimal row codes. The
//!   writer puts everything on one line; the reader accepts any whitespace.
//!
//! [`parse_matrix`] picks the format from the first non-blank line: two or
//! more whitespace-separated tokens mean compact.

use crate::error::{Error, Result};
use crate::matrix::BinaryMatrix;

fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

pub fn parse_matrix(text: &str) -> Result<BinaryMatrix> {
    let first = text
        .lines()
        .find(|l| !l.trim().is_empty())
        .ok_or_else(|| parse_err(1, "empty input"))?;
    if first.split_whitespace().count() >= 2 {
        parse_compact(text)
    } else {
        parse_bit_rows(text)
    }
}

pub fn parse_bit_rows(text: &str) -> Result<BinaryMatrix> {
    let mut width = None;
    let mut rows = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() {
            continue;
        }
        let lineno = idx + 1;
        if let Some(bad) = line.chars().find(|c| *c != '0' && *c != '1') {
            return Err(parse_err(lineno, format!("unexpected character {bad:?}")));
        }
        match width {
            None => width = Some(line.len()),
            Some(w) if w != line.len() => {
                return Err(parse_err(
                    lineno,
                    format!("row has {} columns, expected {w}", line.len()),
                ))
            }
            _ => {}
        }
        if line.len() > crate::matrix::MAX_WIDTH {
            return Err(Error::WidthTooLarge {
                width: line.len(),
                cap: crate::matrix::MAX_WIDTH,
            });
        }
        rows.push(u64::from_str_radix(line, 2).expect("validated binary digits"));
    }
    let m = width.ok_or_else(|| parse_err(1, "empty input"))?;
    BinaryMatrix::new(m, rows)
}

pub fn parse_compact(text: &str) -> Result<BinaryMatrix> {
    let mut tokens = text.lines().enumerate().flat_map(|(idx, line)| {
        line.split_whitespace().map(move |tok| (idx + 1, tok))
    });
    let mut next_number = |what: &str| -> Result<(usize, u64)> {
        let (line, tok) = tokens
            .next()
            .ok_or_else(|| parse_err(0, format!("missing {what}")))?;
        tok.parse::<u64>()
            .map(|v| (line, v))
            .map_err(|_| parse_err(line, format!("{what} {tok:?} is not a non-negative integer")))
    };
    let (_, n) = next_number("row count")?;
    let (_, m) = next_number("column count")?;
    let (n, m) = (n as usize, m as usize);
    if n > crate::matrix::MAX_WIDTH {
        return Err(Error::WidthTooLarge {
            width: n,
            cap: crate::matrix::MAX_WIDTH,
        });
    }
    let mut rows = Vec::with_capacity(n);
    for _ in 0..n {
        rows.push(next_number("row code")?.1);
    }
    if let Some((line, tok)) = tokens.next() {
        return Err(parse_err(line, format!("trailing token {tok:?}")));
    }
    BinaryMatrix::new(m, rows)
}

/// Several compact matrices separated by newlines or `;`.
pub fn parse_compact_list(text: &str) -> Result<Vec<BinaryMatrix>> {
    let mut out = Vec::new();
    for (idx, line) in text.lines().enumerate() {
        for part in line.split(';') {
            if part.trim().is_empty() {
                continue;
            }
            let m = parse_compact(part).map_err(|e| match e {
                Error::Parse { message, .. } => parse_err(idx + 1, message),
                other => other,
            })?;
            out.push(m);
        }
    }
    Ok(out)
}

pub fn to_bit_rows(a: &BinaryMatrix) -> String {
    let mut s = a.to_string();
    s.push('\n');
    s
}

/// Single line, no trailing newline.
pub fn to_compact(a: &BinaryMatrix) -> String {
    let mut s = format!("{} {}", a.n(), a.m());
    for r in a.rows() {
        s.push(' ');
        s.push_str(&r.to_string());
    }
    s
}
