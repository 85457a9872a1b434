//! Plain-text code files.
//!
//! ```text
//! # comment lines start with '#'
//! n=4 k=2
//! XXXX
//! ZZZZ
//! ```
//!
//! The header is optional and validated when present. Each generator is
//! written over `{I, X, Z, Y}` or over `{0, 1, w, W}` (`w` = ω, `W` = ω²);
//! a single line may not mix the two. A leading `+` is tolerated, any other
//! phase prefix is rejected.

use crate::code::AdditiveCode;
use crate::error::{Error, Result};
use crate::gf4::{Gf4, Gf4Vector};

#[derive(Clone, Copy, PartialEq, Eq)]
enum Alphabet {
    Pauli,
    Field,
}

fn parse_header(line_no: usize, text: &str) -> Result<(usize, usize)> {
    let malformed = || Error::MalformedHeader {
        line: line_no,
        text: text.to_string(),
    };
    let mut n = None;
    let mut k = None;
    for field in text.split_whitespace() {
        let (key, value) = field.split_once('=').ok_or_else(malformed)?;
        let value: usize = value.parse().map_err(|_| malformed())?;
        match key {
            "n" if n.is_none() => n = Some(value),
            "k" if k.is_none() => k = Some(value),
            _ => return Err(malformed()),
        }
    }
    match (n, k) {
        (Some(n), Some(k)) => Ok((n, k)),
        _ => Err(malformed()),
    }
}

fn parse_generator(line_no: usize, text: &str) -> Result<Gf4Vector> {
    let body = match text.chars().next() {
        Some('+') => &text[1..],
        Some('-' | '\u{2212}') => return Err(Error::SignPrefix { line: line_no }),
        _ => text,
    };
    if body.starts_with(['-', '+', '\u{2212}', 'i']) {
        return Err(Error::SignPrefix { line: line_no });
    }
    let mut alphabet = None;
    let mut symbols = Vec::with_capacity(body.len());
    for c in body.chars() {
        let (sym, a) = if let Some(s) = Gf4::from_pauli(c) {
            (s, Alphabet::Pauli)
        } else if let Some(s) = Gf4::from_field_char(c) {
            (s, Alphabet::Field)
        } else {
            return Err(Error::UnknownSymbol {
                line: line_no,
                symbol: c,
            });
        };
        match alphabet {
            None => alphabet = Some(a),
            Some(prev) if prev != a => return Err(Error::MixedAlphabet { line: line_no }),
            _ => {}
        }
        symbols.push(sym);
    }
    Ok(Gf4Vector::from_symbols(&symbols))
}

/// Parses a code file. With no generators and no header the result is the
/// length-0 zero code.
pub fn parse_code(text: &str) -> Result<AdditiveCode> {
    let mut header: Option<(usize, usize)> = None;
    let mut rows: Vec<Gf4Vector> = Vec::new();
    let mut width: Option<usize> = None;
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        if line.contains('=') {
            if header.is_some() || !rows.is_empty() {
                return Err(Error::MalformedHeader {
                    line: line_no,
                    text: line.to_string(),
                });
            }
            header = Some(parse_header(line_no, line)?);
            continue;
        }
        let row = parse_generator(line_no, line)?;
        let expected = *width.get_or_insert(header.map_or(row.len(), |(n, _)| n));
        if row.len() != expected {
            return Err(Error::RaggedRows {
                line: line_no,
                expected,
                found: row.len(),
            });
        }
        rows.push(row);
    }
    let n = width.or(header.map(|(n, _)| n)).unwrap_or(0);
    let code = AdditiveCode::from_generators(n, rows)?;
    if let Some((_, k)) = header {
        let actual = code.k().ok_or(Error::HeaderMismatch {
            field: "k",
            declared: k,
            actual: 0,
        })?;
        if actual != k {
            return Err(Error::HeaderMismatch {
                field: "k",
                declared: k,
                actual,
            });
        }
    }
    Ok(code)
}

/// Writes `code` back in the Pauli alphabet with a header.
pub fn format_code(code: &AdditiveCode) -> String {
    let mut out = String::new();
    if let Some(k) = code.k() {
        out.push_str(&format!("n={} k={}\n", code.n(), k));
    }
    for g in code.generators() {
        out.push_str(&g.pauli_label());
        out.push('\n');
    }
    out
}
