//! Plain-text matrix blocks:
//!
//! ```text
//! GF2 <rows> <cols>
//! 0110
//! ...
//! ```
//!
//! Rows are written in the row-vector convention used throughout the crate.

use super::{BitMatrix, BitVector, Gf2Error};

pub fn format_matrix(m: &BitMatrix) -> String {
    let mut out = format!("GF2 {} {}\n", m.nrows(), m.ncols());
    for r in m.rows() {
        out.push_str(&r.to_bit_string());
        out.push('\n');
    }
    out
}

pub fn parse_matrix(text: &str) -> Result<BitMatrix, Gf2Error> {
    let mut lines = text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty());
    let m = parse_block(&mut lines)?;
    if let Some((n, _)) = lines.next() {
        return Err(parse_err(n, "trailing content after matrix block"));
    }
    Ok(m)
}

/// Reads one matrix block from an iterator of `(line_index, line)` pairs.
/// Blank lines must already be filtered out.
pub fn parse_block<'a, I>(lines: &mut I) -> Result<BitMatrix, Gf2Error>
where
    I: Iterator<Item = (usize, &'a str)>,
{
    let (n, header) = lines.next().ok_or_else(|| parse_err(0, "missing GF2 header"))?;
    let mut fields = header.split_whitespace();
    if fields.next() != Some("GF2") {
        return Err(parse_err(n, "expected `GF2 <rows> <cols>`"));
    }
    let rows = parse_dim(n, fields.next())?;
    let cols = parse_dim(n, fields.next())?;
    if fields.next().is_some() {
        return Err(parse_err(n, "unexpected tokens in GF2 header"));
    }
    let mut data = Vec::with_capacity(rows);
    for _ in 0..rows {
        let (n, line) = lines
            .next()
            .ok_or_else(|| parse_err(n, format!("expected {rows} rows")))?;
        let line = line.trim();
        if line.len() != cols {
            return Err(parse_err(n, format!("row has {} entries, expected {cols}", line.len())));
        }
        let mut v = BitVector::zeros(cols);
        for (j, c) in line.chars().enumerate() {
            match c {
                '0' => {}
                '1' => v.set(j, true),
                other => return Err(parse_err(n, format!("invalid character {other:?}"))),
            }
        }
        data.push(v);
    }
    BitMatrix::from_rows(data)
}

fn parse_dim(line: usize, tok: Option<&str>) -> Result<usize, Gf2Error> {
    match tok.map(str::parse::<usize>) {
        Some(Ok(v)) if v > 0 => Ok(v),
        _ => Err(parse_err(line, "dimensions must be positive integers")),
    }
}

fn parse_err(line: usize, msg: impl Into<String>) -> Gf2Error {
    Gf2Error::Parse {
        line: line + 1,
        msg: msg.into(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_is_bit_exact() {
        let text = "GF2 2 3\n101\n011\n";
        let m = parse_matrix(text).unwrap();
        assert_eq!(format_matrix(&m), text);
    }

    #[test]
    fn rejects_malformed() {
        assert!(parse_matrix("GF2 2 2\n10\n").is_err());
        assert!(parse_matrix("GF2 1 2\n1x\n").is_err());
        assert!(parse_matrix("GF3 1 1\n1\n").is_err());
        assert!(parse_matrix("GF2 0 1\n").is_err());
        assert!(parse_matrix("GF2 1 1\n1\n0\n").is_err());
    }
}
