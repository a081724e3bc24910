//! The matrix file format: a `ring` header followed by named matrix blocks.
//!
//! ```text
//! ring zmod 30
//! matrix A 1 1
//! 15
//! matrix B 1 1
//! 10   # comments run to the end of the line
//! ```

use std::fmt;

use kerpair::matrix::tokenize;
use kerpair::{ring_make, Element, Matrix, RingKind, RingSpec};

use crate::CliError;

/// Keyword used for each ring family in the header line.
pub fn ring_keyword(kind: RingKind) -> &'static str {
    match kind {
        RingKind::PrimeField => "gf",
        RingKind::ModRing => "zmod",
        RingKind::PolyRing => "polygf",
        RingKind::PolyModRing => "polyzmod",
    }
}

fn parse_kind(word: &str) -> Option<RingKind> {
    match word {
        "gf" => Some(RingKind::PrimeField),
        "zmod" => Some(RingKind::ModRing),
        "polygf" => Some(RingKind::PolyRing),
        "polyzmod" => Some(RingKind::PolyModRing),
        _ => None,
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MatrixFile {
    pub ring: RingSpec,
    /// Matrices in file order.
    pub matrices: Vec<(String, Matrix)>,
}

fn parse_error(line: usize, message: impl Into<String>) -> CliError {
    CliError::Parse {
        line,
        message: message.into(),
    }
}

fn parse_count(word: &str, line: usize, what: &str) -> Result<usize, CliError> {
    word.parse()
        .map_err(|_| parse_error(line, format!("{what} `{word}` is not a non-negative integer")))
}

/// Parses one row of elements; `line` is only used in error messages.
pub fn parse_vector(ring: &RingSpec, text: &str, line: usize) -> Result<Vec<Element>, CliError> {
    let tokens = tokenize(text).map_err(|e| parse_error(line, e.to_string()))?;
    tokens
        .iter()
        .map(|t| ring.parse_element(t).map_err(|e| parse_error(line, e.to_string())))
        .collect()
}

/// Rows of elements, one vector per non-blank line.
pub fn parse_vectors(ring: &RingSpec, text: &str) -> Result<Vec<(usize, Vec<Element>)>, CliError> {
    let mut out = Vec::new();
    for (k, line) in text.lines().enumerate() {
        let v = parse_vector(ring, line, k + 1)?;
        if !v.is_empty() {
            out.push((k + 1, v));
        }
    }
    Ok(out)
}

impl MatrixFile {
    pub fn parse(text: &str) -> Result<Self, CliError> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(k, l)| (k + 1, l.split('#').next().unwrap_or("").trim()))
            .filter(|(_, l)| !l.is_empty());

        let (n, header) = lines.next().ok_or_else(|| parse_error(1, "missing `ring` header"))?;
        let words: Vec<&str> = header.split_whitespace().collect();
        let [keyword, family, param] = words[..] else {
            return Err(parse_error(n, "expected `ring <gf|zmod|polygf|polyzmod> <parameter>`"));
        };
        if keyword != "ring" {
            return Err(parse_error(n, format!("expected `ring` header, found `{keyword}`")));
        }
        let kind = parse_kind(family).ok_or_else(|| parse_error(n, format!("unknown ring family `{family}`")))?;
        let param: u64 = param
            .parse()
            .map_err(|_| parse_error(n, format!("ring parameter `{param}` is not an integer")))?;
        let ring = ring_make(kind, param).map_err(|e| parse_error(n, e.to_string()))?;

        let mut matrices: Vec<(String, Matrix)> = Vec::new();
        let mut lines = lines.peekable();
        while let Some((n, line)) = lines.next() {
            let words: Vec<&str> = line.split_whitespace().collect();
            let ["matrix", name, rows, cols] = words[..] else {
                return Err(parse_error(n, format!("expected `matrix <NAME> <rows> <cols>`, found `{line}`")));
            };
            if matrices.iter().any(|(m, _)| m == name) {
                return Err(parse_error(n, format!("duplicate matrix name `{name}`")));
            }
            let rows = parse_count(rows, n, "row count")?;
            let cols = parse_count(cols, n, "column count")?;
            let mut entries = Vec::with_capacity(rows * cols);
            for r in 0..rows {
                let Some(&(k, row)) = lines.peek() else {
                    return Err(parse_error(n, format!("matrix `{name}` has {r} rows, expected {rows}")));
                };
                if row.starts_with("matrix") {
                    return Err(parse_error(k, format!("matrix `{name}` has {r} rows, expected {rows}")));
                }
                lines.next();
                let v = parse_vector(&ring, row, k)?;
                if v.len() != cols {
                    return Err(parse_error(k, format!("row has {} entries, expected {cols}", v.len())));
                }
                entries.extend(v);
            }
            let m = Matrix::new(&ring, rows, cols, entries).map_err(|e| parse_error(n, e.to_string()))?;
            matrices.push((name.to_string(), m));
        }
        if matrices.is_empty() {
            return Err(parse_error(n, "no matrices in file"));
        }
        Ok(MatrixFile { ring, matrices })
    }

    pub fn get(&self, name: &str) -> Result<&Matrix, CliError> {
        self.matrices
            .iter()
            .find(|(n, _)| n == name)
            .map(|(_, m)| m)
            .ok_or_else(|| CliError::Usage(format!("no matrix named `{name}`")))
    }
}

impl fmt::Display for MatrixFile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ring {} {}", ring_keyword(self.ring.kind()), self.ring.modulus())?;
        for (name, m) in &self.matrices {
            writeln!(f, "matrix {name} {} {}", m.rows(), m.cols())?;
            write!(f, "{m}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_blocks_and_comments() {
        let f = MatrixFile::parse("# pair\nring gf 3\n\nmatrix A 2 2\n1 2 # first\n0 1\nmatrix B 2 1\n5\n-1\n").unwrap();
        assert_eq!(f.ring, RingSpec::prime_field(3).unwrap());
        assert_eq!(f.get("B").unwrap(), &Matrix::from_ints(&f.ring, 2, 1, &[2, 2]).unwrap());
        assert!(f.get("C").is_err());
    }

    #[test]
    fn polynomial_entries() {
        let f = MatrixFile::parse("ring polygf 2\nmatrix A 1 2\n[0,1] [0, 1]\n").unwrap();
        let z = f.ring.z();
        assert_eq!(f.get("A").unwrap().entries(), &[z.clone(), z]);
    }

    #[test]
    fn zero_row_matrix() {
        let f = MatrixFile::parse("ring gf 2\nmatrix E 0 3\n").unwrap();
        assert_eq!(f.get("E").unwrap().cols(), 3);
    }

    fn error_line(text: &str) -> usize {
        match MatrixFile::parse(text) {
            Err(CliError::Parse { line, .. }) => line,
            other => panic!("expected a parse error, got {other:?}"),
        }
    }

    #[test]
    fn errors_carry_line_numbers() {
        assert_eq!(error_line(""), 1);
        assert_eq!(error_line("ring gf 4\n"), 1);
        assert_eq!(error_line("ring field 3\n"), 1);
        assert_eq!(error_line("ring gf 3\nmatrix A 1 2\n1\n"), 3);
        assert_eq!(error_line("ring gf 3\nmatrix A 2 1\n1\nmatrix B 1 1\n1\n"), 4);
        assert_eq!(error_line("ring gf 3\nmatrix A 1 1\n1\nmatrix A 1 1\n2\n"), 4);
        assert_eq!(error_line("ring gf 3\nmatrix A 1 1\n[1,2]\n"), 3);
        assert_eq!(error_line("ring gf 3\nmatrix A x 1\n"), 2);
        assert_eq!(error_line("ring gf 3\n"), 1);
    }

    #[test]
    fn print_parse_round_trip() {
        let text = "ring polyzmod 6\nmatrix A 2 1\n[1,2,3]\n0\nmatrix B 2 2\n[5] 1\n[0,0,4] 3\n";
        let f = MatrixFile::parse(text).unwrap();
        let printed = f.to_string();
        assert_eq!(MatrixFile::parse(&printed).unwrap(), f);
        assert_eq!(MatrixFile::parse(&printed).unwrap().to_string(), printed);
    }
}
