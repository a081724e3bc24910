//! Dense matrices over a [`RingSpec`].
//!
//! A `p x q` matrix represents the linear map `R^q -> R^p`; column `j` is the
//! image of the `j`th standard basis vector. Entries are stored row-major.

use std::fmt;

use crate::error::{Error, Result};
use crate::ring::{Element, RingSpec};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    ring: RingSpec,
    rows: usize,
    cols: usize,
    entries: Vec<Element>,
}

/// A column vector; length is the ambient dimension.
pub type Vector = Vec<Element>;

impl Matrix {
    pub fn new(ring: &RingSpec, rows: usize, cols: usize, entries: Vec<Element>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "{rows}x{cols} matrix needs {} entries, got {}",
                rows * cols,
                entries.len()
            )));
        }
        for e in &entries {
            ring.check(e)?;
        }
        Ok(Matrix {
            ring: ring.clone(),
            rows,
            cols,
            entries,
        })
    }

    pub fn zeros(ring: &RingSpec, rows: usize, cols: usize) -> Self {
        Matrix {
            ring: ring.clone(),
            rows,
            cols,
            entries: vec![ring.zero(); rows * cols],
        }
    }

    pub fn identity(ring: &RingSpec, n: usize) -> Self {
        let mut m = Self::zeros(ring, n, n);
        for i in 0..n {
            m.entries[i * n + i] = ring.one();
        }
        m
    }

    /// Integer entries, reduced into the ring (constants over polynomial rings).
    pub fn from_ints(ring: &RingSpec, rows: usize, cols: usize, values: &[i64]) -> Result<Self> {
        let entries = values.iter().map(|&v| ring.from_int(v)).collect();
        Self::new(ring, rows, cols, entries)
    }

    pub fn from_rows(ring: &RingSpec, cols: usize, rows: Vec<Vector>) -> Result<Self> {
        let n = rows.len();
        let mut entries = Vec::with_capacity(n * cols);
        for (i, row) in rows.into_iter().enumerate() {
            if row.len() != cols {
                return Err(Error::DimensionMismatch(format!(
                    "row {i} has {} entries, expected {cols}",
                    row.len()
                )));
            }
            entries.extend(row);
        }
        Self::new(ring, n, cols, entries)
    }

    pub fn from_columns(ring: &RingSpec, rows: usize, columns: &[Vector]) -> Result<Self> {
        let cols = columns.len();
        for (j, c) in columns.iter().enumerate() {
            if c.len() != rows {
                return Err(Error::DimensionMismatch(format!(
                    "column {j} has {} entries, expected {rows}",
                    c.len()
                )));
            }
        }
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for c in columns {
                entries.push(c[i].clone());
            }
        }
        Self::new(ring, rows, cols, entries)
    }

    /// Parses rows separated by `;` or newlines, entries separated by whitespace,
    /// using the ring's element syntax. The column count is taken from `cols`
    /// so that zero-row matrices stay expressible.
    pub fn parse(ring: &RingSpec, rows: usize, cols: usize, text: &str) -> Result<Self> {
        let mut entries = Vec::new();
        let mut seen_rows = 0;
        for line in text.split([';', '\n']) {
            let toks = tokenize(line)?;
            if toks.is_empty() {
                continue;
            }
            if toks.len() != cols {
                return Err(Error::Parse(format!(
                    "row {} has {} entries, expected {cols}",
                    seen_rows + 1,
                    toks.len()
                )));
            }
            for t in toks {
                entries.push(ring.parse_element(&t)?);
            }
            seen_rows += 1;
        }
        if seen_rows != rows {
            return Err(Error::Parse(format!("expected {rows} rows, found {seen_rows}")));
        }
        Self::new(ring, rows, cols, entries)
    }

    pub fn ring(&self) -> &RingSpec {
        &self.ring
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entries(&self) -> &[Element] {
        &self.entries
    }

    pub fn get(&self, i: usize, j: usize) -> &Element {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: Element) -> Result<()> {
        self.ring.check(&value)?;
        self.entries[i * self.cols + j] = value;
        Ok(())
    }

    pub fn row(&self, i: usize) -> Vector {
        self.entries[i * self.cols..(i + 1) * self.cols].to_vec()
    }

    pub fn column(&self, j: usize) -> Vector {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn columns(&self) -> Vec<Vector> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|e| self.ring.is_zero(e))
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn transpose(&self) -> Matrix {
        let mut entries = Vec::with_capacity(self.entries.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                entries.push(self.get(i, j).clone());
            }
        }
        Matrix {
            ring: self.ring.clone(),
            rows: self.cols,
            cols: self.rows,
            entries,
        }
    }

    fn same_ring(&self, other: &Matrix) -> Result<()> {
        if self.ring != other.ring {
            return Err(Error::RingMismatch {
                expected: self.ring.to_string(),
                found: other.ring.to_string(),
            });
        }
        Ok(())
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix> {
        self.same_ring(other)?;
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let r = &self.ring;
        let mut entries = Vec::with_capacity(self.rows * other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc = r.zero();
                for k in 0..self.cols {
                    let a = self.get(i, k);
                    if r.is_zero(a) {
                        continue;
                    }
                    acc = r.add(&acc, &r.mul(a, other.get(k, j)));
                }
                entries.push(acc);
            }
        }
        Ok(Matrix {
            ring: r.clone(),
            rows: self.rows,
            cols: other.cols,
            entries,
        })
    }

    pub fn add(&self, other: &Matrix) -> Result<Matrix> {
        self.same_ring(other)?;
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Err(Error::DimensionMismatch(format!(
                "cannot add {}x{} and {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| self.ring.add(a, b))
            .collect();
        Ok(Matrix {
            entries,
            ..self.clone()
        })
    }

    pub fn neg(&self) -> Matrix {
        let entries = self.entries.iter().map(|a| self.ring.neg(a)).collect();
        Matrix {
            entries,
            ..self.clone()
        }
    }

    pub fn scale(&self, c: &Element) -> Matrix {
        let entries = self.entries.iter().map(|a| self.ring.mul(a, c)).collect();
        Matrix {
            entries,
            ..self.clone()
        }
    }

    /// `A * v` for a column vector `v`.
    pub fn apply(&self, v: &[Element]) -> Result<Vector> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch(format!(
                "vector of length {} applied to {}x{} matrix",
                v.len(),
                self.rows,
                self.cols
            )));
        }
        let r = &self.ring;
        for e in v {
            r.check(e)?;
        }
        Ok((0..self.rows)
            .map(|i| {
                (0..self.cols).fold(r.zero(), |acc, k| {
                    r.add(&acc, &r.mul(self.get(i, k), &v[k]))
                })
            })
            .collect())
    }

    /// `[self | other]`.
    pub fn hconcat(&self, other: &Matrix) -> Result<Matrix> {
        self.same_ring(other)?;
        if self.rows != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "cannot place {}x{} beside {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let cols = self.cols + other.cols;
        let mut entries = Vec::with_capacity(self.rows * cols);
        for i in 0..self.rows {
            entries.extend(self.row(i));
            entries.extend(other.row(i));
        }
        Ok(Matrix {
            ring: self.ring.clone(),
            rows: self.rows,
            cols,
            entries,
        })
    }

    /// `self` stacked above `other`.
    pub fn vconcat(&self, other: &Matrix) -> Result<Matrix> {
        self.same_ring(other)?;
        if self.cols != other.cols {
            return Err(Error::DimensionMismatch(format!(
                "cannot stack {}x{} above {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut entries = self.entries.clone();
        entries.extend(other.entries.iter().cloned());
        Ok(Matrix {
            ring: self.ring.clone(),
            rows: self.rows + other.rows,
            cols: self.cols,
            entries,
        })
    }

    pub fn select_rows(&self, range: std::ops::Range<usize>) -> Matrix {
        let rows = range.len();
        let entries = self.entries[range.start * self.cols..range.end * self.cols].to_vec();
        Matrix {
            ring: self.ring.clone(),
            rows,
            cols: self.cols,
            entries,
        }
    }

    pub fn select_columns(&self, range: std::ops::Range<usize>) -> Matrix {
        let cols = range.len();
        let mut entries = Vec::with_capacity(self.rows * cols);
        for i in 0..self.rows {
            for j in range.clone() {
                entries.push(self.get(i, j).clone());
            }
        }
        Matrix {
            ring: self.ring.clone(),
            rows: self.rows,
            cols,
            entries,
        }
    }

    /// Entrywise reduction into the factor ring at `prime`.
    pub fn reduce_mod(&self, prime: u64) -> Result<Matrix> {
        let target = self.ring.local_ring(prime)?;
        let entries = self
            .entries
            .iter()
            .map(|e| self.ring.reduce_to(e, prime))
            .collect();
        Ok(Matrix {
            ring: target,
            rows: self.rows,
            cols: self.cols,
            entries,
        })
    }

    /// Reinterprets entries in `target` by taking canonical representatives.
    pub(crate) fn lift_to(&self, target: &RingSpec) -> Matrix {
        let entries = self.entries.iter().map(|e| target.lift_from(e)).collect();
        Matrix {
            ring: target.clone(),
            rows: self.rows,
            cols: self.cols,
            entries,
        }
    }

    /// Largest entry degree; `None` when every entry is zero.
    pub fn degree(&self) -> Option<usize> {
        self.entries.iter().filter_map(|e| self.ring.degree(e)).max()
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(ToString::to_string).collect();
            writeln!(f, "{}", row.join(" "))?;
        }
        Ok(())
    }
}

/// Splits a line into element tokens. Bracketed polynomial literals may
/// contain spaces; a `#` starts a comment.
pub fn tokenize(line: &str) -> Result<Vec<String>> {
    let line = line.split('#').next().unwrap_or("");
    let mut out = Vec::new();
    let mut cur = String::new();
    let mut depth = 0usize;
    for ch in line.chars() {
        match ch {
            '[' => {
                if depth > 0 {
                    return Err(Error::Parse(format!("nested bracket in `{}`", line.trim())));
                }
                depth = 1;
                cur.push(ch);
            }
            ']' => {
                if depth == 0 {
                    return Err(Error::Parse(format!("unbalanced `]` in `{}`", line.trim())));
                }
                depth = 0;
                cur.push(ch);
            }
            c if c.is_whitespace() && depth == 0 => {
                if !cur.is_empty() {
                    out.push(std::mem::take(&mut cur));
                }
            }
            c if c.is_whitespace() => {}
            c => cur.push(c),
        }
    }
    if depth != 0 {
        return Err(Error::Parse(format!("unbalanced `[` in `{}`", line.trim())));
    }
    if !cur.is_empty() {
        out.push(cur);
    }
    Ok(out)
}
