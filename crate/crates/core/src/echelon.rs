//! Gauss-Jordan elimination over prime fields: reduced row echelon form, rank,
//! nullspace, column space and linear solves.

use crate::arith::{inv_mod, mul_mod, sub_mod};
use crate::error::{Error, Result};
use crate::matrix::{Matrix, Vector};
use crate::ring::{Element, RingSpec};
use crate::submodule::Submodule;

/// Row-major matrix of residues mod a prime; the working format of elimination.
#[derive(Debug, Clone)]
pub(crate) struct Dense {
    pub p: u64,
    pub rows: usize,
    pub cols: usize,
    pub a: Vec<u64>,
}

impl Dense {
    pub fn zeros(p: u64, rows: usize, cols: usize) -> Self {
        Dense {
            p,
            rows,
            cols,
            a: vec![0; rows * cols],
        }
    }

    pub fn from_matrix(m: &Matrix) -> Result<Self> {
        require_field(m.ring())?;
        Ok(Dense {
            p: m.ring().modulus(),
            rows: m.rows(),
            cols: m.cols(),
            a: m.entries().iter().map(|e| e.as_int().unwrap_or(0)).collect(),
        })
    }

    pub fn from_rows(p: u64, cols: usize, rows: &[Vec<u64>]) -> Self {
        let mut d = Dense::zeros(p, rows.len(), cols);
        for (i, r) in rows.iter().enumerate() {
            d.a[i * cols..(i + 1) * cols].copy_from_slice(r);
        }
        d
    }

    pub fn to_matrix(&self, ring: &RingSpec) -> Matrix {
        let entries = self.a.iter().map(|&v| Element::Int(v)).collect();
        Matrix::new(ring, self.rows, self.cols, entries).expect("residues are canonical")
    }

    pub fn at(&self, i: usize, j: usize) -> u64 {
        self.a[i * self.cols + j]
    }

    pub fn row(&self, i: usize) -> &[u64] {
        &self.a[i * self.cols..(i + 1) * self.cols]
    }

    fn swap_rows(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for k in 0..self.cols {
            self.a.swap(i * self.cols + k, j * self.cols + k);
        }
    }

    fn scale_row(&mut self, i: usize, c: u64) {
        for v in &mut self.a[i * self.cols..(i + 1) * self.cols] {
            *v = mul_mod(*v, c, self.p);
        }
    }

    /// row[dst] -= c * row[src]
    fn axpy_row(&mut self, dst: usize, src: usize, c: u64) {
        let (p, cols) = (self.p, self.cols);
        for k in 0..cols {
            let s = self.a[src * cols + k];
            if s != 0 {
                let d = &mut self.a[dst * cols + k];
                *d = sub_mod(*d, mul_mod(c, s, p), p);
            }
        }
    }

    /// Gauss-Jordan elimination choosing pivots only among the first `limit`
    /// columns; row operations act on the full width. Returns pivot columns.
    pub fn reduce(&mut self, limit: usize) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..limit.min(self.cols) {
            if r == self.rows {
                break;
            }
            let Some(src) = (r..self.rows).find(|&i| self.at(i, c) != 0) else {
                continue;
            };
            self.swap_rows(r, src);
            let inv = inv_mod(self.at(r, c), self.p).expect("nonzero residue mod a prime");
            self.scale_row(r, inv);
            for i in 0..self.rows {
                if i != r {
                    let f = self.at(i, c);
                    if f != 0 {
                        self.axpy_row(i, r, f);
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    /// Basis of `{x : self * x = 0}` read off the reduced form.
    pub fn nullspace_vectors(&self) -> Vec<Vec<u64>> {
        let mut d = self.clone();
        let pivots = d.reduce(d.cols);
        let mut is_pivot = vec![false; d.cols];
        for &c in &pivots {
            is_pivot[c] = true;
        }
        (0..d.cols)
            .filter(|&f| !is_pivot[f])
            .map(|f| {
                let mut v = vec![0u64; d.cols];
                v[f] = 1;
                for (row, &pc) in pivots.iter().enumerate() {
                    v[pc] = crate::arith::neg_mod(d.at(row, f), d.p);
                }
                v
            })
            .collect()
    }
}

pub(crate) fn require_field(ring: &RingSpec) -> Result<()> {
    if ring.is_field() {
        Ok(())
    } else {
        Err(Error::NotAField(ring.to_string()))
    }
}

/// Canonical echelon rows of the span of `generators` in `GF(p)^q`: the nonzero
/// rows of their reduced row echelon form.
pub(crate) fn canonical_rows(p: u64, q: usize, generators: &[Vec<u64>]) -> Vec<Vec<u64>> {
    let mut d = Dense::from_rows(p, q, generators);
    let rank = d.reduce(q).len();
    (0..rank).map(|i| d.row(i).to_vec()).collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rref {
    /// `transform * A` in reduced row echelon form.
    pub reduced: Matrix,
    pub rank: usize,
    pub pivot_cols: Vec<usize>,
    /// Invertible `p x p` matrix with `transform * A = reduced`.
    pub transform: Matrix,
}

pub fn rref(a: &Matrix) -> Result<Rref> {
    require_field(a.ring())?;
    let ring = a.ring();
    let aug = a.hconcat(&Matrix::identity(ring, a.rows()))?;
    let mut d = Dense::from_matrix(&aug)?;
    let pivot_cols = d.reduce(a.cols());
    let m = d.to_matrix(ring);
    Ok(Rref {
        reduced: m.select_columns(0..a.cols()),
        rank: pivot_cols.len(),
        pivot_cols,
        transform: m.select_columns(a.cols()..a.cols() + a.rows()),
    })
}

pub fn rank(a: &Matrix) -> Result<usize> {
    let mut d = Dense::from_matrix(a)?;
    Ok(d.reduce(a.cols()).len())
}

/// Kernel of `A` as a canonical submodule of `GF(p)^q`.
pub fn nullspace(a: &Matrix) -> Result<Submodule> {
    let d = Dense::from_matrix(a)?;
    let gens = d.nullspace_vectors();
    Ok(Submodule::from_field_rows(a.ring(), a.cols(), &gens))
}

/// Column span of `A` as a canonical submodule of `GF(p)^p`.
pub fn image(a: &Matrix) -> Result<Submodule> {
    require_field(a.ring())?;
    let d = Dense::from_matrix(&a.transpose())?;
    let gens: Vec<Vec<u64>> = (0..d.rows).map(|i| d.row(i).to_vec()).collect();
    Ok(Submodule::from_field_rows(a.ring(), a.rows(), &gens))
}

/// Some `x` with `A x = b`, free variables set to zero, or `None`.
pub fn solve(a: &Matrix, b: &[Element]) -> Result<Option<Vector>> {
    require_field(a.ring())?;
    if b.len() != a.rows() {
        return Err(Error::DimensionMismatch(format!(
            "right-hand side of length {} for {}x{} system",
            b.len(),
            a.rows(),
            a.cols()
        )));
    }
    let rhs = Matrix::from_columns(a.ring(), a.rows(), &[b.to_vec()])?;
    let mut d = Dense::from_matrix(&a.hconcat(&rhs)?)?;
    let q = a.cols();
    let pivots = d.reduce(q);
    if (pivots.len()..d.rows).any(|i| d.at(i, q) != 0) {
        return Ok(None);
    }
    let mut x = vec![Element::Int(0); q];
    for (row, &c) in pivots.iter().enumerate() {
        x[c] = Element::Int(d.at(row, q));
    }
    Ok(Some(x))
}

/// Inverse of a square matrix over a prime field.
pub fn inverse(a: &Matrix) -> Result<Matrix> {
    if !a.is_square() {
        return Err(Error::DimensionMismatch(format!(
            "{}x{} matrix has no inverse",
            a.rows(),
            a.cols()
        )));
    }
    let r = rref(a)?;
    if r.rank != a.rows() {
        return Err(Error::NotInvertible { gcd: None });
    }
    Ok(r.transform)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf(p: u64) -> RingSpec {
        RingSpec::prime_field(p).unwrap()
    }

    /// Rank by enumerating every combination of columns: the size of the column
    /// span is p^rank.
    fn rank_by_enumeration(a: &Matrix) -> usize {
        let p = a.ring().modulus();
        let cols = a.columns();
        let mut span = std::collections::HashSet::new();
        let total = p.pow(cols.len() as u32);
        for idx in 0..total {
            let mut coeffs = Vec::new();
            let mut t = idx;
            for _ in 0..cols.len() {
                coeffs.push(t % p);
                t /= p;
            }
            let v: Vec<u64> = (0..a.rows())
                .map(|i| {
                    coeffs
                        .iter()
                        .zip(&cols)
                        .map(|(c, col)| c * col[i].as_int().unwrap())
                        .sum::<u64>()
                        % p
                })
                .collect();
            span.insert(v);
        }
        let mut r = 0;
        while p.pow(r as u32) < span.len() as u64 {
            r += 1;
        }
        r
    }

    #[test]
    fn rref_identical_rows_gf2() {
        let a = Matrix::from_ints(&gf(2), 2, 2, &[1, 1, 1, 1]).unwrap();
        let r = rref(&a).unwrap();
        assert_eq!(r.rank, 1);
        assert_eq!(r.pivot_cols, vec![0]);
        assert_eq!(r.transform.mul(&a).unwrap(), r.reduced);
    }

    #[test]
    fn rref_identity_gf5() {
        let i3 = Matrix::identity(&gf(5), 3);
        let r = rref(&i3).unwrap();
        assert_eq!(r.rank, 3);
        assert_eq!(r.reduced, i3);
    }

    #[test]
    fn rref_gf3_dependent_rows() {
        // (2,1) = 2*(1,2) over GF(3), so the rank is 1 (determinant 1 - 4 = 0).
        let a = Matrix::from_ints(&gf(3), 2, 2, &[1, 2, 2, 1]).unwrap();
        assert_eq!(rank_by_enumeration(&a), 1);
        assert_eq!(rref(&a).unwrap().rank, 1);
    }

    #[test]
    fn rref_rejects_non_fields() {
        let a = Matrix::zeros(&RingSpec::mod_ring(6).unwrap(), 1, 1);
        assert!(matches!(rref(&a), Err(Error::NotAField(_))));
        let b = Matrix::zeros(&RingSpec::poly_ring(2).unwrap(), 1, 1);
        assert!(matches!(nullspace(&b), Err(Error::NotAField(_))));
    }

    #[test]
    fn nullspace_examples() {
        assert_eq!(nullspace(&Matrix::zeros(&gf(2), 2, 2)).unwrap().rank(), Some(2));
        assert_eq!(nullspace(&Matrix::identity(&gf(2), 2)).unwrap().rank(), Some(0));

        // Enumerate GF(3)^3 for x + 2y = 0: {(t, t, s)}, echelon basis (1,1,0), (0,0,1).
        let r = gf(3);
        let a = Matrix::from_ints(&r, 1, 3, &[1, 2, 0]).unwrap();
        let mut members = Vec::new();
        for x in 0..3 {
            for y in 0..3 {
                for z in 0..3 {
                    if (x + 2 * y) % 3 == 0 {
                        members.push([x, y, z]);
                    }
                }
            }
        }
        assert_eq!(members.len(), 9);
        let k = nullspace(&a).unwrap();
        assert_eq!(k.rank(), Some(2));
        let expected = Matrix::from_ints(&r, 3, 2, &[1, 0, 1, 0, 0, 1]).unwrap();
        assert_eq!(k.basis().unwrap(), &expected);
        for m in members {
            let v: Vec<Element> = m.iter().map(|&c| r.from_int(c)).collect();
            assert!(k.contains(&v).unwrap());
        }
    }

    #[test]
    fn nullspace_of_empty_row_matrix_is_full() {
        let k = nullspace(&Matrix::zeros(&gf(7), 0, 3)).unwrap();
        assert!(k.is_full());
        let k0 = nullspace(&Matrix::zeros(&gf(7), 2, 0)).unwrap();
        assert_eq!(k0.rank(), Some(0));
    }

    #[test]
    fn solve_examples() {
        let r = gf(7);
        let b = vec![r.from_int(3), r.from_int(5)];
        assert_eq!(solve(&Matrix::identity(&r, 2), &b).unwrap(), Some(b));

        let r2 = gf(2);
        let a = Matrix::from_ints(&r2, 2, 2, &[1, 0, 0, 0]).unwrap();
        assert_eq!(solve(&a, &[r2.from_int(0), r2.from_int(1)]).unwrap(), None);

        // Exhausting GF(5): 2*x = 3 only for x = 4.
        let r5 = gf(5);
        let sols: Vec<u64> = (0..5).filter(|x| (2 * x) % 5 == 3).collect();
        assert_eq!(sols, vec![4]);
        let a = Matrix::from_ints(&r5, 1, 1, &[2]).unwrap();
        assert_eq!(solve(&a, &[r5.from_int(3)]).unwrap(), Some(vec![r5.from_int(4)]));

        assert!(matches!(
            solve(&a, &[r5.zero(), r5.zero()]),
            Err(Error::DimensionMismatch(_))
        ));
    }

    #[test]
    fn solve_pins_free_variables_to_zero() {
        let r = gf(5);
        let a = Matrix::from_ints(&r, 1, 3, &[0, 1, 1]).unwrap();
        let x = solve(&a, &[r.from_int(2)]).unwrap().unwrap();
        assert_eq!(x, vec![r.zero(), r.from_int(2), r.zero()]);
    }

    #[test]
    fn image_examples() {
        let r = gf(2);
        assert_eq!(image(&Matrix::zeros(&r, 2, 2)).unwrap().rank(), Some(0));
        assert!(image(&Matrix::identity(&r, 2)).unwrap().is_full());
        let a = Matrix::from_ints(&r, 2, 2, &[1, 1, 1, 1]).unwrap();
        let im = image(&a).unwrap();
        assert_eq!(im.rank(), Some(1));
        assert_eq!(rank_by_enumeration(&a), 1);
        assert!(im.contains(&[r.one(), r.one()]).unwrap());
        assert!(!im.contains(&[r.one(), r.zero()]).unwrap());
    }

    #[test]
    fn inverse_roundtrip() {
        let r = gf(7);
        let a = Matrix::from_ints(&r, 2, 2, &[2, 1, 1, 1]).unwrap();
        let inv = inverse(&a).unwrap();
        assert_eq!(a.mul(&inv).unwrap(), Matrix::identity(&r, 2));
        let s = Matrix::from_ints(&r, 2, 2, &[1, 2, 2, 4]).unwrap();
        assert!(matches!(inverse(&s), Err(Error::NotInvertible { .. })));
    }
}
