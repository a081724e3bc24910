//! Kernel, image, solve and inverse for every supported ring.
//!
//! Fields go through Gauss-Jordan elimination, `GF(p)[z]` through Hermite
//! reduction, square-free `Z/m` and `(Z/m)[z]` prime by prime, and `Z/m` with a
//! repeated prime factor by bounded enumeration.

use crate::crt;
use crate::echelon;
use crate::error::{Error, Result};
use crate::hermite;
use crate::matrix::{Matrix, Vector};
use crate::poly::Poly;
use crate::poly_matrix;
use crate::ring::{Element, RingKind, RingSpec};
use crate::submodule::{self, not_square_free, to_polys, Submodule};

/// `{x : A x = 0}`.
pub fn kernel(a: &Matrix) -> Result<Submodule> {
    let ring = a.ring();
    match ring.kind() {
        RingKind::PrimeField => echelon::nullspace(a),
        RingKind::PolyRing => Ok(poly_matrix::poly_kernel(a)?.into_submodule(ring)),
        _ if ring.is_decomposable() => {
            let dec = crt::idempotents(ring.modulus())?;
            let mut gens = Vec::new();
            for (i, &e) in dec.idempotents().iter().enumerate() {
                let local = kernel(&crt::reduce_matrix(a, i)?)?;
                let e = ring.from_int(e as i64);
                for g in local.generators() {
                    gens.push(g.iter().map(|x| ring.mul(&e, &ring.lift_from(x))).collect());
                }
            }
            Submodule::span(ring, a.cols(), &gens)
        }
        RingKind::ModRing => {
            let m = ring.modulus();
            let size = submodule::enumeration_size(m, a.cols())? as usize;
            let mut elements = Vec::new();
            for idx in 0..size {
                let x = submodule::decode(idx, m, a.cols());
                let xe: Vector = x.iter().map(|&v| Element::Int(v)).collect();
                if a.apply(&xe)?.iter().all(|e| ring.is_zero(e)) {
                    elements.push(x);
                }
            }
            Submodule::from_elements(ring, a.cols(), elements)
        }
        _ => Err(not_square_free(ring)),
    }
}

/// Column span of `A`.
pub fn image(a: &Matrix) -> Result<Submodule> {
    Submodule::column_span(a)
}

/// Some `x` with `A x = b`, or `None`.
pub fn solve(a: &Matrix, b: &[Element]) -> Result<Option<Vector>> {
    let ring = a.ring();
    if b.len() != a.rows() {
        return Err(Error::DimensionMismatch(format!(
            "right-hand side of length {} for {}x{} system",
            b.len(),
            a.rows(),
            a.cols()
        )));
    }
    for e in b {
        ring.check(e)?;
    }
    match ring.kind() {
        RingKind::PrimeField => echelon::solve(a, b),
        RingKind::PolyRing => Ok(poly_solve(a, b)),
        _ if ring.is_decomposable() => crt::solve_crt(a, b),
        RingKind::ModRing => {
            let m = ring.modulus();
            let size = submodule::enumeration_size(m, a.cols())? as usize;
            for idx in 0..size {
                let x: Vector = submodule::decode(idx, m, a.cols())
                    .into_iter()
                    .map(Element::Int)
                    .collect();
                if a.apply(&x)? == b {
                    return Ok(Some(x));
                }
            }
            Ok(None)
        }
        _ => Err(not_square_free(ring)),
    }
}

/// Solves over `GF(p)[z]` by dividing `b` by the Hermite form of the columns
/// of `A` and pulling the quotients back through the tracked transform.
fn poly_solve(a: &Matrix, b: &[Element]) -> Option<Vector> {
    let p = a.ring().modulus();
    let cols: Vec<Vec<Poly>> = a.columns().iter().map(|c| to_polys(c)).collect();
    let h = hermite::hermite_rows(p, a.rows(), &cols, true);
    let coords = hermite::hermite_divide(p, &h.rows, &h.pivots, &to_polys(b))?;
    let transform = h.transform.expect("tracked");
    let mut x = vec![Poly::zero(); a.cols()];
    for (c, t) in coords.iter().zip(&transform) {
        for (xj, tj) in x.iter_mut().zip(t) {
            *xj = xj.add(&c.mul(tj, p), p);
        }
    }
    Some(x.into_iter().map(Element::Poly).collect())
}

/// Two-sided inverse of a square matrix.
pub fn inverse(a: &Matrix) -> Result<Matrix> {
    if !a.is_square() {
        return Err(Error::DimensionMismatch(format!(
            "{}x{} matrix has no inverse",
            a.rows(),
            a.cols()
        )));
    }
    let ring = a.ring();
    if ring.is_field() {
        return echelon::inverse(a);
    }
    let n = a.rows();
    let identity = Matrix::identity(ring, n);
    let mut cols = Vec::with_capacity(n);
    for j in 0..n {
        match solve(a, &identity.column(j))? {
            Some(x) => cols.push(x),
            None => return Err(Error::NotInvertible { gcd: None }),
        }
    }
    Matrix::from_columns(ring, n, &cols)
}

/// Matrix whose columns are `vectors` (each of length `rows`).
pub(crate) fn columns_matrix(ring: &RingSpec, rows: usize, vectors: &[Vector]) -> Matrix {
    Matrix::from_columns(ring, rows, vectors).expect("vectors of the ambient length")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kernel_over_each_family() {
        let gf2 = RingSpec::prime_field(2).unwrap();
        let a = Matrix::from_ints(&gf2, 1, 2, &[1, 1]).unwrap();
        assert_eq!(kernel(&a).unwrap().rank(), Some(1));

        let z6 = RingSpec::mod_ring(6).unwrap();
        let a = Matrix::from_ints(&z6, 1, 1, &[2]).unwrap();
        let k = kernel(&a).unwrap();
        let by_scan: Vec<u64> = (0..6).filter(|x| 2 * x % 6 == 0).collect();
        assert_eq!(k.count(), Some(by_scan.len() as u128));
        for x in by_scan {
            assert!(k.contains(&[Element::Int(x)]).unwrap());
        }

        let z4 = RingSpec::mod_ring(4).unwrap();
        let a = Matrix::from_ints(&z4, 1, 1, &[2]).unwrap();
        let k = kernel(&a).unwrap();
        assert_eq!(k.count(), Some(2));
        assert!(k.contains(&[Element::Int(2)]).unwrap());

        let pz = RingSpec::poly_mod_ring(12).unwrap();
        assert!(matches!(kernel(&Matrix::zeros(&pz, 1, 1)), Err(Error::NotSquareFree { .. })));
    }

    #[test]
    fn solve_over_each_family() {
        let gz = RingSpec::poly_ring(2).unwrap();
        let a = Matrix::new(&gz, 1, 1, vec![gz.z()]).unwrap();
        let b = vec![gz.poly(&[0, 0, 1])];
        let x = solve(&a, &b).unwrap().unwrap();
        assert_eq!(x, vec![gz.z()]);
        assert_eq!(solve(&a, &[gz.one()]).unwrap(), None);

        let z4 = RingSpec::mod_ring(4).unwrap();
        let a = Matrix::from_ints(&z4, 1, 1, &[2]).unwrap();
        assert_eq!(solve(&a, &[Element::Int(1)]).unwrap(), None);
        let x = solve(&a, &[Element::Int(2)]).unwrap().unwrap();
        assert_eq!(a.apply(&x).unwrap(), vec![Element::Int(2)]);
    }

    #[test]
    fn inverse_over_rings() {
        let z30 = RingSpec::mod_ring(30).unwrap();
        let a = Matrix::from_ints(&z30, 2, 2, &[1, 7, 0, 11]).unwrap();
        let inv = inverse(&a).unwrap();
        assert_eq!(a.mul(&inv).unwrap(), Matrix::identity(&z30, 2));
        assert_eq!(inv.mul(&a).unwrap(), Matrix::identity(&z30, 2));
        let singular = Matrix::from_ints(&z30, 1, 1, &[10]).unwrap();
        assert!(inverse(&singular).is_err());

        let gz = RingSpec::poly_ring(3).unwrap();
        // [[1, z], [0, 1]] is unimodular
        let u = Matrix::new(&gz, 2, 2, vec![gz.one(), gz.z(), gz.zero(), gz.one()]).unwrap();
        let inv = inverse(&u).unwrap();
        assert_eq!(u.mul(&inv).unwrap(), Matrix::identity(&gz, 2));
        let not_unit = Matrix::new(&gz, 1, 1, vec![gz.z()]).unwrap();
        assert!(inverse(&not_unit).is_err());
    }
}
