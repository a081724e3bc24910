//! Kernels of polynomial matrices over `GF(p)[z]`.
//!
//! Kernel vectors of degree at most `D` are the scalar nullspace of the
//! linearized coefficient matrix `M_D`. Sweeping `D` upward and keeping each
//! vector that is independent over `GF(p)(z)` of those already kept yields a
//! basis of minimal degrees, which generates the full polynomial kernel. The
//! result is then put in column Hermite form.

use crate::crt::{self, LocalGlobalResult};
use crate::echelon::Dense;
use crate::error::{Error, Result};
use crate::hermite;
use crate::kernel_pair::{self, ExactSequenceWitness, KernelPairResult, Method};
use crate::matrix::{Matrix, Vector};
use crate::poly::Poly;
use crate::ring::{Element, RingKind, RingSpec};
use crate::submodule::{to_polys, Submodule};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolyKernelBasis {
    /// `q x r` basis in column Hermite form.
    pub basis: Matrix,
    pub rank: usize,
    /// Largest entry degree of each basis column.
    pub column_degrees: Vec<usize>,
}

impl PolyKernelBasis {
    fn from_rows(ring: &RingSpec, q: usize, rows: Vec<Vec<Poly>>) -> Self {
        let column_degrees = rows
            .iter()
            .map(|r| r.iter().filter_map(Poly::degree).max().unwrap_or(0))
            .collect();
        let cols: Vec<Vector> = rows
            .into_iter()
            .map(|r| r.into_iter().map(Element::Poly).collect())
            .collect();
        let basis = Matrix::from_columns(ring, q, &cols).expect("basis of the ambient length");
        PolyKernelBasis {
            rank: basis.cols(),
            basis,
            column_degrees,
        }
    }

    pub fn into_submodule(self, ring: &RingSpec) -> Submodule {
        let rows = self.basis.columns().iter().map(|c| to_polys(c)).collect();
        Submodule::from_hermite(ring, self.basis.rows(), rows)
    }
}

fn require_poly(ring: &RingSpec) -> Result<()> {
    if ring.kind() == RingKind::PolyRing {
        Ok(())
    } else {
        Err(Error::RingMismatch {
            expected: "GF(p)[z]".into(),
            found: ring.to_string(),
        })
    }
}

fn poly_rows(a: &Matrix) -> Vec<Vec<Poly>> {
    (0..a.rows()).map(|i| to_polys(&a.row(i))).collect()
}

/// Coefficient matrix `M_D` of `x(z) -> A(z) x(z)` restricted to `deg x <= D`.
///
/// Row `i * (d + D + 1) + k` holds the coefficient of `z^k` in row `i` of the
/// product; column `j * (D + 1) + k` is the coefficient vector of
/// `z^k * A[., j]`.
pub(crate) fn linearize(a: &Matrix, d: usize, big_d: usize) -> Dense {
    let p = a.ring().modulus();
    let (rows, q) = (a.rows(), a.cols());
    let height = d + big_d + 1;
    let mut m = Dense::zeros(p, rows * height, q * (big_d + 1));
    for i in 0..rows {
        for j in 0..q {
            let entry = a.get(i, j).as_poly().expect("polynomial entry");
            for (t, &c) in entry.coeffs().iter().enumerate() {
                for k in 0..=big_d {
                    m.a[(i * height + t + k) * m.cols + j * (big_d + 1) + k] = c;
                }
            }
        }
    }
    m
}

fn delinearize(v: &[u64], q: usize, big_d: usize, p: u64) -> Vec<Poly> {
    (0..q)
        .map(|j| Poly::from_coeffs(v[j * (big_d + 1)..(j + 1) * (big_d + 1)].to_vec(), p))
        .collect()
}

fn vector_degree(v: &[Poly]) -> Option<usize> {
    v.iter().filter_map(Poly::degree).max()
}

/// Kernel vectors of `A` with degree at most `big_d`, as a `GF(p)` basis.
pub fn bounded_kernel(a: &Matrix, big_d: usize) -> Result<Vec<Vec<Poly>>> {
    require_poly(a.ring())?;
    let p = a.ring().modulus();
    let d = a.degree().unwrap_or(0);
    let m = linearize(a, d, big_d);
    Ok(m.nullspace_vectors()
        .iter()
        .map(|v| delinearize(v, a.cols(), big_d, p))
        .collect())
}

/// Upper bound on the degrees of a minimal kernel basis of `A`.
pub fn degree_bound(a: &Matrix) -> usize {
    a.rows().min(a.cols()) * a.degree().unwrap_or(0)
}

/// Module basis of `{x in GF(p)[z]^q : A x = 0}` in column Hermite form.
pub fn poly_kernel(a: &Matrix) -> Result<PolyKernelBasis> {
    require_poly(a.ring())?;
    let ring = a.ring();
    let p = ring.modulus();
    let q = a.cols();
    if a.is_zero() {
        let rows = (0..q)
            .map(|i| (0..q).map(|j| Poly::constant(u64::from(i == j), p)).collect())
            .collect();
        return Ok(PolyKernelBasis::from_rows(ring, q, rows));
    }
    let target = q - hermite::rank(p, q, &poly_rows(a));
    let mut chosen: Vec<Vec<Poly>> = Vec::new();
    let bound = degree_bound(a);
    let mut big_d = 0;
    while chosen.len() < target {
        if big_d > bound {
            return Err(Error::ConsistencyViolated(format!(
                "kernel basis incomplete at degree bound {bound}: {} of {target} vectors",
                chosen.len()
            )));
        }
        let mut candidates = bounded_kernel(a, big_d)?;
        candidates.sort_by(|x, y| (vector_degree(x), x).cmp(&(vector_degree(y), y)));
        for v in candidates {
            chosen.push(v);
            if hermite::rank(p, q, &chosen) < chosen.len() {
                chosen.pop();
            }
            if chosen.len() == target {
                break;
            }
        }
        big_d += 1;
    }
    let h = hermite::hermite_rows(p, q, &chosen, false);
    Ok(PolyKernelBasis::from_rows(ring, q, h.rows))
}

/// Column Hermite form of the column span of `g`.
pub fn hermite_form(g: &Matrix) -> Result<PolyKernelBasis> {
    require_poly(g.ring())?;
    let cols: Vec<Vec<Poly>> = g.columns().iter().map(|c| to_polys(c)).collect();
    let h = hermite::hermite_rows(g.ring().modulus(), g.rows(), &cols, false);
    Ok(PolyKernelBasis::from_rows(g.ring(), g.rows(), h.rows))
}

/// Kernel pair over `GF(p)[z]` with a split exact sequence witness.
///
/// The section comes from the Hermite transform: each basis vector of
/// `ker(A | B)` is a known combination of projected `ker(A, B)` generators, and
/// the same combination of the unprojected generators lifts it.
pub fn kernel_pair_poly(a: &Matrix, b: &Matrix) -> Result<(KernelPairResult, ExactSequenceWitness)> {
    kernel_pair::check_pair(a, b)?;
    let ring = a.ring();
    require_poly(ring)?;
    let p = ring.modulus();
    let (q1, q2) = (a.cols(), b.cols());
    let ab = a.hconcat(b)?;
    let pair = poly_kernel(&ab)?;
    let f1 = poly_kernel(a)?;
    let gens: Vec<Vec<Poly>> = pair.basis.columns().iter().map(|c| to_polys(c)).collect();
    let projected: Vec<Vec<Poly>> = gens.iter().map(|g| g[q1..].to_vec()).collect();
    let h = hermite::hermite_rows(p, q2, &projected, true);
    let transform = h.transform.as_ref().expect("tracked");
    let section: Vec<Vector> = transform
        .iter()
        .map(|t| {
            let mut s = vec![Poly::zero(); q1 + q2];
            for (c, g) in t.iter().zip(&gens) {
                for (sk, gk) in s.iter_mut().zip(g) {
                    *sk = sk.add(&c.mul(gk, p), p);
                }
            }
            s.into_iter().map(Element::Poly).collect()
        })
        .collect();
    let ker_bar = Submodule::from_hermite(ring, q2, h.rows);
    let ker_f1 = f1.into_submodule(ring);
    let witness = ExactSequenceWitness::new(ring, q1, q2, &ker_f1.generators(), &section)?;
    Ok((
        KernelPairResult {
            ker_f1,
            ker_pair: pair.into_submodule(ring),
            ker_bar,
            method: Method::Projection,
        },
        witness,
    ))
}

/// A witness `x` with `A x + B u = 0`, or `None` when `u` is not in
/// `ker(A | B)`. Works over `GF(p)[z]` and square-free `(Z/m)[z]`.
pub fn poly_member(a: &Matrix, b: &Matrix, u: &[Element]) -> Result<Option<Vector>> {
    kernel_pair::check_pair(a, b)?;
    if u.len() != b.cols() {
        return Err(Error::DimensionMismatch(format!(
            "vector of length {} for B with {} columns",
            u.len(),
            b.cols()
        )));
    }
    let ring = a.ring();
    if ring.kind() == RingKind::PolyModRing {
        let lg = kernel_pair_poly_crt(a, b)?;
        let mut locals = Vec::new();
        for (i, &prime) in lg.decomposition.primes().iter().enumerate() {
            let local_u: Vector = u.iter().map(|e| ring.reduce_to(e, prime)).collect();
            let (la, lb) = (crt::reduce_matrix(a, i)?, crt::reduce_matrix(b, i)?);
            match poly_member(&la, &lb, &local_u)? {
                Some(x) => locals.push(x),
                None => return Ok(None),
            }
        }
        let x = if a.cols() == 0 {
            Vec::new()
        } else {
            crt::glue_vectors(ring, &lg.decomposition, &locals)
        };
        verify_member(a, b, &x, u)?;
        return Ok(Some(x));
    }
    let (res, wit) = kernel_pair_poly(a, b)?;
    witness_from(a, b, &res, &wit, u)
}

/// Witness for `u` from an already computed kernel pair and its section.
pub(crate) fn witness_from(
    a: &Matrix,
    b: &Matrix,
    res: &KernelPairResult,
    wit: &ExactSequenceWitness,
    u: &[Element],
) -> Result<Option<Vector>> {
    let ring = a.ring();
    let Some(coords) = res.ker_bar.member(u)? else {
        return Ok(None);
    };
    let mut x = vec![ring.zero(); a.cols()];
    for (c, j) in coords.iter().zip(0..wit.section.cols()) {
        let s = wit.section.column(j);
        for (xk, sk) in x.iter_mut().zip(&s) {
            *xk = ring.add(xk, &ring.mul(c, sk));
        }
    }
    verify_member(a, b, &x, u)?;
    Ok(Some(x))
}

fn verify_member(a: &Matrix, b: &Matrix, x: &[Element], u: &[Element]) -> Result<()> {
    let ring = a.ring();
    let ax = a.apply(x)?;
    let bu = b.apply(u)?;
    if ax.iter().zip(&bu).all(|(l, r)| ring.is_zero(&ring.add(l, r))) {
        Ok(())
    } else {
        Err(Error::ConsistencyViolated("reconstructed witness fails A x + B u = 0".into()))
    }
}

/// Kernel pair over `(Z/m)[z]`, `m` square-free: one `GF(p_i)[z]` computation per
/// prime, glued with the structural idempotents.
pub fn kernel_pair_poly_crt(a: &Matrix, b: &Matrix) -> Result<LocalGlobalResult> {
    if a.ring().kind() != RingKind::PolyModRing && a.ring().kind() != RingKind::PolyRing {
        return Err(Error::RingMismatch {
            expected: "(Z/m)[z]".into(),
            found: a.ring().to_string(),
        });
    }
    crt::kernel_pair_crt(a, b)
}
