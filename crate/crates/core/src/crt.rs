//! Local-global computation over `Z/m` and `(Z/m)[z]` for square-free `m`.
//!
//! `Z/m` is the product of the prime fields `GF(p_i)`. Each factor is cut out by
//! a structural idempotent `e_i` (one mod `p_i`, zero mod the other primes), so a
//! kernel pair over `Z/m` is computed prime by prime and glued back as
//! `sum_i e_i * ker(pi_i(A) | pi_i(B))`. Reducing a glued kernel to a factor
//! recovers the local kernel; [`base_change_check`] verifies exactly that.

use crate::arith::{self, inv_mod, mul_mod};
use crate::error::{Error, Result};
use crate::kernel_pair::{self, ExactSequenceWitness, KernelPairResult};
use crate::matrix::{Matrix, Vector};
use crate::ring::{Element, RingSpec};
use crate::submodule::{not_square_free, Submodule};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CrtDecomposition {
    modulus: u64,
    primes: Vec<u64>,
    idempotents: Vec<u64>,
}

/// Structural idempotents of `Z/m`, one per prime factor in increasing order.
///
/// `e_i = (m/p_i) * ((m/p_i)^-1 mod p_i) mod m`.
pub fn idempotents(m: u64) -> Result<CrtDecomposition> {
    if m < 2 {
        return Err(Error::InvalidParameter(m));
    }
    let factors = arith::factorize(m);
    if let Some(&(prime, _)) = factors.iter().find(|&&(_, e)| e > 1) {
        return Err(Error::NotSquareFree { m, prime });
    }
    let primes: Vec<u64> = factors.iter().map(|&(p, _)| p).collect();
    let idempotents = primes
        .iter()
        .map(|&p| {
            let cofactor = m / p;
            let inv = inv_mod(cofactor % p, p).expect("distinct primes are coprime");
            mul_mod(cofactor, inv, m)
        })
        .collect();
    Ok(CrtDecomposition {
        modulus: m,
        primes,
        idempotents,
    })
}

impl CrtDecomposition {
    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn primes(&self) -> &[u64] {
        &self.primes
    }

    pub fn idempotents(&self) -> &[u64] {
        &self.idempotents
    }

    /// The residue in `[0, m)` congruent to `residues[i]` mod `p_i` for all `i`.
    pub fn glue(&self, residues: &[u64]) -> u64 {
        residues
            .iter()
            .zip(&self.idempotents)
            .fold(0, |acc, (&r, &e)| {
                arith::add_mod(acc, mul_mod(r, e, self.modulus), self.modulus)
            })
    }

    /// Checks `e_i^2 = e_i`, `e_i e_j = 0` for `i != j`, `sum e_i = 1`, and the
    /// defining congruences.
    pub fn verify_laws(&self) -> Result<()> {
        let m = self.modulus;
        let violated = |clause: &str, detail: String| Error::IdentityViolated {
            clause: clause.into(),
            detail,
        };
        for (i, &e) in self.idempotents.iter().enumerate() {
            if mul_mod(e, e, m) != e {
                return Err(violated("idempotent", format!("e_{i} = {e} mod {m}")));
            }
            for (j, &f) in self.idempotents.iter().enumerate() {
                if i != j && mul_mod(e, f, m) != 0 {
                    return Err(violated("orthogonal", format!("e_{i} e_{j} != 0 mod {m}")));
                }
            }
            for (j, &p) in self.primes.iter().enumerate() {
                let expected = u64::from(i == j);
                if e % p != expected {
                    return Err(violated("congruence", format!("e_{i} = {e} mod {p}")));
                }
            }
        }
        let sum = self
            .idempotents
            .iter()
            .fold(0, |acc, &e| arith::add_mod(acc, e, m));
        if sum != 1 % m {
            return Err(violated("partition of unity", format!("sum = {sum} mod {m}")));
        }
        Ok(())
    }
}

fn decomposition_of(ring: &RingSpec) -> Result<CrtDecomposition> {
    if ring.is_field() || ring.kind() == crate::ring::RingKind::PolyRing {
        return idempotents(ring.modulus());
    }
    if !ring.is_decomposable() {
        return Err(not_square_free(ring));
    }
    idempotents(ring.modulus())
}

/// Entrywise reduction of a matrix over `Z/m` (or `(Z/m)[z]`) to the factor at
/// prime index `i`.
pub fn reduce_matrix(a: &Matrix, i: usize) -> Result<Matrix> {
    let prime = *a.ring().primes().get(i).ok_or_else(|| {
        Error::DimensionMismatch(format!("prime index {i} out of range for {}", a.ring()))
    })?;
    a.reduce_mod(prime)
}

/// Glues one local vector per prime into `sum_i e_i * lift(v_i)`.
pub fn glue_vectors(ring: &RingSpec, dec: &CrtDecomposition, locals: &[Vector]) -> Vector {
    let len = locals.first().map_or(0, Vec::len);
    let mut out = vec![ring.zero(); len];
    for (v, &e) in locals.iter().zip(dec.idempotents()) {
        let e = ring.from_int(e as i64);
        for (o, x) in out.iter_mut().zip(v) {
            *o = ring.add(o, &ring.mul(&e, &ring.lift_from(x)));
        }
    }
    out
}

fn glue_submodule(
    ring: &RingSpec,
    ambient: usize,
    dec: &CrtDecomposition,
    locals: &[&Submodule],
) -> Result<Submodule> {
    let mut gens = Vec::new();
    for (local, &e) in locals.iter().zip(dec.idempotents()) {
        let e = ring.from_int(e as i64);
        for g in local.generators() {
            gens.push(g.iter().map(|x| ring.mul(&e, &ring.lift_from(x))).collect());
        }
    }
    Submodule::span(ring, ambient, &gens)
}

#[derive(Debug, Clone)]
pub struct LocalGlobalResult {
    pub decomposition: CrtDecomposition,
    /// Kernel pair over each factor ring, in prime order.
    pub local: Vec<KernelPairResult>,
    pub local_witnesses: Vec<ExactSequenceWitness>,
    /// Kernels over the product ring glued from the local ones.
    pub glued: KernelPairResult,
    pub witness: ExactSequenceWitness,
}

impl LocalGlobalResult {
    pub fn local_kernels(&self) -> Vec<&Submodule> {
        self.local.iter().map(|r| &r.ker_bar).collect()
    }
}

/// `ker(A | B)` over a product of fields (or of `GF(p)[z]`'s), computed one
/// factor at a time and glued with the structural idempotents.
pub fn kernel_pair_crt(a: &Matrix, b: &Matrix) -> Result<LocalGlobalResult> {
    kernel_pair::check_pair(a, b)?;
    let ring = a.ring();
    let dec = decomposition_of(ring)?;
    let mut local = Vec::with_capacity(dec.primes().len());
    let mut local_witnesses = Vec::with_capacity(dec.primes().len());
    for i in 0..dec.primes().len() {
        let (res, wit) = kernel_pair::kernel_pair_local(&reduce_matrix(a, i)?, &reduce_matrix(b, i)?)?;
        local.push(res);
        local_witnesses.push(wit);
    }
    let (q1, q2) = (a.cols(), b.cols());
    let ker_f1 = glue_submodule(ring, q1, &dec, &local.iter().map(|r| &r.ker_f1).collect::<Vec<_>>())?;
    let ker_pair = glue_submodule(ring, q1 + q2, &dec, &local.iter().map(|r| &r.ker_pair).collect::<Vec<_>>())?;
    let ker_bar = glue_submodule(ring, q2, &dec, &local.iter().map(|r| &r.ker_bar).collect::<Vec<_>>())?;

    // Section columns follow the order of `ker_bar.generators()`: prime by
    // prime, local basis order, each scaled by its idempotent.
    let mut section_cols = Vec::new();
    for (wit, &e) in local_witnesses.iter().zip(dec.idempotents()) {
        let e = ring.from_int(e as i64);
        for s in wit.section.columns() {
            section_cols.push(s.iter().map(|x| ring.mul(&e, &ring.lift_from(x))).collect());
        }
    }
    let witness = ExactSequenceWitness::new(
        ring,
        q1,
        q2,
        &ker_f1.generators(),
        &section_cols,
    )?;
    let method = local.first().map_or(kernel_pair::Method::Projection, |r| r.method);
    Ok(LocalGlobalResult {
        decomposition: dec,
        local,
        local_witnesses,
        glued: KernelPairResult {
            ker_f1,
            ker_pair,
            ker_bar,
            method,
        },
        witness,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BaseChangeReport {
    pub prime: u64,
    /// The glued kernel reduced mod the prime.
    pub reduced: Submodule,
    /// The kernel pair computed directly over the factor ring.
    pub direct: Submodule,
}

/// Checks that reducing the glued `ker(A | B)` at prime index `i` equals
/// `ker(pi_i(A) | pi_i(B))` computed directly over the factor.
pub fn base_change_check(a: &Matrix, b: &Matrix, i: usize) -> Result<BaseChangeReport> {
    let lg = kernel_pair_crt(a, b)?;
    let prime = *lg.decomposition.primes().get(i).ok_or_else(|| {
        Error::DimensionMismatch(format!("prime index {i} out of range for {}", a.ring()))
    })?;
    let reduced = lg.glued.ker_bar.reduce_mod(prime)?;
    let (la, lb) = (reduce_matrix(a, i)?, reduce_matrix(b, i)?);
    let direct = if la.ring().is_field() {
        kernel_pair::kernel_pair_quotient(&la, &lb)?.0.ker_bar
    } else {
        kernel_pair::kernel_pair(&la, &lb)?.ker_bar
    };
    if reduced != direct {
        return Err(Error::BaseChangeViolated {
            prime,
            detail: format!(
                "A = {a:?}, B = {b:?}: reduced glued kernel {:?} vs direct {:?}",
                reduced.generators(),
                direct.generators()
            ),
        });
    }
    Ok(BaseChangeReport {
        prime,
        reduced,
        direct,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LocalDims {
    pub prime: u64,
    pub ker_pair: usize,
    pub ker_f1: usize,
    pub ker_bar: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuotientForm {
    pub per_prime: Vec<LocalDims>,
    /// `|ker(A | B)| = prod_i p_i^(dim ker_bar_i)`.
    pub count: u128,
}

/// Per-prime dimensions of `ker(A_i, B_i)`, `ker(A_i)` and their quotient
/// `ker(A_i | B_i)` over `Z/m`.
pub fn quotient_form_crt(a: &Matrix, b: &Matrix) -> Result<QuotientForm> {
    if !a.ring().is_finite() {
        return Err(Error::NotFinite(a.ring().to_string()));
    }
    let lg = kernel_pair_crt(a, b)?;
    let mut per_prime = Vec::new();
    let mut count = 1u128;
    for (res, &prime) in lg.local.iter().zip(lg.decomposition.primes()) {
        let dims = LocalDims {
            prime,
            ker_pair: res.ker_pair.rank().unwrap_or(0),
            ker_f1: res.ker_f1.rank().unwrap_or(0),
            ker_bar: res.ker_bar.rank().unwrap_or(0),
        };
        if dims.ker_bar + dims.ker_f1 != dims.ker_pair {
            return Err(Error::IdentityViolated {
                clause: "quotient dimension".into(),
                detail: format!("{dims:?}"),
            });
        }
        count = (prime as u128)
            .checked_pow(dims.ker_bar as u32)
            .and_then(|c| c.checked_mul(count))
            .ok_or(Error::OracleTooLarge {
                size: u128::MAX,
                limit: u128::MAX,
            })?;
        per_prime.push(dims);
    }
    Ok(QuotientForm { per_prime, count })
}

/// Some `x` with `A x = b` over `Z/m` (square-free), assembled from per-prime
/// solutions, or `None`.
pub fn solve_crt(a: &Matrix, b: &[Element]) -> Result<Option<Vector>> {
    let ring = a.ring();
    let dec = decomposition_of(ring)?;
    let mut locals = Vec::new();
    for (i, &p) in dec.primes().iter().enumerate() {
        let la = reduce_matrix(a, i)?;
        let lb: Vector = b.iter().map(|e| ring.reduce_to(e, p)).collect();
        match crate::linear::solve(&la, &lb)? {
            Some(x) => locals.push(x),
            None => return Ok(None),
        }
    }
    if a.cols() == 0 {
        return Ok(Some(Vec::new()));
    }
    Ok(Some(glue_vectors(ring, &dec, &locals)))
}
