//! The kernel of a pair of maps `A : R^q1 -> R^p`, `B : R^q2 -> R^p`:
//!
//! `ker(A | B) = { u : A x + B u = 0 for some x }`.
//!
//! It sits in the exact sequence `0 -> ker A -> ker [A | B] -> ker(A | B) -> 0`
//! given by `x -> (x, 0)` and `(x, u) -> u`. Over fields, `GF(p)[z]` and
//! products of those the sequence splits, and [`ExactSequenceWitness`] carries
//! an explicit section.

use rand::Rng;

use crate::crt;
use crate::echelon::{self, require_field};
use crate::error::{Error, Result};
use crate::linear::{self, columns_matrix};
use crate::matrix::{Matrix, Vector};
use crate::poly_matrix;
use crate::ring::{Element, RingKind, RingSpec};
use crate::submodule::{self, not_square_free, Submodule};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Method {
    /// Project `ker [A | B]` onto the `u` coordinates.
    Projection,
    /// Preimage of `Im A` under `B`.
    Preimage,
    /// Kernel of `B` followed by the quotient map `R^p -> R^p / Im A`.
    Quotient,
    /// Exhaustive enumeration of `u`.
    Oracle,
}

impl Method {
    pub fn name(self) -> &'static str {
        match self {
            Method::Projection => "projection",
            Method::Preimage => "preimage",
            Method::Quotient => "quotient",
            Method::Oracle => "oracle",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KernelPairResult {
    /// `ker A` in `R^q1`.
    pub ker_f1: Submodule,
    /// `ker [A | B]` in `R^(q1 + q2)`.
    pub ker_pair: Submodule,
    /// `ker(A | B)` in `R^q2`.
    pub ker_bar: Submodule,
    pub method: Method,
}

/// Maps of the exact sequence, with a section of the projection.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExactSequenceWitness {
    /// Columns `(k, 0)` for the generators `k` of `ker A`.
    pub inclusion: Matrix,
    /// `(x, u) -> u` as a `q2 x (q1 + q2)` matrix.
    pub projection: Matrix,
    /// Column `j` is `(x_j, u_j)` in `ker [A | B]`, where `u_j` is the `j`th
    /// generator of `ker(A | B)`.
    pub section: Matrix,
}

impl ExactSequenceWitness {
    pub fn new(
        ring: &RingSpec,
        q1: usize,
        q2: usize,
        ker_f1_generators: &[Vector],
        section: &[Vector],
    ) -> Result<Self> {
        let n = q1 + q2;
        let inclusion_cols: Vec<Vector> = ker_f1_generators
            .iter()
            .map(|k| {
                let mut v = k.clone();
                v.resize(n, ring.zero());
                v
            })
            .collect();
        let mut projection = Matrix::zeros(ring, q2, n);
        for i in 0..q2 {
            projection.set(i, q1 + i, ring.one())?;
        }
        Ok(ExactSequenceWitness {
            inclusion: Matrix::from_columns(ring, n, &inclusion_cols)?,
            projection,
            section: Matrix::from_columns(ring, n, section)?,
        })
    }

    /// Checks exactness and the splitting `ker [A | B] = Im(inclusion) + Im(section)`
    /// (direct) against a computed result.
    pub fn verify(&self, a: &Matrix, b: &Matrix, result: &KernelPairResult) -> Result<()> {
        let fail = |msg: String| Err(Error::SplittingViolated(msg));
        let ring = a.ring();
        let (q1, q2) = (a.cols(), b.cols());
        let n = q1 + q2;
        if self.inclusion.rows() != n || self.section.rows() != n || self.projection.cols() != n {
            return fail("witness dimensions do not match the pair".into());
        }
        if !self.projection.mul(&self.inclusion)?.is_zero() {
            return fail("projection after inclusion is not zero".into());
        }
        let bar_gens = result.ker_bar.generators();
        let bar = columns_matrix(ring, q2, &bar_gens);
        if self.projection.mul(&self.section)? != bar {
            return fail("projection after section is not the identity on ker(A | B)".into());
        }
        let ab = a.hconcat(b)?;
        if !ab.mul(&self.section)?.is_zero() {
            return fail("a section column is not in ker [A | B]".into());
        }
        if !ab.mul(&self.inclusion)?.is_zero() {
            return fail("an inclusion column is not in ker [A | B]".into());
        }
        let mut both = self.inclusion.columns();
        both.extend(self.section.columns());
        if Submodule::span(ring, n, &both)? != result.ker_pair {
            return fail("inclusion and section do not span ker [A | B]".into());
        }
        let included = Submodule::column_span(&self.inclusion)?;
        let f1_padded = Submodule::span(
            ring,
            n,
            &result
                .ker_f1
                .generators()
                .into_iter()
                .map(|mut k| {
                    k.resize(n, ring.zero());
                    k
                })
                .collect::<Vec<_>>(),
        )?;
        if included != f1_padded {
            return fail("inclusion image differs from ker A".into());
        }
        // ker(projection) inside ker [A | B], via the kernel of projection * K
        let pair_gens = result.ker_pair.generators();
        let k = columns_matrix(ring, n, &pair_gens);
        let coeffs = linear::kernel(&self.projection.mul(&k)?)?;
        let kernel_part: Vec<Vector> = coeffs
            .generators()
            .iter()
            .map(|c| k.apply(c))
            .collect::<Result<_>>()?;
        if Submodule::span(ring, n, &kernel_part)? != included {
            return fail("image of the inclusion is not the kernel of the projection".into());
        }
        // column counts per prime component must add up to the rank of
        // ker [A | B]; combined with spanning this makes the sum direct
        for &prime in ring.primes() {
            let local = ring.local_ring(prime)?;
            let nonzero = |m: &Matrix| -> Result<usize> {
                let reduced = m.reduce_mod(prime)?;
                Ok(reduced
                    .columns()
                    .iter()
                    .filter(|c| c.iter().any(|e| !local.is_zero(e)))
                    .count())
            };
            let r = result.ker_pair.reduce_mod(prime)?.rank().unwrap_or(0);
            let (ri, rs) = (nonzero(&self.inclusion)?, nonzero(&self.section)?);
            if ri + rs != r {
                return fail(format!(
                    "at prime {prime}: {ri} inclusion + {rs} section columns for rank {r}"
                ));
            }
        }
        Ok(())
    }
}

/// The quotient `R^p -> R^p / Im A` over a field, as a matrix `C` with
/// `ker C = Im A`: the rows of the row-reduction transform of `A` below its rank.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuotientMap {
    pub matrix: Matrix,
}

impl QuotientMap {
    pub fn of(a: &Matrix) -> Result<Self> {
        let r = echelon::rref(a)?;
        let matrix = r.transform.select_rows(r.rank..a.rows());
        debug_assert!(matrix.mul(a).map(|m| m.is_zero()).unwrap_or(false));
        Ok(QuotientMap { matrix })
    }
}

/// An invertible square matrix together with its inverse.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Automorphism {
    pub matrix: Matrix,
    pub inverse: Matrix,
}

impl Automorphism {
    pub fn new(matrix: Matrix) -> Result<Self> {
        let inverse = linear::inverse(&matrix)?;
        Ok(Automorphism { matrix, inverse })
    }

    pub fn identity(ring: &RingSpec, n: usize) -> Self {
        let i = Matrix::identity(ring, n);
        Automorphism {
            matrix: i.clone(),
            inverse: i,
        }
    }

    /// A random automorphism of `R^n`. Over fields the matrix is drawn
    /// uniformly until it is invertible; other rings use a product of random
    /// elementary operations.
    pub fn random<G: Rng + ?Sized>(ring: &RingSpec, n: usize, rng: &mut G) -> Self {
        if ring.is_field() {
            loop {
                let vals: Vec<i64> = (0..n * n)
                    .map(|_| rng.gen_range(0..ring.modulus()) as i64)
                    .collect();
                let m = Matrix::from_ints(ring, n, n, &vals).expect("n x n values");
                if let Ok(a) = Automorphism::new(m) {
                    return a;
                }
            }
        }
        let mut m = Matrix::identity(ring, n);
        for _ in 0..3 * n {
            let i = rng.gen_range(0..n);
            let unit = loop {
                let c = random_scalar(ring, rng);
                if ring.is_unit(&c) {
                    break c;
                }
            };
            let mut rows: Vec<Vector> = (0..n).map(|r| m.row(r)).collect();
            rows[i] = rows[i].iter().map(|e| ring.mul(&unit, e)).collect();
            if n > 1 {
                let j = (i + rng.gen_range(1..n)) % n;
                let c = random_element(ring, rng);
                let add: Vector = rows[j].iter().map(|e| ring.mul(&c, e)).collect();
                rows[i] = rows[i].iter().zip(&add).map(|(x, y)| ring.add(x, y)).collect();
            }
            m = Matrix::from_rows(ring, n, rows).expect("n x n rows");
        }
        Automorphism::new(m).expect("elementary products are invertible")
    }
}

fn random_scalar<G: Rng + ?Sized>(ring: &RingSpec, rng: &mut G) -> Element {
    ring.from_int(rng.gen_range(0..ring.modulus()) as i64)
}

fn random_element<G: Rng + ?Sized>(ring: &RingSpec, rng: &mut G) -> Element {
    if ring.is_poly() {
        let coeffs: Vec<i64> = (0..3).map(|_| rng.gen_range(0..ring.modulus()) as i64).collect();
        ring.poly(&coeffs)
    } else {
        random_scalar(ring, rng)
    }
}

/// Same ring and same number of rows.
pub fn check_pair(a: &Matrix, b: &Matrix) -> Result<()> {
    if a.ring() != b.ring() {
        return Err(Error::RingMismatch {
            expected: a.ring().to_string(),
            found: b.ring().to_string(),
        });
    }
    if a.rows() != b.rows() {
        return Err(Error::DimensionMismatch(format!(
            "A has {} rows, B has {}",
            a.rows(),
            b.rows()
        )));
    }
    Ok(())
}

fn project(ring: &RingSpec, q1: usize, q2: usize, gens: &[Vector]) -> Result<Submodule> {
    let tails: Vec<Vector> = gens.iter().map(|g| g[q1..].to_vec()).collect();
    Submodule::span(ring, q2, &tails)
}

fn field_projection(a: &Matrix, b: &Matrix) -> Result<(KernelPairResult, ExactSequenceWitness)> {
    let ring = a.ring();
    let (q1, q2) = (a.cols(), b.cols());
    let ker_pair = echelon::nullspace(&a.hconcat(b)?)?;
    let ker_f1 = echelon::nullspace(a)?;
    let ker_bar = project(ring, q1, q2, &ker_pair.generators())?;
    let mut section = Vec::new();
    for u in ker_bar.generators() {
        let rhs: Vector = b.apply(&u)?.iter().map(|e| ring.neg(e)).collect();
        let mut x = echelon::solve(a, &rhs)?.ok_or_else(|| {
            Error::SplittingViolated(format!("no x with A x = -B u for u = {u:?}"))
        })?;
        x.extend(u);
        section.push(x);
    }
    let witness = ExactSequenceWitness::new(ring, q1, q2, &ker_f1.generators(), &section)?;
    Ok((
        KernelPairResult {
            ker_f1,
            ker_pair,
            ker_bar,
            method: Method::Projection,
        },
        witness,
    ))
}

/// Kernel pair over a field or `GF(p)[z]` with its witness.
pub(crate) fn kernel_pair_local(a: &Matrix, b: &Matrix) -> Result<(KernelPairResult, ExactSequenceWitness)> {
    match a.ring().kind() {
        RingKind::PrimeField => field_projection(a, b),
        RingKind::PolyRing => poly_matrix::kernel_pair_poly(a, b),
        _ => Err(Error::NotAField(a.ring().to_string())),
    }
}

/// `ker(A | B)` as the projection of `ker [A | B]`, with a split exact sequence
/// witness. Square-free modular rings are handled prime by prime.
pub fn kernel_pair_projection(a: &Matrix, b: &Matrix) -> Result<(KernelPairResult, ExactSequenceWitness)> {
    check_pair(a, b)?;
    let ring = a.ring();
    match ring.kind() {
        RingKind::PrimeField | RingKind::PolyRing => kernel_pair_local(a, b),
        _ if ring.is_decomposable() => {
            let lg = crt::kernel_pair_crt(a, b)?;
            Ok((lg.glued, lg.witness))
        }
        _ => Err(not_square_free(ring)),
    }
}

/// Alias of [`kernel_pair_projection`].
pub fn kernel_pair_with_witness(a: &Matrix, b: &Matrix) -> Result<(KernelPairResult, ExactSequenceWitness)> {
    kernel_pair_projection(a, b)
}

/// `ker(A | B)` over any supported ring. `Z/m` with a repeated prime factor is
/// computed by enumeration and carries no splitting witness.
pub fn kernel_pair(a: &Matrix, b: &Matrix) -> Result<KernelPairResult> {
    check_pair(a, b)?;
    let ring = a.ring();
    if ring.kind() == RingKind::ModRing && !ring.is_decomposable() {
        return oracle_result(a, b);
    }
    Ok(kernel_pair_projection(a, b)?.0)
}

/// Runs one method by name over the rings where it applies.
pub fn kernel_pair_by(method: Method, a: &Matrix, b: &Matrix) -> Result<KernelPairResult> {
    match method {
        Method::Projection => kernel_pair(a, b),
        Method::Preimage => kernel_pair_preimage(a, b),
        Method::Quotient => Ok(kernel_pair_quotient(a, b)?.0),
        Method::Oracle => oracle_result(a, b),
    }
}

fn oracle_result(a: &Matrix, b: &Matrix) -> Result<KernelPairResult> {
    let ker_bar = kernel_pair_oracle(a, b)?;
    Ok(KernelPairResult {
        ker_f1: linear::kernel(a)?,
        ker_pair: linear::kernel(&a.hconcat(b)?)?,
        ker_bar,
        method: Method::Oracle,
    })
}

/// `ker(A | B) = B^-1(Im A)`: project the kernel of `[M | B]` with `M` a basis
/// of `Im A`. Fields only.
pub fn kernel_pair_preimage(a: &Matrix, b: &Matrix) -> Result<KernelPairResult> {
    check_pair(a, b)?;
    require_field(a.ring())?;
    let ring = a.ring();
    let im = echelon::image(a)?;
    let m = im.basis().expect("field basis");
    let r = m.cols();
    let ker_mb = echelon::nullspace(&m.hconcat(b)?)?;
    Ok(KernelPairResult {
        ker_f1: echelon::nullspace(a)?,
        ker_pair: echelon::nullspace(&a.hconcat(b)?)?,
        ker_bar: project(ring, r, b.cols(), &ker_mb.generators())?,
        method: Method::Preimage,
    })
}

/// `ker(A | B) = ker(C B)` with `C` the quotient map by `Im A`. Fields only.
pub fn kernel_pair_quotient(a: &Matrix, b: &Matrix) -> Result<(KernelPairResult, QuotientMap)> {
    check_pair(a, b)?;
    require_field(a.ring())?;
    let c = QuotientMap::of(a)?;
    let ker_bar = echelon::nullspace(&c.matrix.mul(b)?)?;
    Ok((
        KernelPairResult {
            ker_f1: echelon::nullspace(a)?,
            ker_pair: echelon::nullspace(&a.hconcat(b)?)?,
            ker_bar,
            method: Method::Quotient,
        },
        c,
    ))
}

type Solvable<'a> = dyn Fn(&Vector) -> Result<bool> + 'a;

/// `ker(A | B)` by enumerating every `u` and testing `A x = -B u` for
/// solvability. Finite rings only, at most
/// [`ENUMERATION_LIMIT`](crate::submodule::ENUMERATION_LIMIT) candidates.
pub fn kernel_pair_oracle(a: &Matrix, b: &Matrix) -> Result<Submodule> {
    check_pair(a, b)?;
    let ring = a.ring();
    if !ring.is_finite() {
        return Err(Error::NotFinite(ring.to_string()));
    }
    let m = ring.modulus();
    let q2 = b.cols();
    let size = submodule::enumeration_size(m, q2)? as usize;
    let solvable: Box<Solvable<'_>> = if ring.is_decomposable() {
        let locals: Vec<(u64, Matrix)> = ring
            .primes()
            .iter()
            .map(|&p| Ok((p, a.reduce_mod(p)?)))
            .collect::<Result<_>>()?;
        Box::new(move |rhs: &Vector| {
            for (p, la) in &locals {
                let lr: Vector = rhs.iter().map(|e| ring.reduce_to(e, *p)).collect();
                if echelon::solve(la, &lr)?.is_none() {
                    return Ok(false);
                }
            }
            Ok(true)
        })
    } else {
        let in_size = submodule::enumeration_size(m, a.cols())? as usize;
        let out_size = submodule::enumeration_size(m, a.rows())? as usize;
        let mut image = vec![false; out_size];
        for idx in 0..in_size {
            let x: Vector = submodule::decode(idx, m, a.cols())
                .into_iter()
                .map(Element::Int)
                .collect();
            let ax: Vec<u64> = a.apply(&x)?.iter().map(|e| e.as_int().unwrap()).collect();
            image[submodule::encode(&ax, m)] = true;
        }
        Box::new(move |rhs: &Vector| {
            let v: Vec<u64> = rhs.iter().map(|e| e.as_int().unwrap()).collect();
            Ok(image[submodule::encode(&v, m)])
        })
    };
    let mut members = Vec::new();
    for idx in 0..size {
        let u = submodule::decode(idx, m, q2);
        let ue: Vector = u.iter().map(|&x| Element::Int(x)).collect();
        let rhs: Vector = b.apply(&ue)?.iter().map(|e| ring.neg(e)).collect();
        if solvable(&rhs)? {
            members.push(u);
        }
    }
    Submodule::from_elements(ring, q2, members)
}

/// Checks the automorphism identities
///
/// * `ker(A | B Psi2) = Psi2^-1 ker(A | B)`, and `Psi2` maps the left side
///   bijectively onto `ker(A | B)`;
/// * `ker(A Psi1 | B) = ker(A | B)`;
/// * `ker(Psi A | B) = ker(A | Psi^-1 B)`.
pub fn check_identities(
    a: &Matrix,
    b: &Matrix,
    psi1: &Automorphism,
    psi2: &Automorphism,
    psi: &Automorphism,
) -> Result<()> {
    check_pair(a, b)?;
    let n = |m: &Matrix| m.rows();
    if n(&psi1.matrix) != a.cols() || n(&psi2.matrix) != b.cols() || n(&psi.matrix) != a.rows() {
        return Err(Error::DimensionMismatch("automorphism sizes do not match the pair".into()));
    }
    let violated = |clause: &str, detail: String| {
        Err(Error::IdentityViolated {
            clause: clause.into(),
            detail: format!("{detail}; A = {a:?}, B = {b:?}"),
        })
    };
    let base = kernel_pair(a, b)?.ker_bar;

    let twisted = kernel_pair(a, &b.mul(&psi2.matrix)?)?.ker_bar;
    if twisted != base.image_under(&psi2.inverse)? {
        return violated("B Psi2", "ker(A | B Psi2) != Psi2^-1 ker(A | B)".into());
    }
    let pushed = twisted.image_under(&psi2.matrix)?;
    if pushed != base {
        return violated("isomorphism", "Psi2 ker(A | B Psi2) != ker(A | B)".into());
    }
    if pushed.component_ranks() != twisted.component_ranks() || pushed.count() != twisted.count() {
        return violated("isomorphism", "Psi2 does not preserve the kernel's size".into());
    }

    if kernel_pair(&a.mul(&psi1.matrix)?, b)?.ker_bar != base {
        return violated("A Psi1", "ker(A Psi1 | B) != ker(A | B)".into());
    }

    let left = kernel_pair(&psi.matrix.mul(a)?, b)?.ker_bar;
    let right = kernel_pair(a, &psi.inverse.mul(b)?)?.ker_bar;
    if left != right {
        return violated("Psi A", "ker(Psi A | B) != ker(A | Psi^-1 B)".into());
    }
    Ok(())
}

/// Degenerate cases that apply to a given pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Degenerate {
    /// `ker(0 | B) = ker B`.
    ZeroFirst,
    /// `A` onto implies `ker(A | B)` is everything.
    Onto,
    /// `ker(0 | I) = 0`.
    ZeroIdentity,
    /// `ker(A | 0)` is everything.
    ZeroSecond,
    /// `Im B` inside `Im A` implies `ker(A | B)` is everything.
    ImageContained,
}

/// Verifies the degenerate identities around `(A, B)`: the ones built from its
/// shapes always, and the conditional ones when their hypothesis holds.
/// Returns the identities that were checked.
pub fn check_degenerate(a: &Matrix, b: &Matrix) -> Result<Vec<Degenerate>> {
    check_pair(a, b)?;
    let ring = a.ring();
    let (p, q1, q2) = (a.rows(), a.cols(), b.cols());
    let violated = |clause: Degenerate, detail: String| {
        Err(Error::IdentityViolated {
            clause: format!("{clause:?}"),
            detail,
        })
    };
    let mut checked = Vec::new();

    let zero_a = Matrix::zeros(ring, p, q1);
    let lhs = kernel_pair(&zero_a, b)?.ker_bar;
    let rhs = linear::kernel(b)?;
    if lhs != rhs {
        return violated(Degenerate::ZeroFirst, format!("{:?} vs {:?}", lhs.generators(), rhs.generators()));
    }
    checked.push(Degenerate::ZeroFirst);

    if kernel_pair(&zero_a, &Matrix::identity(ring, p))?.ker_bar != Submodule::zero(ring, p)? {
        return violated(Degenerate::ZeroIdentity, format!("p = {p}"));
    }
    checked.push(Degenerate::ZeroIdentity);

    let full = Submodule::full(ring, q2)?;
    if kernel_pair(a, &Matrix::zeros(ring, p, q2))?.ker_bar != full {
        return violated(Degenerate::ZeroSecond, format!("A = {a:?}"));
    }
    checked.push(Degenerate::ZeroSecond);

    let result = kernel_pair(a, b)?.ker_bar;
    let im_a = linear::image(a)?;
    if im_a.is_full() {
        if result != full {
            return violated(Degenerate::Onto, format!("A = {a:?}, B = {b:?}"));
        }
        checked.push(Degenerate::Onto);
    }
    let contained = b
        .columns()
        .iter()
        .map(|c| im_a.contains(c))
        .collect::<Result<Vec<bool>>>()?
        .into_iter()
        .all(|x| x);
    if contained {
        if result != full {
            return violated(Degenerate::ImageContained, format!("A = {a:?}, B = {b:?}"));
        }
        checked.push(Degenerate::ImageContained);
    }
    Ok(checked)
}

/// Runs projection, preimage and quotient (fields) and the oracle when it is
/// within its limit, and fails if any two disagree.
pub fn compare_methods(a: &Matrix, b: &Matrix) -> Result<Vec<Method>> {
    let reference = kernel_pair(a, b)?;
    let mut ran = vec![reference.method];
    let mut others = Vec::new();
    if a.ring().is_field() {
        others.push(kernel_pair_preimage(a, b)?);
        others.push(kernel_pair_quotient(a, b)?.0);
    }
    if a.ring().is_finite() && reference.method != Method::Oracle {
        match kernel_pair_oracle(a, b) {
            Ok(ker_bar) => others.push(KernelPairResult {
                ker_bar,
                method: Method::Oracle,
                ..reference.clone()
            }),
            Err(Error::OracleTooLarge { .. }) => {}
            Err(e) => return Err(e),
        }
    }
    for other in others {
        if other.ker_bar != reference.ker_bar {
            return Err(Error::MethodMismatch(format!(
                "{} gives {:?}, {} gives {:?}",
                reference.method.name(),
                reference.ker_bar.generators(),
                other.method.name(),
                other.ker_bar.generators()
            )));
        }
        ran.push(other.method);
    }
    Ok(ran)
}

/// `|ker [A | B]| = |ker A| * |ker(A | B)|` over a finite ring.
pub fn check_cardinality(result: &KernelPairResult) -> Result<(u128, u128, u128)> {
    let count = |s: &Submodule| {
        s.count()
            .ok_or_else(|| Error::NotFinite(s.ring().to_string()))
    };
    let (pair, f1, bar) = (count(&result.ker_pair)?, count(&result.ker_f1)?, count(&result.ker_bar)?);
    if f1.checked_mul(bar) != Some(pair) {
        return Err(Error::IdentityViolated {
            clause: "cardinality".into(),
            detail: format!("|ker [A | B]| = {pair}, |ker A| = {f1}, |ker(A | B)| = {bar}"),
        });
    }
    Ok((pair, f1, bar))
}
