//! State-space systems `x(t+1) = A x(t) + B u(t)` over finite rings.
//!
//! An input sequence is admissible when some state sequence satisfies the
//! recursion. On a finite window this depends on the boundary condition, so
//! three are offered: a free initial state, a fixed initial state, and
//! `T`-periodic states. [`codeword_consistency`] compares the window picture with
//! the polynomial one, where admissible inputs form `ker(zI - A | B)` over
//! `GF(p)[z]`.

use crate::echelon::Dense;
use crate::error::{Error, Result};
use crate::hermite;
use crate::linear;
use crate::matrix::{Matrix, Vector};
use crate::poly::Poly;
use crate::poly_matrix::{self, bounded_kernel};
use crate::ring::{Element, RingSpec};
use crate::submodule::to_polys;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SystemPair {
    a: Matrix,
    b: Matrix,
}

impl SystemPair {
    /// `A` must be square with as many rows as `B`, over a finite ring.
    pub fn new(a: Matrix, b: Matrix) -> Result<Self> {
        if !a.ring().is_finite() {
            return Err(Error::NotFinite(a.ring().to_string()));
        }
        crate::kernel_pair::check_pair(&a, &b)?;
        if !a.is_square() {
            return Err(Error::DimensionMismatch(format!(
                "state matrix is {}x{}",
                a.rows(),
                a.cols()
            )));
        }
        Ok(SystemPair { a, b })
    }

    pub fn a(&self) -> &Matrix {
        &self.a
    }

    pub fn b(&self) -> &Matrix {
        &self.b
    }

    pub fn ring(&self) -> &RingSpec {
        self.a.ring()
    }

    pub fn states(&self) -> usize {
        self.a.rows()
    }

    pub fn inputs(&self) -> usize {
        self.b.cols()
    }

    fn step(&self, x: &[Element], u: &[Element]) -> Result<Vector> {
        let ax = self.a.apply(x)?;
        let bu = self.b.apply(u)?;
        Ok(ax.iter().zip(&bu).map(|(l, r)| self.ring().add(l, r)).collect())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Trajectory {
    /// `x(0), ..., x(T)`.
    pub states: Vec<Vector>,
    /// `u(0), ..., u(T-1)`.
    pub inputs: Vec<Vector>,
}

impl Trajectory {
    pub fn horizon(&self) -> usize {
        self.inputs.len()
    }

    /// Recomputes every step of the recursion.
    pub fn verify(&self, sys: &SystemPair) -> Result<()> {
        if self.states.len() != self.inputs.len() + 1 {
            return Err(Error::ConsistencyViolated(format!(
                "{} states for {} inputs",
                self.states.len(),
                self.inputs.len()
            )));
        }
        for (t, u) in self.inputs.iter().enumerate() {
            if sys.step(&self.states[t], u)? != self.states[t + 1] {
                return Err(Error::ConsistencyViolated(format!("recursion fails at t = {t}")));
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Boundary {
    /// Any initial state; zero is used.
    FreeInitial,
    /// `x(T) = x(0)`.
    PeriodicT,
    FixedInitial(Vector),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AdmissibleInputQuery {
    pub inputs: Vec<Vector>,
    pub boundary: Boundary,
}

fn check_vector(ring: &RingSpec, v: &[Element], len: usize, what: &str) -> Result<()> {
    if v.len() != len {
        return Err(Error::DimensionMismatch(format!(
            "{what} has {} entries, expected {len}",
            v.len()
        )));
    }
    v.iter().try_for_each(|e| ring.check(e))
}

/// Forward recursion from `x0`.
pub fn simulate(sys: &SystemPair, x0: &[Element], inputs: &[Vector]) -> Result<Trajectory> {
    check_vector(sys.ring(), x0, sys.states(), "initial state")?;
    let mut states = vec![x0.to_vec()];
    for (t, u) in inputs.iter().enumerate() {
        check_vector(sys.ring(), u, sys.inputs(), &format!("input {t}"))?;
        let next = sys.step(&states[t], u)?;
        states.push(next);
    }
    Ok(Trajectory {
        states,
        inputs: inputs.to_vec(),
    })
}

/// A state trajectory for the query's inputs under its boundary condition, or
/// `None` when no periodic trajectory exists.
///
/// The periodic case solves `(A^T - I) x(0) = -x_T`, where `x_T` is the state
/// reached from zero. Over `Z/m` with a repeated prime factor the solve
/// enumerates candidate states and is subject to the enumeration limit.
pub fn admissible(sys: &SystemPair, query: &AdmissibleInputQuery) -> Result<Option<Trajectory>> {
    let ring = sys.ring();
    let n = sys.states();
    match &query.boundary {
        Boundary::FreeInitial => simulate(sys, &vec![ring.zero(); n], &query.inputs).map(Some),
        Boundary::FixedInitial(x0) => simulate(sys, x0, &query.inputs).map(Some),
        Boundary::PeriodicT => {
            let forced = simulate(sys, &vec![ring.zero(); n], &query.inputs)?;
            let x_t = forced.states.last().expect("at least one state");
            let mut power = Matrix::identity(ring, n);
            for _ in 0..query.inputs.len() {
                power = power.mul(sys.a())?;
            }
            let lhs = power.add(&Matrix::identity(ring, n).neg())?;
            let rhs: Vector = x_t.iter().map(|e| ring.neg(e)).collect();
            let Some(x0) = linear::solve(&lhs, &rhs)? else {
                return Ok(None);
            };
            let traj = simulate(sys, &x0, &query.inputs)?;
            if traj.states.last() != traj.states.first() {
                return Err(Error::ConsistencyViolated("periodic solve missed x(T) = x(0)".into()));
            }
            Ok(Some(traj))
        }
    }
}

/// `zI - A` over `GF(p)[z]`.
pub fn pencil(a: &Matrix) -> Result<Matrix> {
    let ring = a.ring();
    if !ring.is_field() {
        return Err(Error::NotAField(ring.to_string()));
    }
    let pz = RingSpec::poly_ring(ring.modulus())?;
    let n = a.rows();
    let mut out = Matrix::zeros(&pz, n, a.cols());
    for i in 0..n {
        for j in 0..a.cols() {
            let c = a.get(i, j).as_int().unwrap();
            let diag = u64::from(i == j);
            out.set(i, j, Element::Poly(Poly::from_coeffs(vec![(ring.modulus() - c) % ring.modulus(), diag], ring.modulus())))?;
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConsistencyReport {
    pub pencil_kernel_rank: usize,
    pub pair_rank: usize,
    pub bar_rank: usize,
    /// Dimension over `GF(p)` of the admissible inputs of degree at most `D`.
    pub bounded_dim: usize,
    /// Inputs whose witness was reconstructed and checked.
    pub checked: usize,
}

/// Largest `GF(p)`-space size enumerated element by element.
const FULL_CHECK_LIMIT: u128 = 4096;

/// Compares the pencil picture of a system over `GF(p)` with its polynomial
/// kernel pair: `ker(zI - A) = 0`, equal ranks of `ker [zI - A | B]` and
/// `ker(zI - A | B)`, and a polynomial witness for admissible inputs of degree
/// at most `max_degree`. The degree-bounded inputs are computed twice, by
/// reducing against the Hermite basis and by projecting bounded kernel vectors
/// of `[zI - A | B]`, and the two must agree.
pub fn codeword_consistency(sys: &SystemPair, max_degree: usize) -> Result<ConsistencyReport> {
    let fail = |msg: String| Err(Error::ConsistencyViolated(msg));
    let p = sys.ring().modulus();
    let pa = pencil(sys.a())?;
    let pz = pa.ring().clone();
    let pb = sys.b().lift_to(&pz);
    let (n, m) = (sys.states(), sys.inputs());

    let pencil_kernel_rank = poly_matrix::poly_kernel(&pa)?.rank;
    if pencil_kernel_rank != 0 {
        return fail(format!("ker(zI - A) has rank {pencil_kernel_rank}"));
    }
    let (res, wit) = poly_matrix::kernel_pair_poly(&pa, &pb)?;
    let pair_rank = res.ker_pair.rank().unwrap_or(0);
    let bar_rank = res.ker_bar.rank().unwrap_or(0);
    if pair_rank != bar_rank {
        return fail(format!("rank ker [zI - A | B] = {pair_rank}, rank ker(zI - A | B) = {bar_rank}"));
    }

    // degree <= D inputs as coefficient vectors of length m (D + 1)
    let width = max_degree + 1;
    let basis = res.ker_bar.basis().expect("polynomial basis");
    let hb: Vec<Vec<Poly>> = basis.columns().iter().map(|c| to_polys(c)).collect();
    let pivots: Vec<usize> = hb
        .iter()
        .map(|c| c.iter().rposition(|x| !x.is_zero()).expect("nonzero column"))
        .collect();
    let rem_width = remainder_width(&hb, max_degree);
    let mut remainder_map = Dense::zeros(p, m * rem_width, m * width);
    for j in 0..m {
        for k in 0..width {
            let mut v = vec![Poly::zero(); m];
            v[j] = Poly::monomial(1, k, p);
            let (_, rest) = hermite::hermite_reduce(p, &hb, &pivots, &v);
            for (r, e) in rest.iter().enumerate() {
                for (t, &c) in e.coeffs().iter().enumerate() {
                    remainder_map.a[(r * rem_width + t) * remainder_map.cols + j * width + k] = c;
                }
            }
        }
    }
    let by_division = canonical(p, m * width, &remainder_map.nullspace_vectors());

    let projected: Vec<Vec<u64>> = bounded_kernel(&pa.hconcat(&pb)?, max_degree)?
        .iter()
        .map(|v| flatten(&v[n..], width))
        .collect();
    let by_projection = canonical(p, m * width, &projected);
    if by_division != by_projection {
        return fail(format!(
            "degree <= {max_degree} inputs: {} by division, {} by projection",
            by_division.len(),
            by_projection.len()
        ));
    }

    let bounded_dim = by_division.len();
    let mut to_check: Vec<Vec<u64>> = by_division.clone();
    if (p as u128).checked_pow(bounded_dim as u32).is_some_and(|s| s <= FULL_CHECK_LIMIT) {
        to_check = all_combinations(p, &by_division);
    }
    for coeffs in &to_check {
        let u: Vector = (0..m)
            .map(|j| Element::Poly(Poly::from_coeffs(coeffs[j * width..(j + 1) * width].to_vec(), p)))
            .collect();
        if poly_matrix::witness_from(&pa, &pb, &res, &wit, &u)?.is_none() {
            return fail(format!("admissible input {u:?} has no witness"));
        }
    }
    Ok(ConsistencyReport {
        pencil_kernel_rank,
        pair_rank,
        bar_rank,
        bounded_dim,
        checked: to_check.len(),
    })
}

fn remainder_width(basis: &[Vec<Poly>], max_degree: usize) -> usize {
    let d = basis
        .iter()
        .flat_map(|c| c.iter().filter_map(Poly::degree))
        .max()
        .unwrap_or(0);
    max_degree + d + 1
}

fn flatten(v: &[Poly], width: usize) -> Vec<u64> {
    let mut out = vec![0; v.len() * width];
    for (j, e) in v.iter().enumerate() {
        for (k, &c) in e.coeffs().iter().enumerate() {
            out[j * width + k] = c;
        }
    }
    out
}

fn canonical(p: u64, len: usize, rows: &[Vec<u64>]) -> Vec<Vec<u64>> {
    crate::echelon::canonical_rows(p, len, rows)
}

fn all_combinations(p: u64, basis: &[Vec<u64>]) -> Vec<Vec<u64>> {
    let len = basis.first().map_or(0, Vec::len);
    let mut out = vec![vec![0; len]];
    for b in basis {
        let mut next = Vec::with_capacity(out.len() * p as usize);
        for v in &out {
            for c in 0..p {
                next.push(
                    v.iter()
                        .zip(b)
                        .map(|(&x, &y)| (x + c * y) % p)
                        .collect(),
                );
            }
        }
        out = next;
    }
    out
}
