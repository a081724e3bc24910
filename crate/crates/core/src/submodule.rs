//! Canonical presentations of submodules of free modules `R^q`.
//!
//! Presentations are unique per submodule, so set equality is structural
//! equality (`==`):
//!
//! * over `GF(p)`: the reduced column echelon basis (pivot = first nonzero
//!   entry of a column, pivots equal to one, zero elsewhere in their row,
//!   columns ordered by pivot row);
//! * over `GF(p)[z]`: the column Hermite form described in [`crate::hermite`];
//! * over `Z/m` and `(Z/m)[z]` with square-free `m`: one presentation per prime
//!   factor, in increasing prime order, describing the reduction mod that prime;
//! * over `Z/m` with `m` not square-free: the sorted list of all elements.

use std::collections::HashSet;

use crate::crt;
use crate::echelon::canonical_rows;
use crate::error::{Error, Result};
use crate::hermite;
use crate::matrix::{Matrix, Vector};
use crate::poly::Poly;
use crate::ring::{Element, RingKind, RingSpec};

/// Upper bound on the number of elements an explicit enumeration may visit.
pub const ENUMERATION_LIMIT: u128 = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Presentation {
    FieldBasis(Matrix),
    PolyBasis(Matrix),
    ModComponents(Vec<Submodule>),
    Enumerated(Vec<Vec<u64>>),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Submodule {
    ring: RingSpec,
    ambient: usize,
    presentation: Presentation,
}

impl Submodule {
    /// The submodule generated by `generators` (each of length `ambient`).
    pub fn span(ring: &RingSpec, ambient: usize, generators: &[Vector]) -> Result<Self> {
        for g in generators {
            if g.len() != ambient {
                return Err(Error::AmbientMismatch(format!(
                    "generator of length {} in ambient dimension {ambient}",
                    g.len()
                )));
            }
            for e in g {
                ring.check(e)?;
            }
        }
        match ring.kind() {
            RingKind::PrimeField => {
                let rows: Vec<Vec<u64>> = generators
                    .iter()
                    .map(|g| g.iter().map(|e| e.as_int().unwrap()).collect())
                    .collect();
                Ok(Self::from_field_rows(ring, ambient, &rows))
            }
            RingKind::PolyRing => {
                let rows: Vec<Vec<Poly>> = generators.iter().map(|g| to_polys(g)).collect();
                let h = hermite::hermite_rows(ring.modulus(), ambient, &rows, false);
                Ok(Self::from_hermite(ring, ambient, h.rows))
            }
            RingKind::ModRing | RingKind::PolyModRing if ring.is_decomposable() => {
                let mut components = Vec::with_capacity(ring.primes().len());
                for &p in ring.primes() {
                    let local = ring.local_ring(p)?;
                    let reduced: Vec<Vector> = generators
                        .iter()
                        .map(|g| g.iter().map(|e| ring.reduce_to(e, p)).collect())
                        .collect();
                    components.push(Self::span(&local, ambient, &reduced)?);
                }
                Ok(Submodule {
                    ring: ring.clone(),
                    ambient,
                    presentation: Presentation::ModComponents(components),
                })
            }
            RingKind::ModRing => {
                let gens: Vec<Vec<u64>> = generators
                    .iter()
                    .map(|g| g.iter().map(|e| e.as_int().unwrap()).collect())
                    .collect();
                let elements = enumerate_span(ring.modulus(), ambient, &gens)?;
                Ok(Submodule {
                    ring: ring.clone(),
                    ambient,
                    presentation: Presentation::Enumerated(elements),
                })
            }
            RingKind::PolyModRing => Err(not_square_free(ring)),
        }
    }

    /// Column span of a matrix.
    pub fn column_span(m: &Matrix) -> Result<Self> {
        Self::span(m.ring(), m.rows(), &m.columns())
    }

    pub fn zero(ring: &RingSpec, ambient: usize) -> Result<Self> {
        Self::span(ring, ambient, &[])
    }

    pub fn full(ring: &RingSpec, ambient: usize) -> Result<Self> {
        Self::column_span(&Matrix::identity(ring, ambient))
    }

    pub(crate) fn from_field_rows(ring: &RingSpec, ambient: usize, rows: &[Vec<u64>]) -> Self {
        let canon = canonical_rows(ring.modulus(), ambient, rows);
        let cols: Vec<Vector> = canon
            .into_iter()
            .map(|r| r.into_iter().map(Element::Int).collect())
            .collect();
        let basis = Matrix::from_columns(ring, ambient, &cols).expect("canonical basis");
        Submodule {
            ring: ring.clone(),
            ambient,
            presentation: Presentation::FieldBasis(basis),
        }
    }

    pub(crate) fn from_hermite(ring: &RingSpec, ambient: usize, rows: Vec<Vec<Poly>>) -> Self {
        let cols: Vec<Vector> = rows
            .into_iter()
            .map(|r| r.into_iter().map(Element::Poly).collect())
            .collect();
        let basis = Matrix::from_columns(ring, ambient, &cols).expect("canonical basis");
        Submodule {
            ring: ring.clone(),
            ambient,
            presentation: Presentation::PolyBasis(basis),
        }
    }

    /// Builds an explicit element set after checking that it is closed under
    /// the module operations.
    pub(crate) fn from_elements(ring: &RingSpec, ambient: usize, mut elements: Vec<Vec<u64>>) -> Result<Self> {
        elements.sort();
        elements.dedup();
        let closure = enumerate_span(ring.modulus(), ambient, &elements)?;
        if closure != elements {
            return Err(Error::IdentityViolated {
                clause: "closure".into(),
                detail: format!(
                    "enumerated set of {} elements generates {} elements",
                    elements.len(),
                    closure.len()
                ),
            });
        }
        if ring.is_decomposable() {
            let mut gens: Vec<Vector> = Vec::new();
            let mut current = Self::zero(ring, ambient)?;
            for v in &elements {
                let v: Vector = v.iter().map(|&x| Element::Int(x)).collect();
                if !current.contains(&v)? {
                    gens.push(v);
                    current = Self::span(ring, ambient, &gens)?;
                }
            }
            return Ok(current);
        }
        Ok(Submodule {
            ring: ring.clone(),
            ambient,
            presentation: Presentation::Enumerated(elements),
        })
    }

    pub fn ring(&self) -> &RingSpec {
        &self.ring
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn presentation(&self) -> &Presentation {
        &self.presentation
    }

    /// Canonical basis matrix (`ambient x rank`) over a field or `GF(p)[z]`.
    pub fn basis(&self) -> Option<&Matrix> {
        match &self.presentation {
            Presentation::FieldBasis(b) | Presentation::PolyBasis(b) => Some(b),
            _ => None,
        }
    }

    /// Dimension over a field, rank over `GF(p)[z]`; `None` for modular rings.
    pub fn rank(&self) -> Option<usize> {
        self.basis().map(Matrix::cols)
    }

    /// Per-prime components of a decomposed presentation.
    pub fn components(&self) -> Option<&[Submodule]> {
        match &self.presentation {
            Presentation::ModComponents(c) => Some(c),
            _ => None,
        }
    }

    pub fn component_ranks(&self) -> Vec<usize> {
        match &self.presentation {
            Presentation::ModComponents(c) => c.iter().filter_map(Submodule::rank).collect(),
            _ => self.rank().into_iter().collect(),
        }
    }

    /// Number of elements for submodules of finite modules.
    pub fn count(&self) -> Option<u128> {
        match &self.presentation {
            Presentation::FieldBasis(b) => (self.ring.modulus() as u128).checked_pow(b.cols() as u32),
            Presentation::PolyBasis(b) if b.cols() == 0 => Some(1),
            Presentation::PolyBasis(_) => None,
            Presentation::ModComponents(c) => c
                .iter()
                .try_fold(1u128, |acc, s| s.count().and_then(|n| acc.checked_mul(n))),
            Presentation::Enumerated(e) => Some(e.len() as u128),
        }
    }

    pub fn is_zero(&self) -> bool {
        match &self.presentation {
            Presentation::FieldBasis(b) | Presentation::PolyBasis(b) => b.cols() == 0,
            Presentation::ModComponents(c) => c.iter().all(Submodule::is_zero),
            Presentation::Enumerated(e) => e.len() == 1,
        }
    }

    pub fn is_full(&self) -> bool {
        match &self.presentation {
            Presentation::FieldBasis(b) => b.cols() == self.ambient,
            Presentation::PolyBasis(b) => *b == Matrix::identity(&self.ring, self.ambient),
            Presentation::ModComponents(c) => c.iter().all(Submodule::is_full),
            Presentation::Enumerated(e) => {
                (self.ring.modulus() as u128).checked_pow(self.ambient as u32) == Some(e.len() as u128)
            }
        }
    }

    /// Generators over the submodule's own ring. For decomposed presentations
    /// these are `e_i * lift(b)` for each local basis vector `b` at prime `i`,
    /// with `e_i` the structural idempotents.
    pub fn generators(&self) -> Vec<Vector> {
        match &self.presentation {
            Presentation::FieldBasis(b) | Presentation::PolyBasis(b) => b.columns(),
            Presentation::ModComponents(comps) => {
                let dec = crt::idempotents(self.ring.modulus()).expect("decomposable modulus");
                let mut out = Vec::new();
                for (comp, &e) in comps.iter().zip(dec.idempotents()) {
                    let e = self.ring.from_int(e as i64);
                    for g in comp.generators() {
                        out.push(
                            g.iter()
                                .map(|x| self.ring.mul(&e, &self.ring.lift_from(x)))
                                .collect(),
                        );
                    }
                }
                out
            }
            Presentation::Enumerated(elems) => {
                minimal_generators(self.ring.modulus(), self.ambient, elems)
                    .into_iter()
                    .map(|v| v.into_iter().map(Element::Int).collect())
                    .collect()
            }
        }
    }

    fn check_vector(&self, v: &[Element]) -> Result<()> {
        if v.len() != self.ambient {
            return Err(Error::AmbientMismatch(format!(
                "vector of length {} tested against submodule of {}^{}",
                v.len(),
                self.ring,
                self.ambient
            )));
        }
        for e in v {
            self.ring.check(e)?;
        }
        Ok(())
    }

    /// Coordinates of `v` on [`Submodule::generators`] when `v` is a member.
    pub fn member(&self, v: &[Element]) -> Result<Option<Vec<Element>>> {
        self.check_vector(v)?;
        match &self.presentation {
            Presentation::FieldBasis(b) => {
                let p = self.ring.modulus();
                let mut rest: Vec<u64> = v.iter().map(|e| e.as_int().unwrap()).collect();
                let mut coords = Vec::with_capacity(b.cols());
                for j in 0..b.cols() {
                    let col: Vec<u64> = b.column(j).iter().map(|e| e.as_int().unwrap()).collect();
                    let pivot = col.iter().position(|&x| x != 0).expect("nonzero basis column");
                    let c = rest[pivot];
                    for (r, &x) in rest.iter_mut().zip(&col) {
                        *r = crate::arith::sub_mod(*r, crate::arith::mul_mod(c, x, p), p);
                    }
                    coords.push(Element::Int(c));
                }
                Ok(rest.iter().all(|&x| x == 0).then_some(coords))
            }
            Presentation::PolyBasis(b) => {
                let basis: Vec<Vec<Poly>> = b.columns().iter().map(|c| to_polys(c)).collect();
                let pivots: Vec<usize> = basis
                    .iter()
                    .map(|c| c.iter().rposition(|x| !x.is_zero()).expect("nonzero basis column"))
                    .collect();
                Ok(
                    hermite::hermite_divide(self.ring.modulus(), &basis, &pivots, &to_polys(v))
                        .map(|c| c.into_iter().map(Element::Poly).collect()),
                )
            }
            Presentation::ModComponents(comps) => {
                let mut coords = Vec::new();
                for (comp, &p) in comps.iter().zip(self.ring.primes()) {
                    let reduced: Vector = v.iter().map(|e| self.ring.reduce_to(e, p)).collect();
                    match comp.member(&reduced)? {
                        Some(c) => coords.extend(c.iter().map(|x| self.ring.lift_from(x))),
                        None => return Ok(None),
                    }
                }
                Ok(Some(coords))
            }
            Presentation::Enumerated(elems) => {
                let target: Vec<u64> = v.iter().map(|e| e.as_int().unwrap()).collect();
                if elems.binary_search(&target).is_err() {
                    return Ok(None);
                }
                let gens = minimal_generators(self.ring.modulus(), self.ambient, elems);
                Ok(Some(
                    coordinates_by_search(self.ring.modulus(), &gens, &target)
                        .expect("members are combinations of generators")
                        .into_iter()
                        .map(Element::Int)
                        .collect(),
                ))
            }
        }
    }

    pub fn contains(&self, v: &[Element]) -> Result<bool> {
        Ok(self.member(v)?.is_some())
    }

    /// Image of the submodule under `m : R^ambient -> R^rows(m)`.
    pub fn image_under(&self, m: &Matrix) -> Result<Submodule> {
        if m.ring() != &self.ring || m.cols() != self.ambient {
            return Err(Error::AmbientMismatch(format!(
                "{}x{} matrix over {} applied to submodule of {}^{}",
                m.rows(),
                m.cols(),
                m.ring(),
                self.ring,
                self.ambient
            )));
        }
        match &self.presentation {
            Presentation::ModComponents(comps) => {
                let mut out = Vec::with_capacity(comps.len());
                for (comp, &p) in comps.iter().zip(self.ring.primes()) {
                    out.push(comp.image_under(&m.reduce_mod(p)?)?);
                }
                Ok(Submodule {
                    ring: self.ring.clone(),
                    ambient: m.rows(),
                    presentation: Presentation::ModComponents(out),
                })
            }
            _ => {
                let gens = self
                    .generators()
                    .iter()
                    .map(|g| m.apply(g))
                    .collect::<Result<Vec<_>>>()?;
                Submodule::span(&self.ring, m.rows(), &gens)
            }
        }
    }

    /// Reduction into the factor ring at `prime` (a prime of the modulus).
    pub fn reduce_mod(&self, prime: u64) -> Result<Submodule> {
        let local = self.ring.local_ring(prime)?;
        let gens: Vec<Vector> = self
            .generators()
            .iter()
            .map(|g| g.iter().map(|e| self.ring.reduce_to(e, prime)).collect())
            .collect();
        Submodule::span(&local, self.ambient, &gens)
    }
}

pub fn submodule_equal(s: &Submodule, t: &Submodule) -> Result<bool> {
    if s.ring != t.ring || s.ambient != t.ambient {
        return Err(Error::AmbientMismatch(format!(
            "submodule of {}^{} compared with submodule of {}^{}",
            s.ring, s.ambient, t.ring, t.ambient
        )));
    }
    Ok(s == t)
}

pub fn submodule_member(v: &[Element], s: &Submodule) -> Result<Option<Vec<Element>>> {
    s.member(v)
}

pub(crate) fn to_polys(v: &[Element]) -> Vec<Poly> {
    v.iter()
        .map(|e| e.as_poly().cloned().expect("polynomial entry"))
        .collect()
}

pub(crate) fn not_square_free(ring: &RingSpec) -> Error {
    let m = ring.modulus();
    let prime = ring
        .primes()
        .iter()
        .copied()
        .find(|&p| m.is_multiple_of(p * p))
        .unwrap_or(m);
    Error::NotSquareFree { m, prime }
}

/// `m^ambient`, or an error when it exceeds the enumeration limit.
pub(crate) fn enumeration_size(m: u64, ambient: usize) -> Result<u128> {
    let size = (m as u128).checked_pow(ambient as u32).unwrap_or(u128::MAX);
    if size > ENUMERATION_LIMIT {
        return Err(Error::OracleTooLarge {
            size,
            limit: ENUMERATION_LIMIT,
        });
    }
    Ok(size)
}

pub(crate) fn encode(v: &[u64], m: u64) -> usize {
    v.iter().rev().fold(0usize, |acc, &x| acc * m as usize + x as usize)
}

pub(crate) fn decode(mut idx: usize, m: u64, ambient: usize) -> Vec<u64> {
    (0..ambient)
        .map(|_| {
            let x = (idx % m as usize) as u64;
            idx /= m as usize;
            x
        })
        .collect()
}

fn add_vec(a: &[u64], b: &[u64], m: u64) -> Vec<u64> {
    a.iter().zip(b).map(|(&x, &y)| crate::arith::add_mod(x, y, m)).collect()
}

/// All elements of the `Z/m`-span of `generators` in `(Z/m)^ambient`, sorted.
pub(crate) fn enumerate_span(m: u64, ambient: usize, generators: &[Vec<u64>]) -> Result<Vec<Vec<u64>>> {
    let size = enumeration_size(m, ambient)? as usize;
    let mut seen = vec![false; size];
    let zero = vec![0u64; ambient];
    seen[encode(&zero, m)] = true;
    let mut members = vec![zero];
    for g in generators {
        if seen[encode(g, m)] {
            continue;
        }
        // closing under +g also closes under all multiples of g
        let mut i = 0;
        while i < members.len() {
            let next = add_vec(&members[i], g, m);
            let idx = encode(&next, m);
            if !seen[idx] {
                seen[idx] = true;
                members.push(next);
            }
            i += 1;
        }
    }
    members.sort();
    Ok(members)
}

/// Greedy generating set of an enumerated submodule, in sorted element order.
fn minimal_generators(m: u64, ambient: usize, elements: &[Vec<u64>]) -> Vec<Vec<u64>> {
    let mut gens: Vec<Vec<u64>> = Vec::new();
    let mut span: HashSet<Vec<u64>> = HashSet::from([vec![0; ambient]]);
    for v in elements {
        if span.contains(v) {
            continue;
        }
        gens.push(v.clone());
        let mut frontier: Vec<Vec<u64>> = span.iter().cloned().collect();
        let mut i = 0;
        while i < frontier.len() {
            let next = add_vec(&frontier[i], v, m);
            if span.insert(next.clone()) {
                frontier.push(next);
            }
            i += 1;
        }
    }
    gens
}

fn coordinates_by_search(m: u64, gens: &[Vec<u64>], target: &[u64]) -> Option<Vec<u64>> {
    let total = (m as u128).checked_pow(gens.len() as u32)?;
    for idx in 0..total as usize {
        let coeffs = decode(idx, m, gens.len());
        let mut acc = vec![0u64; target.len()];
        for (c, g) in coeffs.iter().zip(gens) {
            for (a, &x) in acc.iter_mut().zip(g) {
                *a = crate::arith::add_mod(*a, crate::arith::mul_mod(*c, x, m), m);
            }
        }
        if acc == target {
            return Some(coeffs);
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf(p: u64) -> RingSpec {
        RingSpec::prime_field(p).unwrap()
    }

    fn ints(r: &RingSpec, v: &[i64]) -> Vector {
        v.iter().map(|&x| r.from_int(x)).collect()
    }

    #[test]
    fn equality_examples() {
        let r = gf(3);
        let s = Submodule::span(&r, 2, &[ints(&r, &[1, 1])]).unwrap();
        let t = Submodule::span(&r, 2, &[ints(&r, &[2, 2])]).unwrap();
        assert!(submodule_equal(&s, &s).unwrap());
        assert!(submodule_equal(&s, &t).unwrap());
        // both spans enumerate to {(0,0), (1,1), (2,2)}
        for c in 0..3 {
            assert!(s.contains(&ints(&r, &[c, c])).unwrap());
            assert!(t.contains(&ints(&r, &[c, c])).unwrap());
        }
        let zero = Submodule::zero(&r, 2).unwrap();
        let full = Submodule::full(&r, 2).unwrap();
        assert!(!submodule_equal(&zero, &full).unwrap());
        let other = Submodule::zero(&r, 3).unwrap();
        assert!(matches!(submodule_equal(&zero, &other), Err(Error::AmbientMismatch(_))));
    }

    #[test]
    fn membership_examples() {
        let r = gf(5);
        let s = Submodule::span(&r, 2, &[ints(&r, &[0, 1])]).unwrap();
        assert!(s.contains(&ints(&r, &[0, 0])).unwrap());
        assert!(!s.contains(&ints(&r, &[1, 0])).unwrap());

        // multiples of (1,2) over GF(5) are (c, 2c); (2,1) would need c = 2 and 2c = 1.
        let line = Submodule::span(&r, 2, &[ints(&r, &[1, 2])]).unwrap();
        let multiples: Vec<(i64, i64)> = (0..5).map(|c| (c, (2 * c) % 5)).collect();
        assert!(!multiples.contains(&(2, 1)));
        assert_eq!(submodule_member(&ints(&r, &[2, 1]), &line).unwrap(), None);
        assert_eq!(
            submodule_member(&ints(&r, &[2, 4]), &line).unwrap(),
            Some(ints(&r, &[2]))
        );
        assert!(matches!(
            line.member(&ints(&r, &[1])),
            Err(Error::AmbientMismatch(_))
        ));
    }

    #[test]
    fn decomposed_presentation_over_z30() {
        let r = RingSpec::mod_ring(30).unwrap();
        let s = Submodule::span(&r, 1, &[ints(&r, &[3])]).unwrap();
        assert_eq!(s.component_ranks(), vec![1, 0, 1]);
        assert_eq!(s.count(), Some(10));
        for u in 0..30 {
            assert_eq!(s.contains(&ints(&r, &[u])).unwrap(), u % 3 == 0, "u = {u}");
        }
        let gens = s.generators();
        let again = Submodule::span(&r, 1, &gens).unwrap();
        assert_eq!(again, s);
    }

    #[test]
    fn enumerated_presentation_over_z4() {
        let r = RingSpec::mod_ring(4).unwrap();
        let s = Submodule::span(&r, 1, &[ints(&r, &[2])]).unwrap();
        assert_eq!(s.count(), Some(2));
        assert!(s.contains(&ints(&r, &[2])).unwrap());
        assert!(!s.contains(&ints(&r, &[1])).unwrap());
        let coords = s.member(&ints(&r, &[2])).unwrap().unwrap();
        assert_eq!(coords.len(), s.generators().len());
        assert!(Submodule::full(&r, 2).unwrap().is_full());
    }

    #[test]
    fn image_under_map() {
        let r = gf(7);
        let s = Submodule::span(&r, 2, &[ints(&r, &[1, 0])]).unwrap();
        let swap = Matrix::from_ints(&r, 2, 2, &[0, 1, 1, 0]).unwrap();
        let t = s.image_under(&swap).unwrap();
        assert_eq!(t, Submodule::span(&r, 2, &[ints(&r, &[0, 1])]).unwrap());
    }
}
