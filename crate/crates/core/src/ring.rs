//! Coefficient rings and their elements.
//!
//! Four families are supported: prime fields `GF(p)`, modular rings `Z/m`,
//! polynomial rings `GF(p)[z]`, and polynomial rings `(Z/m)[z]` over a modular
//! ring. The last one exists so that square-free `m` can be split into
//! `GF(p_i)[z]` factors; it has no Euclidean structure of its own.
//!
//! Elements carry no ring tag. A [`RingSpec`] interprets them, and arithmetic
//! goes through the `RingSpec`. The `try_*` methods validate membership first; the
//! plain methods assume canonical inputs and panic on a kind mismatch.

use std::fmt;

use crate::arith::{self, add_mod, inv_mod, mul_mod, neg_mod, sub_mod};
use crate::error::{Error, Result};
use crate::poly::Poly;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RingKind {
    PrimeField,
    ModRing,
    PolyRing,
    PolyModRing,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RingSpec {
    kind: RingKind,
    modulus: u64,
    primes: Vec<u64>,
    square_free: bool,
}

/// Largest accepted modulus.
pub const MAX_MODULUS: u64 = 1 << 62;

/// Builds a validated ring description.
///
/// Fields and polynomial rings over a field reject composite parameters. Modular
/// rings accept any `m >= 2` and record whether `m` is square-free.
pub fn ring_make(kind: RingKind, parameter: u64) -> Result<RingSpec> {
    if !(2..=MAX_MODULUS).contains(&parameter) {
        return Err(Error::InvalidParameter(parameter));
    }
    let factors = arith::factorize(parameter);
    let primes: Vec<u64> = factors.iter().map(|&(p, _)| p).collect();
    let square_free = factors.iter().all(|&(_, e)| e == 1);
    match kind {
        RingKind::PrimeField | RingKind::PolyRing if !arith::is_prime(parameter) => {
            Err(Error::CompositeModulusForField(parameter))
        }
        _ => Ok(RingSpec {
            kind,
            modulus: parameter,
            primes,
            square_free,
        }),
    }
}

impl RingSpec {
    pub fn prime_field(p: u64) -> Result<Self> {
        ring_make(RingKind::PrimeField, p)
    }

    pub fn mod_ring(m: u64) -> Result<Self> {
        ring_make(RingKind::ModRing, m)
    }

    pub fn poly_ring(p: u64) -> Result<Self> {
        ring_make(RingKind::PolyRing, p)
    }

    pub fn poly_mod_ring(m: u64) -> Result<Self> {
        ring_make(RingKind::PolyModRing, m)
    }

    pub fn kind(&self) -> RingKind {
        self.kind
    }

    /// `p` for fields and `GF(p)[z]`, `m` for modular rings.
    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    /// Distinct prime factors of the modulus, increasing.
    pub fn primes(&self) -> &[u64] {
        &self.primes
    }

    /// True when the modulus is square-free, i.e. the coefficient ring is a
    /// product of prime fields.
    pub fn is_decomposable(&self) -> bool {
        self.square_free
    }

    pub fn is_field(&self) -> bool {
        self.kind == RingKind::PrimeField
    }

    pub fn is_poly(&self) -> bool {
        matches!(self.kind, RingKind::PolyRing | RingKind::PolyModRing)
    }

    pub fn is_finite(&self) -> bool {
        !self.is_poly()
    }

    /// Number of elements, for finite rings.
    pub fn cardinality(&self) -> Option<u64> {
        self.is_finite().then_some(self.modulus)
    }

    /// The coefficient ring of a polynomial ring, or the ring itself.
    pub fn scalar_ring(&self) -> RingSpec {
        let kind = match self.kind {
            RingKind::PolyRing => RingKind::PrimeField,
            RingKind::PolyModRing => RingKind::ModRing,
            k => k,
        };
        RingSpec {
            kind,
            ..self.clone()
        }
    }

    /// The factor ring at one prime of the modulus: `GF(p)` for `Z/m`,
    /// `GF(p)[z]` for `(Z/m)[z]`.
    pub fn local_ring(&self, prime: u64) -> Result<RingSpec> {
        if !self.primes.contains(&prime) {
            return Err(Error::DimensionMismatch(format!(
                "{prime} is not a prime factor of {}",
                self.modulus
            )));
        }
        let kind = if self.is_poly() {
            RingKind::PolyRing
        } else {
            RingKind::PrimeField
        };
        ring_make(kind, prime)
    }

    pub fn zero(&self) -> Element {
        if self.is_poly() {
            Element::Poly(Poly::zero())
        } else {
            Element::Int(0)
        }
    }

    pub fn one(&self) -> Element {
        self.from_int(1)
    }

    pub fn from_int(&self, a: i64) -> Element {
        let r = arith::reduce_signed(a as i128, self.modulus);
        if self.is_poly() {
            Element::Poly(Poly::constant(r, self.modulus))
        } else {
            Element::Int(r)
        }
    }

    /// Polynomial from constant-first signed coefficients.
    ///
    /// Panics if the ring is not a polynomial ring.
    pub fn poly(&self, coeffs: &[i64]) -> Element {
        assert!(self.is_poly(), "{self} is not a polynomial ring");
        let v = coeffs
            .iter()
            .map(|&c| arith::reduce_signed(c as i128, self.modulus))
            .collect();
        Element::Poly(Poly::from_coeffs(v, self.modulus))
    }

    /// The indeterminate `z`.
    pub fn z(&self) -> Element {
        self.poly(&[0, 1])
    }

    pub fn contains(&self, a: &Element) -> bool {
        match (a, self.is_poly()) {
            (Element::Int(v), false) => *v < self.modulus,
            (Element::Poly(p), true) => p.is_canonical(self.modulus),
            _ => false,
        }
    }

    pub fn check(&self, a: &Element) -> Result<()> {
        if self.contains(a) {
            Ok(())
        } else {
            Err(Error::RingMismatch {
                expected: self.to_string(),
                found: a.to_string(),
            })
        }
    }

    /// Canonical form of an element of the right shape with possibly unreduced data.
    pub fn normalize(&self, a: &Element) -> Result<Element> {
        match (a, self.is_poly()) {
            (Element::Int(v), false) => Ok(Element::Int(v % self.modulus)),
            (Element::Poly(p), true) => Ok(Element::Poly(p.reduce(self.modulus))),
            (Element::Int(v), true) => Ok(Element::Poly(Poly::constant(*v, self.modulus))),
            (Element::Poly(_), false) => Err(Error::RingMismatch {
                expected: self.to_string(),
                found: a.to_string(),
            }),
        }
    }

    pub fn is_zero(&self, a: &Element) -> bool {
        match a {
            Element::Int(v) => *v == 0,
            Element::Poly(p) => p.is_zero(),
        }
    }

    pub fn add(&self, a: &Element, b: &Element) -> Element {
        let n = self.modulus;
        match (a, b) {
            (Element::Int(x), Element::Int(y)) => Element::Int(add_mod(*x, *y, n)),
            (Element::Poly(x), Element::Poly(y)) => Element::Poly(x.add(y, n)),
            _ => panic!("mixed element kinds in {self}"),
        }
    }

    pub fn sub(&self, a: &Element, b: &Element) -> Element {
        let n = self.modulus;
        match (a, b) {
            (Element::Int(x), Element::Int(y)) => Element::Int(sub_mod(*x, *y, n)),
            (Element::Poly(x), Element::Poly(y)) => Element::Poly(x.sub(y, n)),
            _ => panic!("mixed element kinds in {self}"),
        }
    }

    pub fn neg(&self, a: &Element) -> Element {
        let n = self.modulus;
        match a {
            Element::Int(x) => Element::Int(neg_mod(*x, n)),
            Element::Poly(x) => Element::Poly(x.neg(n)),
        }
    }

    pub fn mul(&self, a: &Element, b: &Element) -> Element {
        let n = self.modulus;
        match (a, b) {
            (Element::Int(x), Element::Int(y)) => Element::Int(mul_mod(*x, *y, n)),
            (Element::Poly(x), Element::Poly(y)) => Element::Poly(x.mul(y, n)),
            _ => panic!("mixed element kinds in {self}"),
        }
    }

    pub fn try_add(&self, a: &Element, b: &Element) -> Result<Element> {
        self.check(a)?;
        self.check(b)?;
        Ok(self.add(a, b))
    }

    pub fn try_mul(&self, a: &Element, b: &Element) -> Result<Element> {
        self.check(a)?;
        self.check(b)?;
        Ok(self.mul(a, b))
    }

    pub fn try_neg(&self, a: &Element) -> Result<Element> {
        self.check(a)?;
        Ok(self.neg(a))
    }

    /// Multiplicative inverse. Over polynomial rings only constants that are
    /// units of the coefficient ring are invertible.
    pub fn inverse(&self, a: &Element) -> Result<Element> {
        self.check(a)?;
        let n = self.modulus;
        match a {
            Element::Int(x) => inv_mod(*x, n)
                .map(Element::Int)
                .map_err(|g| Error::NotInvertible { gcd: Some(g) }),
            Element::Poly(p) => match p.degree() {
                Some(0) => inv_mod(p.leading(), n)
                    .map(|c| Element::Poly(Poly::constant(c, n)))
                    .map_err(|g| Error::NotInvertible { gcd: Some(g) }),
                None => Err(Error::NotInvertible { gcd: Some(n) }),
                Some(_) => Err(Error::NotInvertible { gcd: None }),
            },
        }
    }

    pub fn is_unit(&self, a: &Element) -> bool {
        self.inverse(a).is_ok()
    }

    /// Reduction of an element into the factor ring at `prime`.
    pub fn reduce_to(&self, a: &Element, prime: u64) -> Element {
        match a {
            Element::Int(x) => Element::Int(x % prime),
            Element::Poly(p) => Element::Poly(p.reduce(prime)),
        }
    }

    /// Lift from a factor ring at `prime` by taking representatives in `[0, prime)`.
    pub fn lift_from(&self, a: &Element) -> Element {
        match a {
            Element::Int(x) => {
                if self.is_poly() {
                    Element::Poly(Poly::constant(*x, self.modulus))
                } else {
                    Element::Int(*x % self.modulus)
                }
            }
            Element::Poly(p) => Element::Poly(p.reduce(self.modulus)),
        }
    }

    /// Parses an integer literal (`12`, `-3`) or, over polynomial rings, a
    /// constant-first coefficient list (`[1,0,3]` = 1 + 3z^2). Values are reduced
    /// into the ring.
    pub fn parse_element(&self, text: &str) -> Result<Element> {
        let (bracketed, values) = parse_literal(text)?;
        let n = self.modulus;
        if bracketed && !self.is_poly() {
            return Err(Error::Parse(format!(
                "polynomial literal `{}` in scalar ring {self}",
                text.trim()
            )));
        }
        let reduced: Vec<u64> = values
            .iter()
            .map(|&v| arith::reduce_signed(v, n))
            .collect();
        if self.is_poly() {
            Ok(Element::Poly(Poly::from_coeffs(reduced, n)))
        } else {
            Ok(Element::Int(reduced[0]))
        }
    }

    /// Degree of a polynomial element; `None` for zero and for scalar rings' zero.
    pub fn degree(&self, a: &Element) -> Option<usize> {
        match a {
            Element::Int(0) => None,
            Element::Int(_) => Some(0),
            Element::Poly(p) => p.degree(),
        }
    }
}

impl fmt::Display for RingSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            RingKind::PrimeField => write!(f, "GF({})", self.modulus),
            RingKind::ModRing => write!(f, "Z/{}", self.modulus),
            RingKind::PolyRing => write!(f, "GF({})[z]", self.modulus),
            RingKind::PolyModRing => write!(f, "(Z/{})[z]", self.modulus),
        }
    }
}

/// A ring element in canonical representation: an integer in `[0, n)` or a
/// polynomial with coefficients in `[0, n)`, constant term first.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Element {
    Int(u64),
    Poly(Poly),
}

impl Element {
    pub fn as_int(&self) -> Option<u64> {
        match self {
            Element::Int(v) => Some(*v),
            Element::Poly(_) => None,
        }
    }

    pub fn as_poly(&self) -> Option<&Poly> {
        match self {
            Element::Poly(p) => Some(p),
            Element::Int(_) => None,
        }
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Element::Int(v) => write!(f, "{v}"),
            Element::Poly(p) if p.is_zero() => write!(f, "[0]"),
            Element::Poly(p) => {
                write!(f, "[")?;
                for (k, c) in p.coeffs().iter().enumerate() {
                    if k > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{c}")?;
                }
                write!(f, "]")
            }
        }
    }
}

fn parse_int(tok: &str) -> Result<i128> {
    tok.parse::<i128>()
        .map_err(|_| Error::Parse(format!("invalid integer `{tok}`")))
}

/// Splits the literal `[1,0,-3]` into signed coefficients, or `7` into a
/// single integer. Returns `(is_bracketed, values)`.
pub(crate) fn parse_literal(text: &str) -> Result<(bool, Vec<i128>)> {
    let s = text.trim();
    if let Some(inner) = s.strip_prefix('[') {
        let inner = inner
            .strip_suffix(']')
            .ok_or_else(|| Error::Parse(format!("unterminated polynomial `{s}`")))?;
        let mut coeffs = Vec::new();
        for tok in inner.split(',') {
            let tok = tok.trim();
            if tok.is_empty() {
                if inner.trim().is_empty() {
                    continue;
                }
                return Err(Error::Parse(format!("empty coefficient in `{s}`")));
            }
            coeffs.push(parse_int(tok)?);
        }
        Ok((true, coeffs))
    } else if s.is_empty() {
        Err(Error::Parse("empty element".into()))
    } else {
        Ok((false, vec![parse_int(s)?]))
    }
}
