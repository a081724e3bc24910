//! Dense univariate polynomials with coefficients in `Z/n`.
//!
//! Coefficients are stored constant term first with trailing zeros stripped, so
//! the zero polynomial is the empty list and structural equality is ring equality.
//! The modulus is not stored; every operation takes it explicitly and callers keep
//! it consistent (the owning `RingSpec` does).

use crate::arith::{add_mod, inv_mod, mul_mod, neg_mod, sub_mod};

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Poly(Vec<u64>);

impl Poly {
    pub fn zero() -> Self {
        Poly(Vec::new())
    }

    pub fn constant(c: u64, n: u64) -> Self {
        Self::from_coeffs(vec![c % n], n)
    }

    /// The monomial `c * z^k`.
    pub fn monomial(c: u64, k: usize, n: u64) -> Self {
        let mut v = vec![0; k + 1];
        v[k] = c % n;
        Self::from_coeffs(v, n)
    }

    pub fn from_coeffs(mut coeffs: Vec<u64>, n: u64) -> Self {
        for c in coeffs.iter_mut() {
            *c %= n;
        }
        let mut p = Poly(coeffs);
        p.trim();
        p
    }

    fn trim(&mut self) {
        while self.0.last() == Some(&0) {
            self.0.pop();
        }
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.0
    }

    pub fn coeff(&self, k: usize) -> u64 {
        self.0.get(k).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    pub fn leading(&self) -> u64 {
        self.0.last().copied().unwrap_or(0)
    }

    pub fn is_canonical(&self, n: u64) -> bool {
        self.0.last() != Some(&0) && self.0.iter().all(|&c| c < n)
    }

    pub fn add(&self, other: &Poly, n: u64) -> Poly {
        let len = self.0.len().max(other.0.len());
        let v = (0..len)
            .map(|k| add_mod(self.coeff(k), other.coeff(k), n))
            .collect();
        Poly::from_coeffs(v, n)
    }

    pub fn sub(&self, other: &Poly, n: u64) -> Poly {
        let len = self.0.len().max(other.0.len());
        let v = (0..len)
            .map(|k| sub_mod(self.coeff(k), other.coeff(k), n))
            .collect();
        Poly::from_coeffs(v, n)
    }

    pub fn neg(&self, n: u64) -> Poly {
        Poly(self.0.iter().map(|&c| neg_mod(c, n)).collect())
    }

    pub fn scale(&self, c: u64, n: u64) -> Poly {
        Poly::from_coeffs(self.0.iter().map(|&a| mul_mod(a, c, n)).collect(), n)
    }

    pub fn mul(&self, other: &Poly, n: u64) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let mut v = vec![0u64; self.0.len() + other.0.len() - 1];
        for (i, &a) in self.0.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.0.iter().enumerate() {
                v[i + j] = add_mod(v[i + j], mul_mod(a, b, n), n);
            }
        }
        Poly::from_coeffs(v, n)
    }

    /// Euclidean division by a divisor whose leading coefficient is a unit mod `n`.
    ///
    /// Panics if `divisor` is zero or its leading coefficient is not invertible.
    pub fn div_rem(&self, divisor: &Poly, n: u64) -> (Poly, Poly) {
        let dd = divisor.degree().expect("division by the zero polynomial");
        let lead_inv = inv_mod(divisor.leading(), n).expect("leading coefficient must be a unit");
        let mut rem = self.0.clone();
        let Some(sd) = self.degree() else {
            return (Poly::zero(), Poly::zero());
        };
        if sd < dd {
            return (Poly::zero(), self.clone());
        }
        let mut quot = vec![0u64; sd - dd + 1];
        for k in (0..=sd - dd).rev() {
            let c = mul_mod(rem[k + dd], lead_inv, n);
            if c == 0 {
                continue;
            }
            quot[k] = c;
            for (j, &b) in divisor.0.iter().enumerate() {
                rem[k + j] = sub_mod(rem[k + j], mul_mod(c, b, n), n);
            }
        }
        (Poly::from_coeffs(quot, n), Poly::from_coeffs(rem, n))
    }

    /// Scales to leading coefficient one; returns the polynomial unchanged if zero.
    pub fn monic(&self, n: u64) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        let inv = inv_mod(self.leading(), n).expect("leading coefficient must be a unit");
        self.scale(inv, n)
    }

    /// Coefficientwise reduction into `Z/n'`.
    pub fn reduce(&self, n: u64) -> Poly {
        Poly::from_coeffs(self.0.clone(), n)
    }

    pub fn eval(&self, x: u64, n: u64) -> u64 {
        self.0
            .iter()
            .rev()
            .fold(0, |acc, &c| add_mod(mul_mod(acc, x, n), c, n))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_trailing_zeros() {
        let p = Poly::from_coeffs(vec![1, 0, 3, 0, 0], 5);
        assert_eq!(p.coeffs(), &[1, 0, 3]);
        assert_eq!(p.degree(), Some(2));
        assert_eq!(Poly::from_coeffs(vec![5, 10], 5), Poly::zero());
        assert_eq!(Poly::zero().degree(), None);
    }

    #[test]
    fn square_of_one_plus_z_in_char_two() {
        let p = Poly::from_coeffs(vec![1, 1], 2);
        assert_eq!(p.mul(&p, 2).coeffs(), &[1, 0, 1]);
    }

    #[test]
    fn division_identity() {
        let n = 7;
        let a = Poly::from_coeffs(vec![3, 1, 4, 1, 5], n);
        let b = Poly::from_coeffs(vec![2, 0, 6], n);
        let (q, r) = a.div_rem(&b, n);
        assert!(r.degree() < b.degree());
        assert_eq!(q.mul(&b, n).add(&r, n), a);
    }

    #[test]
    fn monic_scaling() {
        let p = Poly::from_coeffs(vec![0, 2], 5);
        assert_eq!(p.monic(5).coeffs(), &[0, 1]);
    }
}
