//! Coefficient fields: Q, F_p, and number fields Q[z]/(m).
//!
//! A field is a context object; elements are plain values and every operation
//! goes through the context, so number-field elements need not carry their
//! modulus around.

use std::fmt::Debug;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

pub trait Field: Clone + Debug {
    type Elem: Clone + PartialEq + Debug;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn from_i64(&self, n: i64) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    /// Multiplicative inverse. Panics on zero.
    fn inv(&self, a: &Self::Elem) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;

    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.mul(a, &self.inv(b))
    }

    fn pow(&self, a: &Self::Elem, mut e: u64) -> Self::Elem {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }
}

/// The rational numbers.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Rationals;

impl Field for Rationals {
    type Elem = BigRational;

    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn from_i64(&self, n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }
    fn inv(&self, a: &BigRational) -> BigRational {
        assert!(!a.is_zero(), "inverse of zero");
        a.recip()
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
}

/// The prime field F_p for an odd prime `p < 2^31`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Self {
        assert!(p > 2 && p < (1 << 31), "unsupported characteristic {p}");
        PrimeField { p }
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    pub fn reduce(&self, n: &BigInt) -> u64 {
        let r = n % BigInt::from(self.p);
        let r = if r < BigInt::zero() { r + BigInt::from(self.p) } else { r };
        u64::try_from(r).expect("residue fits")
    }
}

impl Field for PrimeField {
    type Elem = u64;

    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1
    }
    fn from_i64(&self, n: i64) -> u64 {
        n.rem_euclid(self.p as i64) as u64
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        (a + b) % self.p
    }
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        (a + self.p - b) % self.p
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        a * b % self.p
    }
    fn neg(&self, a: &u64) -> u64 {
        (self.p - a) % self.p
    }
    fn inv(&self, a: &u64) -> u64 {
        assert!(*a != 0, "inverse of zero");
        self.pow(a, self.p - 2)
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
}

/// `Q[z]/(m)` for a monic irreducible `m ∈ Q[z]`. Elements are coefficient
/// vectors of length below `deg m`, trimmed of trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NumberField {
    modulus: Vec<BigRational>,
}

impl NumberField {
    /// `modulus` must be monic irreducible over Q; only monicity is checked.
    pub fn new(modulus: Vec<BigRational>) -> Self {
        assert!(modulus.len() >= 2, "modulus must have positive degree");
        assert!(modulus.last().is_some_and(|c| c.is_one()), "modulus must be monic");
        NumberField { modulus }
    }

    /// Q itself, presented as `Q[z]/(z)`.
    pub fn rationals() -> Self {
        NumberField::new(vec![BigRational::zero(), BigRational::one()])
    }

    pub fn modulus(&self) -> &[BigRational] {
        &self.modulus
    }

    pub fn degree(&self) -> usize {
        self.modulus.len() - 1
    }

    /// The generator `z mod m`.
    pub fn generator(&self) -> Vec<BigRational> {
        self.reduce(vec![BigRational::zero(), BigRational::one()])
    }

    pub fn from_rational(&self, q: BigRational) -> Vec<BigRational> {
        trim_q(vec![q])
    }

    /// Reduces a polynomial in `z` modulo the defining polynomial.
    pub fn reduce(&self, mut a: Vec<BigRational>) -> Vec<BigRational> {
        let n = self.degree();
        while a.len() > n {
            let c = a.pop().expect("nonempty");
            if c.is_zero() {
                continue;
            }
            let shift = a.len() - n;
            for (i, m) in self.modulus[..n].iter().enumerate() {
                a[shift + i] -= &c * m;
            }
        }
        trim_q(a)
    }
}

fn trim_q(mut a: Vec<BigRational>) -> Vec<BigRational> {
    while a.last().is_some_and(Zero::is_zero) {
        a.pop();
    }
    a
}

impl Field for NumberField {
    type Elem = Vec<BigRational>;

    fn zero(&self) -> Vec<BigRational> {
        Vec::new()
    }
    fn one(&self) -> Vec<BigRational> {
        vec![BigRational::one()]
    }
    fn from_i64(&self, n: i64) -> Vec<BigRational> {
        trim_q(vec![BigRational::from_integer(n.into())])
    }
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        let mut out = vec![BigRational::zero(); a.len().max(b.len())];
        for (i, x) in a.iter().enumerate() {
            out[i] += x;
        }
        for (i, x) in b.iter().enumerate() {
            out[i] += x;
        }
        trim_q(out)
    }
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        let mut out = vec![BigRational::zero(); a.len().max(b.len())];
        for (i, x) in a.iter().enumerate() {
            out[i] += x;
        }
        for (i, x) in b.iter().enumerate() {
            out[i] -= x;
        }
        trim_q(out)
    }
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                out[i + j] += x * y;
            }
        }
        self.reduce(out)
    }
    fn neg(&self, a: &Self::Elem) -> Self::Elem {
        a.iter().map(|x| -x).collect()
    }
    fn inv(&self, a: &Self::Elem) -> Self::Elem {
        assert!(!a.is_empty(), "inverse of zero");
        let q = super::upoly::PolyRing::new(Rationals);
        let (g, s, _) = q.ext_gcd(a, &self.modulus);
        assert!(g.len() == 1, "element not invertible: modulus is reducible");
        self.reduce(q.scale(&s, &g[0].recip()))
    }
    fn is_zero(&self, a: &Self::Elem) -> bool {
        a.is_empty()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    #[test]
    fn prime_field_inverse() {
        let f = PrimeField::new(13);
        for a in 1..13 {
            assert_eq!(f.mul(&a, &f.inv(&a)), 1);
        }
        assert_eq!(f.from_i64(-1), 12);
    }

    #[test]
    fn sqrt_two_field() {
        // z^2 - 2
        let k = NumberField::new(vec![q(-2), q(0), q(1)]);
        let a = k.generator();
        assert_eq!(k.mul(&a, &a), vec![q(2)]);
        let b = k.add(&a, &k.one()); // 1 + sqrt2
        let bi = k.inv(&b); // sqrt2 - 1
        assert_eq!(bi, vec![q(-1), q(1)]);
        assert!(k.is_one(&k.mul(&b, &bi)));
    }
}
