//! Ternary forms in the plane coordinates `(s, t, r)`.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::SectionError;
use crate::surface::parse_monomials;

pub type Exp3 = [u32; 3];

/// A nonzero homogeneous integer form in `s, t, r` with content 1 and positive
/// leading coefficient (first monomial in descending lexicographic order).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TernaryForm {
    degree: u32,
    coeffs: BTreeMap<Exp3, BigInt>,
}

/// Multiplies out `∏ (row_i · (s, t, r))^{e_i}` times `c` and accumulates into `out`.
fn expand_monomial(out: &mut BTreeMap<Exp3, BigInt>, exps: &[u32], c: &BigInt, rows: &[[BigInt; 3]]) {
    let mut acc: BTreeMap<Exp3, BigInt> = BTreeMap::from([([0, 0, 0], c.clone())]);
    for (row, &e) in rows.iter().zip(exps) {
        for _ in 0..e {
            let mut next: BTreeMap<Exp3, BigInt> = BTreeMap::new();
            for (m, a) in &acc {
                for (k, l) in row.iter().enumerate() {
                    if l.is_zero() {
                        continue;
                    }
                    let mut m2 = *m;
                    m2[k] += 1;
                    *next.entry(m2).or_default() += a * l;
                }
            }
            acc = next;
        }
    }
    for (m, a) in acc {
        *out.entry(m).or_default() += a;
    }
}

/// Substitutes `x_i = rows[i] · (s, t, r)` into a form in `rows.len()` variables.
pub(crate) fn substitute<'a, I>(terms: I, rows: &[[BigInt; 3]]) -> BTreeMap<Exp3, BigInt>
where
    I: IntoIterator<Item = (&'a [u32], &'a BigInt)>,
{
    let mut out = BTreeMap::new();
    for (e, c) in terms {
        expand_monomial(&mut out, e, c, rows);
    }
    out.retain(|_, c| !c.is_zero());
    out
}

impl TernaryForm {
    /// Normalizes content and sign. `None` for the zero form or a
    /// non-homogeneous one.
    pub fn from_map(mut coeffs: BTreeMap<Exp3, BigInt>) -> Option<Self> {
        coeffs.retain(|_, c| !c.is_zero());
        let degree = coeffs.keys().next()?.iter().sum::<u32>();
        if coeffs.keys().any(|e| e.iter().sum::<u32>() != degree) {
            return None;
        }
        let mut g = coeffs.values().fold(BigInt::zero(), |g, c| g.gcd(c));
        if coeffs.values().next_back().is_some_and(|c| c.is_negative()) {
            g = -g;
        }
        for c in coeffs.values_mut() {
            *c /= &g;
        }
        Some(TernaryForm { degree, coeffs })
    }

    pub fn from_terms(terms: &[(Exp3, i64)]) -> Option<Self> {
        let mut m: BTreeMap<Exp3, BigInt> = BTreeMap::new();
        for (e, c) in terms {
            *m.entry(*e).or_default() += BigInt::from(*c);
        }
        Self::from_map(m)
    }

    /// Clears denominators of a rational form.
    pub fn from_rational(coeffs: &BTreeMap<Exp3, BigRational>) -> Option<Self> {
        let l = coeffs.values().fold(BigInt::one(), |l, c| l.lcm(c.denom()));
        let scale = BigRational::from_integer(l);
        Self::from_map(coeffs.iter().map(|(e, c)| (*e, (c * &scale).to_integer())).collect())
    }

    /// Parses an expression in `s`, `t`, `r`, e.g. `t^2*r - s^3 - s^2*r`.
    pub fn parse(text: &str) -> Result<Self, SectionError> {
        let terms = parse_monomials(text, 3, |b| match b.first() {
            Some(b's') => Some((0, 1)),
            Some(b't') => Some((1, 1)),
            Some(b'r') => Some((2, 1)),
            _ => None,
        })
        .map_err(|e| SectionError::Parse(e.to_string()))?;
        let mut m: BTreeMap<Exp3, BigInt> = BTreeMap::new();
        for (e, c) in terms {
            *m.entry([e[0], e[1], e[2]]).or_default() += c;
        }
        Self::from_map(m).ok_or_else(|| SectionError::Parse("zero or non-homogeneous form".into()))
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn coefficients(&self) -> &BTreeMap<Exp3, BigInt> {
        &self.coeffs
    }

    pub fn coefficient(&self, e: &Exp3) -> BigInt {
        self.coeffs.get(e).cloned().unwrap_or_default()
    }

    pub fn evaluate(&self, x: &[BigInt; 3]) -> BigInt {
        self.coeffs
            .iter()
            .map(|(e, c)| (0..3).fold(c.clone(), |acc, i| acc * x[i].pow(e[i])))
            .sum()
    }

    /// `G(M·v)`: old variable `i` becomes `m[i] · (s, t, r)`, then normalized.
    pub fn transform(&self, m: &[[BigInt; 3]; 3]) -> Option<TernaryForm> {
        Self::from_map(substitute(self.coeffs.iter().map(|(e, c)| (&e[..], c)), m))
    }

    /// Product without normalization side effects beyond content and sign.
    pub fn mul(&self, other: &TernaryForm) -> TernaryForm {
        let mut out: BTreeMap<Exp3, BigInt> = BTreeMap::new();
        for (a, x) in &self.coeffs {
            for (b, y) in &other.coeffs {
                *out.entry([a[0] + b[0], a[1] + b[1], a[2] + b[2]]).or_default() += x * y;
            }
        }
        Self::from_map(out).expect("product of nonzero forms")
    }

    pub fn pow(&self, k: usize) -> TernaryForm {
        let one = TernaryForm { degree: 0, coeffs: BTreeMap::from([([0, 0, 0], BigInt::one())]) };
        (0..k).fold(one, |acc, _| acc.mul(self))
    }

    /// Partial derivative in variable `i` (not normalized; may be zero).
    pub(crate) fn partial_map(&self, i: usize) -> BTreeMap<Exp3, BigInt> {
        self.coeffs
            .iter()
            .filter(|(e, _)| e[i] > 0)
            .map(|(e, c)| {
                let mut e2 = *e;
                e2[i] -= 1;
                (e2, c * BigInt::from(e[i]))
            })
            .collect()
    }
}

impl fmt::Display for TernaryForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        const NAMES: [&str; 3] = ["s", "t", "r"];
        for (k, (e, c)) in self.coeffs.iter().rev().enumerate() {
            match (k, c.is_negative()) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let mag = c.abs();
            let mut parts = Vec::new();
            if !mag.is_one() || e.iter().all(|&p| p == 0) {
                parts.push(mag.to_string());
            }
            for (i, &p) in e.iter().enumerate() {
                match p {
                    0 => {}
                    1 => parts.push(NAMES[i].to_string()),
                    _ => parts.push(format!("{}^{p}", NAMES[i])),
                }
            }
            write!(f, "{}", parts.join("*"))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_print() {
        let g = TernaryForm::parse("-t^4 + r^4").unwrap();
        assert_eq!(g.to_string(), "t^4 - r^4");
        assert_eq!(TernaryForm::parse(&g.to_string()).unwrap(), g);
        let h = TernaryForm::parse("2*s^2 + 4*t*r").unwrap();
        assert_eq!(h.to_string(), "s^2 + 2*t*r");
        assert!(TernaryForm::parse("s^2 + t").is_err());
    }

    #[test]
    fn transform_and_multiply() {
        let l = TernaryForm::parse("s + t").unwrap();
        let sq = l.pow(2);
        assert_eq!(sq, TernaryForm::parse("s^2 + 2*s*t + t^2").unwrap());
        let one = BigInt::one;
        let zero = BigInt::zero;
        // s -> s - t
        let m = [[one(), -one(), zero()], [zero(), one(), zero()], [zero(), zero(), one()]];
        assert_eq!(sq.transform(&m).unwrap(), TernaryForm::parse("s^2").unwrap());
    }
}
