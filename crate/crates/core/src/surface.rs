//! The surface `X = {F = 0}` in P³: parsing, evaluation, smoothness search.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::projective::{canonicalize_i64, PrimitivePoint};

pub type Exponent = [u32; 4];

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SurfaceError {
    #[error("form is not homogeneous")]
    NotHomogeneous,
    #[error("degree {0} is below 4")]
    DegreeTooSmall(u32),
    #[error("form is empty")]
    EmptyForm,
    #[error("syntax error at byte {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
}

/// A homogeneous integer form of degree `d ≥ 4` in `x0..x3` with content 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SurfaceForm {
    degree: u32,
    coeffs: BTreeMap<Exponent, BigInt>,
    gradient: [BTreeMap<Exponent, BigInt>; 4],
}

fn derivative(coeffs: &BTreeMap<Exponent, BigInt>, var: usize) -> BTreeMap<Exponent, BigInt> {
    coeffs
        .iter()
        .filter(|(e, _)| e[var] > 0)
        .map(|(e, c)| {
            let mut e2 = *e;
            e2[var] -= 1;
            (e2, c * BigInt::from(e[var]))
        })
        .collect()
}

fn eval_form(coeffs: &BTreeMap<Exponent, BigInt>, x: &[BigInt; 4]) -> BigInt {
    coeffs
        .iter()
        .map(|(e, c)| (0..4).fold(c.clone(), |acc, i| acc * x[i].pow(e[i])))
        .sum()
}

impl SurfaceForm {
    /// Builds a form from monomials; like terms are combined and the content removed.
    pub fn from_terms<I>(terms: I) -> Result<Self, SurfaceError>
    where
        I: IntoIterator<Item = (Exponent, BigInt)>,
    {
        let mut coeffs: BTreeMap<Exponent, BigInt> = BTreeMap::new();
        for (e, c) in terms {
            *coeffs.entry(e).or_default() += c;
        }
        coeffs.retain(|_, c| !c.is_zero());
        let degree = match coeffs.keys().next() {
            None => return Err(SurfaceError::EmptyForm),
            Some(e) => e.iter().sum::<u32>(),
        };
        if coeffs.keys().any(|e| e.iter().sum::<u32>() != degree) {
            return Err(SurfaceError::NotHomogeneous);
        }
        if degree < 4 {
            return Err(SurfaceError::DegreeTooSmall(degree));
        }
        let content = coeffs.values().fold(BigInt::zero(), |g, c| g.gcd(c));
        for c in coeffs.values_mut() {
            *c /= &content;
        }
        let gradient = std::array::from_fn(|i| derivative(&coeffs, i));
        Ok(SurfaceForm { degree, coeffs, gradient })
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn coefficients(&self) -> &BTreeMap<Exponent, BigInt> {
        &self.coeffs
    }

    /// The partial derivative `∂F/∂x_i` as a coefficient map.
    pub fn partial(&self, i: usize) -> &BTreeMap<Exponent, BigInt> {
        &self.gradient[i]
    }

    pub fn evaluate_at(&self, x: &[BigInt; 4]) -> BigInt {
        eval_form(&self.coeffs, x)
    }

    pub fn evaluate(&self, p: &PrimitivePoint) -> BigInt {
        self.evaluate_at(p.coords())
    }

    pub fn gradient_at_coords(&self, x: &[BigInt; 4]) -> [BigInt; 4] {
        std::array::from_fn(|i| eval_form(&self.gradient[i], x))
    }

    pub fn gradient_at(&self, p: &PrimitivePoint) -> [BigInt; 4] {
        self.gradient_at_coords(p.coords())
    }

    /// `Σ x_i·∂F/∂x_i(x) − d·F(x)`, which is zero for every `x`.
    pub fn euler_defect(&self, x: &[BigInt; 4]) -> BigInt {
        let g = self.gradient_at_coords(x);
        let lhs: BigInt = (0..4).map(|i| &x[i] * &g[i]).sum();
        lhs - BigInt::from(self.degree) * self.evaluate_at(x)
    }

    /// First 16 hex digits of the SHA-256 of the canonical printed form.
    pub fn hash(&self) -> String {
        let digest = Sha256::digest(self.to_string().as_bytes());
        digest.iter().take(8).map(|b| format!("{b:02x}")).collect()
    }
}

impl fmt::Display for SurfaceForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, (e, c)) in self.coeffs.iter().rev().enumerate() {
            let mag = c.abs();
            match (k, c.is_negative()) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let mut parts = Vec::new();
            if !mag.is_one() {
                parts.push(mag.to_string());
            }
            for (i, &p) in e.iter().enumerate() {
                match p {
                    0 => {}
                    1 => parts.push(format!("x{i}")),
                    _ => parts.push(format!("x{i}^{p}")),
                }
            }
            write!(f, "{}", parts.join("*"))?;
        }
        Ok(())
    }
}

struct Lexer<'a, V> {
    src: &'a [u8],
    pos: usize,
    nvars: usize,
    var_at: V,
}

impl<V: Fn(&[u8]) -> Option<(usize, usize)>> Lexer<'_, V> {
    fn err<T>(&self, msg: &str) -> Result<T, SurfaceError> {
        Err(SurfaceError::Syntax { pos: self.pos, msg: msg.to_string() })
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn number(&mut self) -> Result<BigInt, SurfaceError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("expected a number");
        }
        let s = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        Ok(s.parse().expect("digits parse"))
    }

    /// One term: factors (coefficients or variable powers) joined by optional `*`.
    fn term(&mut self) -> Result<(Vec<u32>, BigInt), SurfaceError> {
        let mut coeff = BigInt::one();
        let mut exp = vec![0u32; self.nvars];
        let mut seen = false;
        loop {
            match self.peek() {
                Some(b'0'..=b'9') => {
                    coeff *= self.number()?;
                    seen = true;
                }
                Some(_) if (self.var_at)(&self.src[self.pos..]).is_some() => {
                    let (var, len) = (self.var_at)(&self.src[self.pos..]).expect("checked");
                    self.pos += len;
                    let mut power = 1u32;
                    if self.peek() == Some(b'^') {
                        self.pos += 1;
                        power = self
                            .number()?
                            .to_u32()
                            .filter(|&p| p <= 64)
                            .map_or_else(|| self.err("exponent out of range"), Ok)?;
                    }
                    exp[var] += power;
                    seen = true;
                }
                _ if !seen => return self.err("expected a term"),
                _ => return Ok((exp, coeff)),
            }
            if self.peek() == Some(b'*') {
                self.pos += 1;
                seen = false;
            }
        }
    }
}

/// Parses a signed sum of monomials. `var_at` recognizes a variable at the
/// start of a byte slice and returns its index and byte length.
pub(crate) fn parse_monomials(
    text: &str,
    nvars: usize,
    var_at: impl Fn(&[u8]) -> Option<(usize, usize)>,
) -> Result<Vec<(Vec<u32>, BigInt)>, SurfaceError> {
    let mut lx = Lexer { src: text.as_bytes(), pos: 0, nvars, var_at };
    let mut terms = Vec::new();
    if lx.peek().is_none() {
        return Err(SurfaceError::EmptyForm);
    }
    let mut sign = BigInt::one();
    match lx.peek() {
        Some(b'-') => {
            sign = -sign;
            lx.pos += 1;
        }
        Some(b'+') => lx.pos += 1,
        _ => {}
    }
    loop {
        let (e, c) = lx.term()?;
        terms.push((e, c * &sign));
        match lx.peek() {
            None => break,
            Some(b'+') => sign = BigInt::one(),
            Some(b'-') => sign = -BigInt::one(),
            Some(_) => return lx.err("expected '+' or '-'"),
        }
        lx.pos += 1;
    }
    Ok(terms)
}

/// Parses a sum of monomials such as `x0^4 + x1^4 - 2*x2^2*x3^2`.
pub fn parse_surface(text: &str) -> Result<SurfaceForm, SurfaceError> {
    let terms = parse_monomials(text, 4, |b| match b {
        [b'x', d @ b'0'..=b'3', ..] => Some(((d - b'0') as usize, 2)),
        _ => None,
    })?;
    SurfaceForm::from_terms(terms.into_iter().map(|(e, c)| ([e[0], e[1], e[2], e[3]], c)))
}

/// Where the smoothness search looked.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SearchScope {
    /// Every point of P³(F_p).
    Prime(u64),
    /// Every rational point of height at most the bound.
    Rational(u64),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchRecord {
    pub scope: SearchScope,
    /// Number of singular points found in this scope.
    pub hits: u64,
    /// The first hit, as canonical residues or integers.
    pub example: Option<[i64; 4]>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SmoothnessStatus {
    NoSingularityDetected,
    /// Rational singular points, verified exactly; `field` names their field of definition.
    SingularPointFound { points: Vec<PrimitivePoint>, field: &'static str },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmoothnessCertificate {
    pub status: SmoothnessStatus,
    pub evidence: Vec<SearchRecord>,
}

/// Rational singular points kept in a certificate.
const MAX_REPORTED: usize = 16;

fn eval_mod(terms: &[(Exponent, u64)], x: &[u64; 4], p: u64) -> u64 {
    terms.iter().fold(0, |acc, (e, c)| {
        let mut v = *c;
        for i in 0..4 {
            for _ in 0..e[i] {
                v = v * x[i] % p;
            }
        }
        (acc + v) % p
    })
}

fn reduce_terms(m: &BTreeMap<Exponent, BigInt>, p: u64) -> Vec<(Exponent, u64)> {
    let pb = BigInt::from(p);
    m.iter()
        .map(|(e, c)| (*e, c.mod_floor(&pb).to_u64().expect("residue")))
        .filter(|(_, c)| *c != 0)
        .collect()
}

/// Canonical representatives of P³(F_p): first nonzero coordinate equal to 1.
fn projective_points_mod(p: u64) -> impl Iterator<Item = [u64; 4]> {
    (0..4).flat_map(move |lead| {
        let free = 3 - lead;
        (0..p.pow(free as u32)).map(move |mut idx| {
            let mut x = [0u64; 4];
            x[lead] = 1;
            for slot in x.iter_mut().skip(lead + 1) {
                *slot = idx % p;
                idx /= p;
            }
            x
        })
    })
}

/// Searches for singular points over `F_p` for each prime and over Q up to
/// height `rational_bound`. Conjugate singular points over number fields
/// escape this search.
pub fn smoothness_check(f: &SurfaceForm, primes: &[u64], rational_bound: u64) -> SmoothnessCertificate {
    let mut evidence = Vec::new();
    for &p in primes {
        let forms: Vec<Vec<(Exponent, u64)>> = std::iter::once(f.coefficients())
            .chain((0..4).map(|i| f.partial(i)))
            .map(|m| reduce_terms(m, p))
            .collect();
        let mut hits = 0;
        let mut example = None;
        for x in projective_points_mod(p) {
            if forms.iter().all(|t| eval_mod(t, &x, p) == 0) {
                hits += 1;
                example.get_or_insert(x.map(|c| c as i64));
            }
        }
        evidence.push(SearchRecord { scope: SearchScope::Prime(p), hits, example });
    }

    let b = rational_bound as i64;
    let found: Vec<PrimitivePoint> = crate::par::flat_map_range((2 * b + 1) as usize, |i| {
        let x0 = i as i64 - b;
        let mut out = Vec::new();
        for x1 in -b..=b {
            for x2 in -b..=b {
                for x3 in -b..=b {
                    let mut v = [x0, x1, x2, x3];
                    if !canonicalize_i64(&mut v) || v != [x0, x1, x2, x3] {
                        continue;
                    }
                    let big = v.map(BigInt::from);
                    if f.evaluate_at(&big).is_zero() && f.gradient_at_coords(&big).iter().all(Zero::is_zero) {
                        out.push(PrimitivePoint::from_i64(v).expect("canonical"));
                    }
                }
            }
        }
        out
    });
    let mut found = found;
    found.sort();
    evidence.push(SearchRecord {
        scope: SearchScope::Rational(rational_bound),
        hits: found.len() as u64,
        example: found.first().and_then(PrimitivePoint::to_i64),
    });
    let status = if found.is_empty() {
        SmoothnessStatus::NoSingularityDetected
    } else {
        found.truncate(MAX_REPORTED);
        SmoothnessStatus::SingularPointFound { points: found, field: "Q" }
    };
    SmoothnessCertificate { status, evidence }
}
