//! Bivariate polynomials over Q, stored as polynomials in `t` whose
//! coefficients are polynomials in `s`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use super::form::Exp3;
use crate::algebra::field::Rationals;
use crate::algebra::upoly::PolyRing;

pub type QPoly = Vec<BigRational>;
/// `f[j]` is the coefficient of `t^j`, a polynomial in `s`.
pub type BiQ = Vec<QPoly>;

pub const Q: PolyRing<Rationals> = PolyRing { field: Rationals };

pub fn q(n: i64) -> BigRational {
    BigRational::from_integer(n.into())
}

pub fn trim(mut f: BiQ) -> BiQ {
    while f.last().is_some_and(Vec::is_empty) {
        f.pop();
    }
    f
}

/// `F(s, t, 1)`.
pub fn dehomogenize(coeffs: &BTreeMap<Exp3, BigInt>) -> BiQ {
    let dt = coeffs.keys().map(|e| e[1] as usize).max().unwrap_or(0);
    let mut f: Vec<QPoly> = vec![Vec::new(); dt + 1];
    for (e, c) in coeffs {
        let row = &mut f[e[1] as usize];
        if row.len() <= e[0] as usize {
            row.resize(e[0] as usize + 1, BigRational::zero());
        }
        row[e[0] as usize] += BigRational::from_integer(c.clone());
    }
    trim(f.into_iter().map(|p| Q.trim(p)).collect())
}

/// The degree-`d` form whose `r = 1` slice is `f`.
pub fn homogenize(f: &BiQ, d: u32) -> BTreeMap<Exp3, BigRational> {
    let mut out = BTreeMap::new();
    for (j, row) in f.iter().enumerate() {
        for (i, c) in row.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let k = d as i64 - i as i64 - j as i64;
            assert!(k >= 0, "slice exceeds the homogenizing degree");
            out.insert([i as u32, j as u32, k as u32], c.clone());
        }
    }
    out
}

pub fn eval_s(f: &BiQ, a: &BigRational) -> QPoly {
    Q.trim(f.iter().map(|row| Q.eval(row, a)).collect())
}

/// `f(s + a, t)`.
pub fn shift_s(f: &BiQ, a: &BigRational) -> BiQ {
    let lin = vec![a.clone(), q(1)];
    f.iter().map(|row| Q.compose(row, &lin)).collect()
}

/// Derivative in `t`.
pub fn d_t(f: &BiQ) -> BiQ {
    trim(f.iter().enumerate().skip(1).map(|(j, row)| Q.scale(row, &q(j as i64))).collect())
}

/// Derivative in `s`.
pub fn d_s(f: &BiQ) -> BiQ {
    trim(f.iter().map(|row| Q.derivative(row)).collect())
}

/// Exact quotient by `g`, which must be monic in `t`; `None` if it does not divide.
pub fn div_monic(f: &BiQ, g: &BiQ) -> Option<BiQ> {
    let n = g.len() - 1;
    assert!(g[n] == vec![q(1)], "divisor must be monic in t");
    let mut r = f.clone();
    if r.len() < g.len() {
        return r.is_empty().then(Vec::new);
    }
    let mut quo: BiQ = vec![Vec::new(); r.len() - n];
    while r.len() > n {
        let shift = r.len() - 1 - n;
        let c = r.last().expect("nonempty").clone();
        for (k, gk) in g.iter().enumerate() {
            r[shift + k] = Q.sub(&r[shift + k], &Q.mul(&c, gk));
        }
        quo[shift] = c;
        r = trim(r);
    }
    r.is_empty().then(|| trim(quo))
}

pub fn sub(f: &BiQ, g: &BiQ) -> BiQ {
    let n = f.len().max(g.len());
    trim((0..n)
        .map(|j| Q.sub(f.get(j).map_or(&[][..], |v| v), g.get(j).map_or(&[][..], |v| v)))
        .collect())
}

/// Total degree (`None` for zero).
pub fn total_degree(f: &BiQ) -> Option<usize> {
    f.iter()
        .enumerate()
        .filter(|(_, row)| !row.is_empty())
        .map(|(j, row)| j + row.len() - 1)
        .max()
}

/// Gcd of `f` (monic in `t`) and `g`, monic in `t`.
///
/// The gcd divides `f`, so its coefficients have degree at most
/// `total_degree(f)` in `s`. It is interpolated from univariate gcds at
/// integer points of least gcd degree and accepted once it divides both inputs.
pub fn gcd_t(f: &BiQ, g: &BiQ) -> BiQ {
    if g.is_empty() {
        return f.clone();
    }
    let need = total_degree(f).unwrap_or(0) + 1;
    let mut samples: Vec<(BigRational, QPoly)> = Vec::new();
    for k in (0i64..).flat_map(|k| if k == 0 { vec![0] } else { vec![k, -k] }) {
        let x = q(k);
        let h = Q.gcd(&eval_s(f, &x), &eval_s(g, &x));
        let min = samples.iter().map(|(_, p)| p.len()).min().unwrap_or(usize::MAX);
        if h.len() < min {
            samples.clear();
        }
        if h.len() > min {
            continue;
        }
        samples.push((x, h));
        if samples.len() < need {
            continue;
        }
        if samples[0].1.len() == 1 {
            return vec![vec![q(1)]];
        }
        let xs: Vec<BigRational> = samples.iter().map(|(x, _)| x.clone()).collect();
        let cand: BiQ = trim(
            (0..samples[0].1.len())
                .map(|j| Q.interpolate(&xs, &samples.iter().map(|(_, p)| p[j].clone()).collect::<Vec<_>>()))
                .collect(),
        );
        if div_monic(f, &cand).is_some() && div_monic(g, &cand).is_some() {
            return cand;
        }
    }
    unreachable!("the integer sequence is infinite")
}

/// Squarefree decomposition of a polynomial monic in `t` (Yun), factors monic in `t`.
pub fn squarefree_decomposition(f: &BiQ) -> Vec<(BiQ, usize)> {
    let fp = d_t(f);
    let a = gcd_t(f, &fp);
    let mut b = div_monic(f, &a).expect("gcd divides");
    let mut d = sub(&div_monic(&fp, &a).expect("gcd divides"), &d_t(&b));
    let mut out = Vec::new();
    let mut i = 1;
    while b.len() > 1 {
        let a = gcd_t(&b, &d);
        let nb = div_monic(&b, &a).expect("gcd divides");
        let c = div_monic(&d, &a).expect("gcd divides");
        d = sub(&c, &d_t(&nb));
        if a.len() > 1 {
            out.push((a, i));
        }
        b = nb;
        i += 1;
    }
    out
}
