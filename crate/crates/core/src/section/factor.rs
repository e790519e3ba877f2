//! Factorization of ternary forms over Q.
//!
//! After a unimodular shear that makes the `t^e` coefficient nonzero, the
//! slice `f(s, t) = G(s, t, 1)` has constant leading coefficient in `t`, so its
//! factors are the slices of the factors of `G`. The squarefree parts come
//! from Yun's algorithm with bivariate gcds by interpolation; each is specialized at an integer `s = a`
//! with squarefree image, factored over Q, lifted in Q[[s − a]], and the true
//! factors are found by subset recombination with trial division.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::biv::{self, q, BiQ, QPoly, Q};
use super::form::TernaryForm;
use super::SectionError;
use crate::algebra::zfactor::{factor_q, subsets};

/// Largest supported degree.
pub const MAX_DEGREE: u32 = 5;

/// Small integer pairs ordered by max norm, then lexicographically.
pub(crate) fn small_pairs() -> impl Iterator<Item = (i64, i64)> {
    (0i64..).flat_map(|n| {
        let mut v: Vec<(i64, i64)> = (-n..=n)
            .flat_map(|a| (-n..=n).map(move |b| (a, b)))
            .filter(|(a, b)| a.abs().max(b.abs()) == n)
            .collect();
        v.sort();
        v
    })
}

pub(crate) fn shear_matrix(a: i64, b: i64, c: i64) -> [[BigInt; 3]; 3] {
    let z = BigInt::zero;
    let o = BigInt::one;
    // s -> s + a·t + c·r, t -> t, r -> r + b·t
    [
        [o(), BigInt::from(a), BigInt::from(c)],
        [z(), o(), z()],
        [z(), BigInt::from(b), o()],
    ]
}

pub(crate) fn inverse_shear(a: i64, b: i64, c: i64) -> [[BigInt; 3]; 3] {
    let z = BigInt::zero;
    let o = BigInt::one;
    // inverse of [[1, a, c], [0, 1, 0], [0, b, 1]] is [[1, c·b − a, −c], [0, 1, 0], [0, −b, 1]]
    [
        [o(), BigInt::from(c * b - a), BigInt::from(-c)],
        [z(), o(), z()],
        [z(), BigInt::from(-b), o()],
    ]
}

type Series = Vec<QPoly>;

/// Coefficient of `x^j` in the product of two series.
fn series_coeff(g: &Series, h: &Series, j: usize) -> QPoly {
    let mut acc = Vec::new();
    for i in 0..=j {
        if let (Some(a), Some(b)) = (g.get(i), h.get(j - i)) {
            acc = Q.add(&acc, &Q.mul(a, b));
        }
    }
    acc
}

/// Lifts `f ≡ g0·h0 (mod x)` (both monic in `t`, coprime) to precision `n`.
fn hensel_pair(f: &Series, g0: &QPoly, h0: &QPoly, n: usize) -> (Series, Series) {
    let (one, sigma, tau) = Q.ext_gcd(g0, h0);
    assert_eq!(one.len(), 1, "lifted factors must be coprime");
    let mut g = vec![g0.clone()];
    let mut h = vec![h0.clone()];
    for j in 1..n {
        let fj = f.get(j).cloned().unwrap_or_default();
        let e = Q.sub(&fj, &series_coeff(&g, &h, j));
        let te = Q.mul(&tau, &e);
        let (quo, a) = Q.divrem(&te, g0);
        let b = Q.add(&Q.mul(&sigma, &e), &Q.mul(&quo, h0));
        g.push(a);
        h.push(b);
    }
    (g, h)
}

fn hensel_multi(f: &Series, factors: &[QPoly], n: usize) -> Vec<Series> {
    if factors.len() == 1 {
        return vec![f.clone()];
    }
    let rest = factors[1..].iter().fold(vec![q(1)], |acc, u| Q.mul(&acc, u));
    let (g, h) = hensel_pair(f, &factors[0], &rest, n);
    let mut out = vec![g];
    out.extend(hensel_multi(&h, &factors[1..], n));
    out
}

/// `f(x, t)` with `f[j]` the `t^j` coefficient, as a series in `x` with polynomial coefficients in `t`.
fn to_series(f: &BiQ) -> Series {
    let n = f.iter().map(Vec::len).max().unwrap_or(0);
    (0..n)
        .map(|i| Q.trim(f.iter().map(|row| row.get(i).cloned().unwrap_or_default()).collect()))
        .collect()
}

fn from_series(s: &Series) -> BiQ {
    let n = s.iter().map(Vec::len).max().unwrap_or(0);
    biv::trim(
        (0..n)
            .map(|j| Q.trim(s.iter().map(|row| row.get(j).cloned().unwrap_or_default()).collect()))
            .collect(),
    )
}

fn series_product(parts: &[&Series], n: usize) -> Series {
    let mut acc: Series = vec![vec![q(1)]];
    for p in parts {
        acc = (0..n).map(|j| series_coeff(&acc, p, j)).collect();
    }
    acc
}

/// Irreducible factors of `f`, squarefree and monic in `t` with total degree at most `n - 1`.
fn factor_squarefree(f: &BiQ, n: usize) -> Vec<BiQ> {
    if f.len() <= 2 {
        return vec![f.clone()];
    }
    let a = (0i64..)
        .flat_map(|k| if k == 0 { vec![0] } else { vec![k, -k] })
        .map(q)
        .find(|a| Q.is_squarefree(&biv::eval_s(f, a)))
        .expect("a squarefree specialization exists");
    let shifted = biv::shift_s(f, &a);
    let u0 = biv::eval_s(&shifted, &BigInt::zero().into());
    let local: Vec<QPoly> = factor_q(&u0).into_iter().map(|(g, _)| g).collect();
    if local.len() == 1 {
        return vec![f.clone()];
    }
    let mut lifted = hensel_multi(&to_series(&shifted), &local, n);
    let mut rest = shifted;
    let mut found = Vec::new();
    let mut size = 1;
    while 2 * size <= lifted.len() {
        let mut hit = None;
        for subset in subsets(lifted.len(), size) {
            let parts: Vec<&Series> = subset.iter().map(|&i| &lifted[i]).collect();
            let cand = from_series(&series_product(&parts, n));
            if let Some(quo) = biv::div_monic(&rest, &cand) {
                hit = Some((subset, cand, quo));
                break;
            }
        }
        match hit {
            Some((subset, cand, quo)) => {
                found.push(cand);
                rest = quo;
                lifted = lifted
                    .into_iter()
                    .enumerate()
                    .filter(|(i, _)| !subset.contains(i))
                    .map(|(_, s)| s)
                    .collect();
            }
            None => size += 1,
        }
    }
    found.push(rest);
    let back = -a;
    found.iter().map(|g| biv::shift_s(g, &back)).collect()
}

/// Complete factorization over Q into irreducible forms with multiplicities,
/// sorted by degree, then multiplicity, then coefficients.
pub fn factor_ternary(g: &TernaryForm) -> Result<Vec<(TernaryForm, usize)>, SectionError> {
    let e = g.degree();
    if e > MAX_DEGREE {
        return Err(SectionError::UnsupportedDegree(e));
    }
    if e <= 1 {
        return Ok(vec![(g.clone(), 1)]);
    }
    let (a, b) = small_pairs()
        .find(|&(a, b)| !g.evaluate(&[BigInt::from(a), BigInt::one(), BigInt::from(b)]).is_zero())
        .expect("a nonzero form is nonzero somewhere");
    let sheared = g.transform(&shear_matrix(a, b, 0)).expect("unimodular image of a nonzero form");
    let f = biv::dehomogenize(sheared.coefficients());
    debug_assert_eq!(f.len() as u32, e + 1);

    let lc = f[f.len() - 1][0].clone();
    let f: BiQ = f.iter().map(|row| Q.scale(row, &lc.recip())).collect();
    let inv = inverse_shear(a, b, 0);
    let mut out = Vec::new();
    for (part, mult) in biv::squarefree_decomposition(&f) {
        for fac in factor_squarefree(&part, e as usize + 1) {
            let deg = fac.len() as u32 - 1;
            let form = TernaryForm::from_rational(&biv::homogenize(&fac, deg)).expect("nonzero factor");
            out.push((form.transform(&inv).expect("unimodular image"), mult));
        }
    }
    out.sort_by(|x, y| {
        x.0.degree()
            .cmp(&y.0.degree())
            .then(x.1.cmp(&y.1))
            .then_with(|| x.0.cmp(&y.0))
    });
    Ok(out)
}
