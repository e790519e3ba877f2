//! Univariate factorization over Z and Q (Zassenhaus).
//!
//! Squarefree decomposition over Q, Cantor–Zassenhaus factorization modulo a
//! small prime, linear Hensel lifting to a power of that prime exceeding twice
//! the Mignotte-type coefficient bound, and recombination by subset search.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::field::{PrimeField, Rationals};
use super::upoly::PolyRing;

pub type ZPoly = Vec<BigInt>;

fn trim(mut a: ZPoly) -> ZPoly {
    while a.last().is_some_and(Zero::is_zero) {
        a.pop();
    }
    a
}

pub fn content(a: &[BigInt]) -> BigInt {
    a.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
}

/// Primitive part with positive leading coefficient.
pub fn primitive_part(a: &[BigInt]) -> ZPoly {
    let c = content(a);
    if c.is_zero() {
        return Vec::new();
    }
    let c = if a.last().is_some_and(|l| l.is_negative()) { -c } else { c };
    a.iter().map(|x| x / &c).collect()
}

/// Clears denominators and returns the primitive integer polynomial.
pub fn from_rational(a: &[BigRational]) -> ZPoly {
    let l = a.iter().fold(BigInt::one(), |l, c| l.lcm(c.denom()));
    let ints: ZPoly = a.iter().map(|c| (c * BigRational::from_integer(l.clone())).to_integer()).collect();
    primitive_part(&trim(ints))
}

pub fn to_rational(a: &[BigInt]) -> Vec<BigRational> {
    a.iter().map(|c| BigRational::from_integer(c.clone())).collect()
}

fn mul_z(a: &[BigInt], b: &[BigInt]) -> ZPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(out)
}

/// Exact division in Z[y]; `None` when `b` does not divide `a`.
pub fn div_exact_z(a: &[BigInt], b: &[BigInt]) -> Option<ZPoly> {
    assert!(!b.is_empty());
    let mut r = a.to_vec();
    if r.is_empty() {
        return Some(Vec::new());
    }
    if r.len() < b.len() {
        return None;
    }
    let lb = b.last().expect("nonzero");
    let mut q = vec![BigInt::zero(); r.len() - b.len() + 1];
    while r.len() >= b.len() {
        let shift = r.len() - b.len();
        let (c, rem) = r.last().expect("nonempty").div_rem(lb);
        if !rem.is_zero() {
            return None;
        }
        for (i, y) in b.iter().enumerate() {
            r[shift + i] -= &c * y;
        }
        q[shift] = c;
        r.pop();
        r = trim(r);
        if r.is_empty() {
            break;
        }
    }
    r.is_empty().then(|| trim(q))
}

fn small_primes() -> impl Iterator<Item = u64> {
    (3u64..).step_by(2).filter(|&n| (3..).step_by(2).take_while(|d| d * d <= n).all(|d| n % d != 0))
}

fn reduce_mod(a: &[BigInt], fp: &PrimeField) -> Vec<u64> {
    let r = PolyRing::new(*fp);
    r.trim(a.iter().map(|c| fp.reduce(c)).collect())
}

/// Distinct-degree factorization of a monic squarefree polynomial mod p.
fn ddf(r: &PolyRing<PrimeField>, f: &[u64]) -> Vec<(Vec<u64>, usize)> {
    let p = r.field.modulus();
    let x = vec![0, 1];
    let mut out = Vec::new();
    let mut g = f.to_vec();
    let mut h = x.clone();
    let mut i = 1;
    while g.len() > 2 * i {
        h = r.pow_mod(&h, p as u128, &g);
        let d = r.gcd(&g, &r.sub(&h, &x));
        if d.len() > 1 {
            g = r.quo(&g, &d);
            h = r.rem(&h, &g);
            out.push((d, i));
        }
        i += 1;
    }
    if g.len() > 1 {
        let deg = g.len() - 1;
        out.push((g, deg));
    }
    out
}

/// Equal-degree splitting (Cantor–Zassenhaus, odd p).
fn edf(r: &PolyRing<PrimeField>, f: &[u64], degree: usize, rng: &mut ChaCha8Rng) -> Vec<Vec<u64>> {
    let n = f.len() - 1;
    if n == degree {
        return vec![f.to_vec()];
    }
    let p = r.field.modulus();
    loop {
        let a: Vec<u64> = r.trim((0..n).map(|_| rng.gen_range(0..p)).collect());
        if a.len() <= 1 {
            continue;
        }
        // a^((p^d - 1)/2) = (a · a^p · … · a^{p^{d-1}})^((p-1)/2)
        let mut cur = r.rem(&a, f);
        let mut acc = cur.clone();
        for _ in 1..degree {
            cur = r.pow_mod(&cur, p as u128, f);
            acc = r.rem(&r.mul(&acc, &cur), f);
        }
        let b = r.pow_mod(&acc, ((p - 1) / 2) as u128, f);
        let g = r.gcd(&r.sub(&b, &[1]), f);
        if g.len() > 1 && g.len() < f.len() {
            let h = r.quo(f, &g);
            let mut out = edf(r, &g, degree, rng);
            out.extend(edf(r, &h, degree, rng));
            return out;
        }
    }
}

/// Monic irreducible factors of a squarefree polynomial mod p.
pub fn factor_mod_p(f: &[u64], p: u64) -> Vec<Vec<u64>> {
    let r = PolyRing::new(PrimeField::new(p));
    let f = r.monic(f);
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed ^ p);
    let mut out = Vec::new();
    for (g, d) in ddf(&r, &f) {
        out.extend(edf(&r, &g, d, &mut rng));
    }
    out.sort();
    out
}

fn sym_mod(c: &BigInt, m: &BigInt) -> BigInt {
    let r = c.mod_floor(m);
    if &r * 2 > *m {
        r - m
    } else {
        r
    }
}

fn reduce_z(a: &[BigInt], m: &BigInt) -> ZPoly {
    trim(a.iter().map(|c| c.mod_floor(m)).collect())
}

fn lift_u64(a: &[u64]) -> ZPoly {
    a.iter().map(|&c| BigInt::from(c)).collect()
}

/// Lifts `f ≡ g·h (mod p)` with `g` monic to `f ≡ G·H (mod p^k)`.
fn hensel_pair(f: &[BigInt], g: &[u64], h: &[u64], p: u64, k: u32) -> (ZPoly, ZPoly) {
    let fp = PrimeField::new(p);
    let r = PolyRing::new(fp);
    let (one, s, t) = r.ext_gcd(g, h);
    debug_assert_eq!(one, vec![1]);
    let pz = BigInt::from(p);
    let mut big_g = lift_u64(g);
    let mut big_h = lift_u64(h);
    let mut pj = pz.clone();
    for _ in 1..k {
        let diff = trim(
            (0..f.len().max(big_g.len() + big_h.len()))
                .map(|i| f.get(i).cloned().unwrap_or_default())
                .collect::<Vec<_>>()
                .iter()
                .zip(
                    mul_z(&big_g, &big_h)
                        .into_iter()
                        .chain(std::iter::repeat(BigInt::zero())),
                )
                .map(|(a, b)| a - b)
                .collect(),
        );
        let e: Vec<u64> = r.trim(
            diff.iter()
                .map(|c| {
                    debug_assert!((c % &pj).is_zero());
                    fp.reduce(&(c / &pj))
                })
                .collect(),
        );
        let te = r.mul(&t, &e);
        let (q, a) = r.divrem(&te, g);
        let b = r.add(&r.mul(&s, &e), &r.mul(&q, h));
        let next = &pj * &pz;
        big_g = reduce_z(
            &add_z(&big_g, &lift_u64(&a).iter().map(|c| c * &pj).collect::<Vec<_>>()),
            &next,
        );
        big_h = reduce_z(
            &add_z(&big_h, &lift_u64(&b).iter().map(|c| c * &pj).collect::<Vec<_>>()),
            &next,
        );
        pj = next;
    }
    (big_g, big_h)
}

fn add_z(a: &[BigInt], b: &[BigInt]) -> ZPoly {
    let n = a.len().max(b.len());
    trim(
        (0..n)
            .map(|i| a.get(i).cloned().unwrap_or_default() + b.get(i).cloned().unwrap_or_default())
            .collect(),
    )
}

/// Lifts the modular factorization `f ≡ lc·∏ u_i (mod p)` to monic factors mod p^k.
fn hensel_multi(f: &[BigInt], factors: &[Vec<u64>], p: u64, k: u32) -> Vec<ZPoly> {
    let fp = PrimeField::new(p);
    let r = PolyRing::new(fp);
    let m = BigInt::from(p).pow(k);
    let lc = f.last().expect("nonzero").clone();
    if factors.len() == 1 {
        let inv = lc.extended_gcd(&m).x.mod_floor(&m);
        return vec![reduce_z(&f.iter().map(|c| c * &inv).collect::<Vec<_>>(), &m)];
    }
    let g = &factors[0];
    let rest = factors[1..]
        .iter()
        .fold(vec![fp.reduce(&lc)], |acc, u| r.mul(&acc, u));
    let (big_g, big_h) = hensel_pair(f, g, &rest, p, k);
    let mut out = vec![big_g];
    out.extend(hensel_multi(&big_h, &factors[1..], p, k));
    out
}

fn coefficient_bound(f: &[BigInt]) -> BigInt {
    let n = f.len() - 1;
    let max = f.iter().map(|c| c.abs()).max().expect("nonzero");
    let lc = f.last().expect("nonzero").abs();
    (BigInt::one() << n) * BigInt::from(n + 1) * max * lc
}

/// All `k`-element subsets of `0..n` in lexicographic order.
pub(crate) fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// Irreducible factors of a primitive squarefree polynomial of degree ≥ 1.
fn zassenhaus(f: &[BigInt]) -> Vec<ZPoly> {
    let n = f.len() - 1;
    if n <= 1 {
        return vec![primitive_part(f)];
    }
    let lc = f.last().expect("nonzero").clone();
    let mut best: Option<(u64, Vec<Vec<u64>>)> = None;
    let mut good = 0;
    for p in small_primes() {
        if (&lc % BigInt::from(p)).is_zero() {
            continue;
        }
        let fp = PrimeField::new(p);
        let r = PolyRing::new(fp);
        let fbar = reduce_mod(f, &fp);
        if !r.is_squarefree(&fbar) {
            continue;
        }
        let facs = factor_mod_p(&fbar, p);
        if best.as_ref().is_none_or(|(_, b)| facs.len() < b.len()) {
            best = Some((p, facs));
        }
        good += 1;
        if good >= 3 || best.as_ref().is_some_and(|(_, b)| b.len() == 1) {
            break;
        }
    }
    let (p, modular) = best.expect("some prime is good for a squarefree polynomial");
    if modular.len() == 1 {
        return vec![primitive_part(f)];
    }
    let bound = coefficient_bound(f) * 2;
    let pz = BigInt::from(p);
    let mut k = 1u32;
    let mut pk = pz.clone();
    while pk <= bound {
        pk *= &pz;
        k += 1;
    }
    let mut lifted = hensel_multi(f, &modular, p, k);
    let mut rest = f.to_vec();
    let mut found = Vec::new();
    let mut size = 1;
    while 2 * size <= lifted.len() {
        let mut hit = None;
        for subset in subsets(lifted.len(), size) {
            let lc = rest.last().expect("nonzero").clone();
            let prod = subset
                .iter()
                .fold(vec![lc], |acc, &i| reduce_z(&mul_z(&acc, &lifted[i]), &pk));
            let cand = primitive_part(&trim(prod.iter().map(|c| sym_mod(c, &pk)).collect()));
            if let Some(q) = div_exact_z(&rest, &cand) {
                hit = Some((subset, cand, q));
                break;
            }
        }
        match hit {
            Some((subset, cand, q)) => {
                found.push(cand);
                rest = q;
                lifted = lifted
                    .into_iter()
                    .enumerate()
                    .filter(|(i, _)| !subset.contains(i))
                    .map(|(_, u)| u)
                    .collect();
            }
            None => size += 1,
        }
    }
    if rest.len() > 1 {
        found.push(primitive_part(&rest));
    }
    found
}

/// Irreducible factors over Q of a nonzero integer polynomial, as primitive
/// integer polynomials with positive leading coefficient, with multiplicities.
/// Sorted by degree, then coefficients.
pub fn factor_z(f: &[BigInt]) -> Vec<(ZPoly, usize)> {
    let f = primitive_part(&trim(f.to_vec()));
    if f.len() <= 1 {
        return Vec::new();
    }
    let q = PolyRing::new(Rationals);
    let mut out = Vec::new();
    for (part, mult) in q.squarefree_decomposition(&to_rational(&f)) {
        for g in zassenhaus(&from_rational(&part)) {
            out.push((g, mult));
        }
    }
    out.sort_by(|a, b| a.0.len().cmp(&b.0.len()).then_with(|| a.0.cmp(&b.0)));
    out
}

/// Monic irreducible factors over Q with multiplicities.
pub fn factor_q(f: &[BigRational]) -> Vec<(Vec<BigRational>, usize)> {
    let q = PolyRing::new(Rationals);
    factor_z(&from_rational(f))
        .into_iter()
        .map(|(g, m)| (q.monic(&to_rational(&g)), m))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn zp(c: &[i64]) -> ZPoly {
        trim(c.iter().map(|&x| BigInt::from(x)).collect())
    }

    fn product(factors: &[(ZPoly, usize)]) -> ZPoly {
        factors.iter().fold(zp(&[1]), |acc, (g, m)| {
            (0..*m).fold(acc, |a, _| mul_z(&a, g))
        })
    }

    #[test]
    fn fourth_power_difference() {
        let f = factor_z(&zp(&[-1, 0, 0, 0, 1]));
        assert_eq!(f, vec![(zp(&[-1, 1]), 1), (zp(&[1, 1]), 1), (zp(&[1, 0, 1]), 1)]);
    }

    #[test]
    fn swinnerton_dyer_like_irreducible() {
        // x^4 - 10x^2 + 1 is irreducible but splits mod every prime
        let f = factor_z(&zp(&[1, 0, -10, 0, 1]));
        assert_eq!(f, vec![(zp(&[1, 0, -10, 0, 1]), 1)]);
    }

    #[test]
    fn repeated_and_non_monic() {
        // (2x + 3)^2 (x^2 - 2)(3x - 1)
        let g = mul_z(&mul_z(&mul_z(&zp(&[3, 2]), &zp(&[3, 2])), &zp(&[-2, 0, 1])), &zp(&[-1, 3]));
        let f = factor_z(&g);
        assert_eq!(f, vec![(zp(&[-1, 3]), 1), (zp(&[3, 2]), 2), (zp(&[-2, 0, 1]), 1)]);
        assert_eq!(product(&f), g);
    }

    #[test]
    fn cyclotomic_split() {
        // x^12 - 1 = ∏ Φ_d, d | 12
        let mut c = vec![0i64; 13];
        c[0] = -1;
        c[12] = 1;
        let f = factor_z(&zp(&c));
        assert_eq!(f.len(), 6);
        assert_eq!(product(&f), zp(&c));
    }

    #[test]
    fn mod_p_factorization() {
        // x^4 + 1 mod 17 splits into linear factors
        let facs = factor_mod_p(&[1, 0, 0, 0, 1], 17);
        assert_eq!(facs.len(), 4);
        assert!(facs.iter().all(|f| f.len() == 2));
    }
}
