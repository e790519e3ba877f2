//! Rational points of bounded height on the surface, rational lines, and line stripping.
//!
//! The outer loop runs over canonical triples `(x0, x1, x2)` (first nonzero entry
//! positive). For each triple `F(x0, x1, x2, t)` is a univariate polynomial in
//! `t`; residue tables modulo small prime powers reject most triples and most
//! `t` before any exact evaluation.

use std::fs;
use std::io::{self, BufRead, BufWriter, Write};
use std::path::Path;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use thiserror::Error;

use crate::projective::{canonicalize, PrimitivePoint};
use crate::surface::SurfaceForm;

/// Largest supported height bound; enumeration is cubic in `B` long before this.
pub const MAX_BOUND: u64 = 1 << 20;

/// Default sieve moduli (prime powers).
pub const DEFAULT_SIEVE: [u64; 6] = [16, 9, 5, 7, 11, 13];

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PointsError {
    #[error("height bound must be between 1 and {MAX_BOUND}, got {0}")]
    InvalidBound(u64),
    #[error("sieve modulus {0} is outside 2..=64")]
    InvalidSieveModulus(u64),
}

/// Rational points of height at most `bound` on one surface, sorted and distinct.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointSet {
    surface_hash: String,
    bound: u64,
    points: Vec<[i64; 4]>,
}

impl PointSet {
    pub fn new(surface_hash: String, bound: u64, mut points: Vec<[i64; 4]>) -> Self {
        points.sort_unstable();
        points.dedup();
        PointSet { surface_hash, bound, points }
    }

    pub fn surface_hash(&self) -> &str {
        &self.surface_hash
    }

    pub fn bound(&self) -> u64 {
        self.bound
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Canonical coordinates, sorted lexicographically.
    pub fn coords(&self) -> &[[i64; 4]] {
        &self.points
    }

    pub fn points(&self) -> impl Iterator<Item = PrimitivePoint> + '_ {
        self.points.iter().map(|&c| PrimitivePoint::from_canonical_i64(c))
    }

    pub fn contains(&self, c: &[i64; 4]) -> bool {
        self.points.binary_search(c).is_ok()
    }

    /// The subset of height at most `bound`.
    pub fn restrict(&self, bound: u64) -> PointSet {
        let b = bound as i64;
        PointSet {
            surface_hash: self.surface_hash.clone(),
            bound,
            points: self.points.iter().filter(|c| height(c) <= b).copied().collect(),
        }
    }

    /// Writes the cache file atomically: a temporary sibling, then a rename.
    pub fn write_cache(&self, path: &Path) -> io::Result<()> {
        let tmp = path.with_extension(format!("tmp{}", std::process::id()));
        {
            let mut w = BufWriter::new(fs::File::create(&tmp)?);
            writeln!(w, "planesect-points v1 {} B={}", self.surface_hash, self.bound)?;
            for [a, b, c, d] in &self.points {
                writeln!(w, "{a} {b} {c} {d}")?;
            }
            w.flush()?;
        }
        fs::rename(&tmp, path)
    }

    pub fn read_cache(path: &Path) -> io::Result<PointSet> {
        let bad = |msg: &str| io::Error::new(io::ErrorKind::InvalidData, msg.to_string());
        let file = io::BufReader::new(fs::File::open(path)?);
        let mut lines = file.lines();
        let header = lines.next().ok_or_else(|| bad("empty cache file"))??;
        let parts: Vec<&str> = header.split_whitespace().collect();
        let (hash, bound) = match parts.as_slice() {
            ["planesect-points", "v1", hash, b] => {
                let bound = b
                    .strip_prefix("B=")
                    .and_then(|v| v.parse::<u64>().ok())
                    .ok_or_else(|| bad("bad bound in header"))?;
                (hash.to_string(), bound)
            }
            _ => return Err(bad("bad cache header")),
        };
        let mut points = Vec::new();
        for line in lines {
            let line = line?;
            let v: Vec<i64> = line
                .split_whitespace()
                .map(str::parse)
                .collect::<Result<_, _>>()
                .map_err(|_| bad("bad point line"))?;
            let c: [i64; 4] = v.try_into().map_err(|_| bad("point needs 4 coordinates"))?;
            points.push(c);
        }
        if !points.windows(2).all(|w| w[0] < w[1]) {
            return Err(bad("cache points not strictly sorted"));
        }
        Ok(PointSet { surface_hash: hash, bound, points })
    }
}

fn height(c: &[i64; 4]) -> i64 {
    c.iter().map(|x| x.abs()).max().expect("four coordinates")
}

/// `F(x0, x1, x2, t)` as coefficients of `t^k`, one ternary term list per `k`.
struct Slices<C> {
    by_power: Vec<Vec<([u32; 3], C)>>,
}

impl<C: Clone> Slices<C> {
    fn new(f: &SurfaceForm, conv: impl Fn(&BigInt) -> C) -> Self {
        let mut by_power = vec![Vec::new(); f.degree() as usize + 1];
        for (e, c) in f.coefficients() {
            by_power[e[3] as usize].push(([e[0], e[1], e[2]], conv(c)));
        }
        Slices { by_power }
    }
}

fn powers_i128(x: i64, d: usize) -> Vec<i128> {
    let mut out = Vec::with_capacity(d + 1);
    let mut acc = 1i128;
    for _ in 0..=d {
        out.push(acc);
        acc *= x as i128;
    }
    out
}

/// The per-triple polynomial in `t`, exact.
enum Exact {
    Small(Slices<i128>),
    Big(Slices<BigInt>),
}

enum TPoly {
    Small(Vec<i128>),
    Big(Vec<BigInt>),
}

impl Exact {
    fn new(f: &SurfaceForm, bound: u64) -> Self {
        let d = f.degree();
        let total = f.coefficients().values().map(|c| BigInt::from(c.magnitude().clone())).sum::<BigInt>()
            * BigInt::from(bound).pow(d);
        if total.bits() < 126 {
            Exact::Small(Slices::new(f, |c| c.to_i128().expect("small coefficient")))
        } else {
            Exact::Big(Slices::new(f, Clone::clone))
        }
    }

    fn slice(&self, x: [i64; 3], d: usize) -> TPoly {
        match self {
            Exact::Small(s) => {
                let p = x.map(|v| powers_i128(v, d));
                TPoly::Small(
                    s.by_power
                        .iter()
                        .map(|terms| {
                            terms
                                .iter()
                                .map(|(e, c)| c * p[0][e[0] as usize] * p[1][e[1] as usize] * p[2][e[2] as usize])
                                .sum()
                        })
                        .collect(),
                )
            }
            Exact::Big(s) => {
                let xb = x.map(BigInt::from);
                TPoly::Big(
                    s.by_power
                        .iter()
                        .map(|terms| {
                            terms
                                .iter()
                                .map(|(e, c)| c * xb[0].pow(e[0]) * xb[1].pow(e[1]) * xb[2].pow(e[2]))
                                .sum()
                        })
                        .collect(),
                )
            }
        }
    }
}

impl TPoly {
    fn is_zero_poly(&self) -> bool {
        match self {
            TPoly::Small(c) => c.iter().all(|&v| v == 0),
            TPoly::Big(c) => c.iter().all(Zero::is_zero),
        }
    }

    fn is_root(&self, t: i64) -> bool {
        match self {
            TPoly::Small(c) => c.iter().rev().fold(0i128, |acc, &v| acc * t as i128 + v) == 0,
            TPoly::Big(c) => {
                let tb = BigInt::from(t);
                c.iter().rev().fold(BigInt::zero(), |acc, v| acc * &tb + v).is_zero()
            }
        }
    }

    /// Roots in `[-b, b]` from divisors of the lowest nonzero coefficient.
    fn roots_by_divisors(&self, b: i64) -> Vec<i64> {
        if self.is_zero_poly() {
            return (-b..=b).collect();
        }
        let low: BigInt = match self {
            TPoly::Small(c) => BigInt::from(*c.iter().find(|&&v| v != 0).expect("nonzero")),
            TPoly::Big(c) => c.iter().find(|v| !v.is_zero()).expect("nonzero").clone(),
        };
        let has_zero_root = match self {
            TPoly::Small(c) => c[0] == 0,
            TPoly::Big(c) => c[0].is_zero(),
        };
        let mut out = Vec::new();
        if has_zero_root {
            out.push(0);
        }
        let lim = low.magnitude().to_i64().map_or(b, |m| m.min(b));
        for t in 1..=lim {
            if (&low % t).is_zero() {
                for s in [-t, t] {
                    if self.is_root(s) {
                        out.push(s);
                    }
                }
            }
        }
        out.sort_unstable();
        out
    }
}

/// Residue tables for one modulus: bit `r` of `mask[(a·m + b)·m + c]` is set
/// when `F(a, b, c, r) ≡ 0 (mod m)`.
struct SieveTable {
    m: usize,
    mask: Vec<u64>,
    /// `v mod m` for `v` in `[-B, B]`, indexed by `v + B`.
    residues: Vec<u8>,
}

impl SieveTable {
    fn new(f: &SurfaceForm, m: u64, bound: i64) -> Self {
        let mi = m as i64;
        let slices = Slices::new(f, |c| c.mod_floor(&BigInt::from(m)).to_i64().expect("residue"));
        let d = f.degree() as usize;
        let mu = m as usize;
        let mut mask = vec![0u64; mu * mu * mu];
        for a in 0..mi {
            for b in 0..mi {
                for c in 0..mi {
                    let pw = |x: i64| {
                        let mut v = vec![1i64; d + 1];
                        for k in 1..=d {
                            v[k] = v[k - 1] * x % mi;
                        }
                        v
                    };
                    let (pa, pb, pc) = (pw(a), pw(b), pw(c));
                    let coeffs: Vec<i64> = slices
                        .by_power
                        .iter()
                        .map(|terms| {
                            terms.iter().fold(0, |acc, (e, k)| {
                                (acc + k * pa[e[0] as usize] % mi * pb[e[1] as usize] % mi * pc[e[2] as usize]) % mi
                            })
                        })
                        .collect();
                    let mut bits = 0u64;
                    for r in 0..mi {
                        if coeffs.iter().rev().fold(0, |acc, &v| (acc * r + v) % mi) == 0 {
                            bits |= 1 << r;
                        }
                    }
                    mask[((a * mi + b) * mi + c) as usize] = bits;
                }
            }
        }
        let residues = (-bound..=bound).map(|v| v.rem_euclid(mi) as u8).collect();
        SieveTable { m: mu, mask, residues }
    }

    fn triple_mask(&self, idx: [usize; 3]) -> u64 {
        let r = idx.map(|i| self.residues[i] as usize);
        self.mask[(r[0] * self.m + r[1]) * self.m + r[2]]
    }
}

/// All canonical points of height at most `bound` on `F = 0`.
///
/// `sieve` lists the moduli of the residue pre-filter (each in `2..=64`); an
/// empty list disables it and roots are found from divisors of the lowest
/// nonzero coefficient instead. The output never depends on the sieve.
pub fn enumerate_points(f: &SurfaceForm, bound: u64, sieve: &[u64]) -> Result<PointSet, PointsError> {
    if !(1..=MAX_BOUND).contains(&bound) {
        return Err(PointsError::InvalidBound(bound));
    }
    if let Some(&m) = sieve.iter().find(|&&m| !(2..=64).contains(&m)) {
        return Err(PointsError::InvalidSieveModulus(m));
    }
    let b = bound as i64;
    let d = f.degree() as usize;
    let exact = Exact::new(f, bound);
    let tables: Vec<SieveTable> = sieve.iter().map(|&m| SieveTable::new(f, m, b)).collect();

    let roots_for = |x: [i64; 3], out: &mut Vec<[i64; 4]>| {
        let g = x[0].gcd(&x[1]).gcd(&x[2]);
        let idx = x.map(|v| (v + b) as usize);
        let push = |t: i64, out: &mut Vec<[i64; 4]>| {
            if g.gcd(&t) == 1 {
                out.push([x[0], x[1], x[2], t]);
            }
        };
        match tables.split_first() {
            None => {
                for t in exact.slice(x, d).roots_by_divisors(b) {
                    push(t, out);
                }
            }
            Some((first, rest)) => {
                let m0 = first.triple_mask(idx);
                if m0 == 0 {
                    return;
                }
                let masks: Vec<u64> = rest.iter().map(|tb| tb.triple_mask(idx)).collect();
                if masks.contains(&0) {
                    return;
                }
                let poly = exact.slice(x, d);
                let start = out.len();
                let m = first.m as i64;
                for r in 0..m {
                    if m0 >> r & 1 == 0 {
                        continue;
                    }
                    let mut t = -b + (r - (-b)).rem_euclid(m);
                    while t <= b {
                        let ti = (t + b) as usize;
                        let ok = rest
                            .iter()
                            .zip(&masks)
                            .all(|(tb, &mk)| mk >> tb.residues[ti] & 1 == 1);
                        if ok && poly.is_root(t) {
                            push(t, out);
                        }
                        t += m;
                    }
                }
                out[start..].sort_unstable();
            }
        }
    };

    let points = crate::par::flat_map_range(bound as usize + 1, |i| {
        let x0 = i as i64;
        let mut out = Vec::new();
        if x0 == 0 {
            // (0, 0, 0, t) is canonical only for t = 1
            if f.evaluate_at(&[0, 0, 0, 1].map(BigInt::from)).is_zero() {
                out.push([0, 0, 0, 1]);
            }
            for x2 in 1..=b {
                roots_for([0, 0, x2], &mut out);
            }
            for x1 in 1..=b {
                for x2 in -b..=b {
                    roots_for([0, x1, x2], &mut out);
                }
            }
        } else {
            for x1 in -b..=b {
                for x2 in -b..=b {
                    roots_for([x0, x1, x2], &mut out);
                }
            }
        }
        out
    });
    Ok(PointSet { surface_hash: f.hash(), bound, points })
}

/// Index pairs of Plücker coordinates: 01, 02, 03, 12, 13, 23.
pub const PLUCKER_PAIRS: [(usize, usize); 6] = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];

fn plucker_index(i: usize, j: usize) -> usize {
    PLUCKER_PAIRS.iter().position(|&p| p == (i, j)).expect("i < j")
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LineError {
    #[error("the two points coincide")]
    SamePoint,
    #[error("the line is not contained in the surface")]
    NotContained,
}

/// A rational line on the surface, spanned by two of its points.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LineOnSurface {
    pub p: PrimitivePoint,
    pub q: PrimitivePoint,
    /// Primitive, sign-canonical Plücker coordinates in the order of [`PLUCKER_PAIRS`].
    pub plucker: [BigInt; 6],
}

/// Plücker coordinates `p_i q_j − p_j q_i`, canonicalized; `None` if `p ∥ q`.
pub fn plucker(p: &[BigInt; 4], q: &[BigInt; 4]) -> Option<[BigInt; 6]> {
    let mut v: Vec<BigInt> = PLUCKER_PAIRS.iter().map(|&(i, j)| &p[i] * &q[j] - &p[j] * &q[i]).collect();
    canonicalize(&mut v).then(|| v.try_into().expect("six entries"))
}

/// Coefficients of `F(s·p + t·q)`, indexed by the power of `t`.
pub fn binary_form(f: &SurfaceForm, p: &[BigInt; 4], q: &[BigInt; 4]) -> Vec<BigInt> {
    let d = f.degree() as usize;
    let mut out = vec![BigInt::zero(); d + 1];
    for (e, c) in f.coefficients() {
        let mut acc = vec![c.clone()];
        for i in 0..4 {
            for _ in 0..e[i] {
                let mut next = vec![BigInt::zero(); acc.len() + 1];
                for (k, a) in acc.iter().enumerate() {
                    next[k] += a * &p[i];
                    next[k + 1] += a * &q[i];
                }
                acc = next;
            }
        }
        for (k, a) in acc.into_iter().enumerate() {
            out[k] += a;
        }
    }
    out
}

impl LineOnSurface {
    /// The line through `p` and `q`, if it lies on `F = 0`.
    pub fn through(f: &SurfaceForm, p: PrimitivePoint, q: PrimitivePoint) -> Result<Self, LineError> {
        let plucker = plucker(p.coords(), q.coords()).ok_or(LineError::SamePoint)?;
        if !binary_form(f, p.coords(), q.coords()).iter().all(Zero::is_zero) {
            return Err(LineError::NotContained);
        }
        Ok(LineOnSurface { p, q, plucker })
    }

    /// True if `x` lies on the line: every 3×3 minor of `[x; p; q]` vanishes.
    pub fn contains(&self, x: &[BigInt; 4]) -> bool {
        on_line(x, &self.plucker)
    }
}

fn on_line(x: &[BigInt; 4], pl: &[BigInt; 6]) -> bool {
    let pij = |i: usize, j: usize| &pl[plucker_index(i, j)];
    [(0, 1, 2), (0, 1, 3), (0, 2, 3), (1, 2, 3)]
        .iter()
        .all(|&(i, j, k)| (&x[i] * pij(j, k) - &x[j] * pij(i, k) + &x[k] * pij(i, j)).is_zero())
}

fn on_line_small(x: &[i64; 4], pl: &[i128; 6]) -> Option<bool> {
    let pij = |i: usize, j: usize| pl[plucker_index(i, j)];
    for (i, j, k) in [(0, 1, 2), (0, 1, 3), (0, 2, 3), (1, 2, 3)] {
        let v = (x[i] as i128)
            .checked_mul(pij(j, k))?
            .checked_sub((x[j] as i128).checked_mul(pij(i, k))?)?
            .checked_add((x[k] as i128).checked_mul(pij(i, j))?)?;
        if v != 0 {
            return Some(false);
        }
    }
    Some(true)
}

fn small_plucker(pl: &[BigInt; 6]) -> Option<[i128; 6]> {
    let v: Option<Vec<i128>> = pl.iter().map(ToPrimitive::to_i128).collect();
    v.map(|v| v.try_into().expect("six entries"))
}

fn contains_small(pl: &[BigInt; 6], small: &Option<[i128; 6]>, x: &[i64; 4]) -> bool {
    small
        .as_ref()
        .and_then(|s| on_line_small(x, s))
        .unwrap_or_else(|| on_line(&x.map(BigInt::from), pl))
}

/// Lines on `F = 0` through pairs of points of `pts` of height at most
/// `pair_height_bound`, deduplicated by Plücker coordinates and sorted by them.
///
/// A line through `p` lies in the tangent plane at `p`, so pairs with
/// `∇F(p)·q ≠ 0` are skipped without the exact containment check. Each line is
/// reported with its two points of least height (ties broken lexicographically).
pub fn find_lines(f: &SurfaceForm, pts: &PointSet, pair_height_bound: u64) -> Vec<LineOnSurface> {
    let cap = pair_height_bound.min(i64::MAX as u64) as i64;
    let mut small: Vec<[i64; 4]> = pts.coords().iter().filter(|c| height(c) <= cap).copied().collect();
    small.sort_by_key(|c| (height(c), *c));
    let found: Vec<(usize, usize, [BigInt; 6])> = crate::par::flat_map_range(small.len(), |i| {
        let pb = small[i].map(BigInt::from);
        let grad = f.gradient_at_coords(&pb);
        let grad_small: Option<[i128; 4]> = grad
            .iter()
            .map(ToPrimitive::to_i128)
            .collect::<Option<Vec<_>>>()
            .map(|v| v.try_into().expect("four entries"));
        let tangent = |q: &[i64; 4]| -> bool {
            let fast = grad_small.and_then(|g| {
                (0..4).try_fold(0i128, |acc, k| acc.checked_add(g[k].checked_mul(q[k] as i128)?))
            });
            match fast {
                Some(v) => v == 0,
                None => (0..4).map(|k| &grad[k] * q[k]).sum::<BigInt>().is_zero(),
            }
        };
        let mut lines_here: Vec<([BigInt; 6], Option<[i128; 6]>)> = Vec::new();
        let mut out = Vec::new();
        for (j, q) in small.iter().enumerate().skip(i + 1) {
            if !tangent(q) || lines_here.iter().any(|(pl, s)| contains_small(pl, s, q)) {
                continue;
            }
            let qb = q.map(BigInt::from);
            if binary_form(f, &pb, &qb).iter().all(Zero::is_zero) {
                let pl = plucker(&pb, &qb).expect("distinct canonical points");
                lines_here.push((pl.clone(), small_plucker(&pl)));
                out.push((i, j, pl));
            }
        }
        out
    });
    let mut best: std::collections::BTreeMap<[BigInt; 6], (usize, usize)> = std::collections::BTreeMap::new();
    for (i, j, pl) in found {
        let e = best.entry(pl).or_insert((i, j));
        if (i, j) < *e {
            *e = (i, j);
        }
    }
    best.into_iter()
        .map(|(plucker, (i, j))| LineOnSurface {
            p: PrimitivePoint::from_canonical_i64(small[i]),
            q: PrimitivePoint::from_canonical_i64(small[j]),
            plucker,
        })
        .collect()
}

/// The points lying on none of `lines`.
pub fn strip_lines(pts: &PointSet, lines: &[LineOnSurface]) -> PointSet {
    let smalls: Vec<Option<[i128; 6]>> = lines.iter().map(|l| small_plucker(&l.plucker)).collect();
    let keep: Vec<bool> = crate::par::map(pts.coords(), |x| {
        !lines.iter().zip(&smalls).any(|(l, s)| contains_small(&l.plucker, s, x))
    });
    PointSet {
        surface_hash: pts.surface_hash.clone(),
        bound: pts.bound,
        points: pts.coords().iter().zip(keep).filter(|(_, k)| *k).map(|(c, _)| *c).collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::surface::parse_surface;

    fn fermat4() -> SurfaceForm {
        parse_surface("x0^4 + x1^4 - x2^4 - x3^4").unwrap()
    }

    fn naive(f: &SurfaceForm, b: i64) -> Vec<[i64; 4]> {
        let mut out = Vec::new();
        for x0 in -b..=b {
            for x1 in -b..=b {
                for x2 in -b..=b {
                    for x3 in -b..=b {
                        let mut v = [x0, x1, x2, x3];
                        if crate::projective::canonicalize_i64(&mut v)
                            && v == [x0, x1, x2, x3]
                            && f.evaluate_at(&v.map(BigInt::from)).is_zero()
                        {
                            out.push(v);
                        }
                    }
                }
            }
        }
        out.sort();
        out
    }

    #[test]
    fn small_counts() {
        let f = fermat4();
        assert_eq!(enumerate_points(&f, 1, &DEFAULT_SIEVE).unwrap().len(), 16);
        let q = parse_surface("x0^5 + x1^5 + x2^5 + x3^5").unwrap();
        assert_eq!(enumerate_points(&q, 1, &DEFAULT_SIEVE).unwrap().len(), 9);
        assert_eq!(enumerate_points(&f, 0, &[]), Err(PointsError::InvalidBound(0)));
        assert_eq!(enumerate_points(&f, 3, &[65]), Err(PointsError::InvalidSieveModulus(65)));
    }

    #[test]
    fn sieve_and_divisors_agree_with_naive() {
        for s in ["x0^4 + x1^4 - x2^4 - x3^4", "x0^4 - x1^3*x2 + 2*x2^2*x3^2 - x3^4", "x0*x1*x2*x3 - x1^4"] {
            let f = parse_surface(s).unwrap();
            for b in [1, 3, 5] {
                let want = naive(&f, b);
                assert_eq!(enumerate_points(&f, b as u64, &DEFAULT_SIEVE).unwrap().coords(), &want[..], "{s} B={b}");
                assert_eq!(enumerate_points(&f, b as u64, &[]).unwrap().coords(), &want[..], "{s} B={b}");
            }
        }
    }

    #[test]
    fn fermat_quartic_lines() {
        let f = fermat4();
        let pts = enumerate_points(&f, 2, &DEFAULT_SIEVE).unwrap();
        let lines = find_lines(&f, &pts, 2);
        assert_eq!(lines.len(), 8);
        for l in &lines {
            assert!(binary_form(&f, l.p.coords(), l.q.coords()).iter().all(Zero::is_zero));
        }
        let stripped = strip_lines(&pts.restrict(1), &lines);
        assert!(stripped.is_empty());
        assert_eq!(strip_lines(&pts, &[]), pts);
    }

    #[test]
    fn quintic_line() {
        let f = parse_surface("x0^5 + x1^5 + x2^5 + x3^5").unwrap();
        let pts = enumerate_points(&f, 1, &DEFAULT_SIEVE).unwrap();
        let lines = find_lines(&f, &pts, 1);
        let want = plucker(&[1, -1, 0, 0].map(BigInt::from), &[0, 0, 1, -1].map(BigInt::from)).unwrap();
        assert!(lines.iter().any(|l| l.plucker == want));
    }

    #[test]
    fn line_through_rejects() {
        let f = fermat4();
        let p = PrimitivePoint::from_i64([1, 0, 1, 0]).unwrap();
        let q = PrimitivePoint::from_i64([1, 0, 0, 1]).unwrap();
        assert_eq!(LineOnSurface::through(&f, p.clone(), q), Err(LineError::NotContained));
        assert_eq!(LineOnSurface::through(&f, p.clone(), p), Err(LineError::SamePoint));
    }

    #[test]
    fn few_points_no_lines() {
        let f = fermat4();
        let pts = PointSet::new(f.hash(), 1, vec![[1, 0, 1, 0]]);
        assert!(find_lines(&f, &pts, 10).is_empty());
    }

    #[test]
    fn cache_round_trip() {
        let f = fermat4();
        let pts = enumerate_points(&f, 3, &DEFAULT_SIEVE).unwrap();
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("pts.txt");
        pts.write_cache(&path).unwrap();
        let text = fs::read_to_string(&path).unwrap();
        assert!(text.starts_with(&format!("planesect-points v1 {} B=3\n", f.hash())));
        assert_eq!(PointSet::read_cache(&path).unwrap(), pts);
        fs::write(&path, "garbage\n").unwrap();
        assert!(PointSet::read_cache(&path).is_err());
    }
}
