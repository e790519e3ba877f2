//! Geometric genus of an irreducible plane curve:
//! `g = (e−1)(e−2)/2 − Σ m(m−1)/2` over all singular points, infinitely near
//! ones included.
//!
//! A unimodular change of coordinates puts every singular point in the affine
//! chart `r = 1` with pairwise distinct `s`-coordinates and makes the slice
//! monic in `t`. The `s`-coordinates are then roots of
//! `gcd(Res_t(f, f_t), Res_t(f_s, f_t))`; for each irreducible factor `m` the
//! point is found over `K = Q[α]/(m)` and resolved by iterated blow-ups, with
//! conjugate points counted `deg m` times. Branches through non-rational
//! tangent directions are followed in a primitive-element extension.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::Zero;

use super::biv::{self, q, BiQ, QPoly, Q};
use super::factor::factor_ternary;
use super::form::TernaryForm;
use super::SectionError;
use crate::algebra::field::{Field, NumberField};
use crate::algebra::trager::{adjoin_root, embed, factor_over};
use crate::algebra::upoly::PolyRing;
use crate::algebra::zfactor::factor_q;

/// Maximum number of successive blow-ups below a singular point.
pub const MAX_BLOWUP_DEPTH: usize = 12;

/// Coordinate changes tried before giving up.
const MAX_TRANSFORMS: usize = 400;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Genus {
    Value(u32),
    Unresolved,
}

impl fmt::Display for Genus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Genus::Value(g) => write!(f, "{g}"),
            Genus::Unresolved => write!(f, "U"),
        }
    }
}

/// A singular point together with its Galois conjugates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SingularPoint {
    /// Monic irreducible `m(z)`; the point is defined over `Q[z]/(m)`.
    pub field_modulus: Vec<BigRational>,
    /// Projective coordinates `(s : t : r)` as polynomials in `z` modulo `m`.
    pub coords: [Vec<BigRational>; 3],
    /// Number of conjugate points (`deg m`).
    pub conjugates: usize,
    /// Multiplicities of the point and its singular infinitely near points, depth first.
    pub multiplicities: Vec<u32>,
    /// `Σ m(m−1)/2` for one representative; `None` if the blow-up depth cap was hit.
    pub delta: Option<u64>,
}

fn fmt_zpoly(p: &[BigRational]) -> String {
    if p.is_empty() {
        return "0".into();
    }
    let mut out = String::new();
    for (i, c) in p.iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        let neg = c < &BigRational::zero();
        let mag = if neg { -c } else { c.clone() };
        out.push_str(match (out.is_empty(), neg) {
            (true, true) => "-",
            (true, false) => "",
            (false, true) => " - ",
            (false, false) => " + ",
        });
        let one = mag == q(1);
        match i {
            0 => out.push_str(&mag.to_string()),
            1 if one => out.push('z'),
            1 => out.push_str(&format!("{mag}*z")),
            _ if one => out.push_str(&format!("z^{i}")),
            _ => out.push_str(&format!("{mag}*z^{i}")),
        }
    }
    out
}

impl fmt::Display for SingularPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c: Vec<String> = self.coords.iter().map(|x| fmt_zpoly(x)).collect();
        write!(f, "({} : {} : {})", c[0], c[1], c[2])?;
        if self.conjugates > 1 {
            write!(f, " over Q[z]/({})", fmt_zpoly(&self.field_modulus))?;
        }
        let m: Vec<String> = self.multiplicities.iter().map(u32::to_string).collect();
        write!(f, " mult [{}]", m.join(","))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GenusReport {
    pub genus: Genus,
    pub singular_points: Vec<SingularPoint>,
    /// Number of geometric components: 1 unless the curve splits over Q̄ into
    /// conjugate pieces (then each piece is rational and the genus is 0).
    pub geometric_components: u32,
}

/// A polynomial in `x, y` over a field: `c[i][j]` multiplies `x^i y^j`.
#[derive(Clone, Debug)]
struct Local<F: Field> {
    c: Vec<Vec<F::Elem>>,
}

fn binomials(n: usize) -> Vec<Vec<i64>> {
    let mut b = vec![vec![1i64]];
    for i in 1..=n {
        let mut row = vec![1i64; i + 1];
        for j in 1..i {
            row[j] = b[i - 1][j - 1] + b[i - 1][j];
        }
        b.push(row);
    }
    b
}

impl<F: Field> Local<F> {
    fn get(&self, i: usize, j: usize) -> Option<&F::Elem> {
        self.c.get(i).and_then(|r| r.get(j))
    }

    fn dims(&self) -> (usize, usize) {
        (self.c.len(), self.c.iter().map(Vec::len).max().unwrap_or(0))
    }

    fn zeros(k: &F, ni: usize, nj: usize) -> Vec<Vec<F::Elem>> {
        vec![vec![k.zero(); nj]; ni]
    }

    /// `h(x + a, y + b)`.
    fn translate(&self, k: &F, a: &F::Elem, b: &F::Elem) -> Self {
        let (ni, nj) = self.dims();
        let bin = binomials(ni.max(nj));
        let pa: Vec<F::Elem> = (0..ni.max(1)).map(|e| k.pow(a, e as u64)).collect();
        let pb: Vec<F::Elem> = (0..nj.max(1)).map(|e| k.pow(b, e as u64)).collect();
        let mut out = Self::zeros(k, ni, nj);
        for i in 0..ni {
            for j in 0..nj {
                let Some(c) = self.get(i, j) else { continue };
                if k.is_zero(c) {
                    continue;
                }
                for p in 0..=i {
                    let cp = k.mul(c, &k.mul(&k.from_i64(bin[i][p]), &pa[i - p]));
                    for r in 0..=j {
                        let v = k.mul(&cp, &k.mul(&k.from_i64(bin[j][r]), &pb[j - r]));
                        out[p][r] = k.add(&out[p][r], &v);
                    }
                }
            }
        }
        Local { c: out }
    }

    /// `h(x + c·y, y)`.
    fn shear(&self, k: &F, c: i64) -> Self {
        let (ni, nj) = self.dims();
        let bin = binomials(ni);
        let mut out = Self::zeros(k, ni, ni + nj);
        for i in 0..ni {
            for j in 0..nj {
                let Some(v) = self.get(i, j) else { continue };
                if k.is_zero(v) {
                    continue;
                }
                for p in 0..=i {
                    let w = k.mul(v, &k.from_i64(bin[i][p] * c.pow((i - p) as u32)));
                    out[p][j + i - p] = k.add(&out[p][j + i - p], &w);
                }
            }
        }
        Local { c: out }
    }

    /// Lowest total degree of a nonzero term.
    fn order(&self, k: &F) -> Option<usize> {
        let mut best: Option<usize> = None;
        for (i, row) in self.c.iter().enumerate() {
            for (j, v) in row.iter().enumerate() {
                if !k.is_zero(v) {
                    best = Some(best.map_or(i + j, |b| b.min(i + j)));
                }
            }
        }
        best
    }

    /// Coefficients of the tangent cone `T(x, y)`: entry `j` multiplies `x^{m−j} y^j`.
    fn tangent_cone(&self, k: &F, m: usize) -> Vec<F::Elem> {
        (0..=m).map(|j| self.get(m - j, j).cloned().unwrap_or_else(|| k.zero())).collect()
    }

    /// Strict transform `h(x, x·y)/x^m` in the chart `y = x·y1`.
    fn blow_up(&self, k: &F, m: usize) -> Self {
        let (ni, nj) = self.dims();
        let mut out = Self::zeros(k, (ni + nj).saturating_sub(m).max(1), nj);
        for i in 0..ni {
            for j in 0..nj {
                let Some(v) = self.get(i, j) else { continue };
                if k.is_zero(v) {
                    continue;
                }
                out[i + j - m][j] = v.clone();
            }
        }
        Local { c: out }
    }
}

fn map_local(src: &Local<NumberField>, target: &NumberField, alpha: &[BigRational]) -> Local<NumberField> {
    Local {
        c: src
            .c
            .iter()
            .map(|row| row.iter().map(|v| embed(target, &alpha.to_vec(), v)).collect())
            .collect(),
    }
}

/// `Σ m(m−1)/2` over the point at the origin and its infinitely near points.
fn local_delta(k: &NumberField, h: &Local<NumberField>, depth: usize, mults: &mut Vec<u32>) -> Option<u64> {
    let m = h.order(k).expect("a reduced curve is not identically zero");
    if m <= 1 {
        return Some(0);
    }
    if depth >= MAX_BLOWUP_DEPTH {
        return None;
    }
    mults.push(m as u32);
    let mut h = h.clone();
    let cone = h.tangent_cone(k, m);
    if k.is_zero(&cone[m]) {
        let r = PolyRing::new(k.clone());
        // T(x, 1) as a polynomial in x: coefficient of x^{m−j} is cone[j]
        let tx: Vec<_> = r.trim(cone.iter().rev().cloned().collect());
        let c = (1i64..).find(|&c| !k.is_zero(&r.eval(&tx, &k.from_i64(c)))).expect("nonzero cone");
        h = h.shear(k, c);
    }
    let h1 = h.blow_up(k, m);
    let r = PolyRing::new(k.clone());
    let t1 = r.trim(h1.c[0].clone());
    let mut total = (m * (m - 1) / 2) as u64;
    for (part, mult) in r.squarefree_decomposition(&t1) {
        if mult < 2 {
            continue;
        }
        for p in factor_over(k, &part) {
            if p.len() == 2 {
                let root = k.neg(&p[0]);
                let h2 = h1.translate(k, &k.zero(), &root);
                total += local_delta(k, &h2, depth + 1, mults)?;
            } else {
                let ext = adjoin_root(k, &p);
                let lifted = map_local(&h1, &ext.field, &ext.alpha);
                let h2 = lifted.translate(&ext.field, &ext.field.zero(), &ext.root);
                total += (p.len() as u64 - 1) * local_delta(&ext.field, &h2, depth + 1, mults)?;
            }
        }
    }
    Some(total)
}

/// Integer quadruples `(a, b, c, d)` with `c·d ≠ 1`, ordered by max norm, then lexicographically.
fn small_quadruples() -> impl Iterator<Item = [i64; 4]> {
    (0i64..).flat_map(|n| {
        let mut v = Vec::new();
        let r = || -n..=n;
        for a in r() {
            for b in r() {
                for c in r() {
                    for d in r() {
                        if [a, b, c, d].iter().map(|x| x.abs()).max() == Some(n) && c * d != 1 {
                            v.push([a, b, c, d]);
                        }
                    }
                }
            }
        }
        v
    })
}

/// `s → s + a·t + c·r`, `t → t`, `r → r + b·t + d·s`; determinant `1 − c·d`.
fn chart_matrix([a, b, c, d]: [i64; 4]) -> [[BigInt; 3]; 3] {
    let z = BigInt::zero;
    let o = || BigInt::from(1);
    [
        [o(), BigInt::from(a), BigInt::from(c)],
        [z(), o(), z()],
        [BigInt::from(d), BigInt::from(b), o()],
    ]
}

/// Restriction of a form to `r = 0, t = 1`, as a polynomial in `s`.
fn at_infinity(m: &std::collections::BTreeMap<[u32; 3], BigInt>) -> QPoly {
    let mut out = Vec::new();
    for (e, c) in m.iter().filter(|(e, _)| e[2] == 0) {
        let i = e[0] as usize;
        if out.len() <= i {
            out.resize(i + 1, BigRational::zero());
        }
        out[i] += BigRational::from_integer(c.clone());
    }
    Q.trim(out)
}

fn singular_at_infinity(c: &TernaryForm) -> bool {
    let forms: Vec<_> = std::iter::once(c.coefficients().clone()).chain((0..3).map(|i| c.partial_map(i))).collect();
    let g = forms.iter().fold(Vec::new(), |g: QPoly, m| Q.gcd(&g, &at_infinity(m)));
    if g.len() > 1 {
        return true;
    }
    // the point (1 : 0 : 0)
    forms.iter().all(|m| m.iter().all(|(e, v)| e[0] as usize != e.iter().sum::<u32>() as usize || v.is_zero()))
}

/// `Res_t(a(s0, t), b(s0, t))` interpolated in `s` from `deg + 1` values.
fn resultant_in_s(a: &BiQ, formal_a: usize, b: &BiQ, deg: usize) -> QPoly {
    let xs: Vec<BigRational> = (0..=deg as i64).map(q).collect();
    let ys: Vec<BigRational> = xs
        .iter()
        .map(|x| Q.resultant_formal(&biv::eval_s(a, x), formal_a, &biv::eval_s(b, x)))
        .collect();
    Q.interpolate(&xs, &ys)
}

/// Scales rational projective coordinates to a primitive integer vector with
/// first nonzero entry positive.
fn primitive_rational(c: [Vec<BigRational>; 3]) -> [Vec<BigRational>; 3] {
    let vals: Vec<BigRational> = c.iter().map(|v| v.first().cloned().unwrap_or_else(BigRational::zero)).collect();
    let l = vals.iter().fold(BigInt::from(1), |l, v| l.lcm(v.denom()));
    let mut ints: Vec<BigInt> = vals.iter().map(|v| (v * BigRational::from_integer(l.clone())).to_integer()).collect();
    crate::projective::canonicalize(&mut ints);
    let out: Vec<Vec<BigRational>> = ints
        .into_iter()
        .map(|n| if n.is_zero() { Vec::new() } else { vec![BigRational::from_integer(n)] })
        .collect();
    [out[0].clone(), out[1].clone(), out[2].clone()]
}

enum Attempt {
    Retry,
    Done(Vec<SingularPoint>),
}

fn try_chart(c: &TernaryForm, abcd: [i64; 4]) -> Attempt {
    let e = c.degree() as usize;
    let m = chart_matrix(abcd);
    let Some(cp) = c.transform(&m) else { return Attempt::Retry };
    if cp.coefficient(&[0, e as u32, 0]).is_zero() || singular_at_infinity(&cp) {
        return Attempt::Retry;
    }
    let f = biv::dehomogenize(cp.coefficients());
    let (fs, ft) = (biv::d_s(&f), biv::d_t(&f));
    let bound = e * (e - 1);
    let r1 = resultant_in_s(&f, e, &ft, bound);
    let r2 = resultant_in_s(&fs, e - 1, &ft, bound);
    let p = if r2.is_empty() { Q.squarefree_part(&r1) } else { Q.squarefree_part(&Q.gcd(&r1, &r2)) };
    let mut points = Vec::new();
    if p.len() <= 1 {
        return Attempt::Done(points);
    }
    for (mz, _) in factor_q(&p) {
        let k = NumberField::new(mz.clone());
        let rk = PolyRing::new(k.clone());
        let at = |g: &BiQ| -> Vec<Vec<BigRational>> { rk.trim(g.iter().map(|row| k.reduce(row.clone())).collect()) };
        let g = rk.squarefree_part(&rk.gcd(&rk.gcd(&at(&f), &at(&fs)), &at(&ft)));
        match g.len() {
            0 | 1 => continue,
            2 => {}
            _ => return Attempt::Retry,
        }
        let alpha = k.generator();
        let beta = k.neg(&g[0]);
        let (ni, nj) = (f.iter().map(Vec::len).max().unwrap_or(0), f.len());
        let mut local = Local::<NumberField> { c: vec![vec![k.zero(); nj]; ni] };
        for (j, row) in f.iter().enumerate() {
            for (i, v) in row.iter().enumerate() {
                local.c[i][j] = k.from_rational(v.clone());
            }
        }
        let centered = local.translate(&k, &alpha, &beta);
        let mut mults = Vec::new();
        let delta = local_delta(&k, &centered, 0, &mut mults);
        // original coordinates: M·(α, β, 1)
        let lin = |row: &[BigInt; 3]| {
            let terms = [&alpha, &beta, &k.one()];
            row.iter().zip(terms).fold(k.zero(), |acc, (w, x)| {
                k.add(&acc, &k.mul(&k.from_rational(BigRational::from_integer(w.clone())), x))
            })
        };
        let mut coords = [lin(&m[0]), lin(&m[1]), lin(&m[2])];
        if k.degree() == 1 {
            coords = primitive_rational(coords);
        }
        points.push(SingularPoint {
            field_modulus: mz,
            coords,
            conjugates: k.degree(),
            multiplicities: mults,
            delta,
        });
    }
    Attempt::Done(points)
}

/// Genus of a form already known to be irreducible over Q.
pub(crate) fn genus_of_irreducible(c: &TernaryForm) -> GenusReport {
    let e = c.degree() as i64;
    if e <= 1 {
        return GenusReport { genus: Genus::Value(0), singular_points: Vec::new(), geometric_components: 1 };
    }
    for abcd in small_quadruples().take(MAX_TRANSFORMS) {
        let Attempt::Done(points) = try_chart(c, abcd) else { continue };
        let mut defect = 0i64;
        for p in &points {
            match p.delta {
                Some(d) => defect += d as i64 * p.conjugates as i64,
                None => {
                    return GenusReport { genus: Genus::Unresolved, singular_points: points, geometric_components: 1 }
                }
            }
        }
        let value = (e - 1) * (e - 2) / 2 - defect;
        let (genus, components) = if value < 0 { (0, 1 - value) } else { (value, 1) };
        return GenusReport {
            genus: Genus::Value(genus as u32),
            singular_points: points,
            geometric_components: components as u32,
        };
    }
    GenusReport { genus: Genus::Unresolved, singular_points: Vec::new(), geometric_components: 1 }
}

/// Geometric genus of an irreducible ternary form of degree at most 5.
pub fn genus(c: &TernaryForm) -> Result<GenusReport, SectionError> {
    let f = factor_ternary(c)?;
    if f.len() != 1 || f[0].1 != 1 {
        return Err(SectionError::NotIrreducible);
    }
    Ok(genus_of_irreducible(c))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(s: &str) -> Genus {
        genus(&TernaryForm::parse(s).unwrap()).unwrap().genus
    }

    #[test]
    fn smooth_curves() {
        assert_eq!(g("s^2 + t^2 - r^2"), Genus::Value(0));
        assert_eq!(g("s^3 + t^3 + r^3"), Genus::Value(1));
        assert_eq!(g("s^4 + t^4 - r^4"), Genus::Value(3));
        assert_eq!(g("s^5 + t^5 + r^5"), Genus::Value(6));
    }

    #[test]
    fn nodal_and_cuspidal() {
        assert_eq!(g("t^2*r - s^3 - s^2*r"), Genus::Value(0));
        assert_eq!(g("t^2*r - s^3"), Genus::Value(0));
        let rep = genus(&TernaryForm::parse("t^2*r^3 - s^5").unwrap()).unwrap();
        assert_eq!(rep.genus, Genus::Value(0));
        let mut mults: Vec<Vec<u32>> = rep.singular_points.iter().map(|p| p.multiplicities.clone()).collect();
        mults.sort();
        assert_eq!(mults, vec![vec![2, 2], vec![3, 2]]);
    }

    #[test]
    fn higher_singularities() {
        // y^2 = x^4 + 1 type: tacnode-free genus 1 quartic with a singular point at infinity
        assert_eq!(g("t^2*r^2 - s^4 - r^4"), Genus::Value(1));
        assert_eq!(g("t^2*r^3 - s^5 - r^5"), Genus::Value(2));
    }

    #[test]
    fn conjugate_lines_pair() {
        let rep = genus(&TernaryForm::parse("t^2 + r^2").unwrap()).unwrap();
        assert_eq!(rep.genus, Genus::Value(0));
        assert_eq!(rep.geometric_components, 2);
    }

    #[test]
    fn reducible_rejected() {
        assert_eq!(genus(&TernaryForm::parse("t^2 - r^2").unwrap()), Err(SectionError::NotIrreducible));
    }
}
