//! Factoring over a number field (Trager's norm method) and adjoining roots.

use num_rational::BigRational;
use num_traits::Zero;

use super::field::{Field, NumberField, Rationals};
use super::upoly::{Poly, PolyRing};
use super::zfactor::factor_q;

type Elem = Vec<BigRational>;

const Q: PolyRing<Rationals> = PolyRing { field: Rationals };

/// The norm `N_{K/Q}(a)`, computed as `Res_z(m, a)` with `m` monic.
pub fn norm(k: &NumberField, a: &Elem) -> BigRational {
    if a.is_empty() {
        return BigRational::zero();
    }
    Q.resultant(k.modulus(), a)
}

fn rational(n: i64) -> BigRational {
    BigRational::from_integer(n.into())
}

/// `q(y − c·α)` for `q ∈ K[y]`.
fn shift(k: &NumberField, q: &Poly<NumberField>, c: i64) -> Poly<NumberField> {
    let r = PolyRing::new(k.clone());
    let lin = vec![k.mul(&k.from_i64(-c), &k.generator()), k.one()];
    r.compose(q, &lin)
}

/// `N_{K/Q}(q)` for monic `q ∈ K[y]`, by evaluation at integers and interpolation.
pub fn norm_poly(k: &NumberField, q: &Poly<NumberField>) -> Vec<BigRational> {
    let r = PolyRing::new(k.clone());
    let n = (q.len() - 1) * k.degree();
    let xs: Vec<BigRational> = (0..=n as i64).map(rational).collect();
    let ys: Vec<BigRational> = xs
        .iter()
        .map(|x| norm(k, &r.eval(q, &k.from_rational(x.clone()))))
        .collect();
    Q.interpolate(&xs, &ys)
}

/// The first shift `c ≥ 0` for which `N(q(y − cα))` is squarefree, with that norm.
fn squarefree_norm(k: &NumberField, q: &Poly<NumberField>) -> (i64, Poly<NumberField>, Vec<BigRational>) {
    for c in 0.. {
        let qc = shift(k, q, c);
        let n = norm_poly(k, &qc);
        if Q.is_squarefree(&n) {
            return (c, qc, n);
        }
    }
    unreachable!("some shift gives a squarefree norm")
}

/// Monic irreducible factors over `K` of a squarefree `q ∈ K[y]` of positive degree.
pub fn factor_over(k: &NumberField, q: &Poly<NumberField>) -> Vec<Poly<NumberField>> {
    let r = PolyRing::new(k.clone());
    let q = r.monic(q);
    if q.len() <= 2 {
        return vec![q];
    }
    let (c, _, n) = squarefree_norm(k, &q);
    let factors = factor_q(&n);
    if factors.len() == 1 {
        return vec![q];
    }
    let back = vec![k.mul(&k.from_i64(c), &k.generator()), k.one()];
    factors
        .into_iter()
        .map(|(ni, _)| {
            let lifted: Poly<NumberField> = ni.into_iter().map(|x| k.from_rational(x)).collect();
            r.gcd(&q, &r.compose(&lifted, &back))
        })
        .filter(|g| g.len() > 1)
        .collect()
}

/// The field `K(β)` for a root `β` of an irreducible `p ∈ K[y]`, presented as
/// `Q(γ)`, with the images of `α` and `β`.
#[derive(Clone, Debug)]
pub struct Extension {
    pub field: NumberField,
    pub alpha: Elem,
    pub root: Elem,
}

pub fn adjoin_root(k: &NumberField, p: &Poly<NumberField>) -> Extension {
    let (c, _, n) = squarefree_norm(k, &PolyRing::new(k.clone()).monic(p));
    let l = NumberField::new(n);
    let rl = PolyRing::new(l.clone());
    let gamma = l.generator();
    // z = α is the unique common root of m(z) and p(z, γ − c·z) over L.
    let y = vec![gamma.clone(), l.from_i64(-c)];
    let mut pz: Poly<NumberField> = Vec::new();
    for coeff in p.iter().rev() {
        let cz: Poly<NumberField> = rl.trim(coeff.iter().map(|x| l.from_rational(x.clone())).collect());
        pz = rl.add(&rl.mul(&pz, &y), &cz);
    }
    let mz: Poly<NumberField> = k.modulus().iter().map(|x| l.from_rational(x.clone())).collect();
    let g = rl.gcd(&mz, &pz);
    assert_eq!(g.len(), 2, "primitive element shift must separate conjugates");
    let alpha = l.neg(&g[0]);
    let root = l.sub(&gamma, &l.mul(&l.from_i64(c), &alpha));
    Extension { field: l, alpha, root }
}

/// Image of `a ∈ K` in an extension where `α ↦ alpha`.
pub fn embed(target: &NumberField, alpha: &Elem, a: &Elem) -> Elem {
    a.iter().rev().fold(target.zero(), |acc, c| {
        target.add(&target.mul(&acc, alpha), &target.from_rational(c.clone()))
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k_sqrt2() -> NumberField {
        NumberField::new(vec![rational(-2), rational(0), rational(1)])
    }

    #[test]
    fn norm_of_sqrt_two_plus_one() {
        let k = k_sqrt2();
        let a = k.add(&k.generator(), &k.one());
        assert_eq!(norm(&k, &a), rational(-1));
    }

    #[test]
    fn y4_minus_4_over_sqrt2() {
        // y^4 − 4 = (y − √2)(y + √2)(y^2 + 2)
        let k = k_sqrt2();
        let q: Poly<NumberField> =
            vec![k.from_i64(-4), k.zero(), k.zero(), k.zero(), k.one()];
        let mut f = factor_over(&k, &q);
        f.sort_by_key(|p| p.len());
        assert_eq!(f.len(), 3);
        assert_eq!(f[2].len(), 3);
        let r = PolyRing::new(k.clone());
        let prod = f.iter().fold(vec![k.one()], |a, p| r.mul(&a, p));
        assert_eq!(prod, q);
    }

    #[test]
    fn adjoin_sqrt3_to_sqrt2() {
        let k = k_sqrt2();
        let p: Poly<NumberField> = vec![k.from_i64(-3), k.zero(), k.one()];
        let ext = adjoin_root(&k, &p);
        let l = &ext.field;
        assert_eq!(l.degree(), 4);
        assert_eq!(l.mul(&ext.alpha, &ext.alpha), l.from_i64(2));
        assert_eq!(l.mul(&ext.root, &ext.root), l.from_i64(3));
        let e = embed(l, &ext.alpha, &k.add(&k.generator(), &k.one()));
        assert_eq!(e, l.add(&ext.alpha, &l.one()));
    }
}
