//! Dense univariate polynomials over a [`Field`].
//!
//! A polynomial is a `Vec` of coefficients, lowest degree first, with no
//! trailing zeros; the zero polynomial is the empty vector.

use super::field::Field;

/// Polynomial arithmetic over a fixed coefficient field.
#[derive(Clone, Debug)]
pub struct PolyRing<F: Field> {
    pub field: F,
}

pub type Poly<F> = Vec<<F as Field>::Elem>;

impl<F: Field> PolyRing<F> {
    pub fn new(field: F) -> Self {
        PolyRing { field }
    }

    pub fn trim(&self, mut a: Poly<F>) -> Poly<F> {
        while a.last().is_some_and(|c| self.field.is_zero(c)) {
            a.pop();
        }
        a
    }

    pub fn degree(&self, a: &[F::Elem]) -> Option<usize> {
        a.len().checked_sub(1)
    }

    pub fn constant(&self, c: F::Elem) -> Poly<F> {
        self.trim(vec![c])
    }

    /// The monomial `c·y^k`.
    pub fn monomial(&self, c: F::Elem, k: usize) -> Poly<F> {
        let mut v = vec![self.field.zero(); k];
        v.push(c);
        self.trim(v)
    }

    pub fn add(&self, a: &[F::Elem], b: &[F::Elem]) -> Poly<F> {
        let k = &self.field;
        let n = a.len().max(b.len());
        let out = (0..n)
            .map(|i| match (a.get(i), b.get(i)) {
                (Some(x), Some(y)) => k.add(x, y),
                (Some(x), None) => x.clone(),
                (None, Some(y)) => y.clone(),
                (None, None) => unreachable!(),
            })
            .collect();
        self.trim(out)
    }

    pub fn neg(&self, a: &[F::Elem]) -> Poly<F> {
        a.iter().map(|c| self.field.neg(c)).collect()
    }

    pub fn sub(&self, a: &[F::Elem], b: &[F::Elem]) -> Poly<F> {
        self.add(a, &self.neg(b))
    }

    pub fn scale(&self, a: &[F::Elem], c: &F::Elem) -> Poly<F> {
        if self.field.is_zero(c) {
            return Vec::new();
        }
        self.trim(a.iter().map(|x| self.field.mul(x, c)).collect())
    }

    pub fn mul(&self, a: &[F::Elem], b: &[F::Elem]) -> Poly<F> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let k = &self.field;
        let mut out = vec![k.zero(); a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            if k.is_zero(x) {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                out[i + j] = k.add(&out[i + j], &k.mul(x, y));
            }
        }
        self.trim(out)
    }

    pub fn pow(&self, a: &[F::Elem], e: usize) -> Poly<F> {
        let mut acc = vec![self.field.one()];
        for _ in 0..e {
            acc = self.mul(&acc, a);
        }
        acc
    }

    pub fn leading(&self, a: &[F::Elem]) -> F::Elem {
        a.last().cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn monic(&self, a: &[F::Elem]) -> Poly<F> {
        match a.last() {
            None => Vec::new(),
            Some(l) => self.scale(a, &self.field.inv(l)),
        }
    }

    /// Quotient and remainder. Panics when dividing by zero.
    pub fn divrem(&self, a: &[F::Elem], b: &[F::Elem]) -> (Poly<F>, Poly<F>) {
        assert!(!b.is_empty(), "polynomial division by zero");
        let k = &self.field;
        let mut r = a.to_vec();
        if r.len() < b.len() {
            return (Vec::new(), r);
        }
        let lead_inv = k.inv(b.last().expect("nonzero"));
        let mut q = vec![k.zero(); r.len() - b.len() + 1];
        while r.len() >= b.len() {
            let shift = r.len() - b.len();
            let c = k.mul(r.last().expect("nonempty"), &lead_inv);
            for (i, y) in b.iter().enumerate() {
                r[shift + i] = k.sub(&r[shift + i], &k.mul(&c, y));
            }
            q[shift] = c;
            r.pop();
            r = self.trim(r);
        }
        (self.trim(q), r)
    }

    pub fn rem(&self, a: &[F::Elem], b: &[F::Elem]) -> Poly<F> {
        self.divrem(a, b).1
    }

    pub fn quo(&self, a: &[F::Elem], b: &[F::Elem]) -> Poly<F> {
        self.divrem(a, b).0
    }

    /// Exact division; `None` if `b` does not divide `a`.
    pub fn div_exact(&self, a: &[F::Elem], b: &[F::Elem]) -> Option<Poly<F>> {
        let (q, r) = self.divrem(a, b);
        r.is_empty().then_some(q)
    }

    /// Monic gcd (zero if both inputs are zero).
    pub fn gcd(&self, a: &[F::Elem], b: &[F::Elem]) -> Poly<F> {
        let mut x = a.to_vec();
        let mut y = b.to_vec();
        while !y.is_empty() {
            let r = self.rem(&x, &y);
            x = y;
            y = r;
        }
        self.monic(&x)
    }

    /// `(g, s, t)` with `s·a + t·b = g`, `g` the monic gcd.
    pub fn ext_gcd(&self, a: &[F::Elem], b: &[F::Elem]) -> (Poly<F>, Poly<F>, Poly<F>) {
        let k = &self.field;
        let (mut r0, mut r1) = (a.to_vec(), b.to_vec());
        let (mut s0, mut s1) = (vec![k.one()], Vec::new());
        let (mut t0, mut t1) = (Vec::new(), vec![k.one()]);
        while !r1.is_empty() {
            let (q, r) = self.divrem(&r0, &r1);
            let s = self.sub(&s0, &self.mul(&q, &s1));
            let t = self.sub(&t0, &self.mul(&q, &t1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s);
            t0 = std::mem::replace(&mut t1, t);
        }
        match r0.last() {
            None => (r0, s0, t0),
            Some(l) => {
                let li = k.inv(l);
                (self.scale(&r0, &li), self.scale(&s0, &li), self.scale(&t0, &li))
            }
        }
    }

    pub fn derivative(&self, a: &[F::Elem]) -> Poly<F> {
        let k = &self.field;
        self.trim(
            a.iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| k.mul(c, &k.from_i64(i as i64)))
                .collect(),
        )
    }

    pub fn eval(&self, a: &[F::Elem], x: &F::Elem) -> F::Elem {
        let k = &self.field;
        a.iter().rev().fold(k.zero(), |acc, c| k.add(&k.mul(&acc, x), c))
    }

    /// `a(b(y))`.
    pub fn compose(&self, a: &[F::Elem], b: &[F::Elem]) -> Poly<F> {
        a.iter()
            .rev()
            .fold(Vec::new(), |acc, c| self.add(&self.mul(&acc, b), std::slice::from_ref(c)))
    }

    /// `base^e mod m` by square and multiply.
    pub fn pow_mod(&self, base: &[F::Elem], mut e: u128, m: &[F::Elem]) -> Poly<F> {
        let mut acc = self.rem(&[self.field.one()], m);
        let mut b = self.rem(base, m);
        while e > 0 {
            if e & 1 == 1 {
                acc = self.rem(&self.mul(&acc, &b), m);
            }
            b = self.rem(&self.mul(&b, &b), m);
            e >>= 1;
        }
        acc
    }

    /// True if `gcd(a, a') = 1`. Valid in any characteristic for separability.
    pub fn is_squarefree(&self, a: &[F::Elem]) -> bool {
        self.gcd(a, &self.derivative(a)).len() <= 1
    }

    /// Yun's algorithm (characteristic zero): monic `a_i` with `a = c·∏ a_i^i`.
    /// Only factors of positive degree are returned.
    pub fn squarefree_decomposition(&self, a: &[F::Elem]) -> Vec<(Poly<F>, usize)> {
        let mut out = Vec::new();
        if a.len() <= 1 {
            return out;
        }
        let a = self.monic(a);
        let da = self.derivative(&a);
        let mut g = self.gcd(&a, &da);
        let mut b = self.quo(&a, &g);
        let mut c = self.quo(&da, &g);
        let mut d = self.sub(&c, &self.derivative(&b));
        let mut i = 1;
        while b.len() > 1 {
            g = self.gcd(&b, &d);
            if g.len() > 1 {
                out.push((g.clone(), i));
            }
            b = self.quo(&b, &g);
            c = self.quo(&d, &g);
            d = self.sub(&c, &self.derivative(&b));
            i += 1;
        }
        out
    }

    pub fn squarefree_part(&self, a: &[F::Elem]) -> Poly<F> {
        if a.len() <= 1 {
            return self.monic(a);
        }
        let g = self.gcd(a, &self.derivative(a));
        self.monic(&self.quo(a, &g))
    }

    /// The polynomial of degree below `xs.len()` taking the values `ys` at the
    /// distinct nodes `xs` (Newton divided differences).
    pub fn interpolate(&self, xs: &[F::Elem], ys: &[F::Elem]) -> Poly<F> {
        let k = &self.field;
        assert_eq!(xs.len(), ys.len());
        let mut coef = ys.to_vec();
        for j in 1..xs.len() {
            for i in (j..xs.len()).rev() {
                let num = k.sub(&coef[i], &coef[i - 1]);
                coef[i] = k.div(&num, &k.sub(&xs[i], &xs[i - j]));
            }
        }
        let mut out: Poly<F> = Vec::new();
        for i in (0..xs.len()).rev() {
            out = self.mul(&out, &[k.neg(&xs[i]), k.one()]);
            out = self.add(&out, &[coef[i].clone()]);
        }
        out
    }

    /// Resultant of `a` and `b` with respect to their actual degrees.
    pub fn resultant(&self, a: &[F::Elem], b: &[F::Elem]) -> F::Elem {
        let k = &self.field;
        if a.is_empty() || b.is_empty() {
            return k.zero();
        }
        let (da, db) = (a.len() - 1, b.len() - 1);
        if db == 0 {
            return k.pow(&b[0], da as u64);
        }
        if da == 0 {
            return k.pow(&a[0], db as u64);
        }
        let r = self.rem(a, b);
        if r.is_empty() {
            return k.zero();
        }
        let dr = r.len() - 1;
        // res(a, b) = (-1)^{da·db} · lc(b)^{da - dr} · res(b, r)
        let mut out = k.mul(&k.pow(&b[db], (da - dr) as u64), &self.resultant(b, &r));
        if da * db % 2 == 1 {
            out = k.neg(&out);
        }
        out
    }

    /// Resultant with `a` taken at formal degree `formal_a` (its top
    /// coefficients may vanish); `b` must have nonzero leading coefficient.
    pub fn resultant_formal(&self, a: &[F::Elem], formal_a: usize, b: &[F::Elem]) -> F::Elem {
        let k = &self.field;
        assert!(!b.is_empty(), "second argument must be nonzero");
        let db = b.len() - 1;
        if a.is_empty() {
            return if db == 0 && formal_a == 0 { k.one() } else if db == 0 { k.pow(&b[0], formal_a as u64) } else { k.zero() };
        }
        let da = a.len() - 1;
        assert!(da <= formal_a, "formal degree below actual degree");
        let drop = formal_a - da;
        let mut out = k.mul(&k.pow(&b[db], drop as u64), &self.resultant(a, b));
        if drop * db % 2 == 1 {
            out = k.neg(&out);
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::super::field::{PrimeField, Rationals};
    use super::*;
    use num_rational::BigRational;

    fn qp(c: &[i64]) -> Vec<BigRational> {
        let r = PolyRing::new(Rationals);
        r.trim(c.iter().map(|&x| BigRational::from_integer(x.into())).collect())
    }

    #[test]
    fn divrem_and_gcd() {
        let r = PolyRing::new(Rationals);
        // (y - 1)(y + 2) and (y - 1)(y - 3)
        let a = qp(&[-2, 1, 1]);
        let b = qp(&[3, -4, 1]);
        assert_eq!(r.gcd(&a, &b), qp(&[-1, 1]));
        let (g, s, t) = r.ext_gcd(&a, &b);
        assert_eq!(r.add(&r.mul(&s, &a), &r.mul(&t, &b)), g);
    }

    #[test]
    fn yun_decomposition() {
        let r = PolyRing::new(Rationals);
        // (y - 1)^2 (y + 1)^3 y
        let f = r.mul(&r.mul(&r.pow(&qp(&[-1, 1]), 2), &r.pow(&qp(&[1, 1]), 3)), &qp(&[0, 1]));
        let d = r.squarefree_decomposition(&f);
        assert_eq!(d, vec![(qp(&[0, 1]), 1), (qp(&[-1, 1]), 2), (qp(&[1, 1]), 3)]);
        assert_eq!(r.squarefree_part(&f), qp(&[0, -1, 0, 1]));
    }

    #[test]
    fn resultant_matches_root_product() {
        let r = PolyRing::new(Rationals);
        // res(y^2 - 2, y - 3) = (3^2 - 2) up to sign convention: res(a, b) = lc(a)^deg b ∏ b(roots of a)
        let a = qp(&[-2, 0, 1]);
        let b = qp(&[-3, 1]);
        // ∏ over roots ±√2 of (r - 3) = (√2 - 3)(-√2 - 3) = 7
        assert_eq!(r.resultant(&a, &b), BigRational::from_integer(7.into()));
        // res(b, a) = (-1)^{2} res(a, b)
        assert_eq!(r.resultant(&b, &a), BigRational::from_integer(7.into()));
        // formal degree 3 for `b` seen as 0·y^3 + 0·y^2 + y - 3
        let rf = r.resultant_formal(&b, 3, &a);
        // extra factor lc(a)^2 = 1, sign (-1)^{2·2} = 1
        assert_eq!(rf, BigRational::from_integer(7.into()));
    }

    #[test]
    fn prime_field_squarefree() {
        let r = PolyRing::new(PrimeField::new(5));
        // y^5 - y splits into distinct linear factors mod 5
        let f = vec![0, 4, 0, 0, 0, 1];
        assert!(r.is_squarefree(&f));
        let g = r.mul(&[1, 1], &[1, 1]);
        assert!(!r.is_squarefree(&g));
        assert_eq!(r.pow_mod(&[0, 1], 5, &f), vec![0, 1]);
    }

    #[test]
    fn interpolation_recovers_cubic() {
        let r = PolyRing::new(Rationals);
        let f = qp(&[5, -1, 0, 2]);
        let xs: Vec<_> = (0..4).map(|i| BigRational::from_integer(i.into())).collect();
        let ys: Vec<_> = xs.iter().map(|x| r.eval(&f, x)).collect();
        assert_eq!(r.interpolate(&xs, &ys), f);
    }
}
