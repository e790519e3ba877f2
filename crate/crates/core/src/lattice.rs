//! Orthogonal lattices, exact LLL reduction, and the covering plane of a point.
//!
//! The planes through a primitive point `x` are the nonzero vectors of the
//! rank-3 lattice `{a ∈ Z⁴ : a·x = 0}`, whose determinant is `‖x‖₂`. Minkowski
//! puts a vector of sup norm `O(H(x)^{1/3})` in it, and LLL followed by a short
//! exhaustive search finds the plane of least height exactly.
//!
//! All routines are generic over [`LatticeInt`] so that small inputs run on
//! `i128` and large ones fall back to `BigInt` with the same code.

use std::fmt::Debug;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

use crate::par;
use crate::projective::{PrimitivePlane, PrimitivePoint};

/// Effective covering constant: every point gets a plane of height
/// `≤ COVERING_CONSTANT · H(x)^{1/3}`.
pub const COVERING_CONSTANT: u64 = 4;

/// Largest point height handled on the `i128` path. Integral LLL intermediates
/// stay below `2^110` for kernel bases of such points.
const I128_HEIGHT_LIMIT: u64 = 1 << 12;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LatticeError {
    #[error("height bound must be at least 1")]
    InvalidBound,
    #[error("LLL parameter must lie strictly between 1/4 and 1")]
    InvalidDelta,
    #[error("basis vectors are linearly dependent")]
    DependentBasis,
}

/// Integer types the lattice routines run on.
pub trait LatticeInt: Clone + Ord + Debug + Integer + Signed + From<i64> {}
impl<T: Clone + Ord + Debug + Integer + Signed + From<i64>> LatticeInt for T {}

/// A basis of the full orthogonal lattice of a point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrthogonalLatticeBasis {
    vectors: [[BigInt; 4]; 3],
    gram_det: BigInt,
}

impl OrthogonalLatticeBasis {
    /// Builds the basis from raw vectors, computing the Gram determinant.
    /// The caller guarantees the vectors are independent.
    pub fn from_vectors(vectors: [[BigInt; 4]; 3]) -> Self {
        let gram_det = gram_det(&vectors);
        OrthogonalLatticeBasis { vectors, gram_det }
    }

    /// Orthogonal lattice of an arbitrary nonzero primitive integer vector.
    pub fn of_vector(x: &[BigInt; 4]) -> Self {
        Self::from_vectors(kernel_basis(x))
    }

    pub fn vectors(&self) -> &[[BigInt; 4]; 3] {
        &self.vectors
    }

    pub fn gram_det(&self) -> &BigInt {
        &self.gram_det
    }
}

fn dot<T: LatticeInt>(a: &[T; 4], b: &[T; 4]) -> T {
    let mut s = T::zero();
    for i in 0..4 {
        s = s + a[i].clone() * b[i].clone();
    }
    s
}

fn det3<T: LatticeInt>(m: &[[T; 3]; 3]) -> T {
    let c = |i: usize, j: usize| m[i][j].clone();
    c(0, 0) * (c(1, 1) * c(2, 2) - c(1, 2) * c(2, 1)) - c(0, 1) * (c(1, 0) * c(2, 2) - c(1, 2) * c(2, 0))
        + c(0, 2) * (c(1, 0) * c(2, 1) - c(1, 1) * c(2, 0))
}

fn gram<T: LatticeInt>(b: &[[T; 4]; 3]) -> [[T; 3]; 3] {
    std::array::from_fn(|i| std::array::from_fn(|j| dot(&b[i], &b[j])))
}

fn gram_det<T: LatticeInt>(b: &[[T; 4]; 3]) -> T {
    det3(&gram(b))
}

/// Kernel of the 1×4 relation `a ↦ a·x` via unimodular column operations.
///
/// The operations turn `x` into `(±g, 0, 0, 0)`; the last three columns of the
/// accumulated unimodular matrix then span the whole kernel lattice.
pub fn kernel_basis<T: LatticeInt>(x: &[T; 4]) -> [[T; 4]; 3] {
    let mut row = x.clone();
    // cols[j] is column j of the transform
    let mut cols: [[T; 4]; 4] =
        std::array::from_fn(|j| std::array::from_fn(|i| if i == j { T::one() } else { T::zero() }));
    for j in 1..4 {
        if row[j].is_zero() {
            continue;
        }
        if row[0].is_zero() {
            row.swap(0, j);
            cols.swap(0, j);
            continue;
        }
        let eg = row[0].extended_gcd(&row[j]);
        let (g, a, b) = (eg.gcd, eg.x, eg.y);
        let p = row[j].clone() / g.clone();
        let q = row[0].clone() / g.clone();
        let c0 = cols[0].clone();
        let cj = cols[j].clone();
        for i in 0..4 {
            cols[0][i] = a.clone() * c0[i].clone() + b.clone() * cj[i].clone();
            cols[j][i] = q.clone() * cj[i].clone() - p.clone() * c0[i].clone();
        }
        row[0] = g;
        row[j] = T::zero();
    }
    [cols[1].clone(), cols[2].clone(), cols[3].clone()]
}

/// Basis of `{a ∈ Z⁴ : a·x = 0}` with its Gram determinant (equal to `x·x`).
pub fn orthogonal_lattice_basis(x: &PrimitivePoint) -> OrthogonalLatticeBasis {
    OrthogonalLatticeBasis::of_vector(x.coords())
}

fn round_div<T: LatticeInt>(n: &T, d: &T) -> T {
    // nearest integer to n/d for d > 0, halves rounded up
    let two = T::from(2);
    (two.clone() * n.clone() + d.clone()).div_floor(&(two * d.clone()))
}

/// Integral LLL (all quantities are integers) with `delta = num/den`.
pub fn lll<T: LatticeInt>(basis: &[[T; 4]; 3], delta_num: &T, delta_den: &T) -> [[T; 4]; 3] {
    const N: usize = 3;
    // 1-indexed scratch: b[1..=N], d[0..=N], lam[i][j] for j < i
    let mut b: Vec<[T; 4]> = std::iter::once(basis[0].clone()).chain(basis.iter().cloned()).collect();
    let mut d: Vec<T> = vec![T::zero(); N + 1];
    let mut lam: Vec<Vec<T>> = vec![vec![T::zero(); N + 1]; N + 1];
    d[0] = T::one();
    d[1] = dot(&b[1], &b[1]);
    let mut k = 2;
    let mut k_max = 1;

    let redi = |b: &mut Vec<[T; 4]>, lam: &mut Vec<Vec<T>>, d: &Vec<T>, k: usize, l: usize| {
        let two = T::from(2);
        if two * lam[k][l].abs() > d[l] {
            let q = round_div(&lam[k][l], &d[l]);
            let bl = b[l].clone();
            for (x, y) in b[k].iter_mut().zip(bl.iter()) {
                *x = x.clone() - q.clone() * y.clone();
            }
            lam[k][l] = lam[k][l].clone() - q.clone() * d[l].clone();
            for i in 1..l {
                lam[k][i] = lam[k][i].clone() - q.clone() * lam[l][i].clone();
            }
        }
    };

    while k <= N {
        if k > k_max {
            k_max = k;
            for j in 1..=k {
                let mut u = dot(&b[k], &b[j]);
                for i in 1..j {
                    u = (d[i].clone() * u - lam[k][i].clone() * lam[j][i].clone()) / d[i - 1].clone();
                }
                if j < k {
                    lam[k][j] = u;
                } else {
                    d[k] = u;
                }
            }
            debug_assert!(!d[k].is_zero(), "dependent basis passed to lll");
        }
        loop {
            redi(&mut b, &mut lam, &d, k, k - 1);
            let l = lam[k][k - 1].clone();
            let lhs = delta_den.clone() * (d[k].clone() * d[k - 2].clone() + l.clone() * l.clone());
            let rhs = delta_num.clone() * d[k - 1].clone() * d[k - 1].clone();
            if lhs < rhs {
                // swap b_k and b_{k-1}
                b.swap(k, k - 1);
                for j in 1..k - 1 {
                    let t = lam[k][j].clone();
                    lam[k][j] = lam[k - 1][j].clone();
                    lam[k - 1][j] = t;
                }
                let big_b = (d[k - 2].clone() * d[k].clone() + l.clone() * l.clone()) / d[k - 1].clone();
                for i in k + 1..=k_max {
                    let t = lam[i][k].clone();
                    lam[i][k] = (d[k].clone() * lam[i][k - 1].clone() - l.clone() * t.clone()) / d[k - 1].clone();
                    lam[i][k - 1] = (big_b.clone() * t + l.clone() * lam[i][k].clone()) / d[k].clone();
                }
                d[k - 1] = big_b;
                if k > 2 {
                    k -= 1;
                }
            } else {
                for l in (1..k - 1).rev() {
                    redi(&mut b, &mut lam, &d, k, l);
                }
                k += 1;
                break;
            }
        }
    }
    [b[1].clone(), b[2].clone(), b[3].clone()]
}

/// LLL-reduces an orthogonal lattice basis with parameter `delta ∈ (1/4, 1)`.
pub fn lll_reduce(
    basis: &OrthogonalLatticeBasis,
    delta: &BigRational,
) -> Result<OrthogonalLatticeBasis, LatticeError> {
    let quarter = BigRational::new(1.into(), 4.into());
    if *delta <= quarter || *delta >= BigRational::one() {
        return Err(LatticeError::InvalidDelta);
    }
    if basis.gram_det.is_zero() {
        return Err(LatticeError::DependentBasis);
    }
    let reduced = lll(&basis.vectors, delta.numer(), delta.denom());
    Ok(OrthogonalLatticeBasis {
        vectors: reduced,
        gram_det: basis.gram_det.clone(),
    })
}

fn sup<T: LatticeInt>(v: &[T; 4]) -> T {
    v.iter().map(|x| x.abs()).max().expect("four entries")
}

fn sign_canonical<T: LatticeInt>(mut v: [T; 4]) -> [T; 4] {
    if v.iter().find(|x| !x.is_zero()).is_some_and(|x| x.is_negative()) {
        for x in v.iter_mut() {
            *x = -x.clone();
        }
    }
    v
}

/// The lattice vector of least sup norm, ties broken by the lexicographically
/// least sign-canonical representative.
///
/// Any `v` with `‖v‖∞ ≤ s` has `‖v‖₂² ≤ 4s²`, and writing `v = Σ cᵢbᵢ` gives
/// `cᵢ² ≤ ‖v‖₂² · (G⁻¹)ᵢᵢ`, so a finite coefficient box is exhaustive.
pub fn least_height_vector<T: LatticeInt>(basis: &[[T; 4]; 3]) -> [T; 4] {
    let s = basis.iter().map(sup).min().expect("three vectors");
    let radius = T::from(4) * s.clone() * s;
    let g = gram(basis);
    let det = det3(&g);
    let cof = |i: usize| {
        let (a, b) = match i {
            0 => (1, 2),
            1 => (0, 2),
            _ => (0, 1),
        };
        g[a][a].clone() * g[b][b].clone() - g[a][b].clone() * g[b][a].clone()
    };
    let bound = |i: usize| -> i64 {
        let rhs = radius.clone() * cof(i);
        let mut c: i64 = 0;
        loop {
            let next = T::from(c + 1);
            if next.clone() * next * det.clone() > rhs {
                return c;
            }
            c += 1;
        }
    };
    let (b0, b1, b2) = (bound(0), bound(1), bound(2));
    let mut best: Option<(T, [T; 4])> = None;
    for c0 in -b0..=b0 {
        let v0: [T; 4] = std::array::from_fn(|i| T::from(c0) * basis[0][i].clone());
        for c1 in -b1..=b1 {
            let v1: [T; 4] = std::array::from_fn(|i| v0[i].clone() + T::from(c1) * basis[1][i].clone());
            for c2 in -b2..=b2 {
                if c0 == 0 && c1 == 0 && c2 == 0 {
                    continue;
                }
                let v: [T; 4] = std::array::from_fn(|i| v1[i].clone() + T::from(c2) * basis[2][i].clone());
                let h = sup(&v);
                if let Some((bh, _)) = &best {
                    if h > *bh {
                        continue;
                    }
                }
                let v = sign_canonical(v);
                let better = match &best {
                    None => true,
                    Some((bh, bv)) => h < *bh || (h == *bh && v < *bv),
                };
                if better {
                    best = Some((h, v));
                }
            }
        }
    }
    best.expect("box contains the basis vectors").1
}

fn covering_normal<T: LatticeInt>(x: &[T; 4]) -> [T; 4] {
    let kernel = kernel_basis(x);
    let reduced = lll(&kernel, &T::from(3), &T::from(4));
    least_height_vector(&reduced)
}

/// A plane through `x` of least height among all rational planes through `x`.
///
/// Its height is at most [`COVERING_CONSTANT`]` · H(x)^{1/3}`. The result is
/// deterministic: ties are broken by the lexicographically least normal.
pub fn covering_plane(x: &PrimitivePoint) -> PrimitivePlane {
    match x.to_i64() {
        Some(c) if x.height() <= &BigInt::from(I128_HEIGHT_LIMIT) => {
            let n = covering_normal(&c.map(i128::from));
            PrimitivePlane::from_canonical_i64(n.map(|v| v as i64))
        }
        _ => {
            let n = covering_normal(x.coords());
            PrimitivePlane::new(n).expect("nonzero lattice vector")
        }
    }
}

/// Same as [`covering_plane`] but always on the arbitrary-precision path.
pub fn covering_plane_bigint(x: &PrimitivePoint) -> PrimitivePlane {
    PrimitivePlane::new(covering_normal(x.coords())).expect("nonzero lattice vector")
}

/// Exact check of `H(plane) ≤ C · H(x)^{1/3}`, i.e. `H(plane)³ ≤ C³ · H(x)`.
pub fn within_covering_bound(plane: &PrimitivePlane, x: &PrimitivePoint) -> bool {
    let c = BigInt::from(COVERING_CONSTANT);
    let h = plane.height();
    h * h * h <= &c * &c * &c * x.height()
}

/// The covering ratio `H(plane) / H(x)^{1/3}` as a float, for reporting.
pub fn covering_ratio(plane: &PrimitivePlane, x: &PrimitivePoint) -> f64 {
    let hp = plane.height().to_f64().unwrap_or(f64::INFINITY);
    let hx = x.height().to_f64().unwrap_or(f64::INFINITY);
    hp / hx.cbrt()
}

fn planes_with_leading(a0: i64, t: i64) -> Vec<[i64; 4]> {
    let mut out = Vec::new();
    let r1 = if a0 == 0 { 0..=t } else { -t..=t };
    for a1 in r1 {
        let g01 = a0.gcd(&a1);
        let r2 = if a0 == 0 && a1 == 0 { 0..=t } else { -t..=t };
        for a2 in r2 {
            let g012 = g01.gcd(&a2);
            let r3 = if a0 == 0 && a1 == 0 && a2 == 0 { 1..=t } else { -t..=t };
            for a3 in r3 {
                if g012.gcd(&a3) == 1 {
                    out.push([a0, a1, a2, a3]);
                }
            }
        }
    }
    out
}

/// All canonical primitive planes of height `≤ t`, in lexicographic order.
pub fn enumerate_planes(t: u64) -> Result<Vec<PrimitivePlane>, LatticeError> {
    if t < 1 {
        return Err(LatticeError::InvalidBound);
    }
    let t = t as i64;
    let raw = par::flat_map_range(t as usize + 1, |a0| planes_with_leading(a0 as i64, t));
    Ok(raw.into_iter().map(PrimitivePlane::from_canonical_i64).collect())
}

/// Number of canonical primitive planes of height `≤ t`, without materializing them.
pub fn count_planes(t: u64) -> Result<u64, LatticeError> {
    if t < 1 {
        return Err(LatticeError::InvalidBound);
    }
    let t = t as i64;
    Ok(par::sum_range(t as usize + 1, |a0| {
        let a0 = a0 as i64;
        let mut n = 0u64;
        let r1 = if a0 == 0 { 0..=t } else { -t..=t };
        for a1 in r1 {
            let g01 = a0.gcd(&a1);
            let r2 = if a0 == 0 && a1 == 0 { 0..=t } else { -t..=t };
            for a2 in r2 {
                let g012 = g01.gcd(&a2);
                if g012 == 1 {
                    n += if a0 == 0 && a1 == 0 && a2 == 0 { t as u64 } else { 2 * t as u64 + 1 };
                    continue;
                }
                let r3 = if a0 == 0 && a1 == 0 && a2 == 0 { 1..=t } else { -t..=t };
                n += r3.filter(|a3| g012.gcd(a3) == 1).count() as u64;
            }
        }
        n
    }))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pt(c: [i64; 4]) -> PrimitivePoint {
        PrimitivePoint::from_i64(c).unwrap()
    }

    fn to_i64(b: &OrthogonalLatticeBasis) -> Vec<[i64; 4]> {
        b.vectors().iter().map(|v| v.clone().map(|x| i64::try_from(x).unwrap())).collect()
    }

    #[test]
    fn kernel_of_unit_vector_is_coordinate_basis() {
        let b = orthogonal_lattice_basis(&pt([1, 0, 0, 0]));
        assert_eq!(to_i64(&b), vec![[0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]]);
        assert_eq!(b.gram_det(), &BigInt::from(1));
    }

    #[test]
    fn kernel_gram_dets() {
        assert_eq!(orthogonal_lattice_basis(&pt([1, 1, 1, 1])).gram_det(), &BigInt::from(4));
        let b = orthogonal_lattice_basis(&pt([2, 3, 0, 1]));
        assert_eq!(b.gram_det(), &BigInt::from(14));
        for v in b.vectors() {
            assert!(crate::projective::dot(v, pt([2, 3, 0, 1]).coords()).is_zero());
        }
    }

    #[test]
    fn gram_det_of_hand_basis() {
        let b = OrthogonalLatticeBasis::from_vectors(
            [[1, -1, 0, 0], [0, 1, -1, 0], [0, 0, 1, -1]].map(|v| v.map(BigInt::from)),
        );
        assert_eq!(b.gram_det(), &BigInt::from(4));
    }

    #[test]
    fn lll_recovers_unit_vector() {
        let b = OrthogonalLatticeBasis::from_vectors(
            [[0, 1, 0, 0], [0, 0, 1, 0], [0, 1000, 0, 1]].map(|v| v.map(BigInt::from)),
        );
        let r = lll_reduce(&b, &BigRational::new(3.into(), 4.into())).unwrap();
        assert_eq!(sup(&r.vectors()[0]), BigInt::from(1));
        assert_eq!(r.gram_det(), b.gram_det());
    }

    #[test]
    fn lll_rejects_bad_delta() {
        let b = orthogonal_lattice_basis(&pt([1, 0, 0, 0]));
        assert_eq!(
            lll_reduce(&b, &BigRational::new(1.into(), 4.into())),
            Err(LatticeError::InvalidDelta)
        );
        assert_eq!(lll_reduce(&b, &BigRational::one()), Err(LatticeError::InvalidDelta));
    }

    #[test]
    fn covering_examples() {
        let p = covering_plane(&pt([1, 0, 0, 0]));
        assert_eq!(p.to_i64(), Some([0, 0, 0, 1]));
        let p = covering_plane(&pt([1, 1, 1, 1]));
        assert_eq!(p.height(), &BigInt::from(1));
        assert!(p.contains(&pt([1, 1, 1, 1])));
        // least canonical height-1 normal orthogonal to (1,1,1,1)
        assert_eq!(p.to_i64(), Some([0, 0, 1, -1]));
    }

    #[test]
    fn i128_and_bigint_paths_agree() {
        for c in [[3, -7, 11, 2], [1000, 999, -4000, 17], [4096, 1, 2, 3], [0, 5, 0, -4095]] {
            let x = pt(c);
            assert_eq!(covering_plane(&x), covering_plane_bigint(&x));
        }
    }

    #[test]
    fn plane_counts() {
        assert_eq!(enumerate_planes(1).unwrap().len(), 40);
        assert_eq!(count_planes(1).unwrap(), 40);
        assert_eq!(count_planes(2).unwrap(), enumerate_planes(2).unwrap().len() as u64);
        assert_eq!(enumerate_planes(0), Err(LatticeError::InvalidBound));
        assert_eq!(count_planes(0), Err(LatticeError::InvalidBound));
        let p = enumerate_planes(3).unwrap();
        assert!(p.windows(2).all(|w| w[0] < w[1]));
    }
}
