//! Projective points and planes of P³(Q), their heights, and exterior products.
//!
//! Over Q the product-over-places height of a point collapses to the max norm of
//! its primitive integer representative, so every height here is a max norm.
//! Wedge coordinates of a 3-dimensional subspace are the four 3×3 minors of
//! its 3×4 coefficient matrix, ordered by column triple `012, 013, 023, 123`.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ProjectiveError {
    #[error("the zero tuple is not a projective point")]
    AllZero,
    #[error("basis vectors are linearly dependent")]
    DependentBasis,
    #[error("a subspace basis must have between 1 and 3 vectors, got {0}")]
    BadRank(usize),
}

/// Divides by the gcd of the entries and flips the sign so that the first
/// nonzero entry is positive. Returns `false` on the zero vector.
pub fn canonicalize(v: &mut [BigInt]) -> bool {
    let mut g = BigInt::zero();
    for x in v.iter() {
        g = g.gcd(x);
    }
    if g.is_zero() {
        return false;
    }
    let negate = v.iter().find(|x| !x.is_zero()).is_some_and(|x| x.is_negative());
    for x in v.iter_mut() {
        *x = &*x / &g;
        if negate {
            *x = -&*x;
        }
    }
    true
}

/// `i64` version of [`canonicalize`] for hot loops.
pub fn canonicalize_i64(v: &mut [i64]) -> bool {
    let mut g = 0i64;
    for &x in v.iter() {
        g = g.gcd(&x);
    }
    if g == 0 {
        return false;
    }
    let negate = v.iter().find(|&&x| x != 0).is_some_and(|&x| x < 0);
    for x in v.iter_mut() {
        *x /= g;
        if negate {
            *x = -*x;
        }
    }
    true
}

fn max_abs(v: &[BigInt]) -> BigInt {
    v.iter().map(|x| x.abs()).max().unwrap_or_default()
}

/// A rational point of P³ in canonical primitive integer form.
///
/// Ordering is lexicographic on the coordinates, which is the on-disk order of
/// point caches.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PrimitivePoint {
    coords: [BigInt; 4],
    height: BigInt,
}

impl PrimitivePoint {
    /// Canonicalizes an integer tuple.
    pub fn new(coords: [BigInt; 4]) -> Result<Self, ProjectiveError> {
        let mut coords = coords;
        if !canonicalize(&mut coords) {
            return Err(ProjectiveError::AllZero);
        }
        let height = max_abs(&coords);
        Ok(PrimitivePoint { coords, height })
    }

    pub fn from_i64(coords: [i64; 4]) -> Result<Self, ProjectiveError> {
        Self::new(coords.map(BigInt::from))
    }

    /// Trusted constructor for tuples already known to be canonical.
    pub(crate) fn from_canonical_i64(coords: [i64; 4]) -> Self {
        debug_assert!({
            let mut c = coords;
            canonicalize_i64(&mut c) && c == coords
        });
        let height = coords.iter().map(|x| x.unsigned_abs()).max().unwrap_or(0);
        PrimitivePoint {
            coords: coords.map(BigInt::from),
            height: BigInt::from(height),
        }
    }

    pub fn coords(&self) -> &[BigInt; 4] {
        &self.coords
    }

    pub fn height(&self) -> &BigInt {
        &self.height
    }

    /// Coordinates as machine integers, if they fit.
    pub fn to_i64(&self) -> Option<[i64; 4]> {
        let mut out = [0i64; 4];
        for (o, c) in out.iter_mut().zip(self.coords.iter()) {
            *o = i64::try_from(c).ok()?;
        }
        Some(out)
    }
}

impl fmt::Display for PrimitivePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = &self.coords;
        write!(f, "({}, {}, {}, {})", c[0], c[1], c[2], c[3])
    }
}

/// A rational plane of P³, stored as its primitive normal vector.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PrimitivePlane {
    normal: [BigInt; 4],
    height: BigInt,
}

impl PrimitivePlane {
    pub fn new(normal: [BigInt; 4]) -> Result<Self, ProjectiveError> {
        let mut normal = normal;
        if !canonicalize(&mut normal) {
            return Err(ProjectiveError::AllZero);
        }
        let height = max_abs(&normal);
        Ok(PrimitivePlane { normal, height })
    }

    pub fn from_i64(normal: [i64; 4]) -> Result<Self, ProjectiveError> {
        Self::new(normal.map(BigInt::from))
    }

    pub(crate) fn from_canonical_i64(normal: [i64; 4]) -> Self {
        let p = PrimitivePoint::from_canonical_i64(normal);
        PrimitivePlane {
            normal: p.coords,
            height: p.height,
        }
    }

    pub fn normal(&self) -> &[BigInt; 4] {
        &self.normal
    }

    pub fn height(&self) -> &BigInt {
        &self.height
    }

    pub fn to_i64(&self) -> Option<[i64; 4]> {
        let mut out = [0i64; 4];
        for (o, c) in out.iter_mut().zip(self.normal.iter()) {
            *o = i64::try_from(c).ok()?;
        }
        Some(out)
    }

    /// Exact incidence test `normal · x = 0`.
    pub fn contains(&self, x: &PrimitivePoint) -> bool {
        dot(&self.normal, x.coords()).is_zero()
    }
}

impl fmt::Display for PrimitivePlane {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = &self.normal;
        write!(f, "({}, {}, {}, {})", c[0], c[1], c[2], c[3])
    }
}

pub fn dot(a: &[BigInt; 4], b: &[BigInt; 4]) -> BigInt {
    a.iter().zip(b.iter()).map(|(x, y)| x * y).sum()
}

/// Linearly independent integer vectors spanning a subspace of Q⁴.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubspaceBasis {
    vectors: Vec<[BigInt; 4]>,
}

impl SubspaceBasis {
    pub fn new(vectors: Vec<[BigInt; 4]>) -> Result<Self, ProjectiveError> {
        if vectors.is_empty() || vectors.len() > 3 {
            return Err(ProjectiveError::BadRank(vectors.len()));
        }
        let b = SubspaceBasis { vectors };
        if b.wedge().iter().all(Zero::is_zero) {
            return Err(ProjectiveError::DependentBasis);
        }
        Ok(b)
    }

    pub fn from_i64(vectors: &[[i64; 4]]) -> Result<Self, ProjectiveError> {
        Self::new(vectors.iter().map(|v| v.map(BigInt::from)).collect())
    }

    pub fn vectors(&self) -> &[[BigInt; 4]] {
        &self.vectors
    }

    pub fn rank(&self) -> usize {
        self.vectors.len()
    }

    /// Wedge coordinates in the standard basis of the k-th exterior power,
    /// index tuples in lexicographic order. Length is C(4, k).
    pub fn wedge(&self) -> Vec<BigInt> {
        let v = &self.vectors;
        match v.len() {
            1 => v[0].to_vec(),
            2 => PAIRS
                .iter()
                .map(|&(i, j)| &v[0][i] * &v[1][j] - &v[0][j] * &v[1][i])
                .collect(),
            3 => TRIPLES.iter().map(|&cols| minor3(v, cols)).collect(),
            _ => unreachable!("rank checked at construction"),
        }
    }
}

/// Column pairs in lexicographic order: 01, 02, 03, 12, 13, 23.
pub const PAIRS: [(usize, usize); 6] = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];
/// Column triples in lexicographic order: 012, 013, 023, 123.
pub const TRIPLES: [[usize; 3]; 4] = [[0, 1, 2], [0, 1, 3], [0, 2, 3], [1, 2, 3]];

fn minor3(rows: &[[BigInt; 4]], cols: [usize; 3]) -> BigInt {
    let m = |r: usize, c: usize| &rows[r][cols[c]];
    m(0, 0) * (m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1)) - m(0, 1) * (m(1, 0) * m(2, 2) - m(1, 2) * m(2, 0))
        + m(0, 2) * (m(1, 0) * m(2, 1) - m(1, 1) * m(2, 0))
}

/// Canonical representative of a tuple of rationals.
pub fn normalize_point(raw: &[BigRational; 4]) -> Result<PrimitivePoint, ProjectiveError> {
    let mut l = BigInt::one();
    for x in raw {
        l = l.lcm(x.denom());
    }
    let ints = raw
        .clone()
        .map(|x| (x * BigRational::from_integer(l.clone())).to_integer());
    PrimitivePoint::new(ints)
}

pub fn height_point(p: &PrimitivePoint) -> BigInt {
    p.height.clone()
}

/// The four 3×3 minors of a rank-3 basis.
pub fn wedge3(b: &SubspaceBasis) -> Result<[BigInt; 4], ProjectiveError> {
    if b.rank() != 3 {
        return Err(ProjectiveError::BadRank(b.rank()));
    }
    let w = b.wedge();
    if w.iter().all(Zero::is_zero) {
        return Err(ProjectiveError::DependentBasis);
    }
    Ok([w[0].clone(), w[1].clone(), w[2].clone(), w[3].clone()])
}

/// Height of the subspace: max norm of its primitive wedge vector.
pub fn subspace_height(b: &SubspaceBasis) -> Result<BigInt, ProjectiveError> {
    let mut w = b.wedge();
    if !canonicalize(&mut w) {
        return Err(ProjectiveError::DependentBasis);
    }
    Ok(max_abs(&w))
}

/// The primitive normal of a 3-dimensional subspace.
///
/// With minors `(M012, M013, M023, M123)` the normal is
/// `(M123, -M023, M013, -M012)`: expanding `det[v; basis]` along its first row
/// gives `normal · v`, which vanishes for every basis vector.
pub fn dual_normal(b: &SubspaceBasis) -> Result<PrimitivePlane, ProjectiveError> {
    let [m012, m013, m023, m123] = wedge3(b)?;
    PrimitivePlane::new([m123, -m023, m013, -m012])
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn normalize_examples() {
        let p = normalize_point(&[q(4, 1), q(6, 1), q(0, 1), q(2, 1)]).unwrap();
        assert_eq!(p.to_i64(), Some([2, 3, 0, 1]));
        let p = normalize_point(&[q(1, 1), q(0, 1), q(0, 1), q(0, 1)]).unwrap();
        assert_eq!(p.to_i64(), Some([1, 0, 0, 0]));
        let p = normalize_point(&[q(1, 2), q(1, 3), q(0, 1), q(0, 1)]).unwrap();
        assert_eq!(p.to_i64(), Some([3, 2, 0, 0]));
        let z = q(0, 1);
        assert_eq!(
            normalize_point(&[z.clone(), z.clone(), z.clone(), z]),
            Err(ProjectiveError::AllZero)
        );
    }

    #[test]
    fn negative_leading_entry_flips_sign() {
        let p = PrimitivePoint::from_i64([0, -2, 4, 6]).unwrap();
        assert_eq!(p.to_i64(), Some([0, 1, -2, -3]));
        assert_eq!(p.height(), &BigInt::from(3));
    }

    #[test]
    fn heights() {
        let h = |c| height_point(&PrimitivePoint::from_i64(c).unwrap());
        assert_eq!(h([2, 3, 0, 1]), 3.into());
        assert_eq!(h([1, 0, 0, 0]), 1.into());
        assert_eq!(h([59, 158, 133, 134]), 158.into());
    }

    #[test]
    fn wedge_examples() {
        let b = SubspaceBasis::from_i64(&[[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 1]]).unwrap();
        assert_eq!(wedge3(&b).unwrap(), [1, 1, 0, 0].map(BigInt::from));
        assert_eq!(dual_normal(&b).unwrap().to_i64(), Some([0, 0, 1, -1]));
        assert_eq!(subspace_height(&b).unwrap(), 1.into());

        let b = SubspaceBasis::from_i64(&[[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0]]).unwrap();
        assert_eq!(wedge3(&b).unwrap(), [1, 0, 0, 0].map(BigInt::from));
        assert_eq!(dual_normal(&b).unwrap().to_i64(), Some([0, 0, 0, 1]));
        assert_eq!(subspace_height(&b).unwrap(), 1.into());

        let b = SubspaceBasis::from_i64(&[[1, 0, 0, 2], [0, 1, 0, 0], [0, 0, 1, 0]]).unwrap();
        assert_eq!(subspace_height(&b).unwrap(), 2.into());

        let b = SubspaceBasis::from_i64(&[[1, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]]).unwrap();
        assert_eq!(dual_normal(&b).unwrap().to_i64(), Some([1, -1, 0, 0]));
    }

    #[test]
    fn dependent_basis_rejected() {
        assert_eq!(
            SubspaceBasis::from_i64(&[[1, 0, 0, 0], [2, 0, 0, 0], [0, 1, 0, 0]]),
            Err(ProjectiveError::DependentBasis)
        );
        assert_eq!(SubspaceBasis::from_i64(&[]), Err(ProjectiveError::BadRank(0)));
    }

    #[test]
    fn lower_rank_heights() {
        let b = SubspaceBasis::from_i64(&[[2, 4, 0, 6]]).unwrap();
        assert_eq!(subspace_height(&b).unwrap(), 3.into());
        // e0 ∧ (e1 + 2 e2): minors (1, 2, 0, 0, 0, 0)
        let b = SubspaceBasis::from_i64(&[[1, 0, 0, 0], [0, 1, 2, 0]]).unwrap();
        assert_eq!(subspace_height(&b).unwrap(), 2.into());
    }
}
