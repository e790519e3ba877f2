//! Plane sections: the section form, its factorization over Q, and the
//! geometric genus of each component.

mod biv;
pub mod factor;
pub mod form;
pub mod genus;

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::lattice::{kernel_basis, lll};
use crate::points::PointSet;
use crate::projective::PrimitivePlane;
use crate::surface::SurfaceForm;

pub use factor::{factor_ternary, MAX_DEGREE};
pub use form::TernaryForm;
pub use genus::{genus, Genus, GenusReport, SingularPoint, MAX_BLOWUP_DEPTH};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SectionError {
    #[error("unsupported degree {0} (at most {MAX_DEGREE})")]
    UnsupportedDegree(u32),
    #[error("the plane is contained in the surface")]
    PlaneContainedInSurface,
    #[error("form is not irreducible over Q")]
    NotIrreducible,
    #[error("cannot parse form: {0}")]
    Parse(String),
    #[error("basis does not span the integer points of the plane")]
    InvalidBasis,
}

pub type Basis = [[BigInt; 4]; 3];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Classification {
    Line,
    RationalOrGenusZero,
    GenusOne,
    HigherGenus(u32),
    Unresolved,
}

impl Classification {
    pub fn of(degree: u32, genus: Genus) -> Self {
        match (degree, genus) {
            (1, _) => Classification::Line,
            (_, Genus::Unresolved) => Classification::Unresolved,
            (_, Genus::Value(0)) => Classification::RationalOrGenusZero,
            (_, Genus::Value(1)) => Classification::GenusOne,
            (_, Genus::Value(g)) => Classification::HigherGenus(g),
        }
    }

    pub fn label(&self) -> &'static str {
        match self {
            Classification::Line => "line",
            Classification::RationalOrGenusZero => "genus0",
            Classification::GenusOne => "genus1",
            Classification::HigherGenus(_) => "higher",
            Classification::Unresolved => "unresolved",
        }
    }
}

impl fmt::Display for Classification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Classification::HigherGenus(g) => write!(f, "higher(g={g})"),
            other => f.write_str(other.label()),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CurveComponent {
    pub form: TernaryForm,
    pub degree: u32,
    pub multiplicity: usize,
    pub genus: Genus,
    pub classification: Classification,
    pub singular_summary: Vec<SingularPoint>,
    /// Components over Q̄ (more than 1 only for forms that split over an extension).
    pub geometric_components: u32,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SectionProfile {
    pub plane: PrimitivePlane,
    pub basis: Basis,
    pub form: TernaryForm,
    pub components: Vec<CurveComponent>,
}

impl SectionProfile {
    pub fn classifications(&self) -> Vec<Classification> {
        self.components.iter().map(|c| c.classification).collect()
    }

    /// `Σ e·multiplicity`, equal to the surface degree.
    pub fn total_degree(&self) -> u32 {
        self.components.iter().map(|c| c.degree * c.multiplicity as u32).sum()
    }
}

fn sign_canonical(mut v: [BigInt; 4]) -> [BigInt; 4] {
    if v.iter().find(|x| !x.is_zero()).is_some_and(|x| x.is_negative()) {
        for x in v.iter_mut() {
            *x = -&*x;
        }
    }
    v
}

/// LLL-reduced basis of the integer points of the plane, each vector
/// sign-canonical, sorted in descending lexicographic order.
pub fn plane_basis(plane: &PrimitivePlane) -> Basis {
    let k = kernel_basis(plane.normal());
    let reduced = lll(&k, &BigInt::from(3), &BigInt::from(4));
    let mut v: Vec<[BigInt; 4]> = reduced.into_iter().map(sign_canonical).collect();
    v.sort_by(|a, b| b.cmp(a));
    [v[0].clone(), v[1].clone(), v[2].clone()]
}

fn det3(m: [[&BigInt; 3]; 3]) -> BigInt {
    m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
        + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
}

/// The 3×3 minors of the 4×3 matrix with columns `u, v, w`, indexed by the omitted row.
fn minors(b: &Basis) -> [BigInt; 4] {
    std::array::from_fn(|skip| {
        let rows: Vec<usize> = (0..4).filter(|&i| i != skip).collect();
        det3(std::array::from_fn(|r| std::array::from_fn(|c| &b[c][rows[r]])))
    })
}

/// `u ∧ v ∧ w = ±normal` iff the basis spans exactly the integer points of the plane.
fn check_basis(plane: &PrimitivePlane, b: &Basis) -> Result<(), SectionError> {
    let n = plane.normal();
    for v in b {
        if crate::projective::dot(v, n) != BigInt::zero() {
            return Err(SectionError::InvalidBasis);
        }
    }
    // Laplace expansion: the wedge coordinate for the omitted row i is (−1)^i · minor_i
    let m = minors(b);
    let wedge: Vec<BigInt> = m.iter().enumerate().map(|(i, x)| if i % 2 == 0 { x.clone() } else { -x }).collect();
    let plus = wedge.iter().zip(n).all(|(a, b)| a == b);
    let minus = wedge.iter().zip(n).all(|(a, b)| *a == -b);
    if plus || minus {
        Ok(())
    } else {
        Err(SectionError::InvalidBasis)
    }
}

/// `F(s·u + t·v + r·w)` for the given basis of the plane.
pub fn section_form_with_basis(f: &SurfaceForm, plane: &PrimitivePlane, basis: &Basis) -> Result<TernaryForm, SectionError> {
    check_basis(plane, basis)?;
    let rows: Vec<[BigInt; 3]> =
        (0..4).map(|i| [basis[0][i].clone(), basis[1][i].clone(), basis[2][i].clone()]).collect();
    let map = form::substitute(f.coefficients().iter().map(|(e, c)| (&e[..], c)), &rows);
    TernaryForm::from_map(map).ok_or(SectionError::PlaneContainedInSurface)
}

/// The section form in the coordinates of [`plane_basis`].
pub fn section_form(f: &SurfaceForm, plane: &PrimitivePlane) -> Result<TernaryForm, SectionError> {
    section_form_with_basis(f, plane, &plane_basis(plane))
}

pub fn classify_section_with_basis(
    f: &SurfaceForm,
    plane: &PrimitivePlane,
    basis: &Basis,
) -> Result<SectionProfile, SectionError> {
    let form = section_form_with_basis(f, plane, basis)?;
    let components = factor_ternary(&form)?
        .into_iter()
        .map(|(c, multiplicity)| {
            let report = genus::genus_of_irreducible(&c);
            let degree = c.degree();
            CurveComponent {
                classification: Classification::of(degree, report.genus),
                degree,
                multiplicity,
                genus: report.genus,
                singular_summary: report.singular_points,
                geometric_components: report.geometric_components,
                form: c,
            }
        })
        .collect();
    Ok(SectionProfile { plane: plane.clone(), basis: basis.clone(), form, components })
}

pub fn classify_section(f: &SurfaceForm, plane: &PrimitivePlane) -> Result<SectionProfile, SectionError> {
    classify_section_with_basis(f, plane, &plane_basis(plane))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SectionCounts {
    /// Enumerated points incident to the plane.
    pub total: usize,
    /// Points on each component, in the order of `profile.components`.
    pub per_component: Vec<usize>,
}

/// Plane coordinates `(s, t, r)` of `x = s·u + t·v + r·w` by Cramer's rule on a nonzero minor.
pub fn plane_coordinates(basis: &Basis, x: &[BigInt; 4]) -> Option<[BigInt; 3]> {
    let m = minors(basis);
    let skip = m.iter().position(|d| !d.is_zero())?;
    let rows: Vec<usize> = (0..4).filter(|&i| i != skip).collect();
    let d = &m[skip];
    let mut out: [BigInt; 3] = Default::default();
    for (col, slot) in out.iter_mut().enumerate() {
        let entry = |r: usize, c: usize| if c == col { &x[rows[r]] } else { &basis[c][rows[r]] };
        let num = det3(std::array::from_fn(|r| std::array::from_fn(|c| entry(r, c))));
        let q = BigRational::new(num, d.clone());
        if !q.denom().is_one() {
            return None;
        }
        *slot = q.to_integer();
    }
    // consistency on the omitted row
    let back: BigInt = (0..3).map(|c| &out[c] * &basis[c][skip]).sum();
    (back == x[skip]).then_some(out)
}

/// Attributes every enumerated point on the plane to each component vanishing on it.
pub fn section_point_count(profile: &SectionProfile, pts: &PointSet) -> SectionCounts {
    let n: Option<[i128; 4]> = profile.plane.to_i64().map(|v| v.map(i128::from));
    let mut total = 0;
    let mut per_component = vec![0; profile.components.len()];
    for c in pts.coords() {
        let on_plane = match n {
            Some(n) => (0..4).map(|i| n[i] * c[i] as i128).sum::<i128>() == 0,
            None => crate::projective::dot(profile.plane.normal(), &c.map(BigInt::from)).is_zero(),
        };
        if !on_plane {
            continue;
        }
        total += 1;
        let x = c.map(BigInt::from);
        let str = plane_coordinates(&profile.basis, &x).expect("lattice basis reaches every integer point of the plane");
        for (k, comp) in profile.components.iter().enumerate() {
            if comp.form.evaluate(&str).is_zero() {
                per_component[k] += 1;
            }
        }
    }
    SectionCounts { total, per_component }
}
