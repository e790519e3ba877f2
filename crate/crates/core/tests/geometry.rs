use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use planesect_core::lattice::{
    covering_plane_bigint, least_height_vector, lll, orthogonal_lattice_basis, within_covering_bound, COVERING_CONSTANT,
};
use planesect_core::points::{binary_form, DEFAULT_SIEVE};
use planesect_core::projective::{canonicalize_i64, dot, dual_normal, subspace_height, wedge3, PrimitivePlane};
use planesect_core::surface::{smoothness_check, SmoothnessStatus};
use planesect_core::{covering_plane, enumerate_points, find_lines, parse_surface, strip_lines, PrimitivePoint, SubspaceBasis};
use proptest::prelude::*;

fn point() -> impl Strategy<Value = [i64; 4]> {
    prop::array::uniform4(-100_000i64..=100_000).prop_filter("nonzero", |v| v.iter().any(|&x| x != 0))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn canonical_form_is_scale_and_sign_invariant(v in point(), k in 1i64..50, neg in any::<bool>()) {
        let x = PrimitivePoint::from_i64(v).unwrap();
        let s = if neg { -k } else { k };
        let y = PrimitivePoint::from_i64(v.map(|c| c * s)).unwrap();
        prop_assert_eq!(&x, &y);
        let first = x.coords().iter().find(|c| !c.is_zero()).unwrap();
        prop_assert!(first.is_positive());
    }

    #[test]
    fn covering_plane_contains_point_within_bound(v in point()) {
        let x = PrimitivePoint::from_i64(v).unwrap();
        let p = covering_plane(&x);
        prop_assert!(p.contains(&x));
        prop_assert!(within_covering_bound(&p, &x));
        let q = covering_plane_bigint(&x);
        prop_assert_eq!(p.height(), q.height());
    }

    #[test]
    fn orthogonal_lattice_has_covolume_height(v in point()) {
        let x = PrimitivePoint::from_i64(v).unwrap();
        let b = orthogonal_lattice_basis(&x);
        for w in b.vectors() {
            prop_assert!(dot(w, x.coords()).is_zero());
        }
        let n2: BigInt = x.coords().iter().map(|c| c * c).sum();
        prop_assert_eq!(b.gram_det(), &n2);
    }

    #[test]
    fn lll_preserves_lattice(v in point()) {
        let x = PrimitivePoint::from_i64(v).unwrap();
        let b = orthogonal_lattice_basis(&x);
        let r = lll(b.vectors(), &BigInt::from(3), &BigInt::from(4));
        let w = |m: &[[BigInt; 4]; 3]| {
            let mut n = wedge3(&SubspaceBasis::new(m.to_vec()).unwrap()).unwrap();
            if n.iter().find(|c| !c.is_zero()).unwrap().is_negative() {
                n = n.map(|c| -c);
            }
            n
        };
        prop_assert_eq!(w(b.vectors()), w(&r));
        let least = least_height_vector(&r);
        prop_assert!(dot(&least, x.coords()).is_zero());
    }

    #[test]
    fn dual_normal_annihilates_basis(a in point(), b in point(), c in point()) {
        if let Ok(s) = SubspaceBasis::from_i64(&[a, b, c]) {
            let n = dual_normal(&s).unwrap();
            for v in s.vectors() {
                prop_assert!(dot(n.normal(), v).is_zero());
            }
            prop_assert_eq!(n.height(), &subspace_height(&s).unwrap());
        }
    }
}

#[test]
fn rank_deficient_bases_rejected() {
    assert!(SubspaceBasis::from_i64(&[[1, 2, 3, 4], [2, 4, 6, 8], [0, 0, 1, 0]]).is_err());
    assert!(PrimitivePoint::from_i64([0, 0, 0, 0]).is_err());
    assert!(PrimitivePlane::from_i64([0, 0, 0, 0]).is_err());
}

#[test]
fn diagonal_point_lies_on_height_one_plane() {
    assert_eq!(COVERING_CONSTANT, 4);
    let x = PrimitivePoint::from_i64([1, 1, 1, 1]).unwrap();
    assert_eq!(covering_plane(&x).height(), &BigInt::from(1));
}

#[test]
fn canonicalization_of_zero_vector_fails() {
    let mut v = [0i64; 4];
    assert!(!canonicalize_i64(&mut v));
    let mut w = [0, -4, 6, 2];
    assert!(canonicalize_i64(&mut w));
    assert_eq!(w, [0, 2, -3, -1]);
}

#[test]
fn fermat_quartic_counts_and_lines() {
    let f = parse_surface("x0^4 + x1^4 - x2^4 - x3^4").unwrap();
    let pts = enumerate_points(&f, 32, &DEFAULT_SIEVE).unwrap();
    assert_eq!(pts.len(), 10352);
    assert_eq!(pts.restrict(1).len(), 16);
    let lines = find_lines(&f, &pts, 32);
    assert_eq!(lines.len(), 8);
    for l in &lines {
        assert!(binary_form(&f, l.p.coords(), l.q.coords()).iter().all(Zero::is_zero));
    }
    assert!(strip_lines(&pts, &lines).is_empty());
    let cache = tempfile::NamedTempFile::new().unwrap();
    pts.write_cache(cache.path()).unwrap();
    assert_eq!(planesect_core::PointSet::read_cache(cache.path()).unwrap(), pts);
}

#[test]
fn smoothness_check_detects_rational_singularity() {
    let smooth = parse_surface("x0^4 + x1^4 - x2^4 - x3^4").unwrap();
    assert_eq!(smoothness_check(&smooth, &[7, 11], 3).status, SmoothnessStatus::NoSingularityDetected);
    let cone = parse_surface("x0^2*x1^2 + x2^4 + x3^4").unwrap();
    match smoothness_check(&cone, &[7], 3).status {
        SmoothnessStatus::SingularPointFound { points, .. } => {
            assert!(points.contains(&PrimitivePoint::from_i64([1, 0, 0, 0]).unwrap()));
        }
        s => panic!("{s:?}"),
    }
}
