use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use planesect_core::section::{
    classify_section, classify_section_with_basis, factor_ternary, genus, plane_basis, section_point_count, Basis,
    Classification, Genus, SectionError, TernaryForm,
};
use planesect_core::{enumerate_points, parse_surface, PrimitivePlane};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn tf(s: &str) -> TernaryForm {
    TernaryForm::parse(s).unwrap()
}

fn g(s: &str) -> Genus {
    genus(&tf(s)).unwrap().genus
}

fn monomials(e: u32) -> Vec<[u32; 3]> {
    let mut v = Vec::new();
    for i in (0..=e).rev() {
        for j in (0..=e - i).rev() {
            v.push([i, j, e - i - j]);
        }
    }
    v
}

fn random_form(rng: &mut ChaCha8Rng, e: u32, range: i64) -> TernaryForm {
    loop {
        let terms: Vec<([u32; 3], i64)> = monomials(e).into_iter().map(|m| (m, rng.gen_range(-range..=range))).collect();
        if let Some(f) = TernaryForm::from_terms(&terms) {
            if f.degree() == e {
                return f;
            }
        }
    }
}

/// Nullspace of an integer matrix (exact), one vector per free column.
fn nullspace(rows: Vec<Vec<BigRational>>, n: usize) -> Vec<Vec<BigRational>> {
    let mut a = rows;
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..n {
        let Some(p) = (r..a.len()).find(|&i| !a[i][c].is_zero()) else { continue };
        a.swap(r, p);
        let inv = a[r][c].recip();
        for x in a[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..a.len() {
            if i != r && !a[i][c].is_zero() {
                let f = a[i][c].clone();
                for k in 0..n {
                    let d = &f * &a[r][k];
                    a[i][k] -= d;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    (0..n)
        .filter(|c| !pivots.contains(c))
        .map(|free| {
            let mut v = vec![BigRational::zero(); n];
            v[free] = BigRational::one();
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = -a[row][free].clone();
            }
            v
        })
        .collect()
}

/// Implicit equation of `(u:v) ↦ (p0 : p1 : p2)` with random binary forms of degree `e`.
fn random_rational_curve(rng: &mut ChaCha8Rng, e: u32) -> TernaryForm {
    loop {
        let p: Vec<Vec<i64>> = (0..3).map(|_| (0..=e).map(|_| rng.gen_range(-2i64..=2)).collect()).collect();
        let mons = monomials(e);
        let rows: Vec<Vec<BigRational>> = (-(mons.len() as i64)..=mons.len() as i64)
            .map(|u| {
                let x: Vec<BigInt> = p
                    .iter()
                    .map(|c| c.iter().enumerate().map(|(k, a)| BigInt::from(*a) * BigInt::from(u).pow(k as u32)).sum())
                    .collect();
                mons.iter()
                    .map(|m| BigRational::from_integer((0..3).map(|i| x[i].pow(m[i])).product()))
                    .collect()
            })
            .collect();
        let kernel = nullspace(rows, mons.len());
        if kernel.len() != 1 {
            continue;
        }
        let map: BTreeMap<[u32; 3], BigRational> = mons.iter().copied().zip(kernel[0].iter().cloned()).collect();
        let f = TernaryForm::from_rational(&map).unwrap();
        if factor_ternary(&f).unwrap().len() == 1 {
            return f;
        }
    }
}

#[test]
fn genus_fixtures() {
    assert_eq!(g("s^2 + t^2 - r^2"), Genus::Value(0));
    assert_eq!(g("s^3 + t^3 - 2*r^3"), Genus::Value(1));
    assert_eq!(g("t^2*r - s^3 - s^2*r"), Genus::Value(0));
    assert_eq!(g("s^4 + t^4 - r^4"), Genus::Value(3));
    assert_eq!(g("s^5 + t^5 + r^5"), Genus::Value(6));
    assert_eq!(g("t^2*r^3 - s^5"), Genus::Value(0));
}

#[test]
fn unibranch_and_tacnode_fixtures() {
    // y^3 = x^4, y^3 = x^5, y^4 = x^5: all rational
    assert_eq!(g("t^3*r - s^4"), Genus::Value(0));
    assert_eq!(g("t^3*r^2 - s^5"), Genus::Value(0));
    assert_eq!(g("t^4*r - s^5"), Genus::Value(0));
    // tacnode y^2 = x^4 + x^5 has delta 2: quintic with tacnode and triple point at infinity
    assert_eq!(g("t^2*r^3 - s^4*r - s^5"), Genus::Value(0));
    // y^2 = x(x^2 - 1)(x^2 - 4): hyperelliptic genus 2
    assert_eq!(g("t^2*r^3 - s^5 + 5*s^3*r^2 - 4*s*r^4"), Genus::Value(2));
}

#[test]
fn nodes_with_irrational_tangents() {
    // quadratic transform of a conic: nodes at the three coordinate points, tangent cones like t^2 + r^2
    let rep = genus(&tf("s^2*t^2 + t^2*r^2 + r^2*s^2")).unwrap();
    assert_eq!(rep.genus, Genus::Value(0));
    assert_eq!(rep.singular_points.iter().map(|p| p.conjugates).sum::<usize>(), 3);
    assert!(rep.singular_points.iter().all(|p| p.multiplicities == vec![2]));
}

#[test]
fn genus_of_rational_curves_is_zero() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut irrational = 0;
    for e in [3, 4, 5] {
        for _ in 0..4 {
            let c = random_rational_curve(&mut rng, e);
            let rep = genus(&c).unwrap();
            assert_eq!(rep.genus, Genus::Value(0), "{c}");
            assert_eq!(rep.geometric_components, 1, "{c}");
            irrational += rep.singular_points.iter().filter(|p| p.conjugates > 1).count();
        }
    }
    // the batch must exercise singular points over proper extensions of Q
    assert!(irrational > 0);
}

#[test]
fn genus_invariant_under_coordinate_change() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for (src, expected) in [("t^2*r^2 - s^4 - r^4", 1), ("t^2*r^3 - s^5", 0), ("s^4 + t^4 - r^4", 3)] {
        for _ in 0..3 {
            let m: [[BigInt; 3]; 3] = loop {
                let m: [[i64; 3]; 3] = std::array::from_fn(|_| std::array::from_fn(|_| rng.gen_range(-2..=2)));
                let det = m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
                    + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
                if det != 0 {
                    break m.map(|r| r.map(BigInt::from));
                }
            };
            let c = tf(src).transform(&m).unwrap();
            assert_eq!(genus(&c).unwrap().genus, Genus::Value(expected), "{c}");
        }
    }
}

#[test]
fn genus_bounds_on_random_forms() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for e in 2..=5u32 {
        for _ in 0..3 {
            let c = random_form(&mut rng, e, 3);
            if factor_ternary(&c).unwrap().len() != 1 {
                continue;
            }
            let rep = genus(&c).unwrap();
            let arith = (e - 1) * (e - 2) / 2;
            match rep.genus {
                Genus::Value(v) => assert!(v <= arith),
                Genus::Unresolved => panic!("unresolved {c}"),
            }
            if rep.singular_points.is_empty() {
                assert_eq!(rep.genus, Genus::Value(arith));
            }
        }
    }
}

#[test]
fn genus_rejects_reducible() {
    assert_eq!(genus(&tf("s^2 - t^2")), Err(SectionError::NotIrreducible));
}

fn merge(parts: Vec<Vec<(TernaryForm, usize)>>) -> BTreeMap<TernaryForm, usize> {
    let mut out = BTreeMap::new();
    for (f, m) in parts.into_iter().flatten() {
        *out.entry(f).or_default() += m;
    }
    out
}

#[test]
fn factorization_round_trip() {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    for _ in 0..100 {
        let mut pieces = Vec::new();
        let mut budget = rng.gen_range(2..=5u32);
        while budget > 0 {
            let e = rng.gen_range(1..=budget.min(3));
            let f = random_form(&mut rng, e, 4);
            let k = if e * 2 <= budget && rng.gen_bool(0.3) { 2 } else { 1 };
            budget -= e * k;
            for _ in 0..k {
                pieces.push(f.clone());
            }
        }
        let product = pieces.iter().skip(1).fold(pieces[0].clone(), |a, b| a.mul(b));
        let got = factor_ternary(&product).unwrap();
        let back = got.iter().fold(None::<TernaryForm>, |acc, (f, m)| {
            let p = f.pow(*m);
            Some(acc.map_or(p.clone(), |a| a.mul(&p)))
        });
        assert_eq!(back.unwrap(), product);
        for (f, _) in &got {
            assert_eq!(factor_ternary(f).unwrap().len(), 1);
        }
        let expected = merge(pieces.iter().map(|p| factor_ternary(p).unwrap()).collect());
        assert_eq!(merge(vec![got]), expected);
    }
}

#[test]
fn t4_minus_r4_splits() {
    let f = factor_ternary(&tf("t^4 - r^4")).unwrap();
    let degrees: Vec<u32> = f.iter().map(|(c, _)| c.degree()).collect();
    assert_eq!(degrees, vec![1, 1, 2]);
}

#[test]
fn point_attribution_on_diagonal_plane() {
    let f = parse_surface("x0^4 + x1^4 - x2^4 - x3^4").unwrap();
    let pts = enumerate_points(&f, 1, &[16, 9, 5]).unwrap();
    let plane = PrimitivePlane::from_i64([1, 0, -1, 0]).unwrap();
    let prof = classify_section(&f, &plane).unwrap();
    let counts = section_point_count(&prof, &pts);
    let incident = pts.coords().iter().filter(|c| c[0] == c[2]).count();
    assert_eq!(counts.total, incident);
    let line = prof.components.iter().position(|c| c.form == tf("t - r")).unwrap();
    assert!(counts.per_component[line] >= 1);
    let empty = planesect_core::PointSet::new(f.hash(), 1, Vec::new());
    let zero = section_point_count(&prof, &empty);
    assert_eq!(zero.total, 0);
    assert!(zero.per_component.iter().all(|&c| c == 0));
}

fn unimodular(rng: &mut ChaCha8Rng) -> [[i64; 3]; 3] {
    let mut m = [[1, 0, 0], [0, 1, 0], [0, 0, 1]];
    for _ in 0..6 {
        let (i, j) = (rng.gen_range(0..3), rng.gen_range(0..3));
        if i != j {
            let k = rng.gen_range(-2..=2);
            for row in m.iter_mut() {
                row[j] += k * row[i];
            }
        }
    }
    m
}

#[test]
fn classification_independent_of_basis() {
    let f = parse_surface("x0^4 + x1^4 - x2^4 - x3^4").unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let pts = enumerate_points(&f, 2, &[16, 9, 5]).unwrap();
    for normal in [[0, 0, 0, 1], [1, 0, -1, 0], [1, 1, -1, 0], [1, -1, 0, 1], [2, 1, -1, 1]] {
        let plane = PrimitivePlane::from_i64(normal).unwrap();
        let base = classify_section(&f, &plane).unwrap();
        let b = plane_basis(&plane);
        let m = unimodular(&mut rng);
        let nb: Basis = std::array::from_fn(|k| std::array::from_fn(|c| (0..3).map(|i| BigInt::from(m[i][k]) * &b[i][c]).sum()));
        let other = classify_section_with_basis(&f, &plane, &nb).unwrap();
        let summary = |p: &planesect_core::SectionProfile| {
            let mut v: Vec<(u32, usize, Genus, Classification)> =
                p.components.iter().map(|c| (c.degree, c.multiplicity, c.genus, c.classification)).collect();
            v.sort();
            v
        };
        assert_eq!(summary(&base), summary(&other));
        let mut c1 = section_point_count(&base, &pts).per_component;
        let mut c2 = section_point_count(&other, &pts).per_component;
        c1.sort();
        c2.sort();
        assert_eq!(c1, c2);
    }
}
