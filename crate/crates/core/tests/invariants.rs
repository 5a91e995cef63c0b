mod common;

use std::collections::HashSet;

use num_traits::{Signed, Zero};
use proptest::prelude::*;

use common::*;
use zlab_core::chambers::{construct_nef_with_null, enumerate_chambers};
use zlab_core::cutkosky::{closed_form_volume, volume_l_eps};
use zlab_core::lattice::{solve_gram_system, DivisorClass};
use zlab_core::scalar::{int, ratio};
use zlab_core::weyl::reflect;
use zlab_core::{
    chamber_of, destabilizing_numbers, is_big, kunneth_volume, neg_set, null_set, on_chamber_boundary, vol,
    volume_polynomial, zariski_decompose, Rational, SurfaceModel,
};

fn small_rational() -> impl Strategy<Value = Rational> {
    (-20i64..20, 1i64..6).prop_map(|(p, q)| ratio(p, q))
}

fn dp_class(r: usize) -> impl Strategy<Value = Vec<Rational>> {
    proptest::collection::vec(small_rational(), r + 1)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn pairing_is_symmetric_and_bilinear(a in dp_class(4), b in dp_class(4), c in dp_class(4), s in small_rational()) {
        let m = SurfaceModel::del_pezzo(4).unwrap();
        let (a, b, c) = (m.class(a).unwrap(), m.class(b).unwrap(), m.class(c).unwrap());
        prop_assert_eq!(a.pair(&b).unwrap(), b.pair(&a).unwrap());
        let lhs = (&a.scale(&s) + &b).pair(&c).unwrap();
        prop_assert_eq!(lhs, &s * a.pair(&c).unwrap() + b.pair(&c).unwrap());
    }

    #[test]
    fn gram_solve_reproduces_rhs(rhs in proptest::collection::vec(small_rational(), 3)) {
        let m = SurfaceModel::del_pezzo(6).unwrap();
        // three pairwise disjoint lines
        let curves: Vec<&DivisorClass> = ["E1", "E2", "E3"].iter().map(|l| &m.curves()[m.curve_index(l).unwrap()].class).collect();
        let x = solve_gram_system(&curves, &rhs).unwrap();
        for (i, ci) in curves.iter().enumerate() {
            let back: Rational = curves.iter().zip(&x).map(|(cj, xj)| ci.pair(cj).unwrap() * xj).sum();
            prop_assert_eq!(&back, &rhs[i]);
        }
    }

    #[test]
    fn decomposition_is_homogeneous(coords in dp_class(3), c in (1i64..7, 1i64..5)) {
        let m = SurfaceModel::del_pezzo(3).unwrap();
        let d = m.class(coords).unwrap();
        let c = ratio(c.0, c.1);
        if let Ok(z) = zariski_decompose(&m, &d) {
            let zc = zariski_decompose(&m, &d.scale(&c)).unwrap();
            prop_assert_eq!(zc.positive, z.positive.scale(&c));
            let scaled: Vec<_> = z.negative.iter().map(|(i, x)| (*i, x * &c)).collect();
            prop_assert_eq!(zc.negative, scaled);
            prop_assert_eq!(vol(&m, &d.scale(&c)).unwrap(), vol(&m, &d).unwrap() * &c * &c);
        }
    }

    #[test]
    fn reflections_are_isometric_involutions(a in dp_class(5), b in dp_class(5), which in 0usize..5) {
        let m = SurfaceModel::del_pezzo(5).unwrap();
        let alpha = &m.enumerate_roots().unwrap().simple[which];
        let (a, b) = (m.class(a).unwrap(), m.class(b).unwrap());
        let (ra, rb) = (reflect(&a, alpha).unwrap(), reflect(&b, alpha).unwrap());
        prop_assert_eq!(ra.pair(&rb).unwrap(), a.pair(&b).unwrap());
        prop_assert_eq!(reflect(&ra, alpha).unwrap(), a);
    }
}

#[test]
fn decomposition_invariants_on_random_classes() {
    let mut rng = rng(11);
    for r in 2..=6 {
        let m = SurfaceModel::del_pezzo(r).unwrap();
        for _ in 0..60 {
            let d = random_big_mixed(&mut rng, &m, 3);
            let z = zariski_decompose(&m, &d).unwrap();
            assert_eq!(&z.positive + &z.negative_part(&m), d);
            assert!(m.is_nef(&z.positive).unwrap());
            for (i, x) in &z.negative {
                assert!(x.is_positive());
                assert!(z.positive.pair(&m.curves()[*i].class).unwrap().is_zero());
            }
            let neg = z.support();
            assert!(neg.is_subset(&null_set(&m, &z.positive).unwrap()));
        }
    }
}

#[test]
fn exceptional_classes_meet_non_negatively() {
    for r in 1..=8 {
        let m = SurfaceModel::del_pezzo(r).unwrap();
        let curves = m.curves();
        for (i, a) in curves.iter().enumerate() {
            assert!(m.ample().pair(&a.class).unwrap().is_positive());
            for b in &curves[..i] {
                assert!(!a.class.pair(&b.class).unwrap().is_negative());
            }
        }
    }
}

#[test]
fn nef_cone_is_convex_around_the_ample_witness() {
    let mut rng = rng(5);
    let m = SurfaceModel::del_pezzo(4).unwrap();
    assert!(m.is_nef(m.ample()).unwrap());
    for _ in 0..50 {
        let d = random_big_mixed(&mut rng, &m, 2);
        let p = zariski_decompose(&m, &d).unwrap().positive;
        for t in [ratio(1, 5), ratio(1, 2), ratio(9, 10)] {
            let mix = &p.scale(&t) + &m.ample().scale(&(int(1) - &t));
            assert!(m.is_nef(&mix).unwrap());
        }
    }
}

#[test]
fn chamber_supports_are_pairwise_orthogonal_and_interior_points_land_inside() {
    let small = ratio(1, 7);
    for r in 2..=5 {
        let m = SurfaceModel::del_pezzo(r).unwrap();
        let chambers = enumerate_chambers(&m).unwrap();
        assert!(chambers.unrealizable.is_empty());
        for ch in &chambers.chambers {
            let classes = ch.support.classes(&m);
            for (i, a) in classes.iter().enumerate() {
                for b in &classes[..i] {
                    assert!(a.pair(b).unwrap().is_zero());
                }
            }
            let mut d = construct_nef_with_null(&m, &ch.support).unwrap();
            for c in &classes {
                d = &d + &c.scale(&small);
            }
            assert_eq!(&chamber_of(&m, &d).unwrap(), ch);
            assert!(!on_chamber_boundary(&m, &d).unwrap());
        }
    }
}

#[test]
fn random_classes_land_in_exactly_one_chamber() {
    let mut rng = rng(8);
    let m = SurfaceModel::del_pezzo(4).unwrap();
    let chambers: HashSet<_> = enumerate_chambers(&m).unwrap().chambers.into_iter().collect();
    for _ in 0..200 {
        let d = random_big_mixed(&mut rng, &m, 3);
        assert!(chambers.contains(&chamber_of(&m, &d).unwrap()));
    }
}

#[test]
fn chamber_polynomials_agree_with_volume_and_across_walls() {
    let mut rng = rng(21);
    let m = SurfaceModel::del_pezzo(2).unwrap();
    let polys: Vec<_> = enumerate_chambers(&m)
        .unwrap()
        .chambers
        .iter()
        .map(|c| volume_polynomial(&m, c).unwrap())
        .collect();
    for _ in 0..300 {
        let d = random_big_mixed(&mut rng, &m, 4);
        let ch = chamber_of(&m, &d).unwrap();
        let q = polys.iter().find(|q| q.chamber == ch).unwrap();
        assert_eq!(q.evaluate(&d), vol(&m, &d).unwrap());
        // a wall point: its own chamber's polynomial and its neighbours' agree
        if on_chamber_boundary(&m, &d).unwrap() {
            let z = zariski_decompose(&m, &d).unwrap();
            let null = null_set(&m, &z.positive).unwrap();
            for p in &polys {
                if z.support().is_subset(&p.chamber.support) && p.chamber.support.is_subset(&null) {
                    assert_eq!(p.evaluate(&d), vol(&m, &d).unwrap());
                }
            }
        }
    }
}

#[test]
fn adding_an_ample_class_increases_volume() {
    let mut rng = rng(3);
    let m = SurfaceModel::del_pezzo(5).unwrap();
    for _ in 0..100 {
        let d = random_big_mixed(&mut rng, &m, 3);
        let a = random_ample(&mut rng, &m);
        assert!(vol(&m, &(&d + &a)).unwrap() > vol(&m, &d).unwrap());
    }
}

#[test]
fn ample_addition_shrinks_support() {
    let mut rng = rng(4);
    let m = SurfaceModel::del_pezzo(5).unwrap();
    for _ in 0..100 {
        let d = random_big_mixed(&mut rng, &m, 3);
        let lam = random_rational(&mut rng, 0, 2, 4);
        let moved = &d + &m.ample().scale(&lam);
        assert!(neg_set(&m, &moved).unwrap().is_subset(&neg_set(&m, &d).unwrap()));
    }
}

#[test]
fn exceptional_set_is_permuted_by_simple_reflections() {
    for r in 3..=8 {
        let m = SurfaceModel::del_pezzo(r).unwrap();
        let curves: HashSet<_> = m.curves().iter().map(|c| c.class.clone()).collect();
        for alpha in m.enumerate_roots().unwrap().simple {
            let image: HashSet<_> = curves.iter().map(|c| reflect(c, &alpha).unwrap()).collect();
            assert_eq!(image, curves);
        }
    }
}

#[test]
fn walk_segments_match_chamber_membership() {
    let mut rng = rng(17);
    for r in [2, 3, 4] {
        let m = SurfaceModel::del_pezzo(r).unwrap();
        for _ in 0..6 {
            let l = random_big_mixed(&mut rng, &m, 2);
            let a = random_ample(&mut rng, &m);
            let w = destabilizing_numbers(&m, &l, &a).unwrap();
            for seg in &w.segments {
                let end = seg.end.to_f64();
                for k in 1..=100 {
                    // rational λ strictly inside [start, end)
                    let approx = ratio((k as f64 / 101.0 * 1e6) as i64, 1_000_000);
                    let span = Rational::from_float(end).unwrap() - &seg.start;
                    let lam = &seg.start + &approx * &span;
                    if lam <= seg.start || zlab_core::QuadraticIrrational::from(&lam) >= seg.end {
                        continue;
                    }
                    let d = &l - &a.scale(&lam);
                    assert_eq!(chamber_of(&m, &d).unwrap(), seg.support, "λ = {lam}");
                }
            }
            // volume dies at the threshold
            let t = w.bigness_threshold.to_f64();
            let mut last = vol(&m, &l).unwrap();
            for k in 1..=12 {
                let lam = Rational::from_float(t * (1.0 - 0.5f64.powi(k))).unwrap();
                let v = vol(&m, &(&l - &a.scale(&lam))).unwrap();
                assert!(v < last);
                last = v;
            }
            assert!(last < ratio(1, 100));
        }
    }
}

#[test]
fn threefold_volume_identities() {
    let mut previous: Option<f64> = None;
    for k in 0..20 {
        let eps = ratio(k, 16);
        let v = volume_l_eps(&eps).unwrap();
        assert_eq!(v, closed_form_volume(&eps).unwrap(), "ε = {eps}");
        if k <= 16 {
            if let Some(p) = previous {
                assert!(v.to_f64() > p);
            }
            previous = Some(v.to_f64());
        }
        for n in [4i64, 5] {
            let binom = kunneth_volume(&int(1), 3, &int(1), n - 3).unwrap();
            let expect = [ratio(4, 1), ratio(10, 1)][(n - 4) as usize].clone();
            assert_eq!(binom, expect);
            let f = if n == 4 { 4.0 } else { 10.0 };
            assert!((v.scale(&binom).to_f64() - v.to_f64() * f).abs() < 1e-12);
        }
    }
}

#[test]
fn big_means_positive_volume() {
    let mut rng = rng(9);
    let m = SurfaceModel::del_pezzo(3).unwrap();
    for _ in 0..200 {
        let d = random_class(&mut rng, &m, 2);
        assert_eq!(is_big(&m, &d), vol(&m, &d).unwrap().is_positive());
    }
}
