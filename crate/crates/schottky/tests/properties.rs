//! Property tests for the map algebra, cline geometry, and family
//! invariants, over randomized inputs.

use num_complex::Complex64;
use proptest::prelude::*;

use schottky::family::{self, ParameterPoint};
use schottky::moebius::{FixedPoints, MoebiusMap, SpherePoint};
use schottky::words::ReducedWord;
use schottky::{tol, Cline};

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn complex_in_box() -> impl Strategy<Value = Complex64> {
    (-3.0..3.0f64, -3.0..3.0f64).prop_map(|(re, im)| c(re, im))
}

fn moebius_map() -> impl Strategy<Value = MoebiusMap> {
    (
        complex_in_box(),
        complex_in_box(),
        complex_in_box(),
        complex_in_box(),
    )
        .prop_filter_map("well-conditioned matrix", |(a, b, d, e)| {
            let scale = a.norm().max(b.norm()).max(d.norm()).max(e.norm());
            let det = (a * e - b * d).norm();
            (det > 0.05 * scale * scale).then(|| MoebiusMap::new(a, b, d, e).unwrap())
        })
}

fn cline() -> impl Strategy<Value = Cline> {
    prop_oneof![
        (complex_in_box(), 0.05..2.5f64)
            .prop_map(|(center, radius)| Cline::circle(center, radius).unwrap()),
        (complex_in_box(), complex_in_box()).prop_filter_map("distinct points", |(z1, z2)| ((z1
            - z2)
            .norm()
            > 0.1)
            .then(|| Cline::line(z1, z2).unwrap())),
    ]
}

/// A random interior parameter point with healthy margin from the edges of
/// the domain, where double precision holds the stated gates.
fn interior_point() -> impl Strategy<Value = ParameterPoint> {
    (0.0..1.0f64, 0.0..1.0f64).prop_filter_map("interior with margin", |(up, ur)| {
        let p = 0.5 + up * 0.5;
        let r = ur;
        let pt = ParameterPoint::new(p, r);
        (family::in_f(pt, 0.05).membership == family::Membership::Interior).then_some(pt)
    })
}

fn reduced_word(max_len: usize) -> impl Strategy<Value = ReducedWord> {
    proptest::collection::vec(
        prop_oneof![Just(1i8), Just(-1), Just(2), Just(-2), Just(3), Just(-3)],
        1..=max_len,
    )
    .prop_filter_map("nonempty after reduction", |vals| {
        let w = ReducedWord::reduce(&vals).unwrap();
        (!w.is_empty()).then_some(w)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn reflection_is_involution_and_fixes_its_cline(cl in cline()) {
        let tau = cl.reflection();
        let square = tau * tau;
        prop_assert!(square.projective_distance_to_identity() < 1e-12);
        for z in cl.sample_points(20) {
            prop_assert!(tau.apply(z.into()).approx_eq(z.into(), 1e-10));
        }
    }

    #[test]
    fn trace_squared_is_conjugation_invariant(f in moebius_map(), g in moebius_map()) {
        let before = f.normalized_trace_squared();
        let after = (g * f * g.inverse()).normalized_trace_squared();
        prop_assert!((before - after).norm() <= 1e-10 * before.norm().max(1.0));
    }

    #[test]
    fn classify_and_fixed_points_ignore_rescaling(
        f in moebius_map(),
        sr in 0.1..10.0f64,
        sth in 0.0..std::f64::consts::TAU,
    ) {
        let s = Complex64::from_polar(sr, sth);
        let [a, b, cc, d] = f.coefficients();
        let scaled = MoebiusMap::new(a * s, b * s, cc * s, d * s).unwrap();
        prop_assert_eq!(
            f.classify(tol::CLASSIFICATION_BAND).kind,
            scaled.classify(tol::CLASSIFICATION_BAND).kind
        );
        if let (Ok(fa), Ok(fb)) = (f.fixed_points(), scaled.fixed_points()) {
            let fa = fa.as_vec();
            let fb = fb.as_vec();
            prop_assert_eq!(fa.len(), fb.len());
            for p in &fa {
                prop_assert!(fb.iter().any(|q| q.approx_eq(*p, 1e-10)));
            }
        }
    }

    #[test]
    fn parabolic_conjugates_have_exactly_one_fixed_point(g in moebius_map()) {
        let shift = MoebiusMap::translation(c(1.0, 0.0));
        let conj = g * shift * g.inverse();
        match conj.fixed_points().unwrap() {
            FixedPoints::One(p) => {
                prop_assert!(p.approx_eq(g.apply(SpherePoint::Infinity), 1e-7));
            }
            FixedPoints::Two(_, _) => prop_assert!(false, "conjugate of parabolic is parabolic"),
        }
    }

    #[test]
    fn composition_is_associative(
        f in moebius_map(),
        g in moebius_map(),
        h in moebius_map(),
    ) {
        let lhs = (f * g) * h;
        let rhs = f * (g * h);
        prop_assert!(lhs.projective_distance(&rhs) < 1e-10);
    }

    #[test]
    fn moebius_maps_send_clines_to_clines(cl in cline(), f in moebius_map()) {
        let img = cl.image(&f);
        for z in cl.sample_points(10) {
            if let SpherePoint::Finite(w) = f.apply(z.into()) {
                let scale = 1.0 + img.a().abs() * w.norm_sqr() + 2.0 * img.b().norm() * w.norm();
                prop_assert!(img.evaluate(w).abs() / scale < 1e-9);
            }
        }
    }

    #[test]
    fn inversive_product_is_moebius_invariant(
        c1 in cline(),
        c2 in cline(),
        f in moebius_map(),
    ) {
        let before = c1.inversive_product(&c2);
        let after = c1.image(&f).inversive_product(&c2.image(&f));
        prop_assert!(
            (before.abs() - after.abs()).abs() <= 1e-9 * before.abs().max(1.0),
            "before {before} after {after}"
        );
    }

    #[test]
    fn construction_orthogonalities_hold_on_the_family(pt in interior_point()) {
        let table = family::mirror_relation_table(pt).unwrap();
        prop_assert!(table.pass, "relation table failed at {pt:?}");
    }

    #[test]
    fn r_max_is_the_tangency_radius(u in 0.0..1.0f64) {
        let p = 0.5 + 0.499 * u;
        let m = family::mirrors(ParameterPoint::new(p, 0.1)).unwrap();
        let lhs = family::r_max(p).unwrap();
        let rhs = m.l4_center.norm() - m.l4_radius;
        prop_assert!((lhs - rhs).abs() < 1e-12);
    }

    #[test]
    fn trace_is_a_conjugacy_invariant_of_words(pt in interior_point(), w in reduced_word(5)) {
        let gens = family::generators(pt).unwrap();
        let maps = gens.letter_maps();
        let t = w.evaluate(&maps).normalized_trace_squared();
        let vals: Vec<i8> = w.letters().iter().map(|l| l.value()).collect();
        for k in 1..vals.len() {
            let mut rotated = vals[k..].to_vec();
            rotated.extend_from_slice(&vals[..k]);
            let tr = ReducedWord::reduce(&rotated)
                .unwrap()
                .evaluate(&maps)
                .normalized_trace_squared();
            prop_assert!(tol::chordal(t, tr) < 1e-9, "rotation {k}: {t} vs {tr}");
        }
        let ti = w.inverse().evaluate(&maps).normalized_trace_squared();
        prop_assert!(tol::chordal(t, ti) < 1e-9);
    }

    #[test]
    fn pinch_traces_share_w_orbits(pt in interior_point()) {
        let rep = family::w_orbit_check(pt).unwrap();
        prop_assert!(rep.pass, "spreads {} {}", rep.spread_123, rep.spread_456);
    }
}
