use bcsums::estermann::{estermann_hurwitz, estermann_nonpositive, verify_thm44, EstermannPoint};
use bcsums::exact::{dedekind_reciprocity_rhs, dedekind_sum, psi_polynomial, verify_thm13};
use bcsums::recip::{closed_form_integral, verify_thm12, PanelRule, QuadratureConfig};
use bcsums::report::{params, Report, Sides};
use bcsums::specfn::{hurwitz_zeta, riemann_zeta};
use bcsums::sums::{bc_sum, cotangent_sum_c, BCSumSpec, RationalArg};
use bcsums::{ComplexVal, Error, ExactScaled, PrecisionConfig};
use num_complex::Complex64;
use proptest::prelude::*;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 { a } else { gcd(b, a % b) }
}

#[test]
fn json_shapes() {
    let e = closed_form_integral(3, 1, 1).unwrap();
    let j = serde_json::to_value(&e).unwrap();
    assert_eq!(j, serde_json::json!({"num": "-1", "den": "15", "pi_pow": 3, "i_pow": 1}));
    let back: ExactScaled = serde_json::from_value(j).unwrap();
    assert_eq!(back, e);

    let v = ComplexVal::new(c(0.5, -2.0), 1e-12);
    let j = serde_json::to_value(v).unwrap();
    assert_eq!(j["re"], "5.0000000000000e-1");
    assert_eq!(j["abs_err"], "1.0000000000000e-12");

    let spec = BCSumSpec::new(c(2.5, 0.0), 7, vec![2, 3], vec![0, 1, 0]).unwrap();
    let j = serde_json::to_value(&spec).unwrap();
    assert_eq!(j["k0"], 7);
    assert_eq!(j["k"], serde_json::json!([2, 3]));
    assert_eq!(j["m"], serde_json::json!([0, 1, 0]));

    let pt = EstermannPoint::new(c(3.0, 0.0), RationalArg::new(2, 5).unwrap(), c(1.0, 0.0)).unwrap();
    let back: EstermannPoint = serde_json::from_str(&serde_json::to_string(&pt).unwrap()).unwrap();
    assert_eq!(back, pt);
}

#[test]
fn report_from_numeric_sides() {
    let quad = QuadratureConfig::with_target(1e-10);
    let sides = verify_thm12(c(3.0, 0.0), 1, 2, &quad).unwrap();
    let r = Report::numeric("thm12", params([("a", "3"), ("h", "1"), ("k", "2")]), sides, 1e-8);
    assert!(r.pass);
    let back: Report = serde_json::from_str(&serde_json::to_string(&r).unwrap()).unwrap();
    assert_eq!(back.theorem, "thm12");
    assert_eq!(back.params["k"], "2");
}

#[test]
fn domain_errors_are_typed() {
    let cfg = PrecisionConfig::default();
    assert!(matches!(bc_sum(c(2.0, 0.0), 2, 4, &cfg), Err(Error::Domain(_))));
    assert!(matches!(hurwitz_zeta(c(1.0, 0.0), 0.5, &cfg), Err(Error::Pole(_))));
    assert!(matches!(RationalArg::new(2, 4), Err(Error::Domain(_))));
    assert!(matches!(psi_polynomial(4), Err(Error::Domain(_))));
    let bad = PrecisionConfig { working_digits: 30, ..cfg };
    assert!(matches!(riemann_zeta(c(2.0, 0.0), &bad), Err(Error::Precision(_))));
    assert!("trapezoid".parse::<PanelRule>().is_err());
}

#[test]
fn estermann_closed_form_at_origin() {
    let cfg = PrecisionConfig::default();
    let half = RationalArg::new(1, 2).unwrap();
    let v = estermann_nonpositive(0, half, 0, &cfg).unwrap();
    assert!((v.value() - c(0.25, 0.0)).norm() < 1e-15);
    // the double sum gives the same number at s = 0
    let pt = EstermannPoint::new(c(0.0, 0.0), half, c(0.0, 0.0)).unwrap();
    let h = estermann_hurwitz(&pt, &cfg).unwrap();
    assert!((h.value() - v.value()).norm() < 1e-14);
}

#[test]
fn c_sum_for_odd_k_is_real_within_budget() {
    let cfg = PrecisionConfig::default();
    for q in [3u64, 5, 7] {
        for a in 0..4 {
            for k in [1u32, 3, 5] {
                let v = cotangent_sum_c(a, k, RationalArg::new(1, q).unwrap(), &cfg).unwrap();
                assert!(v.im().abs() <= v.abs_err() + 1e-12, "a={a} k={k} q={q}: {v}");
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn odd_reciprocity_holds_exactly(n in prop::sample::select(vec![3u32, 5, 7, 9, 11]), h in 1u64..40, k in 1u64..40) {
        prop_assume!(gcd(h, k) == 1);
        prop_assert!(verify_thm13(n, h, k).unwrap().is_zero());
    }

    #[test]
    fn dedekind_reciprocity_holds(h in 1u64..200, k in 1u64..200) {
        prop_assume!(gcd(h, k) == 1);
        prop_assert_eq!(dedekind_sum(h, k).unwrap() + dedekind_sum(k, h).unwrap(), dedekind_reciprocity_rhs(h, k));
    }

    #[test]
    fn closed_routes_agree(a in 0u32..5, k in 0u32..5, p in 1i64..12, q in 2u64..12) {
        prop_assume!(gcd(p as u64, q) == 1);
        let x = RationalArg::new(p, q).unwrap();
        let s: Sides = verify_thm44(k, x, a, &PrecisionConfig::default()).unwrap();
        prop_assert!(s.residual().norm() <= 1e-9 * (1.0 + s.lhs.norm()));
    }

    #[test]
    fn bc_sum_is_periodic_in_h(a in 1.1f64..4.0, h in 1u64..30, k in 2u64..30) {
        prop_assume!(gcd(h, k) == 1);
        let cfg = PrecisionConfig::with_target(1e-11);
        let v1 = bc_sum(c(a, 0.0), h, k, &cfg).unwrap();
        let v2 = bc_sum(c(a, 0.0), h + k, k, &cfg).unwrap();
        let (d, budget) = v1.distance(&v2);
        prop_assert!(d <= budget + 1e-12);
    }
}
