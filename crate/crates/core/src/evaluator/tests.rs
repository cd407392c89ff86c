use num_traits::ToPrimitive;

use super::*;
use crate::forms::divisor_sums;

fn q(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

fn point(t: Rational, order: usize) -> AxisPoint {
    AxisPoint::new(t, 128, order).unwrap()
}

#[test]
fn exponential_of_axis_point() {
    let x = exp_neg_pi_t(&q(1, 1), 128);
    let (lo, hi) = x.unwrap().to_f64_pair();
    let e = (-std::f64::consts::PI).exp();
    assert!(lo <= e * (1.0 + 1e-15) && hi >= e * (1.0 - 1e-15));
    // Past the direct range the result is squared back: x(2t) = x(t)².
    let a = exp_neg_pi_t(&q(30, 1), 128).unwrap();
    let b = exp_neg_pi_t(&q(60, 1), 128).unwrap();
    assert!(a.square().intersects(&b));
    assert!(a.is_positive());
}

#[test]
fn rejects_nonpositive_t() {
    assert_eq!(AxisPoint::new(q(0, 1), 128, 64), Err(EvalError::NonPositiveT));
    let ev = Evaluator::new();
    assert!(matches!(ev.certify_a_negative(&q(-1, 2), EvalParams::default()), Err(EvalError::NonPositiveT)));
}

#[test]
fn delta_positive_and_e6_vanishes_at_i() {
    let reg = FormRegistry::new(64);
    assert!(eval_axis(&reg, Entry::DELTA_POLY, &point(q(1, 1), 64)).unwrap().is_positive());
    let e6 = eval_axis(&reg, Entry::E6, &point(q(1, 1), 64)).unwrap();
    assert!(e6.contains_zero());
    assert!(e6.width().to_f64() < 1e-10);
}

#[test]
fn e4_against_float_summation() {
    // Oracle: 1 + 240 Σ σ₃(n) e^{−2πn} in f64.
    let sigma = divisor_sums(3, 40);
    let x2 = (-2.0 * std::f64::consts::PI).exp();
    let mut sum = 1.0;
    for (n, s) in sigma.iter().enumerate().skip(1) {
        sum += 240.0 * *s as f64 * x2.powi(n as i32);
    }
    let reg = FormRegistry::new(64);
    let enc = eval_axis(&reg, Entry::E4, &point(q(1, 1), 64)).unwrap();
    let mid = enc.midpoint().to_f64().unwrap();
    assert!((mid - sum).abs() < 1e-12, "{mid} vs {sum}");
}

#[test]
fn g_cap_below_lemma_bound() {
    let reg = FormRegistry::new(64);
    for t in [q(1, 1), q(3, 2), q(4, 1)] {
        let v = eval_axis(&reg, Entry::G_CAP, &point(t, 64)).unwrap();
        assert!(v.lies_below(&q(288, 1)), "{v}");
    }
    let f = eval_axis(&reg, Entry::F_CAP, &point(q(1, 1), 64)).unwrap();
    assert!(f.lies_above(&q(468, 1)), "{f}");
}

#[test]
fn certified_interval_contains_high_order_reference() {
    let low = FormRegistry::new(32);
    let high = FormRegistry::new(128);
    for entry in Entry::ALL {
        if matches!(entry, Entry::DELTA_PROD | Entry::PSI_I) {
            continue;
        }
        for t in [q(1, 1), q(5, 3)] {
            let certified = eval_axis(&low, entry, &point(t.clone(), 32)).unwrap();
            let reference = eval_axis(&high, entry, &AxisPoint::new(t.clone(), 256, 128).unwrap()).unwrap();
            assert!(certified.contains(&reference), "{entry} at {t}: {certified} vs {reference}");
        }
    }
}

#[test]
fn entries_without_majorant_are_rejected() {
    let reg = FormRegistry::new(32);
    let err = eval_axis(&reg, Entry::PSI_I, &point(q(1, 1), 32)).unwrap_err();
    assert_eq!(err, EvalError::MissingMajorant("PSI_I".to_string()));
}

#[test]
fn tail_is_negligible_at_order_64() {
    let reg = FormRegistry::new(64);
    let x = (-std::f64::consts::PI).exp();
    for entry in Entry::ALL {
        let s = reg.get(entry);
        if s.majorants().is_none() {
            continue;
        }
        let (_, tail) = eval_parts(&s, entry.name(), &q(1, 1), 128).unwrap();
        let v = s.valuation().unwrap();
        let lead: f64 = s
            .coeff(v)
            .unwrap()
            .terms()
            .map(|((a, b), c)| c.to_f64().unwrap() * std::f64::consts::PI.powi(*a as i32) * (-1f64).powi(*b as i32))
            .sum();
        let lead = (lead * x.powi(v as i32)).abs();
        assert!(tail.to_f64().unwrap() < lead * 2f64.powi(-40), "{entry}: tail {tail} vs lead {lead}");
    }
}

#[test]
fn b_positive_on_both_routes() {
    let ev = Evaluator::new();
    let p = EvalParams::default();
    for t in [q(1, 1), q(1, 2), q(10, 1), q(1, 8)] {
        let c = ev.certify_b_positive(&t, p).unwrap();
        assert_eq!(c.status, Status::Pass, "{t}: {c:?}");
        assert!(c.value.interval.is_positive());
    }
    assert_eq!(ev.certify_b_positive(&q(1, 2), p).unwrap().route, Route::Reciprocal);
    for route in [Route::Direct, Route::Reciprocal] {
        assert_eq!(ev.b_attempt(&q(1, 1), route, p).unwrap().status, Status::Pass);
    }
}

#[test]
fn b_margin_matches_leading_term() {
    // For large t, g̃ − f̃ ≈ (480πt − 720) e^{−2πt}.
    let ev = Evaluator::new();
    let c = ev.certify_b_positive(&q(10, 1), EvalParams::default()).unwrap();
    let diff = c.enclosures[0].interval.midpoint().to_f64().unwrap();
    let pi = std::f64::consts::PI;
    let lead = (480.0 * pi * 10.0 - 720.0) * (-20.0 * pi).exp();
    assert!((diff / lead - 1.0).abs() < 1e-6, "{diff} vs {lead}");
}

#[test]
fn a_negative_at_sample_points() {
    let ev = Evaluator::new();
    for t in [q(1, 1), q(1, 3), q(3, 1), q(7, 3), q(1, 8), q(8, 1)] {
        let c = ev.certify_a_negative(&t, EvalParams::default()).unwrap();
        assert_eq!(c.status, Status::Pass, "{t}: {c:?}");
        assert!(c.value.interval.is_negative());
    }
}

#[test]
fn a_values_agree_across_routes_at_one() {
    // A(1) computed through (f̃, g̃) at i and through (f, g) at i coincide.
    let ev = Evaluator::new();
    let direct = ev.certify_a_negative(&q(1, 1), EvalParams::default()).unwrap();
    let reg = ev.registry(128);
    let s = q(1, 1);
    let sum = eval_series(&reg.get(Entry::F).add(&reg.get(Entry::G)), "f+g", &s, 128).unwrap();
    let delta = eval_series(&reg.get(Entry::DELTA_POLY), "delta", &s, 128).unwrap();
    let recip = quotient(&ev.prefactor(&s, Route::Reciprocal, 128), &sum, &delta).neg();
    assert!(direct.value.interval.intersects(&recip));
}

#[test]
fn negated_phi0_numerator_fails() {
    let ev = Evaluator::with_mutations(vec![Mutation::Negate(Entry::PHI0_NUM)]);
    let c = ev.certify_a_negative(&q(1, 3), EvalParams::default()).unwrap();
    assert_eq!(c.status, Status::Fail);
}

#[test]
fn refinement_keeps_passes() {
    let ev = Evaluator::new();
    for (order, precision) in [(64, 128), (128, 256)] {
        let p = EvalParams { order, precision };
        assert_eq!(ev.certify_b_positive(&q(5, 4), p).unwrap().status, Status::Pass);
        assert_eq!(ev.certify_a_negative(&q(4, 5), p).unwrap().status, Status::Pass);
    }
}

#[test]
fn grid_shape() {
    assert_eq!(grid_points(&q(1, 8), &q(8, 1), 1), vec![q(1, 8)]);
    let pts = grid_points(&q(1, 8), &q(8, 1), 129);
    assert_eq!(pts.len(), 129);
    assert_eq!(pts[0], q(1, 8));
    assert_eq!(pts[128], q(8, 1));
    assert_eq!(pts[64], q(1, 1));
    for k in 0..129 {
        assert_eq!(&pts[k] * &pts[128 - k], q(1, 1));
    }
    assert!(pts.windows(2).all(|w| w[0] < w[1]));
    let plain = grid_points(&q(1, 1), &q(10, 1), 100);
    assert_eq!(plain.len(), 100);
    assert!(plain.windows(2).all(|w| w[0] < w[1]));
}

#[test]
fn small_scan_is_deterministic() {
    let ev = Evaluator::new();
    let p = EvalParams { order: 64, precision: 128 };
    let a = ev.scan(&q(1, 4), &q(4, 1), 9, p).unwrap();
    let b = ev.scan(&q(1, 4), &q(4, 1), 9, p).unwrap();
    assert_eq!(a, b);
    assert_eq!(a.rows.len(), 9);
    assert!(a.rows.iter().all(GridRow::passed));
    assert!(matches!(ev.scan(&q(2, 1), &q(1, 1), 3, p), Err(EvalError::InvalidGrid)));
}
