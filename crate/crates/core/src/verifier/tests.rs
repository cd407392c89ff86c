use num_traits::ToPrimitive;
use proptest::prelude::*;

use super::*;
use crate::forms::{Entry, Mutation};

fn int(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

fn enclosure(c: &Certificate, k: usize) -> &Interval {
    match &c.evidence {
        Evidence::Enclosures { enclosures, .. } => &enclosures[k].interval,
        other => panic!("unexpected evidence {other:?}"),
    }
}

#[test]
fn identities_pass_in_canonical_order() {
    let certs = check_identities(40);
    let ids: Vec<&str> = certs.iter().map(|c| c.check_id.as_str()).collect();
    assert_eq!(
        ids,
        [
            "i1_jacobi",
            "i2_delta_product",
            "i3_e2e4_minus_e6",
            "i4_delta_theta",
            "i5_e4_theta",
            "i6_g_gamma",
            "i7_g_tilde_shift",
            "i8_quintic",
            "i9_lambda_factorization",
            "i10_h_closed_form",
            "i11_f_decomposition",
        ]
    );
    for c in &certs {
        assert!(c.passed(), "{c:?}");
    }
}

#[test]
fn perturbed_theta3_breaks_jacobi_at_that_index() {
    let clean = FormRegistry::new(30);
    let reg = FormRegistry::with_mutations(30, vec![clean.perturbation(Entry::THETA3, 7)]);
    let jacobi = &check_identities_with(&reg)[0];
    assert_eq!(jacobi.status, Status::Fail);
    match &jacobi.evidence {
        Evidence::Residual { first_nonzero: Some(term), .. } => assert_eq!(term.index, 7),
        other => panic!("{other:?}"),
    }
}

#[test]
fn sign_lemmas_hold() {
    let certs = check_signs(60);
    assert_eq!(certs.len(), 7);
    assert!(certs.iter().all(Certificate::passed), "{certs:?}");
}

#[test]
fn negated_g_tilde_breaks_alternation() {
    let reg = FormRegistry::with_mutations(20, vec![Mutation::Negate(Entry::G_TILDE)]);
    let d = check_signs_with(&reg).into_iter().find(|c| c.check_id == "d_alternating").unwrap();
    assert_eq!(d.status, Status::Fail);
}

#[test]
fn symbolic_checks() {
    assert!(check_cancellations().passed());
    assert!(check_f1_derivative(20).passed());
    assert!(check_f1_derivative(16).passed());
}

/// Independent `g̃ = θ₄⁸(θ₃¹² + θ₄⁴θ₃⁸ + θ₂⁸θ₄⁴ − θ₂¹²)` through `q⁷` with
/// plain integer vectors.
fn g_tilde_oracle() -> Vec<i128> {
    const N: usize = 8;
    let mul = |a: &[i128], b: &[i128]| -> Vec<i128> {
        let mut c = vec![0i128; N];
        for i in 0..N {
            for j in 0..N - i {
                c[i + j] += a[i] * b[j];
            }
        }
        c
    };
    let pow = |a: &[i128], k: u32| -> Vec<i128> {
        let mut r = vec![0i128; N];
        r[0] = 1;
        for _ in 0..k {
            r = mul(&r, a);
        }
        r
    };
    let t3: Vec<i128> = (0..N).map(|n| if n == 0 { 1 } else if [1, 4].contains(&n) { 2 } else { 0 }).collect();
    let t4: Vec<i128> = (0..N).map(|n| if n == 0 { 1 } else if n == 1 { -2 } else if n == 4 { 2 } else { 0 }).collect();
    // θ₂⁴ = 16 q (1 + q² + q⁶ + ...)⁴
    let tri: Vec<i128> = (0..N).map(|n| if [0, 2, 6].contains(&n) { 1 } else { 0 }).collect();
    let tri4 = pow(&tri, 4);
    let x: Vec<i128> = (0..N).map(|n| if n == 0 { 0 } else { 16 * tri4[n - 1] }).collect();
    let (z, w) = (pow(&t3, 4), pow(&t4, 4));
    let z2 = mul(&z, &z);
    let z3 = mul(&z2, &z);
    let x2 = mul(&x, &x);
    let x3 = mul(&x2, &x);
    let inner: Vec<i128> = (0..N)
        .map(|n| z3[n] + mul(&w, &z2)[n] + mul(&x2, &w)[n] - x3[n])
        .collect();
    mul(&mul(&w, &w), &inner)
}

#[test]
fn h_q3_coefficient_against_oracle() {
    let d = g_tilde_oracle();
    assert_eq!(&d[..6], &[2, 0, 240, -10240, 134640, -1007616]);
    let cert = check_h_typo();
    assert!(cert.passed());
    let Evidence::Exact { values } = &cert.evidence else { panic!() };
    let get = |k: &str| values.iter().find(|v| v.name == k).unwrap().value.clone();
    assert_eq!(get("H[q^3]"), (-d[5]).to_string());
    assert_eq!(get("H[q^1]"), "10240");
    assert_eq!(get("printed_reference"), "10007616");
    assert_eq!(get("matches_printed_reference"), "false");
}

#[test]
fn quadratic_discriminant() {
    // Oracle: 636² − 480·774 = 32976 exactly, and e^{2π} > 535.
    assert_eq!(636 * 636 - 480 * 774, 32976);
    let cert = check_quadratic_positivity(64);
    assert!(cert.passed());
    let enc = enclosure(&cert, 0);
    assert!(enc.lies_below(&int(32976 - 480 * 535)));
    // A sign flip of the constant makes the discriminant positive.
    assert_eq!(check_quadratic_positivity_with(&int(-774), 64).status, Status::Fail);
    // Enlarging the constant keeps the quadratic positive.
    assert!(check_quadratic_positivity_with(&int(7_740_000), 64).passed());
}

#[test]
fn quadratic_widths_shrink_with_precision() {
    let w = |p| super::quadratic_discriminant(&int(774), p).width().to_f64();
    assert!(w(128) < w(64));
    assert!(w(256) < w(128));
}

#[test]
fn lemma_constants_against_float_oracle() {
    // f64 evaluation of the closed forms with Γ(1/4) = 3.6256099082219083.
    let pi = std::f64::consts::PI;
    let g = 3.625_609_908_221_908_3_f64;
    let l0 = (3.0 * pi).exp() * 9.0 * g.powi(16) / (8192.0 * pi.powi(12));
    let l1 = -240.0 + 6.0 * (2.0 * pi).exp() * g.powi(20) / (2.0 * pi).powi(15);
    let l2 = 480.0 * pi + 123840.0 * pi * (-2.0 * pi).exp() + (2.0 * pi).exp() * (2.0 - 45.0 * g.powi(16) / (8192.0 * pi.powi(12)));
    let certs = check_lemma_constants(128);
    assert!(certs.iter().all(Certificate::passed), "{certs:#?}");
    for (cert, oracle, (lo, hi)) in [(&certs[0], l0, (13130, 13131)), (&certs[1], l1, (287, 288)), (&certs[2], l2, (468, 469))] {
        let enc = enclosure(cert, 0);
        assert!(enc.lies_above(&int(lo)) && enc.lies_below(&int(hi)), "{enc}");
        let mid = enc.midpoint().to_f64().unwrap();
        assert!((mid - oracle).abs() < 1e-8 * oracle.abs(), "{mid} vs {oracle}");
    }
    assert!(enclosure(&certs[0], 0).width().to_f64() <= 0.01);
}

#[test]
fn l2_equals_truncated_decomposition_at_i() {
    // L2 is F̃₁(i) + F̃₂(i); compare against the series evaluation.
    use crate::evaluator::eval_series;
    let reg = FormRegistry::new(96);
    let sum = reg.get(Entry::F1).add(&reg.get(Entry::F2));
    let enc = eval_series(&sum, "F1+F2", &int(1), 160).unwrap();
    assert!(enc.intersects(&lemma_values(128)[2]), "{enc}");
}

#[test]
fn special_values_at_i() {
    let certs = check_special_values(64, 128).unwrap();
    assert_eq!(certs.len(), 7);
    for c in &certs {
        assert!(c.passed(), "{c:?}");
    }
    assert!(enclosure(&certs[0], 0).width().to_f64() <= 1e-10);
}

#[test]
fn certificates_serialize() {
    let cert = check_quadratic_positivity(64);
    let v = serde_json::to_value(&cert).unwrap();
    assert_eq!(v["status"], "pass");
    assert_eq!(v["evidence"]["kind"], "enclosures");
    assert!(v["evidence"]["enclosures"][0]["lo"].as_str().unwrap().starts_with('-'));
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 8, ..ProptestConfig::default() })]
    #[test]
    fn single_mutations_are_detected(which in 0usize..6, index in 0usize..24) {
        let entry = Entry::BASE[which];
        let clean = FormRegistry::new(24);
        let reg = FormRegistry::with_mutations(24, vec![clean.perturbation(entry, index)]);
        let certs = exact_suites(&reg);
        prop_assert!(certs.iter().any(|c| c.status == Status::Fail));
    }
}
