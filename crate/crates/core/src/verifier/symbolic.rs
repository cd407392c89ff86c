use num_traits::Zero;

use super::{verdict, CheckParams, Certificate, Evidence, NamedValue, MIN_ORDER};
use crate::forms::{Entry, FormRegistry};
use crate::numerics::Rational;
use crate::qseries::{AxisSeries, CoeffPoly};

/// The value printed for the `q³` coefficient of `H` in the source
/// expansion; kept only so reports can show it next to the computed one.
pub const PRINTED_H3: i64 = 10007616;

fn r(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

/// The compensating polynomial terms in F̃₂ and F̃₃ cancel the low summands.
pub fn check_cancellations() -> Certificate {
    check_cancellations_with(&FormRegistry::new(MIN_ORDER))
}

pub fn check_cancellations_with(reg: &FormRegistry) -> Certificate {
    let seq = reg.sequences();
    let alpha2 = seq.alpha[2].clone();
    let beta2 = seq.beta[2].clone();
    let (delta1, delta2) = (seq.delta[1].clone(), seq.delta[2].clone());

    // Coefficient-ring identities behind the cancellations.
    let a = &alpha2 * ratio(1, 18) == r(28800);
    let b = &beta2 * r(2) == r(123840);
    let c = &delta1 * ratio(2, 3) == r(480);
    let d = &delta2 * ratio(2, 3) == r(123840);
    // The cancelled positions of the built series are empty: F̃₂ at q²,
    // F̃₃ at q⁰ and q².
    let f2 = reg.get(Entry::F2);
    let f3 = reg.get(Entry::F3);
    let f2_q2 = f2.coeff(2).cloned().unwrap_or_else(CoeffPoly::zero);
    let f3_q0 = f3.coeff(0).cloned().unwrap_or_else(CoeffPoly::zero);
    let f3_q2 = f3.coeff(2).cloned().unwrap_or_else(CoeffPoly::zero);
    let ok = a && b && c && d && f2_q2.is_zero() && f3_q0.is_zero() && f3_q2.is_zero();
    Certificate {
        check_id: "cancellations".to_string(),
        status: verdict(ok),
        evidence: Evidence::Exact {
            values: vec![
                NamedValue::new("alpha_2/18", &alpha2 * ratio(1, 18)),
                NamedValue::new("2*beta_2", &beta2 * r(2)),
                NamedValue::new("(2/3)*delta_1", &delta1 * ratio(2, 3)),
                NamedValue::new("(2/3)*delta_2", &delta2 * ratio(2, 3)),
                NamedValue::new("F2[q^2]", f2_q2.display_pv()),
                NamedValue::new("F3[q^0]", f3_q0.display_pv()),
                NamedValue::new("F3[q^2]", f3_q2.display_pv()),
            ],
        },
        params: CheckParams { order: Some(reg.order()), precision: None },
    }
}

/// `d/dt F̃₁(it) = 480π + e^{−2πt} · 480π (120π²t² − 636πt + 774)`, exactly.
pub fn check_f1_derivative(n: usize) -> Certificate {
    check_f1_derivative_with(&FormRegistry::new(n))
}

pub fn check_f1_derivative_with(reg: &FormRegistry) -> Certificate {
    let derivative = reg.get(Entry::F1).to_axis().diff_t();
    let bracket = CoeffPoly::from_terms([((2, 2), r(120)), ((1, 1), r(-636)), ((0, 0), r(774))]);
    let expected = AxisSeries::from_terms(
        [(0, CoeffPoly::monomial(1, 0, r(480))), (2, &bracket * &CoeffPoly::monomial(1, 0, r(480)))],
        derivative.order(),
    );
    let residual = derivative.sub(&expected);
    let ok = residual.is_zero();
    let show = |n: usize| derivative.coeff(n).map(CoeffPoly::display_pt).unwrap_or_default();
    Certificate {
        check_id: "f1_derivative".to_string(),
        status: verdict(ok),
        evidence: Evidence::Exact {
            values: vec![
                NamedValue::new("exponent_0", show(0)),
                NamedValue::new("exponent_2", show(2)),
                NamedValue::new("residual", residual.to_string()),
            ],
        },
        params: CheckParams { order: Some(reg.order()), precision: None },
    }
}

/// The `q³` coefficient of `H = (G̃ − G̃(z+1))/2` against `−d₅`.
///
/// Passes when the computed coefficient equals `−d₅` from `g̃`; the printed
/// reference value is reported but never used as truth.
pub fn check_h_typo() -> Certificate {
    check_h_typo_with(&FormRegistry::new(MIN_ORDER))
}

pub fn check_h_typo_with(reg: &FormRegistry) -> Certificate {
    let h = reg.get(Entry::H_FN);
    let gt = reg.get(Entry::G_TILDE);
    let h1 = h.rational(1).unwrap_or_else(Rational::zero);
    let h3 = h.rational(3).unwrap_or_else(Rational::zero);
    let minus_d3 = -gt.rational(3).unwrap_or_else(Rational::zero);
    let minus_d5 = -gt.rational(5).unwrap_or_else(Rational::zero);
    let printed = r(PRINTED_H3);
    Certificate {
        check_id: "h_q3_coefficient".to_string(),
        status: verdict(h1 == minus_d3 && h3 == minus_d5),
        evidence: Evidence::Exact {
            values: vec![
                NamedValue::new("H[q^1]", &h1),
                NamedValue::new("-d_3", &minus_d3),
                NamedValue::new("H[q^3]", &h3),
                NamedValue::new("-d_5", &minus_d5),
                NamedValue::new("printed_reference", &printed),
                NamedValue::new("matches_printed_reference", h3 == printed),
            ],
        },
        params: CheckParams { order: Some(reg.order()), precision: None },
    }
}
