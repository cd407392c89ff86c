use num_traits::Signed;

use super::{verdict, CheckParams, Certificate, Evidence, Status};
use crate::forms::{sign_violations, Entry, FormRegistry};
use crate::numerics::Rational;

/// Finite-order sign statements for the coefficient sequences.
///
/// Each certificate covers only the indices that were computed; nothing is
/// claimed about larger indices.
pub fn check_signs(n: usize) -> Vec<Certificate> {
    check_signs_with(&FormRegistry::new(n))
}

pub fn check_signs_with(reg: &FormRegistry) -> Vec<Certificate> {
    let n = reg.order();
    let seq = reg.sequences();
    let sign_cert = |id: &str, statement: &str, values: &[Rational], alternating: bool| {
        let violations = sign_violations(values, alternating);
        Certificate {
            check_id: id.to_string(),
            status: verdict(violations.is_empty()),
            evidence: Evidence::Signs { statement: statement.to_string(), checked_below: values.len(), violations },
            params: CheckParams { order: Some(n), precision: None },
        }
    };
    // a_n is read off the π² monomial, so no other monomial may appear.
    let a_pure = reg.get(Entry::F).coeffs().iter().all(|c| c.terms().all(|(m, _)| *m == (2, 0)));
    let mut a_cert = sign_cert("a_nonnegative", "a_n >= 0 for all computed n < N (f = pi^2 * sum a_n q^n)", &seq.a, false);
    if !a_pure {
        a_cert.status = Status::Fail;
    }
    vec![
        a_cert,
        sign_cert("b_nonnegative", "b_n >= 0 for all computed n < N (g = sum b_n q^n)", &seq.b, false),
        sign_cert("d_alternating", "(-1)^n d_n >= 0 for all computed n < N (g~ = sum d_n q^n)", &seq.d, true),
        sign_cert("alpha_nonnegative", "alpha_n >= 0 for all computed 2n < N", &seq.alpha, false),
        sign_cert("beta_nonnegative", "beta_n >= 0 for all computed 2n < N", &seq.beta, false),
        sign_cert("delta_nonnegative", "delta_n >= 0 for all computed 2n < N", &seq.delta, false),
        f2_summands(reg.order(), &seq.alpha, &seq.beta),
    ]
}

/// Each summand `(−(π²/18) α_n t² − 2 β_n) e^{−λt}`, `λ = π(2n−2)`, of the
/// axis expansion of the second piece of F̃ has derivative
/// `e^{−λt} (λ(π²/18) α_n t² − (π²/9) α_n t + 2λβ_n)`, which is at least
/// `2λβ_n e^{−λt} ≥ 0` once `λt ≥ 2` and `α_n, β_n ≥ 0`. At `t = 1` and
/// `n ≥ 3`, `λ ≥ 4π > 2` using only `π > 3`.
fn f2_summands(order: usize, alpha: &[Rational], beta: &[Rational]) -> Certificate {
    let pi_lower = Rational::from_integer(3.into());
    let two = Rational::from_integer(2.into());
    let mut violations = Vec::new();
    for n in 3..alpha.len().min(beta.len()) {
        let lambda_t_lower = &pi_lower * Rational::from_integer((2 * n - 2).into());
        if alpha[n].is_negative() || beta[n].is_negative() || lambda_t_lower < two {
            violations.push(n);
        }
    }
    Certificate {
        check_id: "f2_summands_increasing".to_string(),
        status: verdict(violations.is_empty()),
        evidence: Evidence::Signs {
            statement: "each n >= 3 summand of F~_2(it) is increasing for t >= 1, for all computed 2n < N".to_string(),
            checked_below: alpha.len().min(beta.len()),
            violations,
        },
        params: CheckParams { order: Some(order), precision: None },
    }
}
