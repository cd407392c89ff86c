use super::{CheckParams, Certificate, Evidence, NamedEnclosure, Status, MIN_PRECISION};
use crate::evaluator::{eval_series, EvalError};
use crate::forms::{Entry, FormRegistry};
use crate::numerics::{enclose_gamma_quarter, enclose_pi, Constant, ConstantEnclosure, Interval, Rational};

/// Constant term of the quadratic `120π²t² − 636πt + (c + e^{2π})`.
pub const QUADRATIC_CONSTANT: i64 = 774;

const PRECISION_CAP: u32 = 1024;

fn r(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

fn exp_pi(k: i32, precision: u32) -> Interval {
    ConstantEnclosure::compute(Constant::ExpPiMult(k), precision).expect("|kπ| is in range").value
}

/// Run `attempt` at doubling precision until it is conclusive or the cap is
/// reached.
fn escalate(precision: u32, attempt: impl Fn(u32) -> Certificate) -> Certificate {
    let mut p = precision.max(MIN_PRECISION);
    loop {
        let cert = attempt(p);
        if cert.status != Status::Inconclusive || p >= PRECISION_CAP {
            return cert;
        }
        p = (p * 2).min(PRECISION_CAP);
    }
}

/// Enclosure of `636² − 480 (c + e^{2π})`; the discriminant of the
/// quadratic is `π²` times this.
pub fn quadratic_discriminant(constant: &Rational, precision: u32) -> Interval {
    let shifted = exp_pi(2, precision).add(&Interval::from_rational(constant, precision));
    Interval::from_int(636 * 636, precision).sub(&shifted.mul_rational(&r(480)))
}

/// The quadratic `120π²t² − 636πt + 774 + e^{2π}` has negative
/// discriminant, so it is positive on the real line.
pub fn check_quadratic_positivity(precision: u32) -> Certificate {
    check_quadratic_positivity_with(&r(QUADRATIC_CONSTANT), precision)
}

pub fn check_quadratic_positivity_with(constant: &Rational, precision: u32) -> Certificate {
    escalate(precision, |p| {
        let disc = quadratic_discriminant(constant, p);
        let status = if disc.is_negative() {
            Status::Pass
        } else if disc.lo().signum() >= 0 {
            Status::Fail
        } else {
            Status::Inconclusive
        };
        Certificate {
            check_id: "quadratic_positivity".to_string(),
            status,
            evidence: Evidence::Enclosures {
                comparison: format!("636^2 - 480*({constant} + e^(2pi)) < 0"),
                enclosures: vec![NamedEnclosure::new("reduced_discriminant", disc)],
            },
            params: CheckParams { order: None, precision: Some(p) },
        }
    })
}

/// The three closed-form constants `(L0, L1, L2)`.
///
/// ```text
/// L0 = e^{3π} 9 Γ(1/4)^16 / (8192 π^12)
/// L1 = −240 + 6 e^{2π} Γ(1/4)^20 / (2π)^15
/// L2 = 480π + 123840π e^{−2π} + e^{2π} (2 − 45 Γ(1/4)^16 / (8192 π^12))
/// ```
pub fn lemma_values(precision: u32) -> [Interval; 3] {
    let p = precision;
    let pi = enclose_pi(p);
    let gamma = enclose_gamma_quarter(p);
    let (e2, e3, em2) = (exp_pi(2, p), exp_pi(3, p), exp_pi(-2, p));
    let g16 = gamma.powi(16);
    let ratio = g16.div(&pi.powi(12).mul_rational(&r(8192))).expect("π > 0");
    let l0 = e3.mul(&ratio).mul_rational(&r(9));
    let two_pi_15 = pi.mul_rational(&r(2)).powi(15);
    let l1 = e2.mul(&gamma.powi(20)).div(&two_pi_15).expect("π > 0").mul_rational(&r(6)).sub(&Interval::from_int(240, p));
    let l2 = pi
        .mul_rational(&r(480))
        .add(&em2.mul(&pi).mul_rational(&r(123840)))
        .add(&e2.mul(&Interval::from_int(2, p).sub(&ratio.mul_rational(&r(45)))));
    [l0, l1, l2]
}

/// `L0 < 20480`, `L1 < 288` and `L2 > 468`, each on the whole enclosure.
pub fn check_lemma_constants(precision: u32) -> Vec<Certificate> {
    type Spec = (&'static str, &'static str, i64, bool);
    let specs: [Spec; 3] = [
        ("lemma_l0_f_bound", "L0 < 20480", 20480, true),
        ("lemma_l1_g_cap_bound", "L1 < 288", 288, true),
        ("lemma_l2_f_cap_bound", "L2 > 468", 468, false),
    ];
    specs
        .iter()
        .enumerate()
        .map(|(i, &(id, comparison, bound, below))| {
            escalate(precision, |p| {
                let value = lemma_values(p)[i].clone();
                let bound = r(bound);
                let (holds, violated) = if below {
                    (value.lies_below(&bound), value.lo().to_rational() >= bound)
                } else {
                    (value.lies_above(&bound), value.hi().to_rational() <= bound)
                };
                let status = if holds {
                    Status::Pass
                } else if violated {
                    Status::Fail
                } else {
                    Status::Inconclusive
                };
                Certificate {
                    check_id: id.to_string(),
                    status,
                    evidence: Evidence::Enclosures {
                        comparison: comparison.to_string(),
                        enclosures: vec![NamedEnclosure::new(format!("L{i}"), value)],
                    },
                    params: CheckParams { order: None, precision: Some(p) },
                }
            })
        })
        .collect()
}

/// Series values at `z = i` against their closed forms.
pub fn check_special_values(n: usize, precision: u32) -> Result<Vec<Certificate>, EvalError> {
    check_special_values_with(&FormRegistry::new(n), precision)
}

pub fn check_special_values_with(reg: &FormRegistry, precision: u32) -> Result<Vec<Certificate>, EvalError> {
    let p = precision;
    let one = Rational::from_integer(1.into());
    let at_i = |e: Entry| eval_series(&reg.get(e), e.name(), &one, p);
    let pi = enclose_pi(p);
    let gamma = enclose_gamma_quarter(p);
    let g4 = gamma.powi(4);
    let g8 = gamma.powi(8);
    let two_pi_cubed = pi.mul_rational(&r(2)).powi(3);

    let closed = [
        ("E2(i) = 3/pi", Entry::E2, Interval::from_int(3, p).div(&pi)?),
        ("E4(i) = 3 Gamma(1/4)^8 / (64 pi^6)", Entry::E4, g8.mul_rational(&r(3)).div(&pi.powi(6).mul_rational(&r(64)))?),
        ("theta2(i)^4 = Gamma(1/4)^4 / (2 pi)^3", Entry::X, g4.div(&two_pi_cubed)?),
        ("theta3(i)^4 = Gamma(1/4)^4 / (4 pi^3)", Entry::Z, g4.div(&pi.powi(3).mul_rational(&r(4)))?),
        ("theta4(i)^4 = Gamma(1/4)^4 / (2 pi)^3", Entry::W, g4.div(&two_pi_cubed)?),
    ];
    let mut out = Vec::new();
    let e6 = at_i(Entry::E6)?;
    out.push(Certificate {
        check_id: "special_e6".to_string(),
        status: if e6.contains_zero() { Status::Pass } else { Status::Fail },
        evidence: Evidence::Enclosures {
            comparison: "E6(i) = 0: series enclosure contains 0".to_string(),
            enclosures: vec![NamedEnclosure::new("series", e6)],
        },
        params: CheckParams { order: Some(reg.order()), precision: Some(p) },
    });
    for (comparison, entry, closed_form) in closed {
        let series = at_i(entry)?;
        out.push(Certificate {
            check_id: format!("special_{}", entry.name().to_lowercase()),
            status: if series.intersects(&closed_form) { Status::Pass } else { Status::Fail },
            evidence: Evidence::Enclosures {
                comparison: format!("{comparison}: enclosures intersect"),
                enclosures: vec![NamedEnclosure::new("series", series), NamedEnclosure::new("closed_form", closed_form)],
            },
            params: CheckParams { order: Some(reg.order()), precision: Some(p) },
        });
    }
    // Γ(1/4) recovered from the θ₃ series, against the AGM enclosure.
    let z = at_i(Entry::Z)?;
    let from_series = z.mul(&pi.powi(3).mul_rational(&r(4))).sqrt()?.sqrt()?;
    out.push(Certificate {
        check_id: "special_gamma_quarter".to_string(),
        status: if from_series.intersects(&gamma) { Status::Pass } else { Status::Fail },
        evidence: Evidence::Enclosures {
            comparison: "(4 pi^3 theta3(i)^4)^(1/4) = Gamma(1/4): enclosures intersect".to_string(),
            enclosures: vec![NamedEnclosure::new("series", from_series), NamedEnclosure::new("agm", gamma)],
        },
        params: CheckParams { order: Some(reg.order()), precision: Some(p) },
    });
    Ok(out)
}
