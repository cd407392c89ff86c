//! Exact rationals, outward-rounded intervals and certified constants.

mod constants;
mod dyadic;
mod interval;

use thiserror::Error;

pub use constants::{agm, enclose_exp, enclose_gamma_quarter, enclose_pi, Constant, ConstantEnclosure, EXP_ARG_LIMIT};
pub use dyadic::{Dyadic, Round};
pub use interval::Interval;

use crate::qseries::CoeffPoly;

/// Arbitrary-precision rational, always in lowest terms with positive denominator.
pub type Rational = num_rational::BigRational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NumericsError {
    #[error("exponential argument {x} outside the supported range |x| <= 64")]
    OutOfRange { x: String },
    #[error("input interval is not strictly positive")]
    NonPositiveInput,
    #[error("divisor interval contains zero")]
    DivisionByZero,
}

/// Evaluate a coefficient polynomial with `p` and `v` ranging over intervals.
pub fn eval_poly_interval(poly: &CoeffPoly, p: &Interval, v: &Interval) -> Interval {
    let prec = p.precision().max(v.precision());
    let mut acc = Interval::from_int(0, prec);
    for ((dp, dv), c) in poly.terms() {
        let term = p.powi(*dp).mul(&v.powi(*dv)).mul_rational(c);
        acc = acc.add(&term);
    }
    acc
}
