use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive};
use rayon::prelude::*;
use serde::Serialize;

use super::{EvalError, EvalParams, Evaluator, SignCertificate};
use crate::numerics::Rational;
use crate::verifier::Status;

/// Largest denominator used for interior grid points.
const MAX_DENOMINATOR: i64 = 4096;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GridRow {
    #[serde(serialize_with = "crate::verifier::serialize_rational")]
    pub t: Rational,
    pub a: SignCertificate,
    pub b: SignCertificate,
}

impl GridRow {
    pub fn passed(&self) -> bool {
        self.a.status == Status::Pass && self.b.status == Status::Pass
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GridReport {
    #[serde(serialize_with = "crate::verifier::serialize_rational")]
    pub t_min: Rational,
    #[serde(serialize_with = "crate::verifier::serialize_rational")]
    pub t_max: Rational,
    pub steps: usize,
    pub rows: Vec<GridRow>,
}

/// Best rational approximation with denominator at most `max_den`, by
/// continued fractions.
fn approximate(x: f64, max_den: i64) -> Rational {
    let (mut h0, mut h1) = (0i64, 1i64);
    let (mut k0, mut k1) = (1i64, 0i64);
    let mut rest = x;
    for _ in 0..64 {
        let a = rest.floor();
        let ai = a as i64;
        let k2 = ai.saturating_mul(k1).saturating_add(k0);
        if k2 > max_den || k2 <= 0 {
            break;
        }
        let h2 = ai * h1 + h0;
        (h0, h1, k0, k1) = (h1, h2, k1, k2);
        let frac = rest - a;
        if frac < 1e-12 {
            break;
        }
        rest = 1.0 / frac;
    }
    Rational::new(BigInt::from(h1), BigInt::from(k1))
}

/// Geometric grid from `t_min` to `t_max` with exact rational points.
///
/// Endpoints are exact. Interior points are rational approximations of the
/// geometric sequence. When `t_min · t_max = 1` the upper half is the
/// reciprocal image of the lower half, so `t` and `1/t` both appear.
pub fn grid_points(t_min: &Rational, t_max: &Rational, steps: usize) -> Vec<Rational> {
    if steps <= 1 {
        return vec![t_min.clone()];
    }
    let lo = t_min.to_f64().unwrap_or(0.0).ln();
    let hi = t_max.to_f64().unwrap_or(0.0).ln();
    let at = |k: usize| -> Rational {
        if k == 0 {
            return t_min.clone();
        }
        if k == steps - 1 {
            return t_max.clone();
        }
        let x = (lo + (hi - lo) * k as f64 / (steps - 1) as f64).exp();
        let r = approximate(x, MAX_DENOMINATOR);
        if r.is_positive() {
            r
        } else {
            Rational::new(BigInt::one(), BigInt::from(MAX_DENOMINATOR))
        }
    };
    let mirrored = (t_min * t_max).is_one();
    let mut points: Vec<Rational> = (0..steps)
        .map(|k| if mirrored && 2 * k >= steps && k != steps - 1 { at(steps - 1 - k).recip() } else { at(k) })
        .collect();
    if mirrored && steps % 2 == 1 {
        points[steps / 2] = Rational::one();
    }
    points.dedup();
    points
}

pub(super) fn scan(
    ev: &Evaluator,
    t_min: &Rational,
    t_max: &Rational,
    steps: usize,
    params: EvalParams,
) -> Result<GridReport, EvalError> {
    if !t_min.is_positive() || t_max <= t_min || steps == 0 {
        return Err(EvalError::InvalidGrid);
    }
    let points = grid_points(t_min, t_max, steps);
    // Build the shared series once before fanning out.
    ev.certify_b_positive(&Rational::one(), params)?;
    ev.certify_a_negative(&Rational::new(1.into(), 2.into()), params)?;
    let rows: Result<Vec<GridRow>, EvalError> = points
        .par_iter()
        .map(|t| {
            Ok(GridRow { t: t.clone(), a: ev.certify_a_negative(t, params)?, b: ev.certify_b_positive(t, params)? })
        })
        .collect();
    Ok(GridReport { t_min: t_min.clone(), t_max: t_max.clone(), steps, rows: rows? })
}
