//! Certified enclosures of π, `e^x`, the arithmetic–geometric mean and Γ(1/4).
//!
//! Each public constant is computed at a working precision well above the
//! request and then snapped outward onto a dyadic grid whose cell size is
//! tied to the requested precision (see [`Interval::snap_outward`]). That
//! makes enclosures at increasing precision nested.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use super::dyadic::Dyadic;
use super::interval::Interval;
use super::{NumericsError, Rational};

/// Largest `|x|` accepted by [`enclose_exp`].
pub const EXP_ARG_LIMIT: i64 = 64;

const GUARD_BITS: u32 = 32;

/// Named constants with certified enclosures.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Constant {
    Pi,
    /// `e^{kπ}`
    ExpPiMult(i32),
    GammaQuarter,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConstantEnclosure {
    pub name: Constant,
    pub value: Interval,
    pub precision: u32,
}

impl ConstantEnclosure {
    pub fn compute(name: Constant, precision: u32) -> Result<Self, NumericsError> {
        let value = match name {
            Constant::Pi => enclose_pi(precision),
            Constant::GammaQuarter => enclose_gamma_quarter(precision),
            Constant::ExpPiMult(k) => enclose_exp_pi_mult(k, precision)?,
        };
        Ok(ConstantEnclosure { name, value, precision })
    }
}

fn snap_relative(raw: &Interval, precision: u32) -> Interval {
    let msb = raw.hi().abs().max(raw.lo().abs()).msb().unwrap_or(0);
    raw.snap_outward(msb - precision as i64).with_precision(precision)
}

/// `arctan(1/m)` by its alternating series.
///
/// With terms `t_k = 1 / ((2k+1) m^{2k+1})` decreasing, the partial sum
/// `S_n = Σ_{k<n} (-1)^k t_k` satisfies `|arctan(1/m) - S_n| ≤ t_n`.
fn arctan_recip(m: u32, w: u32) -> Interval {
    let stop = Dyadic::new(BigInt::one(), -(w as i64) - 4);
    let m = BigInt::from(m);
    let mut sum = Interval::from_int(0, w);
    let mut power = m.clone();
    let m2 = &m * &m;
    let mut k: u64 = 0;
    loop {
        let term = Interval::from_rational(&Rational::new(BigInt::one(), &power * (2 * k + 1)), w);
        if term.hi() < &stop {
            return sum.widen(term.hi());
        }
        sum = if k.is_multiple_of(2) { sum.add(&term) } else { sum.sub(&term) };
        power *= &m2;
        k += 1;
    }
}

/// π = 16 arctan(1/5) − 4 arctan(1/239), unsnapped, at working precision `w`.
pub(crate) fn pi_raw(w: u32) -> Interval {
    let a = arctan_recip(5, w).mul_pow2(4);
    let b = arctan_recip(239, w).mul_pow2(2);
    a.sub(&b)
}

/// Enclosure of π with width at most `2^{-(precision-4)}`.
///
/// Precisions below 16 are raised to 16.
pub fn enclose_pi(precision: u32) -> Interval {
    let precision = precision.max(16);
    snap_relative(&pi_raw(precision + GUARD_BITS), precision)
}

/// `e^x` at working precision `w`, unsnapped.
///
/// Halve `x` until `|y| ≤ 1/2`, sum the Taylor series of `e^y` until the
/// current term `t_n` is negligible, and bound the remainder by `|t_n|`
/// (later terms shrink by a factor of at least 4). Then square back up.
pub(crate) fn exp_raw(x: &Rational, w: u32) -> Result<Interval, NumericsError> {
    if x.abs() > Rational::from_integer(EXP_ARG_LIMIT.into()) {
        return Err(NumericsError::OutOfRange { x: x.to_string() });
    }
    if x.is_zero() {
        return Ok(Interval::from_int(1, w));
    }
    let half = Rational::new(1.into(), 2.into());
    let mut y = x.clone();
    let mut halvings = 0u32;
    while y.abs() > half {
        y /= Rational::from_integer(2.into());
        halvings += 1;
    }
    let wp = w + halvings + 16;
    let yi = Interval::from_rational(&y, wp);
    let stop = Dyadic::new(BigInt::one(), -(wp as i64) - 4);
    let mut sum = Interval::from_int(1, wp);
    let mut term = Interval::from_int(1, wp);
    let mut j: i64 = 1;
    loop {
        term = term.mul(&yi).mul_rational(&Rational::new(1.into(), j.into()));
        sum = sum.add(&term);
        if term.abs().hi() < &stop {
            sum = sum.widen(term.abs().hi());
            break;
        }
        j += 1;
    }
    for _ in 0..halvings {
        sum = sum.square();
    }
    Ok(sum.with_precision(w))
}

/// Enclosure of `e^x` for rational `|x| ≤ 64`.
pub fn enclose_exp(x: &Rational, precision: u32) -> Result<Interval, NumericsError> {
    let raw = exp_raw(x, precision + GUARD_BITS)?;
    Ok(snap_relative(&raw, precision))
}

fn enclose_exp_pi_mult(k: i32, precision: u32) -> Result<Interval, NumericsError> {
    let w = precision + GUARD_BITS;
    let arg = pi_raw(w + 8).mul(&Interval::from_int(k, w + 8));
    let lo = exp_raw(&arg.lo().to_rational(), w)?;
    let hi = exp_raw(&arg.hi().to_rational(), w)?;
    Ok(snap_relative(&lo.hull(&hi), precision))
}

/// Arithmetic–geometric mean of two positive intervals.
///
/// The AGM is increasing in both arguments and, for every `k`, lies between
/// the k-th arithmetic and geometric iterates. Iterating the interval
/// extension therefore keeps the true value inside `hull(A_k, B_k)`; we stop
/// once that hull is below the target width or stops shrinking.
pub fn agm(a: &Interval, b: &Interval, precision: u32) -> Result<Interval, NumericsError> {
    if !a.is_positive() || !b.is_positive() {
        return Err(NumericsError::NonPositiveInput);
    }
    let w = precision + 16;
    let mut x = a.with_precision(w);
    let mut y = b.with_precision(w);
    let mut hull = x.hull(&y);
    for _ in 0..256 {
        let msb = hull.hi().msb().unwrap_or(0);
        let target = Dyadic::new(BigInt::one(), msb - precision as i64 - 2);
        if hull.width() <= target {
            break;
        }
        let nx = x.add(&y).mul_pow2(-1);
        let ny = x.mul(&y).sqrt()?;
        let next = nx.hull(&ny);
        if next.width() >= hull.width() {
            break;
        }
        x = nx;
        y = ny;
        hull = next;
    }
    Ok(hull.with_precision(precision))
}

fn gamma_quarter_raw(w: u32) -> Interval {
    // Γ(1/4)² = (2π)^{3/2} / AGM(√2, 1)
    let two_pi = pi_raw(w).mul_pow2(1);
    let scale = two_pi.mul(&two_pi.sqrt().expect("2π > 0"));
    let root2 = Interval::from_int(2, w).sqrt().expect("2 > 0");
    let m = agm(&root2, &Interval::from_int(1, w), w).expect("positive inputs");
    scale.div(&m).expect("AGM > 0").sqrt().expect("positive")
}

/// Enclosure of Γ(1/4) via the AGM, independent of any theta series.
///
/// Precisions below 32 are raised to 32.
pub fn enclose_gamma_quarter(precision: u32) -> Interval {
    let precision = precision.max(32);
    snap_relative(&gamma_quarter_raw(precision + GUARD_BITS), precision)
}
