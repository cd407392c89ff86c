//! Outward-rounded interval arithmetic over dyadic endpoints.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;

use super::dyadic::{Dyadic, Round};
use super::{NumericsError, Rational};

/// Closed interval `[lo, hi]` guaranteed to contain some exact real.
///
/// Every operation rounds the lower endpoint down and the upper endpoint up
/// to `precision` significant bits, so the result contains the exact image
/// of its inputs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Interval {
    lo: Dyadic,
    hi: Dyadic,
    precision: u32,
}

impl Interval {
    pub fn new(lo: Dyadic, hi: Dyadic, precision: u32) -> Self {
        assert!(lo <= hi, "interval endpoints out of order");
        Interval { lo: lo.round(precision, Round::Floor), hi: hi.round(precision, Round::Ceil), precision }
    }

    pub fn point(x: Dyadic, precision: u32) -> Self {
        Interval::new(x.clone(), x, precision)
    }

    pub fn from_int(v: impl Into<BigInt>, precision: u32) -> Self {
        Interval::point(Dyadic::from_int(v), precision)
    }

    pub fn from_rational(r: &Rational, precision: u32) -> Self {
        Interval {
            lo: Dyadic::from_rational(r, precision, Round::Floor),
            hi: Dyadic::from_rational(r, precision, Round::Ceil),
            precision,
        }
    }

    /// Smallest interval containing both rationals.
    pub fn from_rational_bounds(a: &Rational, b: &Rational, precision: u32) -> Self {
        let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
        Interval {
            lo: Dyadic::from_rational(lo, precision, Round::Floor),
            hi: Dyadic::from_rational(hi, precision, Round::Ceil),
            precision,
        }
    }

    pub fn lo(&self) -> &Dyadic {
        &self.lo
    }

    pub fn hi(&self) -> &Dyadic {
        &self.hi
    }

    pub fn precision(&self) -> u32 {
        self.precision
    }

    pub fn with_precision(&self, precision: u32) -> Interval {
        Interval::new(self.lo.clone(), self.hi.clone(), precision)
    }

    pub fn width(&self) -> Dyadic {
        self.hi.sub(&self.lo)
    }

    pub fn midpoint(&self) -> Rational {
        (self.lo.to_rational() + self.hi.to_rational()) / Rational::from_integer(2.into())
    }

    pub fn is_point(&self) -> bool {
        self.lo == self.hi
    }

    pub fn is_positive(&self) -> bool {
        self.lo.signum() > 0
    }

    pub fn is_negative(&self) -> bool {
        self.hi.signum() < 0
    }

    pub fn contains_zero(&self) -> bool {
        self.lo.signum() <= 0 && self.hi.signum() >= 0
    }

    pub fn contains_rational(&self, r: &Rational) -> bool {
        &self.lo.to_rational() <= r && r <= &self.hi.to_rational()
    }

    pub fn contains(&self, other: &Interval) -> bool {
        self.lo <= other.lo && other.hi <= self.hi
    }

    pub fn intersects(&self, other: &Interval) -> bool {
        self.lo <= other.hi && other.lo <= self.hi
    }

    pub fn hull(&self, other: &Interval) -> Interval {
        Interval {
            lo: self.lo.clone().min(other.lo.clone()),
            hi: self.hi.clone().max(other.hi.clone()),
            precision: self.precision.max(other.precision),
        }
    }

    /// Both endpoints compared strictly against a rational.
    pub fn lies_below(&self, r: &Rational) -> bool {
        &self.hi.to_rational() < r
    }

    pub fn lies_above(&self, r: &Rational) -> bool {
        &self.lo.to_rational() > r
    }

    fn prec2(&self, other: &Interval) -> u32 {
        self.precision.max(other.precision)
    }

    pub fn add(&self, other: &Interval) -> Interval {
        let p = self.prec2(other);
        Interval {
            lo: self.lo.add(&other.lo).round(p, Round::Floor),
            hi: self.hi.add(&other.hi).round(p, Round::Ceil),
            precision: p,
        }
    }

    pub fn sub(&self, other: &Interval) -> Interval {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Interval {
        Interval { lo: self.hi.neg(), hi: self.lo.neg(), precision: self.precision }
    }

    pub fn abs(&self) -> Interval {
        if self.lo.signum() >= 0 {
            self.clone()
        } else if self.hi.signum() <= 0 {
            self.neg()
        } else {
            let m = self.lo.abs().max(self.hi.clone());
            Interval { lo: Dyadic::zero(), hi: m, precision: self.precision }
        }
    }

    pub fn mul(&self, other: &Interval) -> Interval {
        let p = self.prec2(other);
        let products = [
            self.lo.mul(&other.lo),
            self.lo.mul(&other.hi),
            self.hi.mul(&other.lo),
            self.hi.mul(&other.hi),
        ];
        let lo = products.iter().min().unwrap().round(p, Round::Floor);
        let hi = products.iter().max().unwrap().round(p, Round::Ceil);
        Interval { lo, hi, precision: p }
    }

    pub fn mul_rational(&self, r: &Rational) -> Interval {
        self.mul(&Interval::from_rational(r, self.precision))
    }

    pub fn mul_pow2(&self, k: i64) -> Interval {
        Interval { lo: self.lo.mul_pow2(k), hi: self.hi.mul_pow2(k), precision: self.precision }
    }

    pub fn square(&self) -> Interval {
        let a = self.abs();
        Interval {
            lo: a.lo.mul(&a.lo).round(self.precision, Round::Floor),
            hi: a.hi.mul(&a.hi).round(self.precision, Round::Ceil),
            precision: self.precision,
        }
    }

    pub fn powi(&self, k: u32) -> Interval {
        if k == 0 {
            return Interval::from_int(1, self.precision);
        }
        let mut base = self.clone();
        let mut acc: Option<Interval> = None;
        let mut e = k;
        // Even powers go through square() so a zero-straddling base stays tight.
        while e > 0 {
            if e & 1 == 1 {
                acc = Some(match acc {
                    None => base.clone(),
                    Some(a) => a.mul(&base),
                });
            }
            e >>= 1;
            if e > 0 {
                base = base.square();
            }
        }
        let r = acc.unwrap();
        if k.is_multiple_of(2) && r.lo.signum() < 0 {
            Interval { lo: Dyadic::zero(), hi: r.hi, precision: r.precision }
        } else {
            r
        }
    }

    pub fn recip(&self) -> Result<Interval, NumericsError> {
        if self.contains_zero() {
            return Err(NumericsError::DivisionByZero);
        }
        let p = self.precision;
        let one = Dyadic::from_int(1);
        Ok(Interval { lo: one.div(&self.hi, p, Round::Floor), hi: one.div(&self.lo, p, Round::Ceil), precision: p })
    }

    pub fn div(&self, other: &Interval) -> Result<Interval, NumericsError> {
        if other.contains_zero() {
            return Err(NumericsError::DivisionByZero);
        }
        let p = self.prec2(other);
        let mut lo: Option<Dyadic> = None;
        let mut hi: Option<Dyadic> = None;
        for a in [&self.lo, &self.hi] {
            for b in [&other.lo, &other.hi] {
                let l = a.div(b, p, Round::Floor);
                let h = a.div(b, p, Round::Ceil);
                lo = Some(lo.map_or(l.clone(), |x| x.min(l)));
                hi = Some(hi.map_or(h.clone(), |x| x.max(h)));
            }
        }
        Ok(Interval { lo: lo.unwrap(), hi: hi.unwrap(), precision: p })
    }

    pub fn sqrt(&self) -> Result<Interval, NumericsError> {
        if self.lo.signum() < 0 {
            return Err(NumericsError::NonPositiveInput);
        }
        let p = self.precision;
        Ok(Interval { lo: self.lo.sqrt(p, Round::Floor), hi: self.hi.sqrt(p, Round::Ceil), precision: p })
    }

    /// `e^x` over the interval, using monotonicity of the exponential.
    pub fn exp(&self) -> Result<Interval, NumericsError> {
        let p = self.precision;
        let lo = super::constants::exp_raw(&self.lo.to_rational(), p + 8)?;
        let hi = if self.is_point() {
            lo.clone()
        } else {
            super::constants::exp_raw(&self.hi.to_rational(), p + 8)?
        };
        let (lo, hi) = (lo.lo().round(p, Round::Floor), hi.hi().round(p, Round::Ceil));
        Ok(Interval { lo, hi, precision: p })
    }

    /// Add `[-r, r]`.
    pub fn widen(&self, r: &Dyadic) -> Interval {
        let r = r.abs();
        Interval {
            lo: self.lo.sub(&r).round(self.precision, Round::Floor),
            hi: self.hi.add(&r).round(self.precision, Round::Ceil),
            precision: self.precision,
        }
    }

    /// Outward snap onto the grid `2^grid_exp · ℤ`, padded by one cell on each
    /// side. Snapping computations of increasing accuracy onto refining grids
    /// yields nested intervals as long as each raw width stays below a quarter
    /// of its grid cell.
    pub fn snap_outward(&self, grid_exp: i64) -> Interval {
        let cell = Dyadic::new(1.into(), grid_exp);
        let lo = self.lo.round_to_grid(grid_exp, Round::Floor).sub(&cell);
        let hi = self.hi.round_to_grid(grid_exp, Round::Ceil).add(&cell);
        Interval { lo, hi, precision: self.precision }
    }

    pub fn to_f64_pair(&self) -> (f64, f64) {
        (self.lo.to_f64(), self.hi.to_f64())
    }

    /// Outward decimal rendering of both endpoints.
    pub fn to_decimal_pair(&self, digits: u32) -> (String, String) {
        (self.lo.to_sci_string(digits, Round::Floor), self.hi.to_sci_string(digits, Round::Ceil))
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (lo, hi) = self.to_decimal_pair(20);
        write!(f, "[{lo}, {hi}]")
    }
}

impl Add for &Interval {
    type Output = Interval;
    fn add(self, rhs: &Interval) -> Interval {
        Interval::add(self, rhs)
    }
}

impl Sub for &Interval {
    type Output = Interval;
    fn sub(self, rhs: &Interval) -> Interval {
        Interval::sub(self, rhs)
    }
}

impl Mul for &Interval {
    type Output = Interval;
    fn mul(self, rhs: &Interval) -> Interval {
        Interval::mul(self, rhs)
    }
}

impl Neg for &Interval {
    type Output = Interval;
    fn neg(self) -> Interval {
        Interval::neg(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    fn iv(a: Rational, b: Rational) -> Interval {
        Interval::from_rational_bounds(&a, &b, 64)
    }

    #[test]
    fn exact_on_representable_points() {
        let a = Interval::from_rational(&q(3, 4), 64);
        let b = Interval::from_rational(&q(-5, 2), 64);
        assert!(a.is_point() && b.is_point());
        assert!(a.add(&b).is_point());
        assert!(a.mul(&b).is_point());
        assert!(a.mul(&b).contains_rational(&q(-15, 8)));
        assert!(a.square().is_point());
    }

    #[test]
    fn division_by_zero_straddle() {
        let a = Interval::from_int(1, 64);
        let b = iv(q(-1, 2), q(1, 2));
        assert_eq!(a.div(&b), Err(NumericsError::DivisionByZero));
        assert_eq!(b.recip(), Err(NumericsError::DivisionByZero));
    }

    #[test]
    fn even_power_of_straddling_interval() {
        let a = iv(q(-2, 1), q(1, 1));
        let sq = a.powi(2);
        assert_eq!(sq.lo(), &Dyadic::zero());
        assert!(sq.contains_rational(&q(4, 1)));
        let cube = a.powi(3);
        assert!(cube.contains_rational(&q(-8, 1)) && cube.contains_rational(&q(1, 1)));
    }

    #[test]
    fn snap_is_outward() {
        let a = iv(q(1, 3), q(1, 3));
        let s = a.snap_outward(-10);
        assert!(s.contains(&a));
    }

    fn small_rational() -> impl Strategy<Value = Rational> {
        (-1000i64..1000, 1i64..50).prop_map(|(n, d)| q(n, d))
    }

    // Random rational points in the inputs map into the outputs.
    proptest! {
        #[test]
        fn containment(a in small_rational(), b in small_rational(), c in small_rational(),
                       d in small_rational(), s in 0.0f64..1.0, u in 0.0f64..1.0) {
            let x = iv(a.clone(), b.clone());
            let y = iv(c.clone(), d.clone());
            let frac = |f: f64| q((f * 1000.0) as i64, 1000);
            let px = a.clone() + (b.clone() - a.clone()) * frac(s);
            let py = c.clone() + (d.clone() - c.clone()) * frac(u);
            prop_assert!(x.add(&y).contains_rational(&(px.clone() + py.clone())));
            prop_assert!(x.sub(&y).contains_rational(&(px.clone() - py.clone())));
            prop_assert!(x.mul(&y).contains_rational(&(px.clone() * py.clone())));
            prop_assert!(x.powi(3).contains_rational(&(px.clone() * px.clone() * px.clone())));
            prop_assert!(x.square().contains_rational(&(px.clone() * px.clone())));
            if !y.contains_zero() {
                prop_assert!(x.div(&y).unwrap().contains_rational(&(px.clone() / py.clone())));
            }
            let ax = x.abs();
            let sq = ax.sqrt().unwrap();
            let pa = if px < Rational::from_integer(0.into()) { -px.clone() } else { px.clone() };
            // sqrt(pa) in sq  <=>  lo^2 <= pa <= hi^2
            let lo = sq.lo().to_rational();
            let hi = sq.hi().to_rational();
            prop_assert!(lo.clone() * lo <= pa && pa <= hi.clone() * hi);
        }
    }
}
