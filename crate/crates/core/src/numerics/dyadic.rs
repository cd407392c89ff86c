//! Dyadic rationals `m · 2^e` with directed rounding.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::Rational;

/// Rounding direction for inexact results.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Round {
    Floor,
    Ceil,
}

impl Round {
    pub fn flip(self) -> Round {
        match self {
            Round::Floor => Round::Ceil,
            Round::Ceil => Round::Floor,
        }
    }
}

/// Exact value `mant · 2^exp`.
///
/// Kept canonical: the mantissa is odd, or zero with `exp == 0`, so derived
/// equality is numeric equality.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Dyadic {
    mant: BigInt,
    exp: i64,
}

fn pow2(k: u64) -> BigInt {
    BigInt::one() << k
}

fn div_round(num: &BigInt, den: &BigInt, dir: Round) -> BigInt {
    match dir {
        Round::Floor => num.div_floor(den),
        Round::Ceil => -((-num).div_floor(den)),
    }
}

impl Dyadic {
    pub fn new(mant: BigInt, exp: i64) -> Self {
        let mut d = Dyadic { mant, exp };
        d.normalize();
        d
    }

    pub fn zero() -> Self {
        Dyadic { mant: BigInt::zero(), exp: 0 }
    }

    pub fn from_int(v: impl Into<BigInt>) -> Self {
        Dyadic::new(v.into(), 0)
    }

    fn normalize(&mut self) {
        if self.mant.is_zero() {
            self.exp = 0;
            return;
        }
        let tz = self.mant.trailing_zeros().unwrap_or(0);
        if tz > 0 {
            self.mant >>= tz;
            self.exp += tz as i64;
        }
    }

    pub fn mantissa(&self) -> &BigInt {
        &self.mant
    }

    pub fn exponent(&self) -> i64 {
        self.exp
    }

    pub fn is_zero(&self) -> bool {
        self.mant.is_zero()
    }

    pub fn signum(&self) -> i32 {
        match self.mant.sign() {
            Sign::Minus => -1,
            Sign::NoSign => 0,
            Sign::Plus => 1,
        }
    }

    /// Significant bits of the mantissa.
    pub fn bits(&self) -> u64 {
        self.mant.bits()
    }

    /// `floor(log2 |x|)`; `None` for zero.
    pub fn msb(&self) -> Option<i64> {
        if self.is_zero() {
            None
        } else {
            Some(self.bits() as i64 - 1 + self.exp)
        }
    }

    pub fn abs(&self) -> Dyadic {
        Dyadic { mant: self.mant.abs(), exp: self.exp }
    }

    pub fn neg(&self) -> Dyadic {
        Dyadic { mant: -&self.mant, exp: self.exp }
    }

    pub fn add(&self, other: &Dyadic) -> Dyadic {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        let e = self.exp.min(other.exp);
        let a = &self.mant << (self.exp - e) as u64;
        let b = &other.mant << (other.exp - e) as u64;
        Dyadic::new(a + b, e)
    }

    pub fn sub(&self, other: &Dyadic) -> Dyadic {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Dyadic) -> Dyadic {
        Dyadic::new(&self.mant * &other.mant, self.exp + other.exp)
    }

    /// Multiply by `2^k`.
    pub fn mul_pow2(&self, k: i64) -> Dyadic {
        if self.is_zero() {
            return Dyadic::zero();
        }
        Dyadic { mant: self.mant.clone(), exp: self.exp + k }
    }

    /// Round to at most `prec` significant bits.
    pub fn round(&self, prec: u32, dir: Round) -> Dyadic {
        let bits = self.bits();
        if bits <= prec as u64 {
            return self.clone();
        }
        let shift = bits - prec as u64;
        let m = div_round(&self.mant, &pow2(shift), dir);
        Dyadic::new(m, self.exp + shift as i64)
    }

    /// Round onto the grid `2^grid_exp · ℤ`.
    pub fn round_to_grid(&self, grid_exp: i64, dir: Round) -> Dyadic {
        if self.exp >= grid_exp {
            return self.clone();
        }
        let shift = (grid_exp - self.exp) as u64;
        let m = div_round(&self.mant, &pow2(shift), dir);
        Dyadic::new(m, grid_exp)
    }

    /// Quotient rounded to `prec` significant bits.
    ///
    /// Panics on a zero divisor; callers check signs first.
    pub fn div(&self, other: &Dyadic, prec: u32, dir: Round) -> Dyadic {
        assert!(!other.is_zero(), "dyadic division by zero");
        if self.is_zero() {
            return Dyadic::zero();
        }
        // Scale so the integer quotient carries at least prec + 2 bits.
        let k = (prec as i64 + 2 + other.bits() as i64 - self.bits() as i64).max(0) as u64;
        let num = &self.mant << k;
        let q = div_round(&num, &other.mant, dir);
        Dyadic::new(q, self.exp - other.exp - k as i64).round(prec, dir)
    }

    /// Square root of a nonnegative dyadic, rounded to `prec` bits.
    pub fn sqrt(&self, prec: u32, dir: Round) -> Dyadic {
        assert!(self.signum() >= 0, "square root of a negative dyadic");
        if self.is_zero() {
            return Dyadic::zero();
        }
        let want = 2 * prec as i64 + 4;
        let mut shift = (want - self.bits() as i64).max(0);
        if (self.exp - shift).rem_euclid(2) != 0 {
            shift += 1;
        }
        let m = (&self.mant << shift as u64).to_biguint().expect("nonnegative");
        let mut r = m.sqrt();
        if dir == Round::Ceil && &r * &r != m {
            r += 1u32;
        }
        Dyadic::new(BigInt::from(r), (self.exp - shift) / 2).round(prec, dir)
    }

    /// Nearest dyadic on the given side of a rational, with `prec` bits.
    pub fn from_rational(r: &Rational, prec: u32, dir: Round) -> Dyadic {
        let num = r.numer();
        let den = r.denom();
        if num.is_zero() {
            return Dyadic::zero();
        }
        if den.is_one() {
            return Dyadic::from_int(num.clone()).round(prec, dir);
        }
        let k = prec as i64 + 2 + den.bits() as i64 - num.bits() as i64;
        let (n, d) = if k >= 0 {
            (num << k as u64, den.clone())
        } else {
            (num.clone(), den << (-k) as u64)
        };
        Dyadic::new(div_round(&n, &d, dir), -k).round(prec, dir)
    }

    pub fn to_rational(&self) -> Rational {
        if self.exp >= 0 {
            Rational::from_integer(&self.mant << self.exp as u64)
        } else {
            Rational::new(self.mant.clone(), pow2((-self.exp) as u64))
        }
    }

    /// Approximate value; only for display and diagnostics.
    pub fn to_f64(&self) -> f64 {
        if self.is_zero() {
            return 0.0;
        }
        let bits = self.bits();
        let drop = bits.saturating_sub(60);
        let m = (&self.mant >> drop).to_f64().unwrap_or(f64::NAN);
        m * 2f64.powi((self.exp + drop as i64).clamp(-2000, 2000) as i32)
    }

    /// Decimal scientific notation with `digits` significant digits, rounded
    /// in direction `dir` so the printed value bounds `self` on that side.
    pub fn to_sci_string(&self, digits: u32, dir: Round) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let r = self.to_rational();
        let est = (self.msb().unwrap() as f64 * std::f64::consts::LOG10_2).floor() as i64;
        // Try the estimated decimal exponent, correcting by one if needed.
        for e10 in [est, est + 1, est - 1, est + 2] {
            let scale = digits as i64 - 1 - e10;
            let scaled = if scale >= 0 {
                &r * Rational::from_integer(BigInt::from(10).pow(scale as u32))
            } else {
                &r / Rational::from_integer(BigInt::from(10).pow((-scale) as u32))
            };
            let m = match dir {
                Round::Floor => scaled.floor().to_integer(),
                Round::Ceil => scaled.ceil().to_integer(),
            };
            let abs = m.abs();
            let lo = BigInt::from(10).pow(digits - 1);
            let hi = BigInt::from(10).pow(digits);
            if abs >= lo && abs < hi {
                let s = abs.to_string();
                let sign = if m.is_negative() { "-" } else { "" };
                return format!("{sign}{}.{}e{e10}", &s[..1], &s[1..]);
            }
        }
        // Rounding carried into a new decade, e.g. 9.99..e2 -> 1.00..e3.
        let e10 = est + 1;
        let sign = if self.signum() < 0 { "-" } else { "" };
        format!("{sign}1.{}e{e10}", "0".repeat(digits as usize - 1))
    }
}

impl Ord for Dyadic {
    fn cmp(&self, other: &Self) -> Ordering {
        let (sa, sb) = (self.signum(), other.signum());
        if sa != sb {
            return sa.cmp(&sb);
        }
        if sa == 0 {
            return Ordering::Equal;
        }
        let e = self.exp.min(other.exp);
        let a = &self.mant << (self.exp - e) as u64;
        let b = &other.mant << (other.exp - e) as u64;
        a.cmp(&b)
    }
}

impl PartialOrd for Dyadic {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Dyadic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_sci_string(20, Round::Floor))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d(m: i64, e: i64) -> Dyadic {
        Dyadic::new(BigInt::from(m), e)
    }

    #[test]
    fn canonical_form() {
        assert_eq!(d(4, 0), d(1, 2));
        assert_eq!(d(0, 17), Dyadic::zero());
    }

    #[test]
    fn directed_rounding() {
        // 7/8 = 0.111b, two bits
        let x = d(7, -3);
        assert_eq!(x.round(2, Round::Floor), d(3, -2));
        assert_eq!(x.round(2, Round::Ceil), d(1, 0));
        assert_eq!(x.neg().round(2, Round::Floor), d(-1, 0));
        assert_eq!(x.neg().round(2, Round::Ceil), d(-3, -2));
    }

    #[test]
    fn division_brackets_one_third() {
        let third = Rational::new(1.into(), 3.into());
        let lo = d(1, 0).div(&d(3, 0), 40, Round::Floor);
        let hi = d(1, 0).div(&d(3, 0), 40, Round::Ceil);
        assert!(lo.to_rational() < third && third < hi.to_rational());
        assert!(hi.sub(&lo) <= d(1, -40));
    }

    #[test]
    fn sqrt_two_brackets() {
        let lo = d(2, 0).sqrt(64, Round::Floor);
        let hi = d(2, 0).sqrt(64, Round::Ceil);
        let two = Rational::from_integer(2.into());
        assert!(lo.to_rational() * lo.to_rational() < two);
        assert!(hi.to_rational() * hi.to_rational() > two);
        assert_eq!(d(9, 4).sqrt(10, Round::Floor), d(3, 2));
    }

    #[test]
    fn from_rational_sides() {
        let r = Rational::new((-22).into(), 7.into());
        let lo = Dyadic::from_rational(&r, 30, Round::Floor).to_rational();
        let hi = Dyadic::from_rational(&r, 30, Round::Ceil).to_rational();
        assert!(lo < r && r < hi);
    }

    #[test]
    fn sci_string_is_outward() {
        let x = Dyadic::from_rational(&Rational::new(1.into(), 3.into()), 80, Round::Floor);
        assert_eq!(x.to_sci_string(5, Round::Floor), "3.3333e-1");
        assert_eq!(x.to_sci_string(5, Round::Ceil), "3.3334e-1");
        assert_eq!(d(-12345, 0).to_sci_string(3, Round::Floor), "-1.24e4");
        assert_eq!(d(999, 0).to_sci_string(2, Round::Ceil), "1.0e3");
    }
}
