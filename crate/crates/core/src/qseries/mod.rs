//! Truncated q-expansions with coefficients in `ℚ[p, v]` (`p ↦ π`, `v ↦ iz`)
//! and the majorant bookkeeping that turns a truncation into a rigorous
//! enclosure on the imaginary axis.

mod axis;
mod poly;
mod series;

use num_bigint::BigInt;
use num_traits::{One, Pow};
use thiserror::Error;

pub use axis::AxisSeries;
pub use poly::{CoeffPoly, Monomial};
pub use series::{Majorant, Majorants, QSeries};

use crate::numerics::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SeriesError {
    #[error("leading coefficient of the divisor is not a nonzero rational")]
    NonInvertibleLeadingCoefficient,
    #[error("half-period shift needs constant coefficients")]
    NonConstantCoefficients,
    #[error("tail ratio is not below one; increase the truncation order")]
    RhoNotLessThanOne,
    #[error("coefficient of q^{index} (monomial {monomial:?}) exceeds its majorant")]
    MajorantViolation { index: usize, monomial: Monomial },
    #[error("series vanishes only below q^{found}, needed q^{needed}")]
    ValuationTooLow { needed: usize, found: usize },
}

/// Upper bound for `Σ_{n>N} C (n+1)^s x^n` uniformly in `0 < x ≤ x_hi`.
///
/// For `n ≥ N+1` consecutive terms have ratio at most
/// `ρ = x_hi ((N+3)/(N+2))^s`, so the tail is dominated by the geometric
/// series `C (N+2)^s x_hi^{N+1} / (1 − ρ)`.
pub fn tail_bound(majorant: &Majorant, n: usize, x_hi: &Rational) -> Result<Rational, SeriesError> {
    let s = majorant.power;
    let ratio = Rational::new(BigInt::from(n + 3), BigInt::from(n + 2));
    let rho = x_hi * Pow::pow(&ratio, s);
    if rho >= Rational::one() {
        return Err(SeriesError::RhoNotLessThanOne);
    }
    let lead = Rational::from_integer(BigInt::from(n + 2).pow(s));
    let x_pow = Pow::pow(x_hi, (n + 1) as u32);
    Ok(&majorant.scale * lead * x_pow / (Rational::one() - rho))
}
