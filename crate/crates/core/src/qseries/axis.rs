use std::fmt;

use num_traits::Zero;

use super::poly::CoeffPoly;
use super::series::QSeries;
use crate::numerics::Rational;

/// `Σ_n P_n(π, t) e^{−nπt}` with `P_n ∈ ℚ[p, T]`.
///
/// This is a q-series restricted to `z = it`, where `q = e^{−πt}` and
/// `v = iz = −t`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AxisSeries {
    coeffs: Vec<CoeffPoly>,
}

impl AxisSeries {
    pub fn new(coeffs: Vec<CoeffPoly>) -> Self {
        AxisSeries { coeffs }
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (usize, CoeffPoly)>, order: usize) -> Self {
        let mut coeffs = vec![CoeffPoly::zero(); order];
        for (n, c) in terms {
            coeffs[n] = &coeffs[n] + &c;
        }
        AxisSeries { coeffs }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeff(&self, n: usize) -> Option<&CoeffPoly> {
        self.coeffs.get(n)
    }

    pub fn coeffs(&self) -> &[CoeffPoly] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(CoeffPoly::is_zero)
    }

    /// Termwise `d/dt`: `P_n ↦ ∂_T P_n − n p P_n`.
    pub fn diff_t(&self) -> AxisSeries {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(n, poly)| {
                let decay = poly.shift_monomial(1, 0).scale(&Rational::from_integer(n.into()));
                &poly.diff_second() - &decay
            })
            .collect();
        AxisSeries { coeffs }
    }

    pub fn sub(&self, other: &AxisSeries) -> AxisSeries {
        let order = self.order().min(other.order());
        AxisSeries { coeffs: (0..order).map(|n| &self.coeffs[n] - &other.coeffs[n]).collect() }
    }
}

impl QSeries {
    /// Restrict to `z = it`: `v ↦ −T`.
    pub fn to_axis(&self) -> AxisSeries {
        AxisSeries { coeffs: self.coeffs().iter().map(CoeffPoly::restrict_to_axis).collect() }
    }
}

impl fmt::Display for AxisSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (n, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            if n.is_zero() {
                write!(f, "({})", c.display_pt())?;
            } else {
                write!(f, "({}) e^(-{n}pT)", c.display_pt())?;
            }
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}
