//! Machine checks of the proof skeleton.
//!
//! Exact checks compare truncated series coefficient by coefficient and pass
//! only on an identically zero residual. Interval checks pass only when a
//! strict inequality holds on the whole enclosure. A false statement yields
//! a failing [`Certificate`], never an error.

mod constants;
mod identities;
mod signs;
mod symbolic;

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

pub use constants::{
    check_lemma_constants, check_quadratic_positivity, check_quadratic_positivity_with, check_special_values,
    check_special_values_with, lemma_values, quadratic_discriminant, QUADRATIC_CONSTANT,
};
pub use identities::{check_identities, check_identities_with};
pub use signs::{check_signs, check_signs_with};
pub use symbolic::{
    check_cancellations, check_cancellations_with, check_f1_derivative, check_f1_derivative_with, check_h_typo,
    check_h_typo_with, PRINTED_H3,
};

use crate::forms::FormRegistry;
use crate::numerics::{Interval, Rational};
use crate::qseries::QSeries;

/// Minimum truncation order accepted by the exact suites.
pub const MIN_ORDER: usize = 16;
/// Minimum working precision accepted by the interval checks.
pub const MIN_PRECISION: u32 = 64;
/// Significant decimal digits when printing enclosures.
pub const DECIMAL_DIGITS: u32 = 30;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Pass,
    Fail,
    Inconclusive,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Inconclusive => "inconclusive",
        }
    }
}

pub fn serialize_rational<S: Serializer>(r: &Rational, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&r.to_string())
}

/// An interval with a label; serialized as outward-rounded decimal strings.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NamedEnclosure {
    pub name: String,
    pub interval: Interval,
}

impl NamedEnclosure {
    pub fn new(name: impl Into<String>, interval: Interval) -> Self {
        NamedEnclosure { name: name.into(), interval }
    }
}

impl Serialize for NamedEnclosure {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let (lo, hi) = self.interval.to_decimal_pair(DECIMAL_DIGITS);
        let mut st = s.serialize_struct("NamedEnclosure", 3)?;
        st.serialize_field("name", &self.name)?;
        st.serialize_field("lo", &lo)?;
        st.serialize_field("hi", &hi)?;
        st.end()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NamedValue {
    pub name: String,
    pub value: String,
}

impl NamedValue {
    pub fn new(name: impl Into<String>, value: impl ToString) -> Self {
        NamedValue { name: name.into(), value: value.to_string() }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ResidualTerm {
    pub index: usize,
    pub coefficient: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Evidence {
    /// Exact residual of an identity through `q^{order-1}`.
    Residual { nonzero_terms: usize, first_nonzero: Option<ResidualTerm> },
    /// A finite-order sign statement.
    Signs { statement: String, checked_below: usize, violations: Vec<usize> },
    /// Exact values that were compared.
    Exact { values: Vec<NamedValue> },
    /// Certified enclosures and the comparison applied to them.
    Enclosures { comparison: String, enclosures: Vec<NamedEnclosure> },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
pub struct CheckParams {
    pub order: Option<usize>,
    pub precision: Option<u32>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Certificate {
    pub check_id: String,
    pub status: Status,
    pub evidence: Evidence,
    pub params: CheckParams,
}

impl Certificate {
    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

fn verdict(ok: bool) -> Status {
    if ok {
        Status::Pass
    } else {
        Status::Fail
    }
}

/// Exact residual `lhs − rhs` through `q^{order-1}`.
pub fn residual(check_id: &str, lhs: &QSeries, rhs: &QSeries, order: usize) -> Certificate {
    residual_of(check_id, &[(lhs, rhs)], order)
}

/// Several residuals folded into one certificate.
fn residual_of(check_id: &str, pairs: &[(&QSeries, &QSeries)], order: usize) -> Certificate {
    let mut nonzero = 0;
    let mut first: Option<ResidualTerm> = None;
    for (lhs, rhs) in pairs {
        assert!(lhs.order() >= order && rhs.order() >= order, "{check_id}: series shorter than the check order");
        let diff = lhs.truncate(order).sub(&rhs.truncate(order));
        for n in diff.nonzero_indices() {
            nonzero += 1;
            if first.as_ref().is_none_or(|f| n < f.index) {
                first = Some(ResidualTerm { index: n, coefficient: diff.coeff(n).unwrap().display_pv() });
            }
        }
    }
    Certificate {
        check_id: check_id.to_string(),
        status: verdict(nonzero == 0),
        evidence: Evidence::Residual { nonzero_terms: nonzero, first_nonzero: first },
        params: CheckParams { order: Some(order), precision: None },
    }
}

/// Every exact suite on one registry, in canonical order.
pub fn exact_suites(registry: &FormRegistry) -> Vec<Certificate> {
    let mut out = check_identities_with(registry);
    out.extend(check_signs_with(registry));
    out.push(check_cancellations_with(registry));
    out.push(check_f1_derivative_with(registry));
    out.push(check_h_typo_with(registry));
    out
}

#[cfg(test)]
mod tests;
