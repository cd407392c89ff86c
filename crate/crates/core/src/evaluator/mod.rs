//! Certified evaluation of registry series on the imaginary axis `z = it`,
//! and pointwise sign certificates for `A(t) < 0` and `B(t) > 0`.
//!
//! Evaluation always happens at imaginary part at least one. For `t < 1` the
//! transformation `z ↦ −1/z` moves the point to `s = 1/t`, where both
//! functions are expressed through `f` and `g`; for `t ≥ 1` they are
//! expressed through `f̃` and `g̃`. With `Δ = E₄³ − E₆²`:
//!
//! ```text
//! t ≥ 1:  A = −31104 (f̃ + g̃) / (π² Δ),   B = 31104 (g̃ − f̃) / (π² Δ)   at it
//! t < 1:  A = −31104 (f + g) / (π² s² Δ), B = 31104 (g − f) / (π² s² Δ) at is
//! ```

mod grid;

use std::collections::BTreeMap;
use std::sync::{Arc, RwLock};

use num_traits::{One, Pow, Signed, Zero};
use serde::Serialize;
use thiserror::Error;

pub use grid::{grid_points, GridReport, GridRow};

use crate::forms::{Entry, FormRegistry, Mutation};
use crate::numerics::{enclose_pi, Dyadic, Interval, NumericsError, Rational, Round};
use crate::qseries::{tail_bound, QSeries, SeriesError};
use crate::verifier::{NamedEnclosure, Status};

pub const MAX_ORDER: usize = 1024;
pub const MAX_PRECISION: u32 = 1024;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EvalError {
    #[error("t must be positive")]
    NonPositiveT,
    #[error("grid needs 0 < t_min < t_max and at least one step")]
    InvalidGrid,
    #[error("series {0} carries no coefficient majorant")]
    MissingMajorant(String),
    #[error(transparent)]
    Series(#[from] SeriesError),
    #[error(transparent)]
    Numerics(#[from] NumericsError),
}

/// A point `z = it` with the truncation order and working precision used
/// to evaluate there.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AxisPoint {
    pub t: Rational,
    pub precision: u32,
    pub order: usize,
}

impl AxisPoint {
    pub fn new(t: Rational, precision: u32, order: usize) -> Result<Self, EvalError> {
        if !t.is_positive() {
            return Err(EvalError::NonPositiveT);
        }
        Ok(AxisPoint { t, precision, order })
    }
}

/// Enclosure of `e^{−πt}` for any `t > 0`.
///
/// Large arguments are halved until they fit the exponential's range and the
/// result is squared back.
pub fn exp_neg_pi_t(t: &Rational, precision: u32) -> Result<Interval, EvalError> {
    let work = precision + 16;
    let arg = enclose_pi(work).mul_rational(&-t.clone());
    let limit = Rational::from_integer(32.into());
    let mut halvings = 0i64;
    let mut scaled = arg.clone();
    while scaled.lo().to_rational().abs() > limit {
        halvings += 1;
        scaled = arg.mul_pow2(-halvings);
    }
    let mut x = scaled.exp()?;
    for _ in 0..halvings {
        x = x.square();
    }
    Ok(x.with_precision(precision))
}

/// Evaluate `Σ_{n<N} c_n(π, v) x^n` at `z = it` and add the majorant tail.
///
/// The series is split into rational components per monomial `p^a v^b`;
/// each component is summed by Horner's rule in `x = e^{−πt}` and its tail
/// `Σ_{n≥N} C (n+1)^s x^n` is bounded by [`tail_bound`] and scaled by a
/// bound on `π^a |t|^b`.
pub fn eval_series(series: &QSeries, name: &str, t: &Rational, precision: u32) -> Result<Interval, EvalError> {
    let (total, tail) = eval_parts(series, name, t, precision)?;
    if tail.is_zero() {
        return Ok(total);
    }
    Ok(total.widen(&Dyadic::from_rational(&tail, 64, Round::Ceil)))
}

/// The truncated sum and the bound on everything past the truncation.
pub fn eval_parts(series: &QSeries, name: &str, t: &Rational, precision: u32) -> Result<(Interval, Rational), EvalError> {
    let majorants = series.majorants().ok_or_else(|| EvalError::MissingMajorant(name.to_string()))?;
    let x = exp_neg_pi_t(t, precision)?;
    let pi = enclose_pi(precision);
    let v = Interval::from_rational(&-t.clone(), precision);
    // Rounding x_hi up to a short dyadic keeps the exact tail arithmetic small.
    let x_hi = x.hi().round(48, Round::Ceil).to_rational();
    let pi_hi = pi.hi().to_rational();
    let t_abs = t.abs();
    let order = series.order();

    let mut total = Interval::from_int(0, precision);
    let mut tail = Rational::zero();
    for ((a, b), component) in series.components() {
        let mut acc = Interval::from_int(0, precision);
        for n in (0..order).rev() {
            acc = acc.mul(&x);
            let c = component.rational(n).unwrap();
            if !c.is_zero() {
                acc = acc.add(&Interval::from_rational(&c, precision));
            }
        }
        let weight = pi.powi(a).mul(&v.powi(b));
        total = total.add(&acc.mul(&weight));

        let maj = majorants.get(&(a, b)).ok_or_else(|| EvalError::MissingMajorant(name.to_string()))?;
        if maj.scale.is_zero() || order == 0 {
            continue;
        }
        let bound = tail_bound(maj, order - 1, &x_hi)?;
        tail += bound * Pow::pow(&pi_hi, a) * Pow::pow(&t_abs, b);
    }
    Ok((total, tail))
}

/// Certified value of a registry entry at `z = it`.
pub fn eval_axis(registry: &FormRegistry, entry: Entry, point: &AxisPoint) -> Result<Interval, EvalError> {
    let series = registry.get(entry).truncate(point.order);
    eval_series(&series, entry.name(), &point.t, point.precision)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[allow(non_camel_case_types)]
pub enum Target {
    A_NEGATIVE,
    B_POSITIVE,
}

/// How a point was evaluated: at `it` itself, or at `i/t` after `z ↦ −1/z`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Route {
    Direct,
    Reciprocal,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SignCertificate {
    pub target: Target,
    #[serde(serialize_with = "crate::verifier::serialize_rational")]
    pub t: Rational,
    pub status: Status,
    pub route: Route,
    pub order: usize,
    pub precision: u32,
    /// Each entry must be strictly positive for a pass.
    pub enclosures: Vec<NamedEnclosure>,
    /// Enclosure of `A(t)` or `B(t)` itself.
    pub value: NamedEnclosure,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EvalParams {
    pub order: usize,
    pub precision: u32,
}

impl Default for EvalParams {
    fn default() -> Self {
        EvalParams { order: 128, precision: 128 }
    }
}

/// Positivity verdict for a set of enclosures.
fn positivity(enclosures: &[NamedEnclosure]) -> Status {
    if enclosures.iter().any(|e| e.interval.hi().signum() <= 0) {
        Status::Fail
    } else if enclosures.iter().all(|e| e.interval.is_positive()) {
        Status::Pass
    } else {
        Status::Inconclusive
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
enum Combo {
    FTildePlusGTilde,
    GTildeMinusFTilde,
    FPlusG,
    GMinusF,
}

/// Shared state for repeated sign certification: registries per order and
/// the exact sum/difference series built from them.
pub struct Evaluator {
    mutations: Vec<Mutation>,
    registries: RwLock<BTreeMap<usize, Arc<FormRegistry>>>,
    combos: RwLock<BTreeMap<(usize, Combo), Arc<QSeries>>>,
}

impl Default for Evaluator {
    fn default() -> Self {
        Evaluator::new()
    }
}

impl Evaluator {
    pub fn new() -> Self {
        Evaluator::with_mutations(Vec::new())
    }

    pub fn with_mutations(mutations: Vec<Mutation>) -> Self {
        Evaluator { mutations, registries: RwLock::new(BTreeMap::new()), combos: RwLock::new(BTreeMap::new()) }
    }

    pub fn registry(&self, order: usize) -> Arc<FormRegistry> {
        if let Some(r) = self.registries.read().unwrap().get(&order) {
            return Arc::clone(r);
        }
        let fresh = Arc::new(FormRegistry::with_mutations(order, self.mutations.clone()));
        Arc::clone(self.registries.write().unwrap().entry(order).or_insert(fresh))
    }

    fn combo(&self, order: usize, which: Combo) -> Arc<QSeries> {
        if let Some(s) = self.combos.read().unwrap().get(&(order, which)) {
            return Arc::clone(s);
        }
        let reg = self.registry(order);
        let s = match which {
            Combo::FTildePlusGTilde => reg.get(Entry::F_TILDE).add(&reg.get(Entry::G_TILDE)),
            Combo::GTildeMinusFTilde => reg.get(Entry::G_TILDE).sub(&reg.get(Entry::F_TILDE)),
            Combo::FPlusG => reg.get(Entry::F).add(&reg.get(Entry::G)),
            Combo::GMinusF => reg.get(Entry::G).sub(&reg.get(Entry::F)),
        };
        let s = Arc::new(s);
        Arc::clone(self.combos.write().unwrap().entry((order, which)).or_insert(s))
    }

    pub fn eval_axis(&self, entry: Entry, point: &AxisPoint) -> Result<Interval, EvalError> {
        eval_axis(&self.registry(point.order), entry, point)
    }

    /// Certify `B(t) > 0` through `g̃ − f̃ > 0` at `it` (`t ≥ 1`) or
    /// `g − f > 0` at `i/t` (`t < 1`), together with `Δ > 0`.
    pub fn certify_b_positive(&self, t: &Rational, params: EvalParams) -> Result<SignCertificate, EvalError> {
        self.escalate(t, params, |t, p| self.b_attempt(t, Self::point(t).1, p))
    }

    /// Certify `A(t) < 0` through positivity of both summands.
    ///
    /// For `t ≥ 1`: `f̃(it) > 0` gives `φ₀(i/t) > 0` and `g̃(it) > 0` gives
    /// `ψ_I(it) > 0`, both with `Δ(it) > 0`. For `t < 1` with `s = 1/t`:
    /// `1728 (E₂E₄ − E₆)²(is) > 0` gives `φ₀(is) > 0` and `g(is) > 0` gives
    /// `ψ_I(i/s) > 0`, both with `Δ(is) > 0`.
    pub fn certify_a_negative(&self, t: &Rational, params: EvalParams) -> Result<SignCertificate, EvalError> {
        self.escalate(t, params, |t, p| self.a_attempt(t, p))
    }

    /// Retry an inconclusive attempt with doubled order up to the cap, then
    /// with doubled precision up to the cap.
    fn escalate(
        &self,
        t: &Rational,
        params: EvalParams,
        attempt: impl Fn(&Rational, EvalParams) -> Result<SignCertificate, EvalError>,
    ) -> Result<SignCertificate, EvalError> {
        if !t.is_positive() {
            return Err(EvalError::NonPositiveT);
        }
        let mut p = params;
        loop {
            let outcome = attempt(t, p);
            let retry = match &outcome {
                Ok(cert) => cert.status == Status::Inconclusive,
                Err(EvalError::Series(SeriesError::RhoNotLessThanOne)) => true,
                Err(_) => false,
            };
            if !retry {
                return outcome;
            }
            if p.order < MAX_ORDER {
                p.order = (p.order * 2).min(MAX_ORDER);
            } else if p.precision < MAX_PRECISION {
                p.precision = (p.precision * 2).min(MAX_PRECISION);
            } else {
                return outcome;
            }
        }
    }

    fn point(t: &Rational) -> (Rational, Route) {
        if t >= &Rational::one() {
            (t.clone(), Route::Direct)
        } else {
            (t.recip(), Route::Reciprocal)
        }
    }

    fn enclose(&self, series: &QSeries, name: &str, s: &Rational, p: EvalParams) -> Result<NamedEnclosure, EvalError> {
        let interval = eval_series(&series.truncate(p.order), name, s, p.precision)?;
        Ok(NamedEnclosure::new(name, interval))
    }

    /// `31104 / (π² s²)` with `s² = 1` on the direct route.
    fn prefactor(&self, s: &Rational, route: Route, precision: u32) -> Interval {
        let pi2 = enclose_pi(precision).square();
        let base = Interval::from_int(31104, precision).div(&pi2).expect("π² is positive");
        match route {
            Route::Direct => base,
            Route::Reciprocal => base.mul_rational(&(s * s).recip()),
        }
    }

    /// One attempt along a chosen route; `t = 1` is valid on both.
    pub(crate) fn b_attempt(&self, t: &Rational, route: Route, p: EvalParams) -> Result<SignCertificate, EvalError> {
        let s = match route {
            Route::Direct => t.clone(),
            Route::Reciprocal => t.recip(),
        };
        let reg = self.registry(p.order);
        let (diff, name) = match route {
            Route::Direct => (self.combo(p.order, Combo::GTildeMinusFTilde), "g_tilde_minus_f_tilde"),
            Route::Reciprocal => (self.combo(p.order, Combo::GMinusF), "g_minus_f"),
        };
        let diff = self.enclose(&diff, name, &s, p)?;
        let delta = self.enclose(&reg.get(Entry::DELTA_POLY), "delta", &s, p)?;
        let value = quotient(&self.prefactor(&s, route, p.precision), &diff.interval, &delta.interval);
        let enclosures = vec![diff, delta];
        Ok(SignCertificate {
            target: Target::B_POSITIVE,
            t: t.clone(),
            status: positivity(&enclosures),
            route,
            order: p.order,
            precision: p.precision,
            enclosures,
            value: NamedEnclosure::new("B", value),
        })
    }

    fn a_attempt(&self, t: &Rational, p: EvalParams) -> Result<SignCertificate, EvalError> {
        let (s, route) = Self::point(t);
        let reg = self.registry(p.order);
        let (phi_part, psi_part, sum) = match route {
            Route::Direct => (
                self.enclose(&reg.get(Entry::F_TILDE), "f_tilde", &s, p)?,
                self.enclose(&reg.get(Entry::G_TILDE), "g_tilde", &s, p)?,
                self.enclose(&self.combo(p.order, Combo::FTildePlusGTilde), "sum", &s, p)?,
            ),
            Route::Reciprocal => (
                self.enclose(&reg.get(Entry::PHI0_NUM), "phi0_num", &s, p)?,
                self.enclose(&reg.get(Entry::G), "g", &s, p)?,
                self.enclose(&self.combo(p.order, Combo::FPlusG), "sum", &s, p)?,
            ),
        };
        let delta = self.enclose(&reg.get(Entry::DELTA_POLY), "delta", &s, p)?;
        let value = quotient(&self.prefactor(&s, route, p.precision), &sum.interval, &delta.interval).neg();
        let enclosures = vec![phi_part, psi_part, delta];
        let mut status = positivity(&enclosures);
        if status == Status::Pass && !value.is_negative() {
            status = Status::Inconclusive;
        }
        Ok(SignCertificate {
            target: Target::A_NEGATIVE,
            t: t.clone(),
            status,
            route,
            order: p.order,
            precision: p.precision,
            enclosures,
            value: NamedEnclosure::new("A", value),
        })
    }

    /// Both certificates on a geometric grid, rows in increasing `t`.
    pub fn scan(&self, t_min: &Rational, t_max: &Rational, steps: usize, params: EvalParams) -> Result<GridReport, EvalError> {
        grid::scan(self, t_min, t_max, steps, params)
    }
}

/// `c · num / den`, or the whole line when `den` straddles zero.
fn quotient(c: &Interval, num: &Interval, den: &Interval) -> Interval {
    match num.div(den) {
        Ok(q) => c.mul(&q),
        Err(_) => {
            let huge = Dyadic::new(1.into(), 4096);
            Interval::from_int(0, c.precision()).widen(&huge)
        }
    }
}

#[cfg(test)]
mod tests;
