use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Pow, Signed, Zero};
use rayon::prelude::*;

use super::poly::{CoeffPoly, Monomial};
use super::SeriesError;
use crate::numerics::Rational;

/// Growth bound `|c_n| ≤ scale · (n+1)^power`, valid for every `n ≥ 0`
/// including the indices beyond the truncation order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Majorant {
    pub scale: Rational,
    pub power: u32,
}

impl Majorant {
    pub fn new(scale: impl Into<Rational>, power: u32) -> Self {
        Majorant { scale: scale.into(), power }
    }

    pub fn from_int(scale: i64, power: u32) -> Self {
        Majorant::new(Rational::from_integer(scale.into()), power)
    }

    pub fn bound_at(&self, n: usize) -> Rational {
        &self.scale * Rational::from_integer(BigInt::from(n + 1).pow(self.power))
    }

    fn sum(&self, other: &Majorant) -> Majorant {
        Majorant { scale: &self.scale + &other.scale, power: self.power.max(other.power) }
    }

    fn product(&self, other: &Majorant) -> Majorant {
        Majorant { scale: &self.scale * &other.scale, power: self.power + other.power + 1 }
    }

    fn scaled(&self, r: &Rational) -> Majorant {
        Majorant { scale: &self.scale * r.abs(), power: self.power }
    }
}

/// One majorant per coefficient monomial `p^a v^b`.
///
/// Splitting a series into `Σ p^a v^b S_{ab}(q)` with rational `S_{ab}`, the
/// entry for `(a, b)` bounds the coefficients of `S_{ab}`. A monomial with no
/// entry is identically zero in every coefficient.
pub type Majorants = BTreeMap<Monomial, Majorant>;

fn merge_into(acc: &mut Majorants, m: Monomial, maj: Majorant) {
    match acc.get_mut(&m) {
        Some(existing) => *existing = existing.sum(&maj),
        None => {
            acc.insert(m, maj);
        }
    }
}

/// Truncated expansion `Σ_{n<order} c_n q^n` with `q = e^{πiz}` and
/// coefficients in `ℚ[p, v]`.
///
/// Coefficients at `n ≥ order` are unknown. Series are immutable values;
/// every operation returns a new series.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QSeries {
    coeffs: Vec<CoeffPoly>,
    majorants: Option<Majorants>,
}

/// Below this much work the convolution stays on the calling thread.
const PARALLEL_THRESHOLD: usize = 4096;

fn convolve_ints(a: &[BigInt], b: &[BigInt], order: usize) -> Vec<BigInt> {
    let nz_a: Vec<usize> = (0..a.len().min(order)).filter(|&i| !a[i].is_zero()).collect();
    let nz_b: Vec<usize> = (0..b.len().min(order)).filter(|&i| !b[i].is_zero()).collect();
    // Iterate over the sparser factor.
    let (outer, outer_vals, inner) = if nz_a.len() <= nz_b.len() { (nz_a, a, b) } else { (nz_b, b, a) };
    let coefficient = |k: usize| -> BigInt {
        let mut s = BigInt::zero();
        for &i in &outer {
            if i > k {
                break;
            }
            let j = k - i;
            if j < inner.len() && !inner[j].is_zero() {
                s += &outer_vals[i] * &inner[j];
            }
        }
        s
    };
    if outer.len() * order < PARALLEL_THRESHOLD {
        (0..order).map(coefficient).collect()
    } else {
        (0..order).into_par_iter().map(coefficient).collect()
    }
}

/// Rational vector as `(integers, common denominator)`.
fn to_integer_vector(v: &[Rational]) -> (Vec<BigInt>, BigInt) {
    let den = v.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints = v.iter().map(|c| c.numer() * (&den / c.denom())).collect();
    (ints, den)
}

impl QSeries {
    pub fn zero(order: usize) -> Self {
        QSeries { coeffs: vec![CoeffPoly::zero(); order], majorants: Some(Majorants::new()) }
    }

    pub fn one(order: usize) -> Self {
        QSeries::polynomial([(0, CoeffPoly::one())], order)
    }

    /// Constant-coefficient series without a majorant.
    pub fn from_rationals(values: Vec<Rational>) -> Self {
        QSeries { coeffs: values.into_iter().map(CoeffPoly::constant).collect(), majorants: None }
    }

    pub fn from_ints(values: &[i64]) -> Self {
        QSeries::from_rationals(values.iter().map(|&v| Rational::from_integer(v.into())).collect())
    }

    pub fn from_coeffs(coeffs: Vec<CoeffPoly>) -> Self {
        QSeries { coeffs, majorants: None }
    }

    /// A finite sum `Σ c_n q^n`; every coefficient past the listed terms is
    /// zero, so `(max |c|, 0)` per monomial is an exact majorant.
    pub fn polynomial(terms: impl IntoIterator<Item = (usize, CoeffPoly)>, order: usize) -> Self {
        let mut coeffs = vec![CoeffPoly::zero(); order];
        let mut majorants = Majorants::new();
        for (n, c) in terms {
            for (m, r) in c.terms() {
                let entry = majorants.entry(*m).or_insert_with(|| Majorant::from_int(0, 0));
                if r.abs() > entry.scale {
                    entry.scale = r.abs();
                }
            }
            if n < order {
                coeffs[n] = &coeffs[n] + &c;
            }
        }
        QSeries { coeffs, majorants: Some(majorants) }
    }

    /// Attach a majorant to a constant-coefficient series, checking it
    /// against every stored coefficient.
    pub fn with_majorant(mut self, majorant: Majorant) -> Result<Self, SeriesError> {
        if !self.is_constant() {
            return Err(SeriesError::NonConstantCoefficients);
        }
        let mut map = Majorants::new();
        map.insert((0, 0), majorant);
        self.majorants = Some(map);
        self.verify_majorant()?;
        Ok(self)
    }

    pub fn without_majorant(mut self) -> Self {
        self.majorants = None;
        self
    }

    pub fn order(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[CoeffPoly] {
        &self.coeffs
    }

    /// Coefficient of `q^n`; `None` beyond the truncation order.
    pub fn coeff(&self, n: usize) -> Option<&CoeffPoly> {
        self.coeffs.get(n)
    }

    /// Rational coefficient of `q^n` of a constant-coefficient series.
    pub fn rational(&self, n: usize) -> Option<Rational> {
        self.coeffs.get(n).and_then(CoeffPoly::as_constant)
    }

    pub fn majorants(&self) -> Option<&Majorants> {
        self.majorants.as_ref()
    }

    /// The majorant of a constant-coefficient series.
    pub fn majorant(&self) -> Option<&Majorant> {
        self.majorants.as_ref().and_then(|m| m.get(&(0, 0)))
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.iter().all(CoeffPoly::is_constant)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(CoeffPoly::is_zero)
    }

    /// Index of the first nonzero coefficient.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn nonzero_indices(&self) -> Vec<usize> {
        (0..self.order()).filter(|&n| !self.coeffs[n].is_zero()).collect()
    }

    /// Largest exponents of `p` and `v` over all coefficients.
    pub fn degrees(&self) -> (u32, u32) {
        self.coeffs.iter().fold((0, 0), |(a, b), c| {
            let (x, y) = c.degrees();
            (a.max(x), b.max(y))
        })
    }

    pub fn truncate(&self, order: usize) -> QSeries {
        let n = order.min(self.order());
        QSeries { coeffs: self.coeffs[..n].to_vec(), majorants: self.majorants.clone() }
    }

    /// Check `|c_n| ≤ C (n+1)^s` for every stored index and monomial.
    pub fn verify_majorant(&self) -> Result<(), SeriesError> {
        let Some(majorants) = &self.majorants else {
            return Ok(());
        };
        for (n, c) in self.coeffs.iter().enumerate() {
            for (m, r) in c.terms() {
                let ok = majorants.get(m).is_some_and(|maj| r.abs() <= maj.bound_at(n));
                if !ok {
                    return Err(SeriesError::MajorantViolation { index: n, monomial: *m });
                }
            }
        }
        Ok(())
    }

    /// Split into constant-coefficient series, one per monomial `p^a v^b`.
    pub fn components(&self) -> BTreeMap<Monomial, QSeries> {
        let mut raw: BTreeMap<Monomial, Vec<Rational>> = BTreeMap::new();
        for (n, c) in self.coeffs.iter().enumerate() {
            for (m, r) in c.terms() {
                raw.entry(*m).or_insert_with(|| vec![Rational::zero(); self.order()])[n] = r.clone();
            }
        }
        if let Some(majorants) = &self.majorants {
            for m in majorants.keys() {
                raw.entry(*m).or_insert_with(|| vec![Rational::zero(); self.order()]);
            }
        }
        raw.into_iter()
            .map(|(m, values)| {
                let mut s = QSeries::from_rationals(values);
                if let Some(maj) = self.majorants.as_ref().and_then(|ms| ms.get(&m)) {
                    let mut map = Majorants::new();
                    map.insert((0, 0), maj.clone());
                    s.majorants = Some(map);
                }
                (m, s)
            })
            .collect()
    }

    fn combine_majorants(&self, other: &QSeries) -> Option<Majorants> {
        let (a, b) = (self.majorants.as_ref()?, other.majorants.as_ref()?);
        let mut out = a.clone();
        for (m, maj) in b {
            merge_into(&mut out, *m, maj.clone());
        }
        Some(out)
    }

    pub fn add(&self, other: &QSeries) -> QSeries {
        let order = self.order().min(other.order());
        let coeffs = (0..order).map(|n| &self.coeffs[n] + &other.coeffs[n]).collect();
        QSeries { coeffs, majorants: self.combine_majorants(other) }
    }

    pub fn sub(&self, other: &QSeries) -> QSeries {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> QSeries {
        QSeries { coeffs: self.coeffs.iter().map(|c| -c).collect(), majorants: self.majorants.clone() }
    }

    pub fn scale(&self, r: &Rational) -> QSeries {
        if r.is_zero() {
            return QSeries::zero(self.order());
        }
        QSeries {
            coeffs: self.coeffs.iter().map(|c| c.scale(r)).collect(),
            majorants: self.majorants.as_ref().map(|ms| ms.iter().map(|(m, maj)| (*m, maj.scaled(r))).collect()),
        }
    }

    pub fn scale_int(&self, k: i64) -> QSeries {
        self.scale(&Rational::from_integer(k.into()))
    }

    /// Multiply every coefficient by a fixed polynomial in `p`, `v`.
    pub fn scale_poly(&self, poly: &CoeffPoly) -> QSeries {
        let coeffs = self.coeffs.iter().map(|c| c * poly).collect();
        let majorants = self.majorants.as_ref().map(|ms| {
            let mut out = Majorants::new();
            for ((a, b), maj) in ms {
                for ((dp, dv), r) in poly.terms() {
                    merge_into(&mut out, (a + dp, b + dv), maj.scaled(r));
                }
            }
            out
        });
        QSeries { coeffs, majorants }
    }

    /// Exact truncated Cauchy product.
    ///
    /// Each factor is split into rational components per monomial, each
    /// component pair is convolved over the integers after clearing
    /// denominators, and the pieces are reassembled.
    pub fn mul(&self, other: &QSeries) -> QSeries {
        let order = self.order().min(other.order());
        let left = self.components();
        let right = other.components();
        let mut acc: BTreeMap<Monomial, Vec<Rational>> = BTreeMap::new();
        for ((a1, b1), s1) in &left {
            let (x, dx) = to_integer_vector(&s1.constant_values());
            for ((a2, b2), s2) in &right {
                let (y, dy) = to_integer_vector(&s2.constant_values());
                let den = &dx * &dy;
                let prod = convolve_ints(&x, &y, order);
                let slot = acc.entry((a1 + a2, b1 + b2)).or_insert_with(|| vec![Rational::zero(); order]);
                for (n, v) in prod.into_iter().enumerate() {
                    if !v.is_zero() {
                        slot[n] += Rational::new(v, den.clone());
                    }
                }
            }
        }
        let mut coeffs = vec![CoeffPoly::zero(); order];
        for (m, values) in acc {
            for (n, r) in values.into_iter().enumerate() {
                coeffs[n].add_term(m, r);
            }
        }
        let majorants = match (&self.majorants, &other.majorants) {
            (Some(ma), Some(mb)) => {
                let mut out = Majorants::new();
                for ((a1, b1), m1) in ma {
                    for ((a2, b2), m2) in mb {
                        merge_into(&mut out, (a1 + a2, b1 + b2), m1.product(m2));
                    }
                }
                Some(out)
            }
            _ => None,
        };
        QSeries { coeffs, majorants }
    }

    /// `self^k` by binary powering; `self^0` is one.
    pub fn pow(&self, k: u32) -> QSeries {
        let mut result = QSeries::one(self.order());
        let mut base = self.clone();
        let mut e = k;
        let mut first = true;
        while e > 0 {
            if e & 1 == 1 {
                result = if first { base.clone() } else { result.mul(&base) };
                first = false;
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        result
    }

    fn constant_values(&self) -> Vec<Rational> {
        self.coeffs.iter().map(|c| c.coeff((0, 0))).collect()
    }

    /// Quotient `self / other` as a power series.
    ///
    /// With `v` the valuation of `other`, its coefficient at `q^v` must be a
    /// nonzero rational and `self` must vanish below `q^v`. The result is
    /// known through order `min(order(self), order(other)) − v`.
    pub fn div(&self, other: &QSeries) -> Result<QSeries, SeriesError> {
        let v = other.valuation().ok_or(SeriesError::NonInvertibleLeadingCoefficient)?;
        let lead = other.coeffs[v].as_constant().ok_or(SeriesError::NonInvertibleLeadingCoefficient)?;
        if let Some(va) = self.valuation() {
            if va < v {
                return Err(SeriesError::ValuationTooLow { needed: v, found: va });
            }
        }
        let order = self.order().min(other.order()) - v;
        let inv_lead = lead.recip();
        let mut out: Vec<CoeffPoly> = Vec::with_capacity(order);
        for n in 0..order {
            let mut acc = self.coeffs[n + v].clone();
            for k in 0..n {
                let b = &other.coeffs[v + n - k];
                if !b.is_zero() && !out[k].is_zero() {
                    acc = &acc - &(&out[k] * b);
                }
            }
            out.push(acc.scale(&inv_lead));
        }
        Ok(QSeries { coeffs: out, majorants: None })
    }

    /// `z ↦ z + 1`, i.e. `q ↦ −q`, on a constant-coefficient series.
    pub fn half_period_shift(&self) -> Result<QSeries, SeriesError> {
        if !self.is_constant() {
            return Err(SeriesError::NonConstantCoefficients);
        }
        let coeffs = self.coeffs.iter().enumerate().map(|(n, c)| if n % 2 == 1 { -c } else { c.clone() }).collect();
        Ok(QSeries { coeffs, majorants: self.majorants.clone() })
    }

    /// Multiply by `q^k`.
    pub fn shift_up(&self, k: usize) -> QSeries {
        let mut coeffs = vec![CoeffPoly::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        QSeries { coeffs, majorants: self.majorants.clone() }
    }

    /// Divide by `q^k`; the first `k` coefficients must vanish.
    ///
    /// The majorant becomes `C (k+1)^s`, since `n + k + 1 ≤ (k+1)(n+1)`.
    pub fn shift_down(&self, k: usize) -> Result<QSeries, SeriesError> {
        if let Some(va) = self.valuation() {
            if va < k {
                return Err(SeriesError::ValuationTooLow { needed: k, found: va });
            }
        }
        let coeffs = self.coeffs.iter().skip(k).cloned().collect();
        let factor = BigInt::from(k + 1);
        let majorants = self.majorants.as_ref().map(|ms| {
            ms.iter()
                .map(|(m, maj)| {
                    let f = Rational::from_integer(factor.clone().pow(maj.power));
                    (*m, Majorant { scale: &maj.scale * f, power: maj.power })
                })
                .collect()
        });
        Ok(QSeries { coeffs, majorants })
    }

    /// Division by `q^k` that discards the first `k` coefficients instead of
    /// requiring them to vanish.
    pub fn drop_low(&self, k: usize) -> QSeries {
        let mut low = self.clone();
        for c in low.coeffs.iter_mut().take(k) {
            *c = CoeffPoly::zero();
        }
        low.shift_down(k).expect("low coefficients cleared")
    }

    /// `q d/dq`: coefficient of `q^n` multiplied by `n`.
    pub fn q_derivative(&self) -> QSeries {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(n, c)| c.scale(&Rational::from_integer(n.into())))
            .collect();
        let majorants =
            self.majorants.as_ref().map(|ms| ms.iter().map(|(m, maj)| (*m, Majorant { scale: maj.scale.clone(), power: maj.power + 1 })).collect());
        QSeries { coeffs, majorants }
    }

    /// Add a rational to the constant part of the coefficient of `q^n`.
    ///
    /// Used to build mutation fixtures. The majorant is kept unchanged, so a
    /// perturbation that breaks it is caught by [`QSeries::verify_majorant`].
    pub fn perturbed(&self, n: usize, delta: &Rational) -> QSeries {
        let mut out = self.clone();
        if n < out.order() {
            out.coeffs[n].add_term((0, 0), delta.clone());
        }
        out
    }
}

impl fmt::Display for QSeries {
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
            let body = if c.terms().count() > 1 { format!("({c})") } else { c.to_string() };
            match n {
                0 => write!(f, "{body}")?,
                1 => write!(f, "{body} q")?,
                _ => write!(f, "{body} q^{n}")?,
            }
        }
        if first {
            f.write_str("0")?;
        }
        write!(f, " + O(q^{})", self.order())
    }
}
