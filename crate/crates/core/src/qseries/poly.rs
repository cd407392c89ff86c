use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use crate::numerics::Rational;

/// Exponent pair `(deg_p, deg_v)`.
pub type Monomial = (u32, u32);

/// Polynomial in two formal symbols with rational coefficients.
///
/// On a q-series the symbols are `p ↦ π` and `v ↦ iz`; on an axis series
/// they are `p ↦ π` and `T ↦ t`. Zero terms are never stored.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct CoeffPoly {
    terms: BTreeMap<Monomial, Rational>,
}

impl CoeffPoly {
    pub fn zero() -> Self {
        CoeffPoly::default()
    }

    pub fn one() -> Self {
        CoeffPoly::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        CoeffPoly::monomial(0, 0, c)
    }

    pub fn from_int(c: i64) -> Self {
        CoeffPoly::constant(Rational::from_integer(c.into()))
    }

    pub fn monomial(dp: u32, dv: u32, c: Rational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert((dp, dv), c);
        }
        CoeffPoly { terms }
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Monomial, Rational)>) -> Self {
        let mut out = CoeffPoly::zero();
        for (m, c) in terms {
            out.add_term(m, c);
        }
        out
    }

    pub fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(m).or_insert_with(Rational::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: Monomial) -> Rational {
        self.terms.get(&m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| *m == (0, 0))
    }

    /// The rational value of a constant polynomial.
    pub fn as_constant(&self) -> Option<Rational> {
        if self.is_constant() {
            Some(self.coeff((0, 0)))
        } else {
            None
        }
    }

    /// Largest exponent of each symbol.
    pub fn degrees(&self) -> (u32, u32) {
        self.terms.keys().fold((0, 0), |(a, b), (p, v)| (a.max(*p), b.max(*v)))
    }

    /// True when every coefficient is nonnegative, which implies the value
    /// is nonnegative whenever both symbols are.
    pub fn has_nonnegative_coeffs(&self) -> bool {
        self.terms.values().all(|c| !c.is_negative())
    }

    pub fn scale(&self, r: &Rational) -> Self {
        if r.is_zero() {
            return CoeffPoly::zero();
        }
        CoeffPoly { terms: self.terms.iter().map(|(m, c)| (*m, c * r)).collect() }
    }

    /// Multiply by `p^dp v^dv`.
    pub fn shift_monomial(&self, dp: u32, dv: u32) -> Self {
        CoeffPoly { terms: self.terms.iter().map(|((a, b), c)| ((a + dp, b + dv), c.clone())).collect() }
    }

    /// Substitute `v ↦ −T`, the restriction `z = it`.
    pub fn restrict_to_axis(&self) -> Self {
        CoeffPoly {
            terms: self
                .terms
                .iter()
                .map(|(&(a, b), c)| ((a, b), if b % 2 == 1 { -c.clone() } else { c.clone() }))
                .collect(),
        }
    }

    /// Partial derivative with respect to the second symbol.
    pub fn diff_second(&self) -> Self {
        CoeffPoly::from_terms(
            self.terms
                .iter()
                .filter(|((_, b), _)| *b > 0)
                .map(|(&(a, b), c)| ((a, b - 1), c * Rational::from_integer(b.into()))),
        )
    }

    /// Rendering in the variables π and z: `p ↦ π`, `v = iz`, so `v² = −z²`.
    pub fn display_z(&self) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut parts = Vec::new();
        for (&(a, b), c) in self.terms.iter().rev() {
            let c = if b == 2 { -c.clone() } else { c.clone() };
            let mut sym = String::new();
            match a {
                0 => {}
                1 => sym.push('π'),
                k => sym.push_str(&format!("π^{k}")),
            }
            match b {
                0 => {}
                1 => sym.push_str("iz"),
                2 => sym.push_str("z^2"),
                k => sym.push_str(&format!("(iz)^{k}")),
            }
            parts.push(render_term(&c, &sym));
        }
        join_terms(parts)
    }

    fn display_with(&self, x: &str, y: &str) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut parts = Vec::new();
        for (&(a, b), c) in self.terms.iter().rev() {
            let mut sym = String::new();
            for (sym_name, k) in [(x, a), (y, b)] {
                match k {
                    0 => {}
                    1 => sym.push_str(sym_name),
                    k => sym.push_str(&format!("{sym_name}^{k}")),
                }
            }
            parts.push(render_term(c, &sym));
        }
        join_terms(parts)
    }

    /// Rendering as a polynomial in `p`, `v`.
    pub fn display_pv(&self) -> String {
        self.display_with("p", "v")
    }

    /// Rendering as a polynomial in `p`, `T`.
    pub fn display_pt(&self) -> String {
        self.display_with("p", "T")
    }
}

fn render_term(c: &Rational, sym: &str) -> String {
    if sym.is_empty() {
        c.to_string()
    } else if c.is_one() {
        sym.to_string()
    } else if *c == -Rational::one() {
        format!("-{sym}")
    } else if c.is_integer() {
        format!("{c}{sym}")
    } else {
        format!("({c}){sym}")
    }
}

fn join_terms(parts: Vec<String>) -> String {
    let mut out = String::new();
    for (i, p) in parts.into_iter().enumerate() {
        if i == 0 {
            out.push_str(&p);
        } else if let Some(rest) = p.strip_prefix('-') {
            out.push_str(" - ");
            out.push_str(rest);
        } else {
            out.push_str(" + ");
            out.push_str(&p);
        }
    }
    out
}

impl fmt::Display for CoeffPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_pv())
    }
}

impl Add for &CoeffPoly {
    type Output = CoeffPoly;
    fn add(self, rhs: &CoeffPoly) -> CoeffPoly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(*m, c.clone());
        }
        out
    }
}

impl Sub for &CoeffPoly {
    type Output = CoeffPoly;
    fn sub(self, rhs: &CoeffPoly) -> CoeffPoly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(*m, -c.clone());
        }
        out
    }
}

impl Neg for &CoeffPoly {
    type Output = CoeffPoly;
    fn neg(self) -> CoeffPoly {
        CoeffPoly { terms: self.terms.iter().map(|(m, c)| (*m, -c.clone())).collect() }
    }
}

impl Mul for &CoeffPoly {
    type Output = CoeffPoly;
    fn mul(self, rhs: &CoeffPoly) -> CoeffPoly {
        let mut out = CoeffPoly::zero();
        for ((a1, b1), c1) in &self.terms {
            for ((a2, b2), c2) in &rhs.terms {
                out.add_term((a1 + a2, b1 + b2), c1 * c2);
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> Rational {
        Rational::from_integer(n.into())
    }

    #[test]
    fn zero_terms_are_dropped() {
        let a = CoeffPoly::monomial(1, 1, q(3));
        let b = &a - &a;
        assert!(b.is_zero());
        assert_eq!(CoeffPoly::monomial(2, 0, q(0)), CoeffPoly::zero());
    }

    #[test]
    fn axis_restriction_flips_odd_v() {
        // 480 p v + 960  ->  -480 p T + 960
        let c = CoeffPoly::from_terms([((1, 1), q(480)), ((0, 0), q(960))]);
        let expect = CoeffPoly::from_terms([((1, 1), q(-480)), ((0, 0), q(960))]);
        assert_eq!(c.restrict_to_axis(), expect);
    }

    #[test]
    fn rendering_in_pi_and_z() {
        // 28800 p^2 v^2 + 123840 p v + 123840 is -28800π²z² + 123840πiz + 123840
        let c = CoeffPoly::from_terms([((2, 2), q(28800)), ((1, 1), q(123840)), ((0, 0), q(123840))]);
        assert_eq!(c.display_z(), "-28800π^2z^2 + 123840πiz + 123840");
        assert_eq!(c.display_pv(), "28800p^2v^2 + 123840pv + 123840");
    }

    #[test]
    fn product_and_derivative() {
        let a = CoeffPoly::from_terms([((0, 1), q(1)), ((0, 0), q(1))]);
        let sq = &a * &a;
        assert_eq!(sq, CoeffPoly::from_terms([((0, 2), q(1)), ((0, 1), q(2)), ((0, 0), q(1))]));
        assert_eq!(sq.diff_second(), CoeffPoly::from_terms([((0, 1), q(2)), ((0, 0), q(2))]));
    }
}
