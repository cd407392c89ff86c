//! The named q-series of the inequalities and their coefficient sequences.
//!
//! Every entry is assembled from six base series (`E₂`, `E₄`, `E₆`, `θ₂⁴`,
//! `θ₃`, `θ₄`) by exact ring operations. `z`-dependence is carried in the
//! coefficient ring through `v = iz`, so `z² = −v²`.

mod base;
mod sieve;

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, RwLock};

use num_traits::{One, Signed, Zero};
use serde::Serialize;

pub use base::{eisenstein, euler_product_even, theta, Theta};
pub use sieve::divisor_sums;

use crate::numerics::Rational;
use crate::qseries::{CoeffPoly, QSeries};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[allow(non_camel_case_types)]
pub enum Entry {
    E2,
    E4,
    E6,
    THETA2_4,
    THETA3,
    THETA4,
    DELTA_POLY,
    DELTA_PROD,
    PHI0_NUM,
    /// Stored as `q² ψ_I`, since `ψ_I` itself has a pole of order two.
    PSI_I,
    F,
    F_TILDE,
    G,
    G_TILDE,
    GAMMA_FN,
    H_FN,
    H_CLOSED,
    F_CAP,
    G_CAP,
    F1,
    F2,
    F3,
    X,
    Z,
    W,
    Y,
}

impl Entry {
    pub const ALL: [Entry; 26] = [
        Entry::E2,
        Entry::E4,
        Entry::E6,
        Entry::THETA2_4,
        Entry::THETA3,
        Entry::THETA4,
        Entry::DELTA_POLY,
        Entry::DELTA_PROD,
        Entry::PHI0_NUM,
        Entry::PSI_I,
        Entry::F,
        Entry::F_TILDE,
        Entry::G,
        Entry::G_TILDE,
        Entry::GAMMA_FN,
        Entry::H_FN,
        Entry::H_CLOSED,
        Entry::F_CAP,
        Entry::G_CAP,
        Entry::F1,
        Entry::F2,
        Entry::F3,
        Entry::X,
        Entry::Z,
        Entry::W,
        Entry::Y,
    ];

    /// Entries built directly from divisor sums and theta definitions.
    pub const BASE: [Entry; 6] = [Entry::E2, Entry::E4, Entry::E6, Entry::THETA2_4, Entry::THETA3, Entry::THETA4];

    pub fn name(self) -> &'static str {
        match self {
            Entry::E2 => "E2",
            Entry::E4 => "E4",
            Entry::E6 => "E6",
            Entry::THETA2_4 => "THETA2_4",
            Entry::THETA3 => "THETA3",
            Entry::THETA4 => "THETA4",
            Entry::DELTA_POLY => "DELTA_POLY",
            Entry::DELTA_PROD => "DELTA_PROD",
            Entry::PHI0_NUM => "PHI0_NUM",
            Entry::PSI_I => "PSI_I",
            Entry::F => "F",
            Entry::F_TILDE => "F_TILDE",
            Entry::G => "G",
            Entry::G_TILDE => "G_TILDE",
            Entry::GAMMA_FN => "GAMMA_FN",
            Entry::H_FN => "H_FN",
            Entry::H_CLOSED => "H_CLOSED",
            Entry::F_CAP => "F_CAP",
            Entry::G_CAP => "G_CAP",
            Entry::F1 => "F1",
            Entry::F2 => "F2",
            Entry::F3 => "F3",
            Entry::X => "X",
            Entry::Z => "Z",
            Entry::W => "W",
            Entry::Y => "Y",
        }
    }
}

impl fmt::Display for Entry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Entry {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Entry::ALL
            .iter()
            .copied()
            .find(|e| e.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| format!("unknown series {s:?}"))
    }
}

/// A deliberate corruption of one registry entry, applied right after the
/// entry is built so that everything derived from it sees the change.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Mutation {
    Perturb { entry: Entry, index: usize, delta: Rational },
    Negate(Entry),
}

impl Mutation {
    fn target(&self) -> Entry {
        match self {
            Mutation::Perturb { entry, .. } | Mutation::Negate(entry) => *entry,
        }
    }

    fn apply(&self, s: QSeries) -> QSeries {
        match self {
            Mutation::Perturb { index, delta, .. } => s.perturbed(*index, delta),
            Mutation::Negate(_) => s.neg(),
        }
    }
}

/// Memoized constructor for every [`Entry`] at a fixed truncation order.
///
/// Entries are built two orders past the requested one, so that divisions
/// by `q²` still leave `order` known coefficients, and truncated on the way
/// out. Divisions by `q²` discard the two lowest coefficients; after a
/// mutation these need not vanish, which the identity checks then report.
/// The cache is filled at most once per entry and is safe to share
/// between threads.
pub struct FormRegistry {
    order: usize,
    mutations: Vec<Mutation>,
    cache: RwLock<HashMap<Entry, Arc<QSeries>>>,
}

const HEADROOM: usize = 2;

fn r(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

fn pv(terms: &[((u32, u32), Rational)]) -> CoeffPoly {
    CoeffPoly::from_terms(terms.iter().cloned())
}

impl FormRegistry {
    pub fn new(order: usize) -> Self {
        FormRegistry::with_mutations(order, Vec::new())
    }

    pub fn with_mutations(order: usize, mutations: Vec<Mutation>) -> Self {
        FormRegistry { order, mutations, cache: RwLock::new(HashMap::new()) }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn mutations(&self) -> &[Mutation] {
        &self.mutations
    }

    /// The entry truncated to the registry order.
    pub fn get(&self, entry: Entry) -> QSeries {
        self.full(entry).truncate(self.order)
    }

    /// The entry at the internal order, which keeps two extra coefficients
    /// for entries built without a division by `q²`.
    pub fn get_extended(&self, entry: Entry) -> QSeries {
        (*self.full(entry)).clone()
    }

    /// A perturbation of `entry` at `q^index` that moves the coefficient one
    /// unit away from zero, so leading terms stay invertible.
    pub fn perturbation(&self, entry: Entry, index: usize) -> Mutation {
        let c = self.full(entry).coeff(index).map(|c| c.coeff((0, 0))).unwrap_or_else(Rational::zero);
        let delta = if c.is_zero() { Rational::one() } else { c.signum() };
        Mutation::Perturb { entry, index, delta }
    }

    fn full(&self, entry: Entry) -> Arc<QSeries> {
        if let Some(s) = self.cache.read().unwrap().get(&entry) {
            return Arc::clone(s);
        }
        let mut built = self.recipe(entry);
        for m in self.mutations.iter().filter(|m| m.target() == entry) {
            built = m.apply(built);
        }
        let built = Arc::new(built);
        let mut cache = self.cache.write().unwrap();
        Arc::clone(cache.entry(entry).or_insert(built))
    }

    fn recipe(&self, entry: Entry) -> QSeries {
        let m = self.order + HEADROOM;
        let get = |e| self.full(e);
        match entry {
            Entry::E2 => eisenstein(2, m),
            Entry::E4 => eisenstein(4, m),
            Entry::E6 => eisenstein(6, m),
            Entry::THETA2_4 => theta(Theta::Theta2Fourth, m),
            Entry::THETA3 => theta(Theta::Theta3, m),
            Entry::THETA4 => theta(Theta::Theta4, m),
            Entry::X => (*get(Entry::THETA2_4)).clone(),
            Entry::Z => get(Entry::THETA3).pow(4),
            Entry::W => get(Entry::THETA4).pow(4),
            Entry::Y => get(Entry::Z).scale_int(2).sub(&get(Entry::X)),
            Entry::DELTA_POLY => {
                let e4 = get(Entry::E4);
                let e6 = get(Entry::E6);
                e4.pow(3).sub(&e6.mul(&e6))
            }
            Entry::DELTA_PROD => euler_product_even(m).pow(24).shift_up(2).truncate(m).scale_int(1728),
            Entry::PHI0_NUM => {
                let d = self.e2e4_minus_e6();
                d.mul(&d).scale_int(1728)
            }
            Entry::PSI_I => {
                // q²ψ_I = 128 ((Z + W) / (X²/q²) + q² (W − X) / Z²)
                let (x, z, w) = (get(Entry::X), get(Entry::Z), get(Entry::W));
                let x2_reduced = x.mul(&x).drop_low(2);
                let first = z.add(&w).truncate(m - 2).div(&x2_reduced).expect("X²/q² is invertible");
                let second = w.sub(&x).div(&z.mul(&z)).expect("Z² is invertible").shift_up(2);
                first.add(&second).truncate(m - 2).scale_int(128)
            }
            Entry::F => {
                let d = self.e2e4_minus_e6();
                d.mul(&d).scale_poly(&CoeffPoly::monomial(2, 0, ratio(1, 18)))
            }
            Entry::F_TILDE => {
                // (p²/18) v² D² + (2p/3) v E₄ D + 2 E₄²
                let d = self.e2e4_minus_e6();
                let e4 = get(Entry::E4);
                let quad = d.mul(&d).scale_poly(&CoeffPoly::monomial(2, 2, ratio(1, 18)));
                let lin = e4.mul(&d).scale_poly(&CoeffPoly::monomial(1, 1, ratio(2, 3)));
                quad.add(&lin).add(&e4.mul(&e4).scale_int(2))
            }
            Entry::G => {
                // X² (Z³ + X Z² + X W² − W³)
                let (x, z, w) = (get(Entry::X), get(Entry::Z), get(Entry::W));
                let (z2, w2) = (z.mul(&z), w.mul(&w));
                let inner = z2.mul(&z).add(&x.mul(&z2)).add(&x.mul(&w2)).sub(&w2.mul(&w));
                x.mul(&x).mul(&inner)
            }
            Entry::G_TILDE => {
                // W² (Z³ + W Z² + X² W − X³)
                let (x, z, w) = (get(Entry::X), get(Entry::Z), get(Entry::W));
                let (z2, x2) = (z.mul(&z), x.mul(&x));
                let inner = z2.mul(&z).add(&w.mul(&z2)).add(&x2.mul(&w)).sub(&x2.mul(&x));
                w.mul(&w).mul(&inner)
            }
            Entry::GAMMA_FN => {
                // X² Z³ + X³ Z²
                let (x, z) = (get(Entry::X), get(Entry::Z));
                let x2z2 = x.mul(&x).mul(&z.mul(&z));
                x2z2.mul(&z).add(&x2z2.mul(&x))
            }
            Entry::H_FN => {
                let gc = get(Entry::G_CAP);
                gc.sub(&gc.half_period_shift().expect("constant series")).scale(&ratio(1, 2))
            }
            Entry::H_CLOSED => {
                // ½ q⁻² (X² (Z³ − W³) + X³ (Z² + W²))
                let (x, z, w) = (get(Entry::X), get(Entry::Z), get(Entry::W));
                let (x2, z2, w2) = (x.mul(&x), z.mul(&z), w.mul(&w));
                let body = x2.mul(&z2.mul(&z).sub(&w2.mul(&w))).add(&x2.mul(&x).mul(&z2.add(&w2)));
                body.drop_low(2).scale(&ratio(1, 2))
            }
            Entry::F_CAP => {
                let ft = get(Entry::F_TILDE);
                ft.sub(&QSeries::polynomial([(0, CoeffPoly::from_int(2))], m))
                    .drop_low(2)
                    .neg()
            }
            Entry::G_CAP => {
                let gt = get(Entry::G_TILDE);
                gt.sub(&QSeries::polynomial([(0, CoeffPoly::from_int(2))], m))
                    .drop_low(2)
                    .neg()
            }
            Entry::F1 => QSeries::polynomial(
                [
                    (0, pv(&[((1, 1), r(-480))])),
                    (2, pv(&[((2, 2), r(-28800)), ((1, 1), r(-123840)), ((0, 0), r(-123840))])),
                ],
                m - 2,
            ),
            Entry::F2 => {
                // −(p²/18) v² D² / q² − 2 (E₄² − 1) / q² + (28800 p² v² + 123840) q²
                let d = self.e2e4_minus_e6();
                let e4 = get(Entry::E4);
                let quad = d.mul(&d).scale_poly(&CoeffPoly::monomial(2, 2, ratio(-1, 18)));
                let e4sq = e4.mul(&e4).sub(&QSeries::one(m)).scale_int(-2);
                let body = quad.add(&e4sq).drop_low(2);
                let comp = QSeries::polynomial([(2, pv(&[((2, 2), r(28800)), ((0, 0), r(123840))]))], m - 2);
                body.add(&comp)
            }
            Entry::F3 => {
                // −(2p/3) v E₄ D / q² + 480 p v + 123840 p v q²
                let d = self.e2e4_minus_e6();
                let e4 = get(Entry::E4);
                let body = e4
                    .mul(&d)
                    .scale_poly(&CoeffPoly::monomial(1, 1, ratio(-2, 3)))
                    .drop_low(2);
                let comp = QSeries::polynomial([(0, pv(&[((1, 1), r(480))])), (2, pv(&[((1, 1), r(123840))]))], m - 2);
                body.add(&comp)
            }
        }
    }

    /// `E₂E₄ − E₆`, not itself a registry entry.
    pub fn e2e4_minus_e6(&self) -> QSeries {
        let e2 = self.full(Entry::E2);
        let e4 = self.full(Entry::E4);
        let e6 = self.full(Entry::E6);
        e2.mul(&e4).sub(&e6)
    }

    /// Coefficient sequences extracted from the built series.
    pub fn sequences(&self) -> CoeffSequences {
        let n = self.order;
        let f = self.get(Entry::F);
        let g = self.get(Entry::G);
        let ft = self.get(Entry::F_TILDE);
        let gt = self.get(Entry::G_TILDE);
        let d = self.e2e4_minus_e6().truncate(n);
        let e4 = self.get(Entry::E4);
        let dd = d.mul(&d);
        let e4sq = e4.mul(&e4);
        let e4d = e4.mul(&d);
        let even = |s: &QSeries, shift: Rational| -> Vec<Rational> {
            (0..n.div_ceil(2)).map(|k| s.rational(2 * k).unwrap() - if k == 0 { shift.clone() } else { Rational::zero() }).collect()
        };
        CoeffSequences {
            a: (0..n).map(|k| f.coeff(k).unwrap().coeff((2, 0))).collect(),
            b: (0..n).map(|k| g.rational(k).unwrap()).collect(),
            c: ft.coeffs().to_vec(),
            d: (0..n).map(|k| gt.rational(k).unwrap()).collect(),
            alpha: even(&dd, Rational::zero()),
            beta: even(&e4sq, Rational::one()),
            delta: even(&e4d, Rational::zero()),
        }
    }
}

/// Build a single entry at order `n`.
pub fn build(entry: Entry, n: usize) -> QSeries {
    FormRegistry::new(n).get(entry)
}

/// Named coefficient sequences, indexed from zero.
///
/// `a`, `b`, `c`, `d` are indexed by the power of `q`: `a_n` is the
/// coefficient of `π² q^n` in `f`, `b_n` of `q^n` in `g`, `c_n(z)` of `q^n`
/// in `f̃` and `d_n` of `q^n` in `g̃`. `alpha`, `beta`, `delta` are indexed
/// by `n` in `q^{2n}`: `(E₂E₄−E₆)² = Σ α_n q^{2n}`, `E₄² − 1 = Σ β_n q^{2n}`,
/// `E₄(E₂E₄−E₆) = Σ δ_n q^{2n}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoeffSequences {
    pub a: Vec<Rational>,
    pub b: Vec<Rational>,
    pub c: Vec<CoeffPoly>,
    pub d: Vec<Rational>,
    pub alpha: Vec<Rational>,
    pub beta: Vec<Rational>,
    pub delta: Vec<Rational>,
}

pub fn sequences(n: usize) -> CoeffSequences {
    FormRegistry::new(n).sequences()
}

/// Indices where a sequence breaks `sign · x ≥ 0`.
pub fn sign_violations(values: &[Rational], alternating: bool) -> Vec<usize> {
    values
        .iter()
        .enumerate()
        .filter(|(n, x)| {
            let flip = alternating && n % 2 == 1;
            if flip {
                x.is_positive()
            } else {
                x.is_negative()
            }
        })
        .map(|(n, _)| n)
        .collect()
}
