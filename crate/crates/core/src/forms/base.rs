use num_bigint::BigInt;
use num_traits::Zero;

use super::sieve::divisor_sums;
use crate::numerics::Rational;
use crate::qseries::{Majorant, QSeries};

/// Which theta series to build. `Theta2Fourth` is `θ₂⁴`; `θ₂` itself has
/// half-integral exponents and is never formed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Theta {
    Theta3,
    Theta4,
    Theta2Fourth,
}

fn int(v: impl Into<BigInt>) -> Rational {
    Rational::from_integer(v.into())
}

/// `E_k` for `k ∈ {2, 4, 6}` through `q^{order-1}`.
///
/// Coefficients sit on even powers: `c_{2n} = κ_k σ_{k-1}(n)` with
/// `κ = −24, 240, −504`. The majorant `|κ| (m+1)^k` at `q^m` holds since
/// `σ_{k-1}(n) ≤ n^k`.
pub fn eisenstein(k: u32, order: usize) -> QSeries {
    let kappa: i64 = match k {
        2 => -24,
        4 => 240,
        6 => -504,
        _ => panic!("Eisenstein weight must be 2, 4 or 6"),
    };
    let sigma = divisor_sums(k - 1, order / 2);
    let mut values = vec![Rational::zero(); order];
    if order > 0 {
        values[0] = int(1);
    }
    for n in 1..=order / 2 {
        if 2 * n < order {
            values[2 * n] = int(BigInt::from(sigma[n]) * kappa);
        }
    }
    QSeries::from_rationals(values)
        .with_majorant(Majorant::from_int(kappa.abs(), k))
        .expect("Eisenstein majorant")
}

pub fn theta(which: Theta, order: usize) -> QSeries {
    match which {
        Theta::Theta3 | Theta::Theta4 => {
            let mut values = vec![Rational::zero(); order];
            if order > 0 {
                values[0] = int(1);
            }
            let mut n = 1usize;
            while n * n < order {
                let sign = if which == Theta::Theta4 && n % 2 == 1 { -2 } else { 2 };
                values[n * n] = int(sign);
                n += 1;
            }
            QSeries::from_rationals(values).with_majorant(Majorant::from_int(2, 0)).expect("theta majorant")
        }
        Theta::Theta2Fourth => {
            // 16 q (Σ_{n≥0} q^{n(n+1)})⁴; the coefficient of q^{2j+1} is
            // 16 σ₁(2j+1) ≤ 16 (m+1)³ at m = 2j+1.
            let mut values = vec![Rational::zero(); order];
            let mut n = 0usize;
            while n * (n + 1) < order {
                values[n * (n + 1)] = int(1);
                n += 1;
            }
            let t = QSeries::from_rationals(values);
            let fourth = t.mul(&t);
            let fourth = fourth.mul(&fourth);
            let values = (0..order)
                .map(|m| if m == 0 { Rational::zero() } else { fourth.rational(m - 1).unwrap() * int(16) })
                .collect();
            QSeries::from_rationals(values).with_majorant(Majorant::from_int(16, 3)).expect("theta2^4 majorant")
        }
    }
}

/// `∏_{n≥1} (1 − q^{2n})` through `q^{order-1}`.
pub fn euler_product_even(order: usize) -> QSeries {
    let mut c = vec![BigInt::zero(); order];
    if order > 0 {
        c[0] = BigInt::from(1);
    }
    let mut step = 2;
    while step < order {
        for k in (step..order).rev() {
            let lower = c[k - step].clone();
            c[k] -= lower;
        }
        step += 2;
    }
    QSeries::from_rationals(c.into_iter().map(Rational::from_integer).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn coeffs(s: &QSeries) -> Vec<i64> {
        (0..s.order()).map(|n| s.rational(n).unwrap().to_integer().try_into().unwrap()).collect()
    }

    #[test]
    fn eisenstein_leading_terms() {
        let e2 = eisenstein(2, 10);
        assert_eq!(coeffs(&e2), vec![1, 0, -24, 0, -72, 0, -96, 0, -168, 0]);
        let e4 = eisenstein(4, 6);
        assert_eq!(coeffs(&e4), vec![1, 0, 240, 0, 2160, 0]);
        assert_eq!(coeffs(&eisenstein(6, 3)), vec![1, 0, -504]);
    }

    #[test]
    fn thetas() {
        assert_eq!(coeffs(&theta(Theta::Theta3, 10)), vec![1, 2, 0, 0, 2, 0, 0, 0, 0, 2]);
        assert_eq!(coeffs(&theta(Theta::Theta4, 10)), vec![1, -2, 0, 0, 2, 0, 0, 0, 0, -2]);
    }

    #[test]
    fn theta2_fourth_brute_force() {
        // Oracle: count ordered quadruples of triangular-index terms
        // with n1(n1+1)+...+n4(n4+1) = m - 1.
        let order = 60;
        let s = theta(Theta::Theta2Fourth, order);
        for m in 0..order {
            let mut count = 0i64;
            if m >= 1 {
                let target = m - 1;
                let tri: Vec<usize> = (0..10).map(|n| n * (n + 1)).filter(|&v| v <= target).collect();
                for a in &tri {
                    for b in &tri {
                        for c in &tri {
                            for d in &tri {
                                if a + b + c + d == target {
                                    count += 1;
                                }
                            }
                        }
                    }
                }
            }
            assert_eq!(s.rational(m).unwrap(), int(16 * count), "q^{m}");
        }
        assert_eq!(coeffs(&s)[..6], [0, 16, 0, 64, 0, 96]);
    }

    #[test]
    fn euler_product_start() {
        // (1-q^2)(1-q^4)(1-q^6)... = 1 - q^2 - q^4 + q^10 + q^14 - ...
        let p = euler_product_even(16);
        assert_eq!(coeffs(&p), vec![1, 0, -1, 0, -1, 0, 0, 0, 0, 0, 1, 0, 0, 0, 1, 0]);
    }
}
