use num_bigint::BigInt;
use num_traits::Zero;
use rayon::prelude::*;

use super::{residual, residual_of, Certificate};
use crate::forms::{divisor_sums, Entry, FormRegistry};
use crate::numerics::Rational;
use crate::qseries::QSeries;

/// The eleven identity residuals at order `n`.
pub fn check_identities(n: usize) -> Vec<Certificate> {
    check_identities_with(&FormRegistry::new(n))
}

pub fn check_identities_with(reg: &FormRegistry) -> Vec<Certificate> {
    let n = reg.order();
    // Warm the shared theta powers so the parallel checks reuse them.
    for e in [Entry::X, Entry::Z, Entry::W] {
        reg.get(e);
    }
    let checks: [fn(&FormRegistry, usize) -> Certificate; 11] = [
        jacobi,
        delta_product,
        e2e4_minus_e6,
        delta_theta,
        e4_theta,
        g_gamma,
        g_tilde_shift,
        quintic,
        lambda_factorization,
        h_closed_form,
        f_decomposition,
    ];
    checks.par_iter().map(|check| check(reg, n)).collect()
}

fn jacobi(reg: &FormRegistry, n: usize) -> Certificate {
    let lhs = reg.get(Entry::X).add(&reg.get(Entry::W));
    residual("i1_jacobi", &lhs, &reg.get(Entry::Z), n)
}

fn delta_product(reg: &FormRegistry, n: usize) -> Certificate {
    residual("i2_delta_product", &reg.get(Entry::DELTA_POLY), &reg.get(Entry::DELTA_PROD), n)
}

fn e2e4_minus_e6(reg: &FormRegistry, n: usize) -> Certificate {
    let sigma = divisor_sums(3, n / 2);
    let mut values = vec![Rational::zero(); n];
    for k in 1..=n / 2 {
        if 2 * k < n {
            values[2 * k] = Rational::from_integer(BigInt::from(sigma[k]) * BigInt::from(720 * k));
        }
    }
    let lhs = reg.e2e4_minus_e6();
    residual("i3_e2e4_minus_e6", &lhs, &QSeries::from_rationals(values), n)
}

fn delta_theta(reg: &FormRegistry, n: usize) -> Certificate {
    let (x, z, w) = (reg.get(Entry::X), reg.get(Entry::Z), reg.get(Entry::W));
    let xzw = x.mul(&z).mul(&w);
    let rhs = xzw.mul(&xzw).scale(&Rational::new(27.into(), 4.into()));
    residual("i4_delta_theta", &reg.get(Entry::DELTA_POLY), &rhs, n)
}

fn e4_theta(reg: &FormRegistry, n: usize) -> Certificate {
    let (x, z, w) = (reg.get(Entry::X), reg.get(Entry::Z), reg.get(Entry::W));
    let rhs = x.mul(&x).add(&z.mul(&z)).add(&w.mul(&w)).scale(&Rational::new(1.into(), 2.into()));
    residual("i5_e4_theta", &reg.get(Entry::E4), &rhs, n)
}

fn g_gamma(reg: &FormRegistry, n: usize) -> Certificate {
    let gamma = reg.get(Entry::GAMMA_FN);
    let rhs = gamma.sub(&gamma.half_period_shift().expect("constant series"));
    residual("i6_g_gamma", &reg.get(Entry::G), &rhs, n)
}

fn shifted_g_tilde_theta_form(reg: &FormRegistry) -> QSeries {
    // Z³X² + Z²X³ + Z³W² + Z²W³
    let (x, z, w) = (reg.get(Entry::X), reg.get(Entry::Z), reg.get(Entry::W));
    let z2 = z.mul(&z);
    let z3 = z2.mul(&z);
    let (x2, w2) = (x.mul(&x), w.mul(&w));
    z3.mul(&x2).add(&z2.mul(&x2.mul(&x))).add(&z3.mul(&w2)).add(&z2.mul(&w2.mul(&w)))
}

fn g_tilde_shift(reg: &FormRegistry, n: usize) -> Certificate {
    let lhs = reg.get(Entry::G_TILDE).half_period_shift().expect("constant series");
    residual("i7_g_tilde_shift", &lhs, &shifted_g_tilde_theta_form(reg), n)
}

fn quintic(reg: &FormRegistry, n: usize) -> Certificate {
    // 16 g̃(z+1) = 6X⁵ + 15X⁴Y + 10X³Y² + Y⁵
    let (x, y) = (reg.get(Entry::X), reg.get(Entry::Y));
    let x3 = x.pow(3);
    let x4 = x3.mul(&x);
    let rhs = x4
        .mul(&x)
        .scale_int(6)
        .add(&x4.mul(&y).scale_int(15))
        .add(&x3.mul(&y.mul(&y)).scale_int(10))
        .add(&y.pow(5));
    let lhs = reg.get(Entry::G_TILDE).half_period_shift().expect("constant series").scale_int(16);
    residual("i8_quintic", &lhs, &rhs, n)
}

fn lambda_factorization(reg: &FormRegistry, n: usize) -> Certificate {
    // (q²ψ_I/128)(X²/q²)Z² = (Z + W)Z² + (W − X)X², which with W = Z − X is
    // (2Z − X)Z² + (Z − 2X)X² = (Z − X)(2Z² + XZ + 2X²).
    let (x, z, w) = (reg.get(Entry::X), reg.get(Entry::Z), reg.get(Entry::W));
    let x2 = x.mul(&x);
    let z2 = z.mul(&z);
    let x_ext = reg.get_extended(Entry::X);
    let x2_reduced = x_ext.mul(&x_ext).drop_low(2);
    let lhs = reg.get(Entry::PSI_I).mul(&x2_reduced).mul(&z2).scale(&Rational::new(1.into(), 128.into()));
    let z_minus_x = z.sub(&x);
    let rhs = z_minus_x.mul(&z2.scale_int(2).add(&x.mul(&z)).add(&x2.scale_int(2)));
    residual_of("i9_lambda_factorization", &[(&lhs, &rhs), (&w, &z_minus_x)], n)
}

fn h_closed_form(reg: &FormRegistry, n: usize) -> Certificate {
    // 2q²H = X²(Z³ − W³) + X³(Z² + W²)
    let (x, z, w) = (reg.get(Entry::X), reg.get(Entry::Z), reg.get(Entry::W));
    let (x2, z2, w2) = (x.mul(&x), z.mul(&z), w.mul(&w));
    let rhs = x2.mul(&z2.mul(&z).sub(&w2.mul(&w))).add(&x2.mul(&x).mul(&z2.add(&w2)));
    let lhs = reg.get(Entry::H_FN).scale_int(2).shift_up(2);
    residual("i10_h_closed_form", &lhs, &rhs, n)
}

fn f_decomposition(reg: &FormRegistry, n: usize) -> Certificate {
    let rhs = reg.get(Entry::F1).add(&reg.get(Entry::F2)).add(&reg.get(Entry::F3));
    residual("i11_f_decomposition", &reg.get(Entry::F_CAP), &rhs, n)
}
