//! Gamma-factor data, the functional-equation prefactor and `B(s, l, pi)`.

use super::gamma::{cos_pi, ln_cos_pi, ln_gamma};
use crate::error::{Error, Result};
use crate::scaled::Scaled;
use num_complex::Complex64;
use std::f64::consts::PI;

/// Default exclusion radius around `2n - 1 + conj(mu)`.
pub const DEFAULT_EPSILON: f64 = 0.1;

/// Archimedean and arithmetic data entering the functional equation.
#[derive(Debug, Clone, PartialEq)]
pub struct GammaData {
    pub log_conductor: f64,
    pub mu: Vec<Complex64>,
    pub root_number: Complex64,
}

impl GammaData {
    pub fn rank(&self) -> usize {
        self.mu.len()
    }

    /// Data of the contragredient.
    pub fn dual(&self) -> GammaData {
        GammaData {
            log_conductor: self.log_conductor,
            mu: self.mu.iter().map(|m| m.conj()).collect(),
            root_number: self.root_number.conj(),
        }
    }
}

/// The prefactor `X(s)` with `L(1-s, dual) = X(s) L(s)`, in extended range
/// and without any region check.
pub fn factor_scaled(s: Complex64, g: &GammaData) -> Scaled {
    let m = g.rank() as f64;
    let mut ln = Complex64::new(0.0, -g.root_number.arg()) + (s - 0.5) * g.log_conductor - (s * m + m / 2.0) * PI.ln();
    let mut cos = Scaled::one();
    for mu in &g.mu {
        ln += ln_gamma((s + mu) / 2.0) + ln_gamma((s + 1.0 - mu.conj()) / 2.0);
        let z = (s - mu.conj()) / 2.0;
        let c = if z.im.abs() < 100.0 { Scaled::exact(cos_pi(z)) } else { Scaled::from_exp(ln_cos_pi(z)) };
        cos = cos.mul(&c);
    }
    let base = Scaled::from_exp(ln);
    // Lanczos/Stirling accuracy plus rounding of a large exponent
    base.mul(&cos).widen_rel(1e-15 * (1.0 + m) + 2.0 * f64::EPSILON * ln.norm())
}

/// Distance-based membership in the region `Re s > 3/2`, at least `eps`
/// away from every `2n - 1 + conj(mu)`.
pub fn in_region(s: Complex64, g: &GammaData, eps: f64) -> bool {
    if s.re <= 1.5 {
        return false;
    }
    g.mu.iter().all(|mu| {
        let c = mu.conj();
        // nearest point 2n - 1 + c
        let n = ((s.re - c.re + 1.0) / 2.0).round();
        let p = Complex64::new(2.0 * n - 1.0, 0.0) + c;
        (s - p).norm() >= eps
    })
}

pub fn functional_equation_factor(s: Complex64, g: &GammaData, eps: f64) -> Result<Complex64> {
    if !in_region(s, g, eps) {
        return Err(Error::RegionViolation { s: s.into() });
    }
    Ok(factor_scaled(s, g).to_complex())
}

/// `B(s, l, pi)`: sum over compositions `sum_r (k4_r + k5_r) = l` of the
/// multinomial-weighted products of `(1/2) log((s+mu_r)/2)` and
/// `(1/2) log((1+s-conj(mu_r))/2)`.
pub fn b_factor(s: Complex64, l: u32, g: &GammaData) -> Result<Complex64> {
    let mut logs = Vec::with_capacity(2 * g.rank());
    for mu in &g.mu {
        let a = s + mu;
        let b = s + 1.0 - mu.conj();
        if a.norm() < 1e-6 || b.norm() < 1e-6 {
            return Err(Error::DomainError { s: s.into() });
        }
        logs.push((a / 2.0).ln() / 2.0);
        logs.push((b / 2.0).ln() / 2.0);
    }
    if l == 0 {
        return Ok(Complex64::new(1.0, 0.0));
    }
    Ok(compositions(&logs, l))
}

// sum over k_1 + ... + k_n = l of l!/(k_1! ... k_n!) prod x_i^{k_i}
fn compositions(x: &[Complex64], l: u32) -> Complex64 {
    fn rec(x: &[Complex64], left: u32, weight: f64, acc: Complex64, fact: &[f64]) -> Complex64 {
        if x.len() == 1 {
            return acc * x[0].powu(left) * (weight / fact[left as usize]);
        }
        let mut total = Complex64::new(0.0, 0.0);
        for k in 0..=left {
            total += rec(&x[1..], left - k, weight / fact[k as usize], acc * x[0].powu(k), fact);
        }
        total
    }
    let fact: Vec<f64> = (0..=l)
        .scan(1.0, |f, k| {
            if k > 0 {
                *f *= k as f64;
            }
            Some(*f)
        })
        .collect();
    rec(x, l, fact[l as usize], Complex64::new(1.0, 0.0), &fact)
}
