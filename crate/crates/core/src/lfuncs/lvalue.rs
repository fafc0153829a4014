//! Base evaluators: `L(s)` (or `(s-1) L(s)` for the pole-bearing case) in
//! extended range with an absolute error bound.

use super::characters::Character;
use super::em;
use super::fe::{factor_scaled, GammaData};
use crate::error::{Error, Result};
use crate::scaled::Scaled;
use num_complex::Complex64;
use std::sync::Arc;

/// Requested accuracy of a base evaluation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Target {
    /// Absolute error.
    Abs(f64),
    /// Relative to the natural size of the evaluation (1 where the series
    /// converges, the reflection factor on the far side).
    Rel(f64),
}

/// Reflection data for `Re s < 0`: `L(s, chi) = X_dual(1-s) L(1-s, conj chi*)`
/// times Euler factors for the primes dividing `q` but not the conductor.
#[derive(Debug, Clone)]
struct Reflection {
    dual_gamma: GammaData,
    dual_coeffs: Vec<Complex64>,
    euler: Vec<(f64, Complex64)>,
}

#[derive(Debug, Clone)]
enum Kind {
    Periodic { coeffs: Vec<Complex64>, pole: bool, reflection: Reflection },
    Series { coeffs: Arc<Vec<Complex64>>, abscissa: f64, growth: f64 },
}

/// Evaluator attached to an L-function descriptor.
#[derive(Debug, Clone)]
pub struct LEval {
    kind: Kind,
}

impl LEval {
    pub fn zeta() -> LEval {
        let one = vec![Complex64::new(1.0, 0.0)];
        LEval {
            kind: Kind::Periodic {
                coeffs: one.clone(),
                pole: true,
                reflection: Reflection {
                    dual_gamma: GammaData {
                        log_conductor: 0.0,
                        mu: vec![Complex64::new(0.0, 0.0)],
                        root_number: Complex64::new(1.0, 0.0),
                    },
                    dual_coeffs: one,
                    euler: vec![],
                },
            },
        }
    }

    /// Any Dirichlet character (imprimitive ones use their primitive
    /// inducing character for the reflection).
    pub fn dirichlet(chi: &Character) -> LEval {
        let star = chi.primitive();
        let w = super::characters::root_number(&star).expect("primitive");
        let dual_gamma = GammaData {
            log_conductor: (star.modulus() as f64).ln(),
            mu: vec![Complex64::new(star.parity() as f64, 0.0)],
            root_number: w.conj(),
        };
        let euler = super::characters::prime_factors(chi.modulus())
            .into_iter()
            .filter(|p| !star.modulus().is_multiple_of(*p))
            .map(|p| (p as f64, star.value(p)))
            .collect();
        LEval {
            kind: Kind::Periodic {
                coeffs: chi.values(),
                pole: chi.is_principal(),
                reflection: Reflection { dual_gamma, dual_coeffs: star.conj().values(), euler },
            },
        }
    }

    /// User-supplied coefficients, valid only for `Re s > abscissa`.
    pub fn series(coeffs: Arc<Vec<Complex64>>, abscissa: f64) -> LEval {
        let growth = coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c.norm() / ((i + 1) as f64).powf((abscissa - 1.0).max(0.0)))
            .fold(0.0, f64::max);
        LEval { kind: Kind::Series { coeffs, abscissa, growth } }
    }

    pub fn has_pole(&self) -> bool {
        matches!(self.kind, Kind::Periodic { pole: true, .. })
    }

    /// Abscissa left of which the evaluator refuses to work.
    pub fn validity(&self) -> Option<f64> {
        match self.kind {
            Kind::Series { abscissa, .. } => Some(abscissa),
            _ => None,
        }
    }

    /// `L(s)`, or `(s-1) L(s)` when `regularize` is set.
    pub fn eval(&self, s: Complex64, regularize: bool, target: Target) -> Result<Scaled> {
        match &self.kind {
            Kind::Periodic { coeffs, pole, reflection } => {
                if s.re >= 0.0 {
                    let tol = match target {
                        Target::Abs(e) => e,
                        Target::Rel(r) => r,
                    };
                    let r = em::periodic_sum(s, coeffs, regularize && *pole, tol)?;
                    let mut v = Scaled::with_err(r.value, r.bound());
                    if regularize && !*pole {
                        v = v.scale(s - 1.0);
                    }
                    Ok(v)
                } else {
                    self.reflect(s, reflection, regularize, target)
                }
            }
            Kind::Series { coeffs, abscissa, growth } => {
                if s.re <= *abscissa {
                    return Err(Error::OutsideValidity { id: String::new(), abscissa: *abscissa });
                }
                let mut acc = Complex64::new(0.0, 0.0);
                let mut rounding = 0.0;
                for (i, c) in coeffs.iter().enumerate() {
                    let term = c * (-s * em::ln_int(i + 1)).exp();
                    acc += term;
                    rounding += term.norm() * (s.norm() + 4.0) * 4.0 * f64::EPSILON * em::ln_int(i + 2);
                }
                // tail: sum_{n > N} g n^{a-1-sigma} <= g N^{a-sigma} / (sigma - a)
                let n = coeffs.len() as f64;
                let beta = s.re - (abscissa - 1.0).max(0.0);
                let tail = if beta > 1.0 { growth * n.powf(1.0 - beta) / (beta - 1.0) } else { f64::INFINITY };
                let mut v = Scaled::with_err(acc, rounding + tail);
                if regularize {
                    v = v.scale(s - 1.0);
                }
                Ok(v)
            }
        }
    }

    fn reflect(&self, s: Complex64, refl: &Reflection, regularize: bool, target: Target) -> Result<Scaled> {
        let w = Complex64::new(1.0, 0.0) - s;
        let x = factor_scaled(w, &refl.dual_gamma);
        let tol = match target {
            Target::Abs(e) => {
                if x.is_zero() {
                    1.0
                } else {
                    (e.ln() - x.ln_abs()).exp().max(1e-300)
                }
            }
            Target::Rel(r) => r,
        };
        let r = em::periodic_sum(w, &refl.dual_coeffs, false, tol)?;
        let mut v = x.mul(&Scaled::with_err(r.value, r.bound()));
        for &(p, chi_p) in &refl.euler {
            let f = Complex64::new(1.0, 0.0) - chi_p * (-s * p.ln()).exp();
            v = v.mul(&Scaled::with_err(f, f.norm() * (s.norm() + 2.0) * 4.0 * f64::EPSILON));
        }
        if regularize {
            v = v.scale(s - 1.0);
        }
        Ok(v)
    }
}
