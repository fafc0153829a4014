//! Evaluation of zeta, Hurwitz zeta and Dirichlet L-functions, their
//! derivatives, the functional-equation factor, and character groups.

pub mod bernoulli;
pub mod cauchy;
pub mod characters;
pub mod em;
pub mod eval;
pub mod fe;
pub mod gamma;
pub mod lvalue;

pub use characters::{character, character_table, gauss_sum, root_number, Character, CharacterTable, RootOfUnity};
pub use eval::{derivative, eval_expression, eval_f, Evaluated, FValue};
pub use fe::{b_factor, GammaData, DEFAULT_EPSILON};
pub use lvalue::{LEval, Target};

use crate::error::{Error, Result};
use crate::expr::LFunctionDescriptor;
use num_complex::Complex64;

/// Smallest supported absolute error target.
pub const MIN_ERROR: f64 = 1e-13;
/// Largest supported `|Im s|`.
pub const MAX_HEIGHT: f64 = 1e4;

/// A validated evaluation request.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EvalRequest {
    pub s: Complex64,
    pub target_abs_err: f64,
    pub deriv: u32,
}

impl EvalRequest {
    pub fn new(s: Complex64, target_abs_err: f64, deriv: u32) -> Result<Self> {
        if !(target_abs_err >= MIN_ERROR) {
            return Err(Error::InvalidInput(format!("error target {target_abs_err:e} below {MIN_ERROR:e}")));
        }
        if !(s.im.abs() <= MAX_HEIGHT) || !s.re.is_finite() {
            return Err(Error::InvalidInput(format!("|Im s| must not exceed {MAX_HEIGHT}")));
        }
        Ok(EvalRequest { s, target_abs_err, deriv })
    }

    pub fn run(&self, d: &LFunctionDescriptor) -> Result<Evaluated> {
        derivative(d, self.deriv, self.s, self.target_abs_err)
    }
}

fn check(v: em::Summed, err: f64, s: Complex64) -> Result<Evaluated> {
    let bound = v.bound();
    if bound > err {
        return Err(Error::AccuracyUnreachable { s: s.into(), target: err, achieved: bound });
    }
    Ok(Evaluated { value: v.value, error: bound })
}

/// `zeta(s)` with absolute error at most `err`.
pub fn zeta(s: Complex64, err: f64) -> Result<Evaluated> {
    if (s - 1.0).norm() < 1e-8 {
        return Err(Error::PoleAt1);
    }
    let v = LEval::zeta().eval(s, false, Target::Abs(err))?;
    eval::Evaluated::from_parts(&v, err, s)
}

/// Hurwitz zeta `zeta(s, a)` for `0 < a <= 1`.
pub fn hurwitz_zeta(s: Complex64, a: f64, err: f64) -> Result<Evaluated> {
    if !(a > 0.0 && a <= 1.0) {
        return Err(Error::InvalidInput(format!("Hurwitz parameter {a} outside (0, 1]")));
    }
    check(em::hurwitz(s, a, false, err)?, err, s)
}

/// `L(s, chi)` for any Dirichlet character.
pub fn dirichlet_l(s: Complex64, chi: &Character, err: f64) -> Result<Evaluated> {
    if chi.is_principal() && (s - 1.0).norm() < 1e-8 {
        return Err(Error::PoleAt1);
    }
    let v = LEval::dirichlet(chi).eval(s, false, Target::Abs(err))?;
    eval::Evaluated::from_parts(&v, err, s)
}

/// `X(s)` with `L(1-s, dual) = X(s) L(s)`, inside the region `Re s > 3/2`
/// away from the cosine zeros.
pub fn functional_equation_factor(s: Complex64, d: &LFunctionDescriptor) -> Result<Complex64> {
    fe::functional_equation_factor(s, &d.gamma_data(), DEFAULT_EPSILON)
}
