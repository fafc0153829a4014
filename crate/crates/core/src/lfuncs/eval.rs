//! Evaluation of L-function derivatives and of whole expressions.

use super::cauchy::{taylor, Refine, Taylor};
use super::lvalue::Target;
use crate::error::{Error, Result};
use crate::expr::{LFunctionDescriptor, PolyExpression};
use crate::scaled::Scaled;
use num_complex::Complex64;

/// Radius of the derivative circle used by the zero engine.
pub const ENGINE_RADIUS: f64 = 0.25;
const ENGINE_NODES: usize = 16;
const ENGINE_SPECTRUM: f64 = 1e-12;
const ENGINE_BASE: f64 = 1e-14;
/// Around the pole the engine differentiates `(s-1) L(s)` instead.
const POLE_REGULARIZE: f64 = 2.0;

/// A value with its certified absolute error.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Evaluated {
    pub value: Complex64,
    pub error: f64,
}

impl Evaluated {
    pub(crate) fn from_parts(v: &Scaled, target: f64, s: Complex64) -> Result<Evaluated> {
        let value = v.to_complex();
        let error = v.abs_err();
        if !value.re.is_finite() || !value.im.is_finite() {
            return Err(Error::AccuracyUnreachable { s: s.into(), target, achieved: f64::INFINITY });
        }
        if error > target {
            return Err(Error::AccuracyUnreachable { s: s.into(), target, achieved: error });
        }
        Ok(Evaluated { value, error })
    }
}

/// Taylor coefficients of `L` at `s` up to `kmax`, engine accuracy.
pub(crate) fn engine_taylor(d: &LFunctionDescriptor, s: Complex64, kmax: usize) -> Result<Taylor> {
    let ev = d.evaluator();
    if kmax == 0 {
        let v = ev.eval(s, false, Target::Rel(ENGINE_BASE)).map_err(|e| tag(e, d))?;
        return Ok(Taylor { coeffs: vec![v], nodes: 1 });
    }
    let refine = Refine::Spectrum { start: ENGINE_NODES, rel: ENGINE_SPECTRUM, max: 256 };
    let sm1 = s - 1.0;
    if ev.has_pole() && sm1.norm() < POLE_REGULARIZE {
        if sm1.norm() < 1e-8 {
            return Err(Error::PoleAt1);
        }
        let g = taylor(|z| ev.eval(z, true, Target::Rel(ENGINE_BASE)), s, ENGINE_RADIUS, kmax, refine)?;
        return Ok(unregularize(&g, sm1));
    }
    taylor(|z| ev.eval(z, false, Target::Rel(ENGINE_BASE)), s, ENGINE_RADIUS, kmax, refine).map_err(|e| tag(e, d))
}

fn tag(e: Error, d: &LFunctionDescriptor) -> Error {
    match e {
        Error::OutsideValidity { abscissa, .. } => Error::OutsideValidity { id: d.id.clone(), abscissa },
        other => other,
    }
}

/// From Taylor coefficients of `g = (z-1) L(z)` at `s` to those of `L`:
/// `a_l = sum_k g_k (-1)^{l-k} / (s-1)^{l-k+1}`.
fn unregularize(g: &Taylor, sm1: Complex64) -> Taylor {
    let inv = sm1.inv();
    let mut coeffs = Vec::with_capacity(g.coeffs.len());
    for l in 0..g.coeffs.len() {
        let mut acc = Scaled::ZERO;
        for k in 0..=l {
            let p = (l - k) as i32;
            let w = inv.powi(p + 1) * if p % 2 == 0 { 1.0 } else { -1.0 };
            acc = acc.add(&g.coeffs[k].scale(w));
        }
        coeffs.push(acc);
    }
    Taylor { coeffs, nodes: g.nodes }
}

/// `F(s)` and optionally `F'(s)` in extended range.
#[derive(Debug, Clone, Copy)]
pub struct FValue {
    pub f: Scaled,
    pub df: Option<Scaled>,
    /// `sum_j |c_j| prod |L_u^{(l)}(s)|^d`, the size of the terms of `F`.
    pub scale: Scaled,
}

/// Engine evaluation of an expression: one derivative circle per
/// L-function, shared by all of its factors.
pub fn eval_expression(f: &PolyExpression, s: Complex64, with_derivative: bool) -> Result<FValue> {
    let maxd = f.max_derivs();
    let extra = usize::from(with_derivative);
    let mut derivs: Vec<Vec<Scaled>> = Vec::with_capacity(maxd.len());
    for (d, m) in f.lfuncs().iter().zip(&maxd) {
        match m {
            None => derivs.push(Vec::new()),
            Some(l) => {
                let t = engine_taylor(d, s, *l as usize + extra)?;
                derivs.push((0..t.coeffs.len()).map(|k| t.derivative(k)).collect());
            }
        }
    }
    let mut total = Scaled::ZERO;
    let mut dtotal = Scaled::ZERO;
    let mut scale = Scaled::ZERO;
    for m in f.monomials() {
        let pows: Vec<Scaled> = m.factors.iter().map(|x| derivs[x.lfunc][x.deriv as usize].powu(x.exp)).collect();
        let mut prod = Scaled::exact(m.coeff);
        for p in &pows {
            prod = prod.mul(p);
        }
        total = total.add(&prod);
        scale = scale.add(&prod.abs());
        if with_derivative {
            for (i, x) in m.factors.iter().enumerate() {
                let base = derivs[x.lfunc][x.deriv as usize];
                let next = derivs[x.lfunc][x.deriv as usize + 1];
                let mut term = base.powu(x.exp - 1).mul(&next).scale(Complex64::new(x.exp as f64, 0.0));
                term = term.scale(m.coeff);
                for (j, p) in pows.iter().enumerate() {
                    if j != i {
                        term = term.mul(p);
                    }
                }
                dtotal = dtotal.add(&term);
            }
        }
    }
    Ok(FValue { f: total, df: with_derivative.then_some(dtotal), scale })
}

/// `F(s)` with absolute error at most `err`.
pub fn eval_f(f: &PolyExpression, s: Complex64, err: f64) -> Result<Evaluated> {
    let v = eval_expression(f, s, false)?;
    Evaluated::from_parts(&v.f, err, s)
}

/// `L^{(l)}(s)` by the Cauchy integral with node doubling from 64.
pub fn derivative(d: &LFunctionDescriptor, l: u32, s: Complex64, err: f64) -> Result<Evaluated> {
    let ev = d.evaluator();
    if l == 0 {
        if ev.has_pole() && (s - 1.0).norm() < 1e-8 {
            return Err(Error::PoleAt1);
        }
        let v = ev.eval(s, false, Target::Abs(err)).map_err(|e| tag(e, d))?;
        return Evaluated::from_parts(&v, err, s);
    }
    let mut r: f64 = 0.5;
    if ev.has_pole() {
        r = r.min((s - 1.0).norm() / 2.0);
        if r < 1e-3 {
            return Err(Error::PoleTooClose { s: s.into(), radius: r });
        }
    }
    let fact: f64 = (1..=l).map(|k| k as f64).product();
    let base = (err * r.powi(l as i32) / (4.0 * fact)).max(1e-300);
    let refine = Refine::Agree { start: 64, tol: err, max: 1 << 16 };
    let t = taylor(|z| ev.eval(z, false, Target::Abs(base)), s, r, l as usize, refine).map_err(|e| tag(e, d))?;
    Evaluated::from_parts(&t.derivative(l as usize), err, s)
}
