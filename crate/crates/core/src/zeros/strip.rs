//! The strip `E1 <= Re s <= E2` outside which `F` has no nontrivial zeros.

use crate::error::{Error, Result};
use crate::expr::coefficients::{dirichlet_coefficients, leading_index};
use crate::expr::profile::leading_set;
use crate::expr::{LFunctionDescriptor, Monomial, PolyExpression, Source};
use crate::lfuncs::eval::{engine_taylor, eval_expression};
use crate::lfuncs::fe::{b_factor, factor_scaled};
use crate::lfuncs::Target;
use crate::scaled::Scaled;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

/// Coefficients summed explicitly before the tail majorant takes over.
const EXPLICIT_TERMS: usize = 1000;
const SCAN_T: (f64, f64, f64) = (2.0, 50.0, 0.1);
const SCAN_PASSES: usize = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum E1Method {
    Scan,
    Default,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct StripBounds {
    pub e1: f64,
    pub e2: f64,
    pub e2_certified: bool,
    pub e1_method: E1Method,
}

/// Leading term of `F(1-s, dual)` for `Re s > 3/2`, computed from `g`
/// (the expression over the original L-functions):
/// `(-1)^{deg_der} sum_{j in J} c_j prod_u (X_u(s) L_u(s))^{sum_l d} prod_l B(s, l, pi_u)^d`.
pub fn fe_main_term(g: &PolyExpression, s: Complex64) -> Result<Scaled> {
    let (top, j) = leading_set(g);
    let mut values: Vec<Option<Scaled>> = vec![None; g.lfuncs().len()];
    let mut total = Scaled::ZERO;
    for &i in &j {
        let m = &g.monomials()[i];
        let mut prod = Scaled::exact(m.coeff);
        for x in &m.factors {
            let d = &g.lfuncs()[x.lfunc];
            let dual_value = match values[x.lfunc] {
                Some(v) => v,
                None => {
                    let l = d.evaluator().eval(s, false, Target::Rel(1e-14))?;
                    let v = factor_scaled(s, &d.gamma_data()).mul(&l);
                    values[x.lfunc] = Some(v);
                    v
                }
            };
            let b = Scaled::exact(b_factor(s, x.deriv, &d.gamma_data())?).widen_rel(1e-14);
            prod = prod.mul(&dual_value.mul(&b).powu(x.exp));
        }
        total = total.add(&prod);
    }
    Ok(if top.deg_der % 2 == 1 { total.neg() } else { total })
}

/// Whether the main term dominates `F` on `Re s = sigma`, `t` in `[2, 50]`,
/// with margin 2: `|F - A_1| < |A_1| / 2`.
fn dominates(f: &PolyExpression, dual: &PolyExpression, sigma: f64) -> Result<bool> {
    let (t0, t1, dt) = SCAN_T;
    let steps = ((t1 - t0) / dt).round() as usize;
    for k in 0..=steps {
        let t = t0 + k as f64 * dt;
        let z = Complex64::new(sigma, t);
        let direct = eval_expression(f, z, false)?.f;
        // F(z) = F(1 - w) with w = 1 - z; the main term comes from the dual data
        let main = fe_main_term(dual, Complex64::new(1.0, 0.0) - z)?;
        let diff = direct.sub(&main);
        if diff.ln_abs() >= main.ln_abs() - 2f64.ln() {
            return Ok(false);
        }
    }
    Ok(true)
}

fn left_bound(f: &PolyExpression) -> Result<(f64, E1Method)> {
    let max_mu = f.lfuncs().iter().flat_map(|d| d.spectral_params.iter()).map(|m| m.norm()).fold(0.0, f64::max);
    let default = -10.0 - max_mu;
    let dual = f.dual();
    let mut sigma = -1.0;
    let mut first = None;
    let mut passes = 0;
    while sigma >= default {
        if dominates(f, &dual, sigma)? {
            first.get_or_insert(sigma);
            passes += 1;
            if passes == SCAN_PASSES {
                return Ok((first.unwrap(), E1Method::Scan));
            }
        } else {
            first = None;
            passes = 0;
        }
        sigma -= 1.0;
    }
    log::info!("E1 scan found no dominance down to {default}; using the default");
    Ok((default, E1Method::Default))
}

/// `sum |c_j| prod |zeta^{(l)}(sigma)|^d`: majorant of `sum_n |eta_n| n^{-sigma}`
/// for expressions over zeta and Dirichlet L-functions.
fn majorant(f: &PolyExpression, sigma: f64) -> Result<f64> {
    let zeta = LFunctionDescriptor::zeta("majorant");
    let lmax = f.max_derivs().iter().flatten().max().copied().unwrap_or(0) as usize;
    let t = engine_taylor(&zeta, Complex64::new(sigma, 0.0), lmax)?;
    let abs: Vec<f64> = (0..=lmax)
        .map(|l| {
            let d = t.derivative(l);
            d.to_complex().norm() + d.abs_err()
        })
        .collect();
    Ok(f.monomials()
        .iter()
        .map(|m| m.coeff.norm() * m.factors.iter().map(|x| abs[x.deriv as usize].powi(x.exp as i32)).product::<f64>())
        .sum())
}

/// The same monomials over zeta with coefficients `(-1)^{deg_der} |c_j|`, so
/// that every Dirichlet coefficient is `sum_j |c_j| prod (log n)^l >= 0`.
fn zetaized(f: &PolyExpression) -> Result<PolyExpression> {
    let lfuncs = f.lfuncs().iter().map(|d| LFunctionDescriptor::zeta(d.id.clone())).collect();
    let monomials = f
        .monomials()
        .iter()
        .map(|m| {
            let der: u32 = m.factors.iter().map(|x| x.deriv * x.exp).sum();
            let sign = if der % 2 == 1 { -1.0 } else { 1.0 };
            Monomial { coeff: Complex64::new(sign * m.coeff.norm(), 0.0), factors: m.factors.clone() }
        })
        .collect();
    PolyExpression::new(lfuncs, monomials)
}

/// Smallest `sigma` (to 1e-9) with
/// `sum_{n != n_F} |eta_n| n^{-sigma} < |eta_{n_F}| n_F^{-sigma}`.
fn right_bound(f: &PolyExpression) -> Result<(f64, bool)> {
    let certified = f.lfuncs().iter().all(|d| matches!(d.source, Source::Zeta | Source::Dirichlet(_)));
    let (n_f, _) = leading_index(f)?;
    let n = EXPLICIT_TERMS.max(2 * n_f);
    let series = dirichlet_coefficients(f, n)?;
    let maj = if certified { Some(dirichlet_coefficients(&zetaized(f)?, n)?) } else { None };
    let lead = (series.get(n_f).norm() - series.error_bound[n_f - 1]).max(0.0);
    let ln_nf = (n_f as f64).ln();
    // S(sigma) < 1 means no zeros on Re s = sigma
    let s_of = |sigma: f64| -> Result<f64> {
        let mut head = 0.0;
        let mut explicit_maj = 0.0;
        for i in 1..=n {
            let w = (-(sigma) * ((i as f64).ln() - ln_nf)).exp();
            if i != n_f {
                head += (series.get(i).norm() + series.error_bound[i - 1]) * w;
            }
            if let Some(m) = &maj {
                explicit_maj += m.get(i).re * w;
            }
        }
        let tail = match &maj {
            Some(_) => {
                let total = majorant(f, sigma)? * (sigma * ln_nf).exp();
                (total - explicit_maj).max(0.0) + 1e-12 * total
            }
            None => 0.0,
        };
        Ok((head + tail) / lead)
    };
    let mut lo = 1.0 + 1e-2;
    if s_of(lo)? < 1.0 {
        return Ok((lo, certified));
    }
    let mut hi = 2.0;
    while s_of(hi)? >= 1.0 {
        lo = hi;
        hi *= 2.0;
        if hi > 1024.0 {
            return Err(Error::InvalidInput("no right zero-free half-plane below Re s = 1024".into()));
        }
    }
    while hi - lo > 1e-9 {
        let mid = 0.5 * (lo + hi);
        if s_of(mid)? < 1.0 {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok((hi, certified))
}

/// `E1` by the dominance scan (or its default) and `E2` from the
/// coefficient majorant.
pub fn zero_free_bounds(f: &PolyExpression) -> Result<StripBounds> {
    if f.lfuncs().is_empty() {
        return Err(Error::InvalidInput("constant expression has no zeros to count".into()));
    }
    if let Some(d) = f.lfuncs().iter().find(|d| d.is_series_only()) {
        return Err(Error::OutsideValidity { id: d.id.clone(), abscissa: d.evaluator().validity().unwrap_or(1.0) });
    }
    let (e2, e2_certified) = right_bound(f)?;
    let (e1, e1_method) = left_bound(f)?;
    Ok(StripBounds { e1, e2, e2_certified, e1_method })
}
