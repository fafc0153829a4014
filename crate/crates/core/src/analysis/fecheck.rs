//! Two-path check of the asymptotic functional equation: `F(1 - s, dual)`
//! evaluated directly against its leading term built from `F(s)`.

use crate::error::{Error, Result};
use crate::expr::{leading_set, PolyExpression};
use crate::lfuncs::eval_expression;
use crate::lfuncs::fe::{in_region, DEFAULT_EPSILON};
use crate::zeros::strip::fe_main_term;
use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct FePoint {
    pub t: f64,
    /// `F(1 - s, dual) / main term`, as `[re, im]`.
    pub ratio: [f64; 2],
    /// `|ratio - 1|`.
    pub r: f64,
    /// Sign of `Re(direct / main term)` for the main term without its
    /// `(-1)^{deg_der}`.
    pub observed_sign: i32,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct FeCheckReport {
    pub sigma: f64,
    pub expected_sign: i32,
    pub sign_matches: bool,
    pub points: Vec<FePoint>,
    /// Slope `k` of the fit `r ~ C (1 / log|s|)^k`; `None` with fewer than
    /// two usable points.
    pub decay_exponent: Option<f64>,
}

fn point(f: &PolyExpression, dual: &PolyExpression, sigma: f64, t: f64, sign: f64) -> Result<FePoint> {
    let s = Complex64::new(sigma, t);
    for d in f.lfuncs() {
        if !in_region(s, &d.gamma_data(), DEFAULT_EPSILON) {
            return Err(Error::RegionViolation { s: s.into() });
        }
    }
    let main = fe_main_term(f, s)?;
    let direct = eval_expression(dual, Complex64::new(1.0, 0.0) - s, false)?.f;
    let ratio = direct.div(&main).to_complex();
    Ok(FePoint {
        t,
        ratio: [ratio.re, ratio.im],
        r: (ratio - 1.0).norm(),
        observed_sign: if (ratio * sign).re > 0.0 { 1 } else { -1 },
    })
}

fn fit_decay(sigma: f64, points: &[FePoint]) -> Option<f64> {
    let xy: Vec<(f64, f64)> = points
        .iter()
        .filter(|p| p.r > 0.0)
        .map(|p| (-(Complex64::new(sigma, p.t).norm().ln().ln()), p.r.ln()))
        .collect();
    if xy.len() < 2 {
        return None;
    }
    let n = xy.len() as f64;
    let (mx, my) = (xy.iter().map(|p| p.0).sum::<f64>() / n, xy.iter().map(|p| p.1).sum::<f64>() / n);
    let sxx: f64 = xy.iter().map(|p| (p.0 - mx).powi(2)).sum();
    let sxy: f64 = xy.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    (sxx > 0.0).then(|| sxy / sxx)
}

/// `r(t) = |F(1 - s, dual) / A(s) - 1|` at `s = sigma + it` for each grid
/// height, with `A` the leading term carrying the sign `(-1)^{deg_der}`.
pub fn asymptotic_fe_check(f: &PolyExpression, sigma: f64, t_grid: &[f64]) -> Result<FeCheckReport> {
    if !(sigma > 1.5) {
        return Err(Error::InvalidInput(format!("sigma = {sigma} must exceed 3/2")));
    }
    if f.lfuncs().is_empty() {
        return Err(Error::InvalidInput("constant expression".into()));
    }
    let (top, _) = leading_set(f);
    let expected_sign = if top.deg_der % 2 == 1 { -1 } else { 1 };
    let dual = f.dual();
    let points: Vec<FePoint> =
        t_grid.par_iter().map(|&t| point(f, &dual, sigma, t, expected_sign as f64)).collect::<Result<_>>()?;
    let sign_matches = points.iter().all(|p| p.observed_sign == expected_sign);
    let decay_exponent = fit_decay(sigma, &points);
    Ok(FeCheckReport { sigma, expected_sign, sign_matches, points, decay_exponent })
}
