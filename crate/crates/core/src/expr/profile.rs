use super::coefficients::leading_index;
use super::pole::pole_analysis;
use super::poly::PolyExpression;
use crate::error::{Error, Result};
use num_complex::Complex64;
use serde::Serialize;
use std::f64::consts::{E, PI};

/// Relative size under which `sum_{j in J} c_j` counts as zero.
const ASSUMPTION_TOL: f64 = 1e-12;

/// Rank, derivative and conductor degree of one monomial.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct MonomialDegrees {
    pub deg_rk: u32,
    pub deg_der: u32,
    pub deg_cond: f64,
}

/// Structural invariants of `F` and the predicted zero-count constants.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct DegreeProfile {
    pub deg_rk: u32,
    pub deg_der: u32,
    pub deg_cond: f64,
    /// Canonical indices of the monomials attaining all three maxima.
    pub j: Vec<usize>,
    pub sum_cj: Complex64,
    pub assumption_satisfied: bool,
    pub n_f: usize,
    pub eta_nf: Complex64,
    pub p_f: u32,
    /// False when the Laurent analysis could not settle `p_f`; it then holds
    /// the symbolic upper bound.
    pub p_f_exact: bool,
    pub z_f: Option<u32>,
    pub alpha1: f64,
    pub alpha2: f64,
}

impl DegreeProfile {
    /// `alpha1 T log T + alpha2 T`.
    pub fn predicted_count(&self, t: f64) -> f64 {
        self.alpha1 * t * t.ln() + self.alpha2 * t
    }

    pub fn check_assumption(&self) -> Result<()> {
        if self.assumption_satisfied {
            Ok(())
        } else {
            Err(Error::AssumptionViolated { sum_re: self.sum_cj.re, sum_im: self.sum_cj.im })
        }
    }
}

pub fn monomial_degrees(f: &PolyExpression) -> Vec<MonomialDegrees> {
    f.monomials()
        .iter()
        .map(|m| {
            let mut d = MonomialDegrees { deg_rk: 0, deg_der: 0, deg_cond: 0.0 };
            for x in &m.factors {
                let l = &f.lfuncs()[x.lfunc];
                d.deg_rk += l.rank * x.exp;
                d.deg_der += x.deriv * x.exp;
                d.deg_cond += l.log_conductor * x.exp as f64;
            }
            d
        })
        .collect()
}

fn same(a: f64, b: f64) -> bool {
    (a - b).abs() <= 1e-12 * a.abs().max(b.abs()).max(1.0)
}

/// Nested maxima rank, then derivative, then conductor, and the index set
/// `J` of monomials attaining all three.
pub fn leading_set(f: &PolyExpression) -> (MonomialDegrees, Vec<usize>) {
    let degs = monomial_degrees(f);
    let rk = degs.iter().map(|d| d.deg_rk).max().unwrap_or(0);
    let der = degs.iter().filter(|d| d.deg_rk == rk).map(|d| d.deg_der).max().unwrap_or(0);
    let cond = degs
        .iter()
        .filter(|d| d.deg_rk == rk && d.deg_der == der)
        .map(|d| d.deg_cond)
        .fold(f64::NEG_INFINITY, f64::max);
    let j = degs
        .iter()
        .enumerate()
        .filter(|(_, d)| d.deg_rk == rk && d.deg_der == der && same(d.deg_cond, cond))
        .map(|(i, _)| i)
        .collect();
    (MonomialDegrees { deg_rk: rk, deg_der: der, deg_cond: cond }, j)
}

/// Degrees, `J`, `n_F`, `p_F` and `alpha_1, alpha_2` of a canonical
/// expression. A vanishing `sum_{j in J} c_j` is reported through
/// `assumption_satisfied` and a log warning.
pub fn degree_profile(f: &PolyExpression) -> Result<DegreeProfile> {
    let (top, j) = leading_set(f);
    let sum_cj: Complex64 = j.iter().map(|&i| f.monomials()[i].coeff).sum();
    let abs: f64 = j.iter().map(|&i| f.monomials()[i].coeff.norm()).sum();
    let assumption_satisfied = sum_cj.norm() > ASSUMPTION_TOL * abs;
    if !assumption_satisfied {
        log::warn!("sum of c_j over J vanishes: {sum_cj}");
    }
    let (n_f, eta_nf) = leading_index(f)?;
    let pole = pole_analysis(f)?;
    let p_f = if pole.ambiguous { pole.upper_bound } else { pole.order };
    let alpha1 = top.deg_rk as f64 / (2.0 * PI);
    let alpha2 = (top.deg_cond - top.deg_rk as f64 * (2.0 * PI * E).ln() - (n_f as f64).ln()) / (2.0 * PI);
    Ok(DegreeProfile {
        deg_rk: top.deg_rk,
        deg_der: top.deg_der,
        deg_cond: top.deg_cond,
        j,
        sum_cj,
        assumption_satisfied,
        n_f,
        eta_nf,
        p_f,
        p_f_exact: !pole.ambiguous,
        z_f: None,
        alpha1,
        alpha2,
    })
}

/// `alpha1 T log T + alpha2 T` for `T > 2`.
pub fn predicted_count(f: &PolyExpression, t: f64) -> Result<f64> {
    if !(t > 2.0) {
        return Err(Error::InvalidInput(format!("T = {t} must exceed 2")));
    }
    let p = degree_profile(f)?;
    p.check_assumption()?;
    Ok(p.predicted_count(t))
}
