//! Zeros near the trivial zeros `-2n - mu` far to the left.

use crate::error::{Error, Result};
use crate::expr::{degree_profile, PolyExpression};
use crate::lfuncs::eval_expression;
use crate::zeros::strip::fe_main_term;
use crate::zeros::{winding_count, Rectangle, WindingOptions};
use num_complex::Complex64;
use serde::Serialize;

/// Boundary samples per side in the admissibility check.
const SIDE_SAMPLES: usize = 8;
/// Largest `n` tried by the admissibility search.
const MAX_N: u64 = 1 << 16;
/// Disk families audited past the first admissible one.
const FAMILIES: u64 = 5;

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct DiskCount {
    pub n: u64,
    pub centers: Vec<f64>,
    /// Zeros inside the covering squares, with multiplicity.
    pub count: i64,
    /// Whether the main term dominates on every square boundary.
    pub admissible: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct AuditReport {
    pub epsilon: f64,
    pub deg_rk: u32,
    /// First `n` found admissible when the range was chosen automatically.
    pub first_admissible: Option<u64>,
    pub disks: Vec<DiskCount>,
    pub all_match: bool,
}

/// Distinct points `-2n - mu` over all spectral parameters.
fn centers(f: &PolyExpression, n: u64) -> Vec<f64> {
    let mut c: Vec<f64> =
        f.lfuncs().iter().flat_map(|d| d.spectral_params.iter()).map(|mu| -2.0 * n as f64 - mu.re).collect();
    c.sort_by(f64::total_cmp);
    c.dedup_by(|a, b| (*a - *b).abs() < 1e-12);
    c
}

fn square(center: f64, eps: f64) -> Rectangle {
    Rectangle { sigma_lo: center - eps, sigma_hi: center + eps, t_lo: -eps, t_hi: eps }
}

/// `|F - A_1| < |A_1|` at sample points of every square boundary.
fn admissible(f: &PolyExpression, dual: &PolyExpression, n: u64, eps: f64) -> Result<bool> {
    for c in centers(f, n) {
        let corners = square(c, eps).corners();
        for k in 0..4 {
            let (a, b) = (corners[k], corners[(k + 1) % 4]);
            for i in 0..SIDE_SAMPLES {
                let z = a + (b - a) * (i as f64 / SIDE_SAMPLES as f64);
                let direct = eval_expression(f, z, false)?.f;
                let main = fe_main_term(dual, Complex64::new(1.0, 0.0) - z)?;
                if direct.sub(&main).ln_abs() >= main.ln_abs() {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

/// Smallest admissible `n` by doubling and then bisection.
fn first_admissible(f: &PolyExpression, eps: f64) -> Result<u64> {
    let dual = f.dual();
    let mut lo = 0;
    let mut hi = 1;
    while !admissible(f, &dual, hi, eps)? {
        lo = hi;
        hi *= 2;
        if hi > MAX_N {
            return Err(Error::ScanFailed);
        }
    }
    while hi - lo > 1 {
        let mid = lo + (hi - lo) / 2;
        if admissible(f, &dual, mid, eps)? {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(hi)
}

/// Zero counts in the squares of half side `epsilon` around each `-2n - mu`.
/// Without `n_range`, audits the five families starting at the first `n`
/// where the main term dominates on the squares.
pub fn trivial_zero_audit(f: &PolyExpression, epsilon: f64, n_range: Option<(u64, u64)>) -> Result<AuditReport> {
    if !(epsilon > 0.0 && epsilon <= 0.5) {
        return Err(Error::InvalidInput(format!("epsilon = {epsilon} outside (0, 1/2]")));
    }
    if f.lfuncs().is_empty() {
        return Err(Error::InvalidInput("constant expression has no trivial zeros".into()));
    }
    let profile = degree_profile(f)?;
    let (first, (lo, hi)) = match n_range {
        Some((a, b)) if a >= 1 && a <= b => (None, (a, b)),
        Some((a, b)) => return Err(Error::InvalidInput(format!("bad n range {a}..={b}"))),
        None => {
            let n = first_admissible(f, epsilon)?;
            log::info!("first admissible trivial-zero family: n = {n}");
            (Some(n), (n, n + FAMILIES - 1))
        }
    };
    let dual = f.dual();
    let opts = WindingOptions::default();
    let mut disks = Vec::new();
    for n in lo..=hi {
        let cs = centers(f, n);
        let mut count = 0;
        for &c in &cs {
            count += winding_count(f, &square(c, epsilon), &opts)?;
        }
        let admissible = admissible(f, &dual, n, epsilon)?;
        disks.push(DiskCount { n, centers: cs, count, admissible });
    }
    let all_match = disks.iter().all(|d| d.count == profile.deg_rk as i64);
    Ok(AuditReport { epsilon, deg_rk: profile.deg_rk, first_admissible: first, disks, all_match })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::LFunctionDescriptor;

    #[test]
    fn zeta_and_its_square() {
        let z = LFunctionDescriptor::zeta("zeta");
        let f = PolyExpression::builder().term(1.0, &[(&z, 0, 1)]).build().unwrap();
        let r = trivial_zero_audit(&f, 0.25, Some((5, 5))).unwrap();
        assert_eq!(r.disks[0].centers, vec![-10.0]);
        assert_eq!(r.disks[0].count, 1);
        let g = PolyExpression::builder().term(1.0, &[(&z, 0, 2)]).build().unwrap();
        let r2 = trivial_zero_audit(&g, 0.25, Some((5, 5))).unwrap();
        assert_eq!(r2.disks[0].count, 2);
        assert!(r2.all_match);
        let auto = trivial_zero_audit(&f, 0.25, None).unwrap();
        assert!(auto.all_match, "{auto:?}");
    }
}
