//! Zeros off the critical line: the counts `N^+`, `N^-` and Littlewood sums.

use crate::error::{Error, Result};
use crate::expr::{degree_profile, PolyExpression};
use crate::zeros::{locate_window, zero_free_bounds, CountOptions, LocateOptions, ZeroRecord};
use serde::Serialize;
use std::f64::consts::TAU;

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct ClusterReport {
    pub delta: f64,
    pub t1: f64,
    pub t2: f64,
    /// Zeros with `beta > 1/2 + delta`, with multiplicity.
    pub n_plus: u64,
    /// Zeros with `beta < 1/2 - delta`, with multiplicity.
    pub n_minus: u64,
    pub total: u64,
    /// `(n_plus + n_minus) / total`, zero for an empty window.
    pub fraction_outside: f64,
}

fn in_window(z: &ZeroRecord, t1: f64, t2: f64) -> bool {
    z.gamma() > t1 && z.gamma() < t2
}

/// Clustering counts over an already located zero list.
pub fn cluster_report(zeros: &[ZeroRecord], delta: f64, t1: f64, t2: f64) -> Result<ClusterReport> {
    if !(delta > 0.0) {
        return Err(Error::InvalidInput(format!("delta = {delta} must be positive")));
    }
    let (mut n_plus, mut n_minus, mut total) = (0, 0, 0);
    for z in zeros.iter().filter(|z| in_window(z, t1, t2)) {
        let m = z.multiplicity as u64;
        total += m;
        if z.beta() > 0.5 + delta {
            n_plus += m;
        } else if z.beta() < 0.5 - delta {
            n_minus += m;
        }
    }
    let fraction_outside = if total == 0 { 0.0 } else { (n_plus + n_minus) as f64 / total as f64 };
    Ok(ClusterReport { delta, t1, t2, n_plus, n_minus, total, fraction_outside })
}

/// Locates the zeros with `t1 < gamma < t2` and counts those at distance
/// more than `delta` from the critical line.
pub fn clustering_counts(
    f: &PolyExpression,
    delta: f64,
    t1: f64,
    t2: f64,
    count: &CountOptions,
    locate: &LocateOptions,
) -> Result<(ClusterReport, Vec<ZeroRecord>)> {
    let zeros = locate_window(f, t1, t2, count, locate)?;
    let report = cluster_report(&zeros, delta, t1, t2)?;
    Ok((report, zeros))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct LittlewoodReport {
    pub b: f64,
    pub t: f64,
    /// `2 pi sum_{T < gamma < 2T} (beta - b)`.
    pub sum: f64,
    /// `deg_rk (1/2 - b) T log T`.
    pub main_term: f64,
    /// `|sum - main_term| / (T log log T)`.
    pub deviation: f64,
    pub zeros: u64,
}

/// The Littlewood sum over a located zero list and the window `(T, 2T)`.
pub fn littlewood_from_zeros(zeros: &[ZeroRecord], b: f64, t: f64, deg_rk: u32) -> LittlewoodReport {
    let (mut sum, mut n) = (0.0, 0);
    for z in zeros.iter().filter(|z| in_window(z, t, 2.0 * t)) {
        sum += z.multiplicity as f64 * (z.beta() - b);
        n += z.multiplicity as u64;
    }
    let sum = TAU * sum;
    let main_term = deg_rk as f64 * (0.5 - b) * t * t.ln();
    let deviation = (sum - main_term).abs() / (t * t.ln().ln());
    LittlewoodReport { b, t, sum, main_term, deviation, zeros: n }
}

/// Upper limit for `b`: `min(E1, -1 - Re mu)` over all spectral parameters.
pub fn b_bound(f: &PolyExpression, e1: f64) -> f64 {
    f.lfuncs().iter().flat_map(|d| d.spectral_params.iter()).map(|mu| -1.0 - mu.re).fold(e1, f64::min)
}

pub fn littlewood_sum(
    f: &PolyExpression,
    b: f64,
    t: f64,
    count: &CountOptions,
    locate: &LocateOptions,
) -> Result<(LittlewoodReport, Vec<ZeroRecord>)> {
    if !(t > 2.0) {
        return Err(Error::InvalidInput(format!("T = {t} must exceed 2")));
    }
    let strip = match count.strip {
        Some(s) => s,
        None => zero_free_bounds(f)?,
    };
    let bound = b_bound(f, strip.e1);
    if !(b <= bound) {
        return Err(Error::BOutOfRange { b, bound });
    }
    let profile = degree_profile(f)?;
    let count = CountOptions { strip: Some(strip), ..count.clone() };
    let zeros = locate_window(f, t, 2.0 * t, &count, locate)?;
    Ok((littlewood_from_zeros(&zeros, b, t, profile.deg_rk), zeros))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::zeros::{Method, Rectangle};
    use num_complex::Complex64;

    fn record(beta: f64, gamma: f64, m: u32) -> ZeroRecord {
        ZeroRecord {
            rho: Complex64::new(beta, gamma),
            multiplicity: m,
            residual: 0.0,
            bbox: Rectangle::new(beta - 1e-9, beta + 1e-9, gamma - 1e-9, gamma + 1e-9).unwrap(),
            method: Method::Newton,
        }
    }

    #[test]
    fn counts_respect_window_and_multiplicity() {
        let zs = [record(0.5, 11.0, 1), record(0.9, 12.0, 2), record(0.1, 13.0, 1), record(2.0, 30.0, 1)];
        let r = cluster_report(&zs, 0.25, 10.0, 20.0).unwrap();
        assert_eq!((r.n_plus, r.n_minus, r.total), (2, 1, 4));
        assert_eq!(r.fraction_outside, 0.75);
        let wide = cluster_report(&zs, 10.0, 10.0, 20.0).unwrap();
        assert_eq!((wide.n_plus, wide.n_minus), (0, 0));
        assert!(cluster_report(&zs, 0.0, 10.0, 20.0).is_err());
    }

    #[test]
    fn littlewood_is_affine_in_b() {
        let zs = [record(0.5, 11.0, 1), record(0.7, 15.0, 2)];
        let a = littlewood_from_zeros(&zs, -1.0, 10.0, 1);
        let c = littlewood_from_zeros(&zs, -3.0, 10.0, 1);
        assert_eq!(a.zeros, 3);
        assert!((c.sum - a.sum - TAU * 2.0 * 3.0).abs() < 1e-12);
        let half = littlewood_from_zeros(&zs, 0.5, 10.0, 1);
        assert!((half.sum - TAU * 2.0 * 0.2).abs() < 1e-12);
        assert_eq!(littlewood_from_zeros(&zs, -1.0, 3.0, 1).sum, 0.0);
    }
}
