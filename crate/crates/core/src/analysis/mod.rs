//! Predicted-versus-empirical zero statistics and checks of the structural
//! lemmas: counts, clustering near the critical line, Littlewood sums,
//! trivial-zero disks and the asymptotic functional equation.

pub mod audit;
pub mod cluster;
pub mod fecheck;

use crate::error::Result;
use crate::expr::{degree_profile, PolyExpression};
use crate::zeros::{count_nontrivial, BandCount, CountOptions, StripBounds};
use serde::Serialize;

pub use audit::{trivial_zero_audit, AuditReport, DiskCount};
pub use cluster::{
    cluster_report, clustering_counts, littlewood_from_zeros, littlewood_sum, ClusterReport, LittlewoodReport,
};
pub use fecheck::{asymptotic_fe_check, FeCheckReport, FePoint};

/// Zero count over `(0, T)` against `alpha1 T log T + alpha2 T`.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct CountReport {
    pub t: f64,
    pub predicted: f64,
    pub empirical: i64,
    /// `|empirical - predicted| / log T`.
    pub slack: f64,
    pub alpha1: f64,
    pub alpha2: f64,
    pub assumption_satisfied: bool,
    pub strip: StripBounds,
    pub bands: Vec<BandCount>,
}

pub fn verify_count(f: &PolyExpression, t: f64, opts: &CountOptions) -> Result<CountReport> {
    let profile = degree_profile(f)?;
    let counted = count_nontrivial(f, 0.0, t, opts)?;
    let predicted = profile.predicted_count(t);
    let slack = (counted.count as f64 - predicted).abs() / t.ln();
    Ok(CountReport {
        t,
        predicted,
        empirical: counted.count,
        slack,
        alpha1: profile.alpha1,
        alpha2: profile.alpha2,
        assumption_satisfied: profile.assumption_satisfied,
        strip: counted.strip,
        bands: counted.bands,
    })
}
