//! Nontrivial-zero counts over height windows, band by band.

use super::strip::{zero_free_bounds, StripBounds};
use super::winding::{segment_phase, snap, Budget, WindingOptions};
use super::Rectangle;
use crate::error::{Error, Result};
use crate::expr::PolyExpression;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

/// Bands lower than this are never counted; trivial zeros sit on the real axis.
pub const MIN_HEIGHT: f64 = 0.5;
/// Largest supported height.
pub const MAX_HEIGHT: f64 = 1000.0;

#[derive(Debug, Clone, PartialEq)]
pub struct CountOptions {
    /// Worker threads for band processing.
    pub jobs: usize,
    /// Seed of the band-edge jitter.
    pub seed: u64,
    pub band_height: f64,
    /// Largest shift of a band edge that runs into a zero.
    pub jitter: f64,
    pub max_attempts: u32,
    pub winding: WindingOptions,
    /// Precomputed strip; computed on demand when `None`.
    pub strip: Option<StripBounds>,
}

impl Default for CountOptions {
    fn default() -> Self {
        CountOptions {
            jobs: 1,
            seed: 0,
            band_height: 1.0,
            jitter: 0.01,
            max_attempts: 5,
            winding: WindingOptions::default(),
            strip: None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct BandCount {
    pub t_lo: f64,
    pub t_hi: f64,
    pub count: i64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct CountResult {
    pub t1: f64,
    pub t2: f64,
    pub count: i64,
    pub bands: Vec<BandCount>,
    pub strip: StripBounds,
}

/// Phase change along one horizontal line of the strip.
#[derive(Debug, Clone, Copy)]
struct Line {
    t: f64,
    phase: f64,
}

fn jitter_offset(seed: u64, line: usize, attempt: u32, width: f64) -> f64 {
    let mut key = [0u8; 32];
    key[..8].copy_from_slice(&seed.to_le_bytes());
    key[8..16].copy_from_slice(&(line as u64).to_le_bytes());
    key[16..20].copy_from_slice(&attempt.to_le_bytes());
    let mut rng = ChaCha8Rng::from_seed(key);
    rng.gen_range(-width..=width)
}

fn line_phase(f: &PolyExpression, strip: &StripBounds, base: f64, index: usize, opts: &CountOptions) -> Result<Line> {
    let mut last = None;
    for attempt in 0..opts.max_attempts.max(1) {
        let t = if attempt == 0 { base } else { base + jitter_offset(opts.seed, index, attempt, opts.jitter) };
        let a = Complex64::new(strip.e1, t);
        let b = Complex64::new(strip.e2, t);
        match segment_phase(f, a, b, &opts.winding, &mut Budget::default()) {
            Ok(phase) => return Ok(Line { t, phase }),
            Err(e @ Error::BoundaryTooClose { .. }) => {
                log::debug!("line {index} at t = {t}: {e}; jittering");
                last = Some(e);
            }
            Err(e) => return Err(e),
        }
    }
    Err(last.expect("at least one attempt"))
}

fn edges(t1: f64, t2: f64, h: f64) -> Vec<f64> {
    let k = ((t2 - t1) / h).ceil().max(1.0) as usize;
    let mut out: Vec<f64> = (0..k).map(|i| t1 + i as f64 * h).collect();
    if out.len() > 1 && t2 - out[out.len() - 1] < 0.25 * h {
        out.pop();
    }
    out.push(t2);
    out
}

fn pool(jobs: usize) -> Result<rayon::ThreadPool> {
    rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.max(1))
        .build()
        .map_err(|e| Error::InvalidInput(format!("thread pool: {e}")))
}

fn check_window(t1: f64, t2: f64) -> Result<()> {
    if !(t1 >= 0.0 && t2 > t1 && t2 <= MAX_HEIGHT) {
        return Err(Error::InvalidInput(format!(
            "height window ({t1}, {t2}) must satisfy 0 <= T1 < T2 <= {MAX_HEIGHT}"
        )));
    }
    Ok(())
}

/// Band rectangles of the strip over `(max(t1, 1/2), t2)` with their zero
/// counts. Horizontal lines are shared by neighbouring bands.
pub(crate) fn strip_bands(
    f: &PolyExpression,
    t1: f64,
    t2: f64,
    strip: &StripBounds,
    opts: &CountOptions,
) -> Result<Vec<(Rectangle, i64)>> {
    let lo = t1.max(MIN_HEIGHT);
    if t2 <= lo {
        return Ok(Vec::new());
    }
    let heights = edges(lo, t2, opts.band_height);
    let pool = pool(opts.jobs)?;
    pool.install(|| {
        let lines: Vec<Line> =
            heights.par_iter().enumerate().map(|(i, &h)| line_phase(f, strip, h, i, opts)).collect::<Result<_>>()?;
        lines
            .par_windows(2)
            .map(|w| {
                let (a, b) = (w[0], w[1]);
                let mut budget = Budget::default();
                let right = segment_phase(
                    f,
                    Complex64::new(strip.e2, a.t),
                    Complex64::new(strip.e2, b.t),
                    &opts.winding,
                    &mut budget,
                )?;
                let left = segment_phase(
                    f,
                    Complex64::new(strip.e1, b.t),
                    Complex64::new(strip.e1, a.t),
                    &opts.winding,
                    &mut budget,
                )?;
                let n = snap(a.phase + right - b.phase + left, &opts.winding, budget.used)?;
                let rect = Rectangle::new(strip.e1, strip.e2, a.t, b.t)?;
                if n < 0 {
                    return Err(Error::PhaseUnresolved { samples: budget.used });
                }
                Ok((rect, n))
            })
            .collect()
    })
}

/// Nontrivial zeros of `F` with `t1 < Im s < t2` inside the strip, counted
/// with multiplicity.
pub fn count_nontrivial(f: &PolyExpression, t1: f64, t2: f64, opts: &CountOptions) -> Result<CountResult> {
    check_window(t1, t2)?;
    let strip = match opts.strip {
        Some(s) => s,
        None => zero_free_bounds(f)?,
    };
    let bands = strip_bands(f, t1, t2, &strip, opts)?;
    let bands: Vec<BandCount> =
        bands.into_iter().map(|(r, n)| BandCount { t_lo: r.t_lo, t_hi: r.t_hi, count: n }).collect();
    // s = 1 lies below every band, so no pole correction enters
    let count = bands.iter().map(|b| b.count).sum();
    Ok(CountResult { t1, t2, count, bands, strip })
}
