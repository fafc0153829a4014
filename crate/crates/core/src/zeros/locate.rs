//! Zero isolation by subdivision and Newton refinement.

use super::count::{strip_bands, CountOptions};
use super::strip::zero_free_bounds;
use super::winding::{circle_winding, winding_count, WindingOptions};
use super::{sort_zeros, Method, Rectangle, ZeroRecord};
use crate::error::{Error, Result};
use crate::expr::PolyExpression;
use crate::lfuncs::eval_expression;
use num_complex::Complex64;
use rayon::prelude::*;

/// Boxes below this diameter are handed to Newton.
const NEWTON_BOX: f64 = 1.0;
const NEWTON_STEPS: usize = 60;
const RESIDUAL: f64 = 1e-8;
const SCALE_RADIUS: f64 = 0.05;
const MULT_RADIUS: f64 = 1e-3;
/// Split fractions, off-centre so that split lines avoid symmetric loci such
/// as the critical line: a double zero on an edge leaves no phase jump.
const SPLITS: [f64; 5] = [0.4873, 0.5269, 0.4462, 0.5538, 0.4191];
/// Records closer than this are one zero reached from two boxes.
const SAME_ZERO: f64 = 1e-7;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LocateOptions {
    pub isolation_tol: f64,
    pub winding: WindingOptions,
}

impl Default for LocateOptions {
    fn default() -> Self {
        LocateOptions { isolation_tol: 1e-9, winding: WindingOptions::default() }
    }
}

/// `max |F|` at 8 points on the circle of radius 0.05 around `z`.
fn local_scale(f: &PolyExpression, z: Complex64) -> Result<f64> {
    let mut m: f64 = 0.0;
    for k in 0..8 {
        let p = z + Complex64::from_polar(SCALE_RADIUS, std::f64::consts::TAU * k as f64 / 8.0);
        m = m.max(eval_expression(f, p, false)?.f.to_complex().norm());
    }
    Ok(m)
}

fn residual(f: &PolyExpression, z: Complex64) -> Result<f64> {
    Ok(eval_expression(f, z, false)?.f.to_complex().norm())
}

/// Modified Newton `z <- z - m F/F'` from the box center.
fn newton(f: &PolyExpression, rect: &Rectangle, m: u32) -> Option<Complex64> {
    let mut z = rect.center();
    let slack = 0.25 * rect.diameter();
    let grown = Rectangle {
        sigma_lo: rect.sigma_lo - slack,
        sigma_hi: rect.sigma_hi + slack,
        t_lo: rect.t_lo - slack,
        t_hi: rect.t_hi + slack,
    };
    for _ in 0..NEWTON_STEPS {
        let v = eval_expression(f, z, true).ok()?;
        let df = v.df?;
        if df.is_zero() {
            return None;
        }
        if v.f.is_zero() {
            break;
        }
        let step = v.f.div(&df).to_complex() * m as f64;
        z -= step;
        if !grown.contains(z) || !(z.re.is_finite() && z.im.is_finite()) {
            return None;
        }
        if step.norm() <= 4.0 * f64::EPSILON * z.norm().max(1.0) {
            break;
        }
    }
    rect.contains(z).then_some(z)
}

fn accept_newton(f: &PolyExpression, rect: &Rectangle, w: i64, opts: &LocateOptions) -> Result<Option<ZeroRecord>> {
    let Some(z) = newton(f, rect, w as u32) else { return Ok(None) };
    let res = residual(f, z)?;
    if res > RESIDUAL * local_scale(f, z)? {
        return Ok(None);
    }
    match circle_winding(f, z, MULT_RADIUS.min(0.5 * rect.diameter()), &opts.winding) {
        Ok(m) if m == w => {}
        Ok(_) | Err(Error::BoundaryTooClose { .. }) | Err(Error::PhaseUnresolved { .. }) => return Ok(None),
        Err(e) => return Err(e),
    }
    Ok(Some(ZeroRecord { rho: z, multiplicity: w as u32, residual: res, bbox: *rect, method: Method::Newton }))
}

fn split(rect: &Rectangle, frac: f64) -> Vec<Rectangle> {
    let (w, h) = (rect.width(), rect.height());
    let sm = rect.sigma_lo + frac * w;
    let tm = rect.t_lo + frac * h;
    let r = |a, b, c, d| Rectangle { sigma_lo: a, sigma_hi: b, t_lo: c, t_hi: d };
    if w > 2.0 * h {
        vec![r(rect.sigma_lo, sm, rect.t_lo, rect.t_hi), r(sm, rect.sigma_hi, rect.t_lo, rect.t_hi)]
    } else if h > 2.0 * w {
        vec![r(rect.sigma_lo, rect.sigma_hi, rect.t_lo, tm), r(rect.sigma_lo, rect.sigma_hi, tm, rect.t_hi)]
    } else {
        vec![
            r(rect.sigma_lo, sm, rect.t_lo, tm),
            r(sm, rect.sigma_hi, rect.t_lo, tm),
            r(rect.sigma_lo, sm, tm, rect.t_hi),
            r(sm, rect.sigma_hi, tm, rect.t_hi),
        ]
    }
}

/// Children of `rect` with their windings, trying shifted split lines when
/// one runs through a zero.
fn subdivide(f: &PolyExpression, rect: &Rectangle, w: i64, opts: &LocateOptions) -> Result<Vec<(Rectangle, i64)>> {
    let mut last = None;
    for frac in SPLITS {
        let kids = split(rect, frac);
        let counts: Result<Vec<i64>> = kids.iter().map(|k| winding_count(f, k, &opts.winding)).collect();
        match counts {
            Ok(c) if c.iter().sum::<i64>() == w && c.iter().all(|&x| x >= 0) => {
                return Ok(kids.into_iter().zip(c).filter(|(_, n)| *n > 0).collect());
            }
            Ok(c) => {
                log::debug!("children of {rect:?} wind {c:?}, parent {w}");
                last = Some(Error::PhaseUnresolved { samples: 0 });
            }
            Err(e @ (Error::BoundaryTooClose { .. } | Error::PhaseUnresolved { .. })) => last = Some(e),
            Err(e) => return Err(e),
        }
    }
    log::warn!("could not subdivide {rect:?}: {last:?}");
    Err(Error::NonConvergence { sigma_lo: rect.sigma_lo, sigma_hi: rect.sigma_hi, t_lo: rect.t_lo, t_hi: rect.t_hi })
}

fn isolate(f: &PolyExpression, rect: Rectangle, w: i64, opts: &LocateOptions, out: &mut Vec<ZeroRecord>) -> Result<()> {
    if w <= 0 {
        return Ok(());
    }
    if rect.diameter() <= NEWTON_BOX {
        if let Some(rec) = accept_newton(f, &rect, w, opts)? {
            out.push(rec);
            return Ok(());
        }
    }
    if rect.diameter() < opts.isolation_tol {
        let z = rect.center();
        out.push(ZeroRecord {
            rho: z,
            multiplicity: w as u32,
            residual: residual(f, z)?,
            bbox: rect,
            method: Method::BisectionOnly,
        });
        return Ok(());
    }
    for (kid, n) in subdivide(f, &rect, w, opts)? {
        isolate(f, kid, n, opts, out)?;
    }
    Ok(())
}

/// Zeros inside `rect` with isolation boxes down to `isolation_tol`.
pub fn locate_zeros(f: &PolyExpression, rect: &Rectangle, isolation_tol: f64) -> Result<Vec<ZeroRecord>> {
    locate_zeros_with(f, rect, &LocateOptions { isolation_tol, ..LocateOptions::default() })
}

pub fn locate_zeros_with(f: &PolyExpression, rect: &Rectangle, opts: &LocateOptions) -> Result<Vec<ZeroRecord>> {
    let w = winding_count(f, rect, &opts.winding)?;
    if w < 0 {
        return Err(Error::InvalidInput(format!("rectangle {rect:?} encloses a pole (winding {w})")));
    }
    let mut out = Vec::new();
    isolate(f, *rect, w, opts, &mut out)?;
    merge(f, out)
}

/// Sorts and merges coincident records, re-measuring their multiplicity.
fn merge(f: &PolyExpression, mut zeros: Vec<ZeroRecord>) -> Result<Vec<ZeroRecord>> {
    sort_zeros(&mut zeros);
    let mut out: Vec<ZeroRecord> = Vec::with_capacity(zeros.len());
    for z in zeros {
        match out.iter_mut().find(|o| (o.rho - z.rho).norm() < SAME_ZERO) {
            Some(o) => {
                log::debug!("zero at {} reached twice", z.rho);
                o.multiplicity += z.multiplicity;
            }
            None => out.push(z),
        }
    }
    let points: Vec<Complex64> = out.iter().map(|z| z.rho).collect();
    for z in out.iter_mut() {
        if let Ok(m) = multiplicity(f, z.rho, &points) {
            z.multiplicity = m;
        }
    }
    Ok(out)
}

/// All zeros in the strip with `t1 < Im s < t2`, band by band.
pub fn locate_window(
    f: &PolyExpression,
    t1: f64,
    t2: f64,
    count: &CountOptions,
    opts: &LocateOptions,
) -> Result<Vec<ZeroRecord>> {
    let strip = match count.strip {
        Some(s) => s,
        None => zero_free_bounds(f)?,
    };
    let bands = strip_bands(f, t1, t2, &strip, count)?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(count.jobs.max(1))
        .build()
        .map_err(|e| Error::InvalidInput(format!("thread pool: {e}")))?;
    let found: Vec<Vec<ZeroRecord>> = pool.install(|| {
        bands
            .par_iter()
            .map(|&(rect, n)| {
                let mut out = Vec::new();
                isolate(f, rect, n, opts, &mut out)?;
                Ok(out)
            })
            .collect::<Result<_>>()
    })?;
    merge(f, found.into_iter().flatten().collect())
}

/// Winding number on a small circle around `rho`: radius
/// `min(1e-3, half the distance to the nearest of `others`)`.
pub fn multiplicity(f: &PolyExpression, rho: Complex64, others: &[Complex64]) -> Result<u32> {
    let nearest = others.iter().map(|z| (z - rho).norm()).filter(|d| *d > 0.0).fold(f64::INFINITY, f64::min);
    let r = MULT_RADIUS.min(0.5 * nearest);
    let w = circle_winding(f, rho, r, &WindingOptions::default())?;
    if w < 1 {
        return Err(Error::BoundaryTooClose { s: rho.into() });
    }
    Ok(w as u32)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::LFunctionDescriptor;

    #[test]
    fn first_two_zeta_zeros() {
        let z = LFunctionDescriptor::zeta("zeta");
        let f = PolyExpression::builder().term(1.0, &[(&z, 0, 1)]).build().unwrap();
        let rect = Rectangle::new(-1.0, 2.0, 10.0, 30.0).unwrap();
        let zs = locate_zeros(&f, &rect, 1e-9).unwrap();
        let want = [14.134725141734693, 21.022039638771555, 25.010_857_580_145_69];
        assert_eq!(zs.len(), 3);
        for (z, t) in zs.iter().zip(want) {
            assert!((z.rho - Complex64::new(0.5, t)).norm() < 1e-9, "{z:?}");
        }
        assert!(zs.iter().all(|r| r.multiplicity == 1 && r.method == Method::Newton));

        let g = PolyExpression::builder().term(1.0, &[(&z, 0, 2)]).build().unwrap();
        let zs2 = locate_zeros(&g, &rect, 1e-9).unwrap();
        assert_eq!(zs2.iter().map(|r| r.multiplicity).collect::<Vec<_>>(), vec![2, 2, 2]);
        assert!((zs2[0].rho - zs[0].rho).norm() < 1e-7);
        assert_eq!(multiplicity(&g, zs2[1].rho, &[zs2[0].rho]).unwrap(), 2);
    }

    #[test]
    fn empty_region() {
        let z = LFunctionDescriptor::zeta("zeta");
        let f = PolyExpression::builder().term(1.0, &[(&z, 0, 1)]).build().unwrap();
        let rect = Rectangle::new(-1.0, 2.0, 1.0, 10.0).unwrap();
        assert!(locate_zeros(&f, &rect, 1e-9).unwrap().is_empty());
    }
}
