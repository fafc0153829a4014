//! Continuous argument tracking along paths and winding numbers.

use super::Rectangle;
use crate::error::{Error, Result};
use crate::expr::PolyExpression;
use crate::lfuncs::eval_expression;
use num_complex::Complex64;
use std::f64::consts::{FRAC_PI_4, PI, TAU};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WindingOptions {
    /// Initial distance between samples.
    pub spacing: f64,
    /// Sample budget of one winding computation.
    pub max_samples: usize,
    /// Largest distance of `total / 2 pi` from an integer that still snaps.
    pub snap: f64,
    /// `|F|` below `guard * scale` on the path counts as a boundary zero.
    pub guard: f64,
}

impl Default for WindingOptions {
    fn default() -> Self {
        WindingOptions { spacing: 0.25, max_samples: 1 << 18, snap: 0.1, guard: 1e-10 }
    }
}

/// Smallest parameter step before a phase jump is blamed on a zero.
const MIN_STEP: f64 = 1e-11;

/// Argument of `F(z)`, refusing points where `F` is negligible next to its
/// terms or where its error bound leaves the phase uncertain.
pub(crate) fn sample_arg(f: &PolyExpression, z: Complex64, guard: f64) -> Result<f64> {
    let v = match eval_expression(f, z, false) {
        Ok(v) => v,
        Err(Error::PoleAt1) => return Err(Error::BoundaryTooClose { s: z.into() }),
        Err(e) => return Err(e),
    };
    let small = v.f.is_zero() || v.f.ln_abs() <= guard.ln() + v.scale.ln_abs();
    let fuzzy = v.f.ln_err() >= v.f.ln_abs() + 0.1f64.ln();
    if small || fuzzy {
        return Err(Error::BoundaryTooClose { s: z.into() });
    }
    Ok(v.f.arg())
}

fn wrap(d: f64) -> f64 {
    let mut d = d % TAU;
    if d > PI {
        d -= TAU;
    } else if d <= -PI {
        d += TAU;
    }
    d
}

/// Sample counter shared by the pieces of one contour.
#[derive(Debug, Default)]
pub(crate) struct Budget {
    pub used: usize,
}

impl Budget {
    fn take(&mut self, limit: usize) -> Result<()> {
        self.used += 1;
        if self.used > limit {
            return Err(Error::PhaseUnresolved { samples: self.used });
        }
        Ok(())
    }
}

/// Change of `arg F(path(u))` for `u` from 0 to 1, starting from `n0`
/// equal steps and bisecting until both halves of every step turn by less
/// than `pi/4`.
pub(crate) fn path_phase<P>(
    f: &PolyExpression,
    path: P,
    n0: usize,
    opts: &WindingOptions,
    budget: &mut Budget,
) -> Result<f64>
where
    P: Fn(f64) -> Complex64,
{
    let n0 = n0.max(1);
    let mut total = 0.0;
    let mut u0 = 0.0;
    budget.take(opts.max_samples)?;
    let mut a0 = sample_arg(f, path(0.0), opts.guard)?;
    for k in 1..=n0 {
        let u1 = k as f64 / n0 as f64;
        budget.take(opts.max_samples)?;
        let a1 = sample_arg(f, path(u1), opts.guard)?;
        // explicit stack of pending subintervals, leftmost on top
        let mut stack = vec![(u0, a0, u1, a1)];
        while let Some((ua, aa, ub, ab)) = stack.pop() {
            // an increment is accepted only when its midpoint confirms it;
            // a single wrapped difference cannot see a full turn between samples
            let um = 0.5 * (ua + ub);
            budget.take(opts.max_samples)?;
            let am = sample_arg(f, path(um), opts.guard)?;
            let (d1, d2) = (wrap(am - aa), wrap(ab - am));
            if d1.abs() < FRAC_PI_4 && d2.abs() < FRAC_PI_4 {
                total += d1 + d2;
                continue;
            }
            if ub - ua < MIN_STEP {
                return Err(Error::BoundaryTooClose { s: path(um).into() });
            }
            stack.push((um, am, ub, ab));
            stack.push((ua, aa, um, am));
        }
        u0 = u1;
        a0 = a1;
    }
    Ok(total)
}

/// Phase change along the segment from `a` to `b`.
pub(crate) fn segment_phase(
    f: &PolyExpression,
    a: Complex64,
    b: Complex64,
    opts: &WindingOptions,
    budget: &mut Budget,
) -> Result<f64> {
    let n0 = ((b - a).norm() / opts.spacing).ceil() as usize;
    path_phase(f, |u| a + (b - a) * u, n0, opts, budget)
}

/// Integer nearest to `total / 2 pi`, if it is within the snap tolerance.
pub(crate) fn snap(total: f64, opts: &WindingOptions, samples: usize) -> Result<i64> {
    let w = total / TAU;
    let n = w.round();
    if (w - n).abs() > opts.snap {
        return Err(Error::PhaseUnresolved { samples });
    }
    Ok(n as i64)
}

/// Zeros minus poles of `F` inside `rect`, counted with multiplicity.
pub fn winding_count(f: &PolyExpression, rect: &Rectangle, opts: &WindingOptions) -> Result<i64> {
    rect.validate()?;
    let [a, b, c, d] = rect.corners();
    let mut budget = Budget::default();
    let mut total = 0.0;
    for (p, q) in [(a, b), (b, c), (c, d), (d, a)] {
        total += segment_phase(f, p, q, opts, &mut budget)?;
    }
    snap(total, opts, budget.used)
}

/// Zeros minus poles inside the circle `|z - center| = r`.
pub fn circle_winding(f: &PolyExpression, center: Complex64, r: f64, opts: &WindingOptions) -> Result<i64> {
    if !(r > 0.0) {
        return Err(Error::InvalidInput("circle radius must be positive".into()));
    }
    let n0 = ((TAU * r / opts.spacing).ceil() as usize).max(16);
    let mut budget = Budget::default();
    let total = path_phase(f, |u| center + Complex64::from_polar(r, TAU * u), n0, opts, &mut budget)?;
    snap(total, opts, budget.used)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::LFunctionDescriptor;

    fn zeta() -> PolyExpression {
        let z = LFunctionDescriptor::zeta("zeta");
        PolyExpression::builder().term(1.0, &[(&z, 0, 1)]).build().unwrap()
    }

    #[test]
    fn first_zero_and_pole() {
        let f = zeta();
        let o = WindingOptions::default();
        assert_eq!(winding_count(&f, &Rectangle::new(-1.0, 2.0, 1.0, 20.0).unwrap(), &o).unwrap(), 1);
        assert_eq!(winding_count(&f, &Rectangle::new(-1.0, 2.0, -1.0, 1.0).unwrap(), &o).unwrap(), -1);
        assert_eq!(circle_winding(&f, Complex64::new(1.0, 0.0), 1e-3, &o).unwrap(), -1);
    }

    #[test]
    fn boundary_through_zero() {
        let f = zeta();
        let o = WindingOptions::default();
        // the trivial zero -2 sits on the left edge
        let r = winding_count(&f, &Rectangle::new(-2.0, -1.0, -0.5, 0.5).unwrap(), &o);
        assert!(matches!(r, Err(Error::BoundaryTooClose { .. })), "{r:?}");
    }
}
