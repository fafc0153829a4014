//! Taylor coefficients from the trapezoidal rule on a circle.

use crate::error::{Error, Result};
use crate::scaled::{ldexp, Scaled};
use num_complex::Complex64;
use std::f64::consts::PI;

/// Taylor coefficients `a_k = f^{(k)}(s)/k!` sharing one binary exponent.
#[derive(Debug, Clone)]
pub struct Taylor {
    pub coeffs: Vec<Scaled>,
    /// Number of circle nodes used.
    pub nodes: usize,
}

impl Taylor {
    /// `f^{(l)}(s)`.
    pub fn derivative(&self, l: usize) -> Scaled {
        let fact: f64 = (1..=l).map(|k| k as f64).product();
        self.coeffs[l].scale(Complex64::new(fact, 0.0))
    }
}

/// How node counts are chosen.
#[derive(Debug, Clone, Copy)]
pub enum Refine {
    /// Start at `start` nodes and double until two successive results for
    /// every requested order agree within `tol` (absolute, per derivative).
    Agree { start: usize, tol: f64, max: usize },
    /// Start at `start` nodes; double while the top half of the discrete
    /// spectrum exceeds `rel` times the largest sample.
    Spectrum { start: usize, rel: f64, max: usize },
}

struct Samples {
    vals: Vec<Scaled>,
}

impl Samples {
    fn dft(&self, r: f64, kmax: usize) -> (Vec<Complex64>, Vec<f64>, i64, f64) {
        let n = self.vals.len();
        let e = self.vals.iter().filter(|v| !v.is_zero() || v.err > 0.0).map(|v| v.e).max().unwrap_or(0);
        let mut v = Vec::with_capacity(n);
        let mut base_err: f64 = 0.0;
        let mut top: f64 = 0.0;
        for s in &self.vals {
            let k = s.e - e;
            let z = Complex64::new(ldexp(s.m.re, k), ldexp(s.m.im, k));
            base_err = base_err.max(ldexp(s.err, k));
            top = top.max(z.norm());
            v.push(z);
        }
        let upto = kmax.max(n - 1);
        let mut coeffs = Vec::with_capacity(upto + 1);
        let mut mags = Vec::with_capacity(upto + 1);
        let tw: Vec<Complex64> = (0..n).map(|i| Complex64::from_polar(1.0, -2.0 * PI * i as f64 / n as f64)).collect();
        let mut rk = 1.0;
        for k in 0..=upto.min(n - 1) {
            let mut acc = Complex64::new(0.0, 0.0);
            for (j, z) in v.iter().enumerate() {
                let idx = (j * k) % n;
                acc += z * tw[idx];
            }
            acc /= n as f64;
            mags.push(acc.norm());
            coeffs.push(acc / rk);
            rk *= r;
        }
        (coeffs, mags, e, base_err.max(top * 4.0 * f64::EPSILON))
    }
}

/// Taylor coefficients of `f` at `s` up to order `kmax` on a circle of
/// radius `r`.
pub fn taylor<F>(f: F, s: Complex64, r: f64, kmax: usize, refine: Refine) -> Result<Taylor>
where
    F: Fn(Complex64) -> Result<Scaled>,
{
    let (start, max) = match refine {
        Refine::Agree { start, max, .. } | Refine::Spectrum { start, max, .. } => (start, max),
    };
    let mut n = start.max(2 * (kmax + 2)).next_power_of_two();
    let node = |j: usize, n: usize| s + Complex64::from_polar(r, 2.0 * PI * j as f64 / n as f64);
    let mut samples = Samples { vals: (0..n).map(|j| f(node(j, n))).collect::<Result<Vec<_>>>()? };
    let mut prev: Option<(Vec<Complex64>, i64)> = None;
    loop {
        let (coeffs, mags, e, base_err) = samples.dft(r, kmax);
        // per-coefficient truncation estimates, in units of 2^e
        let mut est = vec![f64::INFINITY; kmax + 1];
        let done = match refine {
            Refine::Agree { tol, .. } => match &prev {
                Some((pc, pe)) => {
                    let mut ok = true;
                    let mut fact = 1.0;
                    for k in 0..=kmax {
                        if k > 0 {
                            fact *= k as f64;
                        }
                        let b = pc[k] * ldexp(1.0, pe - e);
                        est[k] = (coeffs[k] - b).norm();
                        if ldexp(est[k] * fact, e) > tol / 2.0 {
                            ok = false;
                        }
                    }
                    ok
                }
                None => false,
            },
            Refine::Spectrum { rel, .. } => {
                let top = mags.iter().cloned().fold(0.0, f64::max);
                let tail = mags[n / 2..].iter().cloned().fold(0.0, f64::max);
                let mut rk = 1.0;
                for x in est.iter_mut() {
                    *x = tail / rk;
                    rk *= r;
                }
                // the samples' own error is a floor no node count can beat
                tail <= rel * top || tail <= 8.0 * base_err
            }
        };
        if done || 2 * n > max {
            if !done {
                let achieved = est.iter().map(|x| ldexp(*x, e)).fold(0.0, f64::max);
                let target = match refine {
                    Refine::Agree { tol, .. } => tol,
                    Refine::Spectrum { rel, .. } => rel,
                };
                return Err(Error::AccuracyUnreachable { s: s.into(), target, achieved });
            }
            let mut out = Vec::with_capacity(kmax + 1);
            let mut rk = 1.0;
            for k in 0..=kmax {
                out.push(Scaled::new(coeffs[k], est[k] + base_err / rk, e));
                rk *= r;
            }
            return Ok(Taylor { coeffs: out, nodes: n });
        }
        prev = Some((coeffs, e));
        // doubling: old nodes are the even ones
        let old = std::mem::take(&mut samples.vals);
        let mut vals = Vec::with_capacity(2 * n);
        for (j, v) in old.into_iter().enumerate() {
            vals.push(v);
            vals.push(f(node(2 * j + 1, 2 * n))?);
        }
        samples.vals = vals;
        n *= 2;
    }
}
