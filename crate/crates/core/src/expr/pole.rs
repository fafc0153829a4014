//! Order of the pole of `F` at `s = 1` from truncated Laurent expansions.

use super::descriptor::{LFunctionDescriptor, Source};
use super::poly::PolyExpression;
use crate::error::{Error, Result};
use crate::lfuncs::cauchy::{taylor, Refine};
use crate::lfuncs::eval::engine_taylor;
use crate::lfuncs::{LEval, Target};
use crate::zeros::winding::{circle_winding, WindingOptions};
use num_complex::Complex64;

/// Stieltjes constants `gamma_0..gamma_6`, with
/// `zeta(s) = 1/(s-1) + sum_n (-1)^n gamma_n (s-1)^n / n!`.
pub const STIELTJES: [f64; 7] = [
    0.577_215_664_901_532_9,
    -0.072_815_845_483_676_73,
    -0.009_690_363_192_872_32,
    0.002_053_834_420_303_346,
    0.002_325_370_065_467_3,
    0.000_793_323_817_301_062_7,
    -0.000_238_769_345_430_199_6,
];

/// Leading coefficients below this fraction of their term scale are zero.
const CANCELLED: f64 = 1e-13;
/// Leading coefficients above this fraction are trusted.
const DECISIVE: f64 = 1e-10;
const PROBE_RADII: [f64; 2] = [1e-2, 1e-3];

/// Coefficients of `eps^{low}, eps^{low+1}, ...` with `eps = s - 1`, along
/// with the absolute values of the terms that produced them.
#[derive(Debug, Clone)]
struct Laurent {
    low: i32,
    c: Vec<Complex64>,
    a: Vec<f64>,
}

impl Laurent {
    fn top(&self) -> i32 {
        self.low + self.c.len() as i32 - 1
    }

    fn mul(&self, o: &Laurent, top: i32) -> Laurent {
        let low = self.low + o.low;
        let len = (top - low + 1).max(0) as usize;
        let mut c = vec![Complex64::new(0.0, 0.0); len];
        let mut a = vec![0.0; len];
        for (i, (x, xa)) in self.c.iter().zip(&self.a).enumerate() {
            for (j, (y, ya)) in o.c.iter().zip(&o.a).enumerate() {
                if i + j < len {
                    c[i + j] += x * y;
                    a[i + j] += xa * ya;
                }
            }
        }
        Laurent { low, c, a }
    }
}

/// `gamma_n` for `n <= nmax`: stored constants, then Cauchy coefficients of
/// the entire function `(s-1) zeta(s)`.
fn stieltjes(nmax: usize) -> Result<Vec<f64>> {
    let mut out: Vec<f64> = STIELTJES.iter().copied().take(nmax + 1).collect();
    if nmax < STIELTJES.len() {
        return Ok(out);
    }
    let ev = LEval::zeta();
    let refine = Refine::Spectrum { start: 64, rel: 1e-15, max: 1024 };
    let g = taylor(|z| ev.eval(z, true, Target::Rel(1e-15)), Complex64::new(1.0, 0.0), 1.0, nmax + 1, refine)?;
    let mut fact = 1.0;
    for n in 1..=nmax {
        fact *= n as f64;
        if n >= STIELTJES.len() {
            // g_{n+1} = (-1)^n gamma_n / n!
            let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
            out.push(sign * fact * g.coeffs[n + 1].to_complex().re);
        }
    }
    Ok(out)
}

fn zeta_derivative_laurent(l: u32, top: i32, gamma: &[f64]) -> Laurent {
    let low = -(l as i32) - 1;
    let mut c = Vec::new();
    for k in low..=top {
        let v = if k == low {
            let fact: f64 = (1..=l).map(|x| x as f64).product();
            if l.is_multiple_of(2) {
                fact
            } else {
                -fact
            }
        } else if k < 0 {
            0.0
        } else {
            let n = (k + l as i32) as usize;
            let sign = if n.is_multiple_of(2) { 1.0 } else { -1.0 };
            let fact: f64 = (1..=k).map(|x| x as f64).product();
            sign * gamma[n] / fact
        };
        c.push(Complex64::new(v, 0.0));
    }
    let a = c.iter().map(|z| z.norm()).collect();
    Laurent { low, c, a }
}

fn entire_laurent(d: &LFunctionDescriptor, l: u32, top: i32) -> Result<Laurent> {
    let kmax = (l as i32 + top).max(0) as usize;
    let t = engine_taylor(d, Complex64::new(1.0, 0.0), kmax)?;
    let c: Vec<Complex64> = (0..=top.max(0) as usize)
        .map(|k| {
            // k-th Taylor coefficient of L^{(l)} is (k+l)!/k! a_{k+l}
            let ratio: f64 = ((k + 1)..=(k + l as usize)).map(|x| x as f64).product();
            t.coeffs[k + l as usize].to_complex() * ratio
        })
        .collect();
    let a = c.iter().map(|z| z.norm()).collect();
    Ok(Laurent { low: 0, c, a })
}

/// Result of the pole analysis at `s = 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct PoleInfo {
    pub order: u32,
    /// `max_j sum (l + 1) d` over zeta factors.
    pub upper_bound: u32,
    pub ambiguous: bool,
    /// `-winding` on circles of radius `1e-2` and `1e-3`, when evaluable.
    pub probe: Option<[i64; 2]>,
}

fn pole_weight(f: &PolyExpression, m: &super::Monomial) -> u32 {
    m.factors.iter().filter(|x| f.lfuncs()[x.lfunc].pole_order > 0).map(|x| (x.deriv + 1) * x.exp).sum()
}

/// Laurent analysis plus numeric probe.
pub fn pole_analysis(f: &PolyExpression) -> Result<PoleInfo> {
    let upper_bound = f.monomials().iter().map(|m| pole_weight(f, m)).max().unwrap_or(0);
    if upper_bound == 0 {
        return Ok(PoleInfo { order: 0, upper_bound, ambiguous: false, probe: None });
    }
    let p = upper_bound as i32;
    // every factor is needed up to order p - 1
    let gamma = stieltjes(
        (p as usize).saturating_sub(1) + f.max_derivs().iter().flatten().max().copied().unwrap_or(0) as usize,
    )?;
    let len = p as usize;
    let mut total = vec![Complex64::new(0.0, 0.0); len];
    let mut scale = vec![0.0; len];
    for m in f.monomials() {
        if pole_weight(f, m) == 0 {
            continue;
        }
        let mut acc = Laurent { low: 0, c: vec![m.coeff], a: vec![m.coeff.norm()] };
        for x in &m.factors {
            let d = &f.lfuncs()[x.lfunc];
            let series = match d.source {
                Source::Zeta => zeta_derivative_laurent(x.deriv, p - 1, &gamma),
                _ => entire_laurent(d, x.deriv, p - 1)?,
            };
            for _ in 0..x.exp {
                acc = acc.mul(&series, p - 1);
            }
        }
        for k in -p..0 {
            if k >= acc.low && k <= acc.top() {
                let i = (k - acc.low) as usize;
                total[(k + p) as usize] += acc.c[i];
                scale[(k + p) as usize] += acc.a[i];
            }
        }
    }
    let mut order = 0;
    let mut ambiguous = false;
    for k in -p..0 {
        let i = (k + p) as usize;
        let v = total[i].norm();
        if scale[i] == 0.0 || v <= CANCELLED * scale[i] {
            continue;
        }
        if v <= DECISIVE * scale[i] {
            ambiguous = true;
        }
        order = (-k) as u32;
        break;
    }
    let probe = probe(f);
    if let Some(w) = probe {
        if w.iter().any(|&x| x != order as i64) {
            log::warn!("pole probe {w:?} disagrees with Laurent order {order}");
            ambiguous = true;
        }
    }
    Ok(PoleInfo { order, upper_bound, ambiguous, probe })
}

fn probe(f: &PolyExpression) -> Option<[i64; 2]> {
    if f.lfuncs().iter().any(|d| d.is_series_only()) {
        return None;
    }
    let opts = WindingOptions::default();
    let mut out = [0; 2];
    for (slot, r) in out.iter_mut().zip(PROBE_RADII) {
        *slot = -circle_winding(f, Complex64::new(1.0, 0.0), r, &opts).ok()?;
    }
    Some(out)
}

/// Exact order of the pole of `F` at `s = 1`.
pub fn pole_order(f: &PolyExpression) -> Result<u32> {
    let info = pole_analysis(f)?;
    if info.ambiguous {
        return Err(Error::NumericallyAmbiguous { upper_bound: info.upper_bound });
    }
    Ok(info.order)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn zeta() -> LFunctionDescriptor {
        LFunctionDescriptor::zeta("zeta")
    }

    #[test]
    fn simple_orders() {
        let z = zeta();
        let f = PolyExpression::builder().term(1.0, &[(&z, 1, 1)]).build().unwrap();
        assert_eq!(pole_order(&f).unwrap(), 2);
        let l3 = LFunctionDescriptor::dirichlet("L3", 3, 2).unwrap();
        let g = PolyExpression::builder().term(1.0, &[(&l3, 0, 1)]).build().unwrap();
        assert_eq!(pole_order(&g).unwrap(), 0);
        let h = PolyExpression::builder().term(1.0, &[(&l3, 0, 1), (&z, 1, 1)]).build().unwrap();
        assert_eq!(pole_order(&h).unwrap(), 2);
    }

    #[test]
    fn leading_cancellation() {
        let z = zeta();
        // zeta^2 + zeta': the double poles cancel, 2 gamma_0 / (s-1) survives
        let f = PolyExpression::builder().term(1.0, &[(&z, 0, 2)]).term(1.0, &[(&z, 1, 1)]).build().unwrap();
        let info = pole_analysis(&f).unwrap();
        assert_eq!((info.order, info.upper_bound, info.probe), (1, 2, Some([1, 1])));
    }

    #[test]
    fn full_cancellation_needs_deep_constants() {
        let z = zeta();
        // zeta'' zeta - 2 zeta'^2 has (s-1)^{-4} coefficients 2 - 2 = 0
        let f =
            PolyExpression::builder().term(1.0, &[(&z, 2, 1), (&z, 0, 1)]).term(-2.0, &[(&z, 1, 2)]).build().unwrap();
        let info = pole_analysis(&f).unwrap();
        assert_eq!(info.upper_bound, 4);
        assert_eq!(Some([info.order as i64; 2]), info.probe);
    }

    #[test]
    fn numeric_stieltjes_continue_the_table() {
        let g = stieltjes(8).unwrap();
        for (a, b) in g.iter().zip(STIELTJES) {
            assert!((a - b).abs() < 1e-14);
        }
        // gamma_7, gamma_8 (independent high-precision values)
        assert!((g[7] + 0.000_527_289_567_057_751).abs() < 1e-10);
        assert!((g[8] + 0.000_352_123_353_803_039_5).abs() < 1e-10);
    }
}
