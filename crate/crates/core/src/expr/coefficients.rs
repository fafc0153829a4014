use super::poly::PolyExpression;
use super::symbolic;
use crate::error::{Error, Result};
use crate::lfuncs::characters::factor;
use crate::lfuncs::em::ln_int;
use num_complex::Complex64;

/// Relative threshold under which `eta_n` counts as zero.
pub const ZERO_THRESHOLD: f64 = 1e-12;
const MAX_LEADING_SEARCH: usize = 4096;

/// Growth fit `|eta_n| <= constant * n^exponent * tau_k(n) * (log n)^d`
/// over `2 <= n <= N`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GrowthFit {
    pub constant: f64,
    pub exponent: f64,
    pub k: u32,
    pub d: u32,
}

/// `eta_1..eta_N` of `F(s) = sum_n eta_n n^{-s}`.
#[derive(Debug, Clone)]
pub struct CoefficientSeries {
    pub n: usize,
    /// `eta[i]` is `eta_{i+1}`.
    pub eta: Vec<Complex64>,
    /// Sum of the absolute values of the convolution summands of each entry.
    pub abs_sum: Vec<f64>,
    /// Per-entry rounding bound.
    pub error_bound: Vec<f64>,
    pub growth: GrowthFit,
}

impl CoefficientSeries {
    pub fn get(&self, n: usize) -> Complex64 {
        self.eta[n - 1]
    }

    /// Whether `eta_n` is numerically indistinguishable from zero.
    pub fn is_negligible(&self, n: usize) -> bool {
        self.eta[n - 1].norm() <= ZERO_THRESHOLD * self.abs_sum[n - 1]
    }

    /// Refits the growth bound for other `(k, d)`.
    pub fn growth_fit(&self, k: u32, d: u32) -> GrowthFit {
        fit(&self.eta, &self.error_bound, k, d)
    }
}

fn convolve(a: &[Complex64], b: &[Complex64]) -> Vec<Complex64> {
    let n = a.len();
    let mut out = vec![Complex64::new(0.0, 0.0); n];
    for i in 1..=n {
        let x = a[i - 1];
        if x == Complex64::new(0.0, 0.0) {
            continue;
        }
        for j in 1..=n / i {
            out[i * j - 1] += x * b[j - 1];
        }
    }
    out
}

fn convolve_abs(a: &[f64], b: &[f64]) -> Vec<f64> {
    let n = a.len();
    let mut out = vec![0.0; n];
    for i in 1..=n {
        if a[i - 1] == 0.0 {
            continue;
        }
        for j in 1..=n / i {
            out[i * j - 1] += a[i - 1] * b[j - 1];
        }
    }
    out
}

/// Divisor function `tau_k(n)`.
pub fn tau(k: u32, n: u64) -> f64 {
    factor(n)
        .into_iter()
        .map(|(_, e)| {
            // C(e + k - 1, k - 1)
            (1..=e).map(|i| (i + k - 1) as f64 / i as f64).product::<f64>()
        })
        .product()
}

fn fit(eta: &[Complex64], err: &[f64], k: u32, d: u32) -> GrowthFit {
    let mut pts = Vec::new();
    for (i, z) in eta.iter().enumerate().skip(1) {
        let n = (i + 1) as f64;
        if z.norm() <= err[i].max(f64::MIN_POSITIVE) {
            continue;
        }
        let y = z.norm().ln() - tau(k.max(1), (i + 1) as u64).ln() - d as f64 * n.ln().ln();
        pts.push((n.ln(), y));
    }
    if pts.len() < 2 {
        let constant = pts.first().map_or(0.0, |p| p.1.exp());
        return GrowthFit { constant, exponent: 0.0, k, d };
    }
    let m = pts.len() as f64;
    let (sx, sy) = pts.iter().fold((0.0, 0.0), |a, p| (a.0 + p.0, a.1 + p.1));
    let (mx, my) = (sx / m, sy / m);
    let (sxy, sxx) = pts.iter().fold((0.0, 0.0), |a, p| (a.0 + (p.0 - mx) * (p.1 - my), a.1 + (p.0 - mx).powi(2)));
    let exponent = if sxx > 0.0 { sxy / sxx } else { 0.0 };
    let constant = pts.iter().map(|p| (p.1 - exponent * p.0).exp()).fold(0.0, f64::max);
    GrowthFit { constant, exponent, k, d }
}

/// Largest total exponent `K = sum d` and total derivative weight
/// `D = sum l d` over the monomials.
pub fn growth_shape(f: &PolyExpression) -> (u32, u32) {
    f.monomials().iter().fold((0, 0), |(k, d), m| {
        let kk: u32 = m.factors.iter().map(|x| x.exp).sum();
        let dd: u32 = m.factors.iter().map(|x| x.exp * x.deriv).sum();
        (k.max(kk), d.max(dd))
    })
}

/// Dirichlet coefficients of `F` up to `n` by repeated convolution of the
/// factor series `lambda(n) (-log n)^l`.
pub fn dirichlet_coefficients(f: &PolyExpression, n: usize) -> Result<CoefficientSeries> {
    if n == 0 {
        return Err(Error::InvalidInput("N must be positive".into()));
    }
    let lambdas: Vec<Vec<Complex64>> = f.lfuncs().iter().map(|d| d.coefficients(n)).collect::<Result<_>>()?;
    let logs: Vec<f64> = (1..=n).map(ln_int).collect();
    let mut eta = vec![Complex64::new(0.0, 0.0); n];
    let mut abs_sum = vec![0.0; n];
    let mut error_bound = vec![0.0; n];
    for m in f.monomials() {
        let mut acc: Option<(Vec<Complex64>, Vec<f64>)> = None;
        let mut ops = 4.0;
        for x in &m.factors {
            let series: Vec<Complex64> =
                (0..n).map(|i| lambdas[x.lfunc][i] * (-logs[i]).powi(x.deriv as i32)).collect();
            let abs: Vec<f64> = series.iter().map(|z| z.norm()).collect();
            for _ in 0..x.exp {
                ops += 2.0 + x.deriv as f64;
                acc = Some(match acc {
                    None => (series.clone(), abs.clone()),
                    Some((a, b)) => (convolve(&a, &series), convolve_abs(&b, &abs)),
                });
            }
        }
        let (series, abs) = acc.unwrap_or_else(|| {
            let mut unit = vec![Complex64::new(0.0, 0.0); n];
            unit[0] = Complex64::new(1.0, 0.0);
            let mut ua = vec![0.0; n];
            ua[0] = 1.0;
            (unit, ua)
        });
        let c = m.coeff;
        for i in 0..n {
            eta[i] += c * series[i];
            let a = c.norm() * abs[i];
            abs_sum[i] += a;
            error_bound[i] += ops * f64::EPSILON * a;
        }
    }
    for (e, a) in error_bound.iter_mut().zip(&abs_sum) {
        *e += 2.0 * f64::EPSILON * a;
    }
    let (k, d) = growth_shape(f);
    let growth = fit(&eta, &error_bound, k, d);
    Ok(CoefficientSeries { n, eta, abs_sum, error_bound, growth })
}

/// `(n_F, eta_{n_F})`: the first coefficient that is not zero. Numerically
/// vanishing entries are confirmed by the exact test where it applies.
pub fn leading_index(f: &PolyExpression) -> Result<(usize, Complex64)> {
    let mut n = 64;
    loop {
        let series = dirichlet_coefficients(f, n)?;
        for i in 1..=n {
            if series.abs_sum[i - 1] == 0.0 {
                continue;
            }
            if !series.is_negligible(i) {
                return Ok((i, series.get(i)));
            }
            if symbolic::exact_is_zero(f, i as u64) == Some(false) {
                return Ok((i, series.get(i)));
            }
        }
        if n >= MAX_LEADING_SEARCH {
            return Err(Error::InvalidInput(format!("no nonzero Dirichlet coefficient up to {n}")));
        }
        n *= 4;
    }
}
