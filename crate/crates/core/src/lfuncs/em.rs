//! Euler–Maclaurin summation of `sum_{n >= 1} c(n mod q) n^{-s}` and of
//! the Hurwitz series, with truncation and rounding bounds.

use super::bernoulli;
use crate::error::{Error, Result};
use num_complex::Complex64;
use std::sync::LazyLock;

const EPS: f64 = f64::EPSILON;
/// Number of Bernoulli correction terms.
pub const BERNOULLI_TERMS: usize = 10;
const MAX_TERMS: usize = 1 << 22;
const LN_TABLE: usize = 1 << 15;

static LN: LazyLock<Vec<f64>> =
    LazyLock::new(|| (0..LN_TABLE).map(|n| if n == 0 { f64::NEG_INFINITY } else { (n as f64).ln() }).collect());

#[inline]
pub fn ln_int(n: usize) -> f64 {
    if n < LN_TABLE {
        LN[n]
    } else {
        (n as f64).ln()
    }
}

/// Result of a summation: value plus separate truncation and rounding bounds.
#[derive(Debug, Clone, Copy)]
pub struct Summed {
    pub value: Complex64,
    pub truncation: f64,
    pub rounding: f64,
}

impl Summed {
    pub fn bound(&self) -> f64 {
        self.truncation + self.rounding
    }
}

/// Starting truncation: the index must outrun the oscillation `|Im s|`.
pub fn initial_terms(s: Complex64) -> usize {
    20usize.max((1.2 * s.im.abs()).ceil() as usize)
}

/// `(e^z - 1)/z`.
pub fn exprel(z: Complex64) -> Complex64 {
    if z.norm() < 0.5 {
        let mut term = Complex64::new(1.0, 0.0);
        let mut acc = term;
        for k in 2..=24 {
            term = term * z / k as f64;
            acc += term;
        }
        acc
    } else {
        (z.exp() - 1.0) / z
    }
}

/// Bernoulli corrections `1/2 x^{-s} + sum_j B_{2j}/(2j)! (s)_{2j-1} x^{-s-2j+1}`
/// and the bound on the first omitted term.
fn corrections(s: Complex64, x: f64, ln_x: f64) -> (Complex64, f64, f64) {
    let xs = (-s * ln_x).exp();
    let inv_x2 = 1.0 / (x * x);
    let mut acc = xs * 0.5;
    let mut mag = acc.norm();
    let mut poch = s;
    let mut pw = xs / x;
    for j in 1..=BERNOULLI_TERMS {
        let term = poch * pw * bernoulli::even_over_factorial(j);
        acc += term;
        mag += term.norm();
        let a = s + (2 * j - 1) as f64;
        let b = s + (2 * j) as f64;
        poch = poch * a * b;
        pw *= inv_x2;
    }
    // remainder ~ (s)_{2K+1} B_{2K+2}/(2K+2)! x^{-s-2K-1} |s+2K+1| / (sigma+2K+1)
    let k = BERNOULLI_TERMS;
    let next = (poch * pw).norm() * bernoulli::even_over_factorial(k + 1).abs();
    let denom = s.re + (2 * k + 1) as f64;
    let rem = if denom > 0.0 { next * (s + (2 * k + 1) as f64).norm() / denom } else { f64::INFINITY };
    (acc, rem, mag * 8.0 * EPS)
}

/// Sum of `c[(n-1) % q] n^{-s}` over `n >= 1` (entries of `c` indexed by
/// residue `1..=q`). With `regularize`, returns `(s-1)` times the sum so the
/// pole at `s = 1` (present when `sum c != 0`) is removed.
pub fn periodic_sum(s: Complex64, c: &[Complex64], regularize: bool, tol: f64) -> Result<Summed> {
    let q = c.len();
    let total: Complex64 = c.iter().sum();
    let has_pole = total.norm() > 1e-14 * c.iter().map(|z| z.norm()).sum::<f64>();
    let sm1 = s - 1.0;
    if has_pole && !regularize && sm1.norm() < 1e-8 {
        return Err(Error::PoleAt1);
    }
    if s.im.abs() > 1e4 {
        return Err(Error::AccuracyUnreachable { s: s.into(), target: tol, achieved: f64::INFINITY });
    }
    let mut n_k = initial_terms(s);
    loop {
        let r = periodic_sum_fixed(s, c, total, has_pole, regularize, n_k);
        // Past the rounding floor more terms cannot help.
        if r.truncation <= 0.5 * tol || r.truncation <= 0.01 * r.rounding {
            return Ok(r);
        }
        if n_k * q * 2 > MAX_TERMS {
            return Err(Error::AccuracyUnreachable { s: s.into(), target: tol, achieved: r.truncation });
        }
        n_k *= 2;
    }
}

fn periodic_sum_fixed(
    s: Complex64,
    c: &[Complex64],
    total: Complex64,
    has_pole: bool,
    regularize: bool,
    n_k: usize,
) -> Summed {
    let q = c.len();
    let sm1 = s - 1.0;
    let mut acc = Complex64::new(0.0, 0.0);
    let mut rounding = 0.0;
    let phase_err = (s.norm() + 4.0) * EPS;
    let upto = n_k * q;
    for n in 1..=upto {
        let cn = c[(n - 1) % q];
        if cn.re == 0.0 && cn.im == 0.0 {
            continue;
        }
        let l = ln_int(n);
        let term = cn * (-s * l).exp();
        acc += term;
        rounding += term.norm() * (phase_err * l + 2.0 * EPS);
    }
    // tails: sum_{k >= n_k} (kq + a)^{-s} = q^{-s} sum_{k>=0} (x_a + k)^{-s}, x_a = n_k + a/q
    let ln_q = (q as f64).ln();
    let q_s = (-s * ln_q).exp();
    let mut tail = Complex64::new(0.0, 0.0);
    let mut integral = Complex64::new(0.0, 0.0);
    let mut truncation = 0.0;
    for (i, &ca) in c.iter().enumerate() {
        if ca.re == 0.0 && ca.im == 0.0 {
            continue;
        }
        let a = (i + 1) as f64;
        let x = n_k as f64 + a / q as f64;
        let lx = if q == 1 { ln_int(n_k + 1) } else { x.ln() };
        let (corr, rem, rnd) = corrections(s, x, lx);
        tail += ca * corr;
        truncation += ca.norm() * rem;
        rounding += ca.norm() * rnd;
        // x^{1-s}/(s-1) = -ln x * exprel((1-s) ln x) + 1/(s-1)
        integral += ca * (-lx) * exprel(-sm1 * lx);
    }
    tail *= q_s;
    integral *= q_s;
    truncation *= q_s.norm();
    rounding += (tail.norm() + integral.norm()) * 4.0 * EPS;
    if regularize {
        let mut value = (acc + tail + integral) * sm1;
        if has_pole {
            value += q_s * total;
        }
        let scale = sm1.norm().max(1.0);
        Summed { value, truncation: truncation * scale, rounding: rounding * scale + value.norm() * 2.0 * EPS }
    } else {
        let mut value = acc + tail + integral;
        if has_pole {
            value += q_s * total / sm1;
            rounding += (q_s * total / sm1).norm() * 4.0 * EPS;
        }
        Summed { value, truncation, rounding }
    }
}

/// Hurwitz zeta `sum_{k >= 0} (k + a)^{-s}` for real `a > 0`.
pub fn hurwitz(s: Complex64, a: f64, regularize: bool, tol: f64) -> Result<Summed> {
    let sm1 = s - 1.0;
    if !regularize && sm1.norm() < 1e-8 {
        return Err(Error::PoleAt1);
    }
    if s.im.abs() > 1e4 {
        return Err(Error::AccuracyUnreachable { s: s.into(), target: tol, achieved: f64::INFINITY });
    }
    let mut n = initial_terms(s).max((-s.re).max(0.0).ceil() as usize + 20);
    loop {
        let mut acc = Complex64::new(0.0, 0.0);
        let mut rounding = 0.0;
        let phase_err = (s.norm() + 4.0) * EPS;
        for k in 0..n {
            let l = (k as f64 + a).ln();
            let term = (-s * l).exp();
            acc += term;
            rounding += term.norm() * (phase_err * l.abs() + 2.0 * EPS);
        }
        let x = n as f64 + a;
        let lx = x.ln();
        let (corr, rem, rnd) = corrections(s, x, lx);
        let xi = (-sm1 * lx).exp();
        rounding += rnd;
        if rem <= 0.5 * tol || rem <= 0.01 * rounding || n * 2 > MAX_TERMS {
            if rem > 0.5 * tol && rem > 0.01 * rounding {
                return Err(Error::AccuracyUnreachable { s: s.into(), target: tol, achieved: rem });
            }
            let r = if regularize {
                let scale = sm1.norm().max(1.0);
                Summed { value: (acc + corr) * sm1 + xi, truncation: rem * scale, rounding: rounding * scale }
            } else {
                Summed {
                    value: acc + corr + xi / sm1,
                    truncation: rem,
                    rounding: rounding + (xi / sm1).norm() * 4.0 * EPS,
                }
            };
            return Ok(r);
        }
        n *= 2;
    }
}
