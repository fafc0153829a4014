//! Extended-range complex numbers with an attached absolute error bound.
//!
//! Values of L-functions far in the left half-plane exceed the binary64
//! range, so evaluators work with `m · 2^e` and carry the error in the same
//! binary scale.

use num_complex::Complex64;
use std::f64::consts::LN_2;

const EPS: f64 = f64::EPSILON;

/// `x · 2^k` without intermediate overflow for moderate `k`.
pub fn ldexp(x: f64, k: i64) -> f64 {
    if x == 0.0 || !x.is_finite() {
        return x;
    }
    let mut x = x;
    let mut k = k;
    while k > 1000 {
        x *= 2f64.powi(1000);
        k -= 1000;
        if x.is_infinite() {
            return x;
        }
    }
    while k < -1000 {
        x *= 2f64.powi(-1000);
        k += 1000;
        if x == 0.0 {
            return x;
        }
    }
    x * 2f64.powi(k as i32)
}

/// Binary exponent `e` with `x = f · 2^e`, `|f|` in `[0.5, 1)`; 0 for zero.
pub fn frexp_exp(x: f64) -> i64 {
    let x = x.abs();
    if x == 0.0 || !x.is_finite() {
        return 0;
    }
    let bits = x.to_bits();
    let raw = ((bits >> 52) & 0x7ff) as i64;
    if raw == 0 {
        return frexp_exp(x * 2f64.powi(54)) - 54;
    }
    raw - 1022
}

/// Complex value `m · 2^e` with absolute error at most `err · 2^e`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Scaled {
    pub m: Complex64,
    pub err: f64,
    pub e: i64,
}

impl Scaled {
    pub const ZERO: Scaled = Scaled { m: Complex64 { re: 0.0, im: 0.0 }, err: 0.0, e: 0 };

    pub fn new(m: Complex64, err: f64, e: i64) -> Self {
        let top = m.re.abs().max(m.im.abs()).max(err);
        if top == 0.0 {
            return Scaled::ZERO;
        }
        let k = frexp_exp(top);
        Scaled { m: Complex64::new(ldexp(m.re, -k), ldexp(m.im, -k)), err: ldexp(err, -k), e: e + k }
    }

    pub fn exact(z: Complex64) -> Self {
        Scaled::new(z, 0.0, 0)
    }

    pub fn with_err(z: Complex64, err: f64) -> Self {
        Scaled::new(z, err, 0)
    }

    pub fn one() -> Self {
        Scaled::exact(Complex64::new(1.0, 0.0))
    }

    /// `exp(w)` for arbitrary real part; relative error grows with `|w|`.
    pub fn from_exp(w: Complex64) -> Self {
        if w.re == f64::NEG_INFINITY {
            return Scaled::ZERO;
        }
        let k = (w.re / LN_2).floor();
        let r = w.re - k * LN_2;
        let m = Complex64::from_polar(r.exp(), w.im);
        let rel = (w.re.abs() + w.im.abs() + 1.0) * 4.0 * EPS;
        Scaled::new(m, m.norm() * rel, k as i64)
    }

    pub fn to_complex(&self) -> Complex64 {
        Complex64::new(ldexp(self.m.re, self.e), ldexp(self.m.im, self.e))
    }

    pub fn abs_err(&self) -> f64 {
        ldexp(self.err, self.e)
    }

    pub fn is_zero(&self) -> bool {
        self.m.re == 0.0 && self.m.im == 0.0
    }

    /// Natural log of the modulus; `-inf` for zero.
    pub fn ln_abs(&self) -> f64 {
        self.m.norm().ln() + self.e as f64 * LN_2
    }

    /// Natural log of the error bound; `-inf` when exact.
    pub fn ln_err(&self) -> f64 {
        self.err.ln() + self.e as f64 * LN_2
    }

    pub fn arg(&self) -> f64 {
        self.m.arg()
    }

    pub fn mul(&self, o: &Scaled) -> Scaled {
        let m = self.m * o.m;
        let a = self.m.norm();
        let b = o.m.norm();
        let err = a * o.err + b * self.err + self.err * o.err + m.norm() * 2.0 * EPS;
        Scaled::new(m, err, self.e + o.e)
    }

    pub fn scale(&self, c: Complex64) -> Scaled {
        let m = self.m * c;
        Scaled::new(m, self.err * c.norm() + m.norm() * 2.0 * EPS, self.e)
    }

    pub fn add(&self, o: &Scaled) -> Scaled {
        if self.is_zero() && self.err == 0.0 {
            return *o;
        }
        if o.is_zero() && o.err == 0.0 {
            return *self;
        }
        let e = self.e.max(o.e);
        let sa = ldexp(1.0, self.e - e);
        let sb = ldexp(1.0, o.e - e);
        let m = self.m * sa + o.m * sb;
        let err = self.err * sa + o.err * sb + m.norm() * EPS;
        Scaled::new(m, err, e)
    }

    /// `|value|` as a real `Scaled`, same error bound.
    pub fn abs(&self) -> Scaled {
        Scaled::new(Complex64::new(self.m.norm(), 0.0), self.err + self.m.norm() * EPS, self.e)
    }

    pub fn neg(&self) -> Scaled {
        Scaled { m: -self.m, ..*self }
    }

    pub fn sub(&self, o: &Scaled) -> Scaled {
        self.add(&o.neg())
    }

    pub fn powu(&self, d: u32) -> Scaled {
        let mut acc = Scaled::one();
        let mut base = *self;
        let mut d = d;
        while d > 0 {
            if d & 1 == 1 {
                acc = acc.mul(&base);
            }
            d >>= 1;
            if d > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Adds `extra` (in absolute units) to the error bound.
    pub fn widen(&self, extra: f64) -> Scaled {
        Scaled::new(self.m, self.err + ldexp(extra, -self.e), self.e)
    }

    /// Adds `rel * |value|` to the error bound.
    pub fn widen_rel(&self, rel: f64) -> Scaled {
        Scaled::new(self.m, self.err + self.m.norm() * rel, self.e)
    }

    /// Quotient; the error is propagated to first order.
    pub fn div(&self, o: &Scaled) -> Scaled {
        let q = self.m / o.m;
        let b = o.m.norm();
        let err = (self.err + q.norm() * o.err) / (b - o.err).max(b * 1e-3) + q.norm() * 2.0 * EPS;
        Scaled::new(q, err, self.e - o.e)
    }
}

impl From<Complex64> for Scaled {
    fn from(z: Complex64) -> Self {
        Scaled::exact(z)
    }
}
