//! Exact zero test for a single Dirichlet coefficient.
//!
//! `eta_n` is a polynomial in `log p` (`p | n`) whose coefficients are
//! products of the monomial coefficients and character values. When all of
//! those are Gaussian rationals (every finite `f64` is a dyadic rational;
//! characters of order dividing 4 take values in `{0, +-1, +-i}`), the
//! polynomial can be formed exactly. The logarithms of distinct primes are
//! treated as algebraically independent.

use super::descriptor::{LFunctionDescriptor, Source};
use super::poly::PolyExpression;
use crate::lfuncs::characters::factor;
use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::Zero;
use std::collections::{BTreeMap, HashMap};

#[derive(Debug, Clone, PartialEq)]
struct Gq {
    re: BigRational,
    im: BigRational,
}

impl Gq {
    fn zero() -> Self {
        Gq { re: BigRational::zero(), im: BigRational::zero() }
    }

    fn from_int(re: i64, im: i64) -> Self {
        Gq { re: BigRational::from_integer(BigInt::from(re)), im: BigRational::from_integer(BigInt::from(im)) }
    }

    fn from_complex(z: Complex64) -> Option<Self> {
        Some(Gq { re: BigRational::from_float(z.re)?, im: BigRational::from_float(z.im)? })
    }

    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    fn add_assign(&mut self, o: &Gq) {
        self.re += &o.re;
        self.im += &o.im;
    }

    fn mul(&self, o: &Gq) -> Gq {
        Gq { re: &self.re * &o.re - &self.im * &o.im, im: &self.re * &o.im + &self.im * &o.re }
    }
}

/// Polynomial in `x_i = log p_i`, keyed by exponent vectors.
type Poly = BTreeMap<Vec<u32>, Gq>;

fn poly_mul(a: &Poly, b: &Poly) -> Poly {
    let mut out = Poly::new();
    for (ea, ca) in a {
        for (eb, cb) in b {
            let e: Vec<u32> = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
            out.entry(e).or_insert_with(Gq::zero).add_assign(&ca.mul(cb));
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

fn constant(c: Gq, vars: usize) -> Poly {
    let mut p = Poly::new();
    if !c.is_zero() {
        p.insert(vec![0; vars], c);
    }
    p
}

/// Exact `lambda(d)`, if it is a Gaussian integer.
fn exact_lambda(desc: &LFunctionDescriptor, d: u64) -> Option<Gq> {
    match &desc.source {
        Source::Zeta => Some(Gq::from_int(1, 0)),
        Source::Dirichlet(chi) => match chi.root(d) {
            None => Some(Gq::zero()),
            Some(r) if 4 % r.den == 0 => {
                let quarter = r.num * (4 / r.den);
                Some(match quarter {
                    0 => Gq::from_int(1, 0),
                    1 => Gq::from_int(0, 1),
                    2 => Gq::from_int(-1, 0),
                    _ => Gq::from_int(0, -1),
                })
            }
            Some(_) => None,
        },
        Source::Series(_) => None,
    }
}

struct Ctx<'a> {
    primes: Vec<u64>,
    lfuncs: &'a [LFunctionDescriptor],
    memo: HashMap<(usize, u32, u64), Option<Poly>>,
}

impl Ctx<'_> {
    /// `lambda_u(d) (-log d)^l` as a polynomial.
    fn term(&mut self, u: usize, l: u32, d: u64) -> Option<Poly> {
        if let Some(p) = self.memo.get(&(u, l, d)) {
            return p.clone();
        }
        let vars = self.primes.len();
        let out = exact_lambda(&self.lfuncs[u], d).map(|lam| {
            // -log d = sum_i (-v_i) x_i
            let mut lin = Poly::new();
            let mut m = d;
            for (i, &p) in self.primes.iter().enumerate() {
                let mut v = 0i64;
                while m.is_multiple_of(p) {
                    m /= p;
                    v += 1;
                }
                if v > 0 {
                    let mut e = vec![0; vars];
                    e[i] = 1;
                    lin.insert(e, Gq::from_int(-v, 0));
                }
            }
            let mut acc = constant(lam, vars);
            for _ in 0..l {
                acc = poly_mul(&acc, &lin);
            }
            acc
        });
        self.memo.insert((u, l, d), out.clone());
        out
    }

    /// Sum over ordered factorizations of `m` across `copies[i..]`.
    fn expand(&mut self, copies: &[(usize, u32)], m: u64) -> Option<Poly> {
        let vars = self.primes.len();
        let Some((&(u, l), rest)) = copies.split_first() else {
            return Some(if m == 1 { constant(Gq::from_int(1, 0), vars) } else { Poly::new() });
        };
        if rest.is_empty() {
            return self.term(u, l, m);
        }
        let mut total = Poly::new();
        for d in divisors(m) {
            let head = self.term(u, l, d)?;
            if head.is_empty() {
                continue;
            }
            let tail = self.expand(rest, m / d)?;
            for (e, c) in poly_mul(&head, &tail) {
                total.entry(e).or_insert_with(Gq::zero).add_assign(&c);
            }
        }
        total.retain(|_, c| !c.is_zero());
        Some(total)
    }
}

fn divisors(n: u64) -> Vec<u64> {
    let mut out = vec![1u64];
    for (p, e) in factor(n) {
        let len = out.len();
        let mut pk = 1;
        for _ in 0..e {
            pk *= p;
            for i in 0..len {
                out.push(out[i] * pk);
            }
        }
    }
    out
}

/// `Some(true)` when `eta_n` is exactly zero, `Some(false)` when it is not,
/// `None` when the exact test does not apply.
pub fn exact_is_zero(f: &PolyExpression, n: u64) -> Option<bool> {
    let primes: Vec<u64> = factor(n).into_iter().map(|(p, _)| p).collect();
    let vars = primes.len();
    let mut ctx = Ctx { primes, lfuncs: f.lfuncs(), memo: HashMap::new() };
    let mut total = Poly::new();
    for m in f.monomials() {
        let c = Gq::from_complex(m.coeff)?;
        let copies: Vec<(usize, u32)> =
            m.factors.iter().flat_map(|x| std::iter::repeat_n((x.lfunc, x.deriv), x.exp as usize)).collect();
        let p = ctx.expand(&copies, n)?;
        for (e, v) in poly_mul(&constant(c, vars), &p) {
            total.entry(e).or_insert_with(Gq::zero).add_assign(&v);
        }
    }
    total.retain(|_, c| !c.is_zero());
    Some(total.is_empty())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cancellations_over_zeta() {
        let z = LFunctionDescriptor::zeta("z");
        let f = PolyExpression::builder()
            .term(1.0, &[(&z, 1, 1), (&z, 0, 2)])
            .term(-1.0, &[(&z, 1, 1), (&z, 0, 1)])
            .build()
            .unwrap();
        assert_eq!(exact_is_zero(&f, 1), Some(true));
        assert_eq!(exact_is_zero(&f, 6), Some(false));
        assert_eq!(exact_is_zero(&f, 7), Some(true));
        assert_eq!(exact_is_zero(&f, 9), Some(false));
    }

    #[test]
    fn applicability() {
        let l3 = LFunctionDescriptor::dirichlet("L3", 3, 2).unwrap();
        let f = PolyExpression::builder().term(1.0, &[(&l3, 1, 1)]).build().unwrap();
        assert_eq!(exact_is_zero(&f, 3), Some(true));
        assert_eq!(exact_is_zero(&f, 2), Some(false));
        // order-4 character mod 5 is still Gaussian
        let l5 = LFunctionDescriptor::dirichlet("L5", 5, 2).unwrap();
        let g = PolyExpression::builder().term(1.0, &[(&l5, 0, 1)]).build().unwrap();
        assert_eq!(exact_is_zero(&g, 2), Some(false));
        // order 6 is not
        let l7 = LFunctionDescriptor::dirichlet("L7", 7, 3).unwrap();
        let h = PolyExpression::builder().term(1.0, &[(&l7, 0, 1)]).build().unwrap();
        assert_eq!(exact_is_zero(&h, 2), None);
    }
}
