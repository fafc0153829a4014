//! Exact Bernoulli numbers B_0..B_60.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use std::sync::LazyLock;

pub const MAX_INDEX: usize = 60;

static TABLE: LazyLock<Vec<BigRational>> = LazyLock::new(|| {
    // sum_{k=0}^{n} C(n+1, k) B_k = 0
    let mut b: Vec<BigRational> = Vec::with_capacity(MAX_INDEX + 1);
    b.push(BigRational::one());
    for n in 1..=MAX_INDEX {
        let mut acc = BigRational::zero();
        let mut binom = BigInt::one();
        for (k, bk) in b.iter().enumerate() {
            acc += BigRational::from_integer(binom.clone()) * bk;
            binom = binom * BigInt::from(n + 1 - k) / BigInt::from(k + 1);
        }
        b.push(-acc / BigRational::from_integer(BigInt::from(n + 1)));
    }
    b
});

/// `B_{2k} / (2k)!` as binary64, for `k = 0..=30`.
static SCALED_EVEN: LazyLock<Vec<f64>> = LazyLock::new(|| {
    let mut fact = BigInt::one();
    let mut out = Vec::new();
    for n in 0..=MAX_INDEX {
        if n > 0 {
            fact *= BigInt::from(n);
        }
        if n % 2 == 0 {
            let v = &TABLE[n] / BigRational::from_integer(fact.clone());
            out.push(v.to_f64().unwrap_or(0.0));
        }
    }
    out
});

/// Exact `B_n` for `n <= 60` (convention `B_1 = -1/2`).
pub fn bernoulli(n: usize) -> Option<BigRational> {
    TABLE.get(n).cloned()
}

pub fn bernoulli_f64(n: usize) -> f64 {
    TABLE[n].to_f64().unwrap_or(f64::NAN)
}

/// `B_{2k} / (2k)!`.
pub fn even_over_factorial(k: usize) -> f64 {
    SCALED_EVEN[k]
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(a: i64, b: i64) -> BigRational {
        BigRational::new(BigInt::from(a), BigInt::from(b))
    }

    #[test]
    fn small_values() {
        assert_eq!(bernoulli(1).unwrap(), q(-1, 2));
        assert_eq!(bernoulli(2).unwrap(), q(1, 6));
        assert_eq!(bernoulli(4).unwrap(), q(-1, 30));
        assert_eq!(bernoulli(12).unwrap(), q(-691, 2730));
        assert!(bernoulli(31).unwrap().is_zero());
    }

    #[test]
    fn ratio_matches_zeta_even() {
        // B_{2k}/(2k)! = (-1)^{k+1} 2 zeta(2k) / (2 pi)^{2k}
        for k in 1..=30usize {
            let pi = std::f64::consts::PI;
            let z: f64 = match k {
                1 => pi.powi(2) / 6.0,
                2 => pi.powi(4) / 90.0,
                3 => pi.powi(6) / 945.0,
                _ => (1..200).map(|n| (n as f64).powi(-(2 * k as i32))).sum(),
            };
            let expect =
                2.0 * z / (2.0 * std::f64::consts::PI).powi(2 * k as i32) * if k % 2 == 1 { 1.0 } else { -1.0 };
            let got = even_over_factorial(k);
            assert!(((got - expect) / expect).abs() < 1e-13, "k={k}");
        }
    }
}
