//! Complex log-gamma: Lanczos below |z| = 10, Stirling above, reflection
//! for Re z < 1/2. Only `exp(ln_gamma)` is meaningful; the imaginary part is
//! not normalized to a particular branch.

use super::bernoulli;
use num_complex::Complex64;
use std::f64::consts::PI;

const LANCZOS_G: f64 = 7.0;
const LANCZOS: [f64; 9] = [
    0.999_999_999_999_809_9,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_1,
    -176.615_029_162_140_6,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_572e-6,
    1.505_632_735_149_311_6e-7,
];
const STIRLING_SWITCH: f64 = 10.0;
const STIRLING_TERMS: usize = 10;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

pub fn ln_gamma(z: Complex64) -> Complex64 {
    if z.re < 0.5 {
        return c(PI.ln(), 0.0) - ln_sin_pi(z) - ln_gamma(c(1.0, 0.0) - z);
    }
    if z.norm() >= STIRLING_SWITCH {
        stirling(z)
    } else {
        lanczos(z)
    }
}

fn lanczos(z: Complex64) -> Complex64 {
    let z = z - 1.0;
    let mut x = c(LANCZOS[0], 0.0);
    for (i, &a) in LANCZOS.iter().enumerate().skip(1) {
        x += a / (z + i as f64);
    }
    let t = z + LANCZOS_G + 0.5;
    c(0.5 * (2.0 * PI).ln(), 0.0) + (z + 0.5) * t.ln() - t + x.ln()
}

fn stirling(z: Complex64) -> Complex64 {
    let mut acc = (z - 0.5) * z.ln() - z + 0.5 * (2.0 * PI).ln();
    let inv = z.inv();
    let inv2 = inv * inv;
    let mut p = inv;
    for k in 1..=STIRLING_TERMS {
        // B_{2k} / (2k (2k-1)) = (2k-2)! * B_{2k}/(2k)!
        let b = bernoulli::bernoulli_f64(2 * k);
        acc += p * (b / ((2 * k) as f64 * (2 * k - 1) as f64));
        p *= inv2;
    }
    acc
}

/// `ln sin(pi z)`, stable for large |Im z|, with exact reduction of Re z.
pub fn ln_sin_pi(z: Complex64) -> Complex64 {
    let k = z.re.round();
    ln_sin_pi_reduced(c(z.re - k, z.im)) + c(0.0, PI * parity(k))
}

/// `ln cos(pi z)`; the real part is `-inf` at the zeros.
pub fn ln_cos_pi(z: Complex64) -> Complex64 {
    let k = z.re.round();
    ln_sin_pi_reduced(cos_shift(c(z.re - k, z.im))) + c(0.0, PI * parity(k))
}

/// `cos(pi z)` with the same reduction, for moderate |Im z|.
pub fn cos_pi(z: Complex64) -> Complex64 {
    let k = z.re.round();
    let v = (cos_shift(c(z.re - k, z.im)) * PI).sin();
    if parity(k) == 1.0 {
        -v
    } else {
        v
    }
}

fn parity(k: f64) -> f64 {
    if (k % 2.0).abs() == 1.0 {
        1.0
    } else {
        0.0
    }
}

// cos(pi w) = sin(pi v) with v chosen so that 1/2 - |r| is formed exactly.
fn cos_shift(w: Complex64) -> Complex64 {
    if w.re >= 0.0 {
        c(0.5 - w.re, -w.im)
    } else {
        c(0.5 + w.re, w.im)
    }
}

fn ln_sin_pi_reduced(v: Complex64) -> Complex64 {
    let x = v * PI;
    if x.im > 20.0 {
        // sin x = (i/2) e^{-ix} (1 - e^{2ix})
        c(0.5f64.ln(), PI / 2.0) - c(0.0, 1.0) * x + (c(1.0, 0.0) - (c(0.0, 2.0) * x).exp()).ln()
    } else if x.im < -20.0 {
        // sin x = (-i/2) e^{ix} (1 - e^{-2ix})
        c(0.5f64.ln(), -PI / 2.0) + c(0.0, 1.0) * x + (c(1.0, 0.0) - (c(0.0, -2.0) * x).exp()).ln()
    } else {
        x.sin().ln()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: Complex64, b: Complex64, tol: f64) -> bool {
        (a - b).norm() <= tol * b.norm().max(1.0)
    }

    #[test]
    fn real_values() {
        assert!(ln_gamma(c(1.0, 0.0)).norm() < 1e-14);
        assert!(ln_gamma(c(2.0, 0.0)).norm() < 1e-14);
        assert!(close(ln_gamma(c(5.0, 0.0)).exp(), c(24.0, 0.0), 1e-13));
        assert!(close(ln_gamma(c(0.5, 0.0)).exp(), c(PI.sqrt(), 0.0), 1e-14));
        assert!(close(ln_gamma(c(20.0, 0.0)).exp(), c(121_645_100_408_832_000.0, 0.0), 1e-13));
        assert!(close(ln_gamma(c(-0.5, 0.0)).exp(), c(-2.0 * PI.sqrt(), 0.0), 1e-13));
    }

    #[test]
    fn critical_line_modulus() {
        for &t in &[0.3, 2.0, 9.5, 10.5, 40.0, 150.0] {
            let lg = ln_gamma(c(0.5, t));
            let expect = 0.5 * (PI / (PI * t).cosh()).ln();
            assert!((lg.re - expect).abs() < 1e-12 * expect.abs().max(1.0), "t={t}");
        }
    }

    #[test]
    fn regimes_agree_across_switch() {
        for k in 0..16 {
            let th = k as f64 * 0.2 - 1.5;
            let z = Complex64::from_polar(10.0, th);
            let a = lanczos(z).exp();
            let b = stirling(z).exp();
            assert!(close(a, b, 1e-13), "z={z}");
        }
    }

    #[test]
    fn recurrence_and_reflection() {
        for &z in &[c(0.7, 3.0), c(3.3, -12.0), c(-4.2, 7.5), c(12.0, 80.0), c(-30.5, 2.0)] {
            let lhs = (ln_gamma(z + 1.0) - ln_gamma(z)).exp();
            assert!(close(lhs, z, 1e-12), "z={z}");
            let refl = (ln_gamma(z) + ln_gamma(c(1.0, 0.0) - z) + ln_sin_pi(z)).exp();
            assert!(close(refl, c(PI, 0.0), 1e-12), "z={z}");
        }
    }

    #[test]
    fn sine_forms_agree() {
        for &z in &[c(0.3, 6.0), c(-2.7, -6.5), c(101.25, 7.0)] {
            let direct = (z * PI).sin();
            assert!(close(ln_sin_pi(z).exp(), direct, 1e-12), "z={z}");
        }
        assert!(cos_pi(c(2000.5, 0.0)).norm() < 1e-15);
        let x = 0.5 + 1e-9;
        let near = cos_pi(c(x, 0.0));
        assert!((near.re + (PI * (x - 0.5)).sin()).abs() < 1e-24);
        for &z in &[c(0.3, 2.0), c(-7.9, -1.5), c(3.5, 30.0)] {
            assert!(close(ln_cos_pi(z).exp(), (z * PI).cos(), 1e-12), "z={z}");
        }
    }
}
