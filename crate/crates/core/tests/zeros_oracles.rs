//! Winding counts against independent oracles: sign changes of the Hardy
//! function on the critical line and of real-valued `F` on the real axis.

use lfd_core::expr::{degree_profile, LFunctionDescriptor, PolyExpression};
use lfd_core::lfuncs::{eval_expression, zeta};
use lfd_core::zeros::*;
use lfd_core::{Complex, Error};
use proptest::prelude::*;
use std::f64::consts::PI;

fn zeta_f(l: u32) -> PolyExpression {
    let z = LFunctionDescriptor::zeta("zeta");
    PolyExpression::builder().term(1.0, &[(&z, l, 1)]).build().unwrap()
}

/// Riemann-Siegel theta by its asymptotic series, fine for `t >= 10`.
fn theta(t: f64) -> f64 {
    t / 2.0 * (t / (2.0 * PI)).ln() - t / 2.0 - PI / 8.0 + 1.0 / (48.0 * t) + 7.0 / (5760.0 * t.powi(3))
}

fn hardy_z(t: f64) -> f64 {
    let v = zeta(Complex::new(0.5, t), 1e-10).unwrap().value;
    (Complex::from_polar(1.0, theta(t)) * v).re
}

fn sign_changes(t1: f64, t2: f64, step: f64) -> Vec<f64> {
    let n = ((t2 - t1) / step).ceil() as usize;
    let mut out = Vec::new();
    let mut prev = hardy_z(t1);
    for k in 1..=n {
        let t = t1 + k as f64 * step;
        let z = hardy_z(t);
        if z * prev < 0.0 {
            out.push(t - step / 2.0);
        }
        prev = z;
    }
    out
}

fn real_sign_changes(f: &PolyExpression, a: f64, b: f64) -> usize {
    let step = 1e-3;
    let value = |x: f64| eval_expression(f, Complex::new(x, 0.0), false).unwrap().f.to_complex().re;
    let n = ((b - a) / step) as usize;
    let mut prev = value(a);
    let mut changes = 0;
    for k in 1..=n {
        let x = a + k as f64 * step;
        if (x - 1.0).abs() < 2e-3 {
            continue;
        }
        let v = value(x);
        if v * prev < 0.0 && !(x > 1.0 && x - step < 1.0 + 2e-3) {
            changes += 1;
        }
        prev = v;
    }
    changes
}

#[test]
fn zeta_count_matches_hardy_oracle() {
    let oracle = sign_changes(10.0, 100.0, 0.01);
    assert_eq!(oracle.len(), 29);
    let c = count_nontrivial(&zeta_f(0), 0.0, 100.0, &CountOptions::default()).unwrap();
    assert_eq!(c.count, 29);
    assert_eq!(count_nontrivial(&zeta_f(0), 0.0, 14.0, &CountOptions::default()).unwrap().count, 0);

    let zs = locate_zeros(&zeta_f(0), &Rectangle::new(0.0, 1.0, 10.0, 100.0).unwrap(), 1e-9).unwrap();
    assert_eq!(zs.len(), 29);
    for (z, t) in zs.iter().zip(&oracle) {
        assert!((z.gamma() - t).abs() < 0.01);
        assert!((z.beta() - 0.5).abs() < 1e-6);
        assert_eq!(z.multiplicity, 1);
    }
}

#[test]
fn winding_examples() {
    let o = WindingOptions::default();
    assert_eq!(winding_count(&zeta_f(0), &Rectangle::new(-1.0, 2.0, 1.0, 20.0).unwrap(), &o).unwrap(), 1);
    assert_eq!(winding_count(&zeta_f(0), &Rectangle::new(-1.0, 2.0, -1.0, 1.0).unwrap(), &o).unwrap(), -1);
    assert_eq!(winding_count(&zeta_f(1), &Rectangle::new(10.0, 12.0, 0.0, 10.0).unwrap(), &o).unwrap(), 0);
}

#[test]
fn strip_sweeps() {
    let zeta0 = zeta_f(0);
    let b = zero_free_bounds(&zeta0).unwrap();
    assert!(b.e2 <= 4.0);
    let o = WindingOptions::default();
    assert_eq!(winding_count(&zeta0, &Rectangle::new(b.e2, 10.0, 0.5, 100.0).unwrap(), &o).unwrap(), 0);

    let d = zeta_f(1);
    let b = zero_free_bounds(&d).unwrap();
    assert!(b.e1 <= -1.0);
    let left = Rectangle::new(b.e1 - 2.0, 0.0, 0.5, 50.0).unwrap();
    assert!(locate_zeros(&d, &left, 1e-9).unwrap().is_empty());
}

#[test]
fn pole_correction() {
    for l in [0, 1] {
        let f = zeta_f(l);
        let strip = zero_free_bounds(&f).unwrap();
        let p_f = degree_profile(&f).unwrap().p_f as i64;
        let t = 30.0;
        let n = count_nontrivial(&f, 0.0, t, &CountOptions::default()).unwrap().count;
        let real = real_sign_changes(&f, strip.e1, strip.e2) as i64;
        let rect = Rectangle::new(strip.e1, strip.e2, -t, t).unwrap();
        let w = winding_count(&f, &rect, &WindingOptions::default()).unwrap();
        assert_eq!(w + p_f, 2 * n + real, "l = {l}");
    }
    let sq = PolyExpression::builder().term(1.0, &[(&LFunctionDescriptor::zeta("zeta"), 0, 2)]).build().unwrap();
    let n = count_nontrivial(&sq, 0.0, 30.0, &CountOptions::default()).unwrap().count;
    assert_eq!(n, 6);
}

#[test]
fn band_edges_do_not_change_totals() {
    let f = zeta_f(1);
    let strip = zero_free_bounds(&f).unwrap();
    let base = CountOptions { strip: Some(strip), ..CountOptions::default() };
    let a = count_nontrivial(&f, 0.0, 60.0, &base).unwrap().count;
    for (h, seed) in [(0.95, 1), (1.05, 2), (1.0, 7)] {
        let o = CountOptions { band_height: h, seed, ..base.clone() };
        assert_eq!(count_nontrivial(&f, 0.0, 60.0, &o).unwrap().count, a);
    }
    let parallel = CountOptions { jobs: 4, ..base.clone() };
    assert_eq!(count_nontrivial(&f, 0.0, 60.0, &parallel).unwrap(), count_nontrivial(&f, 0.0, 60.0, &base).unwrap());
}

#[test]
fn located_zeros_reverify() {
    let f = zeta_f(1);
    let zs = locate_window(&f, 20.0, 60.0, &CountOptions::default(), &LocateOptions::default()).unwrap();
    let n = count_nontrivial(&f, 20.0, 60.0, &CountOptions::default()).unwrap().count;
    assert_eq!(zs.iter().map(|z| z.multiplicity as i64).sum::<i64>(), n);
    let rhos: Vec<Complex> = zs.iter().map(|z| z.rho).collect();
    for z in &zs {
        let v = eval_expression(&f, z.rho, false).unwrap();
        assert!(v.f.to_complex().norm() <= 1e-8 * v.scale.to_complex().norm().max(1.0));
        assert_eq!(multiplicity(&f, z.rho, &rhos).unwrap(), z.multiplicity);
        assert_eq!(winding_count(&f, &z.bbox, &WindingOptions::default()).unwrap(), z.multiplicity as i64);
    }
    // the first zero of the derivative
    assert!((zs[0].rho - Complex::new(2.4631618694543, 23.2983204927628)).norm() < 1e-9, "{:?}", zs[0]);
}

#[test]
fn cube_multiplicity() {
    let z = LFunctionDescriptor::zeta("zeta");
    let f = PolyExpression::builder().term(1.0, &[(&z, 0, 3)]).build().unwrap();
    let rho = Complex::new(0.5, 14.134725141734693);
    assert_eq!(multiplicity(&f, rho, &[]).unwrap(), 3);
    assert!(matches!(multiplicity(&zeta_f(0), Complex::new(3.0, 3.0), &[]), Err(Error::BoundaryTooClose { .. })));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn winding_is_additive(sc in -0.9f64..1.9, tc in 6.0f64..39.0) {
        let f = zeta_f(0);
        let o = WindingOptions::default();
        let whole = winding_count(&f, &Rectangle::new(-1.0, 2.0, 5.0, 40.0).unwrap(), &o).unwrap();
        let parts = [
            Rectangle::new(-1.0, sc, 5.0, tc).unwrap(),
            Rectangle::new(sc, 2.0, 5.0, tc).unwrap(),
            Rectangle::new(-1.0, sc, tc, 40.0).unwrap(),
            Rectangle::new(sc, 2.0, tc, 40.0).unwrap(),
        ];
        let ws: Vec<_> = parts.iter().map(|r| winding_count(&f, r, &o)).collect();
        prop_assume!(ws.iter().all(|w| w.is_ok()));
        prop_assert_eq!(ws.into_iter().map(|w| w.unwrap()).sum::<i64>(), whole);
    }

    #[test]
    fn conjugate_pairs(t1 in 1.0f64..20.0, h in 1.0f64..15.0) {
        let z = LFunctionDescriptor::zeta("zeta");
        let chi4 = LFunctionDescriptor::dirichlet("chi4", 4, 3).unwrap();
        let f = PolyExpression::builder().term(1.0, &[(&z, 1, 1), (&chi4, 0, 1)]).term(2.0, &[(&z, 0, 1)]).build().unwrap();
        let o = WindingOptions::default();
        let up = winding_count(&f, &Rectangle::new(-3.0, 4.0, t1, t1 + h).unwrap(), &o);
        let down = winding_count(&f, &Rectangle::new(-3.0, 4.0, -t1 - h, -t1).unwrap(), &o);
        prop_assume!(up.is_ok() && down.is_ok());
        prop_assert_eq!(up.unwrap(), down.unwrap());
    }
}
