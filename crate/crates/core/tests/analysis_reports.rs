use lfd_core::analysis::*;
use lfd_core::expr::{LFunctionDescriptor, PolyExpression};
use lfd_core::zeros::{count_nontrivial, CountOptions, LocateOptions};
use lfd_core::Error;
use std::f64::consts::TAU;

fn zeta_f(l: u32) -> PolyExpression {
    let z = LFunctionDescriptor::zeta("zeta");
    PolyExpression::builder().term(1.0, &[(&z, l, 1)]).build().unwrap()
}

#[test]
fn zeta_zeros_cluster_on_the_line() {
    let (r, zs) =
        clustering_counts(&zeta_f(0), 1e-3, 50.0, 100.0, &CountOptions::default(), &LocateOptions::default()).unwrap();
    assert_eq!((r.n_plus, r.n_minus), (0, 0));
    assert_eq!(r.total, 19);
    assert!(zs.iter().all(|z| (z.beta() - 0.5).abs() < 1e-6));
    assert_eq!(cluster_report(&zs, 10.0, 50.0, 100.0).unwrap().total, 19);
}

#[test]
fn derivative_clustering_is_monotone() {
    let (_, zs) =
        clustering_counts(&zeta_f(1), 0.25, 14.0, 80.0, &CountOptions::default(), &LocateOptions::default()).unwrap();
    let ladder: Vec<ClusterReport> =
        [0.1, 0.25, 0.5].iter().map(|&d| cluster_report(&zs, d, 14.0, 80.0).unwrap()).collect();
    for w in ladder.windows(2) {
        assert!(w[1].n_plus <= w[0].n_plus && w[1].n_minus <= w[0].n_minus);
    }
    assert!(ladder.iter().all(|r| r.n_minus == 0));
}

#[test]
fn counts_are_additive_in_t() {
    let f = zeta_f(1);
    let a = verify_count(&f, 40.0, &CountOptions::default()).unwrap();
    let b = verify_count(&f, 70.0, &CountOptions::default()).unwrap();
    let mid = count_nontrivial(&f, 40.0, 70.0, &CountOptions::default()).unwrap();
    assert_eq!(b.empirical - a.empirical, mid.count);
    assert!(b.slack <= 5.0);
}

#[test]
fn littlewood_for_zeta() {
    let f = zeta_f(0);
    let (r, zs) = littlewood_sum(&f, -1.0, 100.0, &CountOptions::default(), &LocateOptions::default()).unwrap();
    assert!(r.deviation <= 5.0, "{r:?}");
    assert!((r.sum - TAU * 1.5 * r.zeros as f64).abs() < 1e-4);
    let half = littlewood_from_zeros(&zs, 0.5, 100.0, 1);
    assert!(half.sum.abs() < 1e-4);
    assert!(matches!(
        littlewood_sum(&f, 0.0, 100.0, &CountOptions::default(), &LocateOptions::default()),
        Err(Error::BOutOfRange { .. })
    ));
    let (empty, _) = littlewood_sum(&f, -1.0, 5.0, &CountOptions::default(), &LocateOptions::default()).unwrap();
    assert_eq!((empty.zeros, empty.sum), (0, 0.0));
}

#[test]
fn audit_is_stable_in_epsilon() {
    let z = LFunctionDescriptor::zeta("zeta");
    let f = PolyExpression::builder().term(1.0, &[(&z, 1, 1)]).term(1.0, &[(&z, 0, 1)]).build().unwrap();
    let auto = trivial_zero_audit(&f, 0.25, None).unwrap();
    assert!(auto.all_match, "{auto:?}");
    let n = auto.first_admissible.unwrap();
    let wide = trivial_zero_audit(&f, 0.35, Some((n, n + 4))).unwrap();
    assert!(wide.disks.iter().all(|d| d.count == 1 && d.admissible), "{wide:?}");
    // the zeros sit further than 0.15 from -2n this far left; smaller disks
    // only become admissible (and then hold the zero) deeper down
    let narrow = trivial_zero_audit(&f, 0.15, None).unwrap();
    assert!(narrow.all_match && narrow.first_admissible.unwrap() > n, "{narrow:?}");
    assert!(trivial_zero_audit(&f, 0.6, None).is_err());
}

#[test]
fn fe_check_sign_for_mixed_products() {
    let z = LFunctionDescriptor::zeta("zeta");
    let chi3 = LFunctionDescriptor::dirichlet("chi3", 3, 2).unwrap();
    for (f, sign) in [
        (PolyExpression::builder().term(1.0, &[(&z, 2, 1)]).build().unwrap(), 1),
        (PolyExpression::builder().term(1.0, &[(&z, 1, 1), (&chi3, 0, 1)]).build().unwrap(), -1),
    ] {
        let r = asymptotic_fe_check(&f, 3.0, &[40.0, 80.0, 160.0]).unwrap();
        assert_eq!(r.expected_sign, sign);
        assert!(r.sign_matches, "{r:?}");
    }
}
