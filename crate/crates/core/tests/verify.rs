mod common;

use hypstokes::verify::{
    check_asymptotics, check_cohomological, check_ode, check_wronskian, run_check, SampleSet, VerifyConfig, CHECK_NAMES,
};
use hypstokes::{Analysis, QuadConfig};

#[test]
fn every_check_passes_on_the_verification_instances() {
    let cfg = VerifyConfig::default();
    let samples = SampleSet { identities: vec![1.0, 2.0], ..SampleSet::default() };
    for arr in common::verification_instances(5) {
        let an = Analysis::new(&arr).unwrap();
        for name in CHECK_NAMES {
            let r = run_check(&an, name, &samples, &cfg).unwrap();
            assert!(r.pass, "{name} on {}: {r:?}", r.instance);
            assert_eq!(r.pass, r.max_relative_residual <= r.tolerance);
        }
    }
}

#[test]
fn unknown_check_is_rejected() {
    let an = Analysis::new(&common::line(1, vec![0.5])).unwrap();
    assert!(run_check(&an, "nonsense", &SampleSet::default(), &VerifyConfig::default()).is_err());
}

#[test]
fn tolerance_below_quadrature_accuracy_fails() {
    let cfg = VerifyConfig { tol: 1e-15, quad: QuadConfig { rel_tol: 1e-8, ..QuadConfig::default() }, ..VerifyConfig::default() };
    let an = Analysis::new(&common::example2()).unwrap();
    let r = check_ode(&an, &[1.0], &cfg);
    assert!(!r.pass && r.max_relative_residual > 1e-15);
}

#[test]
fn ode_residual_scales_quadratically_in_the_step() {
    let an = Analysis::new(&common::line(2, vec![0.3, 0.6])).unwrap();
    let residual = |h: f64| {
        let cfg = VerifyConfig { fd_step: h, ..VerifyConfig::default() };
        check_ode(&an, &[1.0], &cfg).max_relative_residual
    };
    let (coarse, fine) = (residual(4e-2), residual(2e-2));
    let order = (coarse / fine).log2();
    assert!((order - 2.0).abs() < 0.2, "observed order {order}");
}

#[test]
fn single_point_identities_hold_exactly() {
    let an = Analysis::new(&common::line(1, vec![0.35])).unwrap();
    let cfg = VerifyConfig::default();
    let c = an.plus.delta(0);
    assert!(check_cohomological(&an, c, &[], &[1.0, 3.0], &cfg).max_relative_residual < 1e-13);
    let asym = check_asymptotics(&an, &[5.0, 50.0], &cfg);
    assert!(asym.details.iter().all(|d| d.residual < 1e-12));
    let w = check_wronskian(&an, 1.0, &cfg);
    assert!(w.pass && (w.max_relative_residual - 1.0).abs() < 1e-12);
}

#[test]
fn asymptotic_ratio_approaches_one() {
    let an = Analysis::new(&common::line(2, vec![0.3, 0.6])).unwrap();
    let r = check_asymptotics(&an, &[5.0, 10.0, 20.0, 50.0], &VerifyConfig::default());
    let res: Vec<f64> = r.details.iter().map(|d| d.residual).collect();
    assert!(res.windows(2).all(|w| w[1] < w[0]), "{res:?}");
    assert!(r.pass);
}
