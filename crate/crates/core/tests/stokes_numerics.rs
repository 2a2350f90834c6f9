//! The closed-form Stokes matrices against cone integrals on arrangements
//! beyond the two worked examples.

mod common;

use hypstokes::random::random_generic_arrangement;
use hypstokes::verify::{check_stokes_c0, check_stokes_c1, VerifyConfig};
use hypstokes::{Analysis, QuadConfig};

#[test]
fn random_plane_arrangements_satisfy_both_stokes_relations() {
    let cfg = VerifyConfig::default();
    for seed in 0..4u64 {
        let arr = random_generic_arrangement(&mut common::rng(seed), 2, 3 + (seed as usize % 2));
        let an = Analysis::new(&arr).unwrap();
        let c0 = check_stokes_c0(&an, &[1.0], &cfg);
        let c1 = check_stokes_c1(&an, &[-1.0], &cfg);
        assert!(c0.pass, "{c0:?}");
        assert!(c1.pass, "{c1:?}");
    }
}

#[test]
fn stokes_relation_degrades_gracefully_near_integer_weights() {
    let cfg = VerifyConfig::default();
    let an = Analysis::new(&common::line(3, vec![0.97, 0.5, 0.99])).unwrap();
    let r = check_stokes_c0(&an, &[1.0, 2.0], &cfg);
    assert!(r.max_relative_residual <= 10.0 * cfg.tol, "{r:?}");
}

#[test]
#[ignore = "triple nested cone quadrature takes about a minute"]
fn random_space_arrangement_satisfies_the_c0_relation() {
    let cfg = VerifyConfig { quad: QuadConfig { rel_tol: 1e-9, abs_tol: 0.0, max_nodes: 20_000 }, ..VerifyConfig::default() };
    let an = Analysis::new(&random_generic_arrangement(&mut common::rng(1), 3, 4)).unwrap();
    let r = check_stokes_c0(&an, &[1.0], &cfg);
    assert!(r.pass, "{r:?}");
}
