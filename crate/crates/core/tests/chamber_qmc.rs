use hypstokes::quadrature::{i_plus, integrate_chamber};
use hypstokes::{AffineForm, Arrangement, Complex64, Geometry, QuadConfig, Rational};

#[test]
fn orthant_chamber_in_three_dimensions_matches_its_cone_integral() {
    let forms = vec![
        AffineForm::from_ints(&[1, 0, 0], 0),
        AffineForm::from_ints(&[0, 1, 0], 0),
        AffineForm::from_ints(&[0, 0, 1], 0),
        AffineForm::from_ints(&[1, 1, 1], 1),
    ];
    let f0 = [1, 2, 3].iter().map(|&v| Rational::from_integer(v.into())).collect();
    let g = Geometry::build(&Arrangement::generic(forms, vec![0.4, 0.6, 0.7, 0.5], f0).unwrap()).unwrap();
    let origin = g.vertex_index(&[0, 1, 2]).unwrap();
    let lambda = Complex64::new(1.0, 0.0);
    let cfg = QuadConfig { rel_tol: 1e-3, abs_tol: 0.0, max_nodes: 200_000 };
    let qmc = integrate_chamber(&g, g.delta(origin), origin, lambda, &cfg).unwrap();
    let cone = i_plus(&g, origin, origin, lambda, &QuadConfig { rel_tol: 1e-8, ..QuadConfig::default() }).unwrap();
    let diff = (qmc.value - cone.value).norm() / cone.value.norm();
    assert!(diff < 1e-2_f64.max(5.0 * qmc.error_estimate / cone.value.norm()), "{qmc:?} vs {cone:?}");
    assert!(qmc.error_estimate > 0.0);
}
