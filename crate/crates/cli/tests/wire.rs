use hypstokes::arrangement::triangle_arrangement;
use hypstokes::verify::{check_asymptotics, VerifyConfig};
use hypstokes::{Analysis, Rational};
use hypstokes_cli::wire::{parse_rational, ArrangementSpec, CheckRecord, DetailRecord};
use hypstokes_cli::{CliError, ResultBundle};
use proptest::prelude::*;

fn q(p: i64, d: i64) -> Rational {
    Rational::new(p.into(), d.into())
}

#[test]
fn rational_literals() {
    assert_eq!(parse_rational("3/4").unwrap(), q(3, 4));
    assert_eq!(parse_rational(" -6/8 ").unwrap(), q(-3, 4));
    assert_eq!(parse_rational("12").unwrap(), q(12, 1));
    assert_eq!(parse_rational("0.1").unwrap(), q(1, 10));
    assert_eq!(parse_rational("-1.25e-3").unwrap(), q(-1, 800));
    assert_eq!(parse_rational("2.5E2").unwrap(), q(250, 1));
    assert_eq!(parse_rational(".5").unwrap(), q(1, 2));
    for bad in ["", "1/0", "x", "1.2.3", "e5", "1e", "--1"] {
        assert!(parse_rational(bad).is_err(), "{bad}");
    }
}

#[test]
fn json_numbers_are_exact_doubles() {
    let text = r#"{"k": 1, "forms": [{"linear": [0.1], "constant": "1/10"}], "weights": [0.5], "f0": [3]}"#;
    let spec = ArrangementSpec::from_json(text).unwrap();
    assert_eq!(spec.forms[0].linear[0], Rational::from_float(0.1).unwrap());
    assert_ne!(spec.forms[0].linear[0], q(1, 10));
    assert_eq!(spec.forms[0].constant, q(1, 10));
}

#[test]
fn shape_errors() {
    let cases = [
        r#"{"k": 2, "forms": [{"linear": [1], "constant": 0}, {"linear": [0, 1], "constant": 0}], "weights": [0.5, 0.5], "f0": [1, 2]}"#,
        r#"{"k": 1, "forms": [{"linear": [1], "constant": 0}], "weights": [0.5], "f0": [1, 2]}"#,
        r#"{"k": 1, "forms": [{"linear": [1], "constant": 0}], "weights": [0.5], "f0": [0]}"#,
        r#"{"k": 1, "forms": [{"linear": [0], "constant": 1}], "weights": [0.5], "f0": [1]}"#,
        r#"{"k": 1, "forms": [{"linear": [1], "constant": 0}], "weights": [0.5, 0.5], "f0": [1]}"#,
        r#"{"k": 0, "forms": [], "weights": [], "f0": []}"#,
    ];
    for text in cases {
        let err = ArrangementSpec::from_json(text).and_then(|s| s.to_arrangement()).unwrap_err();
        assert!(matches!(err, CliError::Schema(_)), "{text}: {err:?}");
        assert_eq!(err.exit_code(), 2);
    }
    assert!(ArrangementSpec::from_json(r#"{"k": 1, "forms": [], "weights": [], "f0": [1], "extra": 1}"#).is_err());
}

#[test]
fn infinite_residuals_serialize_as_null() {
    let record = CheckRecord {
        name: "ode".into(),
        instance: "test".into(),
        lambdas: vec![[1.0, 0.0]],
        max_relative_residual: f64::INFINITY,
        tolerance: 1e-6,
        pass: false,
        details: vec![DetailRecord { lambda: [1.0, 0.0], residual: f64::INFINITY, note: "did not converge".into() }],
    };
    let text = serde_json::to_string(&record).unwrap();
    assert!(text.contains(r#""max_relative_residual":null"#));
    assert_eq!(serde_json::from_str::<CheckRecord>(&text).unwrap(), record);
}

#[test]
fn bundle_with_checks_round_trips() {
    let arr = triangle_arrangement(q(2, 1), q(1, 1), vec![0.3, 0.4, 0.5]).unwrap();
    let an = Analysis::new(&arr).unwrap();
    let mut bundle = ResultBundle::combinatorics("verify", &an);
    let report = check_asymptotics(&an, &[5.0, 10.0], &VerifyConfig::default());
    bundle.checks.push(CheckRecord::from(&report));
    let text = serde_json::to_string(&bundle).unwrap();
    assert_eq!(ResultBundle::from_json(&text).unwrap(), bundle);
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 200, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn fraction_strings_round_trip(p in -10_000i64..10_000, d in 1i64..10_000) {
        let r = q(p, d);
        prop_assert_eq!(parse_rational(&r.to_string()).unwrap(), r);
    }

    #[test]
    fn decimal_strings_are_exact(m in -1_000_000i64..1_000_000, e in 0u32..8) {
        let text = format!("{}e-{e}", m);
        let expected = Rational::new(m.into(), num_traits::pow(num_bigint::BigInt::from(10), e as usize));
        prop_assert_eq!(parse_rational(&text).unwrap(), expected);
    }

    #[test]
    fn float_inputs_round_trip(x in -1e6f64..1e6, w in 0.01f64..5.0) {
        let text = format!(r#"{{"k": 1, "forms": [{{"linear": [1], "constant": {x:?}}}], "weights": [{w:?}], "f0": [1]}}"#);
        let spec = ArrangementSpec::from_json(&text).unwrap();
        prop_assert_eq!(&spec.forms[0].constant, &Rational::from_float(x).unwrap());
        prop_assert_eq!(spec.weights[0], w);
        let again = ArrangementSpec::from_json(&serde_json::to_string(&spec).unwrap()).unwrap();
        prop_assert_eq!(again, spec);
    }
}
