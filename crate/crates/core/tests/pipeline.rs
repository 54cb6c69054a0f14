use gkz_core::pipeline::exit_code_for;
use gkz_core::{fixture, fixtures, run, run_until, ProblemSpec, Stage, TieBreak};

#[test]
fn fixture_inventory_and_weights() {
    let names: Vec<String> = fixtures().into_iter().map(|(n, _)| n).collect();
    for n in [
        "2f1-double",
        "2f1-single",
        "massless-bubble",
        "triangle-1scale",
        "cantaloupe-2",
        "one-mass-bubble",
        "sunset-1mass",
        "party-hat",
        "box",
        "triangle-3scale",
    ] {
        assert!(names.iter().any(|x| x == n), "{n}");
    }
    let w = |n: &str| fixture(n).unwrap().weight.unwrap();
    assert_eq!(w("box"), vec![0, 1, 0, 0, 0, 0]);
    assert_eq!(w("2f1-double"), vec![0, 1, 1, 1]);
    assert_eq!(w("triangle-3scale"), vec![0, 0, 1, 0, 0, 0]);
    assert!(fixture("nope").is_none());
}

#[test]
fn box_report_lists_three_3f2_series() {
    let r = run_until(&fixture("box").unwrap(), Stage::Series);
    assert!(r.error.is_none(), "{:?}", r.error);
    assert_eq!(r.codim, 1);
    assert_eq!(r.toric_ideal, "<x2*x4*x5 - x1*x3*x6>");
    assert_eq!(r.series.len(), 3);
    assert!(r.series.iter().all(|s| s.form.kind.to_string() == "3F2"));
    assert!(r.series.iter().all(|s| s.display.contains("3F2(")));
}

#[test]
fn unit_polynomial_verifies_to_one() {
    let spec = ProblemSpec::from_json(
        r#"{"polynomial": [{"exponents": [0], "coeff": 1}, {"exponents": [1], "coeff": 1}],
            "alpha": [1], "beta": 2, "verify": true}"#,
    )
    .unwrap();
    let r = run(&spec);
    assert!(r.error.is_none(), "{:?}", r.error);
    let n = r.numeric.as_ref().unwrap();
    assert!((n.value - 1.0).abs() < 1e-8, "{}", n.value);
    assert!(n.relative_deviation.unwrap() < 1e-8);
    assert_eq!(r.exit_code(), 0);
}

#[test]
fn massless_bubble_is_deformed_and_probed() {
    let mut spec = fixture("massless-bubble").unwrap();
    spec.verify = true;
    let r = run(&spec);
    assert!(r.error.is_none(), "{:?}", r.error);
    assert_eq!(r.source_codim, Some(0));
    assert_eq!(r.deformation.as_deref(), Some("c1"));
    assert_eq!(r.codim, 1);
    let probe = r.numeric.unwrap().probe.expect("probe section");
    assert_eq!(probe.points.len(), 3);
}

#[test]
fn reports_are_deterministic() {
    for name in ["one-mass-bubble", "party-hat"] {
        let mut spec = fixture(name).unwrap();
        spec.verify = true;
        let a = serde_json::to_string(&run(&spec)).unwrap();
        let b = serde_json::to_string(&run(&spec)).unwrap();
        assert_eq!(a, b, "{name}");
    }
}

#[test]
fn root_counts_per_fixture() {
    for (name, count) in [
        ("2f1-double", 2),
        ("2f1-single", 2),
        ("one-mass-bubble", 2),
        ("sunset-1mass", 2),
        ("party-hat", 2),
        ("box", 3),
        ("triangle-3scale", 4),
    ] {
        let r = run_until(&fixture(name).unwrap(), Stage::Gkz);
        assert_eq!(r.fake_exponents.len(), count, "{name}");
    }
}

#[test]
fn error_kinds_map_to_exit_codes() {
    let mut spec = fixture("2f1-double").unwrap();
    spec.weight = Some(vec![1, 1, 1, 1]);
    spec.tie_break = TieBreak::Strict;
    let r = run_until(&spec, Stage::Gkz);
    let e = r.error.as_ref().unwrap();
    assert_eq!((e.stage.as_str(), e.kind.as_str()), ("gkz", "NonGenericWeight"));
    assert_eq!(r.exit_code(), 3);

    let mut spec = fixture("triangle-3scale").unwrap();
    spec.kinematics.insert("s1".into(), 1.0);
    spec.kinematics.insert("s3".into(), 1.0);
    let r = run(&spec);
    assert_eq!(r.error.as_ref().map(|e| e.kind.as_str()), Some("DivergentArgument"));
    assert_eq!(r.exit_code(), 6);

    assert!(ProblemSpec::from_json(r#"{"alpha": [1]}"#).is_err());
    assert_eq!(exit_code_for("InvalidSpec"), 2);
    assert_eq!(exit_code_for("UnderdeterminedPair"), 4);
    assert_eq!(exit_code_for("NonConvergent"), 5);
    assert_eq!(exit_code_for("SingularM"), 1);
}
