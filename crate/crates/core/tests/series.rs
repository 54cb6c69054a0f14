mod common;

use common::*;
use gkz_core::series::{classify, enumerate_terms, evaluate, term_coefficient, CanonicalSeries, FormKind};
use gkz_core::{ParamAssignment, ParamLinear};

fn lin(s: &str) -> ParamLinear {
    s.parse().unwrap()
}

fn lins(v: &[&str]) -> Vec<ParamLinear> {
    v.iter().map(|s| lin(s)).collect()
}

fn sorted(mut v: Vec<ParamLinear>) -> Vec<ParamLinear> {
    v.sort();
    v
}

fn find_form(series: &[CanonicalSeries], upper: &[&str], lower: &[&str]) -> Option<usize> {
    series.iter().position(|s| {
        let f = classify(s);
        sorted(f.upper.clone()) == sorted(lins(upper)) && sorted(f.lower.clone()) == sorted(lins(lower))
    })
}

fn sample_point() -> ParamAssignment {
    params(&[0.31, 0.27, 0.29, 0.33], 1.9)
}

#[test]
fn coefficient_of_zero_shift_is_one() {
    let g = lins(&["a1 - beta", "a2 - a1", "0", "-a2"]);
    let c = term_coefficient(&g, &[0, 0, 0, 0], &[0, 1, 1, 1]);
    assert_eq!(c.eval_numeric(&sample_point()).unwrap(), 1.0);
}

#[test]
fn gauss_coefficient() {
    let g = lins(&["a1 - beta", "a2 - a1", "0", "-a2"]);
    let p = sample_point();
    let (a1, a2, b) = (0.31, 0.27, 1.9);
    let c = term_coefficient(&g, &[-1, 1, 1, -1], &[0, 1, 1, 1]).eval_numeric(&p).unwrap();
    let expected = (b - a1) * a2 / ((a2 - a1 + 1.0) * 1.0);
    assert!(rel(c, expected) < 1e-14, "{c} vs {expected}");
    // opposite direction is cut off by the weight
    assert!(term_coefficient(&g, &[1, -1, -1, 1], &[0, 1, 1, 1]).is_zero());
}

#[test]
fn box_coefficient() {
    let g = lins(&["-a1", "a1 + a3 + a4 - beta", "-a3", "a1 + a2 + a3 - beta", "0", "beta - a1 - a2 - a3 - a4"]);
    let p = sample_point();
    let (a1, a2, a3, a4, b) = (0.31, 0.27, 0.29, 0.33, 1.9);
    let big_a = a1 + a2 + a3 + a4;
    let c = term_coefficient(&g, &[-1, 1, -1, 1, 1, -1], &[0, 1, 0, 0, 0, 0]).eval_numeric(&p).unwrap();
    let hyper = a1 * a3 * (big_a - b) / ((big_a - b - a2 + 1.0) * (big_a - b - a4 + 1.0));
    // an odd number of falling factorials: the sign moves into the argument -x
    assert!(rel(c, -hyper) < 1e-14, "{c} vs {}", -hyper);
}

#[test]
fn enumerate_order_zero_and_three() {
    let (data, _) = fixture_gkz("2f1-double");
    for s in data.series() {
        let t = enumerate_terms(&s, 0);
        assert_eq!(t.len(), 1);
        assert!(t[0].u.iter().all(|&x| x == 0));
    }
    let p = params(&[0.3, 0.7], 1.9);
    let s = data.series().into_iter().find(|s| s.gamma()[2].is_zero()).unwrap();
    let terms = enumerate_terms(&s, 3);
    assert_eq!(terms.len(), 4);
    let (a1, a2, b) = (0.3, 0.7, 1.9);
    for (n, t) in terms.iter().enumerate() {
        let n = n as u32;
        let expected = rising(b - a1, n) * rising(a2, n) / (rising(a2 - a1 + 1.0, n) * rising(1.0, n));
        assert!(rel(t.coefficient.eval_numeric(&p).unwrap(), expected) < 1e-13);
        let exp: Vec<i64> = t.u.clone();
        assert_eq!(exp, vec![-(n as i64), n as i64, n as i64, -(n as i64)]);
    }
}

#[test]
fn triangle_sums_start_at_zero() {
    let (data, _) = fixture_gkz("triangle-3scale");
    for s in data.series() {
        let terms = enumerate_terms(&s, 2);
        assert_eq!(terms.len(), 9);
        assert!(terms.iter().all(|t| t.k.iter().all(|&k| k >= 0)));
    }
}

#[test]
fn monomials_satisfy_the_euler_equations() {
    let (data, _) = fixture_gkz("box");
    let kappa = gkz_core::gkz::default_kappa(data.amatrix.nrows());
    for s in data.series() {
        for t in enumerate_terms(&s, 3) {
            assert!(gkz_core::pipeline::check_root(&data.amatrix, &t.monomial, &kappa));
        }
    }
}

#[test]
fn one_mass_bubble_form() {
    let (data, _) = fixture_gkz("one-mass-bubble");
    let series = data.series();
    let i = find_form(&series, &["a1", "a1 + a2 - beta"], &["2*a1 + a2 - 2*beta + 1"]).expect("one-mass form");
    let f = classify(&series[i]);
    assert_eq!(f.kind, FormKind::PFQ { p: 2, q: 1 });
    assert_eq!(f.arguments[0].to_string(), "c2*c3/(c1*c4)");
}

#[test]
fn box_forms() {
    let (data, _) = fixture_gkz("box");
    let series = data.series();
    let a = "a1 + a2 + a3 + a4";
    let expected: [(Vec<String>, Vec<String>); 3] = [
        (
            vec!["beta - a1 - a2".into(), "beta - a2 - a3".into(), "a4".into()],
            vec![format!("beta - ({a}) + a4 + 1"), "a4 - a2 + 1".into()],
        ),
        (
            vec!["beta - a3 - a4".into(), "beta - a1 - a4".into(), "a2".into()],
            vec![format!("beta - ({a}) + a2 + 1"), "a2 - a4 + 1".into()],
        ),
        (
            vec!["a1".into(), "a3".into(), format!("{a} - beta")],
            vec![format!("{a} - beta - a2 + 1"), format!("{a} - beta - a4 + 1")],
        ),
    ];
    let mut hit = vec![false; 3];
    for (upper, lower) in &expected {
        let up: Vec<&str> = upper.iter().map(String::as_str).collect();
        let lo: Vec<&str> = lower.iter().map(String::as_str).collect();
        let i = find_form(&series, &up, &lo).unwrap_or_else(|| panic!("missing 3F2({upper:?}; {lower:?})"));
        hit[i] = true;
        let f = classify(&series[i]);
        assert_eq!(f.kind, FormKind::PFQ { p: 3, q: 2 });
        assert_eq!(f.arguments[0].to_string(), "-c2*c4*c5/(c1*c3*c6)");
    }
    assert!(hit.iter().all(|&h| h));
}

#[test]
fn triangle_forms() {
    let (data, _) = fixture_gkz("triangle-3scale");
    let series = data.series();
    // B = a1 + a2, C = a1 + a3 in the lower parameters of the symmetric root
    let i = find_form(&series, &["2*beta - a1 - a2 - a3", "beta - a1"], &["beta - a1 - a2 + 1", "beta - a1 - a3 + 1"])
        .expect("F4 with 2beta - A");
    assert_eq!(classify(&series[i]).kind, FormKind::AppellF4);
    for upper in [["beta - a3", "a2"], ["beta - a2", "a3"], ["a1", "a1 + a2 + a3 - beta"]] {
        let found = series.iter().any(|s| {
            let f = classify(s);
            f.kind == FormKind::AppellF4 && sorted(f.upper.clone()) == sorted(lins(&upper))
        });
        assert!(found, "{upper:?}");
    }
    for s in &series {
        let args: Vec<String> = classify(s).arguments.iter().map(|a| a.to_string()).collect();
        let mut args = args.clone();
        args.sort();
        assert_eq!(args, vec!["c2*c5/(c1*c6)", "c3*c4/(c1*c6)"]);
    }
}

#[test]
fn gauss_series_against_direct_summation() {
    let (data, coeffs) = fixture_gkz("2f1-double");
    assert_eq!(coeffs, vec![1.0, 1.0, 1.0, 2.0]);
    let (a1, a2, b) = (0.3, 0.7, 1.9);
    let p = params(&[a1, a2], b);
    let x = coeffs[1] * coeffs[2] / (coeffs[0] * coeffs[3]);
    let roots: [([f64; 4], [f64; 3]); 2] = [
        ([a1 - b, a2 - a1, 0.0, -a2], [b - a1, a2, a2 - a1 + 1.0]),
        ([a2 - b, 0.0, a1 - a2, -a1], [b - a2, a1, a1 - a2 + 1.0]),
    ];
    let series = data.series();
    for (g, [ua, ub, lc]) in roots {
        let s = series
            .iter()
            .find(|s| s.gamma().iter().zip(&g).all(|(x, y)| (x.eval(&p).unwrap() - y).abs() < 1e-14))
            .unwrap();
        let (value, _) = evaluate(s, &p, &coeffs, 40).unwrap();
        let direct = monomial(&coeffs, &g) * pfq_partial(&[ua, ub], &[lc], x, 40);
        assert!(rel(value, direct) < 1e-10, "{value} vs {direct}");
    }
}

#[test]
fn box_series_against_term_ratio_summation() {
    let (data, coeffs) = fixture_gkz("box");
    let p = sample_point();
    for s in data.series() {
        let f = classify(&s);
        let upper: Vec<f64> = f.upper.iter().map(|x| x.eval(&p).unwrap()).collect();
        let lower: Vec<f64> = f.lower.iter().map(|x| x.eval(&p).unwrap()).collect();
        let x = f.arguments[0].eval(&coeffs);
        assert!(x.abs() < 1.0);
        let g: Vec<f64> = s.gamma().iter().map(|x| x.eval(&p).unwrap()).collect();
        let direct = monomial(&coeffs, &g) * pfq_partial(&upper, &lower, x, 40);
        let (value, _) = evaluate(&s, &p, &coeffs, 40).unwrap();
        assert!(rel(value, direct) < 1e-10, "{value} vs {direct}");
    }
}

#[test]
fn zero_argument_leaves_the_leading_monomial() {
    let (data, _) = fixture_gkz("2f1-double");
    let p = params(&[0.3, 0.7], 1.9);
    // c2 = 0 kills every shift with positive second component
    let coeffs = [1.3, 0.0, 0.8, 2.0];
    for s in data.series().iter().filter(|s| s.gamma()[1].is_zero()) {
        let g: Vec<f64> = s.gamma().iter().map(|x| x.eval(&p).unwrap()).collect();
        let (value, _) = evaluate(s, &p, &coeffs, 10).unwrap();
        assert!(rel(value, monomial(&coeffs, &g)) < 1e-14);
    }
}
