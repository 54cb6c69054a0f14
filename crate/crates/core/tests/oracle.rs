mod common;

use common::*;
use gkz_core::gkz::{default_kappa, deform, TieBreak};
use gkz_core::oracle::{block_betas, gamma_constant, numeric_constants, solve_constants};
use gkz_core::pipeline::solve_gkz;
use gkz_core::ParamLinear;
use libm::tgamma as gamma;
use gkz_core::oracle::{continued_quadrature, quadrature, QuadratureMethod, QuadratureSpec};
use gkz_core::Error;

fn simplex(n: usize, alpha: Vec<f64>, beta: f64) -> QuadratureSpec {
    let mut exps = vec![vec![0; n]];
    for i in 0..n {
        let mut e = vec![0; n];
        e[i] = 1;
        exps.push(e);
    }
    QuadratureSpec::new(exps, vec![1.0; n + 1], alpha, beta)
}

fn dirichlet(alpha: &[f64], beta: f64) -> f64 {
    let s: f64 = alpha.iter().sum();
    alpha.iter().map(|&a| gamma(a)).product::<f64>() * gamma(beta - s) / gamma(beta)
}

#[test]
fn beta_function_1d() {
    let r = quadrature(&simplex(1, vec![0.3], 1.0)).unwrap();
    let exact = dirichlet(&[0.3], 1.0);
    assert!((r.value - exact).abs() < 1e-10 * exact, "{} vs {exact}", r.value);
}

#[test]
fn dirichlet_2d_and_3d() {
    for (alpha, beta) in [(vec![0.4, 0.7], 1.6), (vec![0.5, 0.6, 0.7], 2.5)] {
        let r = quadrature(&simplex(alpha.len(), alpha.clone(), beta)).unwrap();
        let exact = dirichlet(&alpha, beta);
        assert!((r.value / exact - 1.0).abs() < 1e-9, "{alpha:?}: {} vs {exact}", r.value);
    }
}

#[test]
fn lattice_rule_4d() {
    let alpha = vec![0.6, 0.7, 0.8, 0.9];
    let mut spec = simplex(4, alpha.clone(), 4.0);
    spec.method = QuadratureMethod::QuasiMonteCarlo;
    let r = quadrature(&spec).unwrap();
    let exact = dirichlet(&alpha, 4.0);
    assert!((r.value / exact - 1.0).abs() < 1e-6, "{} vs {exact} (err {})", r.value, r.error);
}

#[test]
fn continuation_reaches_negative_exponents() {
    let spec = simplex(1, vec![-0.5], 1.0);
    assert!(matches!(quadrature(&spec), Err(Error::NonConvergent(_))));
    let r = continued_quadrature(&spec).unwrap();
    assert!((r.value + std::f64::consts::PI).abs() < 1e-9, "{}", r.value);
    let spec = simplex(2, vec![0.4, 0.5], 0.7);
    let r = continued_quadrature(&spec).unwrap();
    let exact = dirichlet(&[0.4, 0.5], 0.7);
    assert!((r.value / exact - 1.0).abs() < 1e-9, "{} vs {exact}", r.value);
}

#[test]
fn linear_polynomial() {
    let r = quadrature(&QuadratureSpec::new(vec![vec![0], vec![1]], vec![1.0, 1.0], vec![1.0], 2.0)).unwrap();
    assert!((r.value - 1.0).abs() < 1e-10, "{}", r.value);
}

#[test]
fn massless_bubble_closed_form() {
    let g = lp_polynomial("massless-bubble");
    let spec = QuadratureSpec::new(g.exponents(), vec![1.0; 3], vec![1.1, 1.1], 1.9);
    let r = quadrature(&spec).unwrap();
    let exact = gamma(0.8) * gamma(0.8) * gamma(0.3) / gamma(1.9);
    assert!(rel(r.value, exact) < 1e-9, "{} vs {exact}", r.value);
}

fn one_mass_closed_form(a1: f64, a2: f64, b: f64, s: f64, m2: f64) -> f64 {
    let k = gamma(a1) * gamma(b - a1) * gamma(2.0 * b - a1 - a2) * gamma(a1 + a2 - b) / (gamma(b) * gamma(b));
    m2.powf(b - a1 - a2) * k * pfq_partial(&[a1, a1 + a2 - b], &[b], -s / m2, 400)
}

#[test]
fn one_mass_bubble_closed_form() {
    let g = lp_polynomial("one-mass-bubble");
    let (s, m2) = (0.5, 1.0);
    let coeffs = vec![1.0, 1.0, s + m2, m2];
    let spec = QuadratureSpec::new(g.exponents(), coeffs, vec![0.3, 0.4], 1.9);
    let r = continued_quadrature(&spec).unwrap();
    let exact = one_mass_closed_form(0.3, 0.4, 1.9, s, m2);
    assert!(rel(r.value, exact) < 1e-6, "{} vs {exact}", r.value);
}

fn sorted_strings(v: &[ParamLinear]) -> Vec<String> {
    let mut s: Vec<String> = v.iter().map(|x| x.to_string()).collect();
    s.sort();
    s
}

fn strings(v: &[&str]) -> Vec<String> {
    sorted_strings(&v.iter().map(|x| x.parse().unwrap()).collect::<Vec<ParamLinear>>())
}

#[test]
fn triangle_gamma_constant() {
    let d = deform(&lp_polynomial("triangle-1scale")).unwrap();
    let a = d.matrix().unwrap();
    let kappa = default_kappa(a.nrows());
    let data = solve_gkz(&a, &kappa, &[1, 0, 0, 0, 0], TieBreak::Grevlex).unwrap();
    let target: Vec<ParamLinear> =
        ["a1 + a2 + a3 - beta", "-a1", "-a2", "-a3", "0"].iter().map(|x| x.parse().unwrap()).collect();
    let root = data.roots.iter().find(|r| r.gamma == target).expect("triangle root");
    let k = gamma_constant(&a, root, &block_betas(&a, &kappa)).unwrap();
    assert_eq!(sorted_strings(&k.num), strings(&["beta - a1 - a2 - a3", "a1", "a2", "a3"]));
    assert_eq!(sorted_strings(&k.den), strings(&["beta"]));
    let v = k.eval(&params(&[0.3, 0.4, 0.5], 1.9)).unwrap();
    let direct = gamma(0.7) * gamma(0.3) * gamma(0.4) * gamma(0.5) / gamma(1.9);
    assert!(rel(v, direct) < 1e-12);
}

#[test]
fn one_mass_and_party_hat_gamma_constants() {
    let (data, _) = fixture_gkz("one-mass-bubble");
    let kappa = default_kappa(data.amatrix.nrows());
    let betas = block_betas(&data.amatrix, &kappa);
    let target: Vec<ParamLinear> =
        ["-a1", "2*a1 + a2 - 2*beta", "0", "beta - a1 - a2"].iter().map(|x| x.parse().unwrap()).collect();
    let root = data.roots.iter().find(|r| r.gamma == target).unwrap();
    let k = gamma_constant(&data.amatrix, root, &betas).unwrap();
    assert_eq!(sorted_strings(&k.num), strings(&["a1", "a1 + a2 - beta", "2*beta - 2*a1 - a2"]));
    assert_eq!(sorted_strings(&k.den), strings(&["beta"]));

    let (data, _) = fixture_gkz("party-hat");
    let betas = block_betas(&data.amatrix, &default_kappa(data.amatrix.nrows()));
    for r in &data.roots {
        let k = gamma_constant(&data.amatrix, r, &betas).unwrap();
        let nonzero: Vec<ParamLinear> = r.gamma.iter().filter(|g| !g.is_zero()).map(|g| -g.clone()).collect();
        assert_eq!(sorted_strings(&k.num), sorted_strings(&nonzero));
        assert_eq!(sorted_strings(&k.den), strings(&["beta"]));
    }
}

#[test]
fn no_zero_component() {
    let (data, _) = fixture_gkz("one-mass-bubble");
    let mut root = data.roots[0].clone();
    root.gamma = root.gamma.iter().map(|g| g.add_constant(&gkz_core::algebra::rat(1, 3))).collect();
    let err = gamma_constant(&data.amatrix, &root, &[ParamLinear::beta()]).unwrap_err();
    assert!(matches!(err, Error::NoZeroComponent(_)));
}

#[test]
fn single_series_constant() {
    let k = solve_constants(&[vec![2.0]], &[3.0]).unwrap();
    assert!((k.constants[0] - 1.5).abs() < 1e-15);
    assert!(matches!(solve_constants(&[vec![1.0, 1.0], vec![1.0, 1.0]], &[1.0, 2.0]), Err(Error::IllConditioned(_))));
}

fn check_numeric_constants(name: &str, base: Option<Vec<f64>>, alpha: &[f64], beta: f64, samples: usize, tol: f64) {
    let (data, coeffs) = fixture_gkz(name);
    let coeffs = base.unwrap_or(coeffs);
    let p = params(alpha, beta);
    let betas = block_betas(&data.amatrix, &default_kappa(data.amatrix.nrows()));
    let scales: [f64; 8] = [1.0, 0.8, 1.2, 0.9, 1.1, 0.85, 1.15, 0.95];
    let points: Vec<Vec<f64>> = (0..samples)
        .map(|k| coeffs.iter().enumerate().map(|(j, c)| c * scales[(k + j) % scales.len()].powi((j % 3) as i32)).collect())
        .collect();
    let series = data.series();
    let solved = numeric_constants(&series, &p, alpha, beta, &points, 40, 1e-9).unwrap();
    for (s, k) in series.iter().zip(&solved.constants) {
        let exact = gamma_constant(&data.amatrix, &s.gamma, &betas).unwrap().eval(&p).unwrap();
        assert!(rel(*k, exact) < tol, "{name}: {k} vs {exact}");
    }
}

#[test]
fn one_mass_numeric_constants() {
    // physical point lies outside the (0,1,1,1) chamber
    check_numeric_constants("one-mass-bubble", Some(vec![1.0, 1.0, 0.5, 1.0]), &[0.3, 0.4], 1.9, 4, 1e-4);
}

#[test]
fn box_numeric_constants() {
    check_numeric_constants("box", None, &[0.31, 0.27, 0.29, 0.33], 1.9, 6, 1e-3);
}
