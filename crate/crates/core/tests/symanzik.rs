mod common;

use std::collections::BTreeMap;

use common::*;
use gkz_core::graph::{assemble_mqj, prefactor, symanzik};
use gkz_core::{fixture, GraphSpec, ParamLinear};

fn graph(name: &str) -> GraphSpec {
    fixture(name).unwrap().graph.unwrap()
}

#[test]
fn bubble_matrices() {
    let m = assemble_mqj(&graph("massless-bubble")).unwrap();
    assert_eq!(m.m.len(), 1);
    assert_eq!(m.m[0][0].to_string(), "z1 + z2");
    assert_eq!(m.j.to_string(), "s*z2");
    assert_eq!(m.q[0][0].to_string(), "-z2");
}

#[test]
fn vacuum_data_vanishes() {
    let mut g = graph("massless-bubble");
    for p in &mut g.propagators {
        p.j = gkz_core::Kin::zero();
        for row in &mut p.q {
            row.iter_mut().for_each(|x| *x = gkz_core::algebra::rat_int(0));
        }
    }
    let m = assemble_mqj(&g).unwrap();
    assert!(m.j.terms.is_empty());
    assert!(m.q.iter().flatten().all(|p| p.terms.is_empty()));
    assert!(symanzik(&g).unwrap().f.terms.is_empty());
}

#[test]
fn sunset_loop_matrix() {
    let m = assemble_mqj(&graph("sunset-1mass")).unwrap();
    assert_eq!(m.m[0][0].to_string(), "z1 + z2");
    assert_eq!(m.m[0][1].to_string(), "-z2");
    assert_eq!(m.m[1][0].to_string(), "-z2");
    assert_eq!(m.m[1][1].to_string(), "z2 + z3");
}

#[test]
fn lee_pomeransky_polynomials() {
    let g = |name: &str| symanzik(&graph(name)).unwrap().lee_pomeransky().to_string();
    assert_eq!(g("massless-bubble"), "z1 + z2 + s*z1*z2");
    assert_eq!(g("sunset-1mass"), "z1*z2 + z1*z3 + z2*z3 + m2*z1*z2^2 + m2*z2^2*z3");
    assert_eq!(g("box"), "z1 + z2 + z3 + z4 + s*z1*z3 + t*z2*z4");
}

#[test]
fn singular_loop_matrix() {
    let mut g = graph("massless-bubble");
    for p in &mut g.propagators {
        p.m[0][0] = gkz_core::algebra::rat_int(0);
    }
    assert_eq!(symanzik(&g).unwrap_err(), gkz_core::Error::SingularM);
}

#[test]
fn homogeneity_and_positivity() {
    for (name, spec) in gkz_core::fixtures() {
        let Some(g) = spec.graph else { continue };
        let s = symanzik(&g).unwrap();
        assert!(s.u.is_homogeneous(g.loops as u32), "{name}: U");
        assert!(s.f.is_homogeneous(g.loops as u32 + 1), "{name}: F");
        let coeffs = s.lee_pomeransky().eval_coefficients(&spec.kinematics).unwrap();
        assert!(coeffs.iter().all(|&c| c > 0.0), "{name}: {coeffs:?}");
    }
}

#[test]
fn prefactor_examples() {
    let d: ParamLinear = "2*beta".parse().unwrap();
    let one = ParamLinear::int(1);
    let p = prefactor(&[one.clone(), one], &ParamLinear::int(4), 1);
    assert!((p.eval(&params(&[], 0.0)).unwrap() - 1.0).abs() < 1e-14);

    let alpha: Vec<ParamLinear> = vec!["a1".parse().unwrap(), "a2".parse().unwrap()];
    let p = prefactor(&alpha, &d, 1);
    assert_eq!(p.num, vec!["beta".parse::<ParamLinear>().unwrap()]);
    let den: Vec<String> = p.den.iter().map(|x| x.to_string()).collect();
    assert_eq!(den, vec!["2*beta - a1 - a2", "a1", "a2"]);

    let (a1, a2, dd) = (0.3, 0.4, 3.8);
    let v = p.eval(&params(&[a1, a2], dd / 2.0)).unwrap();
    let direct = libm::tgamma(dd / 2.0) / (libm::tgamma(dd - a1 - a2) * libm::tgamma(a1) * libm::tgamma(a2));
    assert!(rel(v, direct) < 1e-12, "{v} vs {direct}");
}

#[test]
fn invariants_enter_only_through_the_gram_table() {
    let s = symanzik(&graph("box")).unwrap();
    let mut kin = BTreeMap::new();
    kin.insert("s".to_string(), 2.0);
    kin.insert("t".to_string(), 3.0);
    assert_eq!(s.f.eval_coefficients(&kin).unwrap(), vec![2.0, 3.0]);
}
