//! Benchmark inputs.

use gkz_core::gkz::{default_kappa, toric_matrix, AMatrix};
use gkz_core::pipeline::{solve_gkz, GkzData};
use gkz_core::{fixture, ParamAssignment, QuadratureSpec, TieBreak};

/// Toric matrix and numeric coefficients of an undeformed graph fixture.
pub fn graph_matrix(name: &str) -> (AMatrix, Vec<f64>) {
    let spec = fixture(name).expect("known fixture");
    let g = gkz_core::graph::symanzik(spec.graph.as_ref().expect("graph fixture")).unwrap().lee_pomeransky();
    (toric_matrix(&g.exponents()).unwrap(), g.eval_coefficients(&spec.kinematics).unwrap())
}

pub fn gkz_data(name: &str) -> GkzData {
    let spec = fixture(name).expect("known fixture");
    let (a, _) = graph_matrix(name);
    solve_gkz(&a, &default_kappa(a.nrows()), spec.weight.as_ref().unwrap(), TieBreak::Grevlex).unwrap()
}

pub fn point(alpha: &[f64], beta: f64) -> ParamAssignment {
    ParamAssignment::from_alpha_beta(alpha, beta)
}

/// One-mass bubble integral at `alpha = (1, 1.5)`, `beta = 1.9`.
pub fn one_mass_quadrature() -> QuadratureSpec {
    let (a, c) = graph_matrix("one-mass-bubble");
    let exps = a.exponent_columns().into_iter().map(|e| e.into_iter().map(|x| x as u32).collect()).collect();
    QuadratureSpec::new(exps, c, vec![1.0, 1.5], 1.9)
}
