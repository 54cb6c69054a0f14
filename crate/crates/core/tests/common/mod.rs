#![allow(dead_code)]

use std::collections::BTreeSet;

use gkz_core::gkz::{default_kappa, toric_matrix, AMatrix, MonomialIdeal, StandardPair, TieBreak};
use gkz_core::pipeline::{solve_gkz, GkzData};
use gkz_core::{fixture, KinematicPolynomial, ParamAssignment};

pub fn lp_polynomial(name: &str) -> KinematicPolynomial {
    let spec = fixture(name).unwrap();
    gkz_core::graph::symanzik(spec.graph.as_ref().unwrap()).unwrap().lee_pomeransky()
}

/// GKZ data and numeric coefficients of an undeformed fixture.
pub fn fixture_gkz(name: &str) -> (GkzData, Vec<f64>) {
    let spec = fixture(name).unwrap();
    let (a, coeffs) = match &spec.matrix {
        Some(m) => (AMatrix::new(m.rows.clone()).unwrap(), m.coefficients.clone().unwrap()),
        None => {
            let g = lp_polynomial(name);
            (toric_matrix(&g.exponents()).unwrap(), g.eval_coefficients(&spec.kinematics).unwrap())
        }
    };
    let data = solve_gkz(&a, &default_kappa(a.nrows()), spec.weight.as_ref().unwrap(), TieBreak::Grevlex).unwrap();
    (data, coeffs)
}

pub fn params(alpha: &[f64], beta: f64) -> ParamAssignment {
    ParamAssignment::from_alpha_beta(alpha, beta)
}

pub fn rising(a: f64, n: u32) -> f64 {
    (0..n).map(|k| a + k as f64).product()
}

/// Term-ratio summation of `pFq(upper; lower; x)` through `x^order`.
pub fn pfq_partial(upper: &[f64], lower: &[f64], x: f64, order: u32) -> f64 {
    let mut term = 1.0;
    let mut sum = 1.0;
    for n in 0..order {
        let nf = n as f64;
        let num: f64 = upper.iter().map(|a| a + nf).product();
        let den: f64 = lower.iter().map(|b| b + nf).product::<f64>() * (nf + 1.0);
        term *= num / den * x;
        sum += term;
    }
    sum
}

/// `prod c_j^{g_j}` with `0^0 = 1`.
pub fn monomial(c: &[f64], g: &[f64]) -> f64 {
    c.iter().zip(g).map(|(c, g)| if *g == 0.0 { 1.0 } else { c.powf(*g) }).product()
}

pub fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs().max(1e-300)
}

/// Standard pairs straight from the definition: admissible pairs maximal under
/// `(a, F) <= (b, G)` iff `F` is in `G`, `x^b | x^a` and `a - b` is supported on `G`.
pub fn brute_force_pairs(ideal: &MonomialIdeal) -> BTreeSet<(Vec<u32>, Vec<usize>)> {
    let n = ideal.nvars;
    let bound = ideal.generators.iter().flatten().copied().max().unwrap_or(0) + 1;
    let admissible = |a: &[u32], free: &[usize]| {
        free.iter().all(|&i| a[i] == 0)
            && ideal.generators.iter().all(|g| (0..n).any(|i| !free.contains(&i) && g[i] > a[i]))
    };
    let mut monomials: Vec<Vec<u32>> = vec![Vec::new()];
    for _ in 0..n {
        monomials = monomials
            .into_iter()
            .flat_map(|m| (0..bound).map(move |x| [m.clone(), vec![x]].concat()))
            .collect();
    }
    let mut cands = Vec::new();
    for mask in 0u32..(1 << n) {
        let free: Vec<usize> = (0..n).filter(|i| mask >> i & 1 == 1).collect();
        for a in &monomials {
            if admissible(a, &free) {
                cands.push((a.clone(), free.clone()));
            }
        }
    }
    let below = |(a, f): &(Vec<u32>, Vec<usize>), (b, g): &(Vec<u32>, Vec<usize>)| {
        f.iter().all(|i| g.contains(i)) && (0..n).all(|i| b[i] <= a[i] && (a[i] == b[i] || g.contains(&i)))
    };
    cands
        .iter()
        .filter(|p| !cands.iter().any(|q| q != *p && below(p, q)))
        .cloned()
        .collect()
}

pub fn in_pair(m: &[u32], p: &StandardPair) -> bool {
    m.iter().zip(&p.monomial).enumerate().all(|(i, (x, a))| if p.free.contains(&i) { true } else { x == a })
}

/// First monomial with exponents `<= top` where membership in the ideal and coverage by the pairs disagree.
pub fn coverage_mismatch(ideal: &MonomialIdeal, pairs: &[StandardPair], top: u32) -> Option<Vec<u32>> {
    let n = ideal.nvars;
    let mut m = vec![0u32; n];
    loop {
        if ideal.contains(&m) == pairs.iter().any(|p| in_pair(&m, p)) {
            return Some(m);
        }
        let mut i = 0;
        while i < n && m[i] == top {
            m[i] = 0;
            i += 1;
        }
        if i == n {
            return None;
        }
        m[i] += 1;
    }
}
