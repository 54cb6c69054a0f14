use serde::{Deserialize, Serialize};

use num_traits::{One, Zero};

use super::matrix::AMatrix;
use super::pairs::StandardPair;
use crate::algebra::{rat_int, ParamLinear, Rational};
use crate::error::{Error, Result};

/// A root `gamma` with `A gamma = kappa`, fixed by a standard pair.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FakeExponent {
    pub gamma: Vec<ParamLinear>,
    pub pair: StandardPair,
}

impl FakeExponent {
    /// Positions where `gamma` is identically zero.
    pub fn zeros(&self) -> Vec<usize> {
        self.gamma.iter().enumerate().filter(|(_, g)| g.is_zero()).map(|(i, _)| i).collect()
    }
}

/// `kappa = (-beta, -a1, ..., -aN)`.
pub fn default_kappa(rows: usize) -> Vec<ParamLinear> {
    let mut k = vec![-ParamLinear::beta()];
    k.extend((1..rows as u32).map(|i| -ParamLinear::alpha(i)));
    k
}

/// Solves `theta_j = a_j` off `F` and `A theta = kappa` on `F` exactly.
/// Inconsistent pairs are dropped and reported in the returned warnings.
pub fn fake_exponents(
    a: &AMatrix,
    kappa: &[ParamLinear],
    pairs: &[StandardPair],
) -> Result<(Vec<FakeExponent>, Vec<String>)> {
    if kappa.len() != a.nrows() {
        return Err(Error::DimensionMismatch(format!("kappa has {} entries, A has {} rows", kappa.len(), a.nrows())));
    }
    let mut roots = Vec::new();
    let mut warnings = Vec::new();
    for pair in pairs {
        match solve_pair(a, kappa, pair)? {
            Some(gamma) => roots.push(FakeExponent { gamma, pair: pair.clone() }),
            None => warnings.push(format!("standard pair {pair} gives an inconsistent system; dropped")),
        }
    }
    Ok((roots, warnings))
}

fn solve_pair(a: &AMatrix, kappa: &[ParamLinear], pair: &StandardPair) -> Result<Option<Vec<ParamLinear>>> {
    let n = a.ncols();
    let free = &pair.free;
    let fixed = pair.complement();
    // rows: [A_F | rhs]
    let mut m: Vec<Vec<Rational>> = a
        .rows
        .iter()
        .map(|r| free.iter().map(|&j| rat_int(r[j])).collect())
        .collect();
    let mut rhs: Vec<ParamLinear> = kappa
        .iter()
        .zip(&a.rows)
        .map(|(k, r)| {
            let mut v = k.clone();
            for &j in &fixed {
                v -= &ParamLinear::int(r[j] * pair.monomial[j] as i64);
            }
            v
        })
        .collect();
    let cols = free.len();
    let mut row = 0;
    let mut pivots = Vec::new();
    for c in 0..cols {
        let Some(p) = (row..m.len()).find(|&r| !m[r][c].is_zero()) else { continue };
        m.swap(row, p);
        rhs.swap(row, p);
        let inv = Rational::one() / &m[row][c];
        for k in 0..cols {
            m[row][k] *= &inv;
        }
        rhs[row] = rhs[row].scale(&inv);
        for r in 0..m.len() {
            if r != row && !m[r][c].is_zero() {
                let f = m[r][c].clone();
                for k in 0..cols {
                    let v = &m[row][k] * &f;
                    m[r][k] -= v;
                }
                let pr = rhs[row].clone();
                rhs[r].add_scaled(&pr, &-f);
            }
        }
        pivots.push(c);
        row += 1;
    }
    if rhs[row..].iter().any(|r| !r.is_zero()) {
        return Ok(None);
    }
    if pivots.len() < cols {
        return Err(Error::UnderdeterminedPair(format!("{pair}: rank {} < |F| = {cols}", pivots.len())));
    }
    let mut gamma = vec![ParamLinear::zero(); n];
    for &j in &fixed {
        gamma[j] = ParamLinear::int(pair.monomial[j] as i64);
    }
    for (r, &c) in pivots.iter().enumerate() {
        gamma[free[c]] = rhs[r].clone();
    }
    // A gamma == kappa
    for (r, k) in a.rows.iter().zip(kappa) {
        let mut s = ParamLinear::zero();
        for (x, g) in r.iter().zip(&gamma) {
            s.add_scaled(g, &rat_int(*x));
        }
        debug_assert_eq!(&s, k);
    }
    Ok(Some(gamma))
}
