//! Logarithm-free canonical series `phi_gamma = sum_u [gamma]_{u-}/[gamma+u]_{u+} c^{gamma+u}`.

mod classify;
mod eval;

use serde::{Deserialize, Serialize};

use crate::algebra::{falling_factorial, ParamLinear, PochhammerProduct, Rational};
use crate::gkz::matrix::det_i64;
use crate::gkz::{AMatrix, FakeExponent, LatticeBasis};

pub use classify::{classify, FormKind, HypergeometricForm, MonomialRatio};
pub use eval::{evaluate, gauss_unit_2f1, shell_sums};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CanonicalSeries {
    pub gamma: FakeExponent,
    /// Basis adapted to this root; see [`CanonicalSeries::new`].
    pub lattice: LatticeBasis,
    pub weight: Vec<i64>,
    pub amatrix: AMatrix,
}

impl CanonicalSeries {
    /// Chooses the lattice basis per root: dual to a set of zero positions of
    /// `gamma` when that projection is unimodular (the summation then runs over
    /// `k >= 0`), otherwise the given basis oriented along `w`.
    pub fn new(gamma: FakeExponent, lattice: &LatticeBasis, weight: &[i64], amatrix: &AMatrix) -> Self {
        let basis = adapted_basis(&gamma.gamma, lattice, weight);
        Self { gamma, lattice: basis, weight: weight.to_vec(), amatrix: amatrix.clone() }
    }

    pub fn rank(&self) -> usize {
        self.lattice.rank()
    }

    pub fn gamma(&self) -> &[ParamLinear] {
        &self.gamma.gamma
    }
}

/// Integer inverse of a unimodular matrix via the adjugate.
fn unimodular_inverse(m: &[Vec<i64>]) -> Option<Vec<Vec<i64>>> {
    let n = m.len();
    let d = det_i64(m);
    if d.abs() != 1 {
        return None;
    }
    let mut inv = vec![vec![0i64; n]; n];
    for (r, row) in inv.iter_mut().enumerate() {
        for (c, cell) in row.iter_mut().enumerate() {
            let minor: Vec<Vec<i64>> = m
                .iter()
                .enumerate()
                .filter(|(i, _)| *i != c)
                .map(|(_, row)| row.iter().enumerate().filter(|(j, _)| *j != r).map(|(_, x)| *x).collect())
                .collect();
            let s = if (r + c) % 2 == 0 { 1 } else { -1 };
            *cell = s * det_i64(&minor) * d;
        }
    }
    Some(inv)
}

fn subsets(items: &[usize], k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![Vec::new()];
    }
    if items.len() < k {
        return Vec::new();
    }
    let mut out: Vec<Vec<usize>> = subsets(&items[1..], k - 1)
        .into_iter()
        .map(|mut s| {
            s.insert(0, items[0]);
            s
        })
        .collect();
    out.extend(subsets(&items[1..], k));
    out
}

fn adapted_basis(gamma: &[ParamLinear], lattice: &LatticeBasis, w: &[i64]) -> LatticeBasis {
    let m = lattice.rank();
    if m == 0 {
        return lattice.clone();
    }
    let zeros: Vec<usize> = gamma.iter().enumerate().filter(|(_, g)| g.is_zero()).map(|(i, _)| i).collect();
    for z in subsets(&zeros, m) {
        // P[r][c] = l_r[z_c]; the new basis Q B satisfies (Q B)|_z = Q P = I.
        let p: Vec<Vec<i64>> = lattice.vectors.iter().map(|v| z.iter().map(|&i| v[i]).collect()).collect();
        if let Some(inv) = unimodular_inverse(&p) {
            let vectors: Vec<Vec<i64>> = inv.iter().map(|q| lattice.combine(q)).collect();
            return LatticeBasis { vectors };
        }
    }
    let vectors = lattice
        .vectors
        .iter()
        .map(|v| {
            let wu: i64 = v.iter().zip(w).map(|(a, b)| a * b).sum();
            if wu < 0 {
                v.iter().map(|x| -x).collect()
            } else {
                v.clone()
            }
        })
        .collect();
    LatticeBasis { vectors }
}

/// One term `coefficient * c^(gamma+u)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SeriesTerm {
    pub k: Vec<i64>,
    pub u: Vec<i64>,
    pub coefficient: PochhammerProduct,
    pub monomial: Vec<ParamLinear>,
}

/// `[gamma]_{u-} / [gamma+u]_{u+}`, exactly zero when `w.u < 0` or a falling factorial hits zero.
pub fn term_coefficient(gamma: &[ParamLinear], u: &[i64], w: &[i64]) -> PochhammerProduct {
    let wu: i64 = u.iter().zip(w).map(|(a, b)| a * b).sum();
    if wu < 0 {
        return PochhammerProduct::zero();
    }
    let mut out = PochhammerProduct::one();
    for (g, &ui) in gamma.iter().zip(u) {
        if ui < 0 {
            out = out.mul(&falling_factorial(g, (-ui) as u32));
        } else if ui > 0 {
            // [gamma+u]_{u} = (gamma + 1)_{u}
            let f = PochhammerProduct::poch(g.add_constant(&Rational::from_integer(1.into())), ui as u32);
            out = out.mul(&f.recip().expect("rising factorial of positive length is a nonzero product"));
        }
        if out.is_zero() {
            break;
        }
    }
    out
}

/// Shell order: max-norm of `k`, then lexicographic.
pub fn shell_indices(rank: usize, order: i64) -> Vec<Vec<i64>> {
    let mut all: Vec<Vec<i64>> = vec![Vec::new()];
    for _ in 0..rank {
        all = all
            .into_iter()
            .flat_map(|p| {
                (-order..=order).map(move |x| {
                    let mut q = p.clone();
                    q.push(x);
                    q
                })
            })
            .collect();
    }
    all.sort_by_key(|k| (k.iter().map(|x| x.abs()).max().unwrap_or(0), k.clone()));
    all
}

/// Terms with `|k_i| <= order` and nonzero coefficient, by shell.
pub fn enumerate_terms(series: &CanonicalSeries, order: u32) -> Vec<SeriesTerm> {
    let gamma = series.gamma();
    shell_indices(series.rank(), order as i64)
        .into_iter()
        .filter_map(|k| {
            let u = series.lattice.combine(&k);
            let u = if u.is_empty() { vec![0; gamma.len()] } else { u };
            let coefficient = term_coefficient(gamma, &u, &series.weight);
            if coefficient.is_zero() {
                return None;
            }
            let monomial = gamma.iter().zip(&u).map(|(g, x)| g.add_constant(&Rational::from_integer((*x).into()))).collect();
            Some(SeriesTerm { k, u, coefficient, monomial })
        })
        .collect()
}
