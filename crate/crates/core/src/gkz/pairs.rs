use std::fmt;

use serde::{Deserialize, Serialize};

use super::groebner::Monomial;
use super::ideal::{monomial_string, MonomialIdeal};

/// `(x^a, F)`: the monomials `x^a * x_F^b` avoid the ideal; `a` vanishes on `F`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct StandardPair {
    pub monomial: Monomial,
    /// Zero-based free variable indices, ascending.
    pub free: Vec<usize>,
}

impl StandardPair {
    pub fn complement(&self) -> Vec<usize> {
        (0..self.monomial.len()).filter(|i| !self.free.contains(i)).collect()
    }
}

impl fmt::Display for StandardPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let free: Vec<String> = self.free.iter().map(|i| (i + 1).to_string()).collect();
        write!(f, "({}, {{{}}})", monomial_string(&self.monomial), free.join(","))
    }
}

/// Whether `x^a x_F^*` misses the ideal, i.e. every generator exceeds `a` off `F`.
fn avoids(ideal: &MonomialIdeal, a: &[u32], free: &[bool]) -> bool {
    ideal.generators.iter().all(|g| g.iter().enumerate().any(|(i, &gi)| !free[i] && gi > a[i]))
}

/// All standard pairs, ordered by the complement of `F` and then by `a`.
pub fn standard_pairs(ideal: &MonomialIdeal) -> Vec<StandardPair> {
    let n = ideal.nvars;
    let bound: Vec<u32> =
        (0..n).map(|i| ideal.generators.iter().map(|g| g[i]).max().unwrap_or(0)).collect();
    let mut out = Vec::new();
    for mask in 0u64..(1u64 << n) {
        let free: Vec<bool> = (0..n).map(|i| mask >> i & 1 == 1).collect();
        let fixed: Vec<usize> = (0..n).filter(|&i| !free[i]).collect();
        if fixed.iter().any(|&i| bound[i] == 0) {
            continue;
        }
        let mut a = vec![0u32; n];
        loop {
            if avoids(ideal, &a, &free) && maximal(ideal, &a, &free) {
                out.push(StandardPair { monomial: a.clone(), free: (0..n).filter(|&i| free[i]).collect() });
            }
            // odometer over a_i < bound_i for i outside F
            let mut k = 0;
            loop {
                if k == fixed.len() {
                    break;
                }
                let i = fixed[k];
                a[i] += 1;
                if a[i] < bound[i] {
                    break;
                }
                a[i] = 0;
                k += 1;
            }
            if k == fixed.len() {
                break;
            }
        }
    }
    out.sort_by(|x, y| x.complement().cmp(&y.complement()).then_with(|| x.monomial.cmp(&y.monomial)));
    out
}

fn maximal(ideal: &MonomialIdeal, a: &[u32], free: &[bool]) -> bool {
    (0..a.len()).filter(|&l| !free[l]).all(|l| {
        let mut wider = free.to_vec();
        wider[l] = true;
        let mut b = a.to_vec();
        b[l] = 0;
        !avoids(ideal, &b, &wider)
    })
}
