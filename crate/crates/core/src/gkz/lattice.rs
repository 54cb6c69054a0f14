use serde::{Deserialize, Serialize};

use super::matrix::AMatrix;

/// Basis of the integer kernel of `A`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LatticeBasis {
    pub vectors: Vec<Vec<i64>>,
}

impl LatticeBasis {
    pub fn rank(&self) -> usize {
        self.vectors.len()
    }

    pub fn combine(&self, k: &[i64]) -> Vec<i64> {
        let n = self.vectors.first().map(Vec::len).unwrap_or(0);
        let mut u = vec![0i64; n];
        for (c, v) in k.iter().zip(&self.vectors) {
            for (x, y) in u.iter_mut().zip(v) {
                *x += c * y;
            }
        }
        u
    }
}

/// Integer kernel via unimodular row reduction of `[A^T | I]`, then size-reduced.
pub fn kernel_lattice(a: &AMatrix) -> LatticeBasis {
    let (r, n) = (a.nrows(), a.ncols());
    let mut b: Vec<Vec<i64>> = (0..n)
        .map(|j| {
            let mut row = a.column(j);
            row.extend((0..n).map(|k| i64::from(k == j)));
            row
        })
        .collect();
    let mut pivot = 0;
    for col in 0..r {
        loop {
            let Some(best) = (pivot..n).filter(|&i| b[i][col] != 0).min_by_key(|&i| b[i][col].abs()) else { break };
            b.swap(pivot, best);
            let mut done = true;
            for i in pivot + 1..n {
                if b[i][col] != 0 {
                    let q = b[i][col].div_euclid(b[pivot][col]);
                    let p = b[pivot].clone();
                    for (x, y) in b[i].iter_mut().zip(&p) {
                        *x -= q * y;
                    }
                    if b[i][col] != 0 {
                        done = false;
                    }
                }
            }
            if done {
                pivot += 1;
                break;
            }
        }
        if pivot == n {
            break;
        }
    }
    let mut vectors: Vec<Vec<i64>> =
        b[pivot..].iter().filter(|row| row[..r].iter().all(|&x| x == 0)).map(|row| row[r..].to_vec()).collect();
    size_reduce(&mut vectors);
    for v in &mut vectors {
        if v.iter().find(|&&x| x != 0).is_some_and(|&x| x < 0) {
            v.iter_mut().for_each(|x| *x = -*x);
        }
    }
    vectors.sort_by_key(|v| (norm2(v), std::cmp::Reverse(v.clone())));
    LatticeBasis { vectors }
}

fn norm2(v: &[i64]) -> i64 {
    v.iter().map(|x| x * x).sum()
}

fn dot(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Pairwise reduction until no vector can be shortened by another.
fn size_reduce(vs: &mut [Vec<i64>]) {
    let mut changed = true;
    while changed {
        changed = false;
        for i in 0..vs.len() {
            for j in 0..vs.len() {
                if i == j {
                    continue;
                }
                let nj = norm2(&vs[j]);
                if nj == 0 {
                    continue;
                }
                let q = (dot(&vs[i], &vs[j]) as f64 / nj as f64).round() as i64;
                if q == 0 {
                    continue;
                }
                let cand: Vec<i64> = vs[i].iter().zip(&vs[j]).map(|(x, y)| x - q * y).collect();
                if norm2(&cand) < norm2(&vs[i]) {
                    vs[i] = cand;
                    changed = true;
                }
            }
        }
    }
}
