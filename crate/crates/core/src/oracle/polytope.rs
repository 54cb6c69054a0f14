//! Facets of the Newton polytope of a point configuration.

use num_integer::Integer;

use crate::gkz::matrix::{det_i64, rank_i64};

/// Facet `{x : mu.x = nu}` with primitive inward normal: `mu.p >= nu` on the polytope.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Facet {
    pub normal: Vec<i64>,
    pub offset: i64,
}

impl Facet {
    /// `mu.alpha - beta nu`; positive for every facet exactly when the integral converges.
    pub fn slack(&self, alpha: &[f64], beta: f64) -> f64 {
        self.normal.iter().zip(alpha).map(|(m, a)| *m as f64 * a).sum::<f64>() - beta * self.offset as f64
    }

    pub fn height(&self, p: &[i64]) -> i64 {
        self.normal.iter().zip(p).map(|(m, x)| m * x).sum::<i64>() - self.offset
    }
}

pub fn affine_dimension(points: &[Vec<i64>]) -> usize {
    if points.len() < 2 {
        return 0;
    }
    let diffs: Vec<Vec<i64>> = points[1..].iter().map(|p| p.iter().zip(&points[0]).map(|(a, b)| a - b).collect()).collect();
    rank_i64(&diffs)
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

/// All facets of a full-dimensional configuration, by brute force over affinely independent subsets.
pub fn facets(points: &[Vec<i64>]) -> Vec<Facet> {
    let dim = points.first().map(Vec::len).unwrap_or(0);
    let mut out: Vec<Facet> = Vec::new();
    for subset in combinations(points.len(), dim) {
        let base = &points[subset[0]];
        let diffs: Vec<Vec<i64>> =
            subset[1..].iter().map(|&i| points[i].iter().zip(base).map(|(a, b)| a - b).collect()).collect();
        let mut normal: Vec<i64> = (0..dim)
            .map(|c| {
                let minor: Vec<Vec<i64>> =
                    diffs.iter().map(|r| r.iter().enumerate().filter(|(j, _)| *j != c).map(|(_, x)| *x).collect()).collect();
                let s = if c % 2 == 0 { 1 } else { -1 };
                s * det_i64(&minor)
            })
            .collect();
        let g = normal.iter().fold(0i64, |acc, x| acc.gcd(x));
        if g == 0 {
            continue;
        }
        normal.iter_mut().for_each(|x| *x /= g);
        let dots: Vec<i64> = points.iter().map(|p| p.iter().zip(&normal).map(|(a, b)| a * b).sum()).collect();
        let nu: i64 = base.iter().zip(&normal).map(|(a, b)| a * b).sum();
        let facet = if dots.iter().all(|&d| d >= nu) {
            Facet { normal, offset: nu }
        } else if dots.iter().all(|&d| d <= nu) {
            Facet { normal: normal.iter().map(|x| -x).collect(), offset: -nu }
        } else {
            continue;
        };
        if !out.contains(&facet) {
            out.push(facet);
        }
    }
    out.sort();
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn triangle_facets() {
        let pts = vec![vec![1, 0], vec![0, 1], vec![1, 1]];
        let f = facets(&pts);
        assert_eq!(f.len(), 3);
        assert!(f.contains(&Facet { normal: vec![1, 1], offset: 1 }));
        assert!(f.contains(&Facet { normal: vec![-1, 0], offset: -1 }));
        assert!(f.contains(&Facet { normal: vec![0, -1], offset: -1 }));
    }

    #[test]
    fn segment_facets() {
        let f = facets(&[vec![0], vec![1]]);
        assert_eq!(f, vec![Facet { normal: vec![-1], offset: -1 }, Facet { normal: vec![1], offset: 0 }]);
    }
}
