use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::KinematicPolynomial;

/// Integer configuration matrix; column `j` belongs to coefficient `c{j+1}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AMatrix {
    pub rows: Vec<Vec<i64>>,
}

impl AMatrix {
    pub fn new(rows: Vec<Vec<i64>>) -> Result<Self> {
        let n = rows.first().map(Vec::len).unwrap_or(0);
        if n == 0 || rows.iter().any(|r| r.len() != n) {
            return Err(Error::DimensionMismatch("ragged or empty A matrix".into()));
        }
        Ok(Self { rows })
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.rows[0].len()
    }

    pub fn column(&self, j: usize) -> Vec<i64> {
        self.rows.iter().map(|r| r[j]).collect()
    }

    pub fn rank(&self) -> usize {
        rank_i64(&self.rows)
    }

    /// Dimension of the kernel lattice.
    pub fn codim(&self) -> usize {
        self.ncols() - self.rank()
    }

    /// Columns of a polynomial configuration with the leading all-ones row removed.
    pub fn exponent_columns(&self) -> Vec<Vec<i64>> {
        (0..self.ncols()).map(|j| self.rows[1..].iter().map(|r| r[j]).collect()).collect()
    }

    pub fn has_ones_row(&self) -> bool {
        self.rows[0].iter().all(|&x| x == 1)
    }

    pub fn apply(&self, u: &[i64]) -> Vec<i64> {
        self.rows.iter().map(|r| r.iter().zip(u).map(|(a, b)| a * b).sum()).collect()
    }
}

impl fmt::Display for AMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let width = self.rows.iter().flatten().map(|x| x.to_string().len()).max().unwrap_or(1);
        for r in &self.rows {
            let cells: Vec<String> = r.iter().map(|x| format!("{x:>width$}")).collect();
            writeln!(f, "[{}]", cells.join(" "))?;
        }
        Ok(())
    }
}

/// Laplace expansion; the matrices here are tiny.
pub fn det_i64(m: &[Vec<i64>]) -> i64 {
    let n = m.len();
    if n == 0 {
        return 1;
    }
    if n == 1 {
        return m[0][0];
    }
    (0..n)
        .map(|c| {
            let minor: Vec<Vec<i64>> =
                m[1..].iter().map(|r| r.iter().enumerate().filter(|(j, _)| *j != c).map(|(_, x)| *x).collect()).collect();
            let s = if c % 2 == 0 { 1 } else { -1 };
            s * m[0][c] * det_i64(&minor)
        })
        .sum()
}

pub(crate) fn rank_i64(rows: &[Vec<i64>]) -> usize {
    use num_rational::Ratio;
    let mut m: Vec<Vec<Ratio<i128>>> =
        rows.iter().map(|r| r.iter().map(|&x| Ratio::from_integer(x as i128)).collect()).collect();
    let ncols = m.first().map(Vec::len).unwrap_or(0);
    let mut rank = 0;
    for c in 0..ncols {
        let Some(p) = (rank..m.len()).find(|&r| m[r][c] != Ratio::from_integer(0)) else { continue };
        m.swap(rank, p);
        for r in 0..m.len() {
            if r != rank && m[r][c] != Ratio::from_integer(0) {
                let factor = m[r][c] / m[rank][c];
                for k in c..ncols {
                    let v = m[rank][k] * factor;
                    m[r][k] -= v;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Homogenised exponent matrix `[1 ... 1; a_1 ... a_n]`.
pub fn toric_matrix(columns: &[Vec<u32>]) -> Result<AMatrix> {
    let nvars = columns.first().map(Vec::len).ok_or_else(|| Error::InvalidSpec("empty polynomial".into()))?;
    let mut rows = vec![vec![1i64; columns.len()]];
    for v in 0..nvars {
        rows.push(columns.iter().map(|c| c[v] as i64).collect());
    }
    AMatrix::new(rows)
}

/// The polynomial actually fed to the GKZ engine: the source terms, possibly
/// preceded by one extra deformation monomial with coefficient `c1`.
#[derive(Debug, Clone, PartialEq)]
pub struct DeformedPolynomial {
    pub poly: KinematicPolynomial,
    pub deformation: Option<Vec<u32>>,
}

impl DeformedPolynomial {
    pub fn undeformed(poly: KinematicPolynomial) -> Self {
        Self { poly, deformation: None }
    }

    pub fn columns(&self) -> Vec<Vec<u32>> {
        self.deformation.iter().cloned().chain(self.poly.exponents()).collect()
    }

    pub fn offset(&self) -> usize {
        usize::from(self.deformation.is_some())
    }

    pub fn matrix(&self) -> Result<AMatrix> {
        toric_matrix(&self.columns())
    }
}

/// Adds one monomial when the configuration has codimension zero.
///
/// Products of the shape `z1...zN (1 + sum 1/z_i)` get `z1...z_{N-2}`;
/// otherwise a constant, otherwise the first missing monomial of degree below
/// the lowest degree present.
pub fn deform(poly: &KinematicPolynomial) -> Result<DeformedPolynomial> {
    let cols = poly.exponents();
    if toric_matrix(&cols)?.codim() > 0 {
        return Ok(DeformedPolynomial::undeformed(poly.clone()));
    }
    let n = poly.nvars;
    let extra = if let Some(v) = cantaloupe_deformation(&cols, n) {
        v
    } else if !cols.iter().any(|c| c.iter().all(|&e| e == 0)) {
        vec![0; n]
    } else {
        let l = poly.min_degree();
        monomials_below(n, l)
            .into_iter()
            .find(|m| !cols.contains(m))
            .ok_or_else(|| Error::DeformationFailed(format!("no free monomial of degree below {l}")))?
    };
    let out = DeformedPolynomial { poly: poly.clone(), deformation: Some(extra) };
    if out.matrix()?.codim() == 0 {
        return Err(Error::DeformationFailed("extra monomial lies in the affine span".into()));
    }
    Ok(out)
}

fn cantaloupe_deformation(cols: &[Vec<u32>], n: usize) -> Option<Vec<u32>> {
    if n < 3 || cols.len() != n + 1 {
        return None;
    }
    let ones = vec![1u32; n];
    let mut expected: Vec<Vec<u32>> = (0..n)
        .map(|i| {
            let mut v = ones.clone();
            v[i] = 0;
            v
        })
        .collect();
    expected.push(ones);
    let mut have = cols.to_vec();
    have.sort();
    expected.sort();
    (have == expected).then(|| (0..n).map(|i| u32::from(i + 2 < n)).collect())
}

fn monomials_below(n: usize, degree: u32) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    for d in (0..degree).rev() {
        let mut cur = vec![0u32; n];
        fill(&mut cur, 0, d, &mut out);
    }
    out
}

fn fill(cur: &mut Vec<u32>, i: usize, left: u32, out: &mut Vec<Vec<u32>>) {
    if i + 1 == cur.len() {
        cur[i] = left;
        out.push(cur.clone());
        return;
    }
    for e in (0..=left).rev() {
        cur[i] = e;
        fill(cur, i + 1, left - e, out);
    }
    cur[i] = 0;
}
