//! Numeric oracle for `int_{R+^N} z^alpha g(z)^(-beta) dz/z` with positive coefficients.
//!
//! Works in the chart `z = e^x`, centred at the maximum of the concave log-integrand
//! and decorrelated by the Cholesky factor of the local covariance. Each axis is mapped
//! by `y = sinh(u)`, which turns the exponential tails into double-exponential ones.
//! Parameters outside the convergence domain are reached by integrating by parts
//! across violated facets of the Newton polytope.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Mutex, OnceLock};

use nalgebra::{DMatrix, DVector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::polytope::{affine_dimension, facets, Facet};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum QuadratureMethod {
    /// Tensor product for `N <= 3`, lattice rule above.
    #[default]
    Auto,
    TanhSinhTensor,
    QuasiMonteCarlo,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct QuadratureSpec {
    pub exponents: Vec<Vec<u32>>,
    pub coefficients: Vec<f64>,
    pub alpha: Vec<f64>,
    pub beta: f64,
    #[serde(default)]
    pub method: QuadratureMethod,
    pub target_tolerance: f64,
}

impl QuadratureSpec {
    pub fn new(exponents: Vec<Vec<u32>>, coefficients: Vec<f64>, alpha: Vec<f64>, beta: f64) -> Self {
        Self { exponents, coefficients, alpha, beta, method: QuadratureMethod::Auto, target_tolerance: 1e-10 }
    }

    pub fn dimension(&self) -> usize {
        self.alpha.len()
    }

    fn points(&self) -> Vec<Vec<i64>> {
        self.exponents.iter().map(|e| e.iter().map(|&x| x as i64).collect()).collect()
    }

    fn validate(&self) -> Result<()> {
        let n = self.dimension();
        if n == 0 || self.exponents.iter().any(|e| e.len() != n) || self.coefficients.len() != self.exponents.len() {
            return Err(Error::DimensionMismatch("quadrature exponents, coefficients and alpha disagree".into()));
        }
        if n > MAX_DIM {
            return Err(Error::InvalidSpec(format!("oracle supports at most {MAX_DIM} variables, got {n}")));
        }
        if let Some(c) = self.coefficients.iter().find(|c| !(**c > 0.0)) {
            return Err(Error::InvalidSpec(format!("coefficient {c} is not positive")));
        }
        if affine_dimension(&self.points()) < n {
            return Err(Error::NonConvergent("Newton polytope is not full dimensional".into()));
        }
        Ok(())
    }
}

/// Oracle output, serialised as `{"value","error","method","nodes"}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OracleResult {
    pub value: f64,
    pub error: f64,
    pub method: String,
    pub nodes: u64,
}

/// One term `weight * I(beta, alpha)` of the continued integral.
#[derive(Debug, Clone, PartialEq)]
pub struct ContinuationTerm {
    pub weight: f64,
    pub beta: f64,
    pub alpha: Vec<f64>,
}

const SLACK_MARGIN: f64 = 0.25;

/// Rewrites `I(beta, alpha)` as a combination of integrals with every facet slack
/// at least `SLACK_MARGIN`, using
/// `(mu.alpha - beta nu) I(beta, alpha) = beta sum_j (mu.a_j - nu) c_j I(beta+1, alpha+a_j)`.
pub fn continuation_terms(spec: &QuadratureSpec) -> Result<Vec<ContinuationTerm>> {
    spec.validate()?;
    if !(spec.beta > 0.0) {
        return Err(Error::NonConvergent(format!("beta = {} is not positive", spec.beta)));
    }
    let pts = spec.points();
    let fs = facets(&pts);
    let n = spec.dimension();
    let key_alpha = |shift: &[i64]| -> Vec<f64> { spec.alpha.iter().zip(shift).map(|(a, s)| a + *s as f64).collect() };
    let mut work: BTreeMap<(i64, Vec<i64>), f64> = BTreeMap::new();
    work.insert((0, vec![0; n]), 1.0);
    let mut done: BTreeMap<(i64, Vec<i64>), f64> = BTreeMap::new();
    while let Some(((db, shift), w)) = work.pop_first() {
        let alpha = key_alpha(&shift);
        let beta = spec.beta + db as f64;
        let worst: Option<(&Facet, f64)> = fs
            .iter()
            .map(|f| (f, f.slack(&alpha, beta)))
            .filter(|(_, s)| *s < SLACK_MARGIN)
            .min_by(|a, b| a.1.total_cmp(&b.1));
        match worst {
            None => *done.entry((db, shift)).or_insert(0.0) += w,
            Some((f, s)) => {
                if s.abs() < 1e-9 {
                    return Err(Error::NonConvergent(format!("continuation meets a pole on facet {:?}", f.normal)));
                }
                for (p, c) in pts.iter().zip(&spec.coefficients) {
                    let delta = f.height(p);
                    if delta == 0 {
                        continue;
                    }
                    let next: Vec<i64> = shift.iter().zip(p).map(|(a, b)| a + b).collect();
                    *work.entry((db + 1, next)).or_insert(0.0) += w * beta * delta as f64 * c / s;
                }
            }
        }
        if done.len() + work.len() > 4096 {
            return Err(Error::NonConvergent("analytic continuation needs too many terms".into()));
        }
    }
    Ok(done
        .into_iter()
        .filter(|(_, w)| *w != 0.0)
        .map(|((db, shift), weight)| ContinuationTerm { weight, beta: spec.beta + db as f64, alpha: key_alpha(&shift) })
        .collect())
}

/// Quadrature inside the convergence domain.
pub fn quadrature(spec: &QuadratureSpec) -> Result<OracleResult> {
    spec.validate()?;
    if !(spec.beta > 0.0) {
        return Err(Error::NonConvergent(format!("beta = {} is not positive", spec.beta)));
    }
    let fs = facets(&spec.points());
    if let Some(f) = fs.iter().find(|f| f.slack(&spec.alpha, spec.beta) <= 0.0) {
        return Err(Error::NonConvergent(format!(
            "exponent outside the scaled Newton polytope (facet {:?}, slack {:.4})",
            f.normal,
            f.slack(&spec.alpha, spec.beta)
        )));
    }
    integrate(spec, &spec.alpha, spec.beta)
}

/// Quadrature of the analytic continuation in `alpha` and `beta`.
pub fn continued_quadrature(spec: &QuadratureSpec) -> Result<OracleResult> {
    let terms = continuation_terms(spec)?;
    let mut value = 0.0;
    let mut error = 0.0;
    let mut nodes = 0;
    let mut method = String::new();
    for t in &terms {
        let r = integrate(spec, &t.alpha, t.beta)?;
        value += t.weight * r.value;
        error += (t.weight * r.error).abs();
        nodes += r.nodes;
        method = r.method;
    }
    if terms.len() > 1 {
        method = format!("{method}+ibp({})", terms.len());
    }
    Ok(OracleResult { value, error, method, nodes })
}

struct LogIntegrand<'a> {
    pts: Vec<Vec<f64>>,
    lnc: Vec<f64>,
    alpha: &'a [f64],
    beta: f64,
}

impl LogIntegrand<'_> {
    fn value(&self, x: &[f64]) -> f64 {
        let mut m = f64::NEG_INFINITY;
        let t: Vec<f64> = self
            .pts
            .iter()
            .zip(&self.lnc)
            .map(|(p, l)| {
                let v = l + p.iter().zip(x).map(|(a, b)| a * b).sum::<f64>();
                m = m.max(v);
                v
            })
            .collect();
        let lse = m + t.iter().map(|v| (v - m).exp()).sum::<f64>().ln();
        self.alpha.iter().zip(x).map(|(a, b)| a * b).sum::<f64>() - self.beta * lse
    }

    fn grad_hess(&self, x: &[f64]) -> (DVector<f64>, DMatrix<f64>) {
        let n = x.len();
        let t: Vec<f64> =
            self.pts.iter().zip(&self.lnc).map(|(p, l)| l + p.iter().zip(x).map(|(a, b)| a * b).sum::<f64>()).collect();
        let m = t.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        let w: Vec<f64> = t.iter().map(|v| (v - m).exp()).collect();
        let z: f64 = w.iter().sum();
        let mut mean = DVector::zeros(n);
        let mut second = DMatrix::zeros(n, n);
        for (p, wi) in self.pts.iter().zip(&w) {
            let pi = wi / z;
            for a in 0..n {
                mean[a] += pi * p[a];
                for b in 0..n {
                    second[(a, b)] += pi * p[a] * p[b];
                }
            }
        }
        let cov = second - &mean * mean.transpose();
        let grad = DVector::from_column_slice(self.alpha) - self.beta * mean;
        (grad, cov * self.beta)
    }
}

/// Chart data: peak `x*`, `phi(x*)`, Cholesky factor of the covariance.
/// In chart coordinates `y` the log-integrand is `shift + slope.y - beta * lse(offset + rows.y)`.
struct Chart {
    peak: f64,
    det_l: f64,
    shift: f64,
    slope: Vec<f64>,
    offset: Vec<f64>,
    rows: Vec<f64>,
}

impl Chart {
    fn new(f: &LogIntegrand, center: Vec<f64>, peak: f64, l: DMatrix<f64>) -> Self {
        let n = center.len();
        let det_l = (0..n).map(|i| l[(i, i)]).product();
        let dot = |a: &[f64], b: &[f64]| a.iter().zip(b).map(|(x, y)| x * y).sum::<f64>();
        let through_l = |v: &[f64]| (0..n).map(|j| (j..n).map(|i| v[i] * l[(i, j)]).sum::<f64>()).collect::<Vec<_>>();
        let offset = f.pts.iter().zip(&f.lnc).map(|(p, c)| c + dot(p, &center)).collect();
        let rows = f.pts.iter().flat_map(|p| through_l(p)).collect();
        Chart { peak, det_l, shift: dot(f.alpha, &center) - peak, slope: through_l(f.alpha), offset, rows }
    }

    /// Log-integrand at chart point `y`, relative to the peak.
    fn log_value(&self, beta: f64, y: &[f64]) -> f64 {
        let n = y.len();
        let mut m = f64::NEG_INFINITY;
        let mut s = 0.0;
        for (k, b) in self.offset.iter().enumerate() {
            let row = &self.rows[k * n..(k + 1) * n];
            let v = b + row.iter().zip(y).map(|(a, c)| a * c).sum::<f64>();
            if v > m {
                s = s * (m - v).exp() + 1.0;
                m = v;
            } else {
                s += (v - m).exp();
            }
        }
        self.shift + self.slope.iter().zip(y).map(|(a, c)| a * c).sum::<f64>() - beta * (m + s.ln())
    }
}

fn chart(f: &LogIntegrand) -> Result<Chart> {
    let n = f.alpha.len();
    let mut x = vec![0.0; n];
    let mut fx = f.value(&x);
    for _ in 0..200 {
        let (g, h) = f.grad_hess(&x);
        if g.amax() < 1e-13 * (1.0 + f.beta) {
            break;
        }
        let step = h
            .clone()
            .cholesky()
            .ok_or_else(|| Error::NonConvergent("log-integrand is not strictly concave".into()))?
            .solve(&g);
        let mut t = 1.0;
        loop {
            let cand: Vec<f64> = x.iter().zip(step.iter()).map(|(a, s)| a + t * s).collect();
            let fc = f.value(&cand);
            if fc >= fx || t < 1e-12 {
                x = cand;
                fx = fc;
                break;
            }
            t *= 0.5;
        }
    }
    let (g, h) = f.grad_hess(&x);
    if g.amax() > 1e-6 * (1.0 + f.beta) {
        return Err(Error::NonConvergent("no interior maximum: exponent outside the Newton polytope".into()));
    }
    let cov = h.try_inverse().ok_or_else(|| Error::NonConvergent("singular curvature at the peak".into()))?;
    let l = cov.cholesky().ok_or_else(|| Error::NonConvergent("indefinite covariance".into()))?.l();
    Ok(Chart::new(f, x, fx, l))
}

/// `log` of the mapped integrand at `u`, relative to the peak.
fn mapped_log(f: &LogIntegrand, c: &Chart, u: &[f64]) -> f64 {
    let mut y = [0.0; MAX_DIM];
    let mut jac = 0.0;
    for (yi, v) in y.iter_mut().zip(u) {
        *yi = v.sinh();
        jac += v.cosh().ln();
    }
    c.log_value(f.beta, &y[..u.len()]) + jac
}

fn pairwise_sum(mut v: Vec<f64>) -> f64 {
    while v.len() > 1 {
        v = v.chunks(2).map(|c| c.iter().sum()).collect();
    }
    v.first().copied().unwrap_or(0.0)
}

/// Grid sum with spacing `h` on `[-H, H]^N`, `H = n_half * h`; also the largest boundary value.
fn grid_sum(f: &LogIntegrand, c: &Chart, h: f64, n_half: i64) -> (f64, f64, u64) {
    let n = f.alpha.len();
    let side = (2 * n_half + 1) as usize;
    let axis: Vec<(f64, f64)> = (0..side)
        .map(|i| {
            let u = (i as i64 - n_half) as f64 * h;
            (u.sinh(), u.cosh().ln())
        })
        .collect();
    let slices: Vec<(f64, f64)> = (0..side)
        .into_par_iter()
        .map(|i0| {
            let mut idx = [0usize; MAX_DIM];
            idx[0] = i0;
            let mut edge: f64 = 0.0;
            let mut y = [0.0; MAX_DIM];
            let inner = side.pow(n as u32 - 1);
            let mut terms = Vec::with_capacity(inner);
            for _ in 0..inner {
                let mut jac = 0.0;
                for k in 0..n {
                    let (s, l) = axis[idx[k]];
                    y[k] = s;
                    jac += l;
                }
                let v = (c.log_value(f.beta, &y[..n]) + jac).exp();
                terms.push(v);
                if idx[..n].iter().any(|&i| i == 0 || i == side - 1) {
                    edge = edge.max(v);
                }
                for k in (1..n).rev() {
                    idx[k] += 1;
                    if idx[k] < side {
                        break;
                    }
                    idx[k] = 0;
                }
            }
            (pairwise_sum(terms), edge)
        })
        .collect();
    let edge = slices.iter().map(|s| s.1).fold(0.0, f64::max);
    let total = pairwise_sum(slices.into_iter().map(|s| s.0).collect());
    (total * h.powi(n as i32), edge, side.pow(n as u32) as u64)
}

const EDGE_TOLERANCE: f64 = 1e-18;
/// Largest integration dimension the oracle accepts.
const MAX_DIM: usize = 8;

/// Smallest half-width whose boundary values are negligible.
fn truncation(f: &LogIntegrand, c: &Chart) -> f64 {
    let mut half: f64 = 3.0;
    loop {
        let n_half = half.ceil() as i64;
        let (_, edge, _) = grid_sum(f, c, half / n_half as f64, n_half);
        if edge < EDGE_TOLERANCE || half > 12.0 {
            return half;
        }
        half += 0.5;
    }
}

fn integrate(spec: &QuadratureSpec, alpha: &[f64], beta: f64) -> Result<OracleResult> {
    let f = LogIntegrand {
        pts: spec.exponents.iter().map(|e| e.iter().map(|&x| x as f64).collect()).collect(),
        lnc: spec.coefficients.iter().map(|c| c.ln()).collect(),
        alpha,
        beta,
    };
    let c = chart(&f)?;
    let scale = c.peak.exp() * c.det_l;
    let n = alpha.len();
    let method = match spec.method {
        QuadratureMethod::Auto if n <= 3 => QuadratureMethod::TanhSinhTensor,
        QuadratureMethod::Auto => QuadratureMethod::QuasiMonteCarlo,
        m => m,
    };
    let half = truncation(&f, &c);
    match method {
        QuadratureMethod::QuasiMonteCarlo => {
            let (v, e, nodes) = lattice_rule(&f, &c, half);
            Ok(OracleResult { value: v * scale, error: e * scale, method: "quasi-monte-carlo".into(), nodes })
        }
        _ => {
            let max_half_points: i64 = match n {
                1 => 1 << 14,
                2 => 1 << 10,
                _ => 160,
            };
            let mut n_half = (half / 0.5).ceil() as i64;
            let (mut prev, _, mut nodes) = grid_sum(&f, &c, half / n_half as f64, n_half);
            loop {
                n_half *= 2;
                let (cur, _, k) = grid_sum(&f, &c, half / n_half as f64, n_half);
                nodes += k;
                let diff = (cur - prev).abs();
                if diff <= spec.target_tolerance * cur.abs() || n_half * 2 > max_half_points {
                    return Ok(OracleResult {
                        value: cur * scale,
                        error: diff * scale,
                        method: "tanh-sinh-tensor".into(),
                        nodes,
                    });
                }
                prev = cur;
            }
        }
    }
}

const LATTICE_POINTS: u64 = 524_287;
const LATTICE_SHIFTS: usize = 8;
const LATTICE_SEED: u64 = 0x6b7a_2024;

fn bernoulli2(x: f64) -> f64 {
    x * x - x + 1.0 / 6.0
}

fn mulmod(a: u64, b: u64, n: u64) -> u64 {
    ((a as u128 * b as u128) % n as u128) as u64
}

/// Korobov generator `(1, a, a^2, ...)` minimising the `P_2` criterion over seeded candidates.
fn korobov_generator(n: u64, dim: usize) -> Vec<u64> {
    static CACHE: OnceLock<Mutex<HashMap<(u64, usize), Vec<u64>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(z) = cache.lock().expect("generator cache").get(&(n, dim)) {
        return z.clone();
    }
    let mut rng = ChaCha8Rng::seed_from_u64(LATTICE_SEED);
    let candidates: Vec<u64> = (0..48).map(|_| rng.gen_range(2..n - 1)).collect();
    let gen = |a: u64| -> Vec<u64> {
        let mut z = vec![1u64];
        for _ in 1..dim {
            let last = *z.last().unwrap();
            z.push(mulmod(last, a, n));
        }
        z
    };
    let score = |z: &[u64]| -> f64 {
        let tp2 = 2.0 * std::f64::consts::PI * std::f64::consts::PI;
        let terms: Vec<f64> = (0..n)
            .into_par_iter()
            .map(|k| z.iter().map(|&zj| 1.0 + tp2 * bernoulli2(mulmod(k, zj, n) as f64 / n as f64)).product::<f64>())
            .collect();
        pairwise_sum(terms) / n as f64 - 1.0
    };
    let best = candidates
        .iter()
        .map(|&a| {
            let z = gen(a);
            (score(&z), z)
        })
        .min_by(|a, b| a.0.total_cmp(&b.0))
        .map(|(_, z)| z)
        .expect("candidate list is non-empty");
    cache.lock().expect("generator cache").insert((n, dim), best.clone());
    best
}

/// Randomly shifted rank-1 lattice rule on `[-H, H]^N`; mean and standard error over shifts.
fn lattice_rule(f: &LogIntegrand, c: &Chart, half: f64) -> (f64, f64, u64) {
    let n = f.alpha.len();
    let z = korobov_generator(LATTICE_POINTS, n);
    let mut rng = ChaCha8Rng::seed_from_u64(LATTICE_SEED ^ 0x5eed);
    let shifts: Vec<Vec<f64>> = (0..LATTICE_SHIFTS).map(|_| (0..n).map(|_| rng.gen::<f64>()).collect()).collect();
    let vol = (2.0 * half).powi(n as i32);
    let estimates: Vec<f64> = shifts
        .iter()
        .map(|shift| {
            let vals: Vec<f64> = (0..LATTICE_POINTS)
                .into_par_iter()
                .map(|k| {
                    let mut u = [0.0; MAX_DIM];
                    for ((uj, &zj), s) in u.iter_mut().zip(&z).zip(shift) {
                        let t = (mulmod(k, zj, LATTICE_POINTS) as f64 / LATTICE_POINTS as f64 + s).fract();
                        *uj = half * (2.0 * t - 1.0);
                    }
                    mapped_log(f, c, &u[..n]).exp()
                })
                .collect();
            pairwise_sum(vals) / LATTICE_POINTS as f64 * vol
        })
        .collect();
    let r = estimates.len() as f64;
    let mean = estimates.iter().sum::<f64>() / r;
    let var = estimates.iter().map(|e| (e - mean).powi(2)).sum::<f64>() / (r - 1.0);
    (mean, (var / r).sqrt(), LATTICE_POINTS * LATTICE_SHIFTS as u64)
}
