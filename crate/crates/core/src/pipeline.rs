//! End-to-end driver: problem specification in, report out.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::algebra::{rat, GammaFactor, Param, ParamAssignment, ParamLinear};
use crate::error::{Error, Result};
use crate::gkz::{
    default_kappa, deform, fake_exponents, initial_ideal, kernel_lattice, standard_pairs, toric_ideal, AMatrix,
    DeformedPolynomial, FakeExponent, LatticeBasis, MonomialIdeal, StandardPair, TieBreak, ToricIdeal,
};
use crate::graph::{prefactor, symanzik, GraphSpec, Kin, KinematicPolynomial};
use crate::oracle::{
    block_betas, continued_quadrature, deformation_limit_probe, gamma_constant, numeric_constants, Constant,
    OracleResult, ProbeReport, QuadratureSpec, SolutionBundle,
};
use crate::series::{classify, CanonicalSeries, HypergeometricForm};

/// Explicit configuration matrix with its own `kappa`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MatrixSource {
    pub rows: Vec<Vec<i64>>,
    #[serde(default)]
    pub kappa: Option<Vec<ParamLinear>>,
    /// Numeric coefficient values used by `solve` and `verify`.
    #[serde(default)]
    pub coefficients: Option<Vec<f64>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Deformation {
    #[default]
    Auto,
    None,
    /// Exponent vector of the extra monomial.
    Explicit(Vec<u32>),
}

fn default_order() -> u32 {
    30
}

fn default_probe() -> Vec<f64> {
    vec![1e-1, 1e-2, 1e-3]
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProblemSpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub graph: Option<GraphSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub polynomial: Option<KinematicPolynomial>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub matrix: Option<MatrixSource>,
    /// Numbers or parameter expressions; numbers bind `a_i`.
    #[serde(default)]
    pub alpha: Vec<Value>,
    /// Dimension; `beta = d/2`. A number binds `beta`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub d: Option<Value>,
    /// Direct `beta` for polynomial specs.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub beta: Option<Value>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub weight: Option<Vec<i64>>,
    #[serde(default)]
    pub deformation: Deformation,
    #[serde(default = "default_order")]
    pub truncation_order: u32,
    #[serde(default)]
    pub kinematics: BTreeMap<String, f64>,
    /// Extra numeric parameter values, e.g. `{"beta1": 0.7}`.
    #[serde(default)]
    pub parameters: BTreeMap<String, f64>,
    #[serde(default)]
    pub verify: bool,
    #[serde(default)]
    pub tie_break: TieBreak,
    #[serde(default = "default_probe")]
    pub probe_c1: Vec<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tolerance: Option<f64>,
}

impl ProblemSpec {
    pub fn from_json(s: &str) -> Result<Self> {
        let spec: Self = serde_json::from_str(s).map_err(|e| Error::InvalidSpec(e.to_string()))?;
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        let sources = [self.graph.is_some(), self.polynomial.is_some(), self.matrix.is_some()];
        if sources.iter().filter(|s| **s).count() != 1 {
            return Err(Error::InvalidSpec("exactly one of graph, polynomial, matrix is required".into()));
        }
        let nvars = match (&self.graph, &self.polynomial) {
            (Some(g), _) => Some(g.propagators.len()),
            (_, Some(p)) => Some(p.nvars),
            _ => None,
        };
        if let Some(n) = nvars {
            if !self.alpha.is_empty() && self.alpha.len() != n {
                return Err(Error::InvalidSpec(format!("alpha has {} entries for {n} variables", self.alpha.len())));
            }
        }
        if let Some(g) = &self.graph {
            g.validate()?;
        }
        if let Some(m) = &self.matrix {
            AMatrix::new(m.rows.clone())?;
        }
        if self.d.is_some() && self.beta.is_some() {
            return Err(Error::InvalidSpec("give either d or beta".into()));
        }
        Ok(())
    }

    fn tolerance(&self) -> f64 {
        self.tolerance.unwrap_or(1e-10)
    }
}

/// How far `run_until` goes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Stage {
    Symanzik,
    Gkz,
    Series,
    Solve,
    Verify,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StageError {
    pub stage: String,
    pub kind: String,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SeriesReport {
    pub gamma: String,
    pub pair: String,
    pub form: HypergeometricForm,
    pub display: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub constant: Option<ConstantReport>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConstantReport {
    pub provenance: String,
    pub expression: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub value: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct NumericReport {
    pub parameters: BTreeMap<String, f64>,
    pub coefficients: Vec<f64>,
    pub evaluation_weight: Vec<i64>,
    /// `sum K_i phi_i` (at the smallest probe `c1` when deformed).
    pub value: f64,
    pub tail: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub prefactor: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub oracle: Option<OracleResult>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub relative_deviation: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub probe: Option<ProbeReport>,
}

#[derive(Debug, Clone, PartialEq, Default, Serialize)]
pub struct ResultReport {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub u: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub f: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub polynomial: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub prefactor: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub source_codim: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub deformation: Option<String>,
    pub amatrix: Vec<Vec<i64>>,
    pub codim: usize,
    pub lattice: Vec<Vec<i64>>,
    pub toric_ideal: String,
    pub weight: Vec<i64>,
    pub initial_ideal: String,
    pub standard_pairs: Vec<String>,
    pub kappa: Vec<String>,
    pub fake_exponents: Vec<String>,
    pub series: Vec<SeriesReport>,
    pub warnings: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub numeric: Option<NumericReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<StageError>,
}

impl ResultReport {
    pub fn exit_code(&self) -> i32 {
        match &self.error {
            None => 0,
            Some(e) => exit_code_for(&e.kind),
        }
    }
}

pub fn exit_code_for(kind: &str) -> i32 {
    match kind {
        "InvalidSpec" | "Parse" | "DimensionMismatch" | "NonlinearParameter" => 2,
        "NonGenericWeight" => 3,
        "UnderdeterminedPair" => 4,
        "NonConvergent" => 5,
        "DivergentArgument" => 6,
        _ => 1,
    }
}

pub fn format_vector(v: &[ParamLinear]) -> String {
    format!("({})", v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", "))
}

/// Symbolic GKZ data for one weight.
#[derive(Debug, Clone)]
pub struct GkzData {
    pub amatrix: AMatrix,
    pub lattice: LatticeBasis,
    pub toric: ToricIdeal,
    pub weight: Vec<i64>,
    pub initial: MonomialIdeal,
    pub pairs: Vec<StandardPair>,
    pub roots: Vec<FakeExponent>,
    pub warnings: Vec<String>,
}

impl GkzData {
    pub fn series(&self) -> Vec<CanonicalSeries> {
        self.roots.iter().map(|r| CanonicalSeries::new(r.clone(), &self.lattice, &self.weight, &self.amatrix)).collect()
    }
}

/// Toric ideal, initial ideal, standard pairs and fake exponents.
pub fn solve_gkz(a: &AMatrix, kappa: &[ParamLinear], weight: &[i64], tie: TieBreak) -> Result<GkzData> {
    let lattice = kernel_lattice(a);
    let toric = toric_ideal(&lattice, a.ncols());
    gkz_with(a, lattice, toric, kappa, weight, tie)
}

fn gkz_with(
    a: &AMatrix,
    lattice: LatticeBasis,
    toric: ToricIdeal,
    kappa: &[ParamLinear],
    weight: &[i64],
    tie: TieBreak,
) -> Result<GkzData> {
    let initial = initial_ideal(&toric, weight, tie)?;
    let pairs = standard_pairs(&initial);
    let (roots, warnings) = fake_exponents(a, kappa, &pairs)?;
    Ok(GkzData { amatrix: a.clone(), lattice, toric, weight: weight.to_vec(), initial, pairs, roots, warnings })
}

/// `(1, 0, ..., 0)` for deformed systems, `(0, 1, ..., 1)` otherwise.
pub fn default_weight(ncols: usize, deformed: bool) -> Vec<i64> {
    (0..ncols).map(|j| i64::from((j == 0) == deformed)).collect()
}

/// Weight in the opposite chamber of a codimension-one configuration.
fn flipped_weight(lattice: &LatticeBasis, w: &[i64]) -> Option<Vec<i64>> {
    let u = lattice.vectors.first()?;
    let wu: i64 = u.iter().zip(w).map(|(a, b)| a * b).sum();
    let want = if wu >= 0 { -1 } else { 1 };
    let j = u.iter().position(|&x| x.signum() == want)?;
    let mut out = vec![0; w.len()];
    out[j] = 1;
    Some(out)
}

/// `A gamma == kappa` over the parameters.
pub fn check_root(a: &AMatrix, gamma: &[ParamLinear], kappa: &[ParamLinear]) -> bool {
    a.rows.iter().zip(kappa).all(|(row, k)| {
        let mut acc = ParamLinear::zero();
        for (&x, g) in row.iter().zip(gamma) {
            acc.add_scaled(g, &rat(x, 1));
        }
        &acc == k
    })
}

fn parse_linear(v: &Value) -> Result<ParamLinear> {
    match v {
        Value::String(s) => s.parse(),
        Value::Number(n) => format!("{n}").parse(),
        other => Err(Error::InvalidSpec(format!("expected a number or expression, got {other}"))),
    }
}

/// Symbolic `alpha`, `beta` and the numeric bindings they imply.
struct Parameters {
    alpha: Vec<ParamLinear>,
    beta: ParamLinear,
    d: ParamLinear,
    values: ParamAssignment,
    named: BTreeMap<String, f64>,
}

fn parameters(spec: &ProblemSpec, nvars: usize) -> Result<Parameters> {
    let mut values = ParamAssignment::new();
    let mut named = BTreeMap::new();
    let mut alpha = Vec::with_capacity(nvars);
    for i in 0..nvars {
        let sym = ParamLinear::alpha(i as u32 + 1);
        match spec.alpha.get(i) {
            None => alpha.push(sym),
            Some(Value::Number(n)) => {
                let x = n.as_f64().ok_or_else(|| Error::InvalidSpec(format!("bad alpha {n}")))?;
                values.set(Param::Alpha(i as u32 + 1), x);
                named.insert(format!("a{}", i + 1), x);
                alpha.push(sym);
            }
            Some(v) => alpha.push(parse_linear(v)?),
        }
    }
    let half = rat(1, 2);
    let (beta, d) = match (&spec.d, &spec.beta) {
        (Some(Value::Number(n)), _) => {
            let x = n.as_f64().ok_or_else(|| Error::InvalidSpec(format!("bad d {n}")))?;
            values.set(Param::Beta(0), x / 2.0);
            named.insert("beta".into(), x / 2.0);
            (ParamLinear::beta(), ParamLinear::beta().scale(&rat(2, 1)))
        }
        (Some(v), _) => {
            let d = parse_linear(v)?;
            (d.scale(&half), d)
        }
        (None, Some(Value::Number(n))) => {
            let x = n.as_f64().ok_or_else(|| Error::InvalidSpec(format!("bad beta {n}")))?;
            values.set(Param::Beta(0), x);
            named.insert("beta".into(), x);
            (ParamLinear::beta(), ParamLinear::beta().scale(&rat(2, 1)))
        }
        (None, Some(v)) => {
            let b = parse_linear(v)?;
            (b.clone(), b.scale(&rat(2, 1)))
        }
        (None, None) => (ParamLinear::beta(), ParamLinear::beta().scale(&rat(2, 1))),
    };
    for (k, v) in &spec.parameters {
        let p: Param = k.parse()?;
        values.set(p, *v);
        named.insert(k.clone(), *v);
    }
    Ok(Parameters { alpha, beta, d, values, named })
}

/// Runs every stage the spec asks for.
pub fn run(spec: &ProblemSpec) -> ResultReport {
    run_until(spec, if spec.verify { Stage::Verify } else { Stage::Solve })
}

/// Runs the pipeline through `last`; failures are recorded with their stage.
pub fn run_until(spec: &ProblemSpec, last: Stage) -> ResultReport {
    let mut report = ResultReport { name: spec.name.clone(), ..Default::default() };
    let mut stage = "spec";
    if let Err(e) = drive(spec, last, &mut report, &mut stage) {
        report.error = Some(StageError { stage: stage.to_string(), kind: e.kind().to_string(), message: e.to_string() });
    }
    report
}

fn drive(spec: &ProblemSpec, last: Stage, report: &mut ResultReport, stage: &mut &'static str) -> Result<()> {
    spec.validate()?;
    *stage = "symanzik";
    let mut betas_override = None;
    let (poly, params, kappa_override, matrix_coeffs) = if let Some(g) = &spec.graph {
        let s = symanzik(g)?;
        let p = parameters(spec, g.propagators.len())?;
        report.u = Some(s.u.to_string());
        report.f = Some(s.f.to_string());
        report.prefactor = Some(prefactor(&p.alpha, &p.d, g.loops).to_string());
        (Some(s.lee_pomeransky()), p, None, None)
    } else if let Some(poly) = &spec.polynomial {
        (Some(poly.clone()), parameters(spec, poly.nvars)?, None, None)
    } else {
        let m = spec.matrix.as_ref().expect("validated");
        let a = AMatrix::new(m.rows.clone())?;
        let kappa = m.kappa.clone().unwrap_or_else(|| default_kappa(a.nrows()));
        if kappa.len() != a.nrows() {
            return Err(Error::DimensionMismatch(format!("kappa has {} entries for {} rows", kappa.len(), a.nrows())));
        }
        betas_override = Some(block_betas(&a, &kappa));
        (None, parameters(spec, 0)?, Some((a, kappa)), m.coefficients.clone())
    };
    if let Some(p) = &poly {
        report.polynomial = Some(p.to_string());
    }
    if last == Stage::Symanzik {
        return Ok(());
    }

    *stage = "deformation";
    let deformed = match &poly {
        None => None,
        Some(p) => {
            let source = crate::gkz::toric_matrix(&p.exponents())?;
            report.source_codim = Some(source.codim());
            let d = match &spec.deformation {
                Deformation::None => DeformedPolynomial::undeformed(p.clone()),
                Deformation::Auto => match deform(p) {
                    Ok(d) => d,
                    Err(e) => {
                        report.warnings.push(format!("{e}; continuing undeformed"));
                        DeformedPolynomial::undeformed(p.clone())
                    }
                },
                Deformation::Explicit(v) => {
                    if v.len() != p.nvars {
                        return Err(Error::DimensionMismatch("explicit deformation exponent length".into()));
                    }
                    DeformedPolynomial { poly: p.clone(), deformation: Some(v.clone()) }
                }
            };
            report.deformation = Some(match &d.deformation {
                None => "none".into(),
                Some(v) => format!("c1{}", monomial_suffix(v)),
            });
            Some(d)
        }
    };

    *stage = "gkz";
    let (a, kappa) = match (&deformed, kappa_override) {
        (Some(d), _) => {
            let mut k = vec![-params.beta.clone()];
            k.extend(params.alpha.iter().map(|x| -x.clone()));
            (d.matrix()?, k)
        }
        (None, Some(ak)) => ak,
        _ => unreachable!("one source is present"),
    };
    let betas = betas_override.unwrap_or_else(|| vec![params.beta.clone()]);
    report.amatrix = a.rows.clone();
    report.codim = a.codim();
    report.kappa = kappa.iter().map(|k| k.to_string()).collect();
    let lattice = kernel_lattice(&a);
    let toric = toric_ideal(&lattice, a.ncols());
    report.lattice = lattice.vectors.clone();
    report.toric_ideal = toric.to_string();
    let weight = match &spec.weight {
        Some(w) => {
            if w.len() != a.ncols() {
                return Err(Error::InvalidSpec(format!("weight has {} entries for {} terms", w.len(), a.ncols())));
            }
            w.clone()
        }
        None => default_weight(a.ncols(), deformed.as_ref().is_some_and(|d| d.offset() == 1)),
    };
    report.weight = weight.clone();
    let gkz = gkz_with(&a, lattice, toric, &kappa, &weight, spec.tie_break)?;
    report.initial_ideal = gkz.initial.to_string();
    report.standard_pairs = gkz.pairs.iter().map(|p| p.to_string()).collect();
    report.warnings.extend(gkz.warnings.iter().cloned());
    for r in &gkz.roots {
        if !check_root(&a, &r.gamma, &kappa) {
            return Err(Error::InvalidSpec(format!("root {} violates A gamma = kappa", format_vector(&r.gamma))));
        }
    }
    report.fake_exponents = gkz.roots.iter().map(|r| format_vector(&r.gamma)).collect();
    if last == Stage::Gkz {
        return Ok(());
    }

    *stage = "series";
    let series = gkz.series();
    report.series = series
        .iter()
        .map(|s| {
            let form = classify(s);
            SeriesReport {
                gamma: format_vector(s.gamma()),
                pair: s.gamma.pair.to_string(),
                display: if s.rank() == 0 {
                    format!("c^{}", format_vector(s.gamma()))
                } else {
                    format!("c^{} * {form}", format_vector(s.gamma()))
                },
                form,
                constant: None,
            }
        })
        .collect();
    if last == Stage::Series {
        return Ok(());
    }

    *stage = "constants";
    let mut constants: Vec<Option<GammaFactor>> = Vec::new();
    for s in &series {
        match gamma_constant(&a, &s.gamma, &betas) {
            Ok(k) => constants.push(Some(k)),
            Err(Error::NoZeroComponent(m)) => {
                report.warnings.push(format!("{m}; needs a numeric solve"));
                constants.push(None);
            }
            Err(e) => return Err(e),
        }
    }
    for (r, k) in report.series.iter_mut().zip(&constants) {
        if let Some(k) = k {
            r.constant = Some(ConstantReport {
                provenance: "gamma-prescription".into(),
                expression: k.to_string(),
                value: k.eval(&params.values).ok(),
            });
        }
    }

    *stage = "evaluate";
    let coeffs: Vec<f64> = match (&poly, &matrix_coeffs) {
        (Some(p), _) => {
            if p.terms.iter().any(|t| t.coeff.invariants().next().is_some()) && spec.kinematics.is_empty() {
                return Ok(());
            }
            p.eval_coefficients(&spec.kinematics)?
        }
        (None, Some(c)) => c.clone(),
        (None, None) => return Ok(()),
    };
    if !kappa.iter().all(|k| k.eval(&params.values).is_ok()) {
        return Ok(());
    }
    let offset = deformed.as_ref().map_or(0, |d| d.offset());
    let order = spec.truncation_order;
    let mut gkz = gkz;
    let mut series = series;
    let mut eval_coeffs = coeffs.clone();
    if offset == 1 {
        eval_coeffs.insert(0, *spec.probe_c1.last().unwrap_or(&1e-3));
    }
    let mut bundle = build_bundle(&a, &series, &constants, &params, &eval_coeffs, spec)?;
    let first = bundle.evaluate(&params.values, &eval_coeffs, order);
    let (value, tail) = match first {
        Err(Error::DivergentArgument(m)) if a.codim() == 1 => {
            let w = flipped_weight(&gkz.lattice, &gkz.weight).ok_or(Error::DivergentArgument(m.clone()))?;
            report.warnings.push(format!("{m}; evaluating in the chamber of w = {w:?}"));
            gkz = gkz_with(&a, gkz.lattice.clone(), gkz.toric.clone(), &kappa, &w, TieBreak::Grevlex)?;
            series = gkz.series();
            constants = series.iter().map(|s| gamma_constant(&a, &s.gamma, &betas).ok()).collect();
            bundle = build_bundle(&a, &series, &constants, &params, &eval_coeffs, spec)?;
            bundle.evaluate(&params.values, &eval_coeffs, order)?
        }
        other => other?,
    };
    let mut numeric = NumericReport {
        parameters: params.named.clone(),
        coefficients: coeffs.clone(),
        evaluation_weight: gkz.weight.clone(),
        value,
        tail,
        prefactor: None,
        oracle: None,
        relative_deviation: None,
        probe: None,
    };
    if let Some(g) = &spec.graph {
        numeric.prefactor = prefactor(&params.alpha, &params.d, g.loops).eval(&params.values).ok();
    }
    if last < Stage::Verify {
        report.numeric = Some(numeric);
        return Ok(());
    }

    *stage = "verify";
    let Some(qspec) = oracle_spec(&a, offset, &coeffs, &kappa, &params, spec) else {
        report.warnings.push("oracle needs a single homogeneity block; skipped".into());
        report.numeric = Some(numeric);
        return Ok(());
    };
    let oracle = continued_quadrature(&qspec)?;
    numeric.relative_deviation = Some(((numeric.value - oracle.value) / oracle.value).abs());
    if offset == 1 {
        *stage = "probe";
        let probe = deformation_limit_probe(&bundle, &params.values, &coeffs, &spec.probe_c1, oracle.value, order)?;
        if !probe.monotone {
            report.warnings.push("deformation probe is not monotone".into());
        }
        numeric.probe = Some(probe);
    }
    numeric.oracle = Some(oracle);
    report.numeric = Some(numeric);
    Ok(())
}

fn monomial_suffix(v: &[u32]) -> String {
    v.iter()
        .enumerate()
        .filter(|(_, e)| **e > 0)
        .map(|(i, e)| if *e == 1 { format!("*z{}", i + 1) } else { format!("*z{}^{e}", i + 1) })
        .collect()
}

/// Gamma-prescription constants where available, a numeric solve otherwise.
fn build_bundle(
    a: &AMatrix,
    series: &[CanonicalSeries],
    constants: &[Option<GammaFactor>],
    params: &Parameters,
    coeffs: &[f64],
    spec: &ProblemSpec,
) -> Result<SolutionBundle> {
    if constants.iter().all(Option::is_some) {
        let ks = constants.iter().flatten().map(|k| Constant::GammaPrescription { factor: k.clone() }).collect();
        return SolutionBundle::new(series.to_vec(), ks);
    }
    let alpha: Vec<f64> = params.alpha.iter().map(|x| x.eval(&params.values)).collect::<Result<_>>()?;
    let beta = params.beta.eval(&params.values)?;
    if !a.has_ones_row() || block_betas(a, &default_kappa(a.nrows())).len() != 1 {
        return Err(Error::NoZeroComponent("numeric constants need a single homogeneity block".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let samples: Vec<Vec<f64>> = (0..series.len() + 2)
        .map(|k| coeffs.iter().map(|c| if k == 0 { *c } else { c * rng.gen_range(0.8..1.25) }).collect())
        .collect();
    let solved =
        numeric_constants(series, &params.values, &alpha, beta, &samples, spec.truncation_order, spec.tolerance())?;
    let ks = solved.constants.into_iter().map(|value| Constant::NumericSolve { value }).collect();
    SolutionBundle::new(series.to_vec(), ks)
}

/// Quadrature input for the undeformed integral, when it has the single-block form.
fn oracle_spec(
    a: &AMatrix,
    offset: usize,
    coeffs: &[f64],
    kappa: &[ParamLinear],
    params: &Parameters,
    spec: &ProblemSpec,
) -> Option<QuadratureSpec> {
    if block_betas(a, kappa).len() != 1 || !a.has_ones_row() {
        return None;
    }
    let exponents: Vec<Vec<u32>> =
        a.exponent_columns().into_iter().skip(offset).map(|c| c.iter().map(|&x| x as u32).collect()).collect();
    let values: Vec<f64> = kappa.iter().map(|k| k.eval(&params.values).map(|v| -v)).collect::<Result<_>>().ok()?;
    let mut q = QuadratureSpec::new(exponents, coeffs.to_vec(), values[1..].to_vec(), values[0]);
    q.target_tolerance = spec.tolerance();
    Some(q)
}

fn kin(pairs: &[(&str, i64, i64)]) -> Kin {
    let mut k = Kin::zero();
    for (name, p, q) in pairs {
        let term = if name.is_empty() { Kin::one() } else { Kin::var(name) };
        k = k.add(&term.scale(&rat(*p, *q)));
    }
    k
}

fn graph_json(v: serde_json::Value) -> GraphSpec {
    serde_json::from_value(v).expect("built-in graph is well formed")
}

fn numbers(v: &[f64]) -> Vec<Value> {
    v.iter().map(|x| Value::from(*x)).collect()
}

fn base(name: &str, weight: Vec<i64>) -> ProblemSpec {
    ProblemSpec {
        name: Some(name.into()),
        graph: None,
        polynomial: None,
        matrix: None,
        alpha: Vec::new(),
        d: None,
        beta: None,
        weight: Some(weight),
        deformation: Deformation::Auto,
        truncation_order: default_order(),
        kinematics: BTreeMap::new(),
        parameters: BTreeMap::new(),
        verify: false,
        tie_break: TieBreak::Grevlex,
        probe_c1: default_probe(),
        tolerance: None,
    }
}

/// Built-in examples with their weights and a numeric evaluation point.
pub fn fixtures() -> Vec<(String, ProblemSpec)> {
    let mut out = Vec::new();
    let zero = Kin::zero();

    let mut s = base("2f1-double", vec![0, 1, 1, 1]);
    s.matrix = Some(MatrixSource {
        rows: vec![vec![1, 1, 1, 1], vec![0, 1, 0, 1], vec![0, 0, 1, 1]],
        kappa: None,
        coefficients: Some(vec![1.0, 1.0, 1.0, 2.0]),
    });
    s.parameters = [("a1", 0.3), ("a2", 0.4), ("beta", 1.1)].iter().map(|(k, v)| (k.to_string(), *v)).collect();
    out.push(s);

    let mut s = base("2f1-single", vec![0, 1, 1, 1]);
    s.matrix = Some(MatrixSource {
        rows: vec![vec![1, 1, 0, 0], vec![0, 0, 1, 1], vec![0, 1, 0, 1]],
        kappa: Some(vec![
            "-beta1".parse().expect("literal"),
            "-beta2".parse().expect("literal"),
            "-a1".parse().expect("literal"),
        ]),
        coefficients: Some(vec![1.0, 1.0, 1.0, 2.0]),
    });
    s.parameters =
        [("a1", 0.4), ("beta1", 0.7), ("beta2", 1.2)].iter().map(|(k, v)| (k.to_string(), *v)).collect();
    out.push(s);

    // D1 = k^2, D2 = (k - p)^2
    let bubble = |j2: Kin, pp: Kin| {
        graph_json(serde_json::json!({
            "L": 1, "E": 1,
            "propagators": [
                {"M": [[1]], "Q": [[0]], "J": Kin::zero()},
                {"M": [[1]], "Q": [[-1]], "J": j2},
            ],
            "scalar_products": [[pp]],
        }))
    };
    let mut s = base("massless-bubble", vec![1, 0, 0, 0]);
    s.graph = Some(bubble(kin(&[("s", 1, 1)]), kin(&[("s", 1, 1)])));
    s.alpha = numbers(&[0.9, 0.9]);
    s.d = Some(Value::from(2.0));
    s.kinematics.insert("s".into(), 1.0);
    out.push(s);

    // D1 = (k - p1)^2, D2 = (k + p2)^2, D3 = k^2 with p1^2 = p2^2 = 0
    let triangle = |p1: Kin, p2: Kin, p12: Kin| {
        graph_json(serde_json::json!({
            "L": 1, "E": 2,
            "propagators": [
                {"M": [[1]], "Q": [[-1, 0]], "J": p1.clone()},
                {"M": [[1]], "Q": [[0, 1]], "J": p2.clone()},
                {"M": [[1]], "Q": [[0, 0]], "J": Kin::zero()},
            ],
            "scalar_products": [[p1, p12.clone()], [p12, p2]],
        }))
    };
    let mut s = base("triangle-1scale", vec![1, 0, 0, 0, 0]);
    s.graph = Some(triangle(zero.clone(), zero.clone(), kin(&[("s", 1, 2)])));
    s.alpha = numbers(&[0.9, 0.9, 0.3]);
    s.d = Some(Value::from(2.6));
    s.kinematics.insert("s".into(), 1.0);
    out.push(s);

    // D1 = (k1 - p)^2, D2 = (k2 - k1)^2 + J2, D3 = k2^2
    let two_loop = |j2: Kin, pp: Kin| {
        graph_json(serde_json::json!({
            "L": 2, "E": 1,
            "propagators": [
                {"M": [[1, 0], [0, 0]], "Q": [[-1], [0]], "J": pp.clone()},
                {"M": [[1, -1], [-1, 1]], "Q": [[0], [0]], "J": j2},
                {"M": [[0, 0], [0, 1]], "Q": [[0], [0]], "J": Kin::zero()},
            ],
            "scalar_products": [[pp]],
        }))
    };
    let mut s = base("cantaloupe-2", vec![1, 0, 0, 0, 0]);
    s.graph = Some(two_loop(zero.clone(), kin(&[("s", 1, 1)])));
    s.alpha = numbers(&[0.9, 0.9, 0.9]);
    s.d = Some(Value::from(2.0));
    s.kinematics.insert("s".into(), 1.0);
    out.push(s);

    let mut s = base("one-mass-bubble", vec![0, 1, 1, 1]);
    s.graph = Some(bubble(kin(&[("s", 1, 1), ("m2", 1, 1)]), kin(&[("s", 1, 1)])));
    s.alpha = numbers(&[0.3, 0.4]);
    s.d = Some(Value::from(3.8));
    s.kinematics = [("s".to_string(), 0.5), ("m2".to_string(), 1.0)].into_iter().collect();
    out.push(s);

    // on shell: p^2 = -m^2
    let mut s = base("sunset-1mass", vec![0, 1, 1, 1, 1]);
    s.graph = Some(two_loop(kin(&[("m2", 1, 1)]), kin(&[("m2", -1, 1)])));
    s.alpha = numbers(&[0.3, 0.35, 0.4]);
    s.d = Some(Value::from(3.8));
    s.kinematics.insert("m2".into(), 1.0);
    out.push(s);

    // D1 = k2^2, D2 = (k2 - p3)^2, D3 = (k2 - k1)^2, D4 = (k1 - p1)^2
    let mut s = base("party-hat", vec![0, 1, 1, 1, 1, 1]);
    s.graph = Some(graph_json(serde_json::json!({
        "L": 2, "E": 2,
        "propagators": [
            {"M": [[0, 0], [0, 1]], "Q": [[0, 0], [0, 0]], "J": Kin::zero()},
            {"M": [[0, 0], [0, 1]], "Q": [[0, 0], [0, -1]], "J": Kin::zero()},
            {"M": [[1, -1], [-1, 1]], "Q": [[0, 0], [0, 0]], "J": Kin::zero()},
            {"M": [[1, 0], [0, 0]], "Q": [[-1, 0], [0, 0]], "J": Kin::zero()},
        ],
        "scalar_products": [[Kin::zero(), kin(&[("s", -1, 2)])], [kin(&[("s", -1, 2)]), Kin::zero()]],
    })));
    s.alpha = numbers(&[0.3, 0.35, 0.4, 0.45]);
    s.d = Some(Value::from(3.8));
    s.kinematics.insert("s".into(), 0.5);
    out.push(s);

    // D1 = (k - p1)^2, D2 = (k + p2 + p3)^2, D3 = (k + p2)^2, D4 = k^2, massless legs
    let mut s = base("box", vec![0, 1, 0, 0, 0, 0]);
    s.graph = Some(graph_json(serde_json::json!({
        "L": 1, "E": 3,
        "propagators": [
            {"M": [[1]], "Q": [[-1, 0, 0]], "J": Kin::zero()},
            {"M": [[1]], "Q": [[0, 1, 1]], "J": kin(&[("t", 1, 1)])},
            {"M": [[1]], "Q": [[0, 1, 0]], "J": Kin::zero()},
            {"M": [[1]], "Q": [[0, 0, 0]], "J": Kin::zero()},
        ],
        "scalar_products": [
            [Kin::zero(), kin(&[("s", 1, 2)]), kin(&[("s", -1, 2), ("t", -1, 2)])],
            [kin(&[("s", 1, 2)]), Kin::zero(), kin(&[("t", 1, 2)])],
            [kin(&[("s", -1, 2), ("t", -1, 2)]), kin(&[("t", 1, 2)]), Kin::zero()],
        ],
    })));
    s.alpha = numbers(&[0.31, 0.27, 0.29, 0.33]);
    s.d = Some(Value::from(3.8));
    s.kinematics = [("s".to_string(), 0.3), ("t".to_string(), 1.0)].into_iter().collect();
    out.push(s);

    let mut s = base("triangle-3scale", vec![0, 0, 1, 0, 0, 0]);
    s.graph = Some(triangle(
        kin(&[("s1", 1, 1)]),
        kin(&[("s2", 1, 1)]),
        kin(&[("s3", 1, 2), ("s1", -1, 2), ("s2", -1, 2)]),
    ));
    s.alpha = numbers(&[0.3, 0.4, 0.5]);
    s.d = Some(Value::from(3.8));
    s.kinematics = [("s1".to_string(), 0.1), ("s2".to_string(), 1.0), ("s3".to_string(), 0.1)].into_iter().collect();
    out.push(s);

    out.into_iter().map(|s| (s.name.clone().expect("fixture name"), s)).collect()
}

pub fn fixture(name: &str) -> Option<ProblemSpec> {
    fixtures().into_iter().find(|(n, _)| n == name).map(|(_, s)| s)
}
