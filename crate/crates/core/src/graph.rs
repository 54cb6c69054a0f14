//! Propagator data, Symanzik polynomials and the Lee-Pomeransky polynomial.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::algebra::param::rational_serde;
use crate::algebra::{format_rational, rat_int, rat_to_f64, GammaFactor, ParamLinear, Rational};
use crate::error::{Error, Result};

type InvMono = Vec<(String, u32)>;

/// Polynomial in the kinematic invariants with rational coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Kin {
    terms: BTreeMap<InvMono, Rational>,
}

impl Kin {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: Rational) -> Self {
        let mut k = Self::zero();
        if !c.is_zero() {
            k.terms.insert(Vec::new(), c);
        }
        k
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn var(name: &str) -> Self {
        let mut k = Self::zero();
        k.terms.insert(vec![(name.to_string(), 1)], Rational::one());
        k
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn as_constant(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => self.terms.get(&Vec::new()).cloned(),
            _ => None,
        }
    }

    pub fn invariants(&self) -> impl Iterator<Item = &str> {
        self.terms.keys().flat_map(|m| m.iter().map(|(n, _)| n.as_str()))
    }

    fn insert(&mut self, m: InvMono, c: Rational) {
        let e = self.terms.entry(m.clone()).or_insert_with(Rational::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn add(&self, other: &Kin) -> Kin {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.insert(m.clone(), c.clone());
        }
        out
    }

    pub fn scale(&self, s: &Rational) -> Kin {
        let mut out = Kin::zero();
        for (m, c) in &self.terms {
            out.insert(m.clone(), c * s);
        }
        out
    }

    pub fn mul(&self, other: &Kin) -> Kin {
        let mut out = Kin::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                let mut map: BTreeMap<String, u32> = m1.iter().cloned().collect();
                for (n, e) in m2 {
                    *map.entry(n.clone()).or_insert(0) += e;
                }
                out.insert(map.into_iter().collect(), c1 * c2);
            }
        }
        out
    }

    pub fn eval(&self, values: &BTreeMap<String, f64>) -> Result<f64> {
        let mut v = 0.0;
        for (m, c) in &self.terms {
            let mut t = rat_to_f64(c);
            for (n, e) in m {
                let x = values.get(n).ok_or_else(|| Error::UnboundParameter(n.clone()))?;
                t *= x.powi(*e as i32);
            }
            v += t;
        }
        Ok(v)
    }

    fn parse_mono(key: &str) -> Result<InvMono> {
        let key = key.trim();
        if key == "1" {
            return Ok(Vec::new());
        }
        let mut map: BTreeMap<String, u32> = BTreeMap::new();
        for factor in key.split('*') {
            let factor = factor.trim();
            let (name, exp) = match factor.split_once('^') {
                Some((n, e)) => (n.trim(), e.trim().parse::<u32>().map_err(|_| Error::Parse(format!("bad exponent in `{key}`")))?),
                None => (factor, 1),
            };
            let valid = name.chars().next().is_some_and(|c| c.is_ascii_alphabetic() || c == '_')
                && name.chars().all(|c| c.is_ascii_alphanumeric() || c == '_');
            if !valid {
                return Err(Error::Parse(format!("bad invariant monomial `{key}`")));
            }
            *map.entry(name.to_string()).or_insert(0) += exp;
        }
        Ok(map.into_iter().filter(|(_, e)| *e > 0).collect())
    }

    fn mono_key(m: &InvMono) -> String {
        if m.is_empty() {
            return "1".into();
        }
        m.iter()
            .map(|(n, e)| if *e == 1 { n.clone() } else { format!("{n}^{e}") })
            .collect::<Vec<_>>()
            .join("*")
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }
}

impl fmt::Display for Kin {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut ordered: Vec<_> = self.terms.iter().filter(|(m, _)| !m.is_empty()).collect();
        ordered.extend(self.terms.iter().filter(|(m, _)| m.is_empty()));
        for (i, (m, c)) in ordered.into_iter().enumerate() {
            let mag = c.abs();
            let body = match (m.is_empty(), mag.is_one()) {
                (true, _) => format_rational(&mag),
                (false, true) => Kin::mono_key(m),
                (false, false) => format!("{}*{}", format_rational(&mag), Kin::mono_key(m)),
            };
            match (i, c.is_negative()) {
                (0, true) => write!(f, "-{body}")?,
                (0, false) => write!(f, "{body}")?,
                (_, true) => write!(f, " - {body}")?,
                (_, false) => write!(f, " + {body}")?,
            }
        }
        Ok(())
    }
}

impl Serialize for Kin {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let map: serde_json::Map<String, serde_json::Value> = self
            .terms
            .iter()
            .map(|(m, c)| {
                let v = match (c.is_integer(), c.numer().to_i64()) {
                    (true, Some(i)) => serde_json::Value::from(i),
                    _ => serde_json::Value::from(format_rational(c)),
                };
                (Kin::mono_key(m), v)
            })
            .collect();
        map.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Kin {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v = serde_json::Value::deserialize(d)?;
        let mut k = Kin::zero();
        match v {
            serde_json::Value::Object(map) => {
                for (key, val) in map {
                    let m = Kin::parse_mono(&key).map_err(serde::de::Error::custom)?;
                    let c = rational_serde::from_json(&val).map_err(serde::de::Error::custom)?;
                    k.insert(m, c);
                }
            }
            serde_json::Value::Null => {}
            other => {
                let c = rational_serde::from_json(&other).map_err(serde::de::Error::custom)?;
                k.insert(Vec::new(), c);
            }
        }
        Ok(k)
    }
}

/// One monomial `coeff * z^exponents`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct KinTerm {
    pub exponents: Vec<u32>,
    pub coeff: Kin,
}

/// Polynomial in Feynman parameters with invariant-valued coefficients,
/// kept in graded-lex order (degree ascending, then `z1 > z2 > ...`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KinematicPolynomial {
    pub nvars: usize,
    pub terms: Vec<KinTerm>,
}

fn graded_lex_key(e: &[u32]) -> (u32, std::cmp::Reverse<Vec<u32>>) {
    (e.iter().sum(), std::cmp::Reverse(e.to_vec()))
}

impl KinematicPolynomial {
    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (Vec<u32>, Kin)>) -> Result<Self> {
        let mut map: BTreeMap<Vec<u32>, Kin> = BTreeMap::new();
        for (e, c) in terms {
            if e.len() != nvars {
                return Err(Error::DimensionMismatch(format!("exponent {e:?} in {nvars} variables")));
            }
            let slot = map.entry(e).or_default();
            *slot = slot.add(&c);
        }
        let mut terms: Vec<KinTerm> = map
            .into_iter()
            .filter(|(_, c)| !c.is_zero())
            .map(|(exponents, coeff)| KinTerm { exponents, coeff })
            .collect();
        terms.sort_by(|a, b| graded_lex_key(&a.exponents).cmp(&graded_lex_key(&b.exponents)));
        Ok(Self { nvars, terms })
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        let all = self.terms.iter().chain(&other.terms).map(|t| (t.exponents.clone(), t.coeff.clone()));
        Self::from_terms(self.nvars, all)
    }

    pub fn exponents(&self) -> Vec<Vec<u32>> {
        self.terms.iter().map(|t| t.exponents.clone()).collect()
    }

    pub fn min_degree(&self) -> u32 {
        self.terms.iter().map(|t| t.exponents.iter().sum()).min().unwrap_or(0)
    }

    pub fn is_homogeneous(&self, degree: u32) -> bool {
        self.terms.iter().all(|t| t.exponents.iter().sum::<u32>() == degree)
    }

    pub fn eval_coefficients(&self, values: &BTreeMap<String, f64>) -> Result<Vec<f64>> {
        self.terms.iter().map(|t| t.coeff.eval(values)).collect()
    }
}

impl fmt::Display for KinematicPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, t) in self.terms.iter().enumerate() {
            let mono: Vec<String> = t
                .exponents
                .iter()
                .enumerate()
                .filter(|(_, e)| **e > 0)
                .map(|(j, e)| if *e == 1 { format!("z{}", j + 1) } else { format!("z{}^{e}", j + 1) })
                .collect();
            let coeff = t.coeff.to_string();
            let piece = match (mono.is_empty(), t.coeff.as_constant()) {
                (true, _) if t.coeff.term_count() == 1 => coeff,
                (true, _) => format!("({coeff})"),
                (false, Some(c)) if c.is_one() => mono.join("*"),
                (false, Some(c)) if c == -Rational::one() => format!("-{}", mono.join("*")),
                (false, Some(_)) => format!("{coeff}*{}", mono.join("*")),
                (false, None) if t.coeff.term_count() == 1 => format!("{coeff}*{}", mono.join("*")),
                (false, None) => format!("({coeff})*{}", mono.join("*")),
            };
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{piece}")?;
        }
        Ok(())
    }
}

impl Serialize for KinematicPolynomial {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.terms.serialize(s)
    }
}

impl<'de> Deserialize<'de> for KinematicPolynomial {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let terms = Vec::<KinTerm>::deserialize(d)?;
        let nvars = terms.first().map(|t| t.exponents.len()).unwrap_or(0);
        KinematicPolynomial::from_terms(nvars, terms.into_iter().map(|t| (t.exponents, t.coeff)))
            .map_err(serde::de::Error::custom)
    }
}

mod rational_matrix {
    use super::*;

    pub fn serialize<S: Serializer>(m: &[Vec<Rational>], s: S) -> std::result::Result<S::Ok, S::Error> {
        let v: Vec<Vec<serde_json::Value>> = m
            .iter()
            .map(|row| {
                row.iter()
                    .map(|c| match (c.is_integer(), c.numer().to_i64()) {
                        (true, Some(i)) => serde_json::Value::from(i),
                        _ => serde_json::Value::from(format_rational(c)),
                    })
                    .collect()
            })
            .collect();
        v.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Vec<Vec<Rational>>, D::Error> {
        let v = Vec::<Vec<serde_json::Value>>::deserialize(d)?;
        v.iter()
            .map(|row| row.iter().map(rational_serde::from_json).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()
            .map_err(serde::de::Error::custom)
    }
}

/// `D_i = M_i k.k + 2 Q_i k.p + J_i` with loop momenta `k` and external momenta `p`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Propagator {
    #[serde(rename = "M", with = "rational_matrix")]
    pub m: Vec<Vec<Rational>>,
    #[serde(rename = "Q", with = "rational_matrix", default)]
    pub q: Vec<Vec<Rational>>,
    #[serde(rename = "J", default)]
    pub j: Kin,
}

/// Loop count, external-momentum count, propagators and the Euclidean Gram
/// matrix of external momenta expressed in invariants.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GraphSpec {
    #[serde(rename = "L")]
    pub loops: usize,
    #[serde(rename = "E")]
    pub externals: usize,
    pub propagators: Vec<Propagator>,
    #[serde(default)]
    pub invariants: Vec<String>,
    #[serde(default)]
    pub scalar_products: Vec<Vec<Kin>>,
}

impl GraphSpec {
    pub fn validate(&self) -> Result<()> {
        let (l, e) = (self.loops, self.externals);
        if self.propagators.is_empty() {
            return Err(Error::InvalidSpec("no propagators".into()));
        }
        if l == 0 {
            return Err(Error::InvalidSpec("L must be positive".into()));
        }
        for (i, p) in self.propagators.iter().enumerate() {
            let i = i + 1;
            if p.m.len() != l || p.m.iter().any(|r| r.len() != l) {
                return Err(Error::DimensionMismatch(format!("M_{i} must be {l}x{l}")));
            }
            for r in 0..l {
                for c in 0..r {
                    if p.m[r][c] != p.m[c][r] {
                        return Err(Error::InvalidSpec(format!("M_{i} is not symmetric")));
                    }
                }
            }
            let q_ok = if e == 0 {
                p.q.is_empty() || (p.q.len() == l && p.q.iter().all(|r| r.is_empty()))
            } else {
                p.q.len() == l && p.q.iter().all(|r| r.len() == e)
            };
            if !q_ok {
                return Err(Error::DimensionMismatch(format!("Q_{i} must be {l}x{e}")));
            }
        }
        if e > 0 {
            let sp = &self.scalar_products;
            if sp.len() != e || sp.iter().any(|r| r.len() != e) {
                return Err(Error::DimensionMismatch(format!("scalar_products must be {e}x{e}")));
            }
            for r in 0..e {
                for c in 0..r {
                    if sp[r][c] != sp[c][r] {
                        return Err(Error::InvalidSpec("scalar_products is not symmetric".into()));
                    }
                }
            }
        }
        if !self.invariants.is_empty() {
            let used = self
                .propagators
                .iter()
                .flat_map(|p| p.j.invariants().map(str::to_string).collect::<Vec<_>>())
                .chain(self.scalar_products.iter().flatten().flat_map(|k| k.invariants().map(str::to_string).collect::<Vec<_>>()));
            for name in used {
                if !self.invariants.contains(&name) {
                    return Err(Error::InvalidSpec(format!("undeclared invariant `{name}`")));
                }
            }
        }
        Ok(())
    }
}

type ZPoly = BTreeMap<Vec<u32>, Kin>;

fn padd(a: &ZPoly, b: &ZPoly) -> ZPoly {
    let mut out = a.clone();
    for (e, c) in b {
        let slot = out.entry(e.clone()).or_default();
        *slot = slot.add(c);
        if slot.is_zero() {
            out.remove(e);
        }
    }
    out
}

fn pscale(a: &ZPoly, s: &Kin) -> ZPoly {
    let mut out = ZPoly::new();
    for (e, c) in a {
        let p = c.mul(s);
        if !p.is_zero() {
            out.insert(e.clone(), p);
        }
    }
    out
}

fn pmul(a: &ZPoly, b: &ZPoly) -> ZPoly {
    let mut out = ZPoly::new();
    for (e1, c1) in a {
        for (e2, c2) in b {
            let e: Vec<u32> = e1.iter().zip(e2).map(|(x, y)| x + y).collect();
            let slot = out.entry(e.clone()).or_default();
            *slot = slot.add(&c1.mul(c2));
            if slot.is_zero() {
                out.remove(&e);
            }
        }
    }
    out
}

fn pneg(a: &ZPoly) -> ZPoly {
    pscale(a, &Kin::constant(-Rational::one()))
}

fn det(m: &[Vec<ZPoly>], nvars: usize) -> ZPoly {
    let n = m.len();
    if n == 0 {
        let mut one = ZPoly::new();
        one.insert(vec![0; nvars], Kin::one());
        return one;
    }
    if n == 1 {
        return m[0][0].clone();
    }
    let mut acc = ZPoly::new();
    for c in 0..n {
        if m[0][c].is_empty() {
            continue;
        }
        let minor: Vec<Vec<ZPoly>> = m[1..]
            .iter()
            .map(|row| row.iter().enumerate().filter(|(j, _)| *j != c).map(|(_, x)| x.clone()).collect())
            .collect();
        let term = pmul(&m[0][c], &det(&minor, nvars));
        acc = if c % 2 == 0 { padd(&acc, &term) } else { padd(&acc, &pneg(&term)) };
    }
    acc
}

fn minor(m: &[Vec<ZPoly>], row: usize, col: usize) -> Vec<Vec<ZPoly>> {
    m.iter()
        .enumerate()
        .filter(|(r, _)| *r != row)
        .map(|(_, r)| r.iter().enumerate().filter(|(c, _)| *c != col).map(|(_, x)| x.clone()).collect())
        .collect()
}

/// The first and second Symanzik polynomials.
#[derive(Debug, Clone, PartialEq)]
pub struct Symanzik {
    pub u: KinematicPolynomial,
    pub f: KinematicPolynomial,
}

impl Symanzik {
    /// `G = U + F`.
    pub fn lee_pomeransky(&self) -> KinematicPolynomial {
        self.u.add(&self.f).expect("U and F share the variable count")
    }
}

fn zpoly_one(n: usize, var: usize, c: Kin) -> ZPoly {
    let mut p = ZPoly::new();
    if !c.is_zero() {
        let mut e = vec![0u32; n];
        e[var] = 1;
        p.insert(e, c);
    }
    p
}

fn to_kinematic(n: usize, p: ZPoly) -> Result<KinematicPolynomial> {
    KinematicPolynomial::from_terms(n, p)
}

/// `M(z)`, `Q(z)` and `J(z)`; `q[r][s]` is the coefficient of the external momentum `p_s`.
#[derive(Debug, Clone, PartialEq)]
pub struct LoopMatrices {
    pub m: Vec<Vec<KinematicPolynomial>>,
    pub q: Vec<Vec<KinematicPolynomial>>,
    pub j: KinematicPolynomial,
}

fn assemble(spec: &GraphSpec) -> (Vec<Vec<ZPoly>>, Vec<Vec<ZPoly>>, ZPoly) {
    let n = spec.propagators.len();
    let (l, e) = (spec.loops, spec.externals);
    let konst = |r: &Rational| Kin::constant(r.clone());
    let mut m = vec![vec![ZPoly::new(); l]; l];
    let mut q = vec![vec![ZPoly::new(); e]; l];
    let mut j = ZPoly::new();
    for (i, p) in spec.propagators.iter().enumerate() {
        for r in 0..l {
            for c in 0..l {
                m[r][c] = padd(&m[r][c], &zpoly_one(n, i, konst(&p.m[r][c])));
            }
            for s in 0..e {
                q[r][s] = padd(&q[r][s], &zpoly_one(n, i, konst(&p.q[r][s])));
            }
        }
        j = padd(&j, &zpoly_one(n, i, p.j.clone()));
    }
    (m, q, j)
}

/// `M = sum z_i M_i`, `Q = sum z_i Q_i`, `J = sum z_i J_i`.
pub fn assemble_mqj(spec: &GraphSpec) -> Result<LoopMatrices> {
    spec.validate()?;
    let n = spec.propagators.len();
    let (m, q, j) = assemble(spec);
    let conv = |rows: Vec<Vec<ZPoly>>| -> Result<Vec<Vec<KinematicPolynomial>>> {
        rows.into_iter().map(|r| r.into_iter().map(|p| to_kinematic(n, p)).collect()).collect()
    };
    Ok(LoopMatrices { m: conv(m)?, q: conv(q)?, j: to_kinematic(n, j)? })
}

/// `U = det M`, `F = U J - Q^T adj(M) Q` for `M = sum z_i M_i`, `Q = sum z_i Q_i p`, `J = sum z_i J_i`.
pub fn symanzik(spec: &GraphSpec) -> Result<Symanzik> {
    spec.validate()?;
    let n = spec.propagators.len();
    let (l, e) = (spec.loops, spec.externals);
    let (m, q, j) = assemble(spec);

    let u = det(&m, n);
    if u.is_empty() {
        return Err(Error::SingularM);
    }
    let mut f = pmul(&u, &j);
    for a in 0..l {
        for b in 0..l {
            let sub = minor(&m, b, a);
            let cof = det(&sub, n);
            let adj = if (a + b) % 2 == 0 { cof } else { pneg(&cof) };
            if adj.is_empty() {
                continue;
            }
            let mut qq = ZPoly::new();
            for s in 0..e {
                for t in 0..e {
                    let sp = &spec.scalar_products[s][t];
                    if sp.is_zero() {
                        continue;
                    }
                    qq = padd(&qq, &pscale(&pmul(&q[a][s], &q[b][t]), sp));
                }
            }
            f = padd(&f, &pneg(&pmul(&adj, &qq)));
        }
    }
    Ok(Symanzik { u: to_kinematic(n, u)?, f: to_kinematic(n, f)? })
}

/// `Gamma(d/2) / (Gamma((L+1)d/2 - sum alpha) prod Gamma(alpha_i))`.
pub fn prefactor(alpha: &[ParamLinear], d: &ParamLinear, loops: usize) -> GammaFactor {
    let half_d = d.scale(&Rational::new(1.into(), 2.into()));
    let mut sum = ParamLinear::zero();
    for a in alpha {
        sum += a;
    }
    let mut den = vec![&half_d.scale(&rat_int(loops as i64 + 1)) - &sum];
    den.extend(alpha.iter().cloned());
    GammaFactor::new(vec![half_d], den)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bubble() -> GraphSpec {
        serde_json::from_value(serde_json::json!({
            "L": 1, "E": 1,
            "propagators": [
                {"M": [[1]], "Q": [[0]], "J": {}},
                {"M": [[1]], "Q": [[-1]], "J": {"s": 1}}
            ],
            "invariants": ["s"],
            "scalar_products": [[{"s": 1}]]
        }))
        .unwrap()
    }

    #[test]
    fn bubble_polynomials() {
        let s = symanzik(&bubble()).unwrap();
        assert_eq!(s.u.to_string(), "z1 + z2");
        assert_eq!(s.f.to_string(), "s*z1*z2");
        assert_eq!(s.lee_pomeransky().exponents(), vec![vec![1, 0], vec![0, 1], vec![1, 1]]);
    }

    #[test]
    fn asymmetric_m_is_rejected() {
        let mut g = bubble();
        g.loops = 2;
        assert!(matches!(g.validate(), Err(Error::DimensionMismatch(_))));
    }

    #[test]
    fn kin_roundtrip() {
        let k: Kin = serde_json::from_str(r#"{"s": "1/2", "m2^2": -1, "1": 3}"#).unwrap();
        let back: Kin = serde_json::from_value(serde_json::to_value(&k).unwrap()).unwrap();
        assert_eq!(k, back);
        assert_eq!(k.to_string(), "-m2^2 + 1/2*s + 3");
    }
}
