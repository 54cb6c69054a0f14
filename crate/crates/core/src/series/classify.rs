use std::fmt;

use num_traits::One;
use serde::ser::SerializeMap;
use serde::{Serialize, Serializer};

use super::{term_coefficient, CanonicalSeries};
use crate::algebra::{format_rational, rat_int, ParamLinear, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FormKind {
    PFQ { p: usize, q: usize },
    AppellF4,
    RawSeries,
}

impl fmt::Display for FormKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FormKind::PFQ { p, q } => write!(f, "{p}F{q}"),
            FormKind::AppellF4 => write!(f, "F4"),
            FormKind::RawSeries => write!(f, "raw"),
        }
    }
}

/// `sign * scale * prod c_j^{e_j}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonomialRatio {
    pub sign: i8,
    pub scale: Rational,
    pub exponents: Vec<i64>,
}

impl MonomialRatio {
    pub fn eval(&self, coeffs: &[f64]) -> f64 {
        let mut v = self.sign as f64 * crate::algebra::rat_to_f64(&self.scale);
        for (c, e) in coeffs.iter().zip(&self.exponents) {
            if *e != 0 {
                v *= c.powi(*e as i32);
            }
        }
        v
    }
}

impl fmt::Display for MonomialRatio {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let part = |pos: bool| -> Vec<String> {
            self.exponents
                .iter()
                .enumerate()
                .filter(|(_, e)| if pos { **e > 0 } else { **e < 0 })
                .map(|(j, e)| if e.abs() == 1 { format!("c{}", j + 1) } else { format!("c{}^{}", j + 1, e.abs()) })
                .collect()
        };
        let (num, den) = (part(true), part(false));
        if self.sign < 0 {
            write!(f, "-")?;
        }
        let mut num_s = num.join("*");
        if !self.scale.is_one() {
            num_s = if num_s.is_empty() { format_rational(&self.scale) } else { format!("{}*{num_s}", format_rational(&self.scale)) };
        }
        if num_s.is_empty() {
            num_s = "1".into();
        }
        match den.len() {
            0 => write!(f, "{num_s}"),
            1 => write!(f, "{num_s}/{}", den[0]),
            _ => write!(f, "{num_s}/({})", den.join("*")),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct HypergeometricForm {
    pub kind: FormKind,
    pub upper: Vec<ParamLinear>,
    pub lower: Vec<ParamLinear>,
    pub arguments: Vec<MonomialRatio>,
}

impl fmt::Display for HypergeometricForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let list = |v: &[ParamLinear]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", ");
        let args = self.arguments.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", ");
        match self.kind {
            FormKind::RawSeries => write!(f, "raw series in ({args})"),
            kind => write!(f, "{kind}({}; {}; {args})", list(&self.upper), list(&self.lower)),
        }
    }
}

impl Serialize for HypergeometricForm {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut m = s.serialize_map(Some(5))?;
        m.serialize_entry("kind", &self.kind.to_string())?;
        m.serialize_entry("upper", &self.upper)?;
        m.serialize_entry("lower", &self.lower)?;
        let args: Vec<String> = self.arguments.iter().map(|a| a.to_string()).collect();
        if args.len() == 1 {
            m.serialize_entry("argument", &args[0])?;
        }
        m.serialize_entry("arguments", &args)?;
        m.end()
    }
}

fn is_one(p: &ParamLinear) -> bool {
    p.as_constant().is_some_and(|c| c.is_one())
}

/// Drops one `(1)_k` against the `k!` of the standard form (or adds a `1` upstairs) and
/// cancels parameters common to both lists.
fn normalise(mut upper: Vec<ParamLinear>, mut lower: Vec<ParamLinear>) -> (Vec<ParamLinear>, Vec<ParamLinear>) {
    match lower.iter().position(is_one) {
        Some(i) => {
            lower.remove(i);
        }
        None => upper.push(ParamLinear::int(1)),
    }
    upper.retain(|u| match lower.iter().position(|l| l == u) {
        Some(i) => {
            lower.remove(i);
            false
        }
        None => true,
    });
    (upper, lower)
}

fn one_sided(series: &CanonicalSeries, k: &[i64]) -> bool {
    let u = series.lattice.combine(k);
    term_coefficient(series.gamma(), &u, &series.weight).is_zero()
}

/// Whether the sum over each basis direction starts at zero.
pub(crate) fn is_one_sided(series: &CanonicalSeries) -> bool {
    (0..series.rank()).all(|i| {
        let mut k = vec![0; series.rank()];
        k[i] = -1;
        one_sided(series, &k)
    })
}

pub fn classify(series: &CanonicalSeries) -> HypergeometricForm {
    let raw = || HypergeometricForm {
        kind: FormKind::RawSeries,
        upper: Vec::new(),
        lower: Vec::new(),
        arguments: series
            .lattice
            .vectors
            .iter()
            .map(|v| MonomialRatio { sign: 1, scale: Rational::one(), exponents: v.clone() })
            .collect(),
    };
    if !is_one_sided(series) {
        return raw();
    }
    let gamma = series.gamma();
    match series.rank() {
        1 => {
            let l = &series.lattice.vectors[0];
            let mut upper = Vec::new();
            let mut lower = Vec::new();
            let mut negs = 0i64;
            let mut scale = Rational::one();
            for (g, &li) in gamma.iter().zip(l) {
                let m = li.unsigned_abs() as i64;
                if li == 0 {
                    continue;
                }
                let mm = Rational::from_integer(num_bigint::BigInt::from(m).pow(m as u32));
                let inv_m = Rational::new(1.into(), m.into());
                if li < 0 {
                    negs += m;
                    scale *= mm;
                    for j in 0..m {
                        upper.push((-g).add_constant(&rat_int(j)).scale(&inv_m));
                    }
                } else {
                    scale /= mm;
                    for j in 0..m {
                        lower.push(g.add_constant(&rat_int(j + 1)).scale(&inv_m));
                    }
                }
            }
            let (upper, lower) = normalise(upper, lower);
            HypergeometricForm {
                kind: FormKind::PFQ { p: upper.len(), q: lower.len() },
                upper,
                lower,
                arguments: vec![MonomialRatio { sign: if negs % 2 == 0 { 1 } else { -1 }, scale, exponents: l.clone() }],
            }
        }
        2 => {
            let (l1, l2) = (&series.lattice.vectors[0], &series.lattice.vectors[1]);
            let mut both = Vec::new();
            let mut low_m = Vec::new();
            let mut low_n = Vec::new();
            for (i, g) in gamma.iter().enumerate() {
                match (l1[i], l2[i]) {
                    (0, 0) => {}
                    (-1, -1) => both.push(-g),
                    (1, 0) => low_m.push(g.add_constant(&rat_int(1))),
                    (0, 1) => low_n.push(g.add_constant(&rat_int(1))),
                    _ => return raw(),
                }
            }
            let take_one = |v: &mut Vec<ParamLinear>| v.iter().position(is_one).map(|i| v.remove(i)).is_some();
            if both.len() != 2 || !take_one(&mut low_m) || !take_one(&mut low_n) || low_m.len() != 1 || low_n.len() != 1 {
                return raw();
            }
            HypergeometricForm {
                kind: FormKind::AppellF4,
                upper: both,
                lower: vec![low_m.remove(0), low_n.remove(0)],
                arguments: vec![
                    MonomialRatio { sign: 1, scale: Rational::one(), exponents: l1.clone() },
                    MonomialRatio { sign: 1, scale: Rational::one(), exponents: l2.clone() },
                ],
            }
        }
        _ => raw(),
    }
}

