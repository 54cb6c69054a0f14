//! Exact rationals and parameters entering linearly.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Arbitrary-precision rational number.
pub type Rational = BigRational;

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn rat_int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn rat_to_f64(r: &Rational) -> f64 {
    match (r.numer().to_f64(), r.denom().to_f64()) {
        (Some(n), Some(d)) if n.is_finite() && d.is_finite() => n / d,
        _ => {
            // Huge numerator or denominator: shift both to a common scale first.
            let shift = r.numer().bits().max(r.denom().bits()).saturating_sub(900);
            let n = (r.numer() >> shift).to_f64().unwrap_or(f64::NAN);
            let d = (r.denom() >> shift).to_f64().unwrap_or(f64::NAN);
            n / d
        }
    }
}

pub fn format_rational(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Parses `7`, `-3/2`, `0.125` or `1e-3` exactly.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let t = s.trim();
    if t.is_empty() {
        return Err(Error::Parse("empty number".into()));
    }
    if let Some((n, d)) = t.split_once('/') {
        let n = parse_decimal(n.trim())?;
        let d = parse_decimal(d.trim())?;
        if d.is_zero() {
            return Err(Error::Parse(format!("zero denominator in {t}")));
        }
        return Ok(n / d);
    }
    parse_decimal(t)
}

fn parse_decimal(t: &str) -> Result<Rational> {
    let bad = || Error::Parse(format!("not a number: {t}"));
    let (mantissa, exp) = match t.find(['e', 'E']) {
        Some(i) => (&t[..i], t[i + 1..].parse::<i32>().map_err(|_| bad())?),
        None => (t, 0),
    };
    let (neg, body) = match mantissa.strip_prefix('-') {
        Some(b) => (true, b),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int_part, frac_part) = body.split_once('.').unwrap_or((body, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(bad());
    }
    if !int_part.chars().chain(frac_part.chars()).all(|c| c.is_ascii_digit()) {
        return Err(bad());
    }
    let digits = format!("{int_part}{frac_part}");
    let n: BigInt = if digits.is_empty() { BigInt::zero() } else { digits.parse().map_err(|_| bad())? };
    let scale = exp - frac_part.len() as i32;
    let ten = BigInt::from(10);
    let mut r = Rational::from_integer(n);
    if scale >= 0 {
        r *= Rational::from_integer(num_traits::pow(ten, scale as usize));
    } else {
        r /= Rational::from_integer(num_traits::pow(ten, (-scale) as usize));
    }
    Ok(if neg { -r } else { r })
}

/// Serde adapter: integers as JSON numbers, everything else as `"p/q"`.
pub mod rational_serde {
    use super::*;

    pub fn serialize<S: Serializer>(r: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
        match (r.is_integer(), r.numer().to_i64()) {
            (true, Some(i)) => s.serialize_i64(i),
            _ => s.serialize_str(&format_rational(r)),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Rational, D::Error> {
        let v = serde_json::Value::deserialize(d)?;
        from_json(&v).map_err(serde::de::Error::custom)
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Rational> {
        match v {
            serde_json::Value::Number(n) => {
                if let Some(i) = n.as_i64() {
                    Ok(rat_int(i))
                } else {
                    parse_rational(&n.to_string())
                }
            }
            serde_json::Value::String(s) => parse_rational(s),
            other => Err(Error::Parse(format!("expected a rational, got {other}"))),
        }
    }
}

/// A symbolic parameter: `beta` (or `beta2`, ... for multi-row systems) or `a1`, `a2`, ...
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Param {
    Beta(u32),
    Alpha(u32),
}

impl fmt::Display for Param {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Param::Beta(0) => write!(f, "beta"),
            Param::Beta(k) => write!(f, "beta{k}"),
            Param::Alpha(i) => write!(f, "a{i}"),
        }
    }
}

impl FromStr for Param {
    type Err = Error;

    fn from_str(s: &str) -> Result<Param> {
        let index = |digits: &str| -> Option<u32> {
            if digits.is_empty() || !digits.chars().all(|c| c.is_ascii_digit()) {
                return None;
            }
            digits.parse().ok()
        };
        if s == "beta" {
            return Ok(Param::Beta(0));
        }
        if let Some(k) = s.strip_prefix("beta").and_then(index) {
            if k >= 1 {
                return Ok(Param::Beta(k));
            }
        }
        if let Some(i) = s.strip_prefix('a').and_then(index) {
            if i >= 1 {
                return Ok(Param::Alpha(i));
            }
        }
        Err(Error::Parse(format!("unknown parameter `{s}`")))
    }
}

/// `constant + sum coeff * param` with exact rational coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct ParamLinear {
    pub coeffs: BTreeMap<Param, Rational>,
    pub constant: Rational,
}

impl ParamLinear {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: Rational) -> Self {
        Self { coeffs: BTreeMap::new(), constant: c }
    }

    pub fn int(c: i64) -> Self {
        Self::constant(rat_int(c))
    }

    pub fn param(p: Param) -> Self {
        let mut coeffs = BTreeMap::new();
        coeffs.insert(p, Rational::one());
        Self { coeffs, constant: Rational::zero() }
    }

    pub fn beta() -> Self {
        Self::param(Param::Beta(0))
    }

    pub fn alpha(i: u32) -> Self {
        Self::param(Param::Alpha(i))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty() && self.constant.is_zero()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn as_constant(&self) -> Option<&Rational> {
        self.is_constant().then_some(&self.constant)
    }

    /// The value if this is an integer constant.
    pub fn as_integer(&self) -> Option<BigInt> {
        self.as_constant().filter(|c| c.is_integer()).map(|c| c.to_integer())
    }

    pub fn scale(&self, s: &Rational) -> Self {
        if s.is_zero() {
            return Self::zero();
        }
        Self {
            coeffs: self.coeffs.iter().map(|(p, c)| (*p, c * s)).collect(),
            constant: &self.constant * s,
        }
    }

    pub fn add_scaled(&mut self, other: &ParamLinear, s: &Rational) {
        if s.is_zero() {
            return;
        }
        for (p, c) in &other.coeffs {
            let e = self.coeffs.entry(*p).or_insert_with(Rational::zero);
            *e += c * s;
            if e.is_zero() {
                self.coeffs.remove(p);
            }
        }
        self.constant += &other.constant * s;
    }

    pub fn add_constant(&self, c: &Rational) -> Self {
        let mut out = self.clone();
        out.constant += c;
        out
    }

    /// Product, defined only when at least one side is constant.
    pub fn checked_mul(&self, other: &ParamLinear) -> Result<ParamLinear> {
        match (self.as_constant(), other.as_constant()) {
            (Some(c), _) => Ok(other.scale(c)),
            (_, Some(c)) => Ok(self.scale(c)),
            _ => Err(Error::NonlinearParameter(format!("({self})*({other})"))),
        }
    }

    pub fn params(&self) -> impl Iterator<Item = &Param> {
        self.coeffs.keys()
    }

    pub fn eval(&self, values: &ParamAssignment) -> Result<f64> {
        let mut v = rat_to_f64(&self.constant);
        for (p, c) in &self.coeffs {
            v += rat_to_f64(c) * values.get(*p)?;
        }
        Ok(v)
    }

    /// Substitutes rational values for some parameters.
    pub fn substitute(&self, values: &BTreeMap<Param, Rational>) -> ParamLinear {
        let mut out = ParamLinear::constant(self.constant.clone());
        for (p, c) in &self.coeffs {
            match values.get(p) {
                Some(v) => out.constant += c * v,
                None => out.add_scaled(&ParamLinear::param(*p), c),
            }
        }
        out
    }
}

impl From<Rational> for ParamLinear {
    fn from(c: Rational) -> Self {
        Self::constant(c)
    }
}

impl From<Param> for ParamLinear {
    fn from(p: Param) -> Self {
        Self::param(p)
    }
}

impl Add<&ParamLinear> for &ParamLinear {
    type Output = ParamLinear;
    fn add(self, rhs: &ParamLinear) -> ParamLinear {
        let mut out = self.clone();
        out.add_scaled(rhs, &Rational::one());
        out
    }
}

impl Sub<&ParamLinear> for &ParamLinear {
    type Output = ParamLinear;
    fn sub(self, rhs: &ParamLinear) -> ParamLinear {
        let mut out = self.clone();
        out.add_scaled(rhs, &-Rational::one());
        out
    }
}

impl Add for ParamLinear {
    type Output = ParamLinear;
    fn add(self, rhs: ParamLinear) -> ParamLinear {
        &self + &rhs
    }
}

impl Sub for ParamLinear {
    type Output = ParamLinear;
    fn sub(self, rhs: ParamLinear) -> ParamLinear {
        &self - &rhs
    }
}

impl AddAssign<&ParamLinear> for ParamLinear {
    fn add_assign(&mut self, rhs: &ParamLinear) {
        self.add_scaled(rhs, &Rational::one());
    }
}

impl SubAssign<&ParamLinear> for ParamLinear {
    fn sub_assign(&mut self, rhs: &ParamLinear) {
        self.add_scaled(rhs, &-Rational::one());
    }
}

impl Neg for &ParamLinear {
    type Output = ParamLinear;
    fn neg(self) -> ParamLinear {
        self.scale(&-Rational::one())
    }
}

impl Neg for ParamLinear {
    type Output = ParamLinear;
    fn neg(self) -> ParamLinear {
        -&self
    }
}

impl fmt::Display for ParamLinear {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<(bool, String)> = Vec::new();
        for (p, c) in &self.coeffs {
            let mag = c.abs();
            let body = if mag.is_one() { p.to_string() } else { format!("{}*{p}", format_rational(&mag)) };
            parts.push((c.is_negative(), body));
        }
        if !self.constant.is_zero() || parts.is_empty() {
            parts.push((self.constant.is_negative(), format_rational(&self.constant.abs())));
        }
        for (i, (neg, body)) in parts.iter().enumerate() {
            match (i, neg) {
                (0, true) => write!(f, "-{body}")?,
                (0, false) => write!(f, "{body}")?,
                (_, true) => write!(f, " - {body}")?,
                (_, false) => write!(f, " + {body}")?,
            }
        }
        Ok(())
    }
}

impl FromStr for ParamLinear {
    type Err = Error;

    fn from_str(s: &str) -> Result<ParamLinear> {
        let tokens = tokenize(s)?;
        let mut p = ExprParser { tokens, pos: 0 };
        let e = p.expr()?;
        if p.pos != p.tokens.len() {
            return Err(Error::Parse(format!("trailing input in `{s}`")));
        }
        Ok(e)
    }
}

impl Serialize for ParamLinear {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for ParamLinear {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v = serde_json::Value::deserialize(d)?;
        match &v {
            serde_json::Value::String(s) => s.parse().map_err(serde::de::Error::custom),
            serde_json::Value::Number(_) => {
                rational_serde::from_json(&v).map(ParamLinear::constant).map_err(serde::de::Error::custom)
            }
            _ => Err(serde::de::Error::custom("expected a parameter expression")),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(Rational),
    Ident(String),
    Op(char),
}

fn tokenize(s: &str) -> Result<Vec<Tok>> {
    let chars: Vec<char> = s.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() || c == '.' {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_digit() || chars[i] == '.') {
                i += 1;
            }
            let text: String = chars[start..i].iter().collect();
            out.push(Tok::Num(parse_decimal(&text)?));
        } else if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            out.push(Tok::Ident(chars[start..i].iter().collect()));
        } else if "+-*/()".contains(c) {
            out.push(Tok::Op(c));
            i += 1;
        } else {
            return Err(Error::Parse(format!("unexpected character `{c}` in `{s}`")));
        }
    }
    Ok(out)
}

struct ExprParser {
    tokens: Vec<Tok>,
    pos: usize,
}

impl ExprParser {
    fn peek_op(&self) -> Option<char> {
        match self.tokens.get(self.pos) {
            Some(Tok::Op(c)) => Some(*c),
            _ => None,
        }
    }

    fn expr(&mut self) -> Result<ParamLinear> {
        let mut acc = match self.peek_op() {
            Some('-') => {
                self.pos += 1;
                -self.term()?
            }
            Some('+') => {
                self.pos += 1;
                self.term()?
            }
            _ => self.term()?,
        };
        while let Some(op @ ('+' | '-')) = self.peek_op() {
            self.pos += 1;
            let t = self.term()?;
            if op == '+' {
                acc += &t;
            } else {
                acc -= &t;
            }
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<ParamLinear> {
        let mut acc = self.factor()?;
        while let Some(op @ ('*' | '/')) = self.peek_op() {
            self.pos += 1;
            let f = self.factor()?;
            if op == '*' {
                acc = acc.checked_mul(&f)?;
            } else {
                let d = f
                    .as_constant()
                    .ok_or_else(|| Error::NonlinearParameter(format!("division by ({f})")))?;
                if d.is_zero() {
                    return Err(Error::Parse("division by zero".into()));
                }
                acc = acc.scale(&d.recip());
            }
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<ParamLinear> {
        let tok = self.tokens.get(self.pos).cloned();
        self.pos += 1;
        match tok {
            Some(Tok::Num(r)) => Ok(ParamLinear::constant(r)),
            Some(Tok::Ident(name)) => Ok(ParamLinear::param(name.parse()?)),
            Some(Tok::Op('(')) => {
                let e = self.expr()?;
                if self.peek_op() != Some(')') {
                    return Err(Error::Parse("missing `)`".into()));
                }
                self.pos += 1;
                Ok(e)
            }
            Some(Tok::Op('-')) => Ok(-self.factor()?),
            other => Err(Error::Parse(format!("unexpected token {other:?}"))),
        }
    }
}

/// Numeric values for the symbolic parameters.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct ParamAssignment {
    values: BTreeMap<Param, f64>,
}

impl ParamAssignment {
    pub fn new() -> Self {
        Self::default()
    }

    /// `beta` plus `a1..an` in order.
    pub fn from_alpha_beta(alpha: &[f64], beta: f64) -> Self {
        let mut a = Self::new();
        a.set(Param::Beta(0), beta);
        for (i, v) in alpha.iter().enumerate() {
            a.set(Param::Alpha(i as u32 + 1), *v);
        }
        a
    }

    pub fn set(&mut self, p: Param, v: f64) -> &mut Self {
        self.values.insert(p, v);
        self
    }

    pub fn with(mut self, p: Param, v: f64) -> Self {
        self.values.insert(p, v);
        self
    }

    pub fn get(&self, p: Param) -> Result<f64> {
        self.values.get(&p).copied().ok_or_else(|| Error::UnboundParameter(p.to_string()))
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Param, &f64)> {
        self.values.iter()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn display_matches_canonical_form() {
        let e: ParamLinear = "beta - a1 - a2 + 3/2".parse().unwrap();
        assert_eq!(e.to_string(), "beta - a1 - a2 + 3/2");
        let e: ParamLinear = "-a2 + 2*a1 - 1/2*beta".parse().unwrap();
        assert_eq!(e.to_string(), "-1/2*beta + 2*a1 - a2");
        assert_eq!(ParamLinear::zero().to_string(), "0");
        assert_eq!("a1 - a1".parse::<ParamLinear>().unwrap(), ParamLinear::zero());
    }

    #[test]
    fn parse_accepts_parentheses_and_division() {
        let e: ParamLinear = "(a1 + a2)/2 - 3*(beta - 1)".parse().unwrap();
        assert_eq!(e.to_string(), "-3*beta + 1/2*a1 + 1/2*a2 + 3");
    }

    #[test]
    fn nonlinear_expressions_are_rejected() {
        assert!(matches!("a1*a2".parse::<ParamLinear>(), Err(Error::NonlinearParameter(_))));
        assert!(matches!("1/beta".parse::<ParamLinear>(), Err(Error::NonlinearParameter(_))));
        assert!(matches!("x1".parse::<ParamLinear>(), Err(Error::Parse(_))));
    }

    #[test]
    fn rational_parsing() {
        assert_eq!(parse_rational("0.125").unwrap(), rat(1, 8));
        assert_eq!(parse_rational("-3/6").unwrap(), rat(-1, 2));
        assert_eq!(parse_rational("1e-3").unwrap(), rat(1, 1000));
        assert!(parse_rational("1/0").is_err());
    }

    #[test]
    fn eval_requires_bound_parameters() {
        let e: ParamLinear = "beta - a1".parse().unwrap();
        let v = ParamAssignment::new().with(Param::Beta(0), 2.0);
        assert!(matches!(e.eval(&v), Err(Error::UnboundParameter(_))));
        let v = v.with(Param::Alpha(1), 0.5);
        assert_eq!(e.eval(&v).unwrap(), 1.5);
    }
}
