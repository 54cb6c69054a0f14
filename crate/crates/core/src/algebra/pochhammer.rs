//! Symbolic products of rising factorials and their numeric evaluation.

use std::fmt;

use num_traits::{One, Signed};
use serde::{Deserialize, Serialize};

use super::gamma::{is_nonpositive_integer, ln_gamma_signed};
use super::param::{ParamAssignment, ParamLinear, Rational};
use crate::error::{Error, Result};

/// `(base)_length`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct PochFactor {
    pub base: ParamLinear,
    pub length: u32,
}

impl PochFactor {
    fn forces_zero(&self) -> bool {
        match self.base.as_integer() {
            Some(k) if !k.is_positive() => num_bigint::BigInt::from(self.length) > -k,
            _ => false,
        }
    }
}

/// `sign * prod (a_i)_{m_i} / prod (b_j)_{n_j}`; `sign == 0` is the exact zero.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PochhammerProduct {
    pub sign: i8,
    pub numerator: Vec<PochFactor>,
    pub denominator: Vec<PochFactor>,
}

impl PochhammerProduct {
    pub fn one() -> Self {
        Self { sign: 1, numerator: Vec::new(), denominator: Vec::new() }
    }

    pub fn zero() -> Self {
        Self { sign: 0, numerator: Vec::new(), denominator: Vec::new() }
    }

    pub fn is_zero(&self) -> bool {
        self.sign == 0
    }

    /// `(base)_m`.
    pub fn poch(base: ParamLinear, m: u32) -> Self {
        Self { sign: 1, numerator: vec![PochFactor { base, length: m }], denominator: Vec::new() }.canonical()
    }

    pub fn inverse_poch(base: ParamLinear, m: u32) -> Self {
        Self { sign: 1, numerator: Vec::new(), denominator: vec![PochFactor { base, length: m }] }.canonical()
    }

    /// `(base)_k` for any integer `k`, using `(b)_{-m} = (-1)^m / (1-b)_m`.
    pub fn poch_signed(base: &ParamLinear, k: i64) -> Self {
        if k >= 0 {
            Self::poch(base.clone(), k as u32)
        } else {
            poch_shift_negative(base, (-k) as u32)
        }
    }

    pub fn negate(mut self) -> Self {
        self.sign = -self.sign;
        self
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = self.clone();
        out.sign *= other.sign;
        out.numerator.extend(other.numerator.iter().cloned());
        out.denominator.extend(other.denominator.iter().cloned());
        out.canonical()
    }

    pub fn recip(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::Pole("reciprocal of zero".into()));
        }
        Ok(Self { sign: self.sign, numerator: self.denominator.clone(), denominator: self.numerator.clone() })
    }

    /// Sorted factors, zero-length factors dropped, identical factors cancelled.
    pub fn canonical(mut self) -> Self {
        if self.sign == 0 || self.numerator.iter().any(PochFactor::forces_zero) {
            return Self::zero();
        }
        self.numerator.retain(|f| f.length > 0);
        self.denominator.retain(|f| f.length > 0);
        self.numerator.sort();
        self.denominator.sort();
        let mut num = Vec::with_capacity(self.numerator.len());
        let mut den = std::mem::take(&mut self.denominator);
        for f in self.numerator {
            if let Some(pos) = den.iter().position(|g| *g == f) {
                den.remove(pos);
            } else {
                num.push(f);
            }
        }
        self.numerator = num;
        self.denominator = den;
        self
    }

    pub fn eval_numeric(&self, values: &ParamAssignment) -> Result<f64> {
        if self.is_zero() {
            return Ok(0.0);
        }
        let mut ln = 0.0;
        let mut sign = self.sign as f64;
        for f in &self.numerator {
            match poch_log(f.base.eval(values)?, f.length) {
                None => return Ok(0.0),
                Some((l, s)) => {
                    ln += l;
                    sign *= s;
                }
            }
        }
        for f in &self.denominator {
            match poch_log(f.base.eval(values)?, f.length) {
                None => return Err(Error::Pole(format!("({})_{} vanishes in a denominator", f.base, f.length))),
                Some((l, s)) => {
                    ln -= l;
                    sign *= s;
                }
            }
        }
        Ok(sign * ln.exp())
    }
}

impl fmt::Display for PochhammerProduct {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let side = |fs: &[PochFactor]| -> String {
            if fs.is_empty() {
                "1".to_string()
            } else {
                fs.iter().map(|x| format!("({})_{}", x.base, x.length)).collect::<Vec<_>>().join(" ")
            }
        };
        let sign = if self.sign < 0 { "-" } else { "" };
        if self.denominator.is_empty() {
            write!(f, "{sign}{}", side(&self.numerator))
        } else {
            write!(f, "{sign}{} / {}", side(&self.numerator), side(&self.denominator))
        }
    }
}

/// `[base]_m = base (base-1) ... (base-m+1) = (-1)^m (-base)_m`.
pub fn falling_factorial(base: &ParamLinear, m: u32) -> PochhammerProduct {
    let p = PochhammerProduct::poch(-base, m);
    if m % 2 == 1 {
        p.negate()
    } else {
        p
    }
}

/// `(base)_{-m} = (-1)^m / (1 - base)_m`.
pub fn poch_shift_negative(base: &ParamLinear, m: u32) -> PochhammerProduct {
    let p = PochhammerProduct::inverse_poch(&ParamLinear::constant(Rational::one()) - base, m);
    if m % 2 == 1 {
        p.negate()
    } else {
        p
    }
}

/// `(ln|(a)_m|, sign)`, or `None` when the product is exactly zero.
pub fn poch_log(a: f64, m: u32) -> Option<(f64, f64)> {
    if m == 0 {
        return Some((0.0, 1.0));
    }
    if m <= 64 || is_nonpositive_integer(a) || is_nonpositive_integer(a + m as f64) {
        let mut ln = 0.0;
        let mut p = 1.0f64;
        for k in 0..m {
            let f = a + k as f64;
            if f == 0.0 {
                return None;
            }
            p *= f;
            if !(1e-200..=1e200).contains(&p.abs()) {
                ln += p.abs().ln();
                p = p.signum();
            }
        }
        return Some((ln + p.abs().ln(), p.signum()));
    }
    let (l1, s1) = ln_gamma_signed(a + m as f64).ok()?;
    let (l0, s0) = ln_gamma_signed(a).ok()?;
    Some((l1 - l0, s1 * s0))
}

/// Numeric `(a)_m`.
pub fn pochhammer(a: f64, m: u32) -> f64 {
    match poch_log(a, m) {
        None => 0.0,
        Some((l, s)) => s * l.exp(),
    }
}

impl PochFactor {
    pub fn new(base: ParamLinear, length: u32) -> Self {
        Self { base, length }
    }
}


#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::param::Param;

    fn vals() -> ParamAssignment {
        ParamAssignment::from_alpha_beta(&[0.3, 0.45], 1.7)
    }

    #[test]
    fn forced_zero_is_detected_symbolically() {
        let p = PochhammerProduct::poch(ParamLinear::int(-2), 3);
        assert!(p.is_zero());
        let p = PochhammerProduct::poch(ParamLinear::int(-2), 2);
        assert!(!p.is_zero());
        assert_eq!(p.eval_numeric(&vals()).unwrap(), 2.0);
    }

    #[test]
    fn denominator_zero_is_a_pole() {
        let p = PochhammerProduct::inverse_poch(ParamLinear::int(-1), 2);
        assert!(matches!(p.eval_numeric(&vals()), Err(Error::Pole(_))));
    }

    #[test]
    fn shift_negative_matches_direct_value() {
        // (b)_{-m} = 1 / ((b-1)(b-2)...(b-m))
        let b = ParamLinear::param(Param::Alpha(1)).add_constant(&Rational::from_integer(2.into()));
        let v = vals();
        let bv = b.eval(&v).unwrap();
        for m in 0..6u32 {
            let got = poch_shift_negative(&b, m).eval_numeric(&v).unwrap();
            let mut want = 1.0;
            for k in 1..=m {
                want /= bv - k as f64;
            }
            assert!(((got - want) / want).abs() < 1e-13);
        }
    }

    #[test]
    fn large_lengths_use_the_gamma_ratio() {
        let direct: f64 = (0..100).map(|k| ((0.37 + k as f64) / (1.21 + k as f64)).ln()).sum();
        let got = poch_log(0.37, 100).unwrap().0 - poch_log(1.21, 100).unwrap().0;
        assert!((got - direct).abs() < 1e-11);
    }

    #[test]
    fn cancellation_in_canonical_form() {
        let b = ParamLinear::beta();
        let p = PochhammerProduct::poch(b.clone(), 3).mul(&PochhammerProduct::inverse_poch(b, 3));
        assert_eq!(p, PochhammerProduct::one());
    }
}
