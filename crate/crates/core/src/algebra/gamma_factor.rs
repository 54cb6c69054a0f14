use std::fmt;

use num_traits::{One, Signed};
use serde::{Deserialize, Serialize};

use super::gamma::ln_gamma_signed;
use super::param::{format_rational, rat_to_f64, ParamAssignment, ParamLinear, Rational};
use crate::error::{Error, Result};

/// `scale * prod Gamma(num_i) / prod Gamma(den_j)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GammaFactor {
    pub num: Vec<ParamLinear>,
    pub den: Vec<ParamLinear>,
    #[serde(with = "super::param::rational_serde")]
    pub scale: Rational,
}

impl GammaFactor {
    pub fn new(num: Vec<ParamLinear>, den: Vec<ParamLinear>) -> Self {
        Self { num, den, scale: Rational::one() }
    }

    /// Cancels identical arguments between numerator and denominator.
    pub fn simplified(mut self) -> Self {
        let mut den = std::mem::take(&mut self.den);
        self.num.retain(|n| match den.iter().position(|d| d == n) {
            Some(p) => {
                den.remove(p);
                false
            }
            None => true,
        });
        self.den = den;
        self
    }

    pub fn eval(&self, values: &ParamAssignment) -> Result<f64> {
        let mut ln = 0.0;
        let mut sign = rat_to_f64(&self.scale).signum();
        for n in &self.num {
            let x = n.eval(values)?;
            let (l, s) = ln_gamma_signed(x).map_err(|_| Error::Pole(format!("Gamma({n}) at {x}")))?;
            ln += l;
            sign *= s;
        }
        for d in &self.den {
            let x = d.eval(values)?;
            match ln_gamma_signed(x) {
                Ok((l, s)) => {
                    ln -= l;
                    sign *= s;
                }
                Err(_) => return Ok(0.0),
            }
        }
        Ok(sign * (ln + rat_to_f64(&self.scale.abs()).ln()).exp())
    }
}

impl fmt::Display for GammaFactor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let side = |v: &[ParamLinear]| {
            if v.is_empty() {
                "1".to_string()
            } else {
                v.iter().map(|x| format!("Gamma({x})")).collect::<Vec<_>>().join(" ")
            }
        };
        if !self.scale.is_one() {
            write!(f, "{} * ", format_rational(&self.scale))?;
        }
        write!(f, "{}", side(&self.num))?;
        if !self.den.is_empty() {
            write!(f, " / ({})", side(&self.den))?;
        }
        Ok(())
    }
}
