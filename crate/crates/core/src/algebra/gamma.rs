//! Real Gamma function via the Lanczos approximation (g = 7, 9 terms).

use std::f64::consts::PI;

use crate::error::{Error, Result};

const G: f64 = 7.0;
const COEFFS: [f64; 9] = [
    0.999_999_999_999_809_93,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_13,
    -176.615_029_162_140_59,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_571_6e-6,
    1.505_632_735_149_311_6e-7,
];

/// `sin(pi x)` with exact zeros at integers.
pub fn sin_pi(x: f64) -> f64 {
    let r = x - 2.0 * (x / 2.0).floor();
    let (r, sign) = if r > 1.0 { (r - 1.0, -1.0) } else { (r, 1.0) };
    let v = if r == 0.0 || r == 1.0 {
        0.0
    } else if r <= 0.25 {
        (PI * r).sin()
    } else if r <= 0.75 {
        (PI * (0.5 - r)).cos()
    } else {
        (PI * (1.0 - r)).sin()
    };
    sign * v
}

pub fn is_nonpositive_integer(x: f64) -> bool {
    x <= 0.0 && x == x.round()
}

/// `(ln|Gamma(x)|, sign Gamma(x))`.
pub fn ln_gamma_signed(x: f64) -> Result<(f64, f64)> {
    if x.is_nan() {
        return Err(Error::Pole("Gamma(NaN)".into()));
    }
    if is_nonpositive_integer(x) {
        return Err(Error::Pole(format!("Gamma({x})")));
    }
    if x < 0.5 {
        // Reflection: Gamma(x) Gamma(1-x) = pi / sin(pi x).
        let s = sin_pi(x);
        let (lg, sg) = ln_gamma_signed(1.0 - x)?;
        return Ok((PI.ln() - s.abs().ln() - lg, s.signum() * sg));
    }
    let z = x - 1.0;
    let mut a = COEFFS[0];
    let t = z + G + 0.5;
    for (i, c) in COEFFS.iter().enumerate().skip(1) {
        a += c / (z + i as f64);
    }
    let lg = 0.5 * (2.0 * PI).ln() + (z + 0.5) * t.ln() - t + a.ln();
    Ok((lg, 1.0))
}

pub fn gamma(x: f64) -> Result<f64> {
    if x > 0.0 && x < 20.0 && x == x.round() {
        let mut f = 1.0;
        for k in 2..(x as u64) {
            f *= k as f64;
        }
        return Ok(f);
    }
    let (lg, s) = ln_gamma_signed(x)?;
    Ok(s * lg.exp())
}

/// `1/Gamma(x)`, zero at the poles.
pub fn rgamma(x: f64) -> f64 {
    match ln_gamma_signed(x) {
        Ok((lg, s)) => s * (-lg).exp(),
        Err(_) => 0.0,
    }
}
