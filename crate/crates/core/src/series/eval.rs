use super::classify::{classify, is_one_sided, FormKind};
use super::{shell_indices, CanonicalSeries};
use crate::algebra::{ln_gamma_signed, poch_log, ParamAssignment};
use crate::error::{Error, Result};

/// `2F1(a, b; c; 1) = Gamma(c) Gamma(c-a-b) / (Gamma(c-a) Gamma(c-b))`, continued in the parameters.
pub fn gauss_unit_2f1(a: f64, b: f64, c: f64) -> Result<f64> {
    let mut ln = 0.0;
    let mut sign = 1.0;
    for x in [c, c - a - b] {
        let (l, s) = ln_gamma_signed(x)?;
        ln += l;
        sign *= s;
    }
    for x in [c - a, c - b] {
        match ln_gamma_signed(x) {
            Ok((l, s)) => {
                ln -= l;
                sign *= s;
            }
            Err(_) => return Ok(0.0),
        }
    }
    Ok(sign * ln.exp())
}

/// `ln|c^v|` and sign, with `0^0 = 1`; `None` for an exact zero.
fn monomial_log(lnc: &[Option<f64>], v: &[f64]) -> Result<Option<f64>> {
    let mut acc = 0.0;
    for (l, &e) in lnc.iter().zip(v) {
        if e == 0.0 {
            continue;
        }
        match l {
            Some(l) => acc += l * e,
            None if e > 0.0 => return Ok(None),
            None => return Err(Error::DivergentArgument("negative power of a vanishing coefficient".into())),
        }
    }
    Ok(Some(acc))
}

fn ln_coeffs(coeffs: &[f64]) -> Result<Vec<Option<f64>>> {
    coeffs
        .iter()
        .map(|&c| {
            if c > 0.0 {
                Ok(Some(c.ln()))
            } else if c == 0.0 {
                Ok(None)
            } else {
                Err(Error::InvalidSpec(format!("coefficient {c} is not positive")))
            }
        })
        .collect()
}

/// Sum of the terms in each max-norm shell `0..=order`, without the prefactor `c^gamma`.
pub fn shell_sums(series: &CanonicalSeries, params: &ParamAssignment, coeffs: &[f64], order: u32) -> Result<Vec<f64>> {
    let g: Vec<f64> = series.gamma().iter().map(|x| x.eval(params)).collect::<Result<_>>()?;
    if coeffs.len() != g.len() {
        return Err(Error::DimensionMismatch(format!("{} coefficients for {} columns", coeffs.len(), g.len())));
    }
    let lnc = ln_coeffs(coeffs)?;
    let one_sided = is_one_sided(series);
    let mut shells = vec![0.0; order as usize + 1];
    for k in shell_indices(series.rank(), order as i64) {
        if one_sided && k.iter().any(|&x| x < 0) {
            continue;
        }
        let u = series.lattice.combine(&k);
        let wu: i64 = u.iter().zip(&series.weight).map(|(a, b)| a * b).sum();
        if wu < 0 {
            continue;
        }
        let mut ln = 0.0;
        let mut sign = 1.0;
        let mut zero = false;
        for (gi, &ui) in g.iter().zip(&u) {
            if ui < 0 {
                let m = (-ui) as u32;
                match poch_log(-gi, m) {
                    None => {
                        zero = true;
                        break;
                    }
                    Some((l, s)) => {
                        ln += l;
                        sign *= s * if m % 2 == 1 { -1.0 } else { 1.0 };
                    }
                }
            } else if ui > 0 {
                match poch_log(gi + 1.0, ui as u32) {
                    None => return Err(Error::Pole(format!("({} + 1)_{ui} vanishes in a denominator", gi))),
                    Some((l, s)) => {
                        ln -= l;
                        sign *= s;
                    }
                }
            }
        }
        if zero {
            continue;
        }
        let uf: Vec<f64> = u.iter().map(|&x| x as f64).collect();
        let Some(lm) = monomial_log(&lnc, &uf)? else { continue };
        let shell = k.iter().map(|x| x.unsigned_abs()).max().unwrap_or(0) as usize;
        shells[shell] += sign * (ln + lm).exp();
    }
    Ok(shells)
}

fn prefactor(series: &CanonicalSeries, params: &ParamAssignment, coeffs: &[f64]) -> Result<f64> {
    let g: Vec<f64> = series.gamma().iter().map(|x| x.eval(params)).collect::<Result<_>>()?;
    Ok(match monomial_log(&ln_coeffs(coeffs)?, &g)? {
        Some(l) => l.exp(),
        None => 0.0,
    })
}

/// Partial sum through shell `order`, times `c^gamma`; the second value is the last shell's magnitude.
pub fn evaluate(series: &CanonicalSeries, params: &ParamAssignment, coeffs: &[f64], order: u32) -> Result<(f64, f64)> {
    let form = classify(series);
    match form.kind {
        FormKind::PFQ { p, q } => {
            let x = form.arguments[0].eval(coeffs);
            if p == q + 1 && x.abs() >= 1.0 {
                if p == 2 && (x - 1.0).abs() < 1e-12 {
                    let v: Vec<f64> = form.upper.iter().chain(&form.lower).map(|e| e.eval(params)).collect::<Result<_>>()?;
                    let pre = prefactor(series, params, coeffs)?;
                    return Ok((pre * gauss_unit_2f1(v[0], v[1], v[2])?, 0.0));
                }
                return Err(Error::DivergentArgument(format!("|{}| = {} >= 1", form.arguments[0], x.abs())));
            }
            if p > q + 1 && x != 0.0 {
                return Err(Error::DivergentArgument(format!("{p}F{q} series has zero radius")));
            }
        }
        FormKind::AppellF4 => {
            let x = form.arguments[0].eval(coeffs).abs().sqrt() + form.arguments[1].eval(coeffs).abs().sqrt();
            if x >= 1.0 {
                return Err(Error::DivergentArgument(format!("sqrt|x| + sqrt|y| = {x} >= 1")));
            }
        }
        FormKind::RawSeries => {}
    }
    let shells = shell_sums(series, params, coeffs, order)?;
    if form.kind == FormKind::RawSeries && order >= 4 {
        let last = shells[order as usize].abs();
        let mid = shells[order as usize / 2].abs();
        if last > mid && last > 0.0 {
            return Err(Error::DivergentArgument("shell magnitudes grow with the order".into()));
        }
    }
    let pre = prefactor(series, params, coeffs)?;
    let mut pairs: Vec<f64> = shells.clone();
    // pairwise summation keeps the rounding independent of the shell count
    while pairs.len() > 1 {
        pairs = pairs.chunks(2).map(|c| c.iter().sum()).collect();
    }
    let total = pairs.first().copied().unwrap_or(0.0);
    Ok((pre * total, (pre * shells[order as usize]).abs()))
}
