use std::fmt;

use serde::{Deserialize, Serialize};

use super::groebner::{divides, groebner, Monomial, MonomialOrder, Poly};
use super::lattice::LatticeBasis;
use crate::error::{Error, Result};

/// Reduced grevlex Groebner basis of the toric ideal, as binomials `x^plus - x^minus`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ToricIdeal {
    pub nvars: usize,
    pub binomials: Vec<(Monomial, Monomial)>,
}

impl ToricIdeal {
    pub fn polys(&self, ord: &MonomialOrder) -> Vec<Poly> {
        self.binomials.iter().map(|(p, m)| Poly::binomial(p.clone(), m.clone(), ord)).collect()
    }
}

fn binomial_parts(p: &Poly) -> (Monomial, Monomial) {
    let minus = p.terms.get(1).map(|t| t.0.clone()).unwrap_or_else(|| vec![0; p.lm().len()]);
    (p.lm().clone(), minus)
}

/// Saturates the lattice-basis ideal by each variable in turn.
pub fn toric_ideal(lattice: &LatticeBasis, nvars: usize) -> ToricIdeal {
    let split = |u: &Vec<i64>| -> (Monomial, Monomial) {
        (u.iter().map(|&x| x.max(0) as u32).collect(), u.iter().map(|&x| (-x).max(0) as u32).collect())
    };
    let base = MonomialOrder::grevlex(nvars);
    let mut gens: Vec<Poly> = lattice.vectors.iter().map(|u| {
        let (p, m) = split(u);
        Poly::binomial(p, m, &base)
    }).collect();
    if gens.is_empty() {
        return ToricIdeal { nvars, binomials: Vec::new() };
    }
    for var in 0..nvars {
        let ord = MonomialOrder::grevlex_last(nvars, var);
        gens = groebner(&gens, &ord);
        for g in &mut gens {
            g.divide_out(var);
        }
    }
    let gb = groebner(&gens, &base);
    ToricIdeal { nvars, binomials: gb.iter().map(binomial_parts).collect() }
}

/// Monomial ideal by minimal generators.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MonomialIdeal {
    pub nvars: usize,
    pub generators: Vec<Monomial>,
}

impl MonomialIdeal {
    pub fn new(nvars: usize, gens: impl IntoIterator<Item = Monomial>) -> Self {
        let mut all: Vec<Monomial> = gens.into_iter().collect();
        all.sort_by_key(|m| (m.iter().sum::<u32>(), std::cmp::Reverse(m.clone())));
        all.dedup();
        let mut minimal: Vec<Monomial> = Vec::new();
        for g in all {
            if !minimal.iter().any(|h| divides(h, &g)) {
                minimal.push(g);
            }
        }
        Self { nvars, generators: minimal }
    }

    pub fn contains(&self, m: &[u32]) -> bool {
        self.generators.iter().any(|g| divides(g, m))
    }
}

pub fn monomial_string(m: &[u32]) -> String {
    let parts: Vec<String> = m
        .iter()
        .enumerate()
        .filter(|(_, e)| **e > 0)
        .map(|(i, e)| if *e == 1 { format!("x{}", i + 1) } else { format!("x{}^{e}", i + 1) })
        .collect();
    if parts.is_empty() {
        "1".into()
    } else {
        parts.join("*")
    }
}

impl fmt::Display for MonomialIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let g: Vec<String> = self.generators.iter().map(|m| monomial_string(m)).collect();
        write!(f, "<{}>", g.join(", "))
    }
}

impl fmt::Display for ToricIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let g: Vec<String> =
            self.binomials.iter().map(|(p, m)| format!("{} - {}", monomial_string(p), monomial_string(m))).collect();
        write!(f, "<{}>", g.join(", "))
    }
}

/// How ties of the weight on toric binomials are handled.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TieBreak {
    /// Refine the weight by grevlex.
    #[default]
    Grevlex,
    /// Refuse weights that leave a Groebner basis element with tied terms.
    Strict,
}

/// Leading-term ideal of the toric ideal for `w` refined by grevlex.
pub fn initial_ideal(ideal: &ToricIdeal, w: &[i64], tie: TieBreak) -> Result<MonomialIdeal> {
    let n = ideal.nvars;
    if w.len() != n {
        return Err(Error::DimensionMismatch(format!("weight has {} entries, expected {n}", w.len())));
    }
    // Homogeneous ideal: shifting by the all-ones vector keeps the order and makes it a well-order.
    let shift = w.iter().copied().min().unwrap_or(0).min(0);
    let shifted: Vec<i64> = w.iter().map(|x| x - shift).collect();
    let ord = MonomialOrder::weighted(&shifted);
    let gb = groebner(&ideal.polys(&ord), &ord);
    if tie == TieBreak::Strict {
        for g in &gb {
            let top = ord.weight_of(g.lm());
            if g.terms[1..].iter().any(|(m, _)| ord.weight_of(m) == top) {
                let (p, m) = binomial_parts(g);
                return Err(Error::NonGenericWeight(format!(
                    "{} - {} is not split by w = {w:?}",
                    monomial_string(&p),
                    monomial_string(&m)
                )));
            }
        }
    }
    Ok(MonomialIdeal::new(n, gb.iter().map(|g| g.lm().clone())))
}
