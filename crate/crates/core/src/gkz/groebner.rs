//! Buchberger's algorithm over the rationals for binomial ideals.

use std::cmp::Ordering;
use std::collections::HashSet;

use num_traits::{One, Zero};

use crate::algebra::Rational;

pub type Monomial = Vec<u32>;

/// Optional weight vector refined by reverse lexicographic order on `var_order`
/// (listed from largest to smallest variable).
#[derive(Debug, Clone, PartialEq)]
pub struct MonomialOrder {
    pub weight: Option<Vec<i64>>,
    pub var_order: Vec<usize>,
}

impl MonomialOrder {
    pub fn grevlex(n: usize) -> Self {
        Self { weight: None, var_order: (0..n).collect() }
    }

    /// Grevlex with `x_last` the smallest variable.
    pub fn grevlex_last(n: usize, last: usize) -> Self {
        let mut var_order: Vec<usize> = (0..n).filter(|&i| i != last).collect();
        var_order.push(last);
        Self { weight: None, var_order }
    }

    pub fn weighted(w: &[i64]) -> Self {
        Self { weight: Some(w.to_vec()), var_order: (0..w.len()).collect() }
    }

    pub fn weight_of(&self, m: &[u32]) -> i64 {
        self.weight.as_ref().map_or(0, |w| w.iter().zip(m).map(|(a, &b)| a * b as i64).sum())
    }

    pub fn cmp(&self, a: &[u32], b: &[u32]) -> Ordering {
        if self.weight.is_some() {
            let o = self.weight_of(a).cmp(&self.weight_of(b));
            if o != Ordering::Equal {
                return o;
            }
        }
        let da: u32 = a.iter().sum();
        let db: u32 = b.iter().sum();
        if da != db {
            return da.cmp(&db);
        }
        for &i in self.var_order.iter().rev() {
            if a[i] != b[i] {
                return b[i].cmp(&a[i]);
            }
        }
        Ordering::Equal
    }
}

/// Polynomial with terms sorted by decreasing monomial order.
#[derive(Debug, Clone, PartialEq)]
pub struct Poly {
    pub terms: Vec<(Monomial, Rational)>,
}

impl Poly {
    pub fn binomial(plus: Monomial, minus: Monomial, ord: &MonomialOrder) -> Self {
        let mut p = Poly { terms: vec![(plus, Rational::one()), (minus, -Rational::one())] };
        p.sort(ord);
        p
    }

    pub fn sort(&mut self, ord: &MonomialOrder) {
        self.terms.sort_by(|a, b| ord.cmp(&b.0, &a.0));
        let mut merged: Vec<(Monomial, Rational)> = Vec::with_capacity(self.terms.len());
        for (m, c) in self.terms.drain(..) {
            match merged.last_mut() {
                Some((lm, lc)) if *lm == m => *lc += c,
                _ => merged.push((m, c)),
            }
        }
        merged.retain(|(_, c)| !c.is_zero());
        self.terms = merged;
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn lm(&self) -> &Monomial {
        &self.terms[0].0
    }

    fn make_monic(&mut self) {
        let lc = self.terms[0].1.clone();
        if !lc.is_one() {
            for t in &mut self.terms {
                t.1 /= &lc;
            }
        }
    }

    /// `self - c * x^m * g`.
    fn sub_mul(&self, c: &Rational, m: &[u32], g: &Poly, ord: &MonomialOrder) -> Poly {
        let shifted: Vec<(Monomial, Rational)> =
            g.terms.iter().map(|(gm, gc)| (gm.iter().zip(m).map(|(a, b)| a + b).collect(), -(gc * c))).collect();
        let mut out = Vec::with_capacity(self.terms.len() + shifted.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() || j < shifted.len() {
            let ord_ij = match (self.terms.get(i), shifted.get(j)) {
                (Some(a), Some(b)) => ord.cmp(&a.0, &b.0),
                (Some(_), None) => Ordering::Greater,
                _ => Ordering::Less,
            };
            match ord_ij {
                Ordering::Greater => {
                    out.push(self.terms[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    out.push(shifted[j].clone());
                    j += 1;
                }
                Ordering::Equal => {
                    let s = &self.terms[i].1 + &shifted[j].1;
                    if !s.is_zero() {
                        out.push((self.terms[i].0.clone(), s));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        Poly { terms: out }
    }

    /// Largest power of `x_var` dividing every term.
    pub fn divide_out(&mut self, var: usize) {
        let k = self.terms.iter().map(|(m, _)| m[var]).min().unwrap_or(0);
        if k > 0 {
            for t in &mut self.terms {
                t.0[var] -= k;
            }
        }
    }
}

pub fn divides(a: &[u32], b: &[u32]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

fn lcm(a: &[u32], b: &[u32]) -> Monomial {
    a.iter().zip(b).map(|(x, y)| *x.max(y)).collect()
}

fn quotient(a: &[u32], b: &[u32]) -> Monomial {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

fn coprime(a: &[u32], b: &[u32]) -> bool {
    a.iter().zip(b).all(|(x, y)| *x == 0 || *y == 0)
}

/// Full reduction of `f` modulo `g`.
pub fn reduce(f: &Poly, g: &[Poly], ord: &MonomialOrder) -> Poly {
    let mut p = f.clone();
    let mut rem: Vec<(Monomial, Rational)> = Vec::new();
    while !p.is_zero() {
        let (lm, lc) = p.terms[0].clone();
        match g.iter().find(|h| !h.is_zero() && divides(h.lm(), &lm)) {
            Some(h) => {
                let c = &lc / &h.terms[0].1;
                p = p.sub_mul(&c, &quotient(&lm, h.lm()), h, ord);
            }
            None => {
                rem.push((lm, lc));
                p.terms.remove(0);
            }
        }
    }
    Poly { terms: rem }
}

fn spoly(f: &Poly, g: &Poly, ord: &MonomialOrder) -> Poly {
    let l = lcm(f.lm(), g.lm());
    let mf = quotient(&l, f.lm());
    let mg = quotient(&l, g.lm());
    let a = Poly { terms: Vec::new() }.sub_mul(&-(Rational::one() / &f.terms[0].1), &mf, f, ord);
    a.sub_mul(&(Rational::one() / &g.terms[0].1), &mg, g, ord)
}

/// Reduced Groebner basis.
pub fn groebner(gens: &[Poly], ord: &MonomialOrder) -> Vec<Poly> {
    let mut basis: Vec<Poly> = Vec::new();
    for g in gens {
        let mut g = g.clone();
        g.sort(ord);
        if !g.is_zero() {
            g.make_monic();
            basis.push(g);
        }
    }
    let mut pending: HashSet<(usize, usize)> = HashSet::new();
    for j in 0..basis.len() {
        for i in 0..j {
            pending.insert((i, j));
        }
    }
    while !pending.is_empty() {
        let &(i, j) = pending
            .iter()
            .min_by(|a, b| {
                let la = lcm(basis[a.0].lm(), basis[a.1].lm());
                let lb = lcm(basis[b.0].lm(), basis[b.1].lm());
                la.iter().sum::<u32>().cmp(&lb.iter().sum::<u32>()).then_with(|| ord.cmp(&la, &lb)).then(a.cmp(b))
            })
            .unwrap();
        pending.remove(&(i, j));
        if coprime(basis[i].lm(), basis[j].lm()) {
            continue;
        }
        let l = lcm(basis[i].lm(), basis[j].lm());
        let chain = (0..basis.len()).any(|k| {
            k != i
                && k != j
                && divides(basis[k].lm(), &l)
                && !pending.contains(&(i.min(k), i.max(k)))
                && !pending.contains(&(j.min(k), j.max(k)))
        });
        if chain {
            continue;
        }
        let mut r = reduce(&spoly(&basis[i], &basis[j], ord), &basis, ord);
        if r.is_zero() {
            continue;
        }
        r.make_monic();
        let k = basis.len();
        basis.push(r);
        for i in 0..k {
            pending.insert((i, k));
        }
    }
    interreduce(basis, ord)
}

fn interreduce(mut basis: Vec<Poly>, ord: &MonomialOrder) -> Vec<Poly> {
    basis.sort_by(|a, b| ord.cmp(a.lm(), b.lm()));
    let mut minimal: Vec<Poly> = Vec::new();
    for g in basis {
        if !minimal.iter().any(|h| divides(h.lm(), g.lm())) {
            minimal.retain(|h| !divides(g.lm(), h.lm()));
            minimal.push(g);
        }
    }
    let mut out = Vec::with_capacity(minimal.len());
    for i in 0..minimal.len() {
        let others: Vec<Poly> = minimal.iter().enumerate().filter(|(j, _)| *j != i).map(|(_, p)| p.clone()).collect();
        let head = Poly { terms: vec![minimal[i].terms[0].clone()] };
        let tail = Poly { terms: minimal[i].terms[1..].to_vec() };
        let mut red = reduce(&tail, &others, ord);
        red.terms.insert(0, head.terms[0].clone());
        red.make_monic();
        out.push(red);
    }
    out.sort_by(|a, b| ord.cmp(a.lm(), b.lm()));
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat_int;

    #[test]
    fn twisted_cubic_basis() {
        // ker of [1 1 1 1; 0 1 2 3]: x1x3 - x2^2, x2x4 - x3^2, x1x4 - x2x3
        let ord = MonomialOrder::grevlex(4);
        let gens = vec![
            Poly::binomial(vec![1, 0, 1, 0], vec![0, 2, 0, 0], &ord),
            Poly::binomial(vec![0, 1, 0, 1], vec![0, 0, 2, 0], &ord),
        ];
        let gb = groebner(&gens, &ord);
        let x = Poly { terms: vec![(vec![1, 0, 0, 1], rat_int(1)), (vec![0, 1, 1, 0], rat_int(-1))] };
        // x1x4 - x2x3 lies in the saturation; x2 times it already lies in the ideal.
        let mut x1 = x.clone();
        for t in &mut x1.terms {
            t.0[1] += 1;
        }
        x1.sort(&ord);
        assert!(reduce(&x1, &gb, &ord).is_zero());
    }
}
