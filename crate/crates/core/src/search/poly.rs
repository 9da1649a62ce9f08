//! Sparse multivariate polynomials over ℚ(i).

use crate::scalar::UniPoly;
use crate::scalar::GaussScalar;
use std::collections::btree_map::Entry;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

/// Sorted `(variable, exponent)` pairs with positive exponents.
pub type Monomial = Vec<(usize, u32)>;

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    terms: BTreeMap<Monomial, GaussScalar>,
}

fn mono_mul(a: &Monomial, b: &Monomial) -> Monomial {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].0.cmp(&b[j].0) {
            std::cmp::Ordering::Less => {
                out.push(a[i]);
                i += 1;
            }
            std::cmp::Ordering::Greater => {
                out.push(b[j]);
                j += 1;
            }
            std::cmp::Ordering::Equal => {
                out.push((a[i].0, a[i].1 + b[j].1));
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend_from_slice(&b[j..]);
    out
}

impl Poly {
    pub fn zero() -> Self {
        Poly::default()
    }

    pub fn constant(c: GaussScalar) -> Self {
        let mut p = Poly::zero();
        p.add_term(Vec::new(), c);
        p
    }

    pub fn one() -> Self {
        Self::constant(GaussScalar::one())
    }

    pub fn var(v: usize) -> Self {
        let mut p = Poly::zero();
        p.add_term(vec![(v, 1)], GaussScalar::one());
        p
    }

    fn add_term(&mut self, m: Monomial, c: GaussScalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += &c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &GaussScalar)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// The value when no variable occurs.
    pub fn as_constant(&self) -> Option<GaussScalar> {
        match self.terms.len() {
            0 => Some(GaussScalar::zero()),
            1 => self.terms.get(&Vec::new()).cloned(),
            _ => None,
        }
    }

    pub fn degree(&self) -> u32 {
        self.terms.keys().map(|m| m.iter().map(|&(_, e)| e).sum()).max().unwrap_or(0)
    }

    pub fn vars(&self) -> BTreeSet<usize> {
        self.terms.keys().flat_map(|m| m.iter().map(|&(v, _)| v)).collect()
    }

    pub fn contains(&self, v: usize) -> bool {
        self.terms.keys().any(|m| m.iter().any(|&(w, _)| w == v))
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let mut out = self.clone();
        out.add_assign(other);
        out
    }

    pub fn add_assign(&mut self, other: &Poly) {
        for (m, c) in &other.terms {
            self.add_term(m.clone(), c.clone());
        }
    }

    pub fn add_scaled(&mut self, other: &Poly, s: &GaussScalar) {
        if s.is_zero() {
            return;
        }
        for (m, c) in &other.terms {
            self.add_term(m.clone(), c * s);
        }
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        let mut out = self.clone();
        out.add_scaled(other, &-GaussScalar::one());
        out
    }

    pub fn scale(&self, s: &GaussScalar) -> Poly {
        let mut out = Poly::zero();
        out.add_scaled(self, s);
        out
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        let mut out = Poly::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.add_term(mono_mul(m1, m2), c1 * c2);
            }
        }
        out
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut acc = Poly::one();
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Replaces `v` by `p` everywhere.
    pub fn substitute(&self, v: usize, p: &Poly) -> Poly {
        if !self.contains(v) {
            return self.clone();
        }
        let mut powers = vec![Poly::one()];
        let mut out = Poly::zero();
        for (m, c) in &self.terms {
            let e = m.iter().find(|&&(w, _)| w == v).map_or(0, |&(_, e)| e) as usize;
            while powers.len() <= e {
                let next = powers.last().unwrap().mul(p);
                powers.push(next);
            }
            let rest: Monomial = m.iter().copied().filter(|&(w, _)| w != v).collect();
            let mut t = Poly::zero();
            t.add_term(rest, c.clone());
            out.add_assign(&t.mul(&powers[e]));
        }
        out
    }

    /// Replaces every variable `v` by `values[v]` at once.
    pub fn compose(&self, values: &[Poly]) -> Poly {
        let mut out = Poly::zero();
        for (m, c) in &self.terms {
            let term = m.iter().fold(Poly::constant(c.clone()), |acc, &(v, e)| acc.mul(&values[v].pow(e)));
            out.add_assign(&term);
        }
        out
    }

    pub fn eval(&self, values: &[GaussScalar]) -> GaussScalar {
        self.terms
            .iter()
            .map(|(m, c)| m.iter().fold(c.clone(), |acc, &(v, e)| acc * values[v].pow(e)))
            .sum()
    }

    /// Coefficient of the degree-one monomial `v` when `v` occurs only there.
    pub fn isolated_linear(&self, v: usize) -> Option<GaussScalar> {
        let mut coeff = None;
        for (m, c) in &self.terms {
            if m.iter().any(|&(w, _)| w == v) {
                if m.len() == 1 && m[0].1 == 1 && coeff.is_none() {
                    coeff = Some(c.clone());
                } else {
                    return None;
                }
            }
        }
        coeff
    }

    /// The polynomial as a univariate one when at most `v` occurs.
    pub fn as_univariate(&self, v: usize) -> Option<UniPoly> {
        let mut coeffs = vec![GaussScalar::zero(); self.degree() as usize + 1];
        for (m, c) in &self.terms {
            match m.as_slice() {
                [] => coeffs[0] += c,
                [(w, e)] if *w == v => coeffs[*e as usize] += c,
                _ => return None,
            }
        }
        Some(UniPoly::new(coeffs))
    }

    /// Largest power of `v` dividing every term.
    pub fn var_multiplicity(&self, v: usize) -> u32 {
        self.terms
            .keys()
            .map(|m| m.iter().find(|&&(w, _)| w == v).map_or(0, |&(_, e)| e))
            .min()
            .unwrap_or(0)
    }

    pub fn divide_by_var(&self, v: usize, k: u32) -> Poly {
        let mut out = Poly::zero();
        for (m, c) in &self.terms {
            let mono = m
                .iter()
                .filter_map(|&(w, e)| {
                    if w == v {
                        (e > k).then_some((w, e - k))
                    } else {
                        Some((w, e))
                    }
                })
                .collect();
            out.add_term(mono, c.clone());
        }
        out
    }

    /// Scaled so the leading coefficient (in monomial order) is one.
    pub fn monic(&self) -> Poly {
        match self.terms.values().next_back() {
            Some(c) => self.scale(&c.inv().expect("nonzero coefficient")),
            None => Poly::zero(),
        }
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({c})")?;
            for &(v, e) in m {
                if e == 1 {
                    write!(f, "·u{v}")?;
                } else {
                    write!(f, "·u{v}^{e}")?;
                }
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::sc;

    fn x() -> Poly {
        Poly::var(0)
    }
    fn y() -> Poly {
        Poly::var(1)
    }

    #[test]
    fn arithmetic_cancels() {
        let p = x().add(&y());
        let q = x().sub(&y());
        let prod = p.mul(&q);
        assert_eq!(prod, x().mul(&x()).sub(&y().mul(&y())));
        assert!(prod.sub(&prod).is_zero());
        assert_eq!(prod.degree(), 2);
    }

    #[test]
    fn substitution_and_eval() {
        let p = x().mul(&x()).add(&y());
        let q = p.substitute(0, &y().add(&Poly::one()));
        assert_eq!(q.eval(&[sc("0"), sc("2")]), sc("11"));
        assert_eq!(q.vars().into_iter().collect::<Vec<_>>(), vec![1]);
    }

    #[test]
    fn structural_queries() {
        let p = x().mul(&y()).add(&x().scale(&sc("3")));
        assert_eq!(p.var_multiplicity(0), 1);
        assert_eq!(p.divide_by_var(0, 1), y().add(&Poly::constant(sc("3"))));
        assert_eq!(p.isolated_linear(0), None);
        let l = y().scale(&sc("2")).add(&x().mul(&x()));
        assert_eq!(l.isolated_linear(1), Some(sc("2")));
        assert!(x().mul(&x()).as_univariate(0).is_some());
        assert!(p.as_univariate(0).is_none());
    }
}
