//! Exact axiom checks on basis tuples, with the residual LHS − RHS kept for every failure.

use crate::error::Result;
use crate::graded::{koszul, superflip, BasisIndex, GradedVector, TensorVector};
use crate::scalar::GaussScalar;
use crate::structures::SuperBialgebraData;
use serde::{Deserialize, Serialize};
use std::fmt;

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum AxiomId {
    Associativity,
    Unit,
    Coassociativity,
    Counit,
    CompatDeltaMu,
    CompatDeltaEta,
    CompatEpsMu,
    CompatEpsEta,
    GrouplikeUnit,
    Commutative,
    Cocommutative,
}

impl AxiomId {
    /// The nine axioms a superbialgebra must satisfy.
    pub const STRUCTURAL: [AxiomId; 9] = [
        AxiomId::Associativity,
        AxiomId::Unit,
        AxiomId::Coassociativity,
        AxiomId::Counit,
        AxiomId::CompatDeltaMu,
        AxiomId::CompatDeltaEta,
        AxiomId::CompatEpsMu,
        AxiomId::CompatEpsEta,
        AxiomId::GrouplikeUnit,
    ];

    pub const INFORMATIONAL: [AxiomId; 2] = [AxiomId::Commutative, AxiomId::Cocommutative];

    fn needs_coalgebra(self) -> bool {
        !matches!(self, AxiomId::Associativity | AxiomId::Unit | AxiomId::Commutative)
    }
}

impl fmt::Display for AxiomId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// One failing basis tuple and its residual. Scalars are arity-0 tensors, vectors arity 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub basis: Vec<BasisIndex>,
    pub residual: TensorVector,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AxiomReport {
    pub axiom: AxiomId,
    pub holds: bool,
    pub violations: Vec<Violation>,
}

impl AxiomReport {
    fn from_violations(axiom: AxiomId, violations: Vec<Violation>) -> Self {
        AxiomReport { axiom, holds: violations.is_empty(), violations }
    }
}

struct Checker<'a> {
    d: &'a SuperBialgebraData,
    out: Vec<Violation>,
}

impl Checker<'_> {
    fn record(&mut self, basis: Vec<BasisIndex>, residual: TensorVector) {
        if !residual.is_zero() {
            self.out.push(Violation { basis, residual });
        }
    }

    fn mul(&self, a: BasisIndex, b: BasisIndex) -> &GradedVector {
        self.d.mult.get(a, b)
    }

    fn vec(&self, v: &GradedVector) -> TensorVector {
        TensorVector::from(v)
    }
}

fn delta_of(d: &SuperBialgebraData) -> impl Fn(BasisIndex) -> TensorVector + '_ {
    move |b| d.comult.as_ref().expect("checked").get(b).clone()
}

fn eps_of(d: &SuperBialgebraData) -> impl Fn(BasisIndex) -> TensorVector + '_ {
    move |b| TensorVector::scalar(d.counit.as_ref().expect("checked").value(b))
}

/// Checks one axiom on every basis tuple.
pub fn check_axiom(data: &SuperBialgebraData, axiom: AxiomId) -> Result<AxiomReport> {
    if axiom.needs_coalgebra() {
        data.comult()?;
        data.counit()?;
    }
    let space = data.space;
    let basis = space.basis();
    let pair = vec![space, space];
    let mut c = Checker { d: data, out: Vec::new() };
    match axiom {
        AxiomId::Associativity => {
            for &a in &basis {
                for &b in &basis {
                    let ab = c.mul(a, b).clone();
                    for &e in &basis {
                        let left = data.mult.product(&ab, &c.d.basis_vector(e));
                        let right = data.mult.product(&c.d.basis_vector(a), c.mul(b, e));
                        let r = c.vec(&(&left - &right));
                        c.record(vec![a, b, e], r);
                    }
                }
            }
        }
        AxiomId::Unit => {
            for &b in &basis {
                let v = c.d.basis_vector(b);
                let r = c.vec(&(c.mul(BasisIndex::UNIT, b) - &v));
                c.record(vec![BasisIndex::UNIT, b], r);
                let r = c.vec(&(c.mul(b, BasisIndex::UNIT) - &v));
                c.record(vec![b, BasisIndex::UNIT], r);
            }
        }
        AxiomId::Coassociativity => {
            let delta = delta_of(data);
            for &a in &basis {
                let da = delta(a);
                let left = da.expand_factor(0, 0, &pair, &delta);
                let right = da.expand_factor(1, 0, &pair, &delta);
                c.record(vec![a], &left - &right);
            }
        }
        AxiomId::Counit => {
            let (delta, eps) = (delta_of(data), eps_of(data));
            for &a in &basis {
                let da = delta(a);
                let v = c.vec(&c.d.basis_vector(a));
                c.record(vec![a], &da.expand_factor(0, 0, &[], &eps) - &v);
                c.record(vec![a], &da.expand_factor(1, 0, &[], &eps) - &v);
            }
        }
        AxiomId::CompatDeltaMu => {
            let comult = data.comult()?;
            for &a in &basis {
                for &b in &basis {
                    let left = comult.apply(c.mul(a, b));
                    let right = crate::graded::tensor_square_product(comult.get(a), comult.get(b), |x, y| {
                        data.mult.get(x, y).clone()
                    })?;
                    c.record(vec![a, b], &left - &right);
                }
            }
        }
        AxiomId::CompatDeltaEta => {
            let one = TensorVector::pure(pair.clone(), vec![BasisIndex::UNIT; 2], GaussScalar::one());
            c.record(vec![BasisIndex::UNIT], data.comult()?.get(BasisIndex::UNIT) - &one);
        }
        AxiomId::CompatEpsMu => {
            let eps = data.counit()?;
            for &a in &basis {
                for &b in &basis {
                    let r = eps.apply(c.mul(a, b)) - eps.value(a) * eps.value(b);
                    c.record(vec![a, b], TensorVector::scalar(r));
                }
            }
        }
        AxiomId::CompatEpsEta => {
            let r = data.counit()?.value(BasisIndex::UNIT) - GaussScalar::one();
            c.record(vec![BasisIndex::UNIT], TensorVector::scalar(r));
        }
        AxiomId::GrouplikeUnit => {
            let u = c.d.unit();
            let uu = TensorVector::tensor_of(&[&u, &u]);
            c.record(vec![BasisIndex::UNIT], &data.comultiply(&u)? - &uu);
            let r = data.counit()?.apply(&u) - GaussScalar::one();
            c.record(vec![BasisIndex::UNIT], TensorVector::scalar(r));
        }
        AxiomId::Commutative => {
            for &a in &basis {
                for &b in &basis {
                    let ba = c.mul(b, a);
                    let ba = if koszul(a.parity, b.parity) { ba.scale(&GaussScalar::from_int(-1)) } else { ba.clone() };
                    let r = c.vec(&(c.mul(a, b) - &ba));
                    c.record(vec![a, b], r);
                }
            }
        }
        AxiomId::Cocommutative => {
            let comult = data.comult()?;
            for &a in &basis {
                let da = comult.get(a);
                c.record(vec![a], &superflip(da)? - da);
            }
        }
    }
    Ok(AxiomReport::from_violations(axiom, c.out))
}

/// Reports for the nine structural axioms.
pub fn check_all(data: &SuperBialgebraData) -> Result<Vec<AxiomReport>> {
    AxiomId::STRUCTURAL.iter().map(|&a| check_axiom(data, a)).collect()
}

/// True when every structural axiom holds.
pub fn is_superbialgebra(data: &SuperBialgebraData) -> bool {
    check_all(data).is_ok_and(|rs| rs.iter().all(|r| r.holds))
}

pub fn is_commutative(data: &SuperBialgebraData) -> bool {
    check_axiom(data, AxiomId::Commutative).is_ok_and(|r| r.holds)
}

pub fn is_cocommutative(data: &SuperBialgebraData) -> bool {
    check_axiom(data, AxiomId::Cocommutative).is_ok_and(|r| r.holds)
}

/// Associativity and unit only: the superalgebra predicate.
pub fn is_superalgebra(data: &SuperBialgebraData) -> bool {
    data.mult.violations().is_empty()
        && [AxiomId::Associativity, AxiomId::Unit].iter().all(|&a| check_axiom(data, a).is_ok_and(|r| r.holds))
}
