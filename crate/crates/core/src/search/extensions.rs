//! Odd extensions of small even algebras and the connected case.

use super::comult::admissible_counits;
use super::poly::Poly;
use super::solver::{solve_families, GridSpec, SearchStatus, UnknownSystem};
use crate::antipode::{solve_antipode, AntipodeStatus};
use crate::axioms::{check_all, is_superalgebra};
use crate::classify::{superalgebra_isomorphism, IsoStatus};
use crate::error::{Error, Result};
use crate::graded::{tensor_square_product, BasisIndex, GradedVector, Superspace, TensorVector};
use crate::scalar::GaussScalar;
use crate::structures::{ComultTable, CounitVector, MultTable, SuperBialgebraData};

const EXTENSION_BUDGET: u64 = 100_000;

#[derive(Clone, Debug)]
pub struct ExtensionClasses {
    pub status: SearchStatus,
    pub classes: Vec<SuperBialgebraData>,
}

/// Unknown products `e_i·y = α_i y`, `y·e_i = β_i y`, `y·y = Σ γ_k e_k` on `A₀ ⊕ Ky`.
struct Ansatz {
    space: Superspace,
    left: Vec<Poly>,
    right: Vec<Poly>,
    square: Vec<Poly>,
}

impl Ansatz {
    fn new(n0: usize, sys: &mut UnknownSystem) -> Self {
        let mut left = vec![Poly::one()];
        let mut right = vec![Poly::one()];
        for i in 2..=n0 {
            left.push(Poly::var(sys.add_variable(format!("alpha_{i}"))));
        }
        for i in 2..=n0 {
            right.push(Poly::var(sys.add_variable(format!("beta_{i}"))));
        }
        let square = (1..=n0).map(|k| Poly::var(sys.add_variable(format!("gamma_{k}")))).collect();
        Ansatz { space: Superspace { n0, n1: 1 }, left, right, square }
    }

    /// Product of basis vectors as polynomial coordinates.
    fn product(&self, even: &MultTable, a: BasisIndex, b: BasisIndex) -> Vec<Poly> {
        let d = self.space.dim();
        let mut out = vec![Poly::zero(); d];
        let y = d - 1;
        match (a.is_odd(), b.is_odd()) {
            (false, false) => {
                for (k, c) in even.get(a, b).terms() {
                    out[k.position - 1] = Poly::constant(c.clone());
                }
            }
            (false, true) => out[y] = self.left[a.position - 1].clone(),
            (true, false) => out[y] = self.right[b.position - 1].clone(),
            (true, true) => out[..y].clone_from_slice(&self.square),
        }
        out
    }

    fn mul_vec(&self, even: &MultTable, u: &[Poly], v: &[Poly]) -> Vec<Poly> {
        let d = self.space.dim();
        let mut out = vec![Poly::zero(); d];
        for (i, pu) in u.iter().enumerate().filter(|(_, p)| !p.is_zero()) {
            for (j, pv) in v.iter().enumerate().filter(|(_, p)| !p.is_zero()) {
                let prod = self.product(even, self.space.from_flat(i), self.space.from_flat(j));
                let c = pu.mul(pv);
                for (o, p) in out.iter_mut().zip(prod) {
                    if !p.is_zero() {
                        o.add_assign(&c.mul(&p));
                    }
                }
            }
        }
        out
    }

    fn basis(&self, k: usize) -> Vec<Poly> {
        let mut v = vec![Poly::zero(); self.space.dim()];
        v[k] = Poly::one();
        v
    }

    fn table(&self, even: &MultTable, point: &[GaussScalar]) -> MultTable {
        let space = self.space;
        MultTable::from_fn(space, |a, b| {
            let coords: Vec<GaussScalar> = self.product(even, a, b).iter().map(|p| p.eval(point)).collect();
            GradedVector::from_dense(space, &coords)
        })
    }
}

/// Superalgebra structures on `A₀ ⊕ Ky` (one odd generator) that admit a counit, up to isomorphism.
pub fn classify_odd_extensions(even_algebra: &SuperBialgebraData, n1: usize) -> Result<ExtensionClasses> {
    if n1 != 1 {
        return Err(Error::Unsupported(format!("odd extensions with {n1} odd generators")));
    }
    if even_algebra.space.n1 != 0 {
        return Err(Error::Shape(format!("{} is not purely even", even_algebra.id)));
    }
    let even = &even_algebra.mult;
    let n0 = even_algebra.space.n0;
    let mut sys = UnknownSystem::new();
    let ansatz = Ansatz::new(n0, &mut sys);
    let d = n0 + 1;
    for i in 0..d {
        for j in 0..d {
            for k in 0..d {
                let (a, b, c) = (ansatz.basis(i), ansatz.basis(j), ansatz.basis(k));
                let left = ansatz.mul_vec(even, &ansatz.mul_vec(even, &a, &b), &c);
                let right = ansatz.mul_vec(even, &a, &ansatz.mul_vec(even, &b, &c));
                for (l, r) in left.iter().zip(&right) {
                    sys.add_constraint(l.sub(r));
                }
            }
        }
    }
    let out = solve_families(&sys, EXTENSION_BUDGET);
    let mut status = out.status;
    let mut candidates = Vec::new();
    for fam in &out.families {
        // Free parameters are normalized to 0 or 1 by rescaling.
        for mask in 0..(1u32 << fam.free.len()) {
            let assignment: Vec<GaussScalar> =
                (0..fam.free.len()).map(|i| if mask >> i & 1 == 1 { GaussScalar::one() } else { GaussScalar::zero() }).collect();
            candidates.push(fam.specialize(&assignment));
        }
    }
    let mut classes: Vec<SuperBialgebraData> = Vec::new();
    for point in candidates {
        let data = SuperBialgebraData::algebra(format!("ext({})", even_algebra.id), ansatz.table(even, &point));
        if !is_superalgebra(&data) {
            return Err(Error::Internal("extension fails associativity".into()));
        }
        let counits = admissible_counits(&data, &GridSpec::default(), EXTENSION_BUDGET)?;
        status = status.and(counits.status);
        if counits.counits.is_empty() {
            continue;
        }
        let mut duplicate = false;
        for c in &classes {
            match superalgebra_isomorphism(c, &data)?.status {
                IsoStatus::Iso(_) => {
                    duplicate = true;
                    break;
                }
                IsoStatus::NonIso(_) => {}
                IsoStatus::Undetermined => status = SearchStatus::GridLimited,
            }
        }
        if !duplicate {
            classes.push(data);
        }
    }
    for (k, c) in classes.iter_mut().enumerate() {
        c.id = format!("ext({})#{}", even_algebra.id, k + 1);
    }
    Ok(ExtensionClasses { status, classes })
}

#[derive(Clone, Debug)]
pub enum ConnectedOutcome {
    Structure(Box<SuperBialgebraData>),
    /// `Δ(x_i)Δ(x_j) − Δ(x_i x_j)` for the first failing pair.
    Nonexistent { pair: (BasisIndex, BasisIndex), residual: TensorVector },
}

/// The candidate forced in the connected case: odd products vanish and odd generators are primitive.
pub fn connected_candidate(n1: usize) -> Result<SuperBialgebraData> {
    let space = Superspace::new(1, n1)?;
    let mult = MultTable::unital(space, |_, _| GradedVector::zero(space));
    let comult = ComultTable::from_fn(space, |b| {
        let mut t = TensorVector::pure(vec![space, space], vec![BasisIndex::UNIT, b], GaussScalar::one());
        if b != BasisIndex::UNIT {
            t.add_term(vec![b, BasisIndex::UNIT], GaussScalar::one());
        }
        t
    });
    Ok(SuperBialgebraData::bialgebra(format!("connected({n1})"), mult, comult, CounitVector::new(vec![GaussScalar::one()])))
}

pub fn connected_decision(n1: usize) -> Result<ConnectedOutcome> {
    if n1 == 0 {
        return Err(Error::Unsupported("the connected case needs at least one odd generator".into()));
    }
    let data = connected_candidate(n1)?;
    let comult = data.comult()?;
    for i in 1..=n1 {
        for j in 1..=n1 {
            let (a, b) = (BasisIndex::odd(i), BasisIndex::odd(j));
            let prod = tensor_square_product(comult.get(a), comult.get(b), |p, q| data.mult.get(p, q).clone())?;
            let image = comult.apply(data.mult.get(a, b));
            let mut residual = prod;
            residual.add_scaled(&image, &-GaussScalar::one());
            if !residual.is_zero() {
                return Ok(ConnectedOutcome::Nonexistent { pair: (a, b), residual });
            }
        }
    }
    if !check_all(&data)?.iter().all(|r| r.holds) {
        return Err(Error::Internal("connected candidate fails an axiom".into()));
    }
    let data = match solve_antipode(&data)?.status {
        AntipodeStatus::Found(s) => data.with_antipode(s),
        _ => data,
    };
    Ok(ConnectedOutcome::Structure(Box::new(data)))
}
