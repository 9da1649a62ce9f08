//! Counits and comultiplications compatible with a fixed superalgebra.

use super::poly::Poly;
use super::solver::{solve, GridSpec, SearchStatus, UnknownSystem};
use super::tensor::PolyAlgebra;
use crate::axioms::is_superbialgebra;
use crate::error::{Error, Result};
use crate::graded::{BasisIndex, GradedVector, TensorVector};
use crate::linalg::Matrix;
use crate::scalar::GaussScalar;
use crate::structures::{ComultTable, CounitVector, SuperBialgebraData};

#[derive(Clone, Debug)]
pub struct CounitSearch {
    pub status: SearchStatus,
    pub counits: Vec<CounitVector>,
}

#[derive(Clone, Debug)]
pub struct ComultSearch {
    pub status: SearchStatus,
    pub generators: Vec<String>,
    pub results: Vec<(ComultTable, CounitVector)>,
    pub branches: u64,
    pub budget_exhausted: bool,
}

/// Homogeneous generators and the words in them that span the algebra.
#[derive(Clone, Debug)]
pub struct GeneratingSet {
    pub names: Vec<String>,
    pub vectors: Vec<GradedVector>,
    /// Words as generator indices; the empty word is the unit.
    pub words: Vec<Vec<usize>>,
    /// Column `k` holds the coordinates of `e_k` on the words.
    pub basis_on_words: Matrix,
}

fn check_unital(algebra: &SuperBialgebraData) -> Result<()> {
    let v = algebra.mult.violations();
    if v.is_empty() {
        Ok(())
    } else {
        Err(Error::Validation(v))
    }
}

/// Solves ε(ab) = ε(a)ε(b) with ε(1) = 1 and ε(odd) = 0.
pub fn admissible_counits(algebra: &SuperBialgebraData, grid: &GridSpec, budget: u64) -> Result<CounitSearch> {
    check_unital(algebra)?;
    let space = algebra.space;
    let mut sys = UnknownSystem::new();
    let mut eps: Vec<Poly> = Vec::new();
    for b in space.basis() {
        eps.push(if b == BasisIndex::UNIT {
            Poly::one()
        } else if b.is_odd() {
            Poly::zero()
        } else {
            Poly::var(sys.add_variable(format!("xi_{}", b.position)))
        });
    }
    for a in space.basis() {
        for b in space.basis() {
            let mut lhs = Poly::zero();
            for (k, c) in algebra.mult.get(a, b).terms() {
                lhs.add_scaled(&eps[space.flat(k)], c);
            }
            sys.add_constraint(lhs.sub(&eps[space.flat(a)].mul(&eps[space.flat(b)])));
        }
    }
    let out = solve(&sys, grid, budget);
    let counits = out
        .points
        .iter()
        .map(|p| CounitVector::new(eps[..space.n0].iter().map(|e| e.eval(p)).collect()))
        .collect();
    Ok(CounitSearch { status: out.status, counits })
}

fn span_rank(vectors: &[Vec<GaussScalar>], d: usize) -> usize {
    if vectors.is_empty() {
        return 0;
    }
    Matrix::from_columns(d, vectors).rank()
}

fn words_for(algebra: &SuperBialgebraData, gens: &[GradedVector]) -> (Vec<Vec<usize>>, Vec<GradedVector>) {
    let d = algebra.space.dim();
    let mut words = vec![Vec::new()];
    let mut vecs = vec![algebra.unit()];
    let mut dense = vec![algebra.unit().to_dense()];
    let mut i = 0;
    while i < words.len() && words.len() < d {
        for (g, gv) in gens.iter().enumerate() {
            let v = algebra.mult.product(&vecs[i], gv);
            let mut trial = dense.clone();
            trial.push(v.to_dense());
            if span_rank(&trial, d) > dense.len() {
                let mut w = words[i].clone();
                w.push(g);
                words.push(w);
                vecs.push(v);
                dense = trial;
            }
        }
        i += 1;
    }
    (words, vecs)
}

/// The shortest prefix of the labels (else of the non-unit basis) that generates the algebra.
pub fn generating_set(algebra: &SuperBialgebraData) -> Result<GeneratingSet> {
    let space = algebra.space;
    let d = space.dim();
    let unit = algebra.unit().to_dense();
    let mut candidates: Vec<Vec<(String, GradedVector)>> = Vec::new();
    if let Some(labels) = &algebra.basis_labels {
        let usable: Vec<_> = labels
            .iter()
            .filter(|l| l.vector.is_homogeneous() && span_rank(&[unit.clone(), l.vector.to_dense()], d) == 2)
            .map(|l| (l.name.clone(), l.vector.clone()))
            .collect();
        candidates.push(usable);
    }
    candidates.push(
        space.basis().into_iter().skip(1).map(|b| (b.to_string(), GradedVector::basis(space, b))).collect(),
    );
    for cand in candidates {
        for len in 0..=cand.len() {
            let gens: Vec<GradedVector> = cand[..len].iter().map(|(_, v)| v.clone()).collect();
            let (words, vecs) = words_for(algebra, &gens);
            if words.len() == d {
                let w = Matrix::from_columns(d, &vecs.iter().map(GradedVector::to_dense).collect::<Vec<_>>());
                let inv = w.inverse().ok_or_else(|| Error::Internal("word matrix is singular".into()))?;
                return Ok(GeneratingSet {
                    names: cand[..len].iter().map(|(n, _)| n.clone()).collect(),
                    vectors: gens,
                    words,
                    basis_on_words: inv,
                });
            }
        }
    }
    Err(Error::GeneratingSet(algebra.id.clone()))
}

/// Δ on every basis vector, as polynomials in the generator unknowns.
struct DeltaUnknowns {
    per_basis: Vec<Vec<Poly>>,
    per_generator: Vec<Vec<Poly>>,
}

fn delta_unknowns(alg: &PolyAlgebra, gens: &GeneratingSet, sys: &mut UnknownSystem) -> DeltaUnknowns {
    let d = alg.d;
    let mut per_generator = Vec::new();
    for (g, v) in gens.vectors.iter().enumerate() {
        let p = v.parity().unwrap_or(0);
        let mut t = alg.zero_t2();
        for a in 0..d {
            for b in 0..d {
                if (alg.parity(a) + alg.parity(b)) % 2 == p {
                    let name = format!("D[{}]({}⊗{})", gens.names[g], alg.basis[a], alg.basis[b]);
                    t[a * d + b] = Poly::var(sys.add_variable(name));
                }
            }
        }
        per_generator.push(t);
    }
    let unit = {
        let mut t = alg.zero_t2();
        t[0] = Poly::one();
        t
    };
    let word_deltas: Vec<Vec<Poly>> = gens
        .words
        .iter()
        .map(|w| w.iter().fold(unit.clone(), |acc, &g| alg.mul_t2(&acc, &per_generator[g])))
        .collect();
    let mut per_basis = Vec::with_capacity(d);
    for k in 0..d {
        let mut t = alg.zero_t2();
        for (w, dw) in word_deltas.iter().enumerate() {
            let c = &gens.basis_on_words[(w, k)];
            if !c.is_zero() {
                for (x, y) in t.iter_mut().zip(dw) {
                    x.add_scaled(y, c);
                }
            }
        }
        per_basis.push(t);
    }
    DeltaUnknowns { per_basis, per_generator }
}

fn counit_constraints(alg: &PolyAlgebra, gens: &GeneratingSet, delta: &DeltaUnknowns, eps: &CounitVector) -> Vec<Poly> {
    let d = alg.d;
    let e: Vec<GaussScalar> = alg.basis.iter().map(|&b| eps.value(b)).collect();
    let mut out = Vec::new();
    for (g, t) in delta.per_generator.iter().enumerate() {
        let target = gens.vectors[g].to_dense();
        for k in 0..d {
            let mut left = Poly::constant(-target[k].clone());
            let mut right = left.clone();
            for a in 0..d {
                left.add_scaled(&t[a * d + k], &e[a]);
                right.add_scaled(&t[k * d + a], &e[a]);
            }
            out.push(left);
            out.push(right);
        }
    }
    out
}

fn multiplicativity_constraints(alg: &PolyAlgebra, algebra: &SuperBialgebraData, delta: &DeltaUnknowns) -> Vec<Poly> {
    let space = algebra.space;
    let mut out = Vec::new();
    for a in 1..alg.d {
        for b in 1..alg.d {
            let prod = alg.mul_t2(&delta.per_basis[a], &delta.per_basis[b]);
            let mut lhs = alg.zero_t2();
            for (k, c) in algebra.mult.get(alg.basis[a], alg.basis[b]).terms() {
                for (x, y) in lhs.iter_mut().zip(&delta.per_basis[space.flat(k)]) {
                    x.add_scaled(y, c);
                }
            }
            out.extend(lhs.iter().zip(&prod).map(|(l, r)| l.sub(r)));
        }
    }
    out
}

fn coassociativity_constraints(alg: &PolyAlgebra, delta: &DeltaUnknowns) -> Vec<Poly> {
    let d = alg.d;
    let mut out = Vec::new();
    for t in &delta.per_generator {
        let mut left = vec![Poly::zero(); d * d * d];
        let mut right = left.clone();
        for a in 0..d {
            for b in 0..d {
                let c = &t[a * d + b];
                if c.is_zero() {
                    continue;
                }
                for p in 0..d {
                    for q in 0..d {
                        let da = &delta.per_basis[a][p * d + q];
                        if !da.is_zero() {
                            left[(p * d + q) * d + b].add_assign(&c.mul(da));
                        }
                        let db = &delta.per_basis[b][p * d + q];
                        if !db.is_zero() {
                            right[(a * d + p) * d + q].add_assign(&c.mul(db));
                        }
                    }
                }
            }
        }
        out.extend(left.iter().zip(&right).map(|(l, r)| l.sub(r)));
    }
    out
}

/// The generated constraint system for a fixed counit, with Δ unknown on the generators.
pub fn comultiplication_system(
    algebra: &SuperBialgebraData,
    eps: &CounitVector,
) -> Result<(UnknownSystem, GeneratingSet, Vec<Vec<Poly>>)> {
    check_unital(algebra)?;
    let gens = generating_set(algebra)?;
    let alg = PolyAlgebra::of(algebra);
    let mut sys = UnknownSystem::new();
    let delta = delta_unknowns(&alg, &gens, &mut sys);
    for p in counit_constraints(&alg, &gens, &delta, eps) {
        sys.add_constraint(p);
    }
    for p in multiplicativity_constraints(&alg, algebra, &delta) {
        sys.add_constraint(p);
    }
    for p in coassociativity_constraints(&alg, &delta) {
        sys.add_constraint(p);
    }
    Ok((sys, gens, delta.per_basis))
}

/// Whether a given (Δ, ε) satisfies the constraint system generated for `algebra`.
pub fn satisfies_generated_system(algebra: &SuperBialgebraData, comult: &ComultTable, eps: &CounitVector) -> Result<bool> {
    let (sys, gens, _) = comultiplication_system(algebra, eps)?;
    let alg = PolyAlgebra::of(algebra);
    let d = alg.d;
    let mut values = Vec::with_capacity(sys.len());
    for v in &gens.vectors {
        let t = comult.apply(v);
        let p = v.parity().unwrap_or(0);
        for a in 0..d {
            for b in 0..d {
                if (alg.parity(a) + alg.parity(b)) % 2 == p {
                    values.push(t.get(&[alg.basis[a], alg.basis[b]]));
                }
            }
        }
    }
    Ok(sys.constraints.iter().all(|c| c.eval(&values).is_zero()))
}

fn realize(algebra: &SuperBialgebraData, per_basis: &[Vec<Poly>], point: &[GaussScalar], eps: &CounitVector) -> SuperBialgebraData {
    let space = algebra.space;
    let d = space.dim();
    let comult = ComultTable::from_fn(space, |k| {
        let t = &per_basis[space.flat(k)];
        let mut out = TensorVector::zero(vec![space, space]);
        for (ab, p) in t.iter().enumerate() {
            let c = p.eval(point);
            if !c.is_zero() {
                out.add_term(vec![space.from_flat(ab / d), space.from_flat(ab % d)], c);
            }
        }
        out
    });
    let mut data = SuperBialgebraData::bialgebra(algebra.id.clone(), algebra.mult.clone(), comult, eps.clone());
    data.basis_labels = algebra.basis_labels.clone();
    data
}

/// Every (Δ, ε) on `algebra`, by exact elimination with grid fallback for free unknowns.
pub fn enumerate_comultiplications(algebra: &SuperBialgebraData, grid: &GridSpec, budget: u64) -> Result<ComultSearch> {
    let counits = admissible_counits(algebra, grid, budget)?;
    let mut status = counits.status;
    let mut results = Vec::new();
    let mut branches = 0;
    let mut exhausted = false;
    let mut generators = generating_set(algebra)?.names;
    for eps in &counits.counits {
        let (sys, gens, per_basis) = comultiplication_system(algebra, eps)?;
        generators = gens.names;
        let out = solve(&sys, grid, budget.saturating_sub(branches).max(1));
        branches += out.branches;
        exhausted |= out.budget_exhausted;
        status = status.and(out.status);
        for p in &out.points {
            let data = realize(algebra, &per_basis, p, eps);
            if !is_superbialgebra(&data) {
                return Err(Error::Internal(format!("emitted comultiplication on {} fails an axiom", algebra.id)));
            }
            let pair = (data.comult.clone().expect("set"), eps.clone());
            if !results.contains(&pair) {
                results.push(pair);
            }
        }
    }
    Ok(ComultSearch { status, generators, results, branches, budget_exhausted: exhausted })
}
