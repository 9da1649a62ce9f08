//! Antipodes by exact linear algebra, and the standard antipode properties.

use crate::axioms::{check_all, is_cocommutative, is_commutative};
use crate::error::{Error, Result};
use crate::graded::{koszul, superflip, BasisIndex, GradedVector};
use crate::linalg::{solve, LinearSolution, Matrix};
use crate::scalar::GaussScalar;
use crate::structures::{ComultTable, GradedLinearMap, SuperBialgebraData};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fmt;

/// Which convolution identity an equation comes from.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Side {
    /// μ ∘ (S ⊗ id) ∘ Δ = η ∘ ε
    Left,
    /// μ ∘ (id ⊗ S) ∘ Δ = η ∘ ε
    Right,
}

/// One scalar equation: the `coordinate` component of a convolution identity on `basis`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EquationRef {
    pub side: Side,
    pub basis: BasisIndex,
    pub coordinate: BasisIndex,
}

impl fmt::Display for EquationRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self.side {
            Side::Left => "S*id",
            Side::Right => "id*S",
        };
        write!(f, "({s})({})[{}]", self.basis, self.coordinate)
    }
}

/// A weighted sum of equations whose unknowns cancel while the constants give `0 = value`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Certificate {
    pub combination: Vec<(GaussScalar, EquationRef)>,
    pub value: GaussScalar,
}

impl fmt::Display for Certificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self.combination.iter().map(|(w, e)| format!("({w})·{e}")).collect();
        write!(f, "{} gives 0 = {}", terms.join(" + "), self.value)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AntipodeStatus {
    Found(GradedLinearMap),
    NotFound(Certificate),
    /// Dimension of the solution space; impossible for a valid superbialgebra.
    NonUnique(usize),
}

impl AntipodeStatus {
    pub fn is_found(&self) -> bool {
        matches!(self, AntipodeStatus::Found(_))
    }

    pub fn antipode(&self) -> Option<&GradedLinearMap> {
        match self {
            AntipodeStatus::Found(s) => Some(s),
            _ => None,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            AntipodeStatus::Found(_) => "Found",
            AntipodeStatus::NotFound(_) => "NotFound",
            AntipodeStatus::NonUnique(_) => "NonUnique",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AntipodeResult {
    pub status: AntipodeStatus,
    /// False when the input failed a structural axiom; the status then means nothing.
    pub precondition_holds: bool,
}

/// Column of λ for "coefficient of e_m in S(e_a)".
fn unknown(data: &SuperBialgebraData, a: BasisIndex, m: BasisIndex) -> usize {
    let n = data.space.block(a.parity);
    let offset = if a.parity == 0 { 0 } else { data.space.n0 * data.space.n0 };
    offset + (a.position - 1) * n + (m.position - 1)
}

fn block_basis(data: &SuperBialgebraData, parity: u8) -> Vec<BasisIndex> {
    (1..=data.space.block(parity)).map(|position| BasisIndex { parity, position }).collect()
}

/// The linear system in the entries of S, with one labelled row per scalar equation.
fn system(data: &SuperBialgebraData) -> Result<(Matrix, Vec<GaussScalar>, Vec<EquationRef>)> {
    let comult = data.comult()?;
    let eps = data.counit()?;
    let space = data.space;
    let nvars = space.n0 * space.n0 + space.n1 * space.n1;
    let mut rows = Vec::new();
    let mut rhs = Vec::new();
    let mut refs = Vec::new();
    for side in [Side::Left, Side::Right] {
        for k in space.basis() {
            // coefficient rows indexed by output coordinate
            let mut block: Vec<Vec<GaussScalar>> = vec![vec![GaussScalar::zero(); nvars]; space.dim()];
            for (idx, c) in comult.get(k).terms() {
                let (a, b) = (idx[0], idx[1]);
                let (acted, other) = if side == Side::Left { (a, b) } else { (b, a) };
                for m in block_basis(data, acted.parity) {
                    let prod = if side == Side::Left { data.mult.get(m, other) } else { data.mult.get(other, m) };
                    let col = unknown(data, acted, m);
                    for (j, z) in prod.terms() {
                        block[space.flat(j)][col] += &(c * z);
                    }
                }
            }
            for j in space.basis() {
                let target = if j == BasisIndex::UNIT { eps.value(k) } else { GaussScalar::zero() };
                rows.push(std::mem::take(&mut block[space.flat(j)]));
                rhs.push(target);
                refs.push(EquationRef { side, basis: k, coordinate: j });
            }
        }
    }
    Ok((Matrix::from_rows(rows), rhs, refs))
}

fn map_from_unknowns(data: &SuperBialgebraData, x: &[GaussScalar]) -> Result<GradedLinearMap> {
    let images: Vec<GradedVector> = data
        .space
        .basis()
        .into_iter()
        .map(|a| {
            let mut v = GradedVector::zero(data.space);
            for m in block_basis(data, a.parity) {
                v.add_term(m, x[unknown(data, a, m)].clone());
            }
            v
        })
        .collect();
    GradedLinearMap::from_images(data.space, &images)
}

/// Decides whether `data` has an antipode by solving both convolution identities.
pub fn solve_antipode(data: &SuperBialgebraData) -> Result<AntipodeResult> {
    let precondition_holds = check_all(data)?.iter().all(|r| r.holds);
    let (a, b, refs) = system(data)?;
    let status = match solve(&a, &b)? {
        LinearSolution::Inconsistent { combination, value } => AntipodeStatus::NotFound(Certificate {
            combination: combination.into_iter().zip(refs).filter(|(w, _)| !w.is_zero()).collect(),
            value,
        }),
        LinearSolution::Consistent { kernel, .. } if !kernel.is_empty() => AntipodeStatus::NonUnique(kernel.len()),
        LinearSolution::Consistent { particular, .. } => AntipodeStatus::Found(map_from_unknowns(data, &particular)?),
    };
    Ok(AntipodeResult { status, precondition_holds })
}

/// Residuals of both convolution identities for a candidate S, per basis vector.
pub fn convolution_residuals(
    data: &SuperBialgebraData,
    s: &GradedLinearMap,
) -> Result<Vec<(Side, BasisIndex, GradedVector)>> {
    let comult = data.comult()?;
    let eps = data.counit()?;
    let mut out = Vec::new();
    for k in data.space.basis() {
        let target = data.unit().scale(&eps.value(k));
        let mut left = GradedVector::zero(data.space);
        let mut right = GradedVector::zero(data.space);
        for (idx, c) in comult.get(k).terms() {
            let (a, b) = (data.basis_vector(idx[0]), data.basis_vector(idx[1]));
            left.add_scaled(&data.mult.product(&s.apply(&a), &b), c);
            right.add_scaled(&data.mult.product(&a, &s.apply(&b)), c);
        }
        for (side, v) in [(Side::Left, left), (Side::Right, right)] {
            let r = &v - &target;
            if !r.is_zero() {
                out.push((side, k, r));
            }
        }
    }
    Ok(out)
}

pub fn is_antipode(data: &SuperBialgebraData, s: &GradedLinearMap) -> bool {
    s.space() == data.space && convolution_residuals(data, s).is_ok_and(|r| r.is_empty())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PropertyCheck {
    pub number: u8,
    pub name: String,
    /// `None` when the property's hypothesis does not apply.
    pub holds: Option<bool>,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PropertyReport {
    /// S satisfies both convolution identities; otherwise the checks are not run.
    pub valid: bool,
    pub checks: Vec<PropertyCheck>,
}

impl PropertyReport {
    pub fn all_hold(&self) -> bool {
        self.valid && self.checks.iter().all(|c| c.holds != Some(false))
    }

    pub fn failures(&self) -> Vec<String> {
        if !self.valid {
            return vec!["convolution identities".into()];
        }
        self.checks.iter().filter(|c| c.holds == Some(false)).map(|c| format!("{} {}", c.number, c.name)).collect()
    }

    pub fn get(&self, number: u8) -> Option<&PropertyCheck> {
        self.checks.iter().find(|c| c.number == number)
    }
}

fn check(number: u8, name: &str, holds: Option<bool>, detail: impl Into<String>) -> PropertyCheck {
    PropertyCheck { number, name: name.into(), holds, detail: detail.into() }
}

fn neg_if(sign: bool, v: GradedVector) -> GradedVector {
    if sign {
        v.scale(&GaussScalar::from_int(-1))
    } else {
        v
    }
}

/// Checks the seven antipode properties of `s` on `data`, using the stored antipode when `s` is `None`.
pub fn verify_properties(data: &SuperBialgebraData, s: Option<&GradedLinearMap>) -> Result<PropertyReport> {
    let s = match s.or(data.antipode.as_ref()) {
        Some(s) => s.clone(),
        None => return Err(Error::MissingStructure(format!("{} has no antipode to verify", data.id))),
    };
    if !is_antipode(data, &s) {
        return Ok(PropertyReport { valid: false, checks: Vec::new() });
    }
    let space = data.space;
    let basis = space.basis();
    let comult = data.comult()?;
    let eps = data.counit()?;
    let mut checks = Vec::new();

    let mut bad = Vec::new();
    for &a in &basis {
        for &b in &basis {
            let left = s.apply(data.mult.get(a, b));
            let right = neg_if(koszul(a.parity, b.parity), data.mult.product(&s.image(b), &s.image(a)));
            if left != right {
                bad.push(format!("({a},{b})"));
            }
        }
    }
    checks.push(check(1, "anti-homomorphism", Some(bad.is_empty()), bad.join(" ")));

    let s1 = s.image(BasisIndex::UNIT);
    checks.push(check(2, "S(1) = 1", Some(s1 == data.unit()), format!("S(1) = {s1}")));

    let bad: Vec<String> =
        basis.iter().filter(|&&a| eps.apply(&s.image(a)) != eps.value(a)).map(|a| a.to_string()).collect();
    checks.push(check(3, "counit invariance", Some(bad.is_empty()), bad.join(" ")));

    let mut bad = Vec::new();
    for &a in &basis {
        let left = superflip(&s.apply_tensor(comult.get(a)))?;
        let right = comult.apply(&s.image(a));
        if left != right {
            bad.push(a.to_string());
        }
    }
    checks.push(check(4, "anti-cohomomorphism", Some(bad.is_empty()), bad.join(" ")));

    let (comm, cocomm) = (is_commutative(data), is_cocommutative(data));
    let s2 = s.compose(&s)?;
    let involutive = s2 == GradedLinearMap::identity(space);
    let p5 = if comm || cocomm { Some(involutive) } else { None };
    let why = format!("commutative {comm}, cocommutative {cocomm}, S^2 = id {involutive}");
    checks.push(check(5, "involutive when (co)commutative", p5, why));

    let p6 = match s.inverse() {
        None => check(6, "inverse is the coopposite antipode", None, "S is not bijective"),
        Some(inv) => {
            let flipped = ComultTable::from_fn(space, |b| superflip(comult.get(b)).expect("arity two"));
            let mut cop = data.clone();
            cop.comult = Some(flipped);
            cop.antipode = Some(inv.clone());
            let axioms = check_all(&cop)?.iter().all(|r| r.holds);
            let conv = is_antipode(&cop, &inv);
            check(6, "inverse is the coopposite antipode", Some(axioms && conv), format!("axioms {axioms}, convolution {conv}"))
        }
    };
    checks.push(p6);

    let (d0, d1) = s.determinants();
    let p7 = !d0.is_zero() && !d1.is_zero();
    checks.push(check(7, "bijective", Some(p7), format!("det even {d0}, det odd {d1}")));

    Ok(PropertyReport { valid: true, checks })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CensusRow {
    pub id: String,
    pub family: String,
    pub result: AntipodeResult,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Census {
    pub rows: Vec<CensusRow>,
}

impl Census {
    pub fn found(&self) -> Vec<&str> {
        self.rows.iter().filter(|r| r.result.status.is_found()).map(|r| r.id.as_str()).collect()
    }

    /// family → (records, antipodes found)
    pub fn by_family(&self) -> BTreeMap<String, (usize, usize)> {
        let mut out: BTreeMap<String, (usize, usize)> = BTreeMap::new();
        for r in &self.rows {
            let e = out.entry(r.family.clone()).or_default();
            e.0 += 1;
            e.1 += usize::from(r.result.status.is_found());
        }
        out
    }
}

/// The part of an id before the entry number: `A_{3|2}^1` → `A_{3|2}`.
pub fn family_of(id: &str) -> &str {
    id.rsplit_once('^').map_or(id, |(f, _)| f)
}

/// Runs [`solve_antipode`] on every record.
pub fn hopf_census(records: &[SuperBialgebraData]) -> Result<Census> {
    let rows = records
        .iter()
        .map(|d| {
            Ok(CensusRow { id: d.id.clone(), family: family_of(&d.id).to_string(), result: solve_antipode(d)? })
        })
        .collect::<Result<_>>()?;
    Ok(Census { rows })
}
