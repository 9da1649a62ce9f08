//! Invariants of superbialgebras and a structure-guided isomorphism search.

use crate::antipode::solve_antipode;
use crate::axioms::{is_cocommutative, is_commutative};
use crate::constructions::dual;
use crate::error::{Error, Result};
use crate::graded::{BasisIndex, GradedVector, Superspace};
use crate::linalg::Matrix;
use crate::scalar::GaussScalar;
use crate::search::tensor::PolyAlgebra;
use crate::search::{solve, solve_families, GridSpec, Poly, SearchStatus, UnknownSystem};
use crate::structures::{GradedLinearMap, SuperBialgebraData};
use serde::Serialize;
use serde_json::json;
use std::fmt;

const INVARIANT_BUDGET: u64 = 50_000;
const ISO_BUDGET: u64 = 200_000;
const SPECIALIZATION_CAP: usize = 4096;

/// Echelonized bases of the even and odd primitive subspaces.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Primitives {
    pub even: Vec<GradedVector>,
    pub odd: Vec<GradedVector>,
}

impl Primitives {
    pub fn dims(&self) -> (usize, usize) {
        (self.even.len(), self.odd.len())
    }

    pub fn all(&self) -> impl Iterator<Item = &GradedVector> {
        self.even.iter().chain(&self.odd)
    }
}

/// Kernel of `a ↦ Δ(a) − a⊗1 − 1⊗a` on `ker ε`, per parity.
pub fn primitives(data: &SuperBialgebraData) -> Result<Primitives> {
    let comult = data.comult()?;
    let eps = data.counit()?;
    let space = data.space;
    let d = space.dim();
    let one = BasisIndex::UNIT;
    let mut blocks = Vec::new();
    for parity in [0u8, 1] {
        let basis: Vec<BasisIndex> = space.basis().into_iter().filter(|b| b.parity == parity).collect();
        let columns: Vec<Vec<GaussScalar>> = basis
            .iter()
            .map(|&b| {
                let mut t = comult.get(b).clone();
                t.add_term(vec![b, one], -GaussScalar::one());
                t.add_term(vec![one, b], -GaussScalar::one());
                let mut col = vec![GaussScalar::zero(); d * d + 1];
                for (idx, c) in t.terms() {
                    col[space.flat(idx[0]) * d + space.flat(idx[1])] = c.clone();
                }
                col[d * d] = eps.value(b);
                col
            })
            .collect();
        let kernel = if basis.is_empty() { Vec::new() } else { Matrix::from_columns(d * d + 1, &columns).nullspace() };
        let echelon = if kernel.is_empty() { Vec::new() } else { Matrix::from_rows(kernel).rref().0.to_rows() };
        let vectors = echelon
            .into_iter()
            .filter(|row| row.iter().any(|c| !c.is_zero()))
            .map(|row| {
                let mut v = GradedVector::zero(space);
                for (b, c) in basis.iter().zip(row) {
                    v.add_term(*b, c);
                }
                v
            })
            .collect();
        blocks.push(vectors);
    }
    let odd = blocks.pop().unwrap_or_default();
    let even = blocks.pop().unwrap_or_default();
    Ok(Primitives { even, odd })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Grouplikes {
    Exact(Vec<GradedVector>),
    AtLeast(Vec<GradedVector>),
    Undetermined,
}

impl Grouplikes {
    pub fn known(&self) -> &[GradedVector] {
        match self {
            Grouplikes::Exact(v) | Grouplikes::AtLeast(v) => v,
            Grouplikes::Undetermined => &[],
        }
    }

    pub fn count(&self) -> GrouplikeCount {
        match self {
            Grouplikes::Exact(v) => GrouplikeCount::Exact(v.len()),
            Grouplikes::AtLeast(v) => GrouplikeCount::AtLeast(v.len()),
            Grouplikes::Undetermined => GrouplikeCount::Undetermined,
        }
    }
}

/// Even `g` with `Δ(g) = g⊗g` and `ε(g) = 1`, by exact elimination.
pub fn grouplikes(data: &SuperBialgebraData) -> Result<Grouplikes> {
    let comult = data.comult()?;
    let eps = data.counit()?;
    let space = data.space;
    let d = space.dim();
    let mut sys = UnknownSystem::new();
    let coords: Vec<Poly> = (1..=space.n0).map(|k| Poly::var(sys.add_variable(format!("g_{k}")))).collect();
    let mut eps_eq = Poly::constant(-GaussScalar::one());
    let mut delta = vec![Poly::zero(); d * d];
    for (k, c) in coords.iter().enumerate() {
        let b = BasisIndex::even(k + 1);
        eps_eq.add_scaled(c, &eps.value(b));
        for (idx, x) in comult.get(b).terms() {
            delta[space.flat(idx[0]) * d + space.flat(idx[1])].add_scaled(c, x);
        }
    }
    sys.add_constraint(eps_eq);
    for (i, ci) in coords.iter().enumerate() {
        for (j, cj) in coords.iter().enumerate() {
            delta[i * d + j] = delta[i * d + j].sub(&ci.mul(cj));
        }
    }
    for p in delta {
        sys.add_constraint(p);
    }
    let out = solve_families(&sys, INVARIANT_BUDGET);
    let mut points: Vec<GradedVector> = out
        .families
        .iter()
        .filter_map(|f| f.point())
        .map(|p| {
            let mut v = GradedVector::zero(space);
            for (k, c) in p.into_iter().enumerate() {
                v.add_term(BasisIndex::even(k + 1), c);
            }
            v
        })
        .collect();
    points.sort_by_key(|v| v.to_dense());
    if let Some(pos) = points.iter().position(|v| *v == data.unit()) {
        let unit = points.remove(pos);
        points.insert(0, unit);
    }
    let positive_dimensional = out.families.iter().any(|f| !f.is_point());
    Ok(if out.status == SearchStatus::Complete && !positive_dimensional {
        Grouplikes::Exact(points)
    } else if points.is_empty() {
        Grouplikes::Undetermined
    } else {
        Grouplikes::AtLeast(points)
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum GrouplikeCount {
    Exact(usize),
    AtLeast(usize),
    Undetermined,
}

impl GrouplikeCount {
    fn compatible(&self, other: &GrouplikeCount) -> bool {
        match (self, other) {
            (GrouplikeCount::Exact(a), GrouplikeCount::Exact(b)) => a == b,
            (GrouplikeCount::Exact(a), GrouplikeCount::AtLeast(b)) | (GrouplikeCount::AtLeast(b), GrouplikeCount::Exact(a)) => a >= b,
            _ => true,
        }
    }
}

/// Isomorphism invariants, with one dual level.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Fingerprint {
    pub is_commutative: bool,
    pub is_cocommutative: bool,
    pub dim_even_primitives: usize,
    pub dim_odd_primitives: usize,
    pub grouplike_count: GrouplikeCount,
    pub has_antipode: bool,
    /// ε on the idempotents of the even part, sorted; `None` when they are not finitely many.
    pub counit_spectrum: Option<Vec<GaussScalar>>,
    pub dual_level1: Option<Box<Fingerprint>>,
}

impl Fingerprint {
    /// The first field on which the two fingerprints certainly differ.
    pub fn difference(&self, other: &Fingerprint) -> Option<&'static str> {
        if self.is_commutative != other.is_commutative {
            return Some("is_commutative");
        }
        if self.is_cocommutative != other.is_cocommutative {
            return Some("is_cocommutative");
        }
        if self.dim_even_primitives != other.dim_even_primitives {
            return Some("dim_even_primitives");
        }
        if self.dim_odd_primitives != other.dim_odd_primitives {
            return Some("dim_odd_primitives");
        }
        if !self.grouplike_count.compatible(&other.grouplike_count) {
            return Some("grouplike_count");
        }
        if self.has_antipode != other.has_antipode {
            return Some("has_antipode");
        }
        if let (Some(a), Some(b)) = (&self.counit_spectrum, &other.counit_spectrum) {
            if a != b {
                return Some("counit_spectrum");
            }
        }
        if let (Some(a), Some(b)) = (&self.dual_level1, &other.dual_level1) {
            if a.difference(b).is_some() {
                return Some("dual_level1");
            }
        }
        None
    }
}

impl fmt::Display for GrouplikeCount {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GrouplikeCount::Exact(n) => write!(f, "{n}"),
            GrouplikeCount::AtLeast(n) => write!(f, "at least {n}"),
            GrouplikeCount::Undetermined => write!(f, "undetermined"),
        }
    }
}

impl fmt::Display for Fingerprint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let spectrum = match &self.counit_spectrum {
            Some(v) => v.iter().map(ToString::to_string).collect::<Vec<_>>().join(", "),
            None => "*".into(),
        };
        write!(
            f,
            "commutative {}, cocommutative {}, primitives ({}|{}), group-likes {}, antipode {}, counit spectrum [{spectrum}]",
            self.is_commutative,
            self.is_cocommutative,
            self.dim_even_primitives,
            self.dim_odd_primitives,
            self.grouplike_count,
            self.has_antipode,
        )?;
        if let Some(d) = &self.dual_level1 {
            write!(f, "; dual: {d}")?;
        }
        Ok(())
    }
}

/// ε on every idempotent of A₀, or `None` when the idempotents form a positive-dimensional set.
fn counit_spectrum(data: &SuperBialgebraData) -> Result<Option<Vec<GaussScalar>>> {
    let eps = data.counit()?;
    let space = data.space;
    let alg = PolyAlgebra::of(data);
    let mut sys = UnknownSystem::new();
    let mut e = alg.zero_vec();
    for (k, slot) in e.iter_mut().take(space.n0).enumerate() {
        *slot = Poly::var(sys.add_variable(format!("e_{}", k + 1)));
    }
    for (l, r) in alg.mul_vec(&e, &e).iter().zip(&e) {
        sys.add_constraint(l.sub(r));
    }
    let out = solve_families(&sys, INVARIANT_BUDGET);
    if out.status != SearchStatus::Complete || out.families.iter().any(|f| !f.is_point()) {
        return Ok(None);
    }
    let mut values: Vec<GaussScalar> = out
        .families
        .iter()
        .filter_map(|f| f.point())
        .map(|p| p.iter().enumerate().map(|(k, c)| c * &eps.value(BasisIndex::even(k + 1))).sum())
        .collect();
    values.sort();
    Ok(Some(values))
}

fn fingerprint_level(data: &SuperBialgebraData, with_dual: bool) -> Result<Fingerprint> {
    let prim = primitives(data)?;
    let (dim_even_primitives, dim_odd_primitives) = prim.dims();
    let dual_level1 = if with_dual { Some(Box::new(fingerprint_level(&dual(data)?, false)?)) } else { None };
    Ok(Fingerprint {
        is_commutative: is_commutative(data),
        is_cocommutative: is_cocommutative(data),
        dim_even_primitives,
        dim_odd_primitives,
        grouplike_count: grouplikes(data)?.count(),
        has_antipode: solve_antipode(data)?.status.is_found(),
        counit_spectrum: counit_spectrum(data)?,
        dual_level1,
    })
}

pub fn fingerprint(data: &SuperBialgebraData) -> Result<Fingerprint> {
    data.comult()?;
    fingerprint_level(data, true)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum IsoStatus {
    Iso(GradedLinearMap),
    NonIso(String),
    Undetermined,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IsoResult {
    pub status: IsoStatus,
}

impl IsoResult {
    pub fn is_iso(&self) -> bool {
        matches!(self.status, IsoStatus::Iso(_))
    }

    pub fn name(&self) -> &'static str {
        match self.status {
            IsoStatus::Iso(_) => "iso",
            IsoStatus::NonIso(_) => "non-iso",
            IsoStatus::Undetermined => "undetermined",
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        match &self.status {
            IsoStatus::Iso(t) => json!({
                "status": "iso",
                "even_block": t.even_block().to_rows().iter().map(|r| r.iter().map(|c| c.to_string()).collect::<Vec<_>>()).collect::<Vec<_>>(),
                "odd_block": t.odd_block().to_rows().iter().map(|r| r.iter().map(|c| c.to_string()).collect::<Vec<_>>()).collect::<Vec<_>>(),
            }),
            IsoStatus::NonIso(field) => json!({"status": "non-iso", "witness": field}),
            IsoStatus::Undetermined => json!({"status": "undetermined"}),
        }
    }
}

impl fmt::Display for IsoResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.status {
            IsoStatus::Iso(t) => {
                write!(f, "iso:")?;
                for b in t.space().basis() {
                    write!(f, " {b} ↦ {};", t.image(b))?;
                }
                Ok(())
            }
            IsoStatus::NonIso(w) => write!(f, "non-iso (differs in {w})"),
            IsoStatus::Undetermined => write!(f, "undetermined"),
        }
    }
}

/// Unknown entries of an even map `T`, with `T(1) = 1` unless `free_unit`.
pub struct IsoSystem {
    pub system: UnknownSystem,
    /// `columns[k]` is `T(e_k)` in target coordinates.
    pub columns: Vec<Vec<Poly>>,
    pub space: Superspace,
}

fn poly_det(m: &[Vec<Poly>]) -> Poly {
    match m.len() {
        0 => Poly::one(),
        1 => m[0][0].clone(),
        n => {
            let mut acc = Poly::zero();
            for j in 0..n {
                if m[0][j].is_zero() {
                    continue;
                }
                let minor: Vec<Vec<Poly>> =
                    m[1..].iter().map(|row| row.iter().enumerate().filter(|&(k, _)| k != j).map(|(_, p)| p.clone()).collect()).collect();
                let term = m[0][j].mul(&poly_det(&minor));
                acc = if j % 2 == 0 { acc.add(&term) } else { acc.sub(&term) };
            }
            acc
        }
    }
}

/// Polynomial conditions for `T: d1 → d2` to be a morphism of (bi)algebras; optionally invertible.
pub fn isomorphism_system(
    d1: &SuperBialgebraData,
    d2: &SuperBialgebraData,
    coalgebra: bool,
    invertible: bool,
    free_unit: bool,
) -> Result<IsoSystem> {
    if d1.space != d2.space {
        return Err(Error::Shape(format!("{} and {} have different dimensions", d1.id, d2.id)));
    }
    let space = d1.space;
    let d = space.dim();
    let basis = space.basis();
    let mut sys = UnknownSystem::new();
    let mut columns = Vec::with_capacity(d);
    for &b in &basis {
        let mut col = vec![Poly::zero(); d];
        if b == BasisIndex::UNIT && !free_unit {
            col[0] = Poly::one();
        } else {
            for &r in basis.iter().filter(|r| r.parity == b.parity) {
                col[space.flat(r)] = Poly::var(sys.add_variable(format!("T[{r},{b}]")));
            }
        }
        columns.push(col);
    }
    let alg2 = PolyAlgebra::of(d2);
    for &a in &basis {
        for &b in &basis {
            let prod = alg2.mul_vec(&columns[space.flat(a)], &columns[space.flat(b)]);
            let mut image = vec![Poly::zero(); d];
            for (k, c) in d1.mult.get(a, b).terms() {
                for (x, y) in image.iter_mut().zip(&columns[space.flat(k)]) {
                    x.add_scaled(y, c);
                }
            }
            for (l, r) in image.iter().zip(&prod) {
                sys.add_constraint(l.sub(r));
            }
        }
    }
    if coalgebra {
        let (c1, c2) = (d1.comult()?, d2.comult()?);
        let (e1, e2) = (d1.counit()?, d2.counit()?);
        for &a in &basis {
            let col = &columns[space.flat(a)];
            let mut left = vec![Poly::zero(); d * d];
            for (k, p) in col.iter().enumerate().filter(|(_, p)| !p.is_zero()) {
                for (idx, c) in c2.get(space.from_flat(k)).terms() {
                    left[space.flat(idx[0]) * d + space.flat(idx[1])].add_scaled(p, c);
                }
            }
            let mut right = vec![Poly::zero(); d * d];
            for (idx, c) in c1.get(a).terms() {
                let (u, v) = (&columns[space.flat(idx[0])], &columns[space.flat(idx[1])]);
                for (i, pu) in u.iter().enumerate().filter(|(_, p)| !p.is_zero()) {
                    for (j, pv) in v.iter().enumerate().filter(|(_, p)| !p.is_zero()) {
                        right[i * d + j].add_scaled(&pu.mul(pv), c);
                    }
                }
            }
            for (l, r) in left.iter().zip(&right) {
                sys.add_constraint(l.sub(r));
            }
            let mut eps = Poly::constant(-e1.value(a));
            for (k, p) in col.iter().enumerate() {
                eps.add_scaled(p, &e2.value(space.from_flat(k)));
            }
            sys.add_constraint(eps);
        }
    }
    let mut iso = IsoSystem { system: sys, columns, space };
    if invertible {
        let w = Poly::var(iso.system.add_variable("w"));
        let det = iso.determinant();
        iso.system.add_constraint(w.mul(&det).sub(&Poly::one()));
    }
    Ok(iso)
}

impl IsoSystem {
    /// Product of the even and odd block determinants of `T`.
    pub fn determinant(&self) -> Poly {
        let basis = self.space.basis();
        let block = |parity: u8| -> Vec<Vec<Poly>> {
            let idx: Vec<usize> = basis.iter().filter(|b| b.parity == parity).map(|&b| self.space.flat(b)).collect();
            idx.iter().map(|&r| idx.iter().map(|&c| self.columns[c][r].clone()).collect()).collect()
        };
        poly_det(&block(0)).mul(&poly_det(&block(1)))
    }
}

fn map_from_point(iso: &IsoSystem, point: &[GaussScalar]) -> Result<GradedLinearMap> {
    let space = iso.space;
    let images: Vec<GradedVector> = iso
        .columns
        .iter()
        .map(|col| GradedVector::from_dense(space, &col.iter().map(|p| p.eval(point)).collect::<Vec<_>>()))
        .collect();
    GradedLinearMap::from_images(space, &images)
}

/// Exact check of the morphism laws plus invertibility.
pub fn is_isomorphism(d1: &SuperBialgebraData, d2: &SuperBialgebraData, t: &GradedLinearMap, coalgebra: bool) -> Result<bool> {
    if !t.is_invertible() || t.space() != d1.space || d1.space != d2.space {
        return Ok(false);
    }
    let space = d1.space;
    for a in space.basis() {
        let ta = t.image(a);
        for b in space.basis() {
            if t.apply(d1.mult.get(a, b)) != d2.mult.product(&ta, &t.image(b)) {
                return Ok(false);
            }
        }
        if coalgebra {
            if t.apply_tensor(d1.comult()?.get(a)) != d2.comult()?.apply(&ta) {
                return Ok(false);
            }
            if d1.counit()?.value(a) != d2.counit()?.apply(&ta) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

fn annihilator(space: Superspace, vectors: &[GradedVector]) -> Vec<Vec<GaussScalar>> {
    let d = space.dim();
    if vectors.is_empty() {
        return Matrix::identity(d).to_rows();
    }
    Matrix::from_rows(vectors.iter().map(GradedVector::to_dense).collect()).nullspace()
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out.sort();
    out
}

/// Fingerprint filter, then a search guided by group-likes and primitives.
pub fn find_isomorphism(d1: &SuperBialgebraData, d2: &SuperBialgebraData) -> Result<IsoResult> {
    if d1.space != d2.space {
        return Err(Error::Shape(format!("{} and {} have different dimensions", d1.id, d2.id)));
    }
    let (f1, f2) = (fingerprint(d1)?, fingerprint(d2)?);
    if let Some(field) = f1.difference(&f2) {
        return Ok(IsoResult { status: IsoStatus::NonIso(field.into()) });
    }
    let identity = GradedLinearMap::identity(d1.space);
    if is_isomorphism(d1, d2, &identity, true)? {
        return Ok(IsoResult { status: IsoStatus::Iso(identity) });
    }
    let base = isomorphism_system(d1, d2, true, false, false)?;
    let space = d1.space;
    let mut guided = base.system.clone();
    let (p1, p2) = (primitives(d1)?, primitives(d2)?);
    let ann = annihilator(space, &p2.all().cloned().collect::<Vec<_>>());
    for p in p1.all() {
        let image = apply_columns(&base.columns, p);
        for row in &ann {
            let mut eq = Poly::zero();
            for (x, c) in image.iter().zip(row) {
                eq.add_scaled(x, c);
            }
            guided.add_constraint(eq);
        }
    }
    let (g1, g2) = (grouplikes(d1)?, grouplikes(d2)?);
    let assignments: Vec<Vec<(GradedVector, GradedVector)>> = match (&g1, &g2) {
        (Grouplikes::Exact(a), Grouplikes::Exact(b)) if a.len() == b.len() && a.len() > 1 => permutations(a.len() - 1)
            .into_iter()
            .map(|perm| a[1..].iter().cloned().zip(perm.into_iter().map(|k| b[k + 1].clone())).collect())
            .collect(),
        _ => vec![Vec::new()],
    };
    let grid = GridSpec::default();
    let accept = |t: &GradedLinearMap| is_isomorphism(d1, d2, t, true);
    for pairs in assignments {
        let mut sys = guided.clone();
        for (g, h) in &pairs {
            let image = apply_columns(&base.columns, g);
            for (x, c) in image.iter().zip(h.to_dense()) {
                sys.add_constraint(x.sub(&Poly::constant(c)));
            }
        }
        let branch = IsoSystem { system: sys, columns: base.columns.clone(), space };
        if let Some(t) = search_invertible(&branch, &grid, &accept)?.0 {
            return Ok(IsoResult { status: IsoStatus::Iso(t) });
        }
    }
    Ok(IsoResult { status: IsoStatus::Undetermined })
}

/// Grid values with 1 first and 0 last.
fn preferred_values(grid: &GridSpec) -> Vec<GaussScalar> {
    let mut values: Vec<GaussScalar> = grid.values.iter().filter(|v| !v.is_zero()).cloned().collect();
    values.sort_by_key(|v| !v.is_one());
    values.push(GaussScalar::zero());
    values
}

fn scalar_height(c: &GaussScalar) -> u64 {
    if c.is_zero() {
        0
    } else if c.is_one() {
        1
    } else {
        2 + [c.re_num(), c.re_den(), c.im_num(), c.im_den()].iter().map(|n| n.bits()).sum::<u64>()
    }
}

/// Solves `iso.system` and looks for an invertible member accepted by `accept`.
/// The flag reports whether every solution family was shown to be singular.
fn search_invertible(
    iso: &IsoSystem,
    grid: &GridSpec,
    accept: &dyn Fn(&GradedLinearMap) -> Result<bool>,
) -> Result<(Option<GradedLinearMap>, bool)> {
    let det = iso.determinant();
    let values = preferred_values(grid);
    let out = solve_families(&iso.system, ISO_BUDGET);
    let mut all_singular = out.status == SearchStatus::Complete;
    for fam in &out.families {
        let det_f = det.compose(&fam.values);
        if det_f.is_zero() {
            continue;
        }
        all_singular = false;
        let mut digits = vec![0usize; fam.free.len()];
        for _ in 0..SPECIALIZATION_CAP {
            let assignment: Vec<GaussScalar> = digits.iter().map(|&d| values[d].clone()).collect();
            let mut full = vec![GaussScalar::zero(); iso.system.len()];
            for (&v, a) in fam.free.iter().zip(&assignment) {
                full[v] = a.clone();
            }
            if !det_f.eval(&full).is_zero() {
                let t = map_from_point(iso, &fam.specialize(&assignment))?;
                if accept(&t)? {
                    return Ok((Some(t), false));
                }
            }
            if !advance(&mut digits, values.len()) {
                break;
            }
        }
    }
    if out.status != SearchStatus::Complete {
        let mut sys = iso.system.clone();
        let w = Poly::var(sys.add_variable("w"));
        sys.add_constraint(w.mul(&det).sub(&Poly::one()));
        let mut points = solve(&sys, grid, ISO_BUDGET).points;
        points.sort_by_key(|p| p.iter().map(scalar_height).sum::<u64>());
        for p in points {
            let t = map_from_point(iso, &p)?;
            if accept(&t)? {
                return Ok((Some(t), false));
            }
        }
    }
    Ok((None, all_singular))
}

fn advance(digits: &mut [usize], radix: usize) -> bool {
    for d in digits.iter_mut() {
        *d += 1;
        if *d < radix {
            return true;
        }
        *d = 0;
    }
    false
}

fn apply_columns(columns: &[Vec<Poly>], v: &GradedVector) -> Vec<Poly> {
    let d = columns.len();
    let mut out = vec![Poly::zero(); d];
    for (k, c) in v.to_dense().iter().enumerate() {
        if !c.is_zero() {
            for (o, p) in out.iter_mut().zip(&columns[k]) {
                o.add_scaled(p, c);
            }
        }
    }
    out
}

/// Isomorphism of the underlying superalgebras, decided by exhaustive elimination when it closes.
pub fn superalgebra_isomorphism(a: &SuperBialgebraData, b: &SuperBialgebraData) -> Result<IsoResult> {
    if a.space != b.space {
        return Ok(IsoResult { status: IsoStatus::NonIso("dimensions".into()) });
    }
    if is_commutative(a) != is_commutative(b) {
        return Ok(IsoResult { status: IsoStatus::NonIso("is_commutative".into()) });
    }
    let iso = isomorphism_system(a, b, false, false, false)?;
    let accept = |t: &GradedLinearMap| is_isomorphism(a, b, t, false);
    let (found, all_singular) = search_invertible(&iso, &GridSpec::default(), &accept)?;
    Ok(IsoResult {
        status: match found {
            Some(t) => IsoStatus::Iso(t),
            None if all_singular => IsoStatus::NonIso("exhaustive elimination".into()),
            None => IsoStatus::Undetermined,
        },
    })
}
