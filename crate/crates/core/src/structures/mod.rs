//! Structure-constant tables for superalgebras, supercoalgebras and superbialgebras.

mod document;

pub use document::{deserialize, serialize, Document, LabelDoc, MapEntryDoc, ProductDoc, TermDoc, TensorTermDoc};

use crate::error::{Error, Result};
use crate::graded::{BasisIndex, GradedVector, LinearMap, Superspace, TensorVector};
use crate::linalg::Matrix;
use crate::scalar::GaussScalar;

/// Products of basis vectors, `entries[flat(i)·dim + flat(j)] = e_i·e_j`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct MultTable {
    space: Superspace,
    entries: Vec<GradedVector>,
}

impl MultTable {
    pub fn zero(space: Superspace) -> Self {
        MultTable { space, entries: vec![GradedVector::zero(space); space.dim() * space.dim()] }
    }

    /// Table with `e1^0` acting as unit and every other product given by `f`.
    pub fn unital(space: Superspace, f: impl Fn(BasisIndex, BasisIndex) -> GradedVector) -> Self {
        Self::from_fn(space, |a, b| {
            if a == BasisIndex::UNIT {
                GradedVector::basis(space, b)
            } else if b == BasisIndex::UNIT {
                GradedVector::basis(space, a)
            } else {
                f(a, b)
            }
        })
    }

    pub fn from_fn(space: Superspace, f: impl Fn(BasisIndex, BasisIndex) -> GradedVector) -> Self {
        let basis = space.basis();
        let mut entries = Vec::with_capacity(basis.len() * basis.len());
        for &a in &basis {
            for &b in &basis {
                let v = f(a, b);
                assert_eq!(v.space(), space, "product outside the space");
                entries.push(v);
            }
        }
        MultTable { space, entries }
    }

    pub fn space(&self) -> Superspace {
        self.space
    }

    pub fn get(&self, a: BasisIndex, b: BasisIndex) -> &GradedVector {
        &self.entries[self.space.flat(a) * self.space.dim() + self.space.flat(b)]
    }

    pub fn set(&mut self, a: BasisIndex, b: BasisIndex, v: GradedVector) {
        let k = self.space.flat(a) * self.space.dim() + self.space.flat(b);
        self.entries[k] = v;
    }

    pub fn product(&self, v: &GradedVector, w: &GradedVector) -> GradedVector {
        let mut out = GradedVector::zero(self.space);
        for (a, x) in v.terms() {
            for (b, y) in w.terms() {
                out.add_scaled(self.get(a, b), &(x * y));
            }
        }
        out
    }

    /// Grading and unit violations, one message per offending entry.
    pub fn violations(&self) -> Vec<String> {
        let mut out = Vec::new();
        for a in self.space.basis() {
            for b in self.space.basis() {
                let v = self.get(a, b);
                let want = (a.parity + b.parity) % 2;
                if v.terms().any(|(k, _)| k.parity != want) {
                    out.push(format!("mult {a}·{b} = {v} violates the grading"));
                }
            }
            let unit = GradedVector::basis(self.space, a);
            if self.get(BasisIndex::UNIT, a) != &unit || self.get(a, BasisIndex::UNIT) != &unit {
                out.push(format!("missing unit: e1^0 does not act as identity on {a}"));
            }
        }
        out
    }
}

/// `entries[flat(i)] = Δ(e_i)` in A⊗A.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ComultTable {
    space: Superspace,
    entries: Vec<TensorVector>,
}

impl ComultTable {
    pub fn from_fn(space: Superspace, f: impl Fn(BasisIndex) -> TensorVector) -> Self {
        let entries = space
            .basis()
            .into_iter()
            .map(|b| {
                let t = f(b);
                assert_eq!(t.factors(), &[space, space], "coproduct outside A⊗A");
                t
            })
            .collect();
        ComultTable { space, entries }
    }

    pub fn space(&self) -> Superspace {
        self.space
    }

    pub fn get(&self, b: BasisIndex) -> &TensorVector {
        &self.entries[self.space.flat(b)]
    }

    pub fn apply(&self, v: &GradedVector) -> TensorVector {
        let mut out = TensorVector::zero(vec![self.space, self.space]);
        for (b, c) in v.terms() {
            out.add_scaled(self.get(b), c);
        }
        out
    }

    pub fn violations(&self) -> Vec<String> {
        let mut out = Vec::new();
        for b in self.space.basis() {
            let t = self.get(b);
            if t.terms().any(|(k, _)| (k[0].parity + k[1].parity) % 2 != b.parity) {
                out.push(format!("comult Δ({b}) = {t} violates the grading"));
            }
        }
        let one = TensorVector::pure(vec![self.space, self.space], vec![BasisIndex::UNIT; 2], GaussScalar::one());
        if self.get(BasisIndex::UNIT) != &one {
            out.push(format!("comult Δ(e1^0) = {} is not e1^0⊗e1^0", self.get(BasisIndex::UNIT)));
        }
        out
    }
}

/// Counit values on the even basis; odd basis vectors map to zero.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CounitVector {
    values: Vec<GaussScalar>,
}

impl CounitVector {
    pub fn new(values: Vec<GaussScalar>) -> Self {
        CounitVector { values }
    }

    pub fn values(&self) -> &[GaussScalar] {
        &self.values
    }

    pub fn value(&self, b: BasisIndex) -> GaussScalar {
        if b.is_odd() {
            GaussScalar::zero()
        } else {
            self.values[b.position - 1].clone()
        }
    }

    pub fn apply(&self, v: &GradedVector) -> GaussScalar {
        v.terms().filter(|(b, _)| !b.is_odd()).map(|(b, c)| c * &self.values[b.position - 1]).sum()
    }

    pub fn to_linear_map(&self, space: Superspace) -> LinearMap {
        let k = Superspace::K;
        let images = space
            .basis()
            .into_iter()
            .map(|b| GradedVector::term(k, BasisIndex::UNIT, self.value(b)))
            .collect();
        LinearMap::new(space, k, 0, images).expect("counit is even")
    }
}

/// An even linear endomorphism in block form; column `i` of a block is the image of `e_i`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GradedLinearMap {
    even: Matrix,
    odd: Matrix,
}

impl GradedLinearMap {
    pub fn new(even: Matrix, odd: Matrix) -> Result<Self> {
        if !even.is_square() || !odd.is_square() || even.rows() == 0 {
            return Err(Error::Shape("graded linear map blocks must be square, even block nonempty".into()));
        }
        Ok(GradedLinearMap { even, odd })
    }

    pub fn identity(space: Superspace) -> Self {
        GradedLinearMap { even: Matrix::identity(space.n0), odd: Matrix::identity(space.n1) }
    }

    /// From the images of the basis vectors, which must preserve parity.
    pub fn from_images(space: Superspace, images: &[GradedVector]) -> Result<Self> {
        if images.len() != space.dim() {
            return Err(Error::Shape("one image per basis vector required".into()));
        }
        let mut even = Matrix::zeros(space.n0, space.n0);
        let mut odd = Matrix::zeros(space.n1, space.n1);
        for (k, img) in images.iter().enumerate() {
            let b = space.from_flat(k);
            for (t, c) in img.terms() {
                if t.parity != b.parity {
                    return Err(Error::Shape(format!("image of {b} has a term in {t}")));
                }
                let m = if b.parity == 0 { &mut even } else { &mut odd };
                m[(t.position - 1, b.position - 1)] = c.clone();
            }
        }
        Ok(GradedLinearMap { even, odd })
    }

    pub fn space(&self) -> Superspace {
        Superspace { n0: self.even.rows(), n1: self.odd.rows() }
    }

    pub fn even_block(&self) -> &Matrix {
        &self.even
    }

    pub fn odd_block(&self) -> &Matrix {
        &self.odd
    }

    pub fn block(&self, parity: u8) -> &Matrix {
        if parity == 0 {
            &self.even
        } else {
            &self.odd
        }
    }

    pub fn image(&self, b: BasisIndex) -> GradedVector {
        let space = self.space();
        let m = self.block(b.parity);
        let mut v = GradedVector::zero(space);
        for k in 0..m.rows() {
            v.add_term(BasisIndex { parity: b.parity, position: k + 1 }, m[(k, b.position - 1)].clone());
        }
        v
    }

    pub fn apply(&self, v: &GradedVector) -> GradedVector {
        let mut out = GradedVector::zero(self.space());
        for (b, c) in v.terms() {
            out.add_scaled(&self.image(b), c);
        }
        out
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &GradedLinearMap) -> Result<GradedLinearMap> {
        Ok(GradedLinearMap { even: self.even.mul(&other.even)?, odd: self.odd.mul(&other.odd)? })
    }

    pub fn determinants(&self) -> (GaussScalar, GaussScalar) {
        (self.even.det().expect("square"), self.odd.det().expect("square"))
    }

    pub fn is_invertible(&self) -> bool {
        let (a, b) = self.determinants();
        !a.is_zero() && !b.is_zero()
    }

    pub fn inverse(&self) -> Option<GradedLinearMap> {
        Some(GradedLinearMap { even: self.even.inverse()?, odd: self.odd.inverse()? })
    }

    pub fn transpose(&self) -> GradedLinearMap {
        GradedLinearMap { even: self.even.transpose(), odd: self.odd.transpose() }
    }

    pub fn to_linear_map(&self) -> LinearMap {
        let space = self.space();
        let images = space.basis().into_iter().map(|b| self.image(b)).collect();
        LinearMap::new(space, space, 0, images).expect("block maps are even")
    }

    /// Applies `self ⊗ self` to a tensor of any arity (no signs: the map is even).
    pub fn apply_tensor(&self, t: &TensorVector) -> TensorVector {
        let space = self.space();
        let mut out = t.clone();
        for pos in 0..t.arity() {
            out = out.expand_factor(pos, 0, &[space], |b| TensorVector::from(&self.image(b)));
        }
        out
    }
}

/// A named human label for a vector of the space (e.g. `x = e2^0 − e3^0`).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Label {
    pub name: String,
    pub vector: GradedVector,
}

/// The tuple (A, μ, η, Δ, ε, S) as tables; comult and counit are jointly optional.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SuperBialgebraData {
    pub id: String,
    pub space: Superspace,
    pub mult: MultTable,
    pub comult: Option<ComultTable>,
    pub counit: Option<CounitVector>,
    pub antipode: Option<GradedLinearMap>,
    pub basis_labels: Option<Vec<Label>>,
}

impl SuperBialgebraData {
    pub fn algebra(id: impl Into<String>, mult: MultTable) -> Self {
        SuperBialgebraData {
            id: id.into(),
            space: mult.space(),
            mult,
            comult: None,
            counit: None,
            antipode: None,
            basis_labels: None,
        }
    }

    pub fn bialgebra(id: impl Into<String>, mult: MultTable, comult: ComultTable, counit: CounitVector) -> Self {
        let mut d = Self::algebra(id, mult);
        d.comult = Some(comult);
        d.counit = Some(counit);
        d
    }

    pub fn with_antipode(mut self, s: GradedLinearMap) -> Self {
        self.antipode = Some(s);
        self
    }

    pub fn with_labels(mut self, labels: Vec<Label>) -> Self {
        self.basis_labels = Some(labels);
        self
    }

    pub fn with_id(mut self, id: impl Into<String>) -> Self {
        self.id = id.into();
        self
    }

    pub fn is_bialgebra_record(&self) -> bool {
        self.comult.is_some() && self.counit.is_some()
    }

    pub fn comult(&self) -> Result<&ComultTable> {
        self.comult.as_ref().ok_or_else(|| Error::MissingStructure(format!("{} has no comultiplication", self.id)))
    }

    pub fn counit(&self) -> Result<&CounitVector> {
        self.counit.as_ref().ok_or_else(|| Error::MissingStructure(format!("{} has no counit", self.id)))
    }

    pub fn unit(&self) -> GradedVector {
        GradedVector::unit(self.space)
    }

    pub fn basis_vector(&self, b: BasisIndex) -> GradedVector {
        GradedVector::basis(self.space, b)
    }

    pub fn multiply(&self, v: &GradedVector, w: &GradedVector) -> Result<GradedVector> {
        if v.space() != self.space || w.space() != self.space {
            return Err(Error::Shape(format!("operands outside the space of {}", self.id)));
        }
        Ok(self.mult.product(v, w))
    }

    pub fn comultiply(&self, v: &GradedVector) -> Result<TensorVector> {
        if v.space() != self.space {
            return Err(Error::Shape(format!("operand outside the space of {}", self.id)));
        }
        Ok(self.comult()?.apply(v))
    }

    /// Looks up a label by name.
    pub fn label(&self, name: &str) -> Option<&GradedVector> {
        self.basis_labels.as_ref()?.iter().find(|l| l.name == name).map(|l| &l.vector)
    }

    /// Structure constants in the basis `f_k = T(e_k)`. `T` must be invertible; the caller
    /// keeps `f_1` equal to the unit when the result should be a unital record.
    pub fn transport(&self, t: &GradedLinearMap, id: impl Into<String>) -> Result<SuperBialgebraData> {
        if t.space() != self.space {
            return Err(Error::Shape("change of basis has the wrong size".into()));
        }
        let tinv = t.inverse().ok_or_else(|| Error::Shape("change of basis is singular".into()))?;
        let space = self.space;
        let f: Vec<GradedVector> = space.basis().into_iter().map(|b| t.image(b)).collect();
        let mult = MultTable::from_fn(space, |a, b| tinv.apply(&self.mult.product(&f[space.flat(a)], &f[space.flat(b)])));
        let comult = self
            .comult
            .as_ref()
            .map(|c| ComultTable::from_fn(space, |a| tinv.apply_tensor(&c.apply(&f[space.flat(a)]))));
        let counit = self.counit.as_ref().map(|e| CounitVector::new((1..=space.n0).map(|k| e.apply(&f[k - 1])).collect()));
        let antipode = match &self.antipode {
            Some(s) => Some(tinv.compose(&s.compose(t)?)?),
            None => None,
        };
        let basis_labels = self.basis_labels.as_ref().map(|ls| {
            ls.iter().map(|l| Label { name: l.name.clone(), vector: tinv.apply(&l.vector) }).collect()
        });
        Ok(SuperBialgebraData { id: id.into(), space, mult, comult, counit, antipode, basis_labels })
    }

    /// Every table-level violation: grading, unit, Δ(1) = 1⊗1, ε(1) = 1, antipode parity.
    pub fn violations(&self) -> Vec<String> {
        let mut out = self.mult.violations();
        if self.comult.is_some() != self.counit.is_some() {
            out.push("comult and counit must be present together".into());
        }
        if let Some(c) = &self.comult {
            out.extend(c.violations());
        }
        if let Some(e) = &self.counit {
            if e.values().len() != self.space.n0 {
                out.push(format!("counit has {} even values, expected {}", e.values().len(), self.space.n0));
            } else if !e.value(BasisIndex::UNIT).is_one() {
                out.push(format!("counit ε(e1^0) = {} is not 1", e.value(BasisIndex::UNIT)));
            }
        }
        if let Some(s) = &self.antipode {
            if s.space() != self.space {
                out.push("antipode blocks have the wrong size".into());
            }
        }
        out
    }
}

/// Bilinear extension of the multiplication table.
pub fn multiply(data: &SuperBialgebraData, v: &GradedVector, w: &GradedVector) -> Result<GradedVector> {
    data.multiply(v, w)
}

/// Linear extension of the comultiplication table.
pub fn comultiply(data: &SuperBialgebraData, v: &GradedVector) -> Result<TensorVector> {
    data.comultiply(v)
}
