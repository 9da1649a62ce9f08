//! Expansion of label-level clauses into structure constants on the graded basis.

use super::expr::{self, Expr, Interp};
use super::models::FamilySpec;
use crate::error::{Error, Result};
use crate::graded::{koszul, tensor_square_product, BasisIndex, GradedVector, Superspace, TensorVector};
use crate::linalg::Matrix;
use crate::scalar::GaussScalar;
use crate::structures::{ComultTable, CounitVector, GradedLinearMap, Label, MultTable, SuperBialgebraData};
use std::collections::BTreeMap;

/// Transcribed data of one entry, on generator labels.
#[derive(Clone, Debug, Default)]
pub struct Clauses {
    pub delta: Vec<(String, Expr)>,
    pub eps: Vec<(String, Expr)>,
    pub antipode: Vec<(String, Expr)>,
    /// Evaluate every tensor with its factors exchanged (the coopposite).
    pub flipped: bool,
}

impl Clauses {
    pub fn flip(mut self) -> Self {
        self.flipped = !self.flipped;
        self
    }
}

/// A family with its table and label vectors resolved.
pub struct FamilyCtx {
    pub spec: FamilySpec,
    pub space: Superspace,
    pub mult: MultTable,
    labels: BTreeMap<String, GradedVector>,
    label_exprs: BTreeMap<String, Expr>,
    /// Columns are `1, label_basis..` in the graded basis; its inverse rewrites `e_k`.
    to_labels: Matrix,
}

#[derive(Clone, Debug)]
enum FV {
    S(GaussScalar),
    V(GradedVector),
    T(TensorVector),
}

struct VecInterp<'a> {
    ctx: &'a FamilyCtx,
    flipped: bool,
}

impl VecInterp<'_> {
    fn vector(&self, v: FV) -> Result<GradedVector> {
        match v {
            FV::S(s) => Ok(GradedVector::unit(self.ctx.space).scale(&s)),
            FV::V(v) => Ok(v),
            FV::T(_) => Err(Error::Parse("expected a vector, found a tensor".into())),
        }
    }
}

impl Interp for VecInterp<'_> {
    type V = FV;

    fn scalar(&self, s: &GaussScalar) -> Result<FV> {
        Ok(FV::S(s.clone()))
    }

    fn name(&self, n: &str) -> Result<FV> {
        self.ctx.vector_of(n).map(FV::V)
    }

    fn add(&self, a: FV, b: FV) -> Result<FV> {
        Ok(match (a, b) {
            (FV::S(x), FV::S(y)) => FV::S(x + y),
            (FV::T(x), FV::T(y)) => FV::T(&x + &y),
            (FV::T(_), _) | (_, FV::T(_)) => return Err(Error::Parse("adding a tensor to a vector".into())),
            (a, b) => FV::V(&self.vector(a)? + &self.vector(b)?),
        })
    }

    fn scale(&self, s: &GaussScalar, a: FV) -> Result<FV> {
        Ok(match a {
            FV::S(x) => FV::S(s * &x),
            FV::V(v) => FV::V(v.scale(s)),
            FV::T(t) => FV::T(t.scale(s)),
        })
    }

    fn mul(&self, a: FV, b: FV) -> Result<FV> {
        Ok(FV::V(self.ctx.mult.product(&self.vector(a)?, &self.vector(b)?)))
    }

    fn tensor(&self, a: FV, b: FV) -> Result<FV> {
        let (a, b) = (self.vector(a)?, self.vector(b)?);
        if !self.flipped {
            return Ok(FV::T(TensorVector::tensor_of(&[&a, &b])));
        }
        let (pa, pb) = match (a.parity(), b.parity()) {
            (Some(p), Some(q)) => (p, q),
            _ => (0, 0),
        };
        let t = TensorVector::tensor_of(&[&b, &a]);
        Ok(FV::T(if koszul(pa, pb) { t.scale(&GaussScalar::from_int(-1)) } else { t }))
    }

    fn as_scalar(&self, v: &FV) -> Option<GaussScalar> {
        match v {
            FV::S(s) => Some(s.clone()),
            _ => None,
        }
    }
}

/// Evaluates label definitions under Δ, extending multiplicatively.
struct DeltaInterp<'a> {
    ctx: &'a FamilyCtx,
    known: &'a BTreeMap<String, TensorVector>,
}

impl DeltaInterp<'_> {
    fn tensor(&self, v: Option<TensorVector>, s: Option<GaussScalar>) -> TensorVector {
        match (v, s) {
            (Some(t), _) => t,
            (None, Some(s)) => self.ctx.one_one().scale(&s),
            (None, None) => unreachable!(),
        }
    }
}

impl Interp for DeltaInterp<'_> {
    type V = (Option<TensorVector>, Option<GaussScalar>);

    fn scalar(&self, s: &GaussScalar) -> Result<Self::V> {
        Ok((None, Some(s.clone())))
    }

    fn name(&self, n: &str) -> Result<Self::V> {
        self.known
            .get(n)
            .cloned()
            .map(|t| (Some(t), None))
            .ok_or_else(|| Error::Parse(format!("comultiplication of `{n}` is not determined")))
    }

    fn add(&self, a: Self::V, b: Self::V) -> Result<Self::V> {
        if let ((None, Some(x)), (None, Some(y))) = (&a, &b) {
            return Ok((None, Some(x + y)));
        }
        Ok((Some(&self.tensor(a.0, a.1) + &self.tensor(b.0, b.1)), None))
    }

    fn scale(&self, s: &GaussScalar, a: Self::V) -> Result<Self::V> {
        Ok((a.0.map(|t| t.scale(s)), a.1.map(|x| s * &x)))
    }

    fn mul(&self, a: Self::V, b: Self::V) -> Result<Self::V> {
        let (x, y) = (self.tensor(a.0, a.1), self.tensor(b.0, b.1));
        let t = tensor_square_product(&x, &y, |p, q| self.ctx.mult.get(p, q).clone())?;
        Ok((Some(t), None))
    }

    fn tensor(&self, _: Self::V, _: Self::V) -> Result<Self::V> {
        Err(Error::Parse("tensor inside a label definition".into()))
    }

    fn as_scalar(&self, v: &Self::V) -> Option<GaussScalar> {
        if v.0.is_none() {
            v.1.clone()
        } else {
            None
        }
    }
}

/// Evaluates label definitions under ε.
struct EpsInterp<'a> {
    known: &'a BTreeMap<String, GaussScalar>,
}

impl Interp for EpsInterp<'_> {
    type V = GaussScalar;

    fn scalar(&self, s: &GaussScalar) -> Result<GaussScalar> {
        Ok(s.clone())
    }

    fn name(&self, n: &str) -> Result<GaussScalar> {
        self.known.get(n).cloned().ok_or_else(|| Error::Parse(format!("counit of `{n}` is not determined")))
    }

    fn add(&self, a: GaussScalar, b: GaussScalar) -> Result<GaussScalar> {
        Ok(a + b)
    }

    fn scale(&self, s: &GaussScalar, a: GaussScalar) -> Result<GaussScalar> {
        Ok(s * &a)
    }

    fn mul(&self, a: GaussScalar, b: GaussScalar) -> Result<GaussScalar> {
        Ok(a * b)
    }

    fn tensor(&self, _: GaussScalar, _: GaussScalar) -> Result<GaussScalar> {
        Err(Error::Parse("tensor inside a label definition".into()))
    }

    fn as_scalar(&self, v: &GaussScalar) -> Option<GaussScalar> {
        Some(v.clone())
    }
}

/// Evaluates label definitions under S, which reverses products with the Koszul sign.
struct AntipodeInterp<'a> {
    ctx: &'a FamilyCtx,
    known: &'a BTreeMap<String, GradedVector>,
}

type SV = (GradedVector, GradedVector, bool);

impl Interp for AntipodeInterp<'_> {
    /// (element, image, element is a bare scalar multiple of 1)
    type V = SV;

    fn scalar(&self, s: &GaussScalar) -> Result<SV> {
        let u = GradedVector::unit(self.ctx.space).scale(s);
        Ok((u.clone(), u, true))
    }

    fn name(&self, n: &str) -> Result<SV> {
        let img = self.known.get(n).ok_or_else(|| Error::Parse(format!("antipode of `{n}` is not determined")))?;
        Ok((self.ctx.vector_of(n)?, img.clone(), false))
    }

    fn add(&self, a: SV, b: SV) -> Result<SV> {
        Ok((&a.0 + &b.0, &a.1 + &b.1, a.2 && b.2))
    }

    fn scale(&self, s: &GaussScalar, a: SV) -> Result<SV> {
        Ok((a.0.scale(s), a.1.scale(s), a.2))
    }

    fn mul(&self, a: SV, b: SV) -> Result<SV> {
        let (pa, pb) = match (a.0.parity(), b.0.parity()) {
            (Some(p), Some(q)) => (p, q),
            _ => return Err(Error::Parse("antipode of a product of inhomogeneous elements".into())),
        };
        let mut img = self.ctx.mult.product(&b.1, &a.1);
        if koszul(pa, pb) {
            img = img.scale(&GaussScalar::from_int(-1));
        }
        Ok((self.ctx.mult.product(&a.0, &b.0), img, false))
    }

    fn tensor(&self, _: SV, _: SV) -> Result<SV> {
        Err(Error::Parse("tensor inside a label definition".into()))
    }

    fn as_scalar(&self, v: &SV) -> Option<GaussScalar> {
        if v.2 {
            Some(v.0.get(BasisIndex::UNIT))
        } else {
            None
        }
    }
}

fn basis_name(b: BasisIndex) -> String {
    format!("{}{}", if b.is_odd() { 'o' } else { 'e' }, b.position)
}

impl FamilyCtx {
    pub fn new(spec: &FamilySpec) -> Result<FamilyCtx> {
        let basis: Vec<&str> = spec.basis.iter().map(String::as_str).collect();
        let mult = spec.model.graded_table(spec.n0, spec.n1, &basis)?;
        let space = mult.space();
        let mut ctx = FamilyCtx {
            spec: spec.clone(),
            space,
            mult,
            labels: BTreeMap::new(),
            label_exprs: BTreeMap::new(),
            to_labels: Matrix::identity(space.dim()),
        };
        for (name, src) in &spec.labels {
            let e = expr::parse(src)?;
            let v = VecInterp { ctx: &ctx, flipped: false }.vector(expr::eval(&e, &VecInterp { ctx: &ctx, flipped: false })?)?;
            if !v.is_homogeneous() {
                return Err(Error::Parse(format!("label `{name}` of {} is not homogeneous", spec.id)));
            }
            ctx.labels.insert(name.clone(), v);
            ctx.label_exprs.insert(name.clone(), e);
        }
        let mut cols = vec![GradedVector::unit(space).to_dense()];
        for l in &spec.label_basis {
            cols.push(ctx.vector_of(l)?.to_dense());
        }
        let m = Matrix::from_columns(space.dim(), &cols);
        ctx.to_labels =
            m.inverse().ok_or_else(|| Error::Shape(format!("labels of {} do not form a basis", spec.id)))?;
        Ok(ctx)
    }

    fn vector_of(&self, n: &str) -> Result<GradedVector> {
        if let Some(v) = self.labels.get(n) {
            return Ok(v.clone());
        }
        self.space
            .basis()
            .into_iter()
            .find(|&b| basis_name(b) == n)
            .map(|b| GradedVector::basis(self.space, b))
            .ok_or_else(|| Error::Parse(format!("unknown name `{n}` in {}", self.spec.id)))
    }

    fn one_one(&self) -> TensorVector {
        TensorVector::pure(vec![self.space; 2], vec![BasisIndex::UNIT; 2], GaussScalar::one())
    }

    pub fn labels(&self) -> Vec<Label> {
        self.spec.labels.iter().map(|(n, _)| Label { name: n.clone(), vector: self.labels[n].clone() }).collect()
    }

    pub fn algebra(&self, id: &str) -> SuperBialgebraData {
        SuperBialgebraData::algebra(id, self.mult.clone()).with_labels(self.labels())
    }

    fn label_parity(&self, n: &str) -> u8 {
        self.labels[n].parity().unwrap_or(0)
    }

    /// Coefficients of `e_k` on `1, label_basis..`.
    fn in_labels(&self, b: BasisIndex) -> Vec<GaussScalar> {
        self.to_labels.column(self.space.flat(b))
    }

    /// Extends values on the label basis linearly to the graded basis.
    fn linear<T: Clone>(
        &self,
        on_label: &BTreeMap<String, T>,
        unit: T,
        zero: T,
        add_scaled: impl Fn(&mut T, &T, &GaussScalar),
    ) -> Vec<T> {
        let mut out = Vec::new();
        for b in self.space.basis() {
            let c = self.in_labels(b);
            let mut acc = zero.clone();
            add_scaled(&mut acc, &unit, &c[0]);
            for (j, l) in self.spec.label_basis.iter().enumerate() {
                add_scaled(&mut acc, &on_label[l], &c[j + 1]);
            }
            out.push(acc);
        }
        out
    }

    fn generator_check(&self, given: &[(String, Expr)], what: &str) -> Result<()> {
        for (g, _) in given {
            if !self.spec.generators.contains(g) {
                return Err(Error::Parse(format!("{what} given on `{g}`, which is not a generator of {}", self.spec.id)));
            }
        }
        Ok(())
    }

    /// Expands one entry into a full bialgebra record.
    pub fn realize(&self, id: &str, clauses: &Clauses) -> Result<SuperBialgebraData> {
        self.generator_check(&clauses.delta, "comultiplication")?;
        let vi = VecInterp { ctx: self, flipped: clauses.flipped };
        let mut delta: BTreeMap<String, TensorVector> = BTreeMap::new();
        for g in &self.spec.generators {
            let (_, e) = clauses
                .delta
                .iter()
                .find(|(n, _)| n == g)
                .ok_or_else(|| Error::Parse(format!("{id}: no comultiplication for `{g}`")))?;
            match expr::eval(e, &vi)? {
                FV::T(t) => delta.insert(g.clone(), t),
                _ => return Err(Error::Parse(format!("{id}: comultiplication of `{g}` is not a tensor"))),
            };
        }
        let mut eps: BTreeMap<String, GaussScalar> = BTreeMap::new();
        for g in &self.spec.generators {
            let given = clauses.eps.iter().find(|(n, _)| n == g);
            let value = match given {
                Some((_, e)) => match expr::eval(e, &vi)? {
                    FV::S(s) => s,
                    _ => return Err(Error::Parse(format!("{id}: counit of `{g}` is not a scalar"))),
                },
                None if self.label_parity(g) == 1 => GaussScalar::zero(),
                None => return Err(Error::Parse(format!("{id}: no counit for even generator `{g}`"))),
            };
            if self.label_parity(g) == 1 && !value.is_zero() {
                return Err(Error::Parse(format!("{id}: odd generator `{g}` has nonzero counit")));
            }
            eps.insert(g.clone(), value);
        }
        let mut anti: BTreeMap<String, GradedVector> = BTreeMap::new();
        for (g, e) in &clauses.antipode {
            anti.insert(g.clone(), vi.vector(expr::eval(e, &vi)?)?);
        }
        if !anti.is_empty() {
            self.generator_check(&clauses.antipode, "antipode")?;
        }
        for (name, e) in &self.label_exprs {
            if self.spec.generators.contains(name) {
                continue;
            }
            let (t, s) = expr::eval(e, &DeltaInterp { ctx: self, known: &delta })?;
            let t = DeltaInterp { ctx: self, known: &delta }.tensor(t, s);
            delta.insert(name.clone(), t);
            eps.insert(name.clone(), expr::eval(e, &EpsInterp { known: &eps })?);
            if !anti.is_empty() {
                let img = expr::eval(e, &AntipodeInterp { ctx: self, known: &anti })?.1;
                anti.insert(name.clone(), img);
            }
        }

        let zero_t = TensorVector::zero(vec![self.space; 2]);
        let d_cols = self.linear(&delta, self.one_one(), zero_t, |acc, t, c| acc.add_scaled(t, c));
        let comult = ComultTable::from_fn(self.space, |b| d_cols[self.space.flat(b)].clone());
        let e_vals =
            self.linear(&eps, GaussScalar::one(), GaussScalar::zero(), |acc, v, c| *acc += &(v * c));
        let counit = CounitVector::new(e_vals[..self.space.n0].to_vec());
        let mut data = SuperBialgebraData::bialgebra(id, self.mult.clone(), comult, counit).with_labels(self.labels());
        if !anti.is_empty() {
            let unit = GradedVector::unit(self.space);
            let zero = GradedVector::zero(self.space);
            let images = self.linear(&anti, unit, zero, |acc, v, c| acc.add_scaled(v, c));
            data = data.with_antipode(GradedLinearMap::from_images(self.space, &images)?);
        }
        let bad = data.violations();
        if !bad.is_empty() {
            return Err(Error::Validation(bad.into_iter().map(|m| format!("{id}: {m}")).collect()));
        }
        Ok(data)
    }
}
