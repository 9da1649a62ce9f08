//! ℤ/2-graded spaces, vectors, tensors and the Koszul-signed superflip.

use crate::error::{Error, Result};
use crate::scalar::GaussScalar;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fmt;

/// Dimensions of the even and odd parts. The even basis vector `e1^0` is the unit.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Superspace {
    pub n0: usize,
    pub n1: usize,
}

/// A basis vector `e_position^parity`, with 1-based position.
#[derive(Copy, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BasisIndex {
    pub parity: u8,
    pub position: usize,
}

impl BasisIndex {
    pub const UNIT: BasisIndex = BasisIndex { parity: 0, position: 1 };

    pub fn even(position: usize) -> Self {
        BasisIndex { parity: 0, position }
    }

    pub fn odd(position: usize) -> Self {
        BasisIndex { parity: 1, position }
    }

    pub fn is_odd(self) -> bool {
        self.parity == 1
    }
}

impl fmt::Display for BasisIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "e{}^{}", self.position, self.parity)
    }
}

impl fmt::Debug for BasisIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// `(−1)^(a·b)` for parities `a`, `b`.
pub fn koszul(a: u8, b: u8) -> bool {
    a & b & 1 == 1
}

impl Superspace {
    pub fn new(n0: usize, n1: usize) -> Result<Self> {
        if n0 == 0 {
            return Err(Error::Shape("the even part must contain the unit".into()));
        }
        Ok(Superspace { n0, n1 })
    }

    /// The ground field as a one-dimensional even space.
    pub const K: Superspace = Superspace { n0: 1, n1: 0 };

    pub fn dim(&self) -> usize {
        self.n0 + self.n1
    }

    pub fn block(&self, parity: u8) -> usize {
        if parity == 0 {
            self.n0
        } else {
            self.n1
        }
    }

    /// Basis in flat order: the even block, then the odd block.
    pub fn basis(&self) -> Vec<BasisIndex> {
        (1..=self.n0).map(BasisIndex::even).chain((1..=self.n1).map(BasisIndex::odd)).collect()
    }

    pub fn contains(&self, b: BasisIndex) -> bool {
        b.parity <= 1 && b.position >= 1 && b.position <= self.block(b.parity)
    }

    pub fn flat(&self, b: BasisIndex) -> usize {
        debug_assert!(self.contains(b));
        if b.parity == 0 {
            b.position - 1
        } else {
            self.n0 + b.position - 1
        }
    }

    pub fn from_flat(&self, k: usize) -> BasisIndex {
        if k < self.n0 {
            BasisIndex::even(k + 1)
        } else {
            BasisIndex::odd(k - self.n0 + 1)
        }
    }
}

/// A vector in a superspace as a sparse coefficient map.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct GradedVector {
    space: Superspace,
    coeffs: BTreeMap<BasisIndex, GaussScalar>,
}

impl GradedVector {
    pub fn zero(space: Superspace) -> Self {
        GradedVector { space, coeffs: BTreeMap::new() }
    }

    pub fn basis(space: Superspace, b: BasisIndex) -> Self {
        Self::term(space, b, GaussScalar::one())
    }

    pub fn term(space: Superspace, b: BasisIndex, c: GaussScalar) -> Self {
        let mut v = Self::zero(space);
        v.add_term(b, c);
        v
    }

    pub fn unit(space: Superspace) -> Self {
        Self::basis(space, BasisIndex::UNIT)
    }

    /// From coordinates in flat basis order.
    pub fn from_dense(space: Superspace, values: &[GaussScalar]) -> Self {
        assert_eq!(values.len(), space.dim(), "dense vector length");
        let mut v = Self::zero(space);
        for (k, c) in values.iter().enumerate() {
            v.add_term(space.from_flat(k), c.clone());
        }
        v
    }

    pub fn to_dense(&self) -> Vec<GaussScalar> {
        let mut out = vec![GaussScalar::zero(); self.space.dim()];
        for (b, c) in &self.coeffs {
            out[self.space.flat(*b)] = c.clone();
        }
        out
    }

    pub fn space(&self) -> Superspace {
        self.space
    }

    pub fn get(&self, b: BasisIndex) -> GaussScalar {
        self.coeffs.get(&b).cloned().unwrap_or_default()
    }

    pub fn terms(&self) -> impl Iterator<Item = (BasisIndex, &GaussScalar)> {
        self.coeffs.iter().map(|(b, c)| (*b, c))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn add_term(&mut self, b: BasisIndex, c: GaussScalar) {
        assert!(self.space.contains(b), "{b} outside {:?}", self.space);
        if c.is_zero() {
            return;
        }
        let slot = self.coeffs.entry(b).or_default();
        *slot += &c;
        if slot.is_zero() {
            self.coeffs.remove(&b);
        }
    }

    pub fn add_scaled(&mut self, other: &GradedVector, s: &GaussScalar) {
        for (b, c) in other.terms() {
            self.add_term(b, c * s);
        }
    }

    pub fn scale(&self, s: &GaussScalar) -> Self {
        let mut out = Self::zero(self.space);
        out.add_scaled(self, s);
        out
    }

    /// The parity shared by every term, `None` for mixed or zero vectors.
    pub fn parity(&self) -> Option<u8> {
        let mut it = self.coeffs.keys().map(|b| b.parity);
        let first = it.next()?;
        it.all(|p| p == first).then_some(first)
    }

    pub fn is_homogeneous(&self) -> bool {
        self.is_zero() || self.parity().is_some()
    }
}

impl std::ops::Add for &GradedVector {
    type Output = GradedVector;
    fn add(self, rhs: &GradedVector) -> GradedVector {
        let mut out = self.clone();
        out.add_scaled(rhs, &GaussScalar::one());
        out
    }
}

impl std::ops::Sub for &GradedVector {
    type Output = GradedVector;
    fn sub(self, rhs: &GradedVector) -> GradedVector {
        let mut out = self.clone();
        out.add_scaled(rhs, &GaussScalar::from_int(-1));
        out
    }
}

fn fmt_terms<'a, K: 'a>(
    f: &mut fmt::Formatter<'_>,
    terms: impl Iterator<Item = (&'a K, &'a GaussScalar)>,
    name: impl Fn(&K) -> String,
) -> fmt::Result {
    let mut first = true;
    for (k, c) in terms {
        if !first {
            f.write_str(" + ")?;
        }
        first = false;
        if c.is_one() {
            f.write_str(&name(k))?;
        } else {
            write!(f, "({c})·{}", name(k))?;
        }
    }
    if first {
        f.write_str("0")?;
    }
    Ok(())
}

impl fmt::Display for GradedVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_terms(f, self.coeffs.iter(), |b| b.to_string())
    }
}

impl fmt::Debug for GradedVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// An element of a tensor product of superspaces. Arity 0 is the ground field.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct TensorVector {
    factors: Vec<Superspace>,
    coeffs: BTreeMap<Vec<BasisIndex>, GaussScalar>,
}

impl TensorVector {
    pub fn zero(factors: Vec<Superspace>) -> Self {
        TensorVector { factors, coeffs: BTreeMap::new() }
    }

    pub fn scalar(c: GaussScalar) -> Self {
        let mut t = Self::zero(Vec::new());
        t.add_term(Vec::new(), c);
        t
    }

    pub fn pure(factors: Vec<Superspace>, idx: Vec<BasisIndex>, c: GaussScalar) -> Self {
        let mut t = Self::zero(factors);
        t.add_term(idx, c);
        t
    }

    /// `v₁ ⊗ v₂ ⊗ …` of graded vectors.
    pub fn tensor_of(vs: &[&GradedVector]) -> Self {
        let mut t = Self::scalar(GaussScalar::one());
        for v in vs {
            t = t.tensor(&TensorVector::from(*v));
        }
        t
    }

    /// The external product `self ⊗ other`; no sign arises from juxtaposition.
    pub fn tensor(&self, other: &TensorVector) -> TensorVector {
        let mut factors = self.factors.clone();
        factors.extend(&other.factors);
        let mut out = TensorVector::zero(factors);
        for (a, x) in &self.coeffs {
            for (b, y) in &other.coeffs {
                let mut idx = a.clone();
                idx.extend(b);
                out.add_term(idx, x * y);
            }
        }
        out
    }

    pub fn factors(&self) -> &[Superspace] {
        &self.factors
    }

    pub fn arity(&self) -> usize {
        self.factors.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[BasisIndex], &GaussScalar)> {
        self.coeffs.iter().map(|(k, c)| (k.as_slice(), c))
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn get(&self, idx: &[BasisIndex]) -> GaussScalar {
        self.coeffs.get(idx).cloned().unwrap_or_default()
    }

    pub fn add_term(&mut self, idx: Vec<BasisIndex>, c: GaussScalar) {
        debug_assert_eq!(idx.len(), self.factors.len(), "tensor arity");
        debug_assert!(idx.iter().zip(&self.factors).all(|(b, s)| s.contains(*b)));
        if c.is_zero() {
            return;
        }
        match self.coeffs.entry(idx) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += &c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn add_scaled(&mut self, other: &TensorVector, s: &GaussScalar) {
        debug_assert_eq!(self.factors, other.factors, "tensor factor spaces");
        for (k, c) in &other.coeffs {
            self.add_term(k.clone(), c * s);
        }
    }

    pub fn scale(&self, s: &GaussScalar) -> Self {
        let mut out = Self::zero(self.factors.clone());
        out.add_scaled(self, s);
        out
    }

    /// Total parity of every term, `None` when mixed or zero.
    pub fn parity(&self) -> Option<u8> {
        let mut it = self.coeffs.keys().map(|k| k.iter().map(|b| b.parity).sum::<u8>() % 2);
        let first = it.next()?;
        it.all(|p| p == first).then_some(first)
    }

    /// Replaces factor `pos` by the tensor `f(b)` for each basis index `b` there.
    /// A map of parity `p` passing the factors before `pos` picks up the Koszul sign.
    pub fn expand_factor(
        &self,
        pos: usize,
        map_parity: u8,
        image_factors: &[Superspace],
        f: impl Fn(BasisIndex) -> TensorVector,
    ) -> TensorVector {
        let mut factors = self.factors[..pos].to_vec();
        factors.extend_from_slice(image_factors);
        factors.extend_from_slice(&self.factors[pos + 1..]);
        let mut out = TensorVector::zero(factors);
        let mut cache: BTreeMap<BasisIndex, TensorVector> = BTreeMap::new();
        for (idx, c) in &self.coeffs {
            let img = cache.entry(idx[pos]).or_insert_with(|| f(idx[pos]));
            let before: u8 = idx[..pos].iter().map(|b| b.parity).sum();
            let c = if koszul(map_parity, before % 2) { -c } else { c.clone() };
            for (k, d) in &img.coeffs {
                let mut key = idx[..pos].to_vec();
                key.extend_from_slice(k);
                key.extend_from_slice(&idx[pos + 1..]);
                out.add_term(key, &c * d);
            }
        }
        out
    }
}

impl From<&GradedVector> for TensorVector {
    fn from(v: &GradedVector) -> Self {
        let mut t = TensorVector::zero(vec![v.space]);
        for (b, c) in v.terms() {
            t.add_term(vec![b], c.clone());
        }
        t
    }
}

impl TryFrom<&TensorVector> for GradedVector {
    type Error = Error;
    fn try_from(t: &TensorVector) -> Result<Self> {
        if t.arity() != 1 {
            return Err(Error::Arity { expected: 1, found: t.arity() });
        }
        let mut v = GradedVector::zero(t.factors[0]);
        for (k, c) in t.terms() {
            v.add_term(k[0], c.clone());
        }
        Ok(v)
    }
}

impl std::ops::Add for &TensorVector {
    type Output = TensorVector;
    fn add(self, rhs: &TensorVector) -> TensorVector {
        let mut out = self.clone();
        out.add_scaled(rhs, &GaussScalar::one());
        out
    }
}

impl std::ops::Sub for &TensorVector {
    type Output = TensorVector;
    fn sub(self, rhs: &TensorVector) -> TensorVector {
        let mut out = self.clone();
        out.add_scaled(rhs, &GaussScalar::from_int(-1));
        out
    }
}

impl fmt::Display for TensorVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_terms(f, self.coeffs.iter(), |k| {
            if k.is_empty() {
                "1".to_string()
            } else {
                k.iter().map(ToString::to_string).collect::<Vec<_>>().join("⊗")
            }
        })
    }
}

impl fmt::Debug for TensorVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// The superflip `a⊗b ↦ (−1)^{|a||b|} b⊗a`.
pub fn superflip(t: &TensorVector) -> Result<TensorVector> {
    if t.arity() != 2 {
        return Err(Error::Arity { expected: 2, found: t.arity() });
    }
    let mut out = TensorVector::zero(vec![t.factors[1], t.factors[0]]);
    for (k, c) in t.terms() {
        let c = if koszul(k[0].parity, k[1].parity) { -c } else { c.clone() };
        out.add_term(vec![k[1], k[0]], c);
    }
    Ok(out)
}

/// A homogeneous linear map between superspaces, stored by the images of the domain basis.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LinearMap {
    domain: Superspace,
    codomain: Superspace,
    parity: u8,
    images: Vec<GradedVector>,
}

impl LinearMap {
    /// `images[k]` is the image of the k-th domain basis vector in flat order.
    pub fn new(domain: Superspace, codomain: Superspace, parity: u8, images: Vec<GradedVector>) -> Result<Self> {
        if images.len() != domain.dim() {
            return Err(Error::Shape(format!("{} images for a {}-dimensional domain", images.len(), domain.dim())));
        }
        for (k, img) in images.iter().enumerate() {
            if img.space() != codomain {
                return Err(Error::Shape("image outside the codomain".into()));
            }
            let want = (domain.from_flat(k).parity + parity) % 2;
            if img.parity().is_some_and(|p| p != want) || !img.is_homogeneous() {
                return Err(Error::Shape(format!("map of parity {parity} sends {} to {img}", domain.from_flat(k))));
            }
        }
        Ok(LinearMap { domain, codomain, parity, images })
    }

    pub fn identity(space: Superspace) -> Self {
        let images = space.basis().into_iter().map(|b| GradedVector::basis(space, b)).collect();
        LinearMap { domain: space, codomain: space, parity: 0, images }
    }

    pub fn domain(&self) -> Superspace {
        self.domain
    }

    pub fn codomain(&self) -> Superspace {
        self.codomain
    }

    pub fn parity(&self) -> u8 {
        self.parity
    }

    pub fn image(&self, b: BasisIndex) -> &GradedVector {
        &self.images[self.domain.flat(b)]
    }

    pub fn apply(&self, v: &GradedVector) -> Result<GradedVector> {
        if v.space() != self.domain {
            return Err(Error::Shape("vector outside the domain".into()));
        }
        let mut out = GradedVector::zero(self.codomain);
        for (b, c) in v.terms() {
            out.add_scaled(self.image(b), c);
        }
        Ok(out)
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &LinearMap) -> Result<LinearMap> {
        if other.codomain != self.domain {
            return Err(Error::Shape("composition of incompatible maps".into()));
        }
        let images = other.images.iter().map(|v| self.apply(v)).collect::<Result<_>>()?;
        Ok(LinearMap { domain: other.domain, codomain: self.codomain, parity: (self.parity + other.parity) % 2, images })
    }
}

/// `(f⊗g)(a⊗b) = (−1)^{|g||a|} f(a)⊗g(b)`, extended linearly.
pub fn apply_tensor_maps(f: &LinearMap, g: &LinearMap, t: &TensorVector) -> Result<TensorVector> {
    if t.arity() != 2 {
        return Err(Error::Arity { expected: 2, found: t.arity() });
    }
    if t.factors[0] != f.domain || t.factors[1] != g.domain {
        return Err(Error::Shape("tensor factors do not match the map domains".into()));
    }
    let mut out = TensorVector::zero(vec![f.codomain, g.codomain]);
    for (k, c) in t.terms() {
        let c = if koszul(g.parity, k[0].parity) { -c } else { c.clone() };
        for (x, cx) in f.image(k[0]).terms() {
            for (y, cy) in g.image(k[1]).terms() {
                out.add_term(vec![x, y], &(&c * cx) * cy);
            }
        }
    }
    Ok(out)
}

/// Product in the tensor-square algebra: `(a⊗b)(c⊗d) = (−1)^{|b||c|} ac⊗bd`,
/// i.e. `(μ⊗μ)∘(id⊗τ⊗id)` applied to `s⊗t`.
pub fn tensor_square_product(
    s: &TensorVector,
    t: &TensorVector,
    mul: impl Fn(BasisIndex, BasisIndex) -> GradedVector,
) -> Result<TensorVector> {
    if s.arity() != 2 || t.arity() != 2 {
        return Err(Error::Arity { expected: 2, found: if s.arity() != 2 { s.arity() } else { t.arity() } });
    }
    let mut out = TensorVector::zero(s.factors.clone());
    for (k, x) in s.terms() {
        for (l, y) in t.terms() {
            let mut c = x * y;
            if koszul(k[1].parity, l[0].parity) {
                c = -c;
            }
            let left = mul(k[0], l[0]);
            if left.is_zero() {
                continue;
            }
            let right = mul(k[1], l[1]);
            for (p, cp) in left.terms() {
                for (q, cq) in right.terms() {
                    out.add_term(vec![p, q], &(&c * cp) * cq);
                }
            }
        }
    }
    Ok(out)
}
