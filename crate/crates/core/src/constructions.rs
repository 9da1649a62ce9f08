//! Opposite, coopposite, dual and tensor product of records, plus the named
//! families that appear in the four-dimensional Hopf classification.

use crate::catalog::{Catalog, Clauses, FamilyCtx, FamilySpec, Model};
use crate::error::{Error, Result};
use crate::graded::{koszul, superflip, BasisIndex, GradedVector, Superspace, TensorVector};
use crate::linalg::Matrix;
use crate::scalar::GaussScalar;
use crate::structures::{ComultTable, CounitVector, GradedLinearMap, Label, MultTable, SuperBialgebraData};
use serde::{Deserialize, Serialize};
use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum VariantKind {
    Op,
    Cop,
    OpCop,
}

impl VariantKind {
    fn tag(self) -> &'static str {
        match self {
            VariantKind::Op => "op",
            VariantKind::Cop => "cop",
            VariantKind::OpCop => "opcop",
        }
    }
}

impl fmt::Display for VariantKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for VariantKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "op" => Ok(VariantKind::Op),
            "cop" => Ok(VariantKind::Cop),
            "opcop" => Ok(VariantKind::OpCop),
            _ => Err(Error::UnknownName(s.to_string())),
        }
    }
}

fn signed(sign: bool, v: &GradedVector) -> GradedVector {
    if sign {
        v.scale(&GaussScalar::from_int(-1))
    } else {
        v.clone()
    }
}

/// `μ∘τ` for Op, `τ∘Δ` for Cop, both for OpCop. A stored antipode is inverted for
/// Op and Cop and kept for OpCop.
pub fn variant(data: &SuperBialgebraData, kind: VariantKind) -> Result<SuperBialgebraData> {
    let mut out = data.clone().with_id(format!("{}({})", kind.tag(), data.id));
    let space = data.space;
    if matches!(kind, VariantKind::Op | VariantKind::OpCop) {
        out.mult = MultTable::from_fn(space, |a, b| signed(koszul(a.parity, b.parity), data.mult.get(b, a)));
    }
    if matches!(kind, VariantKind::Cop | VariantKind::OpCop) {
        if let Some(c) = &data.comult {
            let mut flipped = Vec::new();
            for b in space.basis() {
                flipped.push(superflip(c.get(b))?);
            }
            out.comult = Some(ComultTable::from_fn(space, |b| flipped[space.flat(b)].clone()));
        }
    }
    if kind != VariantKind::OpCop {
        out.antipode = data.antipode.as_ref().and_then(GradedLinearMap::inverse);
    }
    Ok(out)
}

/// The linear dual on the dual basis, moved to a basis whose first vector is the
/// dual unit ε. Pairing: `(f⊗g)(a⊗b) = (−1)^{|g||a|} f(a) g(b)`.
pub fn dual(data: &SuperBialgebraData) -> Result<SuperBialgebraData> {
    let comult = data.comult()?;
    let eps = data.counit()?;
    let space = data.space;
    let pair = vec![space, space];
    // f_i · f_j = Σ_k ⟨f_i⊗f_j, Δ e_k⟩ f_k
    let mut mult = MultTable::zero(space);
    for k in space.basis() {
        for (idx, c) in comult.get(k).terms() {
            let (i, j) = (idx[0], idx[1]);
            let c = if koszul(j.parity, i.parity) { -c } else { c.clone() };
            let mut v = mult.get(i, j).clone();
            v.add_term(k, c);
            mult.set(i, j, v);
        }
    }
    // Δ f_k = Σ_{i,j} ⟨f_k, e_i e_j⟩ (sign) f_i⊗f_j
    let comult_dual = ComultTable::from_fn(space, |k| {
        let mut t = TensorVector::zero(pair.clone());
        for i in space.basis() {
            for j in space.basis() {
                let c = data.mult.get(i, j).get(k);
                if !c.is_zero() {
                    t.add_term(vec![i, j], if koszul(j.parity, i.parity) { -c } else { c });
                }
            }
        }
        t
    });
    // ε* evaluates at the unit of A, which is e_1
    let mut counit = vec![GaussScalar::zero(); space.n0];
    counit[0] = GaussScalar::one();
    let raw = SuperBialgebraData {
        id: format!("dual({})", data.id),
        space,
        mult,
        comult: Some(comult_dual),
        counit: Some(CounitVector::new(counit)),
        antipode: data.antipode.as_ref().map(GradedLinearMap::transpose),
        basis_labels: None,
    };
    // first basis vector becomes ε = Σ ε(e_k) f_k
    let images: Vec<GradedVector> = space
        .basis()
        .into_iter()
        .map(|b| {
            if b == BasisIndex::UNIT {
                let mut v = GradedVector::zero(space);
                for k in 1..=space.n0 {
                    v.add_term(BasisIndex::even(k), eps.value(BasisIndex::even(k)));
                }
                v
            } else {
                GradedVector::basis(space, b)
            }
        })
        .collect();
    let t = GradedLinearMap::from_images(space, &images)?;
    let out = raw.transport(&t, raw.id.clone())?;
    if out.mult.get(BasisIndex::UNIT, BasisIndex::UNIT) != &out.unit() {
        return Err(Error::Internal(format!("dual unit of {} is not idempotent", data.id)));
    }
    Ok(out)
}

/// Basis of A⊗B: pairs whose parities add up, even block then odd block.
struct PairBasis {
    space: Superspace,
    pairs: Vec<(BasisIndex, BasisIndex)>,
    lookup: HashMap<(BasisIndex, BasisIndex), BasisIndex>,
}

impl PairBasis {
    fn new(a: Superspace, b: Superspace) -> Result<PairBasis> {
        let mut even = Vec::new();
        let mut odd = Vec::new();
        for (pa, pb) in [(0u8, 0u8), (1, 1)] {
            for x in (1..=a.block(pa)).map(|p| BasisIndex { parity: pa, position: p }) {
                for y in (1..=b.block(pb)).map(|p| BasisIndex { parity: pb, position: p }) {
                    even.push((x, y));
                }
            }
        }
        for (pa, pb) in [(0u8, 1u8), (1, 0)] {
            for x in (1..=a.block(pa)).map(|p| BasisIndex { parity: pa, position: p }) {
                for y in (1..=b.block(pb)).map(|p| BasisIndex { parity: pb, position: p }) {
                    odd.push((x, y));
                }
            }
        }
        let space = Superspace::new(even.len(), odd.len())?;
        let mut lookup = HashMap::new();
        for (k, &p) in even.iter().enumerate() {
            lookup.insert(p, BasisIndex::even(k + 1));
        }
        for (k, &p) in odd.iter().enumerate() {
            lookup.insert(p, BasisIndex::odd(k + 1));
        }
        let pairs = even.into_iter().chain(odd).collect();
        Ok(PairBasis { space, pairs, lookup })
    }

    fn of(&self, x: BasisIndex, y: BasisIndex) -> BasisIndex {
        self.lookup[&(x, y)]
    }

    fn tensor(&self, v: &GradedVector, w: &GradedVector) -> GradedVector {
        let mut out = GradedVector::zero(self.space);
        for (x, c) in v.terms() {
            for (y, d) in w.terms() {
                out.add_term(self.of(x, y), c * d);
            }
        }
        out
    }
}

/// Graded tensor product with `(a⊗b)(a'⊗b') = (−1)^{|b||a'|} aa'⊗bb'` and the
/// comultiplication `(id⊗τ⊗id)(Δ⊗Δ)`.
pub fn tensor_product(a: &SuperBialgebraData, b: &SuperBialgebraData) -> Result<SuperBialgebraData> {
    let (ca, cb) = (a.comult()?, b.comult()?);
    let (ea, eb) = (a.counit()?, b.counit()?);
    let pb = PairBasis::new(a.space, b.space)?;
    let space = pb.space;
    let mult = MultTable::from_fn(space, |p, q| {
        let (x, y) = pb.pairs[space.flat(p)];
        let (x2, y2) = pb.pairs[space.flat(q)];
        signed(koszul(y.parity, x2.parity), &pb.tensor(a.mult.get(x, x2), b.mult.get(y, y2)))
    });
    let pair = vec![space, space];
    let comult = ComultTable::from_fn(space, |p| {
        let (x, y) = pb.pairs[space.flat(p)];
        let mut t = TensorVector::zero(pair.clone());
        for (i, c) in ca.get(x).terms() {
            for (j, d) in cb.get(y).terms() {
                // (x1⊗x2)⊗(y1⊗y2) ↦ (x1⊗y1)⊗(x2⊗y2) past the swap of x2 and y1
                let s = if koszul(i[1].parity, j[0].parity) { -(c * d) } else { c * d };
                t.add_term(vec![pb.of(i[0], j[0]), pb.of(i[1], j[1])], s);
            }
        }
        t
    });
    let counit = CounitVector::new(
        (1..=space.n0)
            .map(|k| {
                let (x, y) = pb.pairs[k - 1];
                if x.parity == 0 {
                    ea.value(x) * eb.value(y)
                } else {
                    GaussScalar::zero()
                }
            })
            .collect(),
    );
    let mut out = SuperBialgebraData::bialgebra(format!("tensor({},{})", a.id, b.id), mult, comult, counit);
    if let (Some(sa), Some(sb)) = (&a.antipode, &b.antipode) {
        let images: Vec<GradedVector> = pb.pairs.iter().map(|&(x, y)| pb.tensor(&sa.image(x), &sb.image(y))).collect();
        out = out.with_antipode(GradedLinearMap::from_images(space, &images)?);
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NamedFamily {
    GroupAlgebraZ2,
    LambdaK,
    LambdaK2,
    H1,
    H2,
    H3,
    H4,
    /// The root α with α² = −1 used in Δ(x) = x⊗x − α y⊗y.
    H5(GaussScalar),
    M2Graded,
    TrivialFromBialgebra(Box<SuperBialgebraData>),
}

struct Presented {
    id: &'static str,
    n0: usize,
    n1: usize,
    names: &'static [&'static str],
    rules: String,
    commutative: bool,
    basis: &'static [&'static str],
    labels: &'static [(&'static str, &'static str)],
    label_basis: &'static [&'static str],
    generators: &'static [&'static str],
    clauses: String,
}

impl Presented {
    fn build(&self, id: &str) -> Result<SuperBialgebraData> {
        let owned = |v: &[&str]| v.iter().map(|s| s.to_string()).collect::<Vec<_>>();
        let spec = FamilySpec {
            id: self.id.to_string(),
            n0: self.n0,
            n1: self.n1,
            model: Model::table(self.names, &self.rules, self.commutative)?,
            basis: owned(self.basis),
            labels: self.labels.iter().map(|(a, b)| (a.to_string(), b.to_string())).collect(),
            label_basis: owned(self.label_basis),
            generators: owned(self.generators),
            description: String::new(),
        };
        let ctx = FamilyCtx::new(&spec)?;
        let mut clauses = Clauses::default();
        for part in self.clauses.split(';').map(str::trim).filter(|p| !p.is_empty()) {
            let (lhs, rhs) = part.split_once('=').ok_or_else(|| Error::Internal(format!("clause `{part}`")))?;
            let e = crate::catalog::expr::parse(rhs.trim())?;
            let words: Vec<&str> = lhs.split_whitespace().collect();
            match words.as_slice() {
                ["eps", g] => clauses.eps.push((g.to_string(), e)),
                ["S", g] => clauses.antipode.push((g.to_string(), e)),
                [g] => clauses.delta.push((g.to_string(), e)),
                _ => return Err(Error::Internal(format!("clause `{part}`"))),
            }
        }
        ctx.realize(id, &clauses)
    }
}

const XY_BASIS: &[&str] = &["1", "x", "y", "xy"];
const XY_LABELS: &[(&str, &str)] = &[("x", "e2"), ("y", "o1"), ("xy", "x*y")];
const XY: &[&str] = &["x", "y", "xy"];
const GENS: &[&str] = &["x", "y"];

fn h_presented(id: &'static str, rules: &str, commutative: bool, clauses: &str) -> Presented {
    Presented {
        id,
        n0: 2,
        n1: 2,
        names: XY_BASIS,
        rules: rules.into(),
        commutative,
        basis: XY_BASIS,
        labels: XY_LABELS,
        label_basis: XY,
        generators: GENS,
        clauses: clauses.into(),
    }
}

/// Builds a named record from its presentation.
pub fn named_family(name: &NamedFamily) -> Result<SuperBialgebraData> {
    let commutative_xy = "x*x=x; x*y=xy; x*xy=xy";
    match name {
        NamedFamily::GroupAlgebraZ2 => Presented {
            id: "GroupAlgebraZ2",
            n0: 2,
            n1: 0,
            names: &["1", "g"],
            rules: "g*g=1".into(),
            commutative: true,
            basis: &["1", "g"],
            labels: &[("g", "e2")],
            label_basis: &["g"],
            generators: &["g"],
            clauses: "g = g@g; eps g = 1; S g = g".into(),
        }
        .build("GroupAlgebraZ2"),
        NamedFamily::LambdaK => Presented {
            id: "LambdaK",
            n0: 1,
            n1: 1,
            names: &["1", "x"],
            rules: String::new(),
            commutative: true,
            basis: &["1", "x"],
            labels: &[("x", "o1")],
            label_basis: &["x"],
            generators: &["x"],
            clauses: "x = 1@x + x@1; S x = -x".into(),
        }
        .build("LambdaK"),
        NamedFamily::LambdaK2 => {
            let l = named_family(&NamedFamily::LambdaK)?;
            let t = tensor_product(&l, &l)?;
            // odd block of the tensor basis is (1⊗x, x⊗1); put x⊗1 first
            let s = t.space;
            let swap = GradedLinearMap::new(Matrix::identity(s.n0), Matrix::from_rows(vec![
                vec![GaussScalar::zero(), GaussScalar::one()],
                vec![GaussScalar::one(), GaussScalar::zero()],
            ]))?;
            let mut out = t.transport(&swap, "LambdaK2")?;
            let x = GradedVector::basis(s, BasisIndex::odd(1));
            let y = GradedVector::basis(s, BasisIndex::odd(2));
            let xy = out.mult.product(&x, &y);
            out.basis_labels = Some(vec![
                Label { name: "x".into(), vector: x },
                Label { name: "y".into(), vector: y },
                Label { name: "xy".into(), vector: xy },
            ]);
            Ok(out)
        }
        NamedFamily::H1 => h_presented(
            "H1",
            commutative_xy,
            true,
            "x = 1@x + x@1 - 2*x@x; y = 1@y + y@1; eps x = 0; S x = x; S y = -y",
        )
        .build("H1"),
        NamedFamily::H2 => h_presented(
            "H2",
            "x*x=x; x*y=xy; y*x=y-xy; x*xy=xy",
            false,
            "x = 1@x + x@1 - 2*x@x; y = 1@y + y@1 - 2*x@y - 2*y@x; eps x = 0; S x = x; S y = y",
        )
        .build("H2"),
        NamedFamily::H3 => Presented {
            basis: &["1", "xy", "x", "y"],
            labels: &[("x", "o1"), ("y", "o2"), ("xy", "x*y")],
            ..h_presented("H3", "x*y=xy; y*x=-xy", false, "x = 1@x + x@1; y = 1@y + y@1; S x = -x; S y = -y")
        }
        .build("H3"),
        NamedFamily::H4 => h_presented(
            "H4",
            commutative_xy,
            true,
            "x = 1@x + x@1 - 2*x@x; y = 1@y + y@1 - 2*x@y; eps x = 0; S x = x; S y = 2*xy - y",
        )
        .build("H4"),
        NamedFamily::H5(alpha) => {
            if alpha * alpha != GaussScalar::from_int(-1) {
                return Err(Error::Unsupported(format!("H5 needs a square root of -1, got {alpha}")));
            }
            let a = alpha.to_string();
            Presented {
                id: "H5",
                n0: 3,
                n1: 1,
                names: &["1", "x", "x2", "y"],
                rules: "x*x=x2; x*x2=x; x2*x2=x2; y*y=1-x2".into(),
                commutative: true,
                // the idempotent basis of K^4 written in x, y
                basis: &["1", "1/2*x2 - 1/2*x", "1 - x2", "y"],
                labels: &[("x", "e1-2*e2-e3"), ("x2", "x*x"), ("y", "o1")],
                label_basis: &["x", "x2", "y"],
                generators: &["x", "y"],
                clauses: format!("x = x@x - ({a})*y@y; y = x@y + y@x; eps x = 1; S x = x; S y = ({a})*y"),
            }
            .build(&format!("H5({a})"))
        }
        NamedFamily::M2Graded => {
            let m = Model::matrices(2);
            let mult = m.graded_table(2, 2, &["E11+E22", "E11", "E12", "E21"])?;
            Ok(SuperBialgebraData::algebra("M2Graded", mult))
        }
        NamedFamily::TrivialFromBialgebra(d) => {
            if d.space.n1 != 0 {
                return Err(Error::Unsupported(format!("{} has a nonzero odd part", d.id)));
            }
            if !d.is_bialgebra_record() {
                return Err(Error::MissingStructure(format!("{} is not a bialgebra record", d.id)));
            }
            Ok(d.as_ref().clone().with_id(format!("trivial({})", d.id)))
        }
    }
}

/// Parses `LambdaK`, `H5(i)`, `H5(-i)`, `GroupAlgebraZ2` and the other payload-free names.
pub fn named_family_by_name(name: &str) -> Result<SuperBialgebraData> {
    let n = match name.trim() {
        "GroupAlgebraZ2" => NamedFamily::GroupAlgebraZ2,
        "LambdaK" => NamedFamily::LambdaK,
        "LambdaK2" => NamedFamily::LambdaK2,
        "H1" => NamedFamily::H1,
        "H2" => NamedFamily::H2,
        "H3" => NamedFamily::H3,
        "H4" => NamedFamily::H4,
        "M2Graded" => NamedFamily::M2Graded,
        other => match other.strip_prefix("H5(").and_then(|r| r.strip_suffix(')')) {
            Some(root) => NamedFamily::H5(root.parse().map_err(|_| Error::UnknownName(name.to_string()))?),
            None => return Err(Error::UnknownName(name.to_string())),
        },
    };
    named_family(&n)
}

/// Evaluates `NAME`, `op(E)`, `cop(E)`, `opcop(E)`, `dual(E)` or `tensor(E, E)`.
/// Names are looked up in `catalog` first, then among the named families.
pub fn evaluate(expr: &str, catalog: &Catalog) -> Result<SuperBialgebraData> {
    let expr = expr.trim();
    if let Some((head, inner)) = expr.strip_suffix(')').and_then(|e| e.split_once('(')) {
        match head {
            "op" | "cop" | "opcop" => return variant(&evaluate(inner, catalog)?, head.parse()?),
            "dual" => return dual(&evaluate(inner, catalog)?),
            "tensor" => {
                let (a, b) = split_top_level(inner).ok_or_else(|| Error::Parse(format!("tensor needs two arguments: `{expr}`")))?;
                return tensor_product(&evaluate(a, catalog)?, &evaluate(b, catalog)?);
            }
            _ => {}
        }
    }
    match catalog.get(expr) {
        Ok(e) => Ok(e.data.clone()),
        Err(err) => named_family_by_name(expr).map_err(|_| err),
    }
}

fn split_top_level(s: &str) -> Option<(&str, &str)> {
    let mut depth = 0i32;
    for (k, c) in s.char_indices() {
        match c {
            '(' | '{' => depth += 1,
            ')' | '}' => depth -= 1,
            ',' if depth == 0 => return Some((&s[..k], &s[k + 1..])),
            _ => {}
        }
    }
    None
}
