//! Concrete algebras (products of truncated polynomial rings, matrix subalgebras,
//! small presented algebras) and the graded bases chosen inside them.

use super::expr::{self, Expr, Interp};
use crate::error::{Error, Result};
use crate::graded::{BasisIndex, GradedVector, Superspace};
use crate::linalg::{solve, LinearSolution, Matrix};
use crate::scalar::GaussScalar;
use crate::structures::MultTable;

/// An associative algebra on named basis vectors with dense structure constants.
#[derive(Clone, Debug)]
pub struct Model {
    names: Vec<String>,
    products: Vec<Vec<GaussScalar>>,
}

impl Model {
    fn dim(&self) -> usize {
        self.names.len()
    }

    fn index(&self, name: &str) -> Result<usize> {
        self.names.iter().position(|n| n == name).ok_or_else(|| Error::Parse(format!("unknown model vector `{name}`")))
    }

    /// Named basis with rules `a*b=expr` separated by `;`; unlisted products vanish.
    /// A basis vector called `1` acts as the unit. `commutative` mirrors every rule.
    pub fn table(names: &[&str], rules: &str, commutative: bool) -> Result<Model> {
        let m = names.len();
        let mut model = Model {
            names: names.iter().map(|s| s.to_string()).collect(),
            products: vec![vec![GaussScalar::zero(); m]; m * m],
        };
        if let Some(u) = names.iter().position(|&n| n == "1") {
            for k in 0..m {
                let mut e = vec![GaussScalar::zero(); m];
                e[k] = GaussScalar::one();
                model.products[u * m + k] = e.clone();
                model.products[k * m + u] = e;
            }
        }
        for rule in rules.split(';').map(str::trim).filter(|r| !r.is_empty()) {
            let (lhs, rhs) = rule.split_once('=').ok_or_else(|| Error::Parse(format!("rule `{rule}` has no `=`")))?;
            let (a, b) = lhs.split_once('*').ok_or_else(|| Error::Parse(format!("rule `{rule}` has no product")))?;
            let (a, b) = (model.index(a.trim())?, model.index(b.trim())?);
            let v = model.eval_linear(&expr::parse(rhs)?)?;
            model.products[a * m + b] = v.clone();
            if commutative {
                model.products[b * m + a] = v;
            }
        }
        Ok(model)
    }

    /// The full algebra of n×n matrices on the units `Eij`.
    pub fn matrices(n: usize) -> Model {
        let mut names = Vec::new();
        for i in 1..=n {
            for j in 1..=n {
                names.push(format!("E{i}{j}"));
            }
        }
        let m = n * n;
        let mut products = vec![vec![GaussScalar::zero(); m]; m * m];
        for i in 0..n {
            for j in 0..n {
                for l in 0..n {
                    products[(i * n + j) * m + (j * n + l)][i * n + l] = GaussScalar::one();
                }
            }
        }
        Model { names, products }
    }

    fn mul(&self, a: &[GaussScalar], b: &[GaussScalar]) -> Vec<GaussScalar> {
        let m = self.dim();
        let mut out = vec![GaussScalar::zero(); m];
        for (i, x) in a.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
            for (j, y) in b.iter().enumerate().filter(|(_, y)| !y.is_zero()) {
                let c = x * y;
                for (k, z) in self.products[i * m + j].iter().enumerate().filter(|(_, z)| !z.is_zero()) {
                    out[k] += &(&c * z);
                }
            }
        }
        out
    }

    fn eval_linear(&self, e: &Expr) -> Result<Vec<GaussScalar>> {
        let v = expr::eval(e, self)?;
        self.to_vec(v)
    }

    /// Structure constants of the span of `basis` (even vectors first, unit first),
    /// each product written back in that basis.
    pub fn graded_table(&self, n0: usize, n1: usize, basis: &[&str]) -> Result<MultTable> {
        let space = Superspace::new(n0, n1)?;
        if basis.len() != space.dim() {
            return Err(Error::Shape(format!("{} basis vectors for a space of dimension {}", basis.len(), space.dim())));
        }
        let cols: Vec<Vec<GaussScalar>> =
            basis.iter().map(|s| self.eval_linear(&expr::parse(s)?)).collect::<Result<_>>()?;
        let b = Matrix::from_columns(self.dim(), &cols);
        if b.rank() != cols.len() {
            return Err(Error::Shape("graded basis is linearly dependent".into()));
        }
        let mut out = MultTable::zero(space);
        for p in space.basis() {
            for q in space.basis() {
                let prod = self.mul(&cols[space.flat(p)], &cols[space.flat(q)]);
                match solve(&b, &prod)? {
                    LinearSolution::Consistent { particular, .. } => {
                        out.set(p, q, GradedVector::from_dense(space, &particular));
                    }
                    LinearSolution::Inconsistent { .. } => {
                        return Err(Error::Shape(format!("product {p}·{q} leaves the span of the basis")));
                    }
                }
            }
        }
        if space.basis().iter().any(|&p| out.get(BasisIndex::UNIT, p) != &GradedVector::basis(space, p)) {
            return Err(Error::Shape("first basis vector is not the unit".into()));
        }
        Ok(out)
    }
}

#[derive(Clone, Debug)]
pub enum MV {
    Scalar(GaussScalar),
    Vec(Vec<GaussScalar>),
}

impl Model {
    fn unit_vec(&self, s: &GaussScalar) -> Result<Vec<GaussScalar>> {
        let u = self.index("1").map_err(|_| Error::Parse("scalar used in a model without a named unit".into()))?;
        let mut v = vec![GaussScalar::zero(); self.dim()];
        v[u] = s.clone();
        Ok(v)
    }

    fn to_vec(&self, v: MV) -> Result<Vec<GaussScalar>> {
        match v {
            MV::Vec(v) => Ok(v),
            MV::Scalar(s) => self.unit_vec(&s),
        }
    }
}

impl Interp for Model {
    type V = MV;

    fn scalar(&self, s: &GaussScalar) -> Result<MV> {
        Ok(MV::Scalar(s.clone()))
    }

    fn name(&self, n: &str) -> Result<MV> {
        let mut v = vec![GaussScalar::zero(); self.dim()];
        v[self.index(n)?] = GaussScalar::one();
        Ok(MV::Vec(v))
    }

    fn add(&self, a: MV, b: MV) -> Result<MV> {
        if let (MV::Scalar(x), MV::Scalar(y)) = (&a, &b) {
            return Ok(MV::Scalar(x + y));
        }
        let (a, b) = (self.to_vec(a)?, self.to_vec(b)?);
        Ok(MV::Vec(a.iter().zip(&b).map(|(x, y)| x + y).collect()))
    }

    fn scale(&self, s: &GaussScalar, a: MV) -> Result<MV> {
        Ok(match a {
            MV::Scalar(x) => MV::Scalar(s * &x),
            MV::Vec(v) => MV::Vec(v.iter().map(|x| s * x).collect()),
        })
    }

    fn mul(&self, a: MV, b: MV) -> Result<MV> {
        Ok(MV::Vec(Model::mul(self, &self.to_vec(a)?, &self.to_vec(b)?)))
    }

    fn tensor(&self, _: MV, _: MV) -> Result<MV> {
        Err(Error::Parse("tensor products are not model vectors".into()))
    }

    fn as_scalar(&self, v: &MV) -> Option<GaussScalar> {
        match v {
            MV::Scalar(s) => Some(s.clone()),
            MV::Vec(_) => None,
        }
    }
}

/// A superalgebra family: a model algebra, a graded basis inside it, and the
/// human labels used by the transcribed tables.
#[derive(Clone, Debug)]
pub struct FamilySpec {
    pub id: String,
    pub n0: usize,
    pub n1: usize,
    pub model: Model,
    /// `e1, e2, .., o1, ..` as model expressions.
    pub basis: Vec<String>,
    /// `(name, expression)`; expressions use `e1.., o1..` and earlier labels.
    pub labels: Vec<(String, String)>,
    /// Labels that together with the unit form a basis.
    pub label_basis: Vec<String>,
    /// Labels whose comultiplication is transcribed; the rest follow by multiplicativity.
    pub generators: Vec<String>,
    pub description: String,
}

fn strings(v: &[&str]) -> Vec<String> {
    v.iter().map(|s| s.to_string()).collect()
}

fn default_labels(n0: usize) -> Vec<(String, String)> {
    let src: &[(&str, &str)] =
        if n0 == 3 { &[("x", "e2"), ("y", "e3"), ("z", "o1")] } else { &[("x", "e2"), ("y", "o1"), ("z", "o2")] };
    src.iter().map(|(a, b)| (a.to_string(), b.to_string())).collect()
}

struct FamilyBuilder {
    spec: FamilySpec,
}

impl FamilyBuilder {
    fn new(id: &str, n0: usize, n1: usize, model: &Model, basis: &[&str], description: &str) -> Self {
        let labels = default_labels(n0);
        let names: Vec<String> = labels.iter().map(|(n, _)| n.clone()).collect();
        FamilyBuilder {
            spec: FamilySpec {
                id: id.to_string(),
                n0,
                n1,
                model: model.clone(),
                basis: strings(basis),
                labels,
                label_basis: names.clone(),
                generators: names,
                description: description.to_string(),
            },
        }
    }

    fn labels(mut self, labels: &[(&str, &str)], label_basis: &[&str], generators: &[&str]) -> Self {
        self.spec.labels = labels.iter().map(|(a, b)| (a.to_string(), b.to_string())).collect();
        self.spec.label_basis = strings(label_basis);
        self.spec.generators = strings(generators);
        self
    }

    fn done(self) -> FamilySpec {
        self.spec
    }
}

fn tbl(names: &[&str], rules: &str, commutative: bool) -> Model {
    Model::table(names, rules, commutative).expect("built-in model")
}

/// The even 2-dimensional algebras and the trivial one.
pub fn even_algebras() -> Vec<(String, Model, Vec<&'static str>, String)> {
    vec![
        ("K".into(), tbl(&["1"], "", true), vec!["1"], "the ground field".into()),
        ("A_1".into(), tbl(&["1", "x"], "", true), vec!["1", "x"], "K[x]/(x^2), basis 1, x".into()),
        ("A_2".into(), tbl(&["1", "x"], "x*x=x", true), vec!["1", "x"], "K[x]/(x^2 - x), basis 1, x".into()),
    ]
}

/// Every graded family of dimension 2, 3 and 4 used by the catalog.
pub fn families() -> Vec<FamilySpec> {
    let k4 = tbl(&["a", "b", "c", "d"], "a*a=a; b*b=b; c*c=c; d*d=d", true);
    let kk_dual = tbl(&["a", "b", "c", "cx"], "a*a=a; b*b=b; c*c=c; c*cx=cx", true);
    let dual_dual = tbl(&["a", "ax", "b", "by"], "a*a=a; a*ax=ax; b*b=b; b*by=by", true);
    let k_cubic = tbl(&["a", "b", "bx", "bx2"], "a*a=a; b*b=b; b*bx=bx; b*bx2=bx2; bx*bx=bx2", true);
    let quartic = tbl(&["1", "x", "x2", "x3"], "x*x=x2; x*x2=x3", true);
    let k_square_zero = tbl(&["a", "b", "bx", "by"], "a*a=a; b*b=b; b*bx=bx; b*by=by", true);
    let two_duals = tbl(&["1", "x", "y", "xy"], "x*y=xy", true);
    let cubic_line = tbl(&["1", "x", "x2", "y"], "x*x=x2", true);
    let square_zero = tbl(&["1", "x", "y", "z"], "", true);
    let exterior = tbl(&["1", "x", "y", "xy"], "x*y=xy; y*x=-xy", false);
    let one_sided = tbl(&["1", "x", "y", "xy"], "x*y=xy", false);
    let nineteen = tbl(&["1", "x", "y", "xy"], "x*x=xy; x*y=xy; y*x=-xy", false);
    let m2 = Model::matrices(2);
    let m3 = Model::matrices(3);
    let m4 = Model::matrices(4);
    let i3 = "E11+E22+E33";
    let i4 = "E11+E22+E33+E44";
    let x2_labels = |x: &'static str| -> [(&'static str, &'static str); 3] { [("x", x), ("x2", "x*x"), ("y", "o1")] };
    let b = FamilyBuilder::new;

    let mut out = vec![
        b("Lambda", 1, 1, &tbl(&["1", "x"], "", true), &["1", "x"], "K[x]/(x^2), x odd")
            .labels(&[("x", "o1")], &["x"], &["x"])
            .done(),
        b("A3_{1|1}", 2, 1, &tbl(&["1", "x", "y"], "", true), &["1", "x", "y"], "K[x,y]/(x^2, y^2, xy), y odd")
            .labels(&[("x", "e2"), ("y", "o1")], &["x", "y"], &["x", "y"])
            .done(),
        b("A3_{1|2}", 2, 1, &tbl(&["1", "x", "y"], "y*y=x", true), &["1", "x", "y"], "K[x,y]/(x^2, y^2 - x, xy), y odd")
            .labels(&[("x", "e2"), ("y", "o1")], &["x", "y"], &["x", "y"])
            .done(),
        b(
            "A3_{2|1}",
            2,
            1,
            &tbl(&["1", "x", "y"], "x*x=x; y*y=x; x*y=y", true),
            &["1", "x", "y"],
            "K[x,y]/(x^2 - x, y^2 - x, xy - y), y odd",
        )
        .labels(&[("x", "e2"), ("y", "o1")], &["x", "y"], &["x", "y"])
        .done(),
        b(
            "A3_{2|2}",
            2,
            1,
            &tbl(&["1", "x", "y"], "x*x=x; x*y=y", false),
            &["1", "x", "y"],
            "K<x,y>/(x^2 - x, y^2, xy - y, yx), y odd",
        )
        .labels(&[("x", "e2"), ("y", "o1")], &["x", "y"], &["x", "y"])
        .done(),
        b(
            "A3_{2|3}",
            2,
            1,
            &tbl(&["1", "x", "y"], "x*x=x; x*y=y", true),
            &["1", "x", "y"],
            "K[x,y]/(x^2 - x, y^2, xy - y), y odd",
        )
        .labels(&[("x", "e2"), ("y", "o1")], &["x", "y"], &["x", "y"])
        .done(),
        // n0 = 3
        b("A_{1|1}", 3, 1, &k4, &["a+b+c+d", "a", "c+d", "c-d"], "K^4")
            .labels(&[("x", "e1-2*e2-e3"), ("x2", "x*x"), ("y", "o1")], &["x", "x2", "y"], &["x", "y"])
            .done(),
        b("A_{2|1}", 3, 1, &kk_dual, &["a+b+c", "a", "b", "cx"], "K x K x K[c]/(c^2)")
            .labels(&x2_labels("e2-e3"), &["x", "x2", "y"], &["x", "y"])
            .done(),
        b("A_{2|2}", 3, 1, &kk_dual, &["a+b+c", "a+b", "cx", "a-b"], "K x K x K[c]/(c^2)").done(),
        b("A_{3|1}", 3, 1, &dual_dual, &["a+b", "a", "ax", "by"], "K[x]/(x^2) x K[y]/(y^2)").done(),
        b("A_{4|1}", 3, 1, &k_cubic, &["a+b", "a", "bx2", "bx"], "K x K[x]/(x^3)").done(),
        b("A_{6|1}", 3, 1, &k_square_zero, &["a+b", "a", "bx", "by"], "K x K[x,y]/(x,y)^2")
            .labels(&x2_labels("e2+e3"), &["x", "x2", "y"], &["x", "y"])
            .done(),
        b("A_{7|1}", 3, 1, &two_duals, &["1", "x+y", "xy", "x-y"], "K[x,y]/(x^2, y^2)").done(),
        b("A_{8|1}", 3, 1, &cubic_line, &["1", "x", "x2", "y"], "K[x,y]/(x^3, xy, y^2)").done(),
        b("A_{8|2}", 3, 1, &cubic_line, &["1", "x2", "y", "x"], "K[x,y]/(x^3, xy, y^2)").done(),
        b("A_{9|1}", 3, 1, &square_zero, &["1", "x", "y", "z"], "K[x,y,z]/(x,y,z)^2").done(),
        b("A_{11|1}", 3, 1, &m4, &[i4, "E11+E22", "E24", "E31"], "4x4 matrices a(E11+E22) + b(E33+E44) + cE31 + dE24")
            .done(),
        b("A_{13|1}", 3, 1, &m3, &[i3, "E22", "E33", "E23"], "K x upper triangular 2x2 matrices")
            .labels(&x2_labels("e2-e3"), &["x", "x2", "y"], &["x", "y"])
            .done(),
        b("A_{14|1}", 3, 1, &m3, &[i3, "E11+E22", "E31", "E21"], "3x3 matrices a(E11+E22) + bE33 + cE21 + dE31").done(),
        b("A_{14|2}", 3, 1, &m3, &[i3, "E11+E22", "E21", "E31"], "3x3 matrices a(E11+E22) + bE33 + cE21 + dE31").done(),
        b("A_{15|1}", 3, 1, &m3, &[i3, "E11+E22", "E13", "E12"], "3x3 matrices a(E11+E22) + bE33 + cE12 + dE13").done(),
        b("A_{15|2}", 3, 1, &m3, &[i3, "E11+E22", "E12", "E13"], "3x3 matrices a(E11+E22) + bE33 + cE12 + dE13").done(),
        b("A_{17|1}", 3, 1, &m3, &[i3, "E11+E22", "E31", "E32"], "3x3 matrices a(E11+E22) + bE33 + cE31 + dE32").done(),
        // n0 = 2
        b("A_{1|2}", 2, 2, &k4, &["a+b+c+d", "a+b", "a-b", "c-d"], "K^4").done(),
        b("A_{2|3}", 2, 2, &kk_dual, &["a+b+c", "a+b", "a-b", "cx"], "K x K x K[c]/(c^2)").done(),
        b("A_{3|2}", 2, 2, &dual_dual, &["a+b", "a", "ax", "by"], "K[x]/(x^2) x K[y]/(y^2)")
            .labels(&[("x", "e2"), ("y", "o1+o2"), ("xy", "x*y")], &["x", "y", "xy"], &["x", "y"])
            .done(),
        b("A_{3|3}", 2, 2, &dual_dual, &["a+b", "ax+by", "a-b", "ax-by"], "K[x]/(x^2) x K[y]/(y^2)").done(),
        b("A_{5|1}", 2, 2, &quartic, &["1", "x2", "x", "x3"], "K[x]/(x^4)").done(),
        b("A_{6|2}", 2, 2, &k_square_zero, &["a+b", "a", "bx", "by"], "K x K[x,y]/(x,y)^2").done(),
        b("A_{7|2}", 2, 2, &two_duals, &["1", "x", "y", "xy"], "K[x,y]/(x^2, y^2)").done(),
        b("A_{7|3}", 2, 2, &two_duals, &["1", "xy", "x", "y"], "K[x,y]/(x^2, y^2)").done(),
        b("A_{8|3}", 2, 2, &cubic_line, &["1", "x2", "x", "y"], "K[x,y]/(x^3, xy, y^2)").done(),
        b("A_{9|2}", 2, 2, &square_zero, &["1", "x", "y", "z"], "K[x,y,z]/(x,y,z)^2").done(),
        b("A_{10|1}", 2, 2, &m2, &["E11+E22", "E11", "E12", "E21"], "2x2 matrices").done(),
        b("A_{11|2}", 2, 2, &m4, &[i4, "E11+E22", "E24", "E31"], "4x4 matrices a(E11+E22) + b(E33+E44) + cE31 + dE24")
            .labels(&[("x", "e2"), ("y", "o1-o2"), ("xy", "x*y")], &["x", "y", "xy"], &["x", "y"])
            .done(),
        b(
            "A_{11|3}",
            2,
            2,
            &m4,
            &[i4, "E24+E31", "E11+E22-E33-E44", "-E24+E31"],
            "4x4 matrices a(E11+E22) + b(E33+E44) + cE31 + dE24",
        )
        .done(),
        b("A_{12|1}", 2, 2, &exterior, &["1", "x", "y", "xy"], "exterior algebra on x, y").done(),
        b("A_{12|2}", 2, 2, &exterior, &["1", "xy", "x", "y"], "exterior algebra on x, y")
            .labels(&[("x", "o1"), ("y", "o2"), ("xy", "x*y")], &["x", "y", "xy"], &["x", "y"])
            .done(),
        b("A_{14|3}", 2, 2, &m3, &[i3, "E11+E22", "E21", "E31"], "3x3 matrices a(E11+E22) + bE33 + cE21 + dE31").done(),
        b("A_{15|3}", 2, 2, &m3, &[i3, "E11+E22", "E12", "E13"], "3x3 matrices a(E11+E22) + bE33 + cE12 + dE13").done(),
        b("A_{16|1}", 2, 2, &one_sided, &["1", "x", "y", "xy"], "K<x,y>/(x^2, y^2, yx)").done(),
        b("A_{16|2}", 2, 2, &one_sided, &["1", "y", "x", "xy"], "K<x,y>/(x^2, y^2, yx)").done(),
        b("A_{16|3}", 2, 2, &one_sided, &["1", "xy", "x", "y"], "K<x,y>/(x^2, y^2, yx)").done(),
        b("A_{17|2}", 2, 2, &m3, &[i3, "E11+E22", "E31", "E32"], "3x3 matrices a(E11+E22) + bE33 + cE31 + dE32").done(),
        b("A_{19|1}", 2, 2, &nineteen, &["1", "xy", "x", "y"], "K<x,y>/(y^2, x^2 + yx, xy + yx)").done(),
    ];
    for (tag, lambda) in LAMBDA_SAMPLES {
        let m = tbl(&["1", "x", "y", "xy"], &format!("x*y=xy; y*x={lambda}*xy"), false);
        let d = format!("K<x,y>/(x^2, y^2, yx - {lambda} xy)");
        out.push(b(&format!("A_{{18;{tag}|1}}"), 2, 2, &m, &["1", "x", "y", "xy"], &d).done());
        out.push(b(&format!("A_{{18;{tag}|2}}"), 2, 2, &m, &["1", "xy", "x", "y"], &d).done());
    }
    out
}

/// Sampled values of the parameter of family 18, as (id tag, scalar text).
pub const LAMBDA_SAMPLES: [(&str, &str); 4] = [("2", "2"), ("3", "3"), ("1/2", "1/2"), ("i", "i")];

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::sc;

    #[test]
    fn matrix_units_multiply() {
        let m = Model::matrices(2);
        let t = m.graded_table(2, 2, &["E11+E22", "E11", "E12", "E21"]).unwrap();
        let s = t.space();
        // E12·E21 = E11
        assert_eq!(t.get(BasisIndex::odd(1), BasisIndex::odd(2)), &GradedVector::basis(s, BasisIndex::even(2)));
        // E21·E12 = E22 = 1 − E11
        let v = t.get(BasisIndex::odd(2), BasisIndex::odd(1));
        assert_eq!(v.get(BasisIndex::UNIT), sc("1"));
        assert_eq!(v.get(BasisIndex::even(2)), sc("-1"));
    }

    #[test]
    fn non_closed_span_is_rejected() {
        let m = Model::matrices(2);
        assert!(m.graded_table(2, 1, &["E11+E22", "E11", "E12+E21"]).is_err());
    }

    #[test]
    fn every_family_table_is_graded_and_associative() {
        for f in families() {
            let t = f.model.graded_table(f.n0, f.n1, &f.basis.iter().map(String::as_str).collect::<Vec<_>>()).unwrap();
            assert!(t.violations().is_empty(), "{}: {:?}", f.id, t.violations());
        }
    }
}
