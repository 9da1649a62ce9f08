//! The JSON document form of a record. Basis indices are written `e<position>^<parity>`
//! and scalars use the canonical text form.

use super::{ComultTable, CounitVector, GradedLinearMap, Label, MultTable, SuperBialgebraData};
use crate::error::{Error, Result};
use crate::graded::{BasisIndex, GradedVector, Superspace, TensorVector};
use crate::scalar::GaussScalar;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermDoc {
    pub k: String,
    pub coeff: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TensorTermDoc {
    pub j: String,
    pub k: String,
    pub coeff: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProductDoc {
    pub i: String,
    pub j: String,
    pub out: Vec<TermDoc>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MapEntryDoc<T> {
    pub i: String,
    pub out: Vec<T>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LabelDoc {
    pub name: String,
    pub vector: Vec<TermDoc>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Document {
    pub id: String,
    pub n0: usize,
    pub n1: usize,
    pub mult: Vec<ProductDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub comult: Option<Vec<MapEntryDoc<TensorTermDoc>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub counit: Option<Vec<TermDoc>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub antipode: Option<Vec<MapEntryDoc<TermDoc>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<LabelDoc>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub provenance: Option<String>,
}

pub(crate) fn parse_index(s: &str) -> Option<BasisIndex> {
    let (pos, par) = s.strip_prefix('e')?.split_once('^')?;
    let position: usize = pos.parse().ok()?;
    let parity: u8 = par.parse().ok()?;
    (parity <= 1 && position >= 1).then_some(BasisIndex { parity, position })
}

fn terms_doc(v: &GradedVector) -> Vec<TermDoc> {
    v.terms().map(|(b, c)| TermDoc { k: b.to_string(), coeff: c.to_string() }).collect()
}

/// Canonical document for a record; zero products and zero counit values are omitted.
pub fn serialize(data: &SuperBialgebraData) -> Document {
    let space = data.space;
    let basis = space.basis();
    let mut mult = Vec::new();
    for &a in &basis {
        for &b in &basis {
            let v = data.mult.get(a, b);
            if !v.is_zero() {
                mult.push(ProductDoc { i: a.to_string(), j: b.to_string(), out: terms_doc(v) });
            }
        }
    }
    let comult = data.comult.as_ref().map(|c| {
        basis
            .iter()
            .map(|&b| MapEntryDoc {
                i: b.to_string(),
                out: c
                    .get(b)
                    .terms()
                    .map(|(k, x)| TensorTermDoc { j: k[0].to_string(), k: k[1].to_string(), coeff: x.to_string() })
                    .collect(),
            })
            .collect()
    });
    let counit = data.counit.as_ref().map(|e| {
        (1..=space.n0)
            .map(BasisIndex::even)
            .filter(|&b| !e.value(b).is_zero())
            .map(|b| TermDoc { k: b.to_string(), coeff: e.value(b).to_string() })
            .collect()
    });
    let antipode = data.antipode.as_ref().map(|s| {
        basis.iter().map(|&b| MapEntryDoc { i: b.to_string(), out: terms_doc(&s.image(b)) }).collect()
    });
    let labels = data
        .basis_labels
        .as_ref()
        .map(|ls| ls.iter().map(|l| LabelDoc { name: l.name.clone(), vector: terms_doc(&l.vector) }).collect());
    Document {
        id: data.id.clone(),
        n0: space.n0,
        n1: space.n1,
        mult,
        comult,
        counit,
        antipode,
        labels,
        provenance: None,
    }
}

struct Collector {
    space: Superspace,
    errors: Vec<String>,
}

impl Collector {
    fn index(&mut self, s: &str, ctx: &str) -> Option<BasisIndex> {
        match parse_index(s) {
            Some(b) if self.space.contains(b) => Some(b),
            Some(_) => {
                self.errors.push(format!("{ctx}: index {s} outside the space"));
                None
            }
            None => {
                self.errors.push(format!("{ctx}: malformed index `{s}`"));
                None
            }
        }
    }

    fn scalar(&mut self, s: &str, ctx: &str) -> Option<GaussScalar> {
        match s.parse::<GaussScalar>() {
            Ok(c) => Some(c),
            Err(_) => {
                self.errors.push(format!("{ctx}: malformed scalar `{s}`"));
                None
            }
        }
    }

    fn vector(&mut self, terms: &[TermDoc], ctx: &str) -> GradedVector {
        let mut v = GradedVector::zero(self.space);
        for t in terms {
            if let (Some(k), Some(c)) = (self.index(&t.k, ctx), self.scalar(&t.coeff, ctx)) {
                v.add_term(k, c);
            }
        }
        v
    }
}

/// Parses and validates a document, reporting every offending entry at once.
pub fn deserialize(doc: &Document) -> Result<SuperBialgebraData> {
    let space = Superspace::new(doc.n0, doc.n1).map_err(|_| Error::Validation(vec!["n0 must be at least 1".into()]))?;
    let mut col = Collector { space, errors: Vec::new() };

    let mut products: BTreeMap<(BasisIndex, BasisIndex), GradedVector> = BTreeMap::new();
    for p in &doc.mult {
        let ctx = format!("mult {}·{}", p.i, p.j);
        let (a, b) = (col.index(&p.i, &ctx), col.index(&p.j, &ctx));
        let v = col.vector(&p.out, &ctx);
        if let (Some(a), Some(b)) = (a, b) {
            if products.insert((a, b), v).is_some() {
                col.errors.push(format!("{ctx}: duplicate entry"));
            }
        }
    }
    let mult = MultTable::from_fn(space, |a, b| products.get(&(a, b)).cloned().unwrap_or_else(|| GradedVector::zero(space)));

    let comult = doc.comult.as_ref().map(|entries| {
        let mut map: BTreeMap<BasisIndex, TensorVector> = BTreeMap::new();
        for e in entries {
            let ctx = format!("comult Δ({})", e.i);
            let Some(i) = col.index(&e.i, &ctx) else { continue };
            let mut t = TensorVector::zero(vec![space, space]);
            for term in &e.out {
                let (j, k, c) = (col.index(&term.j, &ctx), col.index(&term.k, &ctx), col.scalar(&term.coeff, &ctx));
                if let (Some(j), Some(k), Some(c)) = (j, k, c) {
                    t.add_term(vec![j, k], c);
                }
            }
            if map.insert(i, t).is_some() {
                col.errors.push(format!("{ctx}: duplicate entry"));
            }
        }
        ComultTable::from_fn(space, |b| map.get(&b).cloned().unwrap_or_else(|| TensorVector::zero(vec![space, space])))
    });

    let counit = doc.counit.as_ref().map(|terms| {
        let mut values = vec![GaussScalar::zero(); space.n0];
        for t in terms {
            let ctx = format!("counit ε({})", t.k);
            if let (Some(k), Some(c)) = (col.index(&t.k, &ctx), col.scalar(&t.coeff, &ctx)) {
                if k.is_odd() {
                    if !c.is_zero() {
                        col.errors.push(format!("{ctx}: nonzero odd counit value {c}"));
                    }
                } else {
                    values[k.position - 1] = c;
                }
            }
        }
        CounitVector::new(values)
    });

    let antipode = doc.antipode.as_ref().and_then(|entries| {
        let mut images = vec![GradedVector::zero(space); space.dim()];
        for e in entries {
            let ctx = format!("antipode S({})", e.i);
            if let Some(i) = col.index(&e.i, &ctx) {
                images[space.flat(i)] = col.vector(&e.out, &ctx);
            }
        }
        match GradedLinearMap::from_images(space, &images) {
            Ok(s) => Some(s),
            Err(e) => {
                col.errors.push(format!("antipode: {e}"));
                None
            }
        }
    });

    let labels = doc.labels.as_ref().map(|ls| {
        ls.iter()
            .map(|l| {
                let vector = col.vector(&l.vector, &format!("label {}", l.name));
                Label { name: l.name.clone(), vector }
            })
            .collect()
    });

    let data = SuperBialgebraData {
        id: doc.id.clone(),
        space,
        mult,
        comult,
        counit,
        antipode,
        basis_labels: labels,
    };
    col.errors.extend(data.violations());
    if col.errors.is_empty() {
        Ok(data)
    } else {
        Err(Error::Validation(col.errors))
    }
}

impl Document {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("documents always serialize")
    }

    pub fn from_json(s: &str) -> Result<Document> {
        Ok(serde_json::from_str(s)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lambda_doc() -> Document {
        Document::from_json(
            r#"{
              "id": "LambdaK", "n0": 1, "n1": 1,
              "mult": [
                {"i": "e1^0", "j": "e1^0", "out": [{"k": "e1^0", "coeff": "1"}]},
                {"i": "e1^0", "j": "e1^1", "out": [{"k": "e1^1", "coeff": "1"}]},
                {"i": "e1^1", "j": "e1^0", "out": [{"k": "e1^1", "coeff": "1"}]}
              ],
              "comult": [
                {"i": "e1^0", "out": [{"j": "e1^0", "k": "e1^0", "coeff": "1"}]},
                {"i": "e1^1", "out": [{"j": "e1^0", "k": "e1^1", "coeff": "1"}, {"j": "e1^1", "k": "e1^0", "coeff": "1"}]}
              ],
              "counit": [{"k": "e1^0", "coeff": "1"}],
              "antipode": [
                {"i": "e1^0", "out": [{"k": "e1^0", "coeff": "1"}]},
                {"i": "e1^1", "out": [{"k": "e1^1", "coeff": "-1"}]}
              ]
            }"#,
        )
        .unwrap()
    }

    #[test]
    fn round_trip() {
        let doc = lambda_doc();
        let data = deserialize(&doc).unwrap();
        assert_eq!(serialize(&data), doc);
        let again = Document::from_json(&doc.to_json()).unwrap();
        assert_eq!(again, doc);
    }

    #[test]
    fn algebra_only_omits_coalgebra_fields() {
        let mut doc = lambda_doc();
        doc.comult = None;
        doc.counit = None;
        doc.antipode = None;
        let json = serialize(&deserialize(&doc).unwrap()).to_json();
        assert!(!json.contains("comult") && !json.contains("counit"));
    }

    #[test]
    fn odd_counit_rejected() {
        let mut doc = lambda_doc();
        doc.counit.as_mut().unwrap().push(TermDoc { k: "e1^1".into(), coeff: "2".into() });
        let Err(Error::Validation(errs)) = deserialize(&doc) else { panic!() };
        assert!(errs.iter().any(|e| e.contains("nonzero odd counit")), "{errs:?}");
    }

    #[test]
    fn unit_coproduct_checked() {
        let mut doc = lambda_doc();
        doc.comult.as_mut().unwrap()[0].out[0].coeff = "2".into();
        let Err(Error::Validation(errs)) = deserialize(&doc) else { panic!() };
        assert!(errs.iter().any(|e| e.contains("is not e1^0⊗e1^0")), "{errs:?}");
    }

    #[test]
    fn every_offending_entry_listed() {
        let mut doc = lambda_doc();
        doc.mult.remove(1);
        doc.mult[0].out[0].coeff = "1/0".into();
        doc.mult.push(ProductDoc {
            i: "e1^1".into(),
            j: "e1^1".into(),
            out: vec![TermDoc { k: "e1^1".into(), coeff: "1".into() }],
        });
        let Err(Error::Validation(errs)) = deserialize(&doc) else { panic!() };
        assert!(errs.iter().any(|e| e.contains("malformed scalar")), "{errs:?}");
        assert!(errs.iter().any(|e| e.contains("violates the grading")), "{errs:?}");
        assert!(errs.iter().any(|e| e.contains("missing unit")), "{errs:?}");
    }
}
