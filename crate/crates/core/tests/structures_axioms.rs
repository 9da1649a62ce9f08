mod common;

use common::{bialgebras, config, e0, e1, scalar, vector};
use proptest::prelude::*;
use superhopf::axioms::{check_all, check_axiom, is_commutative, AxiomId};
use superhopf::catalog::catalog;
use superhopf::constructions::{variant, VariantKind};
use superhopf::graded::superflip;
use superhopf::structures::{deserialize, serialize, ComultTable, CounitVector, Document};
use superhopf::{BasisIndex, GaussScalar, GradedVector, SuperBialgebraData, TensorVector};

fn record(id: &str) -> &'static SuperBialgebraData {
    &catalog().get(id).unwrap().data
}

/// Δ(1) = 1⊗1 and every other basis vector primitive.
fn primitive_comult(d: &SuperBialgebraData) -> ComultTable {
    let s = d.space;
    ComultTable::from_fn(s, |b| {
        let mut t = TensorVector::pure(vec![s, s], vec![BasisIndex::UNIT, b], GaussScalar::one());
        if b != BasisIndex::UNIT {
            t.add_term(vec![b, BasisIndex::UNIT], GaussScalar::one());
        }
        t
    })
}

#[test]
fn every_bialgebra_record_passes_the_structural_axioms() {
    let all = bialgebras();
    assert_eq!(all.len(), 167);
    for e in all {
        for r in check_all(&e.data).unwrap() {
            assert!(r.holds, "{} fails {}", e.id(), r.axiom);
        }
    }
}

#[test]
fn every_catalog_document_round_trips() {
    for e in catalog().entries() {
        let doc = serialize(&e.data);
        let text = doc.to_json();
        let back = deserialize(&Document::from_json(&text).unwrap()).unwrap();
        assert_eq!(back, e.data, "{}", e.id());
        assert_eq!(serialize(&back), doc);
    }
}

#[test]
fn algebra_documents_omit_the_coalgebra() {
    let doc = serialize(record("M2Graded"));
    assert!(doc.comult.is_none() && doc.counit.is_none());
    assert!(!doc.to_json().contains("comult"));
}

#[test]
fn odd_counit_values_are_rejected() {
    let mut v: serde_json::Value = serde_json::from_str(&serialize(record("H4")).to_json()).unwrap();
    v["counit"].as_array_mut().unwrap().push(serde_json::json!({"k": "e1^1", "coeff": "1"}));
    let bad = Document::from_json(&v.to_string()).and_then(|d| deserialize(&d));
    assert!(bad.is_err());
}

#[test]
fn a_non_grouplike_unit_is_rejected() {
    let d = record("LambdaK");
    let mut v: serde_json::Value = serde_json::from_str(&serialize(d).to_json()).unwrap();
    let comult = v["comult"].as_array_mut().unwrap();
    let unit = comult.iter_mut().find(|e| e["i"] == "e1^0").unwrap();
    unit["out"] = serde_json::json!([{"j": "e1^0", "k": "e1^0", "coeff": "2"}]);
    assert!(Document::from_json(&v.to_string()).and_then(|d| deserialize(&d)).is_err());
}

#[test]
fn dim_three_products_and_coproducts() {
    let a12 = record("A3_{1|2}");
    assert_eq!(a12.mult.get(e1(1), e1(1)), &a12.basis_vector(e0(2)));
    let d = record("A3_{2|1}^1");
    assert_eq!(d.space.dim(), 3);
    let (x, y) = (e0(2), e1(1));
    let mut want = TensorVector::zero(vec![d.space, d.space]);
    want.add_term(vec![y, BasisIndex::UNIT], GaussScalar::one());
    want.add_term(vec![BasisIndex::UNIT, y], GaussScalar::one());
    want.add_term(vec![y, x], -GaussScalar::one());
    assert_eq!(d.comult.as_ref().unwrap().get(y), &want);
}

#[test]
fn coassociativity_holds_and_cocommutativity_fails_on_a22_2() {
    let d = record("A_{2|2}^2");
    assert!(check_axiom(d, AxiomId::Coassociativity).unwrap().holds);
    let r = check_axiom(d, AxiomId::Cocommutative).unwrap();
    assert!(!r.holds);
    let w = r.violations.iter().find(|v| v.basis == vec![e0(2)]).expect("witness on x");
    let yy = w.residual.get(&[e1(1), e1(1)]);
    assert!(yy == GaussScalar::from_int(2) || yy == GaussScalar::from_int(-2), "{}", w.residual);
}

#[test]
fn primitive_x_in_a11_breaks_multiplicativity() {
    let a = record("A3_{1|1}");
    let counit = CounitVector::new(vec![GaussScalar::one(), GaussScalar::zero()]);
    let d = SuperBialgebraData::bialgebra("candidate", a.mult.clone(), primitive_comult(a), counit);
    let r = check_axiom(&d, AxiomId::CompatDeltaMu).unwrap();
    assert!(r.violations.iter().any(|v| v.basis == vec![e0(2), e0(2)]));
}

#[test]
fn m2_with_vanishing_idempotent_counit_breaks_counit_multiplicativity() {
    let m = record("M2Graded");
    let counit = CounitVector::new(vec![GaussScalar::one(), GaussScalar::zero()]);
    let d = SuperBialgebraData::bialgebra("candidate", m.mult.clone(), primitive_comult(m), counit);
    let r = check_axiom(&d, AxiomId::CompatEpsMu).unwrap();
    assert!(r.violations.iter().any(|v| v.basis == vec![e1(2), e1(1)]), "{:?}", r.violations);
}

#[test]
fn lambda_k_is_commutative() {
    assert!(check_axiom(record("LambdaK"), AxiomId::Commutative).unwrap().holds);
}

#[test]
fn commutativity_agrees_with_superflip_invariance() {
    for e in catalog().entries() {
        let d = &e.data;
        let s = d.space;
        let mut symmetric = true;
        for a in s.basis() {
            for b in s.basis() {
                let ab = TensorVector::pure(vec![s, s], vec![a, b], GaussScalar::one());
                let ba = superflip(&ab).unwrap();
                let (_, c) = ba.terms().next().unwrap();
                let (p, q) = (d.mult.get(a, b), d.mult.get(b, a).scale(c));
                symmetric &= *p == q;
            }
        }
        assert_eq!(symmetric, is_commutative(d), "{}", e.id());
    }
}

#[test]
fn double_cop_leaves_every_report_unchanged() {
    for e in bialgebras() {
        let back = variant(&variant(&e.data, VariantKind::Cop).unwrap(), VariantKind::Cop).unwrap();
        assert_eq!(check_all(&back).unwrap(), check_all(&e.data).unwrap());
    }
}

fn record_and_vectors() -> impl Strategy<Value = (usize, [GradedVector; 3])> {
    (0usize..167).prop_flat_map(|k| {
        let s = bialgebras()[k].data.space;
        (Just(k), [vector(s), vector(s), vector(s)])
    })
}

proptest! {
    #![proptest_config(config(64, 0x57a7))]

    #[test]
    fn multiplication_is_bilinear((k, [u, v, w]) in record_and_vectors(), s in scalar()) {
        let d = &bialgebras()[k].data;
        let mut vw = v.clone();
        vw.add_scaled(&w, &s);
        let mut right = d.multiply(&u, &v).unwrap();
        right.add_scaled(&d.multiply(&u, &w).unwrap(), &s);
        prop_assert_eq!(d.multiply(&u, &vw).unwrap(), right);
        let mut left = d.multiply(&v, &u).unwrap();
        left.add_scaled(&d.multiply(&w, &u).unwrap(), &s);
        prop_assert_eq!(d.multiply(&vw, &u).unwrap(), left);
    }
}
