mod common;

use common::{config, scalar};
use proptest::prelude::*;
use superhopf::antipode::solve_antipode;
use superhopf::axioms::check_all;
use superhopf::catalog::catalog;
use superhopf::classify::superalgebra_isomorphism;
use superhopf::constructions::{named_family, NamedFamily};
use superhopf::search::{
    admissible_counits, classify_odd_extensions, connected_decision, enumerate_comultiplications, satisfies_generated_system,
    solve, ConnectedOutcome, GridSpec, Poly, SearchStatus, UnknownSystem, DEFAULT_BUDGET,
};
use superhopf::structures::{ComultTable, CounitVector};
use superhopf::{BasisIndex, GaussScalar, SuperBialgebraData, TensorVector};

fn record(id: &str) -> &'static SuperBialgebraData {
    &catalog().get(id).unwrap().data
}

fn contains(results: &[(ComultTable, CounitVector)], d: &SuperBialgebraData) -> bool {
    results.iter().any(|(c, e)| Some(c) == d.comult.as_ref() && Some(e) == d.counit.as_ref())
}

#[test]
fn counit_searches() {
    let m2 = admissible_counits(record("M2Graded"), &GridSpec::default(), DEFAULT_BUDGET).unwrap();
    assert_eq!(m2.status, SearchStatus::Complete);
    assert!(m2.counits.is_empty());

    let a21 = admissible_counits(record("A_{2|1}"), &GridSpec::default(), DEFAULT_BUDGET).unwrap();
    assert_eq!(a21.status, SearchStatus::Complete);
    let x = record("A_{2|1}").label("x").unwrap().clone();
    let mut values: Vec<GaussScalar> = a21.counits.iter().map(|e| e.apply(&x)).collect();
    values.sort();
    let mut want = vec![GaussScalar::zero(), GaussScalar::one(), GaussScalar::from_int(-1)];
    want.sort();
    assert_eq!(values, want);

    let lambda = named_family(&NamedFamily::LambdaK).unwrap();
    let one = admissible_counits(&lambda, &GridSpec::default(), DEFAULT_BUDGET).unwrap();
    assert_eq!(one.status, SearchStatus::Complete);
    assert_eq!(one.counits, vec![CounitVector::new(vec![GaussScalar::one()])]);
}

#[test]
fn no_comultiplication_on_the_square_zero_dim_three_algebras() {
    for id in ["A3_{1|1}", "A3_{1|2}"] {
        let out = enumerate_comultiplications(record(id), &GridSpec::default(), DEFAULT_BUDGET).unwrap();
        assert_eq!(out.status, SearchStatus::Complete, "{id}");
        assert!(out.results.is_empty(), "{id}");
        assert!(!out.budget_exhausted);
    }
}

#[test]
fn enumeration_recovers_the_listed_comultiplications() {
    for (algebra, listed) in [("A3_{2|1}", 2), ("A3_{2|2}", 4), ("A3_{2|3}", 5), ("A_{4|1}", 3)] {
        let out = enumerate_comultiplications(record(algebra), &GridSpec::default(), DEFAULT_BUDGET).unwrap();
        assert!(!out.budget_exhausted, "{algebra}");
        let members = catalog().members(algebra);
        assert_eq!(members.len(), listed, "{algebra}");
        for m in members {
            assert!(contains(&out.results, &m.data), "{algebra} misses {}", m.id());
        }
        for (c, e) in &out.results {
            let d = SuperBialgebraData::bialgebra("found", record(algebra).mult.clone(), c.clone(), e.clone());
            assert!(check_all(&d).unwrap().iter().all(|r| r.holds), "{algebra}");
        }
    }
}

#[test]
fn a_larger_grid_only_adds_results() {
    let a = record("A3_{2|2}");
    let small = enumerate_comultiplications(a, &GridSpec::parse("-1").unwrap(), DEFAULT_BUDGET).unwrap();
    let large = enumerate_comultiplications(a, &GridSpec::default(), DEFAULT_BUDGET).unwrap();
    assert!(small.results.len() <= large.results.len());
    for r in &small.results {
        assert!(large.results.contains(r));
    }
}

#[test]
fn listed_structures_satisfy_their_generated_systems() {
    for family in ["A_{2|1}", "A_{13|1}", "A_{6|2}"] {
        let algebra = record(family);
        for m in catalog().members(family) {
            let (c, e) = (m.data.comult.as_ref().unwrap(), m.data.counit.as_ref().unwrap());
            assert!(satisfies_generated_system(algebra, c, e).unwrap(), "{}", m.id());
        }
    }
}

#[test]
fn a_perturbed_comultiplication_violates_the_system() {
    let algebra = record("A_{2|1}");
    let m = &catalog().members("A_{2|1}")[0].data;
    let s = m.space;
    let x = BasisIndex::even(2);
    let c = m.comult.as_ref().unwrap();
    let bad = ComultTable::from_fn(s, |b| {
        let mut t = c.get(b).clone();
        if b == x {
            t.add_term(vec![x, x], GaussScalar::one());
        }
        t
    });
    assert!(!satisfies_generated_system(algebra, &bad, m.counit.as_ref().unwrap()).unwrap());
}

fn classes_match(even: &str, targets: &[&str]) {
    let out = classify_odd_extensions(record(even), 1).unwrap();
    assert_eq!(out.status, SearchStatus::Complete, "{even}");
    assert_eq!(out.classes.len(), targets.len(), "{even}");
    for (i, a) in out.classes.iter().enumerate() {
        for b in &out.classes[i + 1..] {
            assert!(matches!(
                superalgebra_isomorphism(a, b).unwrap().status,
                superhopf::classify::IsoStatus::NonIso(_)
            ));
        }
    }
    for t in targets {
        let hits = out.classes.iter().filter(|c| superalgebra_isomorphism(c, record(t)).unwrap().is_iso()).count();
        assert_eq!(hits, 1, "{even}: {t}");
    }
}

#[test]
fn odd_extensions_of_the_two_dimensional_algebras() {
    classes_match("A_1", &["A3_{1|1}", "A3_{1|2}"]);
    classes_match("A_2", &["A3_{2|1}", "A3_{2|2}", "A3_{2|3}"]);
    classes_match("K", &["LambdaK"]);
}

#[test]
fn connected_superbialgebras_exist_only_with_one_odd_generator() {
    match connected_decision(1).unwrap() {
        ConnectedOutcome::Structure(d) => {
            let l = named_family(&NamedFamily::LambdaK).unwrap();
            assert_eq!((&d.mult, &d.comult, &d.counit), (&l.mult, &l.comult, &l.counit));
            let s = solve_antipode(&d).unwrap().status;
            let x = d.basis_vector(BasisIndex::odd(1));
            assert_eq!(s.antipode().unwrap().apply(&x), x.scale(&GaussScalar::from_int(-1)));
        }
        other => panic!("{other:?}"),
    }
    for n in [2, 3] {
        match connected_decision(n).unwrap() {
            ConnectedOutcome::Nonexistent { pair, residual } => {
                let (a, b) = pair;
                assert_ne!(a, b);
                let s = residual.factors()[0];
                let mut want = TensorVector::pure(vec![s, s], vec![a, b], GaussScalar::one());
                want.add_term(vec![b, a], -GaussScalar::one());
                assert!(residual == want || residual == want.scale(&GaussScalar::from_int(-1)), "{residual}");
            }
            other => panic!("n = {n}: {other:?}"),
        }
    }
}

/// Triangular systems `u_k − p_k + Σ_{j<k} r_kj·u_j·(u_j − p_j)` have `p` as their only solution.
fn triangular_system() -> impl Strategy<Value = (Vec<GaussScalar>, Vec<Vec<GaussScalar>>)> {
    (1usize..=3).prop_flat_map(|n| {
        (
            proptest::collection::vec(scalar(), n),
            proptest::collection::vec(proptest::collection::vec(scalar(), n), n),
        )
    })
}

proptest! {
    #![proptest_config(config(64, 0x501e))]

    #[test]
    fn solver_recovers_the_unique_point((point, mix) in triangular_system()) {
        let n = point.len();
        let mut sys = UnknownSystem::new();
        let vars: Vec<Poly> = (0..n).map(|k| Poly::var(sys.add_variable(format!("u{k}")))).collect();
        let shifted: Vec<Poly> = (0..n).map(|k| vars[k].sub(&Poly::constant(point[k].clone()))).collect();
        for k in 0..n {
            let mut c = shifted[k].clone();
            for j in 0..k {
                c.add_scaled(&vars[j].mul(&shifted[j]), &mix[k][j]);
            }
            sys.add_constraint(c);
        }
        let out = solve(&sys, &GridSpec::default(), DEFAULT_BUDGET);
        prop_assert_eq!(out.status, SearchStatus::Complete);
        prop_assert_eq!(out.points, vec![point]);
    }

    #[test]
    fn every_reported_point_satisfies_the_system(a in scalar(), b in scalar(), c in scalar()) {
        let mut sys = UnknownSystem::new();
        let (x, y) = (Poly::var(sys.add_variable("x")), Poly::var(sys.add_variable("y")));
        let fx = x.sub(&Poly::constant(a.clone())).mul(&x.sub(&Poly::constant(b.clone())));
        sys.add_constraint(fx);
        sys.add_constraint(y.mul(&y).sub(&x.mul(&Poly::constant(c.clone()))));
        let out = solve(&sys, &GridSpec::default(), DEFAULT_BUDGET);
        for p in &out.points {
            for con in &sys.constraints {
                prop_assert!(con.eval(p).is_zero());
            }
        }
        prop_assert!(out.points.iter().any(|p| p[0] == a) || out.status == SearchStatus::GridLimited);
    }
}
