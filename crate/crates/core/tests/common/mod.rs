#![allow(dead_code)]

use proptest::prelude::*;
use proptest::test_runner::{Config, RngSeed};
use superhopf::catalog::{catalog, CatalogEntry, Tier};
use superhopf::{BasisIndex, GaussScalar, GradedVector, Superspace, TensorVector};

pub fn config(cases: u32, seed: u64) -> Config {
    Config { cases, rng_seed: RngSeed::Fixed(seed), failure_persistence: None, ..Config::default() }
}

/// Gaussian rationals with small numerators and denominators.
pub fn scalar() -> impl Strategy<Value = GaussScalar> {
    (-6i64..=6, 1i64..=4, -3i64..=3, 1i64..=3)
        .prop_map(|(a, b, c, d)| GaussScalar::complex(GaussScalar::ratio(a, b), GaussScalar::ratio(c, d)))
}

pub fn nonzero_scalar() -> impl Strategy<Value = GaussScalar> {
    scalar().prop_filter("nonzero", |s| !s.is_zero())
}

pub fn vector(space: Superspace) -> impl Strategy<Value = GradedVector> {
    proptest::collection::vec(scalar(), space.dim()).prop_map(move |v| GradedVector::from_dense(space, &v))
}

pub fn tensor2(space: Superspace) -> impl Strategy<Value = TensorVector> {
    let d = space.dim();
    proptest::collection::vec((0..d, 0..d, scalar()), 0..6).prop_map(move |terms| {
        let mut t = TensorVector::zero(vec![space, space]);
        for (i, j, c) in terms {
            t.add_term(vec![space.from_flat(i), space.from_flat(j)], c);
        }
        t
    })
}

pub fn bialgebras() -> Vec<&'static CatalogEntry> {
    catalog().bialgebras().collect()
}

pub fn hopf() -> Vec<&'static CatalogEntry> {
    catalog().by_tier(Tier::Hopf).collect()
}

pub fn e0(k: usize) -> BasisIndex {
    BasisIndex::even(k)
}

pub fn e1(k: usize) -> BasisIndex {
    BasisIndex::odd(k)
}
