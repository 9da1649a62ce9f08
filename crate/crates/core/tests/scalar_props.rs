mod common;

use common::{config, nonzero_scalar, scalar};
use proptest::prelude::*;
use superhopf::scalar::{solve_univariate, UniPoly};
use superhopf::GaussScalar;

proptest! {
    #![proptest_config(config(256, 0x5ca1a7))]

    #[test]
    fn addition_is_associative(a in scalar(), b in scalar(), c in scalar()) {
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
    }

    #[test]
    fn multiplication_distributes(a in scalar(), b in scalar(), c in scalar()) {
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
    }

    #[test]
    fn nonzero_scalars_invert(a in nonzero_scalar()) {
        prop_assert!((&a * &a.inv().unwrap()).is_one());
    }

    #[test]
    fn multiplication_commutes_and_associates(a in scalar(), b in scalar(), c in scalar()) {
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
    }

    #[test]
    fn display_round_trips(a in scalar()) {
        prop_assert_eq!(a.to_string().parse::<GaussScalar>().unwrap(), a);
    }

    #[test]
    fn square_roots_square_back(a in scalar()) {
        let s = &a * &a;
        let roots = s.sqrt();
        prop_assert!(!roots.is_empty());
        for r in &roots {
            prop_assert_eq!(r * r, s.clone());
            prop_assert!(roots.contains(&-r.clone()));
        }
    }

    /// Products of linear factors with random Gaussian-rational roots, degree ≤ 4.
    #[test]
    fn returned_roots_are_exact(want in proptest::collection::vec(scalar(), 1..=4), lead in nonzero_scalar()) {
        let mut coeffs = vec![lead];
        for r in &want {
            let mut next = vec![GaussScalar::zero(); coeffs.len() + 1];
            for (k, a) in coeffs.iter().enumerate() {
                next[k + 1] = &next[k + 1] + a;
                next[k] = &next[k] - &(a * r);
            }
            coeffs = next;
        }
        let p = UniPoly::new(coeffs);
        let found = solve_univariate(&p).unwrap();
        prop_assert!(found.unresolved.is_empty());
        for r in &found.roots {
            prop_assert!(p.eval(r).is_zero());
        }
        for r in &want {
            prop_assert!(found.roots.contains(r));
        }
    }

    #[test]
    fn roots_of_arbitrary_quartics_vanish(c in proptest::collection::vec(-5i64..=5, 2..=5)) {
        let p = UniPoly::from_ints(&c);
        prop_assume!(!p.is_zero() && p.degree().unwrap_or(0) >= 1);
        let found = solve_univariate(&p).unwrap();
        for r in &found.roots {
            prop_assert!(p.eval(r).is_zero());
        }
    }
}

#[test]
fn sqrt_of_minus_one_is_plus_minus_i() {
    let mut r = GaussScalar::from_int(-1).sqrt();
    r.sort();
    let mut want = vec![GaussScalar::i(), -GaussScalar::i()];
    want.sort();
    assert_eq!(r, want);
}
