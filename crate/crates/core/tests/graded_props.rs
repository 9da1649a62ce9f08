mod common;

use common::{config, scalar, tensor2, vector};
use proptest::prelude::*;
use superhopf::graded::{apply_tensor_maps, superflip, LinearMap};
use superhopf::{GradedVector, Superspace};

const SPACE: Superspace = Superspace { n0: 2, n1: 2 };

fn even_map() -> impl Strategy<Value = LinearMap> {
    let s = SPACE;
    (proptest::collection::vec(vector(s), s.dim())).prop_map(move |cols| {
        let images: Vec<GradedVector> = s
            .basis()
            .into_iter()
            .zip(cols)
            .map(|(b, v)| {
                let mut w = GradedVector::zero(s);
                for (k, c) in v.terms() {
                    if k.parity == b.parity {
                        w.add_term(k, c.clone());
                    }
                }
                w
            })
            .collect();
        LinearMap::new(s, s, 0, images).unwrap()
    })
}

proptest! {
    #![proptest_config(config(128, 0x6ead))]

    #[test]
    fn superflip_is_an_involution(t in tensor2(SPACE)) {
        prop_assert_eq!(superflip(&superflip(&t).unwrap()).unwrap(), t);
    }

    #[test]
    fn superflip_is_linear(s in scalar(), t in tensor2(SPACE), u in tensor2(SPACE)) {
        let mut lhs_in = u.clone();
        lhs_in.add_scaled(&t, &s);
        let mut rhs = superflip(&u).unwrap();
        rhs.add_scaled(&superflip(&t).unwrap(), &s);
        prop_assert_eq!(superflip(&lhs_in).unwrap(), rhs);
    }

    #[test]
    fn tensor_maps_respect_composition(f in even_map(), f2 in even_map(), g in even_map(), g2 in even_map(), t in tensor2(SPACE)) {
        let composed = apply_tensor_maps(&f.compose(&f2).unwrap(), &g.compose(&g2).unwrap(), &t).unwrap();
        let stepwise = apply_tensor_maps(&f, &g, &apply_tensor_maps(&f2, &g2, &t).unwrap()).unwrap();
        prop_assert_eq!(composed, stepwise);
    }
}
