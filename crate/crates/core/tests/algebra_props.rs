use mvforge_core::finitemv::{znk_surjective_implies_injective, Chang, ChangElement};
use mvforge_core::gammagerms::{
    chang_to_germ, germ_at_origin_2d, germ_at_zero_1d, Gamma, Germ1DAlgebra, Germ2DAlgebra, ZLexZ,
};
use mvforge_core::mcnaughton::{from_term, random_term};
use mvforge_core::{BigInt, McNFunction, MvAlgebra};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn chang_element() -> impl Strategy<Value = ChangElement> {
    prop_oneof![(0u32..=20).prop_map(ChangElement::infinitesimal), (1u32..=20).prop_map(ChangElement::co_infinitesimal),]
}

fn random_function(seed: u64, n: usize) -> McNFunction {
    from_term(&random_term(&mut ChaCha8Rng::seed_from_u64(seed), n, 3), n).unwrap()
}

fn small_matrix() -> impl Strategy<Value = Vec<Vec<i64>>> {
    (1usize..=4).prop_flat_map(|k| prop::collection::vec(prop::collection::vec(-4i64..=4, k), k))
}

proptest! {
    #[test]
    fn chang_satisfies_the_axioms(x in chang_element(), y in chang_element(), z in chang_element()) {
        let c = Chang;
        prop_assert!(c.oplus(&x, &c.one()) == c.one());
        prop_assert!(c.oplus(&x, &c.zero()) == x);
        prop_assert!(c.neg(&c.neg(&x)) == x);
        prop_assert!(c.oplus(&x, &y) == c.oplus(&y, &x));
        prop_assert!(c.oplus(&c.oplus(&x, &y), &z) == c.oplus(&x, &c.oplus(&y, &z)));
        let lhs = c.oplus(&c.neg(&c.oplus(&c.neg(&x), &y)), &y);
        let rhs = c.oplus(&c.neg(&c.oplus(&c.neg(&y), &x)), &x);
        prop_assert!(lhs == rhs);
    }

    #[test]
    fn chang_embeds_in_gamma_of_lex(x in chang_element(), y in chang_element()) {
        let (c, g) = (Chang, Gamma(ZLexZ));
        let lift = |e: &ChangElement| (BigInt::from(e.m()), BigInt::from(e.k()));
        prop_assert_eq!(lift(&c.oplus(&x, &y)), g.oplus(&lift(&x), &lift(&y)));
        prop_assert_eq!(lift(&c.neg(&x)), g.neg(&lift(&x)));
    }

    #[test]
    fn chang_to_germ_is_a_homomorphism(x in chang_element(), y in chang_element()) {
        let g = Germ1DAlgebra;
        prop_assert_eq!(chang_to_germ(&Chang.oplus(&x, &y)), g.oplus(&chang_to_germ(&x), &chang_to_germ(&y)));
        prop_assert_eq!(chang_to_germ(&Chang.neg(&x)), g.neg(&chang_to_germ(&x)));
    }

    #[test]
    fn smith_surjective_implies_injective(m in small_matrix()) {
        let big: Vec<Vec<BigInt>> = m.iter().map(|r| r.iter().map(|&v| BigInt::from(v)).collect()).collect();
        let r = znk_surjective_implies_injective(&big).unwrap();
        prop_assert!(r.implication_holds);
        prop_assert!(!r.surjective || r.injective);
        prop_assert_eq!(r.surjective, r.invariant_factors.iter().all(|f| *f == BigInt::from(1)));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn germ_at_zero_is_a_homomorphism(s in any::<u64>(), t in any::<u64>()) {
        let (f, g) = (random_function(s, 1), random_function(t, 1));
        let alg = Germ1DAlgebra;
        let (gf, gg) = (germ_at_zero_1d(&f).unwrap(), germ_at_zero_1d(&g).unwrap());
        prop_assert_eq!(germ_at_zero_1d(&f.mv_plus(&g).unwrap()).unwrap(), alg.oplus(&gf, &gg));
        prop_assert_eq!(germ_at_zero_1d(&f.mv_neg()).unwrap(), alg.neg(&gf));
    }

    #[test]
    fn germ_at_origin_is_a_homomorphism(s in any::<u64>(), t in any::<u64>()) {
        let (f, g) = (random_function(s, 2), random_function(t, 2));
        let alg = Germ2DAlgebra;
        let (gf, gg) = (germ_at_origin_2d(&f).unwrap(), germ_at_origin_2d(&g).unwrap());
        prop_assert!(alg.equal(&germ_at_origin_2d(&f.mv_plus(&g).unwrap()).unwrap(), &alg.oplus(&gf, &gg)));
        prop_assert!(alg.equal(&germ_at_origin_2d(&f.mv_neg()).unwrap(), &alg.neg(&gf)));
    }
}
