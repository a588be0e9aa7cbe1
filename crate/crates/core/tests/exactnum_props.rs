use mvforge_core::exactnum::{den, rat};
use mvforge_core::{BigInt, ContinuedFraction, QuadExt, RatPoint, Rational};
use num_integer::Integer;
use num_traits::{One, Signed};
use proptest::prelude::*;

fn quad(a: i64, b: i64, c: i64, d: u64) -> QuadExt {
    QuadExt::new(rat(a, c), rat(b, c), d).unwrap()
}

proptest! {
    #[test]
    fn sign_agrees_with_floats(a in -1000i64..1000, b in -1000i64..1000, c in 1i64..50, d in prop::sample::select(vec![2u64, 3, 5, 7])) {
        let x = quad(a, b, c, d);
        let f = (a as f64 + b as f64 * (d as f64).sqrt()) / c as f64;
        if a == 0 && b == 0 {
            prop_assert_eq!(x.sign(), 0);
        } else {
            // an irrational quadratic never vanishes, and these are far from 0 in f64
            prop_assert_ne!(x.sign(), 0);
            prop_assert_eq!(x.sign() > 0, f > 0.0);
        }
    }

    #[test]
    fn field_operations(a in -50i64..50, b in -50i64..50, c in -50i64..50, e in -50i64..50) {
        let (x, y) = (quad(a, b, 1, 5), quad(c, e, 1, 5));
        prop_assert_eq!(&(&x * &y) - &(&y * &x), QuadExt::zero_in(5));
        prop_assert_eq!(x.norm(), rat(a * a - 5 * b * b, 1));
        if let Some(inv) = x.inverse() {
            prop_assert_eq!(&x * &inv, QuadExt::one_in(5));
        } else {
            prop_assert!(x.is_zero());
        }
    }

    #[test]
    fn convergents_alternate_around_the_value(a in 1i64..40, b in 1i64..20, c in 2i64..60, d in prop::sample::select(vec![2u64, 3, 5, 6, 7])) {
        let x = quad(a, b, c, d);
        let cf = ContinuedFraction::from_quad(&x);
        prop_assert!(cf.is_periodic());
        let conv = cf.convergents(12).unwrap();
        for (i, r) in conv.iter().enumerate() {
            let side = x.cmp_rational(r);
            if i % 2 == 0 {
                prop_assert!(side.is_gt(), "convergent {} = {} not below {}", i, r, x);
            } else {
                prop_assert!(side.is_lt(), "convergent {} = {} not above {}", i, r, x);
            }
        }
        for w in conv.windows(2) {
            let det = w[0].numer() * w[1].denom() - w[1].numer() * w[0].denom();
            prop_assert_eq!(det.abs(), BigInt::one());
        }
    }

    #[test]
    fn finite_expansions_round_trip(p in -200i64..200, q in 1i64..200) {
        let r = rat(p, q);
        let cf = ContinuedFraction::from_rational(&r);
        let n = cf.head().len();
        let conv = cf.convergents(n).unwrap();
        prop_assert_eq!(conv.last().unwrap(), &r);
    }

    #[test]
    fn den_is_the_least_common_denominator(coords in prop::collection::vec((-30i64..30, 1i64..30), 1..5)) {
        let p = RatPoint::from_pairs(&coords);
        let lcm = coords.iter().fold(1i64, |acc, &(a, b)| acc.lcm(&(b / a.gcd(&b))));
        prop_assert_eq!(den(&p), BigInt::from(lcm));
        let scaled: Vec<Rational> = p.coords().iter().map(|x| x * Rational::from_integer(den(&p))).collect();
        prop_assert!(scaled.iter().all(Rational::is_integer));
    }
}
