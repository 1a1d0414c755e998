use std::collections::BTreeSet;

use num_traits::Signed;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use superroots::parabolic::{decompose_over_pi, parse_q, phi_pi, triangular, Functional};
use superroots::rootsys::{classify, enumerate_window, is_root, s_set};
use superroots::{AffineFamily, AlgebraParams, RootVector};

fn params() -> impl Strategy<Value = AlgebraParams> {
    (0usize..4, 0usize..=3, 1usize..=3).prop_filter_map("valid", |(f, k, l)| {
        AlgebraParams::new(AffineFamily::ALL[f], k, l).ok()
    })
}

fn vector(k: usize, l: usize) -> impl Strategy<Value = RootVector> {
    (
        prop::collection::vec(-3i64..=3, k),
        prop::collection::vec(-3i64..=3, l),
        -20i64..=20,
    )
        .prop_map(|(eps, del, dc)| RootVector { eps, del, dc })
}

fn params_and_vector() -> impl Strategy<Value = (AlgebraParams, RootVector)> {
    params().prop_flat_map(|p| {
        let (k, l) = (p.k, p.l);
        (Just(p), vector(k, l))
    })
}

proptest! {
    #[test]
    fn root_json_round_trip(v in vector(2, 3)) {
        let s = serde_json::to_string(&v).unwrap();
        prop_assert_eq!(serde_json::from_str::<RootVector>(&s).unwrap(), v);
    }

    #[test]
    fn form_is_symmetric_and_bilinear(a in vector(2, 2), b in vector(2, 2), c in vector(2, 2)) {
        prop_assert_eq!(a.form(&b).unwrap(), b.form(&a).unwrap());
        let lhs = (&a + &b).form(&c).unwrap().0;
        prop_assert_eq!(lhs, a.form(&c).unwrap().0 + b.form(&c).unwrap().0);
        prop_assert!(a.form(&p_delta(2, 2)).unwrap().is_zero());
    }

    #[test]
    fn roots_are_closed_under_negation_and_delta_period((p, v) in params_and_vector()) {
        let member = is_root(&p, &v).unwrap();
        prop_assert_eq!(is_root(&p, &v.negate()).unwrap(), member);
        if !v.is_dot_zero() {
            let inside = s_set(&p, &v.with_dc(0)).map(|s| s.contains(v.dc)).unwrap_or(false);
            prop_assert_eq!(inside, member);
        }
        // Every modulus in the tables divides 4, so a shift by 4δ keeps parity too.
        if member && !v.is_zero() && !v.shift(4).is_zero() {
            prop_assert_eq!(classify(&p, &v).unwrap(), classify(&p, &v.shift(4)).unwrap());
        }
    }

    #[test]
    fn functional_json_round_trip(seed in any::<u64>(), k in 0usize..4, l in 1usize..4) {
        let z = Functional::random(k, l, &mut ChaCha8Rng::seed_from_u64(seed));
        let s = serde_json::to_string(&z).unwrap();
        prop_assert_eq!(serde_json::from_str::<Functional>(&s).unwrap(), z);
    }

    #[test]
    fn rationals_parse(n in -1000i64..1000, d in 1i64..50) {
        let q = parse_q(&format!("{n}/{d}")).unwrap();
        prop_assert_eq!(q * num_rational::BigRational::from_integer(d.into()), num_rational::BigRational::from_integer(n.into()));
    }

    #[test]
    fn triangular_partitions_the_window(seed in any::<u64>(), f in 0usize..4) {
        let p = AlgebraParams::new(AffineFamily::ALL[f], 2, 2).unwrap();
        let z = Functional::random(2, 2, &mut ChaCha8Rng::seed_from_u64(seed));
        let s = enumerate_window(&p, 2);
        let t = triangular(&s, &z);
        prop_assert_eq!(t.positive.len() + t.zero.len() + t.negative.len(), s.len());
        let all: BTreeSet<RootVector> = t.positive.iter().chain(&t.zero).chain(&t.negative).cloned().collect();
        prop_assert_eq!(all, s.iter().cloned().collect::<BTreeSet<_>>());
        prop_assert!(t.positive.iter().all(|v| z.eval(v).is_positive()));
        prop_assert!(t.negative.iter().all(|v| z.eval(v).is_negative()));
    }

    #[test]
    fn decompositions_reproduce_roots(seed in any::<u64>(), f in 0usize..4) {
        let p = AlgebraParams::new(AffineFamily::ALL[f], 2, 2).unwrap();
        let z = Functional::random(2, 2, &mut ChaCha8Rng::seed_from_u64(seed));
        let pi = phi_pi(&p, &z).unwrap();
        for b in &pi.phi_plus {
            let c = decompose_over_pi(b, &pi, &z).unwrap();
            let sum = pi.pi.iter().zip(&c).fold(p.zero(), |acc, (a, &n)| &acc + &a.scale(n as i64));
            prop_assert_eq!(&sum, b);
        }
    }
}

fn p_delta(k: usize, l: usize) -> RootVector {
    RootVector::delta(k, l)
}
