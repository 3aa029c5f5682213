use gpa_core::corpus::{law_rings, random_ring_elem};
use gpa_core::{RingElem, RingSpec};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn rings() -> Vec<RingSpec> {
    let mut r = law_rings();
    r.push(RingSpec::IntegersMod(30));
    r.push(RingSpec::Laurent(Box::new(RingSpec::Integers)));
    r.push(RingSpec::Laurent(Box::new(RingSpec::IntegersMod(6))));
    r
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn ring_axioms(seed in any::<u64>(), which in 0usize..11) {
        let ring = &rings()[which];
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (a, b, c) = (
            random_ring_elem(&mut rng, ring),
            random_ring_elem(&mut rng, ring),
            random_ring_elem(&mut rng, ring),
        );
        let add = |x: &RingElem, y: &RingElem| -> RingElem { ring.add(x, y).unwrap() };
        let mul = |x: &RingElem, y: &RingElem| -> RingElem { ring.mul(x, y).unwrap() };
        prop_assert_eq!(mul(&mul(&a, &b), &c), mul(&a, &mul(&b, &c)));
        prop_assert_eq!(add(&add(&a, &b), &c), add(&a, &add(&b, &c)));
        prop_assert_eq!(mul(&a, &add(&b, &c)), add(&mul(&a, &b), &mul(&a, &c)));
        prop_assert_eq!(mul(&add(&a, &b), &c), add(&mul(&a, &c), &mul(&b, &c)));
        prop_assert_eq!(mul(&a, &b), mul(&b, &a));
        prop_assert_eq!(add(&a, &b), add(&b, &a));
        prop_assert_eq!(add(&a, &ring.neg(&a).unwrap()), ring.zero());
        prop_assert_eq!(mul(&a, &ring.one()), a.clone());
        prop_assert_eq!(ring.sub(&add(&a, &b), &b).unwrap(), a);
    }
}

#[test]
fn domain_implies_reduced() {
    for ring in rings() {
        assert!(!ring.is_integral_domain() || ring.is_reduced(), "{ring}");
    }
}

#[test]
fn residue_rings_match_exhaustive_search() {
    for n in 2u64..=30 {
        let ring = RingSpec::IntegersMod(n);
        let zero_divisor = (1..n).any(|a| (1..n).any(|b| a * b % n == 0));
        let nilpotent = (1..n).any(|a| {
            let mut p = a;
            (0..n).any(|_| {
                p = p * a % n;
                p == 0
            })
        });
        assert_eq!(ring.is_integral_domain(), !zero_divisor, "Z/{n}");
        assert_eq!(ring.is_reduced(), !nilpotent, "Z/{n}");
        assert_eq!(ring.is_field(), !zero_divisor, "Z/{n}");
        for m in 1..2 * n {
            let divides = (1..n).any(|b| m % n * b % n == 0);
            assert_eq!(ring.is_zero_divisor(m), divides, "{m} in Z/{n}");
        }
        if let Some(r) = ring.square_zero_element() {
            assert_eq!(ring.mul(&r, &r).unwrap(), ring.zero());
            assert!(!r.is_zero());
        }
    }
}

#[test]
fn ring_text_round_trips() {
    for ring in rings() {
        assert_eq!(ring.to_string().parse::<RingSpec>().unwrap(), ring);
    }
    for bad in ["Z/1", "Z/0", "R", "Laurent(", "Z/x"] {
        assert!(bad.parse::<RingSpec>().is_err(), "{bad}");
    }
}
