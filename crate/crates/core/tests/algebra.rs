use gpa_core::algebra::{
    bruteforce_is_prime, bruteforce_is_semiprime, matrix_decomposition, structural_is_prime,
    structural_is_semiprime, AlgebraError, Caps,
};
use gpa_core::corpus::{groupoid_corpus, law_rings, random_elem, random_groupoid, suite_convolution_laws};
use gpa_core::{AlgebraHandle, Bisection, ConvolutionAlgebra, ExecMode, FiniteGroup, FiniteGroupoid, RingSpec};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn convolution_is_associative_and_bilinear(seed in any::<u64>(), which in 0usize..8) {
        let ring = law_rings()[which].clone();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = random_groupoid(&mut rng, 4, 10);
        let alg = ConvolutionAlgebra::new(g, ring);
        let (a, b, c) = (random_elem(&mut rng, &alg), random_elem(&mut rng, &alg), random_elem(&mut rng, &alg));
        let ab = a.convolve(&b).unwrap();
        prop_assert_eq!(ab.convolve(&c).unwrap(), a.convolve(&b.convolve(&c).unwrap()).unwrap());
        prop_assert_eq!(
            a.convolve(&b.add(&c).unwrap()).unwrap(),
            ab.add(&a.convolve(&c).unwrap()).unwrap()
        );
        prop_assert_eq!(a.convolve(&alg.unit()).unwrap(), a.clone());
        prop_assert_eq!(alg.unit().convolve(&a).unwrap(), a);
    }

    #[test]
    fn indicators_multiply_as_bisections(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = random_groupoid(&mut rng, 4, 10);
        let alg = ConvolutionAlgebra::new(g.clone(), RingSpec::Integers);
        let (u, v) = (Bisection::random(&g, &mut rng), Bisection::random(&g, &mut rng));
        prop_assert_eq!(
            alg.indicator(&u).convolve(&alg.indicator(&v)).unwrap(),
            alg.indicator(&u.compose(&v, &g))
        );
    }

    #[test]
    fn structural_implications(seed in any::<u64>(), which in 0usize..8) {
        let ring = law_rings()[which].clone();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = random_groupoid(&mut rng, 4, 10);
        let p = structural_is_prime(&g, &ring);
        if p.holds {
            prop_assert!(g.is_topologically_transitive().unwrap());
            prop_assert!(ring.is_integral_domain());
            prop_assert!(structural_is_semiprime(&g, &ring).holds);
        }
    }
}

#[test]
fn convolution_law_suite_has_no_failures() {
    let r = suite_convolution_laws(500, 11);
    assert_eq!(r.instances, 500 * law_rings().len());
    assert!(r.ok(), "{:?}", r.counterexample);
}

#[test]
fn decomposition_respects_composable_pairs() {
    for g in groupoid_corpus(3, 8, 3) {
        for ring in [RingSpec::Rationals, RingSpec::IntegersMod(2)] {
            let d = matrix_decomposition(&g, &ring).unwrap();
            let alg = ConvolutionAlgebra::new(g.clone(), ring.clone());
            for (a, b, ab) in g.composable_pairs() {
                let lhs = d.apply(&alg.delta(ab));
                let rhs = d.multiply(&d.apply(&alg.delta(a)), &d.apply(&alg.delta(b)), &ring);
                assert_eq!(lhs, rhs);
            }
        }
    }
}

#[test]
fn decomposition_summaries() {
    let q = RingSpec::Rationals;
    let s = |g: &FiniteGroupoid| matrix_decomposition(g, &q).unwrap().summary(&q);
    assert_eq!(s(&FiniteGroupoid::pair(2)), "M_2(Q)");
    let c2 = FiniteGroup::cyclic(2);
    let g = FiniteGroupoid::from_components(&[(2, &FiniteGroup::trivial()), (1, &c2)]);
    assert_eq!(s(&g), "M_2(Q) ⊕ Q[C_2]");
}

#[test]
fn oracle_agreement_over_three_residue_rings() {
    let caps = Caps::default();
    let mut capped = 0;
    let corpus = groupoid_corpus(3, 8, 5);
    for g in &corpus {
        let g = g.clone();
        for n in [2, 3, 4] {
            let ring = RingSpec::IntegersMod(n);
            let alg = ConvolutionAlgebra::new(g.clone(), ring.clone());
            let s = structural_is_semiprime(&g, &ring);
            let b = bruteforce_is_semiprime(&g, &ring, &caps).unwrap();
            assert_eq!(s.holds, b.holds);
            s.replay(&alg).unwrap();
            b.replay(&alg).unwrap();
            let s = structural_is_prime(&g, &ring);
            match bruteforce_is_prime(&g, &ring, &caps) {
                Ok(b) => {
                    assert_eq!(s.holds, b.holds);
                    b.replay(&alg).unwrap();
                }
                Err(AlgebraError::CapExceeded { .. }) => capped += 1,
                Err(e) => panic!("{e}"),
            }
            s.replay(&alg).unwrap();
        }
    }
    // (4^7 - 1)^2 pairs exceed the budget, (4^6 - 1)^2 do not
    assert_eq!(capped, corpus.iter().filter(|g| g.arrow_count() >= 7).count());
}

#[test]
fn sequential_and_parallel_oracles_agree() {
    for g in groupoid_corpus(2, 6, 9) {
        let ring = RingSpec::IntegersMod(3);
        let seq = Caps { mode: ExecMode::Sequential, ..Caps::default() };
        let par = Caps { mode: ExecMode::Parallel, ..Caps::default() };
        assert_eq!(bruteforce_is_prime(&g, &ring, &seq).unwrap(), bruteforce_is_prime(&g, &ring, &par).unwrap());
        assert_eq!(
            bruteforce_is_semiprime(&g, &ring, &seq).unwrap(),
            bruteforce_is_semiprime(&g, &ring, &par).unwrap()
        );
    }
}
