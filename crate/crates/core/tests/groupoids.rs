use std::collections::BTreeSet;

use gpa_core::corpus::{groupoid_corpus, random_groupoid};
use gpa_core::{Bisection, FiniteGroupoid};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_subset<R: Rng>(rng: &mut R, n: usize) -> BTreeSet<usize> {
    (0..n).filter(|_| rng.gen_bool(0.4)).collect()
}

/// d(r⁻¹(U)), computed straight from the arrow lists.
fn sources_of_arrows_into(g: &FiniteGroupoid, u: &BTreeSet<usize>) -> BTreeSet<usize> {
    (0..g.arrow_count()).filter(|&a| u.contains(&g.dst(a))).map(|a| g.src(a)).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn saturation_laws(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = random_groupoid(&mut rng, 4, 10);
        let n = g.object_count();
        let u = random_subset(&mut rng, n);
        let v: BTreeSet<usize> = u.union(&random_subset(&mut rng, n)).copied().collect();
        let su = g.invariant_saturation(&u);
        prop_assert_eq!(g.invariant_saturation(&su), su.clone());
        prop_assert!(g.invariant_saturation(&v).is_superset(&su));
        prop_assert_eq!(&sources_of_arrows_into(&g, &u), &su);
        prop_assert_eq!(g.saturation_by_range(&u), su);
    }

    #[test]
    fn invariant_sets_are_unions_of_orbits(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = random_groupoid(&mut rng, 4, 10);
        let orbits = g.orbits();
        let u = random_subset(&mut rng, g.object_count());
        let union_of_blocks = orbits.blocks.iter().all(|b| b.iter().all(|x| u.contains(x)) || b.iter().all(|x| !u.contains(x)));
        prop_assert_eq!(g.is_invariant(&u), union_of_blocks);
    }

    #[test]
    fn effective_iff_trivial_isotropy(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = random_groupoid(&mut rng, 4, 10);
        let trivial = (0..g.object_count()).all(|x| g.isotropy_group(x).group.order() == 1);
        prop_assert_eq!(g.is_effective(), trivial);
    }

    #[test]
    fn transitivity_conditions_agree(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = random_groupoid(&mut rng, 4, 10);
        let t = g.is_topologically_transitive().unwrap();
        prop_assert_eq!(t, g.orbits().blocks.len() == 1);
    }

    #[test]
    fn bisections_form_an_inverse_monoid(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = random_groupoid(&mut rng, 4, 10);
        let (u, v, w) = (Bisection::random(&g, &mut rng), Bisection::random(&g, &mut rng), Bisection::random(&g, &mut rng));
        prop_assert_eq!(u.compose(&v.compose(&w, &g), &g), u.compose(&v, &g).compose(&w, &g));
        prop_assert_eq!(u.compose(&u.star(&g), &g).compose(&u, &g), u.clone());
        let one = Bisection::units(&g);
        prop_assert_eq!(one.compose(&u, &g), u.clone());
        prop_assert_eq!(u.compose(&one, &g), u.clone());
        let reparsed = Bisection::new(&g, u.arrows().iter().copied()).unwrap();
        prop_assert_eq!(reparsed, u);
    }

    #[test]
    fn json_round_trip(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = random_groupoid(&mut rng, 4, 10);
        let text = serde_json::to_string(&g.to_data()).unwrap();
        let back = FiniteGroupoid::validate(&serde_json::from_str(&text).unwrap()).unwrap();
        prop_assert_eq!(back, g);
    }
}

#[test]
fn every_corpus_member_validates_and_is_distinct_up_to_shape() {
    let corpus = groupoid_corpus(3, 8, 7);
    let mut shapes = BTreeSet::new();
    for g in &corpus {
        let mut sig: Vec<(usize, usize)> = g
            .orbits()
            .blocks
            .iter()
            .map(|b| (b.len(), g.isotropy_group(b[0]).group.order()))
            .collect();
        sig.sort();
        shapes.insert((sig, g.arrow_count()));
        FiniteGroupoid::validate(&g.to_data()).unwrap();
    }
    // order 4, 6 and 8 each contribute non-isomorphic groups of equal order
    assert!(shapes.len() < corpus.len());
    assert_eq!(corpus.len(), 66);
}

#[test]
fn validation_names_the_failing_axiom() {
    let mut d = FiniteGroupoid::pair(2).to_data();
    d.compose[1][2] = Some(1);
    let err = FiniteGroupoid::validate(&d).unwrap_err().to_string();
    assert!(!err.is_empty());
    let mut d = FiniteGroupoid::pair(2).to_data();
    d.inverses = Some(vec![0, 1, 2, 3]);
    assert!(FiniteGroupoid::validate(&d).unwrap_err().to_string().contains("inverse"));
}
