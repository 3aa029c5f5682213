use gpa_core::corpus::{random_acyclic_graph, random_graphs, suite_condition_l, suite_graph_transitivity, suite_leavitt_acyclic};
use gpa_core::algebra::Caps;
use gpa_core::graph::{
    acyclic_graph_groupoid, boundary_paths, leavitt_prime_verdict, leavitt_primitive_verdict,
    leavitt_relations_check, leavitt_semiprime_verdict, transitivity_crosscheck, GraphError, PathKind,
    Periodicity,
};
use gpa_core::{DirectedGraph, RingSpec};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn g(n: usize, e: &[(usize, usize)]) -> DirectedGraph {
    DirectedGraph::new(n, e).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn condition_l_matches_cycle_enumeration(seed in any::<u64>()) {
        let graph = &random_graphs(1, seed, 8, 16)[0];
        prop_assert_eq!(graph.condition_l(), graph.condition_l_by_enumeration());
        if let Some(c) = graph.cycle_without_exit() {
            let mut c = c;
            c.sort();
            let found = graph.simple_cycles().into_iter().any(|mut d| {
                d.sort();
                d == c
            });
            prop_assert!(found);
        }
    }

    #[test]
    fn acyclic_structure(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let graph = random_acyclic_graph(&mut rng, 6);
        let gg = acyclic_graph_groupoid(&graph).unwrap();
        prop_assert_eq!(gg.groupoid.orbits().blocks.len(), graph.sinks().len());
        prop_assert!(gg.groupoid.is_effective());
        let sample = boundary_paths(&graph, graph.longest_path_length().unwrap());
        prop_assert_eq!(sample.prefixes().count(), 0);
        prop_assert_eq!(sample.complete().cloned().collect::<Vec<_>>(), gg.objects.clone());
        prop_assert!(gg.objects.iter().all(|p| p.is_valid(&graph) && graph.is_sink(p.end(&graph))));
        prop_assert!(leavitt_relations_check(&graph, &RingSpec::IntegersMod(2)).unwrap());
        prop_assert!(leavitt_relations_check(&graph, &RingSpec::Rationals).unwrap());
    }
}

#[test]
fn suites_pass() {
    for r in [
        suite_condition_l(200, 1),
        suite_graph_transitivity(200, 2),
        suite_leavitt_acyclic(500, 3, &Caps::default()),
    ] {
        assert!(r.ok(), "{}: {:?}", r.name, r.counterexample);
    }
}

#[test]
fn fixtures() {
    let q = RingSpec::Rationals;
    let lp = g(1, &[(0, 0)]);
    assert!(leavitt_prime_verdict(&lp, &q).unwrap().holds);
    assert!(!leavitt_primitive_verdict(&lp, &q).unwrap().holds);
    assert!(!leavitt_prime_verdict(&g(3, &[(0, 1), (0, 2)]), &q).unwrap().holds);
    assert!(!leavitt_semiprime_verdict(&RingSpec::IntegersMod(4)).holds);
    // two loops at one vertex: condition (L) holds and L(E) is primitive
    let two_loops = g(1, &[(0, 0), (0, 0)]);
    assert!(two_loops.condition_l());
    assert!(leavitt_primitive_verdict(&two_loops, &q).unwrap().holds);
}

#[test]
fn bare_loop_sample_is_one_periodic_prefix() {
    let s = boundary_paths(&g(1, &[(0, 0)]), 3);
    assert_eq!(s.paths.len(), 1);
    assert_eq!(s.paths[0].path.to_string(), "e0·e0·e0");
    assert_eq!(s.paths[0].kind, PathKind::Prefix);
    assert_eq!(s.paths[0].periodicity, Periodicity::EventuallyPeriodic);
}

#[test]
fn diamond_boundary() {
    let d = g(4, &[(0, 1), (0, 2), (1, 3), (2, 3)]);
    let s = boundary_paths(&d, 3);
    assert_eq!(s.complete().count(), 5);
    assert!(s.paths.iter().all(|p| p.periodicity == Periodicity::Finite));
    let gg = acyclic_graph_groupoid(&d).unwrap();
    assert_eq!(gg.groupoid.arrow_count(), 25);
}

#[test]
fn crosscheck_and_errors() {
    let two_sinks = g(3, &[(0, 1), (0, 2)]);
    let c = transitivity_crosscheck(&two_sinks, 2).unwrap();
    assert!(!c.holds && c.witness.is_some());
    assert!(matches!(acyclic_graph_groupoid(&g(1, &[(0, 0)])), Err(GraphError::NotAcyclic(_))));
    assert!(DirectedGraph::new(2, &[(0, 5)]).is_err());
    let csp = g(3, &[(0, 1), (0, 2)]).has_csp();
    assert_eq!(csp.minimal, vec![1, 2]);
}
