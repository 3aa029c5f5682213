//! Acceptance run: one line per criterion, then a single assertion that all
//! of them passed. Every tolerance is exact (zero disagreements); the only
//! numeric bound is the runtime budget of the oracle suites.

use std::path::PathBuf;
use std::process::Command;
use std::time::{Duration, Instant};

use gpa_core::algebra::{bruteforce_is_prime, matrix_decomposition, Caps};
use gpa_core::corpus::{
    groupoid_corpus, law_rings, suite_condition_l, suite_convolution_laws, suite_leavitt_acyclic,
    suite_oracle, suite_semigroup_iso, suite_transitivity, SuiteReport,
};
use gpa_core::graph::{leavitt_prime_verdict, leavitt_primitive_verdict, leavitt_semiprime_verdict};
use gpa_core::group::{group_algebra_is_prime, group_algebra_is_semiprime};
use gpa_core::semigroup::enumerate::inverse_semigroups_up_to;
use gpa_core::semigroup::{munn_prime_verdict, semigroup_algebra_iso, universal_groupoid};
use gpa_core::{
    ConvolutionAlgebra, DirectedGraph, FiniteGroup, FiniteGroupoid, GroupSpec, InverseSemigroup,
    RingSpec,
};
use serde_json::Value;

const ORACLE_BUDGET: Duration = Duration::from_secs(300);
const SEED: u64 = 42;

struct Outcome {
    id: usize,
    name: &'static str,
    pass: bool,
    detail: String,
}

fn suite_outcome(id: usize, name: &'static str, r: &SuiteReport, extra: bool, note: String) -> Outcome {
    Outcome {
        id,
        name,
        pass: r.ok() && r.instances > 0 && extra,
        detail: format!(
            "{} instances, {} passed, {} failed, {} over cap{}{}",
            r.instances,
            r.passed,
            r.failed,
            r.cap_exceeded,
            if note.is_empty() { "" } else { "; " },
            note
        ),
    }
}

fn z(n: u64) -> RingSpec {
    RingSpec::IntegersMod(n)
}

fn criterion_1(corpus: &[FiniteGroupoid]) -> Outcome {
    let t = Instant::now();
    let r = suite_oracle("prime_oracle", corpus, &[z(2), z(3)], false, &Caps::default());
    let el = t.elapsed();
    let full = r.cap_exceeded == 0 && r.instances == 2 * corpus.len();
    suite_outcome(1, "prime oracle agreement", &r, full && el <= ORACLE_BUDGET, format!("{el:.1?}"))
}

fn criterion_2(corpus: &[FiniteGroupoid]) -> Outcome {
    let t = Instant::now();
    let r = suite_oracle("semiprime_oracle", corpus, &[z(2), z(3), z(4)], true, &Caps::default());
    let el = t.elapsed();
    let nonempty: Vec<&FiniteGroupoid> = corpus.iter().filter(|g| g.arrow_count() > 0).collect();
    let z4_fails = nonempty
        .iter()
        .all(|g| !gpa_core::algebra::structural_is_semiprime(g, &z(4)).holds);
    let full = r.cap_exceeded == 0 && r.instances == 3 * corpus.len();
    suite_outcome(
        2,
        "semiprime oracle agreement",
        &r,
        full && z4_fails && el <= ORACLE_BUDGET,
        format!("every nonempty groupoid over Z/4 fails: {z4_fails}; {el:.1?}"),
    )
}

fn criterion_5() -> Outcome {
    let b2 = InverseSemigroup::brandt2();
    let q = RingSpec::Rationals;
    let u = universal_groupoid(&b2, true).unwrap();
    let pair = u.groupoid().object_count() == 2
        && u.groupoid().arrow_count() == 4
        && u.groupoid().is_effective()
        && u.groupoid().orbits().blocks.len() == 1;
    let iso = semigroup_algebra_iso(&b2, &q, true).is_ok();
    let matrix = matrix_decomposition(u.groupoid(), &q).map(|d| d.summary(&q)).unwrap_or_default();
    let munn = munn_prime_verdict(&b2, &q, true).map(|v| v.holds).unwrap_or(false);
    let brute = bruteforce_is_prime(u.groupoid(), &z(2), &Caps::default()).map(|v| v.holds).unwrap_or(false);
    Outcome {
        id: 5,
        name: "Brandt fixture",
        pass: pair && iso && matrix == "M_2(Q)" && munn && brute,
        detail: format!("pair groupoid {pair}, iso {iso}, decomposition {matrix}, Munn prime {munn}, brute force Z/2 prime {brute}"),
    }
}

fn criterion_6() -> Outcome {
    let counts: Vec<usize> =
        (1..=4).map(|m| gpa_core::semigroup::enumerate::inverse_semigroups_of_order(m).len()).collect();
    let total = inverse_semigroups_up_to(4).len();
    let r = suite_semigroup_iso(4);
    suite_outcome(
        6,
        "semigroup algebra isomorphism",
        &r,
        counts == [1, 2, 5, 16] && total == 24,
        format!("inverse semigroups by order {counts:?}"),
    )
}

fn criterion_7() -> Outcome {
    let r = suite_leavitt_acyclic(500, SEED, &Caps::default());
    let checked = r.passed;
    suite_outcome(7, "Leavitt acyclic three-way agreement", &r, r.instances >= 500 && checked > 0, String::new())
}

fn criterion_9() -> Outcome {
    let q = RingSpec::Rationals;
    let graph = |n, e: &[(usize, usize)]| DirectedGraph::new(n, e).unwrap();
    let lp = graph(1, &[(0, 0)]);
    let mut checks = vec![
        ("bare loop prime", leavitt_prime_verdict(&lp, &q).unwrap().holds),
        ("bare loop not primitive", !leavitt_primitive_verdict(&lp, &q).unwrap().holds),
        ("two sinks not prime", !leavitt_prime_verdict(&graph(3, &[(0, 1), (0, 2)]), &q).unwrap().holds),
        ("Z/4 not semiprime", !leavitt_semiprime_verdict(&z(4)).holds),
    ];
    let c2 = GroupSpec::Finite(FiniteGroup::cyclic(2));
    checks.push(("Q[C2] not prime", !group_algebra_is_prime(&c2, &q)));
    checks.push(("Q[C2] semiprime", group_algebra_is_semiprime(&c2, &q)));
    let gpd = FiniteGroupoid::from_group(&FiniteGroup::cyclic(2));
    let v = gpa_core::algebra::bruteforce_is_semiprime(&gpd, &z(2), &Caps::default()).unwrap();
    let alg = ConvolutionAlgebra::new(gpd.clone(), z(2));
    checks.push(("Z/2[C2] not semiprime", !gpa_core::algebra::structural_is_semiprime(&gpd, &z(2)).holds && !v.holds));
    checks.push(("Z/2[C2] witness replays", v.witness.is_some() && v.replay(&alg).is_ok()));
    let failed: Vec<&str> = checks.iter().filter(|c| !c.1).map(|c| c.0).collect();
    Outcome {
        id: 9,
        name: "fixtures",
        pass: failed.is_empty(),
        detail: format!("{} checks, failed: {failed:?}", checks.len()),
    }
}

fn without_timing(mut v: Value) -> Value {
    v.as_object_mut().unwrap().remove("timing");
    v
}

fn criterion_10() -> Outcome {
    let run = || {
        let out = Command::new(env!("CARGO_BIN_EXE_gpa"))
            .args(["corpus", "--seed", "42"])
            .output()
            .expect("gpa runs");
        let v: Value = serde_json::from_slice(&out.stdout).expect("JSON report");
        (out.status.code(), without_timing(v))
    };
    let (c1, a) = run();
    let (c2, b) = run();
    let same = a == b;
    Outcome {
        id: 10,
        name: "determinism",
        pass: same && c1 == Some(0) && c2 == Some(0),
        detail: format!("identical reports {same}, exit codes {c1:?} {c2:?}"),
    }
}

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures").join(name)
}

#[test]
fn acceptance() {
    let corpus = groupoid_corpus(3, 8, SEED);
    let r3 = suite_transitivity(&corpus);
    let r4 = suite_convolution_laws(500, SEED);
    let r8 = suite_condition_l(200, SEED);
    let outcomes = vec![
        criterion_1(&corpus),
        criterion_2(&corpus),
        suite_outcome(3, "transitivity equivalence", &r3, r3.instances == corpus.len(), String::new()),
        suite_outcome(
            4,
            "convolution laws",
            &r4,
            r4.instances == 500 * law_rings().len(),
            format!("{} rings", law_rings().len()),
        ),
        criterion_5(),
        criterion_6(),
        criterion_7(),
        suite_outcome(8, "condition (L) vs cycle enumeration", &r8, r8.instances == 200, String::new()),
        criterion_9(),
        criterion_10(),
    ];
    for o in &outcomes {
        println!("criterion {:>2} {:<38} {}  {}", o.id, o.name, if o.pass { "PASS" } else { "FAIL" }, o.detail);
    }
    assert!(outcomes.iter().all(|o| o.pass));
}

#[test]
fn cli_examples() {
    let gpa = |args: &[&str]| {
        let out = Command::new(env!("CARGO_BIN_EXE_gpa")).args(args).output().unwrap();
        let v = serde_json::from_slice::<Value>(&out.stdout).unwrap_or(Value::Null);
        (out.status.code().unwrap(), v)
    };
    let p = |n: &str| fixture(n).display().to_string();

    let (c, v) = gpa(&["check-groupoid", &p("pair_groupoid.json"), "--ring", "Q"]);
    assert_eq!((c, &v["verdicts"]["prime"]["prime"]), (0, &Value::Bool(true)));

    let (c, v) = gpa(&["check-groupoid", &p("two_orbits.json"), "--ring", "Q", "--expect", "prime"]);
    assert_eq!(c, 1);
    assert!(v["verdicts"]["prime"]["reason"].as_str().unwrap().contains("not transitive"));

    let (c, v) = gpa(&["check-groupoid", &p("cyclic2_groupoid.json"), "--ring", "Z/2", "--oracle"]);
    assert_eq!(c, 0);
    assert_eq!(v["verdicts"]["semiprime"]["semiprime"], Value::Bool(false));
    assert_eq!(v["oracle"]["semiprime"]["agreement"], "ok");
    let terms: Vec<u64> = v["verdicts"]["semiprime"]["witness"]["a"]
        .as_array()
        .unwrap()
        .iter()
        .map(|t| t["arrow"].as_u64().unwrap())
        .collect();
    assert_eq!(terms, vec![0, 1]);

    let (c, v) = gpa(&["check-graph", &p("bare_loop.json"), "--ring", "Q", "--depth", "3"]);
    assert_eq!(c, 0);
    assert_eq!(v["verdicts"]["prime"]["prime"], Value::Bool(true));
    assert_eq!(v["verdicts"]["primitive"]["primitive"], Value::Bool(false));

    let (_, v) = gpa(&["check-graph", &p("two_sinks.json"), "--ring", "Q"]);
    assert_eq!(v["verdicts"]["prime"]["prime"], Value::Bool(false));
    assert_eq!(v["mt3"]["witness"], serde_json::json!([1, 2]));

    let (c, v) = gpa(&["check-graph", &p("diamond.json"), "--ring", "Z/2", "--oracle"]);
    assert_eq!(c, 0);
    assert_eq!(v["graph_groupoid"]["agreement"], "ok");

    let (c, v) = gpa(&["check-semigroup", &p("brandt2.json"), "--ring", "Q", "--contracted", "--iso"]);
    assert_eq!(c, 0);
    assert_eq!(v["verdicts"]["prime"]["prime"], Value::Bool(true));
    assert_eq!(v["iso"]["verified"], Value::Bool(true));

    let (_, v) = gpa(&["check-semigroup", &p("chain2.json"), "--ring", "Q"]);
    assert_eq!(v["verdicts"]["prime"]["prime"], Value::Bool(false));

    let (_, v) = gpa(&["check-semigroup", &p("cyclic2_semigroup.json"), "--ring", "Z/2", "--oracle"]);
    assert_eq!(v["verdicts"]["semiprime"]["semiprime"], Value::Bool(false));
    assert_eq!(v["oracle"]["semiprime"]["agreement"], "ok");

    let (c, _) = gpa(&["check-groupoid", &p("brandt2.json")]);
    assert_eq!(c, 2);
    let (c, _) = gpa(&["check-semigroup", &p("cyclic2_semigroup.json"), "--contracted"]);
    assert_eq!(c, 2);
    let (c, _) = gpa(&["corpus", "--max-arrows", "4", "--triples", "5", "--acyclic-graphs", "5", "--graphs", "5"]);
    assert_eq!(c, 0);
}

#[test]
fn canonical_dumps_round_trip() {
    let dir = std::env::temp_dir().join(format!("gpa-canon-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    for (cmd, file) in [
        ("check-groupoid", "cyclic2_groupoid.json"),
        ("check-groupoid", "pair_groupoid.json"),
        ("check-graph", "diamond.json"),
        ("check-semigroup", "brandt2.json"),
    ] {
        let dump = |path: &PathBuf| {
            let out = Command::new(env!("CARGO_BIN_EXE_gpa"))
                .args([cmd, &path.display().to_string(), "--dump-canonical"])
                .output()
                .unwrap();
            assert!(out.status.success());
            out.stdout
        };
        let first = dump(&fixture(file));
        let copy = dir.join(file);
        std::fs::write(&copy, &first).unwrap();
        assert_eq!(dump(&copy), first, "{file}");
    }
    std::fs::remove_dir_all(&dir).ok();
}
