//! `gpa`: load groupoids, graphs and inverse semigroups from JSON, decide
//! primeness and semiprimeness of their algebras, and print JSON reports
//! whose witnesses have been replayed against the input.
//!
//! Exit codes: 0 success, 1 an `--expect` was violated, 2 the input failed
//! to parse or validate, 3 two independent computations disagreed.

use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;
use std::time::Instant;

use anyhow::{anyhow, Context};
use clap::{Args, Parser, Subcommand};
use gpa_core::algebra::{
    bruteforce_is_prime, bruteforce_is_semiprime, matrix_decomposition, structural_is_prime,
    structural_is_semiprime, Caps, DEFAULT_MAX_PAIRS,
};
use gpa_core::corpus::{run_corpus, CorpusConfig};
use gpa_core::graph::{
    acyclic_graph_groupoid, boundary_paths, leavitt_prime_verdict, leavitt_primitive_verdict,
    leavitt_semiprime_verdict, replay_graph_obstruction, transitivity_crosscheck,
};
use gpa_core::groupoid::GroupoidData;
use gpa_core::semigroup::{
    munn_prime_verdict, munn_semiprime_verdict, replay_obstruction, semigroup_algebra_iso,
    universal_groupoid, SemigroupData,
};
use gpa_core::{
    AlgebraError, ConvolutionAlgebra, DirectedGraph, ExecMode, FiniteGroupoid, InverseSemigroup,
    PrimenessVerdict, RingSpec,
};
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

#[derive(Parser)]
#[command(name = "gpa", version, about = "Primeness workbench for groupoid, Leavitt and inverse semigroup algebras")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Orbits, isotropy, transitivity and prime/semiprime verdicts of a groupoid algebra.
    CheckGroupoid(CheckArgs),
    /// Graph conditions and Leavitt path algebra verdicts.
    CheckGraph(CheckArgs),
    /// Idempotents, bisimplicity, maximal subgroups and semigroup algebra verdicts.
    CheckSemigroup(CheckArgs),
    /// Run every agreement suite over generated corpora.
    Corpus(CorpusArgs),
}

#[derive(Args)]
struct CheckArgs {
    /// JSON input file.
    path: PathBuf,
    /// Coefficient ring: Z, Q, Z/<n> or Laurent(<ring>).
    #[arg(long, default_value = "Q")]
    ring: String,
    /// Also run the brute-force oracle (rings Z/n only) and report agreement.
    #[arg(long)]
    oracle: bool,
    /// Use the contracted semigroup algebra (the zero is identified with 0).
    #[arg(long)]
    contracted: bool,
    /// Construct and verify the semigroup algebra isomorphism.
    #[arg(long)]
    iso: bool,
    /// Path depth for cylinder transitivity and boundary path sampling.
    #[arg(long)]
    depth: Option<usize>,
    /// Required verdicts, e.g. `prime` or `not-semiprime`; repeatable.
    #[arg(long)]
    expect: Vec<String>,
    /// Print the canonical JSON form of the input and exit.
    #[arg(long)]
    dump_canonical: bool,
    /// Brute-force budget in candidate pairs (prime) or elements (semiprime).
    #[arg(long, default_value_t = DEFAULT_MAX_PAIRS)]
    cap: u128,
    /// Disable data parallelism in the brute-force oracle.
    #[arg(long)]
    sequential: bool,
}

#[derive(Args)]
struct CorpusArgs {
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 3)]
    max_objects: usize,
    #[arg(long, default_value_t = 8)]
    max_arrows: usize,
    /// Random samples per ring for the convolution laws.
    #[arg(long, default_value_t = 500)]
    triples: usize,
    /// Random acyclic graphs for the Leavitt agreement suite.
    #[arg(long, default_value_t = 500)]
    acyclic_graphs: usize,
    /// Random graphs for the condition (L) and transitivity suites.
    #[arg(long, default_value_t = 200)]
    graphs: usize,
    #[arg(long, default_value_t = 4)]
    max_semigroup_order: usize,
    #[arg(long, default_value_t = DEFAULT_MAX_PAIRS)]
    cap: u128,
    #[arg(long)]
    sequential: bool,
}

enum Failure {
    Expectation(String),
    Input(anyhow::Error),
    Disagreement(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Expectation(_) => 1,
            Failure::Input(_) => 2,
            Failure::Disagreement(_) => 3,
        }
    }
}

impl From<anyhow::Error> for Failure {
    fn from(e: anyhow::Error) -> Self {
        Failure::Input(e)
    }
}

type Outcome = Result<(), Failure>;

fn mode(sequential: bool) -> ExecMode {
    if sequential {
        ExecMode::Sequential
    } else {
        ExecMode::default()
    }
}

fn read_input(path: &Path) -> anyhow::Result<(Vec<u8>, String)> {
    let bytes = std::fs::read(path).with_context(|| format!("cannot read {}", path.display()))?;
    let digest = hex::encode(Sha256::digest(&bytes));
    Ok((bytes, digest))
}

fn parse_ring(s: &str) -> anyhow::Result<RingSpec> {
    s.parse::<RingSpec>().map_err(|e| anyhow!("bad ring {s:?}: {e}"))
}

fn to_json<T: serde::Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("report values serialise")
}

/// Prints with keys sorted (serde_json maps are ordered by key).
fn emit(mut report: Value, started: Instant) {
    report["timing"] = json!({ "elapsed_ms": started.elapsed().as_millis() as u64 });
    println!("{}", serde_json::to_string_pretty(&report).expect("serialisable"));
}

struct Expectations(Vec<(String, bool)>);

impl Expectations {
    fn parse(raw: &[String]) -> anyhow::Result<Self> {
        let mut out = Vec::new();
        for r in raw {
            let (key, want) = match r.strip_prefix("not-") {
                Some(k) => (k, false),
                None => (r.as_str(), true),
            };
            if !["prime", "semiprime", "primitive"].contains(&key) {
                return Err(anyhow!("unknown expectation {r:?}; use prime, semiprime or primitive, optionally prefixed by not-"));
            }
            out.push((key.to_string(), want));
        }
        Ok(Expectations(out))
    }

    fn check(&self, verdicts: &[&PrimenessVerdict]) -> Outcome {
        for (key, want) in &self.0 {
            let got = verdicts.iter().find(|v| v.property.key() == key).map(|v| v.holds);
            match got {
                Some(g) if g == *want => {}
                Some(g) => return Err(Failure::Expectation(format!("expected {key} = {want}, got {g}"))),
                None => return Err(Failure::Expectation(format!("no {key} verdict was computed"))),
            }
        }
        Ok(())
    }
}

fn oracle_entry(
    structural: &PrimenessVerdict,
    brute: Result<PrimenessVerdict, AlgebraError>,
    alg: &Arc<ConvolutionAlgebra>,
) -> Result<Value, Failure> {
    match brute {
        Ok(b) => {
            b.replay(alg).map_err(|e| Failure::Disagreement(format!("oracle witness does not replay: {e}")))?;
            let agree = b.holds == structural.holds;
            if !agree {
                return Err(Failure::Disagreement(format!(
                    "{}: structural {} but brute force {}",
                    structural.property.key(),
                    structural.holds,
                    b.holds
                )));
            }
            Ok(json!({ "status": "ok", "agreement": "ok", "verdict": to_json(&b) }))
        }
        Err(AlgebraError::CapExceeded { required, cap }) => Ok(json!({
            "status": "cap_exceeded", "required": required.to_string(), "cap": cap.to_string()
        })),
        Err(AlgebraError::UnsupportedRing(r)) => Ok(json!({ "status": "unsupported_ring", "ring": r })),
        Err(e) => Err(Failure::Input(anyhow!(e))),
    }
}

fn replay(alg: &Arc<ConvolutionAlgebra>, v: &PrimenessVerdict) -> Result<(), Failure> {
    v.replay(alg)
        .map_err(|e| Failure::Disagreement(format!("{} witness does not replay: {e}", v.property.key())))
}

fn check_groupoid(args: &CheckArgs, started: Instant) -> Outcome {
    let (bytes, digest) = read_input(&args.path)?;
    let data: GroupoidData = serde_json::from_slice(&bytes).context("groupoid JSON does not parse")?;
    let g = FiniteGroupoid::validate(&data).map_err(|e| anyhow!("invalid groupoid: {e}"))?;
    if args.dump_canonical {
        println!("{}", serde_json::to_string_pretty(&g.to_data()).unwrap());
        return Ok(());
    }
    let ring = parse_ring(&args.ring)?;
    let expect = Expectations::parse(&args.expect)?;
    let orbits = g.orbits();
    let isotropy: Vec<Value> = orbits
        .representatives
        .iter()
        .map(|&x| {
            let iso = g.isotropy_group(x);
            json!({ "object": x, "order": iso.group.order(), "arrows": iso.arrows })
        })
        .collect();
    let transitive = g
        .is_topologically_transitive()
        .map_err(|e| Failure::Disagreement(e.to_string()))?;
    let prime = structural_is_prime(&g, &ring);
    let semiprime = structural_is_semiprime(&g, &ring);
    let alg = ConvolutionAlgebra::new(g.clone(), ring.clone());
    replay(&alg, &prime)?;
    replay(&alg, &semiprime)?;
    let decomposition = matrix_decomposition(&g, &ring)
        .map(|d| Value::String(d.summary(&ring)))
        .map_err(|e| Failure::Disagreement(e.to_string()))?;
    let mut report = json!({
        "operation": "check-groupoid",
        "input": { "path": args.path.display().to_string(), "sha256": digest },
        "ring": ring.to_string(),
        "objects": g.object_count(),
        "arrows": g.arrow_count(),
        "orbits": orbits.blocks,
        "isotropy": isotropy,
        "effective": g.is_effective(),
        "topologically_transitive": transitive,
        "decomposition": decomposition,
        "verdicts": { "prime": to_json(&prime), "semiprime": to_json(&semiprime) },
        "replay": "ok",
    });
    if args.oracle {
        let caps = Caps { max_pairs: args.cap, mode: mode(args.sequential) };
        report["oracle"] = json!({
            "prime": oracle_entry(&prime, bruteforce_is_prime(&g, &ring, &caps), &alg)?,
            "semiprime": oracle_entry(&semiprime, bruteforce_is_semiprime(&g, &ring, &caps), &alg)?,
        });
    }
    emit(report, started);
    expect.check(&[&prime, &semiprime])
}

fn check_graph(args: &CheckArgs, started: Instant) -> Outcome {
    let (bytes, digest) = read_input(&args.path)?;
    let g: DirectedGraph = serde_json::from_slice(&bytes).context("graph JSON does not parse")?;
    g.validate().map_err(|e| anyhow!("invalid graph: {e}"))?;
    if args.dump_canonical {
        println!("{}", serde_json::to_string_pretty(&g).unwrap());
        return Ok(());
    }
    let ring = parse_ring(&args.ring)?;
    let expect = Expectations::parse(&args.expect)?;
    let disagree = |e: gpa_core::graph::GraphError| Failure::Disagreement(e.to_string());
    let prime = leavitt_prime_verdict(&g, &ring).map_err(disagree)?;
    let semiprime = leavitt_semiprime_verdict(&ring);
    let primitive = match leavitt_primitive_verdict(&g, &ring) {
        Ok(v) => Some(v),
        Err(gpa_core::graph::GraphError::NotAField(_)) => None,
        Err(e) => return Err(disagree(e)),
    };
    for v in [Some(&prime), Some(&semiprime), primitive.as_ref()].into_iter().flatten() {
        replay_graph_obstruction(&g, &ring, v).map_err(disagree)?;
    }
    let csp = g.has_csp();
    let mut report = json!({
        "operation": "check-graph",
        "input": { "path": args.path.display().to_string(), "sha256": digest },
        "ring": ring.to_string(),
        "vertices": g.vertices,
        "edges": g.edges.len(),
        "sinks": g.sinks(),
        "mt3": { "holds": g.is_downward_directed(), "witness": g.downward_directed_witness() },
        "condition_l": { "holds": g.condition_l(), "cycle_without_exit": g.cycle_without_exit() },
        "csp": to_json(&csp),
        "verdicts": {
            "prime": to_json(&prime),
            "semiprime": to_json(&semiprime),
            "primitive": primitive.as_ref().map(to_json).unwrap_or_else(|| json!({
                "status": "not_applicable", "reason": "primitivity is decided over fields only"
            })),
        },
        "replay": "ok",
    });
    if g.is_acyclic() && g.vertices > 0 {
        let gg = acyclic_graph_groupoid(&g).map_err(disagree)?;
        let alg = ConvolutionAlgebra::new(gg.groupoid.clone(), ring.clone());
        replay(&alg, &prime)?;
        let structural = structural_is_prime(&gg.groupoid, &ring);
        let mut three = json!({
            "graph_groupoid_arrows": gg.groupoid.arrow_count(),
            "orbits": gg.groupoid.orbits().blocks.len(),
            "leavitt": prime.holds,
            "structural": structural.holds,
        });
        if args.oracle {
            let caps = Caps { max_pairs: args.cap, mode: mode(args.sequential) };
            three["bruteforce"] = oracle_entry(&structural, bruteforce_is_prime(&gg.groupoid, &ring, &caps), &alg)?;
        }
        three["agreement"] = json!(if prime.holds == structural.holds { "ok" } else { "disagree" });
        report["graph_groupoid"] = three;
    }
    if let Some(k) = args.depth {
        let cross = transitivity_crosscheck(&g, k).map_err(disagree)?;
        report["transitivity_crosscheck"] = to_json(&cross);
        let sample = boundary_paths(&g, k);
        report["boundary_paths"] = json!(sample
            .paths
            .iter()
            .map(|p| json!({ "path": p.path.to_string(), "kind": p.kind, "periodicity": p.periodicity }))
            .collect::<Vec<_>>());
    }
    emit(report, started);
    let mut all = vec![&prime, &semiprime];
    all.extend(primitive.as_ref());
    expect.check(&all)
}

fn check_semigroup(args: &CheckArgs, started: Instant) -> Outcome {
    let (bytes, digest) = read_input(&args.path)?;
    let data: SemigroupData = serde_json::from_slice(&bytes).context("semigroup JSON does not parse")?;
    let s = InverseSemigroup::from_data(&data).map_err(|e| anyhow!("invalid inverse semigroup: {e}"))?;
    if args.dump_canonical {
        println!("{}", serde_json::to_string_pretty(&s.to_data()).unwrap());
        return Ok(());
    }
    if args.contracted && s.zero().is_none() {
        return Err(Failure::Input(anyhow!("--contracted needs a semigroup with a zero")));
    }
    let ring = parse_ring(&args.ring)?;
    let expect = Expectations::parse(&args.expect)?;
    let disagree = |e: gpa_core::semigroup::SemigroupError| Failure::Disagreement(e.to_string());
    let prime = munn_prime_verdict(&s, &ring, args.contracted).map_err(disagree)?;
    let semiprime = munn_semiprime_verdict(&s, &ring, args.contracted).map_err(disagree)?;
    replay_obstruction(&s, &ring, &prime).map_err(disagree)?;
    replay_obstruction(&s, &ring, &semiprime).map_err(disagree)?;
    let u = universal_groupoid(&s, args.contracted).map_err(disagree)?;
    let alg = ConvolutionAlgebra::new(u.groupoid().clone(), ring.clone());
    replay(&alg, &prime)?;
    replay(&alg, &semiprime)?;
    let subgroups: Vec<Value> = s
        .idempotents()
        .iter()
        .map(|&e| {
            let (grp, elements) = s.maximal_subgroup(e).expect("idempotent");
            json!({ "idempotent": e, "order": grp.order(), "elements": elements })
        })
        .collect();
    let bisimple = s.bisimple_witness();
    let mut report = json!({
        "operation": "check-semigroup",
        "input": { "path": args.path.display().to_string(), "sha256": digest },
        "ring": ring.to_string(),
        "contracted": args.contracted,
        "order": s.order(),
        "zero": s.zero(),
        "idempotents": s.idempotents(),
        "bisimple": { "holds": bisimple.is_none(), "unlinked": bisimple },
        "maximal_subgroups": subgroups,
        "universal_groupoid": { "objects": u.groupoid().object_count(), "arrows": u.groupoid().arrow_count() },
        "verdicts": { "prime": to_json(&prime), "semiprime": to_json(&semiprime) },
        "replay": "ok",
    });
    if s.zero().is_some() {
        let w = s.zero_bisimple_witness().map_err(disagree)?;
        report["zero_bisimple"] = json!({ "holds": w.is_none(), "unlinked": w });
    }
    if args.iso {
        let iso = semigroup_algebra_iso(&s, &ring, args.contracted)
            .map_err(|e| Failure::Disagreement(format!("isomorphism check failed: {e}")))?;
        report["iso"] = json!({
            "verified": true,
            "basis": iso.basis,
            "triangular_order": iso.linear_extension.iter().map(|&i| iso.basis[i]).collect::<Vec<_>>(),
        });
    }
    if args.oracle {
        let caps = Caps { max_pairs: args.cap, mode: mode(args.sequential) };
        report["oracle"] = json!({
            "prime": oracle_entry(&prime, bruteforce_is_prime(u.groupoid(), &ring, &caps), &alg)?,
            "semiprime": oracle_entry(&semiprime, bruteforce_is_semiprime(u.groupoid(), &ring, &caps), &alg)?,
        });
    }
    emit(report, started);
    expect.check(&[&prime, &semiprime])
}

fn corpus(args: &CorpusArgs, started: Instant) -> Outcome {
    let config = CorpusConfig {
        max_objects: args.max_objects,
        max_arrows: args.max_arrows,
        seed: args.seed,
        random_triples: args.triples,
        acyclic_graphs: args.acyclic_graphs,
        random_graphs: args.graphs,
        max_semigroup_order: args.max_semigroup_order,
        caps: Caps { max_pairs: args.cap, mode: mode(args.sequential) },
    };
    let report = run_corpus(&config);
    for s in &report.suites {
        eprintln!(
            "{:<26} instances {:>5}  passed {:>5}  failed {:>3}  cap exceeded {:>4}",
            s.name, s.instances, s.passed, s.failed, s.cap_exceeded
        );
    }
    let mut value = json!({ "operation": "corpus" });
    value["report"] = to_json(&report);
    value["all_passed"] = json!(report.all_passed());
    emit(value, started);
    if report.all_passed() {
        Ok(())
    } else {
        let failed: Vec<&str> = report.suites.iter().filter(|s| !s.ok()).map(|s| s.name.as_str()).collect();
        Err(Failure::Disagreement(format!("suites with disagreements: {}", failed.join(", "))))
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let started = Instant::now();
    let outcome = match &cli.command {
        Command::CheckGroupoid(a) => check_groupoid(a, started),
        Command::CheckGraph(a) => check_graph(a, started),
        Command::CheckSemigroup(a) => check_semigroup(a, started),
        Command::Corpus(a) => corpus(a, started),
    };
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            match &f {
                Failure::Expectation(m) | Failure::Disagreement(m) => eprintln!("gpa: {m}"),
                Failure::Input(e) => eprintln!("gpa: {e:#}"),
            }
            ExitCode::from(f.code())
        }
    }
}
