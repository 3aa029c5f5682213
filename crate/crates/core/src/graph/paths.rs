//! Finite paths, truncated boundary path spaces, and the graph groupoid of an
//! acyclic graph.

use std::collections::{HashMap, VecDeque};
use std::fmt;

use serde::Serialize;

use super::{DirectedGraph, GraphError};
use crate::algebra::{AlgebraElem, AlgebraHandle, ConvolutionAlgebra};
use crate::groupoid::FiniteGroupoid;
use crate::ring::RingSpec;

/// A finite path: `edges` read left to right starting at `start`. The empty
/// path `ε_v` has no edges.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Path {
    pub start: usize,
    pub edges: Vec<usize>,
}

impl Path {
    pub fn empty(v: usize) -> Self {
        Path { start: v, edges: Vec::new() }
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn end(&self, g: &DirectedGraph) -> usize {
        self.edges.last().map_or(self.start, |&e| g.edges[e].dst)
    }

    pub fn vertices(&self, g: &DirectedGraph) -> Vec<usize> {
        std::iter::once(self.start).chain(self.edges.iter().map(|&e| g.edges[e].dst)).collect()
    }

    pub fn is_valid(&self, g: &DirectedGraph) -> bool {
        self.start < g.vertices
            && self.edges.iter().all(|&e| e < g.edges.len())
            && self.vertices(g).windows(2).zip(&self.edges).all(|(w, &e)| {
                g.edges[e].src == w[0] && g.edges[e].dst == w[1]
            })
    }

    fn extended(&self, e: usize) -> Path {
        let mut edges = self.edges.clone();
        edges.push(e);
        Path { start: self.start, edges }
    }

    pub fn is_prefix_of(&self, other: &Path) -> bool {
        self.start == other.start && other.edges.starts_with(&self.edges)
    }
}

impl fmt::Display for Path {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.edges.is_empty() {
            write!(f, "ε_{}", self.start)
        } else {
            let names: Vec<String> = self.edges.iter().map(|e| format!("e{e}")).collect();
            write!(f, "{}", names.join("·"))
        }
    }
}

/// Every path of length at most `k`, ordered by length, then start vertex,
/// then edge sequence.
pub fn paths_up_to(g: &DirectedGraph, k: usize) -> Vec<Path> {
    let mut level: Vec<Path> = (0..g.vertices).map(Path::empty).collect();
    let mut out = level.clone();
    for _ in 0..k {
        level = level
            .iter()
            .flat_map(|p| g.out_edges(p.end(g)).into_iter().map(move |e| p.extended(e)))
            .collect();
        if level.is_empty() {
            break;
        }
        out.extend(level.iter().cloned());
    }
    out
}

/// A basic open set `Z(α) \ (Z(αe₁) ∪ … ∪ Z(αeₙ))`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Cylinder {
    pub base: Path,
    pub excluded: Vec<usize>,
}

impl Cylinder {
    pub fn new(g: &DirectedGraph, base: Path, excluded: Vec<usize>) -> Result<Self, GraphError> {
        if !base.is_valid(g) {
            return Err(GraphError::BadPath(format!("{base} is not a path")));
        }
        let end = base.end(g);
        if let Some(&e) = excluded.iter().find(|&&e| e >= g.edges.len() || g.edges[e].src != end) {
            return Err(GraphError::BadPath(format!("edge {e} does not extend {base}")));
        }
        Ok(Cylinder { base, excluded })
    }

    pub fn contains(&self, p: &Path) -> bool {
        self.base.is_prefix_of(p)
            && !self.excluded.iter().any(|&e| self.base.extended(e).is_prefix_of(p))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum PathKind {
    /// A finite path ending at a sink: a point of `∂E`.
    Complete,
    /// The length-`k` prefix of longer or infinite boundary paths.
    Prefix,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Periodicity {
    /// A finite boundary path.
    Finite,
    /// The prefix has entered a cycle without exit, so its only continuation
    /// is eventually periodic.
    EventuallyPeriodic,
    /// Not decided at this depth.
    Unknown,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SampledPath {
    pub path: Path,
    pub kind: PathKind,
    pub periodicity: Periodicity,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PathSpaceSample {
    pub depth: usize,
    pub paths: Vec<SampledPath>,
}

impl PathSpaceSample {
    pub fn complete(&self) -> impl Iterator<Item = &Path> {
        self.paths.iter().filter(|p| p.kind == PathKind::Complete).map(|p| &p.path)
    }

    pub fn prefixes(&self) -> impl Iterator<Item = &Path> {
        self.paths.iter().filter(|p| p.kind == PathKind::Prefix).map(|p| &p.path)
    }
}

fn periodicity(g: &DirectedGraph, p: &Path) -> Periodicity {
    let vs = p.vertices(g);
    for j in 1..vs.len() {
        if let Some(i) = vs[..j].iter().position(|&v| v == vs[j]) {
            if vs[i..j].iter().all(|&v| g.out_degree(v) == 1) {
                return Periodicity::EventuallyPeriodic;
            }
        }
    }
    Periodicity::Unknown
}

/// Every boundary path of length at most `k`, plus every length-`k` path
/// not ending at a sink (a prefix of longer boundary paths).
pub fn boundary_paths(g: &DirectedGraph, k: usize) -> PathSpaceSample {
    let paths = paths_up_to(g, k)
        .into_iter()
        .filter_map(|p| {
            if g.is_sink(p.end(g)) {
                Some(SampledPath { path: p, kind: PathKind::Complete, periodicity: Periodicity::Finite })
            } else if p.len() == k {
                let periodicity = periodicity(g, &p);
                Some(SampledPath { path: p, kind: PathKind::Prefix, periodicity })
            } else {
                None
            }
        })
        .collect();
    PathSpaceSample { depth: k, paths }
}

/// The graph groupoid of an acyclic graph: objects are the boundary paths
/// (finite paths ending at sinks) and arrows are `(η, |η| - |γ|, γ)` for `η`,
/// `γ` ending at the same sink, from `γ` to `η`.
#[derive(Debug, Clone)]
pub struct GraphGroupoid {
    pub groupoid: FiniteGroupoid,
    pub objects: Vec<Path>,
    /// `(range object, degree, source object)` per arrow.
    pub arrows: Vec<(usize, i64, usize)>,
    lookup: HashMap<(usize, usize), usize>,
}

impl GraphGroupoid {
    /// The arrow from `d` to `r`, when they end at the same sink.
    pub fn arrow(&self, r: usize, d: usize) -> Option<usize> {
        self.lookup.get(&(r, d)).copied()
    }

    pub fn object_of(&self, p: &Path) -> Option<usize> {
        self.objects.iter().position(|q| q == p)
    }
}

pub fn acyclic_graph_groupoid(g: &DirectedGraph) -> Result<GraphGroupoid, GraphError> {
    if let Some(c) = g.find_cycle() {
        return Err(GraphError::NotAcyclic(c));
    }
    let depth = g.longest_path_length().expect("acyclic");
    let objects: Vec<Path> =
        paths_up_to(g, depth).into_iter().filter(|p| g.is_sink(p.end(g))).collect();
    let sink: Vec<usize> = objects.iter().map(|p| p.end(g)).collect();
    let mut arrows = Vec::new();
    let mut lookup = HashMap::new();
    for r in 0..objects.len() {
        for d in 0..objects.len() {
            if sink[r] == sink[d] {
                lookup.insert((r, d), arrows.len());
                arrows.push((r, objects[r].len() as i64 - objects[d].len() as i64, d));
            }
        }
    }
    let ends: Vec<(usize, usize)> = arrows.iter().map(|&(r, _, d)| (d, r)).collect();
    let groupoid = FiniteGroupoid::from_rule(objects.len(), &ends, |a, b| {
        let (r, k, _) = arrows[a];
        let (_, l, d) = arrows[b];
        let c = lookup[&(r, d)];
        debug_assert_eq!(arrows[c].1, k + l, "degrees add");
        c
    })?;
    Ok(GraphGroupoid { groupoid, objects, arrows, lookup })
}

/// Images of the Leavitt generators in `R𝒢_E` for acyclic `E`:
/// `v ↦ χ` of the identities over `Z(ε_v)`, `e ↦ Σ δ_{(eγ, 1, γ)}` and
/// `e* ↦ Σ δ_{(γ, -1, eγ)}` over `γ ∈ Z(ε_{r(e)})`. Checks the four Leavitt
/// relations and that the vertex images sum to the unit.
pub fn leavitt_relations_check(g: &DirectedGraph, ring: &RingSpec) -> Result<bool, GraphError> {
    let gg = acyclic_graph_groupoid(g)?;
    let alg = ConvolutionAlgebra::new(gg.groupoid.clone(), ring.clone());
    let one = ring.one();
    let sum = |terms: Vec<usize>| -> AlgebraElem {
        alg.element(terms.into_iter().map(|a| (a, one.clone()))).expect("valid arrows")
    };
    let starting_at = |v: usize| -> Vec<usize> {
        (0..gg.objects.len()).filter(|&i| gg.objects[i].start == v).collect()
    };
    let vertex: Vec<AlgebraElem> = (0..g.vertices)
        .map(|v| sum(starting_at(v).into_iter().map(|i| gg.groupoid.identity(i)).collect()))
        .collect();
    let prepend = |e: usize, i: usize| -> usize {
        let mut edges = vec![e];
        edges.extend(&gg.objects[i].edges);
        gg.object_of(&Path { start: g.edges[e].src, edges }).expect("eγ is a boundary path")
    };
    let edge: Vec<AlgebraElem> = (0..g.edges.len())
        .map(|e| {
            sum(starting_at(g.edges[e].dst)
                .into_iter()
                .map(|i| gg.arrow(prepend(e, i), i).unwrap())
                .collect())
        })
        .collect();
    let ghost: Vec<AlgebraElem> = (0..g.edges.len())
        .map(|e| {
            sum(starting_at(g.edges[e].dst)
                .into_iter()
                .map(|i| gg.arrow(i, prepend(e, i)).unwrap())
                .collect())
        })
        .collect();
    let mul = |a: &AlgebraElem, b: &AlgebraElem| a.convolve(b).expect("same carrier");
    let zero = alg.zero();
    for v in 0..g.vertices {
        for w in 0..g.vertices {
            let expect = if v == w { &vertex[v] } else { &zero };
            if mul(&vertex[v], &vertex[w]) != *expect {
                return Ok(false);
            }
        }
    }
    for (e, ed) in g.edges.iter().enumerate() {
        let (s, r) = (&vertex[ed.src], &vertex[ed.dst]);
        if mul(s, &edge[e]) != edge[e]
            || mul(&edge[e], r) != edge[e]
            || mul(r, &ghost[e]) != ghost[e]
            || mul(&ghost[e], s) != ghost[e]
        {
            return Ok(false);
        }
        for f in 0..g.edges.len() {
            let expect = if e == f { r } else { &zero };
            if mul(&ghost[e], &edge[f]) != *expect {
                return Ok(false);
            }
        }
    }
    for v in 0..g.vertices {
        if g.is_sink(v) {
            continue;
        }
        let mut total = alg.zero();
        for e in g.out_edges(v) {
            total = total.add(&mul(&edge[e], &ghost[e]))?;
        }
        if total != vertex[v] {
            return Ok(false);
        }
    }
    let mut units = alg.zero();
    for p in &vertex {
        units = units.add(p)?;
    }
    Ok(units == alg.unit())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Crosscheck {
    pub holds: bool,
    pub pairs_checked: usize,
    /// First pair of cylinders `Z(α)`, `Z(β)` joined by no arrow.
    pub witness: Option<(Path, Path)>,
}

/// For all cylinders `Z(α)`, `Z(β)` with `|α|, |β| ≤ k`, decides whether an
/// arrow joins them by searching the product graph from `(r(α), r(β))` for a
/// diagonal state, and checks the conjunction against (MT3).
pub fn transitivity_crosscheck(g: &DirectedGraph, k: usize) -> Result<Crosscheck, GraphError> {
    if k == 0 {
        return Err(GraphError::BadPath("depth must be at least 1".into()));
    }
    let n = g.vertices;
    let succ: Vec<Vec<usize>> =
        (0..n).map(|v| g.out_edges(v).into_iter().map(|e| g.edges[e].dst).collect()).collect();
    let meets = |x: usize, y: usize| -> bool {
        let mut seen = vec![false; n * n];
        seen[x * n + y] = true;
        let mut queue = VecDeque::from([(x, y)]);
        while let Some((a, b)) = queue.pop_front() {
            if a == b {
                return true;
            }
            let next = succ[a].iter().map(|&a2| (a2, b)).chain(succ[b].iter().map(|&b2| (a, b2)));
            for (a2, b2) in next {
                if !std::mem::replace(&mut seen[a2 * n + b2], true) {
                    queue.push_back((a2, b2));
                }
            }
        }
        false
    };
    let mut memo: HashMap<(usize, usize), bool> = HashMap::new();
    let paths = paths_up_to(g, k);
    let mut witness = None;
    let mut pairs = 0;
    for (i, a) in paths.iter().enumerate() {
        for b in &paths[i + 1..] {
            pairs += 1;
            let key = (a.end(g), b.end(g));
            let ok = *memo.entry(key).or_insert_with(|| meets(key.0, key.1));
            if !ok && witness.is_none() {
                witness = Some((a.clone(), b.clone()));
            }
        }
    }
    let holds = witness.is_none();
    if holds != g.is_downward_directed() {
        return Err(GraphError::InternalDisagreement(format!(
            "cylinder test says {holds}, reachability says {}",
            !holds
        )));
    }
    Ok(Crosscheck { holds, pairs_checked: pairs, witness })
}
