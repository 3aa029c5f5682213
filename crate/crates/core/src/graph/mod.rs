//! Finite directed graphs and the graph conditions behind Leavitt path
//! algebra verdicts.
//!
//! Paths run along edges: `e` then `f` is a path when `r(e) = s(f)`, and
//! `u ≥ w` means there is a (possibly empty) path from `u` to `w`.

use std::collections::VecDeque;

use rand::Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::algebra::AlgebraError;
use crate::groupoid::GroupoidError;

mod leavitt;
mod paths;

pub use leavitt::{
    leavitt_primitive_verdict, leavitt_prime_verdict, leavitt_semiprime_verdict,
    replay_graph_obstruction,
};
pub use paths::{
    acyclic_graph_groupoid, boundary_paths, leavitt_relations_check, transitivity_crosscheck,
    Crosscheck, Cylinder, GraphGroupoid, Path, PathKind, PathSpaceSample, Periodicity,
    SampledPath,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("edge {index} has an endpoint outside 0..{vertices}")]
    BadEdge { index: usize, vertices: usize },
    #[error("graph has a cycle: edges {0:?}")]
    NotAcyclic(Vec<usize>),
    #[error("{0} is not a field")]
    NotAField(String),
    #[error("not a path or cylinder: {0}")]
    BadPath(String),
    #[error("independent evaluations disagree: {0}")]
    InternalDisagreement(String),
    #[error(transparent)]
    Groupoid(#[from] GroupoidError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Edge {
    pub src: usize,
    pub dst: usize,
}

/// JSON form: `{"vertices": n, "edges": [{"src": i, "dst": j}]}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct DirectedGraph {
    pub vertices: usize,
    pub edges: Vec<Edge>,
}

/// Outcome of the CSP test. `minimal` holds one vertex from each terminal
/// strongly connected component, the smallest possible witness.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CspReport {
    pub holds: bool,
    pub all_vertices: Vec<usize>,
    pub minimal: Vec<usize>,
}

impl DirectedGraph {
    pub fn new(vertices: usize, edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        let g = DirectedGraph {
            vertices,
            edges: edges.iter().map(|&(src, dst)| Edge { src, dst }).collect(),
        };
        g.validate()?;
        Ok(g)
    }

    pub fn validate(&self) -> Result<(), GraphError> {
        match self.edges.iter().position(|e| e.src >= self.vertices || e.dst >= self.vertices) {
            Some(index) => Err(GraphError::BadEdge { index, vertices: self.vertices }),
            None => Ok(()),
        }
    }

    /// A random graph with exactly `edges` edges (loops and parallel edges
    /// allowed).
    pub fn random<R: Rng>(rng: &mut R, vertices: usize, edges: usize) -> Self {
        assert!(vertices > 0 || edges == 0);
        let edges = (0..edges)
            .map(|_| Edge { src: rng.gen_range(0..vertices), dst: rng.gen_range(0..vertices) })
            .collect();
        DirectedGraph { vertices, edges }
    }

    pub fn out_edges(&self, v: usize) -> Vec<usize> {
        (0..self.edges.len()).filter(|&e| self.edges[e].src == v).collect()
    }

    pub fn out_degree(&self, v: usize) -> usize {
        self.edges.iter().filter(|e| e.src == v).count()
    }

    pub fn is_sink(&self, v: usize) -> bool {
        self.out_degree(v) == 0
    }

    pub fn sinks(&self) -> Vec<usize> {
        (0..self.vertices).filter(|&v| self.is_sink(v)).collect()
    }

    /// `reach[u][w]` iff `u ≥ w`.
    pub fn reachability(&self) -> Vec<Vec<bool>> {
        let succ = self.successors();
        (0..self.vertices)
            .map(|u| {
                let mut seen = vec![false; self.vertices];
                seen[u] = true;
                let mut queue = VecDeque::from([u]);
                while let Some(x) = queue.pop_front() {
                    for &y in &succ[x] {
                        if !seen[y] {
                            seen[y] = true;
                            queue.push_back(y);
                        }
                    }
                }
                seen
            })
            .collect()
    }

    fn successors(&self) -> Vec<Vec<usize>> {
        let mut succ = vec![Vec::new(); self.vertices];
        for e in &self.edges {
            succ[e.src].push(e.dst);
        }
        succ
    }

    /// First pair `u < v` (lexicographically) with no common lower vertex.
    pub fn downward_directed_witness(&self) -> Option<(usize, usize)> {
        let reach = self.reachability();
        (0..self.vertices)
            .flat_map(|u| (u + 1..self.vertices).map(move |v| (u, v)))
            .find(|&(u, v)| !(0..self.vertices).any(|w| reach[u][w] && reach[v][w]))
    }

    /// Condition (MT3).
    pub fn is_downward_directed(&self) -> bool {
        self.downward_directed_witness().is_none()
    }

    /// A cycle (as edges, starting at its least vertex) whose vertices all
    /// have out-degree one. Such a cycle is exactly a cycle without exit.
    pub fn cycle_without_exit(&self) -> Option<Vec<usize>> {
        let next: Vec<Option<usize>> = (0..self.vertices)
            .map(|v| {
                let out = self.out_edges(v);
                (out.len() == 1).then(|| out[0])
            })
            .collect();
        // 0 = unvisited, 1 = on the current walk, 2 = finished
        let mut state = vec![0u8; self.vertices];
        for start in 0..self.vertices {
            let mut walk = Vec::new();
            let mut v = start;
            while state[v] == 0 {
                state[v] = 1;
                walk.push(v);
                match next[v] {
                    Some(e) => v = self.edges[e].dst,
                    None => break,
                }
            }
            let found = state[v] == 1 && next[v].is_some() && walk.contains(&v);
            let cycle = found.then(|| {
                let from = walk.iter().position(|&x| x == v).unwrap();
                let mut vs = walk[from..].to_vec();
                let least = (0..vs.len()).min_by_key(|&i| vs[i]).unwrap();
                vs.rotate_left(least);
                vs.iter().map(|&x| next[x].unwrap()).collect::<Vec<usize>>()
            });
            for &x in &walk {
                state[x] = 2;
            }
            if cycle.is_some() {
                return cycle;
            }
        }
        None
    }

    /// Condition (L): every cycle has an exit.
    pub fn condition_l(&self) -> bool {
        self.cycle_without_exit().is_none()
    }

    /// Every simple cycle as an edge sequence, each listed once starting at
    /// its least vertex. Backtracking from each start vertex `s` through
    /// vertices greater than `s`, in the manner of Johnson's enumeration.
    pub fn simple_cycles(&self) -> Vec<Vec<usize>> {
        fn extend(
            g: &DirectedGraph,
            s: usize,
            v: usize,
            on_path: &mut Vec<bool>,
            path: &mut Vec<usize>,
            out: &mut Vec<Vec<usize>>,
        ) {
            for e in g.out_edges(v) {
                let w = g.edges[e].dst;
                if w == s {
                    path.push(e);
                    out.push(path.clone());
                    path.pop();
                } else if w > s && !on_path[w] {
                    on_path[w] = true;
                    path.push(e);
                    extend(g, s, w, on_path, path, out);
                    path.pop();
                    on_path[w] = false;
                }
            }
        }
        let mut out = Vec::new();
        for s in 0..self.vertices {
            let mut on_path = vec![false; self.vertices];
            on_path[s] = true;
            extend(self, s, s, &mut on_path, &mut Vec::new(), &mut out);
        }
        out
    }

    /// Condition (L) decided from the full list of simple cycles: a simple
    /// cycle has an exit iff one of its vertices has out-degree two or more.
    pub fn condition_l_by_enumeration(&self) -> bool {
        self.simple_cycles()
            .iter()
            .all(|c| c.iter().any(|&e| self.out_degree(self.edges[e].src) >= 2))
    }

    pub fn is_acyclic(&self) -> bool {
        self.find_cycle().is_none()
    }

    /// Some cycle as an edge list, if any.
    pub fn find_cycle(&self) -> Option<Vec<usize>> {
        self.simple_cycles().into_iter().next()
    }

    /// Strongly connected components with no edge leaving them.
    pub fn terminal_components(&self) -> Vec<Vec<usize>> {
        let reach = self.reachability();
        let mut seen = vec![false; self.vertices];
        let mut out = Vec::new();
        for v in 0..self.vertices {
            if seen[v] {
                continue;
            }
            let comp: Vec<usize> =
                (0..self.vertices).filter(|&w| reach[v][w] && reach[w][v]).collect();
            for &w in &comp {
                seen[w] = true;
            }
            let terminal = (0..self.vertices).all(|w| !reach[v][w] || reach[w][v]);
            if terminal {
                out.push(comp);
            }
        }
        out
    }

    /// Countable separation property. Always true for a finite graph, with
    /// `X` the whole vertex set.
    pub fn has_csp(&self) -> CspReport {
        let minimal: Vec<usize> = self.terminal_components().iter().map(|c| c[0]).collect();
        let all_vertices: Vec<usize> = (0..self.vertices).collect();
        debug_assert!(self.is_csp_witness(&all_vertices) && self.is_csp_witness(&minimal));
        CspReport { holds: true, all_vertices, minimal }
    }

    /// Every vertex reaches some member of `x`.
    pub fn is_csp_witness(&self, x: &[usize]) -> bool {
        let reach = self.reachability();
        (0..self.vertices).all(|v| x.iter().any(|&w| w < self.vertices && reach[v][w]))
    }

    /// Length of the longest path, `None` when there is a cycle.
    pub fn longest_path_length(&self) -> Option<usize> {
        if !self.is_acyclic() {
            return None;
        }
        fn depth(g: &DirectedGraph, v: usize, memo: &mut Vec<Option<usize>>) -> usize {
            if let Some(d) = memo[v] {
                return d;
            }
            let d = g
                .out_edges(v)
                .into_iter()
                .map(|e| 1 + depth(g, g.edges[e].dst, memo))
                .max()
                .unwrap_or(0);
            memo[v] = Some(d);
            d
        }
        let mut memo = vec![None; self.vertices];
        Some((0..self.vertices).map(|v| depth(self, v, &mut memo)).max().unwrap_or(0))
    }
}
