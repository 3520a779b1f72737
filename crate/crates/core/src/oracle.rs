//! Exhaustive reference solvers.
//!
//! These are the ground truth the structural solvers are checked against.
//! They never approximate: exceeding a budget is an error.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::instance::{Instance, VertexSet};
use crate::solve::{SolveResult, SolverTag};

/// Default node budget for [`max_harmless_bruteforce`].
pub const DEFAULT_BUDGET: u64 = 20_000_000;

/// Largest edge count accepted by [`mmo_feasible_bruteforce`].
pub const MMO_EDGE_LIMIT: usize = 24;

/// Largest vector count accepted by [`mrss_feasible_bruteforce`].
pub const MRSS_VECTOR_LIMIT: usize = 24;

/// Maximum harmless set by branch and bound.
///
/// Vertices are decided in ascending order, inclusion first, and only a
/// strictly larger set replaces the incumbent, so the witness is the
/// lexicographically least among all maximum sets.
pub fn max_harmless_bruteforce(instance: &Instance, budget: u64) -> Result<SolveResult> {
    max_harmless_excluding(instance, &VertexSet::empty(), budget)
}

/// As [`max_harmless_bruteforce`], with the vertices of `forbidden` kept out
/// of the set (they still count as constrained vertices).
pub fn max_harmless_excluding(
    instance: &Instance,
    forbidden: &VertexSet,
    budget: u64,
) -> Result<SolveResult> {
    let n = instance.vertex_count();
    if let Some(&v) = forbidden.as_slice().last() {
        if v >= n {
            return Err(Error::VertexOutOfRange { vertex: v + 1, n });
        }
    }
    let g = instance.graph();
    // A neighbour of a threshold-1 vertex can never be chosen.
    let candidates: Vec<usize> = (0..n)
        .filter(|&v| !forbidden.contains(v))
        .filter(|&v| g.neighbours(v).iter().all(|&w| instance.threshold(w) > 1))
        .collect();

    let mut search = Search {
        instance,
        candidates: &candidates,
        count: vec![0; n],
        chosen: Vec::new(),
        best: Vec::new(),
        nodes: 0,
        budget,
    };
    search.run(0)?;

    let mut stats = BTreeMap::new();
    stats.insert("nodes", search.nodes);
    stats.insert("candidates", candidates.len() as u64);
    SolveResult::verified(
        instance,
        VertexSet::new(search.best),
        SolverTag::Brute,
        stats,
    )
}

struct Search<'a> {
    instance: &'a Instance,
    candidates: &'a [usize],
    count: Vec<usize>,
    chosen: Vec<usize>,
    best: Vec<usize>,
    nodes: u64,
    budget: u64,
}

impl Search<'_> {
    fn addable(&self, v: usize) -> bool {
        let inst = self.instance;
        self.count[v] < inst.threshold(v)
            && inst
                .graph()
                .neighbours(v)
                .iter()
                .all(|&w| self.count[w] + 1 < inst.threshold(w))
    }

    fn set_member(&mut self, v: usize, add: bool) {
        for &w in self.instance.graph().neighbours(v) {
            if add {
                self.count[w] += 1;
            } else {
                self.count[w] -= 1;
            }
        }
        if add {
            self.chosen.push(v);
        } else {
            self.chosen.pop();
        }
    }

    fn run(&mut self, i: usize) -> Result<()> {
        self.nodes += 1;
        if self.nodes > self.budget {
            return Err(Error::OracleLimit(self.budget));
        }
        if self.chosen.len() > self.best.len() {
            self.best = self.chosen.clone();
        }
        if i == self.candidates.len() {
            return Ok(());
        }
        let open = self.candidates[i..]
            .iter()
            .filter(|&&v| self.addable(v))
            .count();
        if self.chosen.len() + open <= self.best.len() {
            return Ok(());
        }
        let v = self.candidates[i];
        if self.addable(v) {
            self.set_member(v, true);
            self.run(i + 1)?;
            self.set_member(v, false);
        }
        self.run(i + 1)
    }
}

/// Edge-weighted graph with an out-weight bound `r`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightedGraph {
    graph: Graph,
    edges: Vec<(usize, usize, usize)>,
    bound: usize,
}

impl WeightedGraph {
    /// Zero-based edges `(u, v, weight)`; weights must be positive.
    pub fn new(n: usize, edges: Vec<(usize, usize, usize)>, bound: usize) -> Result<Self> {
        let mut graph = Graph::new(n);
        for &(u, v, w) in &edges {
            graph.add_edge(u, v)?;
            if w == 0 {
                return Err(Error::Precondition(format!(
                    "edge {} {} has weight 0",
                    u + 1,
                    v + 1
                )));
            }
        }
        Ok(WeightedGraph {
            graph,
            edges,
            bound,
        })
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn edges(&self) -> &[(usize, usize, usize)] {
        &self.edges
    }

    pub fn bound(&self) -> usize {
        self.bound
    }

    /// Sum of the weights of edges incident to `v`.
    pub fn weighted_degree(&self, v: usize) -> usize {
        self.edges
            .iter()
            .filter(|e| e.0 == v || e.1 == v)
            .map(|e| e.2)
            .sum()
    }

    /// Out-weight of every vertex under `orientation`, where `true` orients
    /// edge `i` from its first to its second endpoint.
    pub fn out_weights(&self, orientation: &[bool]) -> Vec<usize> {
        let mut out = vec![0; self.graph.vertex_count()];
        for (&(u, v, w), &forward) in self.edges.iter().zip(orientation) {
            out[if forward { u } else { v }] += w;
        }
        out
    }
}

/// Orientation with every out-weight at most the bound, if one exists.
pub fn mmo_feasible_bruteforce(wg: &WeightedGraph) -> Result<Option<Vec<bool>>> {
    if wg.edges.len() > MMO_EDGE_LIMIT {
        return Err(Error::SizeLimit {
            what: "edge count",
            limit: MMO_EDGE_LIMIT,
        });
    }
    fn go(wg: &WeightedGraph, i: usize, load: &mut [usize], orient: &mut Vec<bool>) -> bool {
        let Some(&(u, v, w)) = wg.edges.get(i) else {
            return true;
        };
        for (tail, forward) in [(u, true), (v, false)] {
            if load[tail] + w <= wg.bound {
                load[tail] += w;
                orient.push(forward);
                if go(wg, i + 1, load, orient) {
                    return true;
                }
                orient.pop();
                load[tail] -= w;
            }
        }
        false
    }
    let mut load = vec![0; wg.graph.vertex_count()];
    let mut orient = Vec::new();
    Ok(go(wg, 0, &mut load, &mut orient).then_some(orient))
}

/// Vectors in `N^k`, a target and a cardinality budget `k'`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MrssInstance {
    vectors: Vec<Vec<usize>>,
    target: Vec<usize>,
    budget: usize,
}

impl MrssInstance {
    pub fn new(vectors: Vec<Vec<usize>>, target: Vec<usize>, budget: usize) -> Result<Self> {
        if let Some(i) = vectors.iter().position(|s| s.len() != target.len()) {
            return Err(Error::Precondition(format!(
                "vector {} has dimension {}, target has {}",
                i + 1,
                vectors[i].len(),
                target.len()
            )));
        }
        Ok(MrssInstance {
            vectors,
            target,
            budget,
        })
    }

    pub fn dimension(&self) -> usize {
        self.target.len()
    }

    pub fn vectors(&self) -> &[Vec<usize>] {
        &self.vectors
    }

    pub fn target(&self) -> &[usize] {
        &self.target
    }

    pub fn budget(&self) -> usize {
        self.budget
    }

    /// Largest coordinate over all vectors.
    pub fn max_entry(&self) -> usize {
        self.vectors.iter().flatten().copied().max().unwrap_or(0)
    }

    /// Whether the chosen vectors (by index) dominate the target.
    pub fn dominates(&self, chosen: &[usize]) -> bool {
        (0..self.dimension())
            .all(|i| chosen.iter().map(|&j| self.vectors[j][i]).sum::<usize>() >= self.target[i])
    }
}

/// At most `k'` vectors whose sum dominates the target, if such exist. The
/// witness is the lexicographically least index list among the smallest
/// feasible choices.
pub fn mrss_feasible_bruteforce(mi: &MrssInstance) -> Result<Option<Vec<usize>>> {
    if mi.vectors.len() > MRSS_VECTOR_LIMIT {
        return Err(Error::SizeLimit {
            what: "vector count",
            limit: MRSS_VECTOR_LIMIT,
        });
    }
    fn go(
        mi: &MrssInstance,
        from: usize,
        left: usize,
        deficit: &mut [usize],
        chosen: &mut Vec<usize>,
    ) -> bool {
        if deficit.iter().all(|&d| d == 0) {
            return true;
        }
        if left == 0 {
            return false;
        }
        for j in from..mi.vectors.len() {
            let saved: Vec<usize> = deficit.to_vec();
            for (d, x) in deficit.iter_mut().zip(&mi.vectors[j]) {
                *d = d.saturating_sub(*x);
            }
            chosen.push(j);
            if go(mi, j + 1, left - 1, deficit, chosen) {
                return true;
            }
            chosen.pop();
            deficit.copy_from_slice(&saved);
        }
        false
    }
    let limit = mi.budget.min(mi.vectors.len());
    for size in 0..=limit {
        let mut deficit = mi.target.clone();
        let mut chosen = Vec::new();
        if go(mi, 0, size, &mut deficit, &mut chosen) {
            return Ok(Some(chosen));
        }
    }
    Ok(None)
}
