//! Threshold instances and the harmless-set predicate.

use std::fmt;

use crate::error::{Error, Result};
use crate::graph::Graph;

/// A graph together with a positive threshold per vertex.
///
/// Thresholds are only required to be at least one; `t(v) <= d(v)` is
/// checked by [`Instance::validate`] in strict mode, since kernelization may
/// legitimately leave a vertex with a threshold above its degree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Instance {
    graph: Graph,
    thresholds: Vec<usize>,
}

/// Sorted set of distinct zero-based vertices.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct VertexSet(Vec<usize>);

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    ZeroThreshold {
        vertex: usize,
    },
    AboveDegree {
        vertex: usize,
        threshold: usize,
        degree: usize,
    },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Violation::ZeroThreshold { vertex } => write!(f, "vertex {}: threshold 0", vertex + 1),
            Violation::AboveDegree {
                vertex,
                threshold,
                degree,
            } => {
                write!(
                    f,
                    "vertex {}: threshold {} exceeds degree {}",
                    vertex + 1,
                    threshold,
                    degree
                )
            }
        }
    }
}

impl VertexSet {
    pub fn new(mut vertices: Vec<usize>) -> Self {
        vertices.sort_unstable();
        vertices.dedup();
        VertexSet(vertices)
    }

    pub fn empty() -> Self {
        VertexSet(Vec::new())
    }

    /// Builds a set from one-based ids as they appear in files.
    pub fn from_one_based(ids: &[usize], n: usize) -> Result<Self> {
        let mut out = Vec::with_capacity(ids.len());
        for &id in ids {
            if id == 0 || id > n {
                return Err(Error::VertexOutOfRange { vertex: id, n });
            }
            out.push(id - 1);
        }
        Ok(VertexSet::new(out))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, v: usize) -> bool {
        self.0.binary_search(&v).is_ok()
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().copied()
    }

    pub fn one_based(&self) -> Vec<usize> {
        self.0.iter().map(|v| v + 1).collect()
    }

    pub fn into_vec(self) -> Vec<usize> {
        self.0
    }
}

impl FromIterator<usize> for VertexSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        VertexSet::new(iter.into_iter().collect())
    }
}

impl Instance {
    /// Pairs a graph with thresholds; fails on a length mismatch or a zero.
    pub fn new(graph: Graph, thresholds: Vec<usize>) -> Result<Self> {
        if thresholds.len() != graph.vertex_count() {
            return Err(Error::Precondition(format!(
                "{} thresholds for {} vertices",
                thresholds.len(),
                graph.vertex_count()
            )));
        }
        if let Some(v) = thresholds.iter().position(|&t| t == 0) {
            return Err(Error::Precondition(format!(
                "vertex {} has threshold 0",
                v + 1
            )));
        }
        Ok(Instance { graph, thresholds })
    }

    /// Same threshold on every vertex.
    pub fn uniform(graph: Graph, t: usize) -> Result<Self> {
        let n = graph.vertex_count();
        Instance::new(graph, vec![t; n])
    }

    /// Majority thresholds `max(1, ceil(d(v) / 2))`.
    pub fn majority(graph: Graph) -> Self {
        let thresholds = (0..graph.vertex_count())
            .map(|v| graph.degree(v).div_ceil(2).max(1))
            .collect();
        Instance { graph, thresholds }
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn thresholds(&self) -> &[usize] {
        &self.thresholds
    }

    pub fn threshold(&self, v: usize) -> usize {
        self.thresholds[v]
    }

    pub fn vertex_count(&self) -> usize {
        self.graph.vertex_count()
    }

    pub fn max_threshold(&self) -> usize {
        self.thresholds.iter().copied().max().unwrap_or(0)
    }

    /// Thresholds capped at `k + 1`. Any set of at most `k` vertices gives
    /// every vertex at most `k` neighbours in it, so the question "is there a
    /// harmless set of size `k`" has the same answer before and after.
    pub fn clamp_thresholds(&self, k: usize) -> Instance {
        let cap = k + 1;
        Instance {
            graph: self.graph.clone(),
            thresholds: self.thresholds.iter().map(|&t| t.min(cap)).collect(),
        }
    }

    /// Induced sub-instance on `keep` (sorted), thresholds carried over.
    pub fn induced(&self, keep: &[usize]) -> Instance {
        Instance {
            graph: self.graph.induced(keep),
            thresholds: keep.iter().map(|&v| self.thresholds[v]).collect(),
        }
    }

    pub fn validate(&self, strict: bool) -> Vec<Violation> {
        let mut out = Vec::new();
        for (v, &t) in self.thresholds.iter().enumerate() {
            if t == 0 {
                out.push(Violation::ZeroThreshold { vertex: v });
            } else if strict && t > self.graph.degree(v) {
                out.push(Violation::AboveDegree {
                    vertex: v,
                    threshold: t,
                    degree: self.graph.degree(v),
                });
            }
        }
        out
    }

    fn check_range(&self, s: &VertexSet) -> Result<()> {
        let n = self.vertex_count();
        match s.as_slice().last() {
            Some(&v) if v >= n => Err(Error::VertexOutOfRange { vertex: v + 1, n }),
            _ => Ok(()),
        }
    }

    /// Number of neighbours of each vertex inside `s`.
    pub fn neighbours_in(&self, s: &VertexSet) -> Result<Vec<usize>> {
        self.check_range(s)?;
        let mut count = vec![0usize; self.vertex_count()];
        for v in s.iter() {
            for &w in self.graph.neighbours(v) {
                count[w] += 1;
            }
        }
        Ok(count)
    }

    /// `t(v) - |N(v) ∩ s|` for every vertex; the set is harmless iff all
    /// entries are positive.
    pub fn slack(&self, s: &VertexSet) -> Result<Vec<i64>> {
        Ok(self
            .neighbours_in(s)?
            .into_iter()
            .zip(&self.thresholds)
            .map(|(c, &t)| t as i64 - c as i64)
            .collect())
    }

    /// True iff every vertex, members of `s` included, has fewer than `t(v)`
    /// neighbours in `s`.
    pub fn is_harmless(&self, s: &VertexSet) -> Result<bool> {
        Ok(self
            .neighbours_in(s)?
            .iter()
            .zip(&self.thresholds)
            .all(|(&c, &t)| c < t))
    }
}

/// Majority thresholds for `graph`.
pub fn majority_thresholds(graph: Graph) -> Instance {
    Instance::majority(graph)
}
