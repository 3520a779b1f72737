//! Harmless-set instances built from relaxed subset-sum instances.
//!
//! Vertex ids are allocated in this order: per vector `s` (input order)
//! `A^s`, `B^s`, `c^s`; then `u_1..u_k`; then the cycles `a_1..a_4`,
//! `b_1..b_4`, `c_1..c_4`.

use std::collections::{BTreeMap, VecDeque};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::instance::{Instance, VertexSet};
use crate::oracle::MrssInstance;

/// Which `a^s_i`–`b^s_i` pairs are joined.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum PairEdges {
    /// `i ≤ max(S)`: every pair. Without these, the unpaired `a^s_i` of a
    /// vector with `max(s) < max(S)` can sit in a harmless set next to a
    /// chosen `c^s`, and no-instances map to yes-instances.
    #[default]
    All,
    /// `i ≤ max(s)` only.
    UpToVectorMax,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VectorGadget {
    pub a: Vec<usize>,
    pub b: Vec<usize>,
    pub c: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MrssReductionOutput {
    pub instance: Instance,
    pub target: usize,
    pub vectors: Vec<VectorGadget>,
    pub u: Vec<usize>,
    /// `[a_1..a_4, b_1..b_4, c_1..c_4]`.
    pub cycles: [[usize; 4]; 3],
    /// `k'` of the source instance.
    pub budget: usize,
    pub trace: BTreeMap<String, Vec<usize>>,
}

pub fn reduce_mrss(mi: &MrssInstance) -> Result<MrssReductionOutput> {
    reduce_mrss_with(mi, PairEdges::All)
}

pub fn reduce_mrss_with(mi: &MrssInstance, pairs: PairEdges) -> Result<MrssReductionOutput> {
    let k = mi.dimension();
    let n = mi.vectors().len();
    let kp = mi.budget();
    if k == 0 {
        return Err(Error::Precondition("dimension must be at least 1".into()));
    }
    let mut problems = Vec::new();
    for i in 0..k {
        let total: usize = mi.vectors().iter().map(|s| s[i]).sum();
        let t = mi.target()[i];
        if t == 0 {
            problems.push(format!("coordinate {}: target is 0", i + 1));
        } else if t > total {
            problems.push(format!(
                "coordinate {}: target {t} exceeds column sum {total}",
                i + 1
            ));
        }
    }
    if kp > n {
        problems.push(format!("budget {kp} exceeds vector count {n}"));
    }
    if !problems.is_empty() {
        return Err(Error::Precondition(problems.join("; ")));
    }

    let max_s = mi.max_entry();
    let mut g = Graph::new(0);
    let join =
        |g: &mut Graph, u: usize, v: usize| g.add_edge(u, v).expect("gadget edges are fresh");

    let mut gadgets = Vec::with_capacity(n);
    for s in mi.vectors() {
        let a: Vec<usize> = (0..max_s).map(|_| g.add_vertex()).collect();
        let b: Vec<usize> = (0..max_s).map(|_| g.add_vertex()).collect();
        let c = g.add_vertex();
        let paired = match pairs {
            PairEdges::All => max_s,
            PairEdges::UpToVectorMax => s.iter().copied().max().unwrap_or(0),
        };
        for i in 0..max_s {
            join(&mut g, c, b[i]);
            if i < paired {
                join(&mut g, a[i], b[i]);
            }
        }
        gadgets.push(VectorGadget { a, b, c });
    }
    let u: Vec<usize> = (0..k).map(|_| g.add_vertex()).collect();
    for (gad, s) in gadgets.iter().zip(mi.vectors()) {
        for (i, &ui) in u.iter().enumerate() {
            for &a in &gad.a[..s[i]] {
                join(&mut g, ui, a);
            }
        }
    }
    let mut cycles = [[0; 4]; 3];
    for cyc in cycles.iter_mut() {
        for slot in cyc.iter_mut() {
            *slot = g.add_vertex();
        }
        for j in 0..4 {
            join(&mut g, cyc[j], cyc[(j + 1) % 4]);
        }
    }
    let [[a1, ..], [b1, ..], [c1, ..]] = cycles;
    for gad in &gadgets {
        for &a in &gad.a {
            join(&mut g, a1, a);
        }
        for &b in &gad.b {
            join(&mut g, b1, b);
        }
        join(&mut g, c1, gad.c);
    }

    let mut t = vec![1; g.vertex_count()];
    for gad in &gadgets {
        for &a in &gad.a {
            t[a] = g.degree(a);
        }
        for &b in &gad.b {
            t[b] = 2;
        }
        t[gad.c] = g.degree(gad.c);
    }
    t[b1] = g.degree(b1);
    t[a1] = (n - kp) * max_s + 1;
    t[c1] = kp + 1;
    for (i, &ui) in u.iter().enumerate() {
        let total: usize = mi.vectors().iter().map(|s| s[i]).sum();
        t[ui] = total - mi.target()[i] + 1;
    }
    // A vertex of degree 0 only arises when max(S) = 0, which the
    // preconditions exclude; b_1 likewise has degree n·max(S) ≥ 1.
    let instance = Instance::new(g, t)?;

    let mut trace = BTreeMap::new();
    for (j, gad) in gadgets.iter().enumerate() {
        trace.insert(format!("A {}", j + 1), gad.a.clone());
        trace.insert(format!("B {}", j + 1), gad.b.clone());
        trace.insert(format!("c {}", j + 1), vec![gad.c]);
    }
    trace.insert("U".into(), u.clone());
    for (name, cyc) in ["C1", "C2", "C3"].iter().zip(&cycles) {
        trace.insert((*name).into(), cyc.to_vec());
    }
    let target = n * max_s + k + (n - kp) * max_s + kp;
    Ok(MrssReductionOutput {
        instance,
        target,
        vectors: gadgets,
        u,
        cycles,
        budget: kp,
        trace,
    })
}

impl MrssReductionOutput {
    /// `U ∪ B ∪ A^s (s ∉ S') ∪ {c^s} (s ∈ S')`, where `S'` is `chosen`
    /// padded with the lowest unused indices to exactly `k'` vectors; with
    /// fewer, `a_1` would see too many chosen `A` vertices.
    pub fn witness_from_choice(&self, chosen: &[usize]) -> VertexSet {
        let mut chosen = chosen.to_vec();
        let mut j = 0;
        while chosen.len() < self.budget {
            if !chosen.contains(&j) {
                chosen.push(j);
            }
            j += 1;
        }
        let mut out = self.u.clone();
        for (j, gad) in self.vectors.iter().enumerate() {
            out.extend(&gad.b);
            if chosen.contains(&j) {
                out.push(gad.c);
            } else {
                out.extend(&gad.a);
            }
        }
        VertexSet::new(out)
    }

    /// `U ∪ {a_1..a_4, b_1..b_4, c_1}`.
    pub fn deletion_set(&self) -> Vec<usize> {
        let mut out = self.u.clone();
        out.extend(self.cycles[0]);
        out.extend(self.cycles[1]);
        out.push(self.cycles[2][0]);
        out.sort_unstable();
        out
    }

    /// Bipartiteness, the tree-depth shape after removing the deletion set,
    /// and the target formula.
    pub fn audit(&self, mi: &MrssInstance) -> std::result::Result<(), String> {
        let g = self.instance.graph();
        if g.bipartition().is_none() {
            return Err("graph is not bipartite".into());
        }
        let removed = self.deletion_set();
        let keep: Vec<usize> = (0..g.vertex_count())
            .filter(|v| removed.binary_search(v).is_err())
            .collect();
        let rest = g.induced(&keep);
        for comp in rest.components() {
            let edges: usize = comp.iter().map(|&v| rest.degree(v)).sum::<usize>() / 2;
            if edges + 1 != comp.len() {
                return Err(format!("component of size {} is not a tree", comp.len()));
            }
            let radius = comp
                .iter()
                .map(|&v| eccentricity(&rest, v))
                .min()
                .unwrap_or(0);
            if radius > 3 {
                return Err(format!(
                    "component of size {} has height {radius}",
                    comp.len()
                ));
            }
        }
        let n = mi.vectors().len();
        let max_s = mi.max_entry();
        let expected = n * max_s + mi.dimension() + (n - mi.budget()) * max_s + mi.budget();
        if self.target != expected {
            return Err(format!(
                "target {} differs from formula {expected}",
                self.target
            ));
        }
        Ok(())
    }
}

fn eccentricity(g: &Graph, src: usize) -> usize {
    let mut dist = vec![usize::MAX; g.vertex_count()];
    dist[src] = 0;
    let mut queue = VecDeque::from([src]);
    let mut far = 0;
    while let Some(v) = queue.pop_front() {
        far = far.max(dist[v]);
        for &w in g.neighbours(v) {
            if dist[w] == usize::MAX {
                dist[w] = dist[v] + 1;
                queue.push_back(w);
            }
        }
    }
    far
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::{max_harmless_bruteforce, mrss_feasible_bruteforce, DEFAULT_BUDGET};

    fn three_vectors() -> MrssInstance {
        MrssInstance::new(vec![vec![2, 1], vec![1, 1], vec![1, 2]], vec![3, 3], 2).unwrap()
    }

    #[test]
    fn three_vector_example() {
        let mi = three_vectors();
        let out = reduce_mrss(&mi).unwrap();
        assert_eq!(out.target, 12);
        assert_eq!(out.instance.vertex_count(), 3 * 5 + 2 + 12);
        out.audit(&mi).unwrap();
        let chosen = mrss_feasible_bruteforce(&mi).unwrap().unwrap();
        let h = out.witness_from_choice(&chosen);
        assert_eq!(h.len(), 12);
        assert!(out.instance.is_harmless(&h).unwrap());
    }

    #[test]
    fn threshold_table() {
        let mi = three_vectors();
        let out = reduce_mrss(&mi).unwrap();
        let inst = &out.instance;
        let [a, b, c] = out.cycles;
        assert_eq!(inst.threshold(a[0]), 2 + 1);
        assert_eq!(inst.threshold(c[0]), 3);
        assert_eq!(inst.threshold(b[0]), 3 * 2 + 2);
        for v in a[1..].iter().chain(&b[1..]).chain(&c[1..]) {
            assert_eq!(inst.threshold(*v), 1);
        }
        // Column sums are 4 and 4, target 3 and 3.
        assert_eq!(inst.threshold(out.u[0]), 2);
        assert_eq!(inst.threshold(out.u[1]), 2);
    }

    #[test]
    fn precondition_reported_per_coordinate() {
        let mi = MrssInstance::new(vec![vec![1, 0]], vec![1, 1], 1).unwrap();
        let err = reduce_mrss(&mi).unwrap_err();
        assert!(
            matches!(&err, Error::Precondition(m) if m.contains("coordinate 2") && !m.contains("coordinate 1"))
        );
    }

    #[test]
    fn unpaired_vertices_break_the_printed_construction() {
        // No single vector covers (1, 1), yet with the printed edge rule
        // a^2_2 is unpaired and a size-r harmless set appears.
        let mi = MrssInstance::new(vec![vec![2, 0], vec![0, 1]], vec![1, 1], 1).unwrap();
        assert!(mrss_feasible_bruteforce(&mi).unwrap().is_none());
        let printed = reduce_mrss_with(&mi, PairEdges::UpToVectorMax).unwrap();
        let h = max_harmless_bruteforce(&printed.instance, DEFAULT_BUDGET).unwrap();
        assert!(h.max_size >= printed.target);
        let fixed = reduce_mrss(&mi).unwrap();
        let h = max_harmless_bruteforce(&fixed.instance, DEFAULT_BUDGET).unwrap();
        assert!(h.max_size < fixed.target);
    }
}
