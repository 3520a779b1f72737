//! Solver parameterized by twin cover.
//!
//! Every edge outside a twin cover `X` joins true twins, so `G - X` is a
//! disjoint union of cliques and each clique sees a single neighbourhood in
//! `X`. For every choice of `S ∩ X` each clique gets a capacity, cliques with
//! the same `X`-neighbourhood are pooled into one integer variable, and the
//! cover vertices contribute one constraint each.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::ilp::{maximize, IlpModel, IlpOutcome};
use crate::instance::{Instance, VertexSet};
use crate::nd::are_twins;
use crate::solve::{SolveResult, SolverTag};

/// Largest cover the `S ∩ X` sweep accepts.
pub const MAX_COVER: usize = 20;

/// Whether every edge has an endpoint in `cover` or joins twins.
pub fn is_twin_cover(g: &Graph, cover: &VertexSet) -> bool {
    g.edges()
        .all(|(a, b)| cover.contains(a) || cover.contains(b) || are_twins(g, a, b))
}

/// A minimum twin cover of size at most `k_max`, if one exists.
///
/// The edges that do not join twins are fixed by the graph, so this is a
/// vertex cover of those edges: branch on either endpoint of an uncovered
/// one, with iterative deepening on the size.
pub fn find_twin_cover(g: &Graph, k_max: usize) -> Option<VertexSet> {
    let hard: Vec<(usize, usize)> = g.edges().filter(|&(a, b)| !are_twins(g, a, b)).collect();
    fn branch(hard: &[(usize, usize)], chosen: &mut Vec<usize>, k: usize) -> bool {
        let open = hard
            .iter()
            .find(|(a, b)| !chosen.contains(a) && !chosen.contains(b));
        let Some(&(a, b)) = open else {
            return true;
        };
        if chosen.len() == k {
            return false;
        }
        for v in [a, b] {
            chosen.push(v);
            if branch(hard, chosen, k) {
                return true;
            }
            chosen.pop();
        }
        false
    }
    (0..=k_max).find_map(|k| {
        let mut chosen = Vec::new();
        branch(&hard, &mut chosen, k).then(|| VertexSet::new(chosen))
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CapTag {
    /// More minimum-threshold vertices than the remaining room: one of them
    /// stays out and bounds the clique.
    Strict,
    /// All minimum-threshold vertices fit.
    Loose,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliqueInfo {
    /// Members ordered by threshold, then id: the order they are taken in.
    pub members: Vec<usize>,
    pub x_neighbours: Vec<usize>,
    pub min_threshold: usize,
    pub alpha: usize,
    pub class: usize,
    /// `|N(C) ∩ S_X|` for the current choice.
    pub chosen_neighbours: usize,
    pub tag: CapTag,
    /// Most members the clique may contribute, already clamped to its size.
    pub cap: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TwinDecomposition {
    pub cliques: Vec<CliqueInfo>,
    /// Clique indices of each twin class, grouped by `X`-neighbourhood.
    pub classes: Vec<Vec<usize>>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Decomposition {
    Feasible(TwinDecomposition),
    /// Some clique's weakest vertex is already saturated by `S_X`.
    InfeasibleGuess {
        clique: Vec<usize>,
    },
}

/// Cliques of `G - X` with their capacities under `s_x`.
pub fn decompose(instance: &Instance, cover: &VertexSet, s_x: &VertexSet) -> Result<Decomposition> {
    let g = instance.graph();
    if !is_twin_cover(g, cover) {
        return Err(Error::InvalidCover(format!(
            "{:?} is not a twin cover",
            cover.one_based()
        )));
    }
    if let Some(v) = s_x.iter().find(|&v| !cover.contains(v)) {
        return Err(Error::Precondition(format!(
            "vertex {} chosen from the cover is not in it",
            v + 1
        )));
    }
    let rest: Vec<usize> = (0..g.vertex_count())
        .filter(|&v| !cover.contains(v))
        .collect();
    let components = g.induced(&rest).components();

    let mut cliques = Vec::with_capacity(components.len());
    let mut class_index: BTreeMap<Vec<usize>, usize> = BTreeMap::new();
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for comp in components {
        let mut members: Vec<usize> = comp.into_iter().map(|i| rest[i]).collect();
        let x_neighbours: Vec<usize> = g
            .neighbours(members[0])
            .iter()
            .copied()
            .filter(|&w| cover.contains(w))
            .collect();
        let chosen_neighbours = x_neighbours.iter().filter(|&&w| s_x.contains(w)).count();
        members.sort_by_key(|&v| (instance.threshold(v), v));
        let min_threshold = instance.threshold(members[0]);
        let alpha = members
            .iter()
            .filter(|&&v| instance.threshold(v) == min_threshold)
            .count();

        let room = min_threshold as i64 - chosen_neighbours as i64;
        let (tag, cap) = if alpha as i64 > room {
            (CapTag::Strict, room - 1)
        } else {
            (CapTag::Loose, room)
        };
        if cap < 0 {
            members.sort_unstable();
            return Ok(Decomposition::InfeasibleGuess { clique: members });
        }
        let class = *class_index.entry(x_neighbours.clone()).or_insert_with(|| {
            classes.push(Vec::new());
            classes.len() - 1
        });
        classes[class].push(cliques.len());
        cliques.push(CliqueInfo {
            cap: (cap as usize).min(members.len()),
            members,
            x_neighbours,
            min_threshold,
            alpha,
            class,
            chosen_neighbours,
            tag,
        });
    }
    Ok(Decomposition::Feasible(TwinDecomposition {
        cliques,
        classes,
    }))
}

/// One variable per twin class bounded by the summed clique capacities, and
/// one constraint per cover vertex counting its chosen neighbours in `X` and
/// in the adjacent classes.
pub fn build_tc_ilp(
    decomp: &TwinDecomposition,
    instance: &Instance,
    cover: &VertexSet,
    s_x: &VertexSet,
) -> IlpModel {
    let g = instance.graph();
    let mut model = IlpModel::new();
    for (i, class) in decomp.classes.iter().enumerate() {
        let cap: usize = class.iter().map(|&c| decomp.cliques[c].cap).sum();
        let x = model.add_var(format!("x{}", i + 1), 0, cap as i64);
        model.set_objective(x, 1);
    }
    for u in cover.iter() {
        let inside = g.neighbours(u).iter().filter(|&&w| s_x.contains(w)).count() as i64;
        let terms: Vec<(usize, i64)> = decomp
            .classes
            .iter()
            .enumerate()
            .filter(|(_, class)| {
                decomp.cliques[class[0]]
                    .x_neighbours
                    .binary_search(&u)
                    .is_ok()
            })
            .map(|(i, _)| (i, 1))
            .collect();
        model.add_le(&terms, instance.threshold(u) as i64 - 1 - inside);
    }
    model
}

/// Spreads each class total over its cliques, largest capacity first, and
/// takes members of each clique in threshold order.
pub fn reconstruct(
    decomp: &TwinDecomposition,
    s_x: &VertexSet,
    counts: &[i64],
) -> Result<VertexSet> {
    let mut out: Vec<usize> = s_x.iter().collect();
    for (class, &total) in decomp.classes.iter().zip(counts) {
        let mut order = class.clone();
        order.sort_by_key(|&c| std::cmp::Reverse(decomp.cliques[c].cap));
        let mut left = total as usize;
        for c in order {
            let take = left.min(decomp.cliques[c].cap);
            out.extend(&decomp.cliques[c].members[..take]);
            left -= take;
        }
        if left > 0 {
            return Err(Error::Internal("class total exceeds its capacity".into()));
        }
    }
    Ok(VertexSet::new(out))
}

pub fn solve_twincover(instance: &Instance, cover: &VertexSet) -> Result<SolveResult> {
    if cover.len() > MAX_COVER {
        return Err(Error::SizeLimit {
            what: "twin cover size",
            limit: MAX_COVER,
        });
    }
    if !is_twin_cover(instance.graph(), cover) {
        return Err(Error::InvalidCover(format!(
            "{:?} is not a twin cover",
            cover.one_based()
        )));
    }
    let xs = cover.as_slice();
    let mut best: Option<VertexSet> = None;
    let (mut tried, mut infeasible) = (0u64, 0u64);
    for mask in 0u64..1 << xs.len() {
        tried += 1;
        let s_x: VertexSet = (0..xs.len())
            .filter(|b| mask >> b & 1 == 1)
            .map(|b| xs[b])
            .collect();
        let decomp = match decompose(instance, cover, &s_x)? {
            Decomposition::Feasible(d) => d,
            Decomposition::InfeasibleGuess { .. } => {
                infeasible += 1;
                continue;
            }
        };
        let model = build_tc_ilp(&decomp, instance, cover, &s_x);
        let IlpOutcome::Optimal(sol) = maximize(&model)? else {
            infeasible += 1;
            continue;
        };
        let total = s_x.len() + sol.objective_value as usize;
        if best.as_ref().is_none_or(|b| total > b.len()) {
            best = Some(reconstruct(&decomp, &s_x, &sol.assignment)?);
        }
    }
    let witness =
        best.ok_or_else(|| Error::Internal("empty choice from the cover was infeasible".into()))?;
    let mut stats = BTreeMap::new();
    stats.insert("cover_size", xs.len() as u64);
    stats.insert("guesses", tried);
    stats.insert("infeasible_guesses", infeasible);
    SolveResult::verified(instance, witness, SolverTag::TwinCover, stats)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn feasible(d: Decomposition) -> TwinDecomposition {
        match d {
            Decomposition::Feasible(d) => d,
            other => panic!("expected feasible, got {other:?}"),
        }
    }

    #[test]
    fn cover_sizes() {
        assert_eq!(
            find_twin_cover(&Graph::complete(4), 3),
            Some(VertexSet::empty())
        );
        assert_eq!(
            find_twin_cover(&Graph::path(3), 3),
            Some(VertexSet::new(vec![1]))
        );
        let c5 = find_twin_cover(&Graph::cycle(5), 5).unwrap();
        assert_eq!(c5.len(), 3);
        assert!(is_twin_cover(&Graph::cycle(5), &c5));
        assert_eq!(find_twin_cover(&Graph::cycle(5), 2), None);
    }

    #[test]
    fn loose_clique_capacity() {
        let inst = Instance::new(Graph::complete(3), vec![2, 3, 3]).unwrap();
        let d = feasible(decompose(&inst, &VertexSet::empty(), &VertexSet::empty()).unwrap());
        assert_eq!(d.cliques[0].tag, CapTag::Loose);
        assert_eq!(d.cliques[0].cap, 2);
    }

    #[test]
    fn saturated_clique_is_infeasible() {
        // Triangle 0,1,2 with thresholds (2,3,3) joined to cover vertices 3,4.
        let mut g = Graph::complete(3);
        for x in [3, 4] {
            g.add_vertex();
            for v in 0..3 {
                g.add_edge(v, x).unwrap();
            }
        }
        let inst = Instance::new(g, vec![2, 3, 3, 5, 5]).unwrap();
        let cover = VertexSet::new(vec![3, 4]);
        let d = decompose(&inst, &cover, &cover).unwrap();
        assert_eq!(
            d,
            Decomposition::InfeasibleGuess {
                clique: vec![0, 1, 2]
            }
        );
        assert!(matches!(
            decompose(&inst, &cover, &VertexSet::empty()).unwrap(),
            Decomposition::Feasible(_)
        ));
    }

    #[test]
    fn cover_vertex_constraint() {
        // u = 3 joined to a triangle with thresholds (2,3,3): one class, cap 2.
        let mut g = Graph::complete(3);
        g.add_vertex();
        for v in 0..3 {
            g.add_edge(v, 3).unwrap();
        }
        let inst = Instance::new(g, vec![2, 3, 3, 2]).unwrap();
        let cover = VertexSet::new(vec![3]);
        let d = feasible(decompose(&inst, &cover, &VertexSet::empty()).unwrap());
        assert_eq!(d.cliques[0].cap, 2);
        let m = build_tc_ilp(&d, &inst, &cover, &VertexSet::empty());
        assert_eq!(m.constraints[0].rhs, 1);
        assert_eq!(maximize(&m).unwrap().solution().unwrap().objective_value, 1);
    }

    #[test]
    fn chosen_cover_neighbours_count() {
        let inst = Instance::uniform(Graph::complete(2), 2).unwrap();
        let cover = VertexSet::new(vec![0, 1]);
        let d = feasible(decompose(&inst, &cover, &cover).unwrap());
        let m = build_tc_ilp(&d, &inst, &cover, &cover);
        assert!(m.constraints.iter().all(|c| c.rhs == 0));
    }

    #[test]
    fn small_answers() {
        let k4 = Instance::uniform(Graph::complete(4), 3).unwrap();
        assert_eq!(
            solve_twincover(&k4, &VertexSet::empty()).unwrap().max_size,
            2
        );
        let p3 = Instance::new(Graph::path(3), vec![1, 2, 1]).unwrap();
        assert_eq!(
            solve_twincover(&p3, &VertexSet::new(vec![1]))
                .unwrap()
                .max_size,
            1
        );
        let k5 = Instance::uniform(Graph::complete(5), 1).unwrap();
        assert_eq!(
            solve_twincover(&k5, &VertexSet::empty()).unwrap().max_size,
            0
        );
    }

    #[test]
    fn bad_cover_rejected() {
        let p3 = Instance::uniform(Graph::path(3), 1).unwrap();
        assert!(matches!(
            solve_twincover(&p3, &VertexSet::empty()),
            Err(Error::InvalidCover(_))
        ));
    }
}
