//! Solver parameterized by neighbourhood diversity.
//!
//! Vertices are grouped into twin classes; a harmless set is then described
//! by how many vertices it takes from each class. For every clique class we
//! guess whether the count stays below the number of minimum-threshold
//! members or reaches it, and each guess becomes one small integer program.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::ilp::{maximize, IlpModel, IlpOutcome};
use crate::instance::{Instance, VertexSet};
use crate::solve::{SolveResult, SolverTag};

/// Upper limit on clique classes, i.e. on the exponent of the guess sweep.
pub const MAX_CLIQUE_CLASSES: usize = 20;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ClassKind {
    Clique,
    Independent,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TypeClass {
    pub members: Vec<usize>,
    pub kind: ClassKind,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TypePartition {
    pub classes: Vec<TypeClass>,
    /// Sorted class indices fully joined to each class.
    pub type_graph: Vec<Vec<usize>>,
    /// Class index of every vertex.
    pub class_of: Vec<usize>,
}

/// Tag of a clique class in one guess.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CliqueTag {
    /// Fewer members chosen than there are minimum-threshold members.
    Below,
    /// Every minimum-threshold member is chosen.
    AtLeast,
}

/// One tag per clique class, `None` for independent classes.
pub type NdGuess = Vec<Option<CliqueTag>>;

/// `N(u) \ {v} == N(v) \ {u}`.
pub fn are_twins(g: &Graph, u: usize, v: usize) -> bool {
    let a = g.neighbours(u).iter().filter(|&&w| w != v);
    let b = g.neighbours(v).iter().filter(|&&w| w != u);
    a.eq(b)
}

/// Twin classes in order of their smallest member.
pub fn nd_partition(g: &Graph) -> TypePartition {
    let n = g.vertex_count();
    let mut classes: Vec<Vec<usize>> = Vec::new();
    let mut class_of = vec![0; n];
    for (v, slot) in class_of.iter_mut().enumerate() {
        match classes.iter().position(|c| are_twins(g, c[0], v)) {
            Some(i) => {
                classes[i].push(v);
                *slot = i;
            }
            None => {
                *slot = classes.len();
                classes.push(vec![v]);
            }
        }
    }
    let type_graph = classes
        .iter()
        .enumerate()
        .map(|(i, c)| {
            let mut adj: Vec<usize> = g
                .neighbours(c[0])
                .iter()
                .map(|&w| class_of[w])
                .filter(|&j| j != i)
                .collect();
            adj.sort_unstable();
            adj.dedup();
            adj
        })
        .collect();
    let classes = classes
        .into_iter()
        .map(|members| {
            let kind = if members.len() > 1 && g.has_edge(members[0], members[1]) {
                ClassKind::Clique
            } else {
                ClassKind::Independent
            };
            TypeClass { members, kind }
        })
        .collect();
    TypePartition {
        classes,
        type_graph,
        class_of,
    }
}

impl TypePartition {
    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn clique_classes(&self) -> Vec<usize> {
        (0..self.classes.len())
            .filter(|&i| self.classes[i].kind == ClassKind::Clique)
            .collect()
    }

    /// Checks the defining properties directly against `g`; returns the
    /// first failure.
    pub fn check(&self, g: &Graph) -> std::result::Result<(), String> {
        let mut seen = vec![false; g.vertex_count()];
        for c in &self.classes {
            for &v in &c.members {
                if std::mem::replace(&mut seen[v], true) {
                    return Err(format!("vertex {} in two classes", v + 1));
                }
            }
        }
        if seen.iter().any(|s| !s) {
            return Err("classes do not cover all vertices".into());
        }
        for (i, c) in self.classes.iter().enumerate() {
            for (a, &u) in c.members.iter().enumerate() {
                for &v in &c.members[a + 1..] {
                    if g.has_edge(u, v) != (c.kind == ClassKind::Clique) {
                        return Err(format!("class {i} is not a {:?}", c.kind));
                    }
                }
            }
            for (j, d) in self.classes.iter().enumerate().skip(i + 1) {
                let joined = self.type_graph[i].binary_search(&j).is_ok();
                for &u in &c.members {
                    for &v in &d.members {
                        if g.has_edge(u, v) != joined {
                            return Err(format!(
                                "classes {i} and {j} are neither joined nor separated"
                            ));
                        }
                    }
                }
            }
        }
        Ok(())
    }
}

/// Smallest threshold in the class and how many members attain it.
pub fn class_threshold(instance: &Instance, class: &TypeClass) -> (usize, usize) {
    let t = class
        .members
        .iter()
        .map(|&v| instance.threshold(v))
        .min()
        .unwrap_or(0);
    let alpha = class
        .members
        .iter()
        .filter(|&&v| instance.threshold(v) == t)
        .count();
    (t, alpha)
}

/// Integer program whose feasible points are exactly the per-class counts of
/// harmless sets consistent with `guess`.
pub fn build_nd_ilp(instance: &Instance, partition: &TypePartition, guess: &NdGuess) -> IlpModel {
    let mut model = IlpModel::new();
    for (i, c) in partition.classes.iter().enumerate() {
        let x = model.add_var(format!("x{}", i + 1), 0, c.members.len() as i64);
        model.set_objective(x, 1);
    }
    for (i, c) in partition.classes.iter().enumerate() {
        let (t, alpha) = class_threshold(instance, c);
        let (t, alpha) = (t as i64, alpha as i64);
        let mut terms: Vec<(usize, i64)> =
            partition.type_graph[i].iter().map(|&j| (j, 1)).collect();
        match guess[i] {
            None => model.add_le(&terms, t - 1),
            Some(CliqueTag::Below) => {
                terms.push((i, 1));
                model.add_le(&terms, t - 1);
                model.add_le(&[(i, 1)], alpha - 1);
            }
            Some(CliqueTag::AtLeast) => {
                // (x_i - 1) + Σ x_j <= t - 1
                terms.push((i, 1));
                model.add_le(&terms, t);
                model.add_ge(&[(i, 1)], alpha);
            }
        }
    }
    model
}

/// Takes `counts[i]` members of every class, lowest threshold first and
/// smallest id among equal thresholds.
pub fn reconstruct(instance: &Instance, partition: &TypePartition, counts: &[i64]) -> VertexSet {
    let mut out = Vec::new();
    for (c, &x) in partition.classes.iter().zip(counts) {
        let mut members = c.members.clone();
        members.sort_by_key(|&v| (instance.threshold(v), v));
        out.extend(members.into_iter().take(x as usize));
    }
    VertexSet::new(out)
}

/// All guesses over the clique classes of `partition`, in sweep order.
pub fn guesses(partition: &TypePartition) -> Result<Vec<NdGuess>> {
    let cliques = partition.clique_classes();
    if cliques.len() > MAX_CLIQUE_CLASSES {
        return Err(Error::SizeLimit {
            what: "clique class count",
            limit: MAX_CLIQUE_CLASSES,
        });
    }
    Ok((0u64..1 << cliques.len())
        .map(|mask| {
            let mut guess = vec![None; partition.len()];
            for (bit, &i) in cliques.iter().enumerate() {
                guess[i] = Some(if mask >> bit & 1 == 1 {
                    CliqueTag::AtLeast
                } else {
                    CliqueTag::Below
                });
            }
            guess
        })
        .collect())
}

pub fn solve_nd(instance: &Instance) -> Result<SolveResult> {
    let partition = nd_partition(instance.graph());
    let all = guesses(&partition)?;
    let mut best: Option<Vec<i64>> = None;
    let mut best_value = -1;
    let mut feasible = 0u64;
    for guess in &all {
        let model = build_nd_ilp(instance, &partition, guess);
        if let IlpOutcome::Optimal(sol) = maximize(&model)? {
            feasible += 1;
            if sol.objective_value > best_value {
                best_value = sol.objective_value;
                best = Some(sol.assignment);
            }
        }
    }
    // The all-Below guess admits x = 0, so some guess is always feasible.
    let counts = best.ok_or_else(|| Error::Internal("no feasible guess".into()))?;
    let witness = reconstruct(instance, &partition, &counts);
    let mut stats = BTreeMap::new();
    stats.insert("classes", partition.len() as u64);
    stats.insert("guesses", all.len() as u64);
    stats.insert("feasible_guesses", feasible);
    SolveResult::verified(instance, witness, SolverTag::NeighbourhoodDiversity, stats)
}
