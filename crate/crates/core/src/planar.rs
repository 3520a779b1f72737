//! Decision pipeline for "is there a harmless set of size at least k":
//! threshold clamping, red-vertex deletion, the long-shortest-path witness,
//! and an exact search on whatever is left.

use crate::error::{Error, Result};
use crate::instance::{Instance, VertexSet};
use crate::oracle::{max_harmless_excluding, DEFAULT_BUDGET};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Colour {
    Red,
    Green,
}

/// Red iff some neighbour has threshold 1: such a vertex is in no harmless set.
pub fn color_vertices(instance: &Instance) -> Vec<Colour> {
    let g = instance.graph();
    (0..instance.vertex_count())
        .map(|v| {
            if g.neighbours(v).iter().any(|&w| instance.threshold(w) == 1) {
                Colour::Red
            } else {
                Colour::Green
            }
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Reduced {
    pub instance: Instance,
    /// Reduced id -> original id.
    pub original: Vec<usize>,
    /// Red vertices that survived, in reduced ids. They stay excluded from
    /// every solution of the reduced instance.
    pub forbidden: VertexSet,
    /// Deleted original ids, in deletion order.
    pub deleted: Vec<usize>,
}

/// Deletes every red vertex whose neighbours are all red.
///
/// Colours are those of the input instance. Recolouring after a deletion
/// would be unsound: in `K2` with both thresholds 1, removing one endpoint
/// leaves an isolated vertex that looks green although the original
/// instance admits no non-empty harmless set. Keeping the input colours and
/// forbidding the surviving red vertices keeps the optimum unchanged.
/// Deletions only remove red vertices, so a single ascending pass reaches
/// the fixpoint.
pub fn apply_reduction1(instance: &Instance) -> Reduced {
    let colours = color_vertices(instance);
    let g = instance.graph();
    let deleted: Vec<usize> = (0..instance.vertex_count())
        .filter(|&v| {
            colours[v] == Colour::Red && g.neighbours(v).iter().all(|&w| colours[w] == Colour::Red)
        })
        .collect();
    let original: Vec<usize> = (0..instance.vertex_count())
        .filter(|v| deleted.binary_search(v).is_err())
        .collect();
    let forbidden = original
        .iter()
        .enumerate()
        .filter(|&(_, &v)| colours[v] == Colour::Red)
        .map(|(i, _)| i)
        .collect();
    Reduced {
        instance: instance.induced(&original),
        original,
        forbidden,
        deleted,
    }
}

/// A harmless set of size at least `k` read off a shortest path of length
/// `6k` inside one component, if such a path exists and the set checks out.
///
/// Returns `Ok(None)` when no component is that long or when the assembled
/// set fails verification. The path found is returned alongside the set.
pub fn diameter_witness(instance: &Instance, k: usize) -> Result<Option<(VertexSet, Vec<usize>)>> {
    diameter_witness_excluding(instance, &VertexSet::empty(), k)
}

/// As [`diameter_witness`], treating `forbidden` as red: after deletion a
/// vertex may have lost the threshold-1 neighbour that made it red.
pub fn diameter_witness_excluding(
    instance: &Instance,
    forbidden: &VertexSet,
    k: usize,
) -> Result<Option<(VertexSet, Vec<usize>)>> {
    if k < 1 {
        return Err(Error::Precondition("k must be at least 1".into()));
    }
    let g = instance.graph();
    let need = 6 * k;
    let mut colours = color_vertices(instance);
    for v in forbidden.iter() {
        colours[v] = Colour::Red;
    }
    for comp in g.components() {
        if comp.len() <= need {
            continue;
        }
        for &src in &comp {
            let dist = g.bfs(src);
            let Some(far) = comp
                .iter()
                .copied()
                .find(|&v| dist[v].is_some_and(|d| d >= need))
            else {
                continue;
            };
            let parents = g.bfs_parents(src);
            let mut path = vec![far];
            while let Some(p) =
                parents[*path.last().unwrap()].filter(|&p| p != *path.last().unwrap())
            {
                path.push(p);
            }
            path.reverse();
            path.truncate(need + 1);
            let picked: Option<Vec<usize>> = (0..=k)
                .map(|i| {
                    let v = path[6 * i];
                    if colours[v] == Colour::Green {
                        Some(v)
                    } else {
                        g.neighbours(v)
                            .iter()
                            .copied()
                            .find(|&w| colours[w] == Colour::Green)
                    }
                })
                .collect();
            let Some(picked) = picked else {
                return Ok(None);
            };
            let set = VertexSet::new(picked);
            if set.len() >= k && instance.is_harmless(&set)? {
                return Ok(Some((set, path)));
            }
            return Ok(None);
        }
    }
    Ok(None)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PlanarRule {
    Diameter,
    Kernel,
}

impl PlanarRule {
    pub fn name(self) -> &'static str {
        match self {
            PlanarRule::Diameter => "diameter",
            PlanarRule::Kernel => "kernel",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KernelStats {
    pub deleted: usize,
    pub kernel_vertices: usize,
    /// Length of the long path when the diameter rule fired.
    pub diameter: Option<usize>,
    /// Optimum of the kernel when it was solved.
    pub kernel_optimum: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlanarDecision {
    pub answer: bool,
    pub witness: Option<VertexSet>,
    pub rule: PlanarRule,
    pub path_used: Option<Vec<usize>>,
    pub kernel_stats: KernelStats,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PlanarOptions {
    pub budget: u64,
    /// Skip the diameter rule and always solve the kernel.
    pub diameter_rule: bool,
}

impl Default for PlanarOptions {
    fn default() -> Self {
        PlanarOptions {
            budget: DEFAULT_BUDGET,
            diameter_rule: true,
        }
    }
}

pub fn solve_planar(instance: &Instance, k: usize) -> Result<PlanarDecision> {
    solve_planar_with(instance, k, PlanarOptions::default())
}

/// Planarity is not checked; every step is sound on arbitrary graphs and
/// only the size of the kernel depends on it.
pub fn solve_planar_with(
    instance: &Instance,
    k: usize,
    options: PlanarOptions,
) -> Result<PlanarDecision> {
    if k < 1 {
        return Err(Error::Precondition("k must be at least 1".into()));
    }
    let clamped = instance.clamp_thresholds(k);
    let reduced = apply_reduction1(&clamped);
    let mut stats = KernelStats {
        deleted: reduced.deleted.len(),
        kernel_vertices: reduced.instance.vertex_count(),
        diameter: None,
        kernel_optimum: None,
    };
    let lift = |set: &VertexSet| -> VertexSet { set.iter().map(|v| reduced.original[v]).collect() };

    if options.diameter_rule {
        if let Some((set, path)) =
            diameter_witness_excluding(&reduced.instance, &reduced.forbidden, k)?
        {
            let witness = lift(&set);
            if !instance.is_harmless(&witness)? {
                return Err(Error::Internal(
                    "diameter witness fails on the input instance".into(),
                ));
            }
            stats.diameter = Some(path.len() - 1);
            let path = path.iter().map(|&v| reduced.original[v]).collect();
            return Ok(PlanarDecision {
                answer: true,
                witness: Some(witness),
                rule: PlanarRule::Diameter,
                path_used: Some(path),
                kernel_stats: stats,
            });
        }
    }

    let solved = match max_harmless_excluding(&reduced.instance, &reduced.forbidden, options.budget)
    {
        Ok(r) => r,
        Err(Error::OracleLimit(_)) => {
            return Err(Error::KernelTooLarge(format!(
                "{} vertices left after deletion exceed the search budget of {}",
                reduced.instance.vertex_count(),
                options.budget
            )))
        }
        Err(e) => return Err(e),
    };
    stats.kernel_optimum = Some(solved.max_size);
    let answer = solved.max_size >= k;
    let witness = if answer {
        let w = lift(&solved.witness);
        if !instance.is_harmless(&w)? {
            return Err(Error::Internal(
                "kernel witness fails on the input instance".into(),
            ));
        }
        Some(w)
    } else {
        None
    };
    Ok(PlanarDecision {
        answer,
        witness,
        rule: PlanarRule::Kernel,
        path_used: None,
        kernel_stats: stats,
    })
}
