//! Exhaustive source instances for the reduction equivalence checks.

use harmless::oracle::{MrssInstance, WeightedGraph};

/// Connected weighted graphs with at most two edges and weights in `1..=w`.
pub fn small_weighted_graphs(w: usize, r: usize) -> Vec<WeightedGraph> {
    let mut out = vec![WeightedGraph::new(1, vec![], r).unwrap()];
    for a in 1..=w {
        out.push(WeightedGraph::new(2, vec![(0, 1, a)], r).unwrap());
        for b in 1..=w {
            out.push(WeightedGraph::new(3, vec![(0, 1, a), (1, 2, b)], r).unwrap());
        }
    }
    out
}

/// Cases where some vertex must carry more weight than `r` allows.
pub fn overloaded_weighted_graphs() -> Vec<WeightedGraph> {
    vec![
        WeightedGraph::new(2, vec![(0, 1, 4)], 3).unwrap(),
        WeightedGraph::new(2, vec![(0, 1, 5)], 4).unwrap(),
        WeightedGraph::new(3, vec![(0, 1, 4), (1, 2, 4)], 3).unwrap(),
        WeightedGraph::new(2, vec![(0, 1, 5)], 5).unwrap(),
    ]
}

fn vectors(k: usize, max: usize) -> Vec<Vec<usize>> {
    let mut out = vec![vec![]];
    for _ in 0..k {
        out = out
            .into_iter()
            .flat_map(|p| (0..=max).map(move |x| [p.clone(), vec![x]].concat()))
            .collect();
    }
    out
}

/// All instances with at most two vectors, dimension at most two and entries
/// at most two that satisfy the generator's preconditions.
pub fn small_mrss() -> Vec<MrssInstance> {
    let mut out = Vec::new();
    for k in 1..=2 {
        let vs = vectors(k, 2);
        for n in 1..=2 {
            let mut sets: Vec<Vec<Vec<usize>>> = vec![vec![]];
            for _ in 0..n {
                sets = sets
                    .into_iter()
                    .flat_map(|p| {
                        vs.iter()
                            .map(move |v| [p.clone(), vec![v.clone()]].concat())
                    })
                    .collect();
            }
            for set in sets {
                for target in &vs {
                    let ok = (0..k)
                        .all(|i| target[i] >= 1 && target[i] <= set.iter().map(|s| s[i]).sum());
                    if !ok {
                        continue;
                    }
                    for budget in 0..=n {
                        out.push(MrssInstance::new(set.clone(), target.clone(), budget).unwrap());
                    }
                }
            }
        }
    }
    out
}
