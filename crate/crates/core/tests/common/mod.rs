#![allow(dead_code)]

use harmless::{Graph, Instance};
use rand::rngs::StdRng;
use rand::Rng;

/// Random spanning tree plus each remaining pair with probability `p`.
pub fn connected_graph(rng: &mut StdRng, n: usize, p: f64) -> Graph {
    let mut g = Graph::new(n);
    for v in 1..n {
        let u = rng.gen_range(0..v);
        g.add_edge(u, v).unwrap();
    }
    for u in 0..n {
        for v in u + 1..n {
            if !g.has_edge(u, v) && rng.gen_bool(p) {
                g.add_edge(u, v).unwrap();
            }
        }
    }
    g
}

/// Thresholds drawn uniformly from `1..=max(1, d(v))`.
pub fn valid_thresholds(rng: &mut StdRng, g: &Graph) -> Vec<usize> {
    (0..g.vertex_count())
        .map(|v| rng.gen_range(1..=g.degree(v).max(1)))
        .collect()
}

pub fn random_instance(rng: &mut StdRng, n_lo: usize, n_hi: usize) -> Instance {
    let n = rng.gen_range(n_lo..=n_hi);
    let p = rng.gen_range(0.0..0.6);
    let g = connected_graph(rng, n, p);
    let t = valid_thresholds(rng, &g);
    Instance::new(g, t).unwrap()
}

/// Maximum harmless set size by plain enumeration of all subsets.
pub fn naive_max(instance: &Instance) -> usize {
    let n = instance.vertex_count();
    assert!(n <= 16);
    let g = instance.graph();
    (0u32..1 << n)
        .filter(|&mask| {
            (0..n).all(|v| {
                let inside = g
                    .neighbours(v)
                    .iter()
                    .filter(|&&w| mask >> w & 1 == 1)
                    .count();
                inside < instance.threshold(v)
            })
        })
        .map(|mask| mask.count_ones() as usize)
        .max()
        .unwrap()
}

/// Every integer point in the variable box, in lexicographic order.
pub fn lattice(model: &harmless::ilp::IlpModel) -> Vec<Vec<i64>> {
    let mut points = vec![Vec::new()];
    for var in &model.vars {
        let mut next = Vec::new();
        for p in &points {
            for x in var.lo..=var.hi {
                let mut q: Vec<i64> = p.clone();
                q.push(x);
                next.push(q);
            }
        }
        points = next;
    }
    points
}
