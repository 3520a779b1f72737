mod common;

use common::{connected_graph, naive_max, random_instance};
use harmless::oracle::{max_harmless_bruteforce, max_harmless_excluding, DEFAULT_BUDGET};
use harmless::planar::{
    apply_reduction1, color_vertices, diameter_witness_excluding, solve_planar, solve_planar_with,
    Colour, PlanarOptions, PlanarRule,
};
use harmless::{Graph, Instance};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

/// Sparse instances: long paths, caterpillars and cycles with low thresholds,
/// mixed with denser random graphs.
fn corpus(seed: u64, count: usize) -> Vec<Instance> {
    let mut rng = StdRng::seed_from_u64(seed);
    (0..count)
        .map(|i| {
            let n = rng.gen_range(4..=12);
            let g = match i % 4 {
                0 => Graph::path(n),
                1 => Graph::cycle(n),
                2 => connected_graph(&mut rng, n, 0.05),
                _ => {
                    let p = rng.gen_range(0.0..0.6);
                    connected_graph(&mut rng, n, p)
                }
            };
            let t = (0..n)
                .map(|v| rng.gen_range(1..=g.degree(v).max(1)))
                .collect();
            Instance::new(g, t).unwrap()
        })
        .collect()
}

#[test]
fn reduction1_preserves_optimum() {
    let mut rng = StdRng::seed_from_u64(51);
    let mut deleted = 0;
    for _ in 0..200 {
        let inst = random_instance(&mut rng, 1, 12);
        let red = apply_reduction1(&inst);
        deleted += red.deleted.len();
        let before = naive_max(&inst);
        let after = max_harmless_excluding(&red.instance, &red.forbidden, DEFAULT_BUDGET).unwrap();
        assert_eq!(before, after.max_size);
    }
    assert!(deleted > 0);
}

/// Deleting one vertex at a time and recolouring from the current graph.
fn recoloured_fixpoint(inst: &Instance) -> Instance {
    let mut cur = inst.clone();
    loop {
        let colours = color_vertices(&cur);
        let g = cur.graph();
        let Some(v) = (0..cur.vertex_count()).find(|&v| {
            colours[v] == Colour::Red && g.neighbours(v).iter().all(|&w| colours[w] == Colour::Red)
        }) else {
            return cur;
        };
        let keep: Vec<usize> = (0..cur.vertex_count()).filter(|&w| w != v).collect();
        cur = cur.induced(&keep);
    }
}

#[test]
fn recolouring_after_each_deletion_is_unsound() {
    let k2 = Instance::uniform(Graph::complete(2), 1).unwrap();
    assert_eq!(naive_max(&k2), 0);
    let reduced = recoloured_fixpoint(&k2);
    assert_eq!(reduced.vertex_count(), 1);
    assert_eq!(naive_max(&reduced), 1);
}

#[test]
fn diameter_witnesses_verify() {
    let mut emitted = 0;
    for inst in corpus(52, 300) {
        let red = apply_reduction1(&inst);
        for k in 1..=2 {
            if let Some((set, path)) =
                diameter_witness_excluding(&red.instance, &red.forbidden, k).unwrap()
            {
                emitted += 1;
                assert!(set.len() >= k);
                let lifted = set.iter().map(|v| red.original[v]).collect();
                assert!(inst.is_harmless(&lifted).unwrap());
                assert_eq!(path.len(), 6 * k + 1);
            }
        }
    }
    assert!(emitted > 10, "only {emitted} witnesses");
}

#[test]
fn pipeline_matches_oracle_on_both_paths() {
    let (mut by_diameter, mut by_kernel) = (0, 0);
    for inst in corpus(53, 200) {
        let h = max_harmless_bruteforce(&inst, DEFAULT_BUDGET)
            .unwrap()
            .max_size;
        for k in 1..=inst.vertex_count() {
            let d = solve_planar(&inst, k).unwrap();
            assert_eq!(d.answer, h >= k);
            match d.rule {
                PlanarRule::Diameter => by_diameter += 1,
                PlanarRule::Kernel => by_kernel += 1,
            }
            if let Some(w) = &d.witness {
                assert!(w.len() >= k && inst.is_harmless(w).unwrap());
            }
            let off = PlanarOptions {
                diameter_rule: false,
                ..PlanarOptions::default()
            };
            let d = solve_planar_with(&inst, k, off).unwrap();
            assert_eq!(d.answer, h >= k);
            assert_eq!(d.rule, PlanarRule::Kernel);
        }
    }
    assert!(by_diameter > 0 && by_kernel > 0);
}

#[test]
fn clamping_does_not_change_decisions() {
    for inst in corpus(54, 100)
        .into_iter()
        .filter(|i| i.vertex_count() <= 10)
    {
        for k in 1..=inst.vertex_count() {
            let plain = solve_planar(&inst, k).unwrap().answer;
            assert_eq!(
                plain,
                solve_planar(&inst.clamp_thresholds(k), k).unwrap().answer
            );
        }
    }
}

#[test]
fn oversized_kernel_is_reported() {
    let inst = Instance::uniform(Graph::complete(20), 10).unwrap();
    let opts = PlanarOptions {
        budget: 100,
        ..PlanarOptions::default()
    };
    assert!(matches!(
        solve_planar_with(&inst, 15, opts),
        Err(harmless::Error::KernelTooLarge(_))
    ));
}
