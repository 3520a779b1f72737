//! Graph families with hand-built irredundant c-expressions of width ≤ 3.

use harmless::cwd::{parse_cexpr, CExpr};
use harmless::{Graph, Instance};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

pub struct Case {
    pub name: String,
    pub instance: Instance,
    pub expr: CExpr,
}

fn wrap(width: usize, body: String) -> CExpr {
    parse_cexpr(&format!("(cexpr {width} {body})")).unwrap()
}

/// Width 3; the newest vertex carries label 2, earlier ones label 1.
pub fn path_expr(n: usize) -> CExpr {
    let mut e = "(v 1 2)".to_string();
    for i in 2..=n {
        e = format!("(rho 3 2 (rho 2 1 (eta 3 2 (union (v {i} 3) {e}))))");
    }
    wrap(3, e)
}

pub fn clique_expr(n: usize) -> CExpr {
    let mut e = "(v 1 1)".to_string();
    for i in 2..=n {
        e = format!("(rho 2 1 (eta 1 2 (union (v {i} 2) {e})))");
    }
    wrap(2, e)
}

fn chain(ids: impl Iterator<Item = usize>, label: usize) -> String {
    ids.map(|i| format!("(v {i} {label})"))
        .reduce(|a, b| format!("(union {a} {b})"))
        .unwrap()
}

pub fn biclique_expr(a: usize, b: usize) -> CExpr {
    wrap(
        2,
        format!(
            "(eta 1 2 (union {} {}))",
            chain(1..=a, 1),
            chain(a + 1..=a + b, 2)
        ),
    )
}

/// Random cotree over `ids`; every vertex ends with label 1.
fn cograph(rng: &mut StdRng, ids: &[usize], edges: &mut Vec<(usize, usize)>) -> String {
    if ids.len() == 1 {
        return format!("(v {} 1)", ids[0]);
    }
    let cut = rng.gen_range(1..ids.len());
    let (l, r) = ids.split_at(cut);
    let le = cograph(rng, l, edges);
    let re = cograph(rng, r, edges);
    if rng.gen_bool(0.5) {
        format!("(union {le} {re})")
    } else {
        for &u in l {
            for &v in r {
                edges.push((u - 1, v - 1));
            }
        }
        format!("(rho 2 1 (eta 1 2 (union {le} (rho 1 2 {re}))))")
    }
}

fn thresholds(rng: &mut StdRng, g: &Graph) -> Vec<usize> {
    (0..g.vertex_count())
        .map(|v| rng.gen_range(1..=g.degree(v).max(1)))
        .collect()
}

/// At least thirty cases with `n ≤ 10`; the `K2` case with unit thresholds
/// is first.
pub fn corpus() -> Vec<Case> {
    let mut rng = StdRng::seed_from_u64(41);
    let mut out = vec![Case {
        name: "clique 2, t=1".into(),
        instance: Instance::uniform(Graph::complete(2), 1).unwrap(),
        expr: clique_expr(2),
    }];
    for n in 2..=10 {
        let g = Graph::path(n);
        let t = thresholds(&mut rng, &g);
        out.push(Case {
            name: format!("path {n}"),
            instance: Instance::new(g, t).unwrap(),
            expr: path_expr(n),
        });
    }
    for n in 3..=8 {
        let g = Graph::complete(n);
        let t = thresholds(&mut rng, &g);
        out.push(Case {
            name: format!("clique {n}"),
            instance: Instance::new(g, t).unwrap(),
            expr: clique_expr(n),
        });
    }
    for (a, b) in [(1, 3), (2, 2), (2, 3), (3, 3), (2, 5), (4, 4), (3, 6)] {
        let g = Graph::complete_bipartite(a, b);
        let t = thresholds(&mut rng, &g);
        out.push(Case {
            name: format!("biclique {a},{b}"),
            instance: Instance::new(g, t).unwrap(),
            expr: biclique_expr(a, b),
        });
    }
    for c in 0..12 {
        let n = rng.gen_range(3..=10);
        let ids: Vec<usize> = (1..=n).collect();
        let mut edges = Vec::new();
        let body = cograph(&mut rng, &ids, &mut edges);
        let g = Graph::from_edges(n, &edges).unwrap();
        let t = thresholds(&mut rng, &g);
        out.push(Case {
            name: format!("cograph {c}"),
            instance: Instance::new(g, t).unwrap(),
            expr: wrap(2, body),
        });
    }
    out
}
