//! Surplus dynamic program over an irredundant c-expression.
//!
//! A key at node `t` records, for a set `S ⊆ V_t` and every label `i`, the
//! number `r(i)` of `i`-vertices in `S` and the surplus
//! `s(i) = min over i-vertices v of t(v) - |N_t(v) ∩ S|` (`INF` when there
//! are no `i`-vertices). Surplus only ever decreases going up the tree, so a
//! key with a non-positive entry can be dropped on sight. At the root the
//! set is harmless exactly when every finite surplus is positive.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::instance::{Instance, VertexSet};
use crate::solve::{SolveResult, SolverTag};

use super::expr::{check_irredundant, eval_cexpr, CExpr, Node};

/// Surplus of a label with no vertices.
pub const INF: i64 = i64::MAX;

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DpKey {
    pub r: Vec<usize>,
    pub s: Vec<i64>,
}

/// How a leaf initialises the surplus of its label.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LeafRule {
    /// The leaf's surplus is its threshold whether or not it is chosen, so
    /// unchosen vertices are constrained too.
    AllVertices,
    /// Only chosen vertices carry a surplus; unchosen leaves report `INF`.
    /// This constrains members of `S` only and can overcount.
    MembersOnly,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DpOptions {
    pub leaf_rule: LeafRule,
    pub prune: bool,
}

impl Default for DpOptions {
    fn default() -> Self {
        DpOptions {
            leaf_rule: LeafRule::AllVertices,
            prune: true,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Provenance {
    Leaf { member: bool },
    Union(DpKey, DpKey),
    Unary(DpKey),
}

/// Reachable keys of every node with one producer each.
#[derive(Debug, Clone)]
pub struct DpTable {
    tables: Vec<BTreeMap<DpKey, Provenance>>,
}

impl DpTable {
    pub fn keys(&self, node: usize) -> impl Iterator<Item = &DpKey> {
        self.tables[node].keys()
    }

    pub fn key_count(&self, node: usize) -> usize {
        self.tables[node].len()
    }

    pub fn max_keys(&self) -> usize {
        self.tables.iter().map(BTreeMap::len).max().unwrap_or(0)
    }
}

pub fn leaf_keys(
    width: usize,
    label: usize,
    threshold: usize,
    rule: LeafRule,
) -> [(DpKey, bool); 2] {
    let t = threshold as i64;
    let make = |member: bool| {
        let mut r = vec![0; width];
        let mut s = vec![INF; width];
        r[label - 1] = member as usize;
        s[label - 1] = match (rule, member) {
            (LeafRule::MembersOnly, false) => INF,
            _ => t,
        };
        (DpKey { r, s }, member)
    };
    [make(false), make(true)]
}

pub fn union_key(a: &DpKey, b: &DpKey) -> DpKey {
    DpKey {
        r: a.r.iter().zip(&b.r).map(|(x, y)| x + y).collect(),
        s: a.s.iter().zip(&b.s).map(|(&x, &y)| x.min(y)).collect(),
    }
}

/// Every `i`-vertex gains `r(j)` chosen neighbours and vice versa; valid
/// because the expression never joins a pair twice.
pub fn eta_key(k: &DpKey, i: usize, j: usize) -> DpKey {
    let (i, j) = (i - 1, j - 1);
    let mut out = k.clone();
    if k.s[i] != INF {
        out.s[i] = k.s[i] - k.r[j] as i64;
    }
    if k.s[j] != INF {
        out.s[j] = k.s[j] - k.r[i] as i64;
    }
    out
}

pub fn rho_key(k: &DpKey, i: usize, j: usize) -> DpKey {
    let (i, j) = (i - 1, j - 1);
    let mut out = k.clone();
    out.r[j] = k.r[i] + k.r[j];
    out.r[i] = 0;
    out.s[j] = k.s[i].min(k.s[j]);
    out.s[i] = INF;
    out
}

fn dead(k: &DpKey) -> bool {
    k.s.iter().any(|&s| s != INF && s <= 0)
}

fn accepting(k: &DpKey) -> bool {
    k.s.iter().all(|&s| s == INF || s >= 1)
}

/// Maps leaf names to instance vertices and checks the expression builds
/// exactly the instance graph, without redundant joins.
fn match_instance(instance: &Instance, expr: &CExpr) -> Result<Vec<usize>> {
    let lg = eval_cexpr(expr);
    let n = instance.vertex_count();
    if lg.names.len() != n {
        return Err(Error::ExpressionMismatch(format!(
            "{} leaves for {} vertices",
            lg.names.len(),
            n
        )));
    }
    let mut to_instance = Vec::with_capacity(n);
    for name in &lg.names {
        match name.parse::<usize>() {
            Ok(id) if (1..=n).contains(&id) => to_instance.push(id - 1),
            _ => {
                return Err(Error::ExpressionMismatch(format!(
                    "leaf `{name}` is not a vertex id in 1..={n}"
                )))
            }
        }
    }
    let g = instance.graph();
    if lg.graph.edge_count() != g.edge_count()
        || lg
            .graph
            .edges()
            .any(|(a, b)| !g.has_edge(to_instance[a], to_instance[b]))
    {
        return Err(Error::ExpressionMismatch("edge sets differ".into()));
    }
    if let Some(node) = check_irredundant(expr) {
        return Err(Error::RedundantExpression { node });
    }
    Ok(to_instance)
}

/// Runs the table bottom-up. `to_instance[k]` is the instance vertex of the
/// `k`-th leaf.
pub fn run_dp(
    instance: &Instance,
    expr: &CExpr,
    to_instance: &[usize],
    options: DpOptions,
) -> DpTable {
    let width = expr.width();
    let mut tables: Vec<BTreeMap<DpKey, Provenance>> = Vec::with_capacity(expr.nodes().len());
    let mut leaf = 0;
    let keep = |k: &DpKey| !options.prune || !dead(k);
    for node in expr.nodes() {
        let mut table = BTreeMap::new();
        match *node {
            Node::Leaf { label, .. } => {
                let t = instance.threshold(to_instance[leaf]);
                leaf += 1;
                for (key, member) in leaf_keys(width, label, t, options.leaf_rule) {
                    if keep(&key) {
                        table.entry(key).or_insert(Provenance::Leaf { member });
                    }
                }
            }
            Node::Union(a, b) => {
                for ka in tables[a].keys() {
                    for kb in tables[b].keys() {
                        let key = union_key(ka, kb);
                        if keep(&key) {
                            table
                                .entry(key)
                                .or_insert_with(|| Provenance::Union(ka.clone(), kb.clone()));
                        }
                    }
                }
            }
            Node::Eta { i, j, child } | Node::Rho { i, j, child } => {
                let is_eta = matches!(node, Node::Eta { .. });
                for k in tables[child].keys() {
                    let key = if is_eta {
                        eta_key(k, i, j)
                    } else {
                        rho_key(k, i, j)
                    };
                    if keep(&key) {
                        table
                            .entry(key)
                            .or_insert_with(|| Provenance::Unary(k.clone()));
                    }
                }
            }
        }
        tables.push(table);
    }
    DpTable { tables }
}

/// Best accepting root key: largest `Σ r`, smallest key among ties.
fn best_root_key(expr: &CExpr, table: &DpTable) -> Option<(usize, DpKey)> {
    let mut best: Option<(usize, DpKey)> = None;
    for k in table.tables[expr.root()].keys().filter(|k| accepting(k)) {
        let h: usize = k.r.iter().sum();
        if best.as_ref().is_none_or(|(b, _)| h > *b) {
            best = Some((h, k.clone()));
        }
    }
    best
}

/// Follows producers from `key` at the root back to the leaves.
fn extract(expr: &CExpr, table: &DpTable, key: DpKey, to_instance: &[usize]) -> VertexSet {
    // Leaf order equals post-order position among leaves.
    let mut leaf_rank = vec![usize::MAX; expr.nodes().len()];
    let mut next = 0;
    for (idx, node) in expr.nodes().iter().enumerate() {
        if matches!(node, Node::Leaf { .. }) {
            leaf_rank[idx] = next;
            next += 1;
        }
    }
    let mut chosen = Vec::new();
    let mut stack = vec![(expr.root(), key)];
    while let Some((idx, key)) = stack.pop() {
        let prov = &table.tables[idx][&key];
        match (&expr.nodes()[idx], prov) {
            (Node::Leaf { .. }, Provenance::Leaf { member }) => {
                if *member {
                    chosen.push(to_instance[leaf_rank[idx]]);
                }
            }
            (Node::Union(a, b), Provenance::Union(ka, kb)) => {
                stack.push((*a, ka.clone()));
                stack.push((*b, kb.clone()));
            }
            (Node::Eta { child, .. } | Node::Rho { child, .. }, Provenance::Unary(k)) => {
                stack.push((*child, k.clone()));
            }
            _ => unreachable!("provenance does not match node kind"),
        }
    }
    VertexSet::new(chosen)
}

/// Largest root value under `options`, without witness extraction. With
/// [`LeafRule::MembersOnly`] this may exceed the true optimum.
pub fn max_size_with(instance: &Instance, expr: &CExpr, options: DpOptions) -> Result<usize> {
    let to_instance = match_instance(instance, expr)?;
    let table = run_dp(instance, expr, &to_instance, options);
    Ok(best_root_key(expr, &table).map_or(0, |(h, _)| h))
}

pub fn solve_cliquewidth(instance: &Instance, expr: &CExpr) -> Result<SolveResult> {
    let to_instance = match_instance(instance, expr)?;
    let table = run_dp(instance, expr, &to_instance, DpOptions::default());
    let (_, key) = best_root_key(expr, &table).ok_or_else(|| {
        Error::Internal("no accepting root key; the empty set always qualifies".into())
    })?;
    let witness = extract(expr, &table, key, &to_instance);
    let mut stats = BTreeMap::new();
    stats.insert("width", expr.width() as u64);
    stats.insert("max_keys", table.max_keys() as u64);
    stats.insert(
        "total_keys",
        table.tables.iter().map(|t| t.len() as u64).sum(),
    );
    SolveResult::verified(instance, witness, SolverTag::CliqueWidth, stats)
}
