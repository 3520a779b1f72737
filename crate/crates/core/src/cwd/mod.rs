//! Clique-width expressions and the harmless-set dynamic program over them.

mod dp;
mod expr;

pub use dp::{
    eta_key, leaf_keys, max_size_with, rho_key, run_dp, solve_cliquewidth, union_key, DpKey,
    DpOptions, DpTable, LeafRule, INF,
};
pub use expr::{
    check_irredundant, eval_cexpr, parse_cexpr, serialize_cexpr, CExpr, LabeledGraph, Node,
};
