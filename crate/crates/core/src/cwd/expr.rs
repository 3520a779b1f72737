//! c-expressions: parsing, printing and evaluation.
//!
//! ```text
//! (cexpr <c> <E>)
//! E ::= (v <name> <label>) | (union <E> <E>) | (eta <i> <j> <E>) | (rho <i> <j> <E>)
//! ```
//!
//! `rho i j` relabels `i` to `j`. `;` starts a comment.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::graph::Graph;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Node {
    Leaf {
        name: String,
        label: usize,
    },
    Union(usize, usize),
    /// Join every `i`-vertex to every `j`-vertex.
    Eta {
        i: usize,
        j: usize,
        child: usize,
    },
    /// Relabel `i` to `j`.
    Rho {
        i: usize,
        j: usize,
        child: usize,
    },
}

/// Expression tree stored in post-order: children precede their parent and
/// the root is the last node.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CExpr {
    width: usize,
    nodes: Vec<Node>,
}

/// Graph produced by an expression; vertex `v` is the `v`-th leaf.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LabeledGraph {
    pub graph: Graph,
    pub names: Vec<String>,
    pub labels: Vec<usize>,
}

impl CExpr {
    /// Validates labels, names and the post-order layout.
    pub fn new(width: usize, nodes: Vec<Node>) -> Result<Self> {
        if nodes.is_empty() {
            return Err(Error::InvalidExpression("empty expression".into()));
        }
        let label_ok = |l: usize| (1..=width).contains(&l);
        let mut names = BTreeSet::new();
        let mut used = vec![false; nodes.len()];
        for (idx, node) in nodes.iter().enumerate() {
            let mut child = |c: usize| -> Result<()> {
                if c >= idx || std::mem::replace(&mut used[c], true) {
                    return Err(Error::InvalidExpression(format!(
                        "node {idx} has a bad child {c}"
                    )));
                }
                Ok(())
            };
            match node {
                Node::Leaf { name, label } => {
                    if !label_ok(*label) {
                        return Err(Error::InvalidExpression(format!(
                            "label {label} outside 1..={width}"
                        )));
                    }
                    if !names.insert(name.clone()) {
                        return Err(Error::InvalidExpression(format!(
                            "duplicate vertex name `{name}`"
                        )));
                    }
                }
                Node::Union(a, b) => {
                    child(*a)?;
                    child(*b)?;
                }
                Node::Eta { i, j, child: c } | Node::Rho { i, j, child: c } => {
                    if !label_ok(*i) || !label_ok(*j) {
                        return Err(Error::InvalidExpression(format!(
                            "label pair {i} {j} outside 1..={width}"
                        )));
                    }
                    if i == j {
                        return Err(Error::InvalidExpression(format!(
                            "label pair {i} {j} must be distinct"
                        )));
                    }
                    child(*c)?;
                }
            }
        }
        if used[..nodes.len() - 1].iter().any(|u| !u) {
            return Err(Error::InvalidExpression(
                "expression is not a single tree".into(),
            ));
        }
        Ok(CExpr { width, nodes })
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn nodes(&self) -> &[Node] {
        &self.nodes
    }

    pub fn root(&self) -> usize {
        self.nodes.len() - 1
    }

    pub fn leaf_count(&self) -> usize {
        self.nodes
            .iter()
            .filter(|n| matches!(n, Node::Leaf { .. }))
            .count()
    }

    /// Builds the labelled graph bottom-up, also reporting the first `eta`
    /// node (post-order index) that re-adds an existing edge.
    fn evaluate(&self) -> (LabeledGraph, Option<usize>) {
        let mut graph = Graph::new(0);
        let mut names = Vec::new();
        let mut labels = Vec::new();
        let mut members: Vec<Vec<usize>> = Vec::with_capacity(self.nodes.len());
        let mut redundant = None;
        for (idx, node) in self.nodes.iter().enumerate() {
            let vs = match *node {
                Node::Leaf { ref name, label } => {
                    let v = graph.add_vertex();
                    names.push(name.clone());
                    labels.push(label);
                    vec![v]
                }
                Node::Union(a, b) => {
                    let mut vs = std::mem::take(&mut members[a]);
                    vs.append(&mut members[b]);
                    vs
                }
                Node::Eta { i, j, child } => {
                    let vs = std::mem::take(&mut members[child]);
                    for &u in vs.iter().filter(|&&u| labels[u] == i) {
                        for &w in vs.iter().filter(|&&w| labels[w] == j) {
                            if graph.add_edge(u, w).is_err() && redundant.is_none() {
                                redundant = Some(idx);
                            }
                        }
                    }
                    vs
                }
                Node::Rho { i, j, child } => {
                    let vs = std::mem::take(&mut members[child]);
                    for &u in &vs {
                        if labels[u] == i {
                            labels[u] = j;
                        }
                    }
                    vs
                }
            };
            members.push(vs);
        }
        (
            LabeledGraph {
                graph,
                names,
                labels,
            },
            redundant,
        )
    }
}

pub fn eval_cexpr(expr: &CExpr) -> LabeledGraph {
    expr.evaluate().0
}

/// `None` when every edge is added by exactly one `eta`; otherwise the
/// post-order index of the first `eta` that re-adds an edge.
pub fn check_irredundant(expr: &CExpr) -> Option<usize> {
    expr.evaluate().1
}

#[derive(Debug)]
enum Sexp {
    Atom(String, usize),
    List(Vec<Sexp>, usize),
}

impl Sexp {
    fn line(&self) -> usize {
        match self {
            Sexp::Atom(_, l) | Sexp::List(_, l) => *l,
        }
    }
}

fn tokenize(text: &str) -> Vec<(String, usize)> {
    let mut out = Vec::new();
    for (ln, line) in text.lines().enumerate() {
        let line = line.split(';').next().unwrap_or("");
        let mut atom = String::new();
        for ch in line.chars() {
            if ch == '(' || ch == ')' || ch.is_whitespace() {
                if !atom.is_empty() {
                    out.push((std::mem::take(&mut atom), ln + 1));
                }
                if !ch.is_whitespace() {
                    out.push((ch.to_string(), ln + 1));
                }
            } else {
                atom.push(ch);
            }
        }
        if !atom.is_empty() {
            out.push((atom, ln + 1));
        }
    }
    out
}

fn read_sexp(tokens: &[(String, usize)], pos: &mut usize) -> Result<Sexp> {
    let Some((tok, line)) = tokens.get(*pos) else {
        return Err(Error::parse(
            tokens.last().map_or(0, |t| t.1),
            "unexpected end of input",
        ));
    };
    *pos += 1;
    match tok.as_str() {
        "(" => {
            let mut items = Vec::new();
            loop {
                match tokens.get(*pos) {
                    Some((t, _)) if t == ")" => {
                        *pos += 1;
                        return Ok(Sexp::List(items, *line));
                    }
                    Some(_) => items.push(read_sexp(tokens, pos)?),
                    None => return Err(Error::parse(*line, "unclosed parenthesis")),
                }
            }
        }
        ")" => Err(Error::parse(*line, "unexpected `)`")),
        _ => Ok(Sexp::Atom(tok.clone(), *line)),
    }
}

struct Builder {
    width: usize,
    nodes: Vec<Node>,
}

impl Builder {
    fn label(&self, s: &Sexp) -> Result<usize> {
        match s {
            Sexp::Atom(a, line) => {
                let l: usize = a
                    .parse()
                    .map_err(|_| Error::parse(*line, format!("expected a label, found `{a}`")))?;
                if l == 0 || l > self.width {
                    return Err(Error::InvalidExpression(format!(
                        "line {line}: label {l} outside 1..={}",
                        self.width
                    )));
                }
                Ok(l)
            }
            Sexp::List(_, line) => Err(Error::parse(*line, "expected a label, found a list")),
        }
    }

    fn build(&mut self, s: &Sexp) -> Result<usize> {
        let Sexp::List(items, line) = s else {
            return Err(Error::parse(s.line(), "expected an expression"));
        };
        let line = *line;
        let head = match items.first() {
            Some(Sexp::Atom(h, _)) => h.as_str(),
            _ => return Err(Error::parse(line, "expression without a head")),
        };
        let arity = |n: usize| -> Result<()> {
            if items.len() != n + 1 {
                return Err(Error::parse(line, format!("`{head}` takes {n} arguments")));
            }
            Ok(())
        };
        let node = match head {
            "v" => {
                arity(2)?;
                let Sexp::Atom(name, _) = &items[1] else {
                    return Err(Error::parse(line, "vertex name must be an atom"));
                };
                Node::Leaf {
                    name: name.clone(),
                    label: self.label(&items[2])?,
                }
            }
            "union" => {
                arity(2)?;
                let a = self.build(&items[1])?;
                let b = self.build(&items[2])?;
                Node::Union(a, b)
            }
            "eta" | "rho" => {
                arity(3)?;
                let i = self.label(&items[1])?;
                let j = self.label(&items[2])?;
                if i == j {
                    return Err(Error::InvalidExpression(format!(
                        "line {line}: `{head} {i} {j}` needs distinct labels"
                    )));
                }
                let child = self.build(&items[3])?;
                if head == "eta" {
                    Node::Eta { i, j, child }
                } else {
                    Node::Rho { i, j, child }
                }
            }
            other => {
                return Err(Error::InvalidExpression(format!(
                    "line {line}: unknown head `{other}`"
                )))
            }
        };
        self.nodes.push(node);
        Ok(self.nodes.len() - 1)
    }
}

pub fn parse_cexpr(text: &str) -> Result<CExpr> {
    let tokens = tokenize(text);
    let mut pos = 0;
    let top = read_sexp(&tokens, &mut pos)?;
    if let Some((_, line)) = tokens.get(pos) {
        return Err(Error::parse(*line, "trailing input after expression"));
    }
    let Sexp::List(items, line) = &top else {
        return Err(Error::parse(top.line(), "expected `(cexpr <c> <E>)`"));
    };
    match items.as_slice() {
        [Sexp::Atom(h, _), Sexp::Atom(c, _), body] if h == "cexpr" => {
            let width = c
                .parse()
                .map_err(|_| Error::parse(*line, format!("bad label count `{c}`")))?;
            let mut b = Builder {
                width,
                nodes: Vec::new(),
            };
            b.build(body)?;
            CExpr::new(width, b.nodes)
        }
        _ => Err(Error::parse(*line, "expected `(cexpr <c> <E>)`")),
    }
}

pub fn serialize_cexpr(expr: &CExpr) -> String {
    fn write(expr: &CExpr, idx: usize, out: &mut String) {
        match &expr.nodes[idx] {
            Node::Leaf { name, label } => write!(out, "(v {name} {label})").unwrap(),
            Node::Union(a, b) => {
                out.push_str("(union ");
                write(expr, *a, out);
                out.push(' ');
                write(expr, *b, out);
                out.push(')');
            }
            Node::Eta { i, j, child } | Node::Rho { i, j, child } => {
                let head = if matches!(expr.nodes[idx], Node::Eta { .. }) {
                    "eta"
                } else {
                    "rho"
                };
                write!(out, "({head} {i} {j} ").unwrap();
                write(expr, *child, out);
                out.push(')');
            }
        }
    }
    let mut out = format!("(cexpr {}\n  ", expr.width);
    write(expr, expr.root(), &mut out);
    out.push_str(")\n");
    out
}
