//! Line-oriented text formats.
//!
//! ```text
//! p hs <n> <m>
//! t <v> <threshold>     (n lines, or the single line `t majority`)
//! e <u> <v>             (m lines)
//! ```
//!
//! `#` starts a comment running to the end of the line. Ids are one-based.
//! Weighted graphs use `p mmo <n> <m> <r>` with `e <u> <v> <w>` lines and
//! subset-sum instances use `p mrss <k> <n> <k'>`, `t <t1> .. <tk>` and `n`
//! lines `s <x1> .. <xk>`.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::instance::Instance;
use crate::oracle::{MrssInstance, WeightedGraph};

/// Non-empty, comment-stripped lines with their one-based line numbers.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, Vec<&str>)> {
    text.lines().enumerate().filter_map(|(i, line)| {
        let line = line.split('#').next().unwrap_or("");
        let tokens: Vec<&str> = line.split_whitespace().collect();
        (!tokens.is_empty()).then_some((i + 1, tokens))
    })
}

fn number(line: usize, token: &str) -> Result<usize> {
    token.parse::<usize>().map_err(|_| {
        Error::parse(
            line,
            format!("expected a non-negative integer, found `{token}`"),
        )
    })
}

fn vertex(line: usize, token: &str, n: usize) -> Result<usize> {
    let v = number(line, token)?;
    if v == 0 || v > n {
        return Err(Error::VertexOutOfRange { vertex: v, n });
    }
    Ok(v - 1)
}

fn expect_arity(line: usize, tokens: &[&str], arity: usize) -> Result<()> {
    if tokens.len() != arity {
        return Err(Error::parse(
            line,
            format!("expected {} fields, found {}", arity, tokens.len()),
        ));
    }
    Ok(())
}

pub fn parse_instance(text: &str) -> Result<Instance> {
    let mut lines = content_lines(text);
    let (hline, header) = lines
        .next()
        .ok_or_else(|| Error::parse(0, "missing header"))?;
    if header.len() != 4 || header[0] != "p" || header[1] != "hs" {
        return Err(Error::parse(
            hline,
            "malformed header, expected `p hs <n> <m>`",
        ));
    }
    let n = number(hline, header[2])?;
    let m = number(hline, header[3])?;

    let mut thresholds: Vec<Option<usize>> = vec![None; n];
    let mut majority = false;
    let mut t_lines = 0usize;
    let mut graph = Graph::new(n);
    for (ln, tokens) in lines {
        match tokens[0] {
            "t" if tokens.len() == 2 && tokens[1] == "majority" => {
                if majority || t_lines > 0 {
                    return Err(Error::parse(
                        ln,
                        "`t majority` must be the only threshold line",
                    ));
                }
                majority = true;
            }
            "t" => {
                expect_arity(ln, &tokens, 3)?;
                if majority {
                    return Err(Error::parse(ln, "threshold line after `t majority`"));
                }
                let v = vertex(ln, tokens[1], n)?;
                let t = number(ln, tokens[2])?;
                if t == 0 {
                    return Err(Error::parse(ln, "threshold must be at least 1"));
                }
                if thresholds[v].replace(t).is_some() {
                    return Err(Error::parse(
                        ln,
                        format!("second threshold for vertex {}", v + 1),
                    ));
                }
                t_lines += 1;
            }
            "e" => {
                expect_arity(ln, &tokens, 3)?;
                let u = vertex(ln, tokens[1], n)?;
                let v = vertex(ln, tokens[2], n)?;
                graph.add_edge(u, v)?;
            }
            other => return Err(Error::parse(ln, format!("unknown line type `{other}`"))),
        }
    }
    if graph.edge_count() != m {
        return Err(Error::parse(
            hline,
            format!("header declares {} edges, found {}", m, graph.edge_count()),
        ));
    }
    if majority {
        return Ok(Instance::majority(graph));
    }
    if t_lines != n {
        return Err(Error::parse(
            hline,
            format!("expected {n} threshold lines, found {t_lines}"),
        ));
    }
    Instance::new(graph, thresholds.into_iter().map(Option::unwrap).collect())
}

pub fn serialize_instance(instance: &Instance) -> String {
    let g = instance.graph();
    let mut out = String::new();
    writeln!(out, "p hs {} {}", g.vertex_count(), g.edge_count()).unwrap();
    for (v, t) in instance.thresholds().iter().enumerate() {
        writeln!(out, "t {} {}", v + 1, t).unwrap();
    }
    for (u, v) in g.edges() {
        writeln!(out, "e {} {}", u + 1, v + 1).unwrap();
    }
    out
}

pub fn parse_mmo(text: &str) -> Result<WeightedGraph> {
    let mut lines = content_lines(text);
    let (hline, header) = lines
        .next()
        .ok_or_else(|| Error::parse(0, "missing header"))?;
    if header.len() != 5 || header[0] != "p" || header[1] != "mmo" {
        return Err(Error::parse(
            hline,
            "malformed header, expected `p mmo <n> <m> <r>`",
        ));
    }
    let n = number(hline, header[2])?;
    let m = number(hline, header[3])?;
    let r = number(hline, header[4])?;
    let mut edges = Vec::with_capacity(m);
    for (ln, tokens) in lines {
        if tokens[0] != "e" {
            return Err(Error::parse(
                ln,
                format!("unknown line type `{}`", tokens[0]),
            ));
        }
        expect_arity(ln, &tokens, 4)?;
        let u = vertex(ln, tokens[1], n)?;
        let v = vertex(ln, tokens[2], n)?;
        let w = number(ln, tokens[3])?;
        edges.push((u, v, w));
    }
    if edges.len() != m {
        return Err(Error::parse(
            hline,
            format!("header declares {} edges, found {}", m, edges.len()),
        ));
    }
    WeightedGraph::new(n, edges, r)
}

pub fn serialize_mmo(wg: &WeightedGraph) -> String {
    let mut out = String::new();
    writeln!(
        out,
        "p mmo {} {} {}",
        wg.graph().vertex_count(),
        wg.edges().len(),
        wg.bound()
    )
    .unwrap();
    for &(u, v, w) in wg.edges() {
        writeln!(out, "e {} {} {}", u + 1, v + 1, w).unwrap();
    }
    out
}

pub fn parse_mrss(text: &str) -> Result<MrssInstance> {
    let mut lines = content_lines(text);
    let (hline, header) = lines
        .next()
        .ok_or_else(|| Error::parse(0, "missing header"))?;
    if header.len() != 5 || header[0] != "p" || header[1] != "mrss" {
        return Err(Error::parse(
            hline,
            "malformed header, expected `p mrss <k> <n> <k'>`",
        ));
    }
    let dim = number(hline, header[2])?;
    let n = number(hline, header[3])?;
    let budget = number(hline, header[4])?;
    let mut target = None;
    let mut vectors = Vec::with_capacity(n);
    for (ln, tokens) in lines {
        let values = || -> Result<Vec<usize>> {
            expect_arity(ln, &tokens, dim + 1)?;
            tokens[1..].iter().map(|t| number(ln, t)).collect()
        };
        match tokens[0] {
            "t" if target.is_none() => target = Some(values()?),
            "t" => return Err(Error::parse(ln, "second target line")),
            "s" => vectors.push(values()?),
            other => return Err(Error::parse(ln, format!("unknown line type `{other}`"))),
        }
    }
    let target = target.ok_or_else(|| Error::parse(hline, "missing target line"))?;
    if vectors.len() != n {
        return Err(Error::parse(
            hline,
            format!("header declares {} vectors, found {}", n, vectors.len()),
        ));
    }
    MrssInstance::new(vectors, target, budget)
}

pub fn serialize_mrss(mi: &MrssInstance) -> String {
    let join = |xs: &[usize]| {
        xs.iter()
            .map(|x| x.to_string())
            .collect::<Vec<_>>()
            .join(" ")
    };
    let mut out = String::new();
    writeln!(
        out,
        "p mrss {} {} {}",
        mi.dimension(),
        mi.vectors().len(),
        mi.budget()
    )
    .unwrap();
    writeln!(out, "t {}", join(mi.target())).unwrap();
    for s in mi.vectors() {
        writeln!(out, "s {}", join(s)).unwrap();
    }
    out
}
