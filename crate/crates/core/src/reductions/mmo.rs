//! Harmless-set instances with majority thresholds built from weighted
//! orientation instances.
//!
//! Vertex ids are allocated in this order:
//! 1. the original vertices;
//! 2. per input edge `(u, v)`: `u^v_1..u^v_w`, then `v^u_1..v^u_w`, then the
//!    connectors `x(u_i,v_i), x(u_i,v_{i+1}), x(u_{i+1},v_i)` for
//!    `i = 1..w-1` followed by `x(u_w,v_w)`;
//! 3. per heavy original vertex (ascending) its pendant set;
//! 4. triangles, three ids each (attachment vertex first), grouped by owner
//!    in ascending owner id.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::instance::{Instance, VertexSet};
use crate::oracle::WeightedGraph;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeGadget {
    /// `u^v_1..u^v_w`, joined to `u`.
    pub forward: Vec<usize>,
    /// `v^u_1..v^u_w`, joined to `v`.
    pub backward: Vec<usize>,
    pub connectors: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MmoReductionOutput {
    pub instance: Instance,
    pub target: usize,
    pub edges: Vec<EdgeGadget>,
    /// Pendant set of each heavy original vertex (empty for light ones).
    pub pendants: Vec<Vec<usize>>,
    /// Vertex ids per gadget role.
    pub trace: BTreeMap<String, Vec<usize>>,
}

struct Builder {
    graph: Graph,
    triangle_owners: Vec<(usize, usize)>,
}

impl Builder {
    fn vertex(&mut self) -> usize {
        self.graph.add_vertex()
    }

    fn join(&mut self, u: usize, v: usize) {
        self.graph.add_edge(u, v).expect("gadget edges are fresh");
    }
}

/// Builds the instance; the orientation instance is a yes-instance iff the
/// result has a harmless set of size `target`.
pub fn reduce_mmo(wg: &WeightedGraph) -> Result<MmoReductionOutput> {
    let r = wg.bound();
    if r < 3 {
        return Err(Error::Precondition(format!(
            "out-weight bound {r} must be at least 3"
        )));
    }
    let n = wg.graph().vertex_count();
    let mut b = Builder {
        graph: Graph::new(n),
        triangle_owners: Vec::new(),
    };
    let mut trace: BTreeMap<String, Vec<usize>> = BTreeMap::new();
    trace.insert("original".into(), (0..n).collect());

    let mut gadgets = Vec::with_capacity(wg.edges().len());
    for &(u, v, w) in wg.edges() {
        let forward: Vec<usize> = (0..w).map(|_| b.vertex()).collect();
        let backward: Vec<usize> = (0..w).map(|_| b.vertex()).collect();
        for (&a, &c) in forward.iter().zip(&backward) {
            b.join(u, a);
            b.join(v, c);
        }
        let mut connectors = Vec::with_capacity(3 * w - 2);
        let mut connect = |b: &mut Builder, a: usize, c: usize| {
            let x = b.vertex();
            b.join(x, a);
            b.join(x, c);
            connectors.push(x);
        };
        for i in 0..w - 1 {
            connect(&mut b, forward[i], backward[i]);
            connect(&mut b, forward[i], backward[i + 1]);
            connect(&mut b, forward[i + 1], backward[i]);
        }
        connect(&mut b, forward[w - 1], backward[w - 1]);
        trace.insert(format!("edge {} {} forward", u + 1, v + 1), forward.clone());
        trace.insert(
            format!("edge {} {} backward", u + 1, v + 1),
            backward.clone(),
        );
        trace.insert(
            format!("edge {} {} connectors", u + 1, v + 1),
            connectors.clone(),
        );
        gadgets.push(EdgeGadget {
            forward,
            backward,
            connectors,
        });
    }

    let mut target = n;
    let mut light = Vec::new();
    let mut heavy = Vec::new();
    let mut pendants = vec![Vec::new(); n];
    let mut owned: Vec<(usize, usize)> = Vec::new();
    for (x, ps) in pendants.iter_mut().enumerate() {
        let d = wg.weighted_degree(x);
        if d.div_ceil(2) <= r + 1 {
            light.push(x);
            owned.push((x, 2 * ((r + 1) - d.div_ceil(2))));
        } else {
            heavy.push(x);
            for _ in 0..d - r {
                let p = b.vertex();
                b.join(x, p);
                ps.push(p);
            }
            target += d - r;
            owned.push((x, r + 2));
        }
    }
    trace.insert("type3".into(), light);
    trace.insert("type4".into(), heavy);
    for (x, ps) in pendants.iter().enumerate() {
        if !ps.is_empty() {
            trace.insert(format!("pendants {}", x + 1), ps.clone());
        }
    }

    let mut type1 = Vec::new();
    let mut type2 = Vec::new();
    for (g, &(_, _, w)) in gadgets.iter().zip(wg.edges()) {
        target += w + (3 * w - 2);
        type1.extend(g.forward.iter().chain(&g.backward));
        type2.extend(&g.connectors);
    }
    // Type-1 vertices so far only see their original vertex and connectors.
    for &x in &type1 {
        owned.push((x, b.graph.degree(x) + 1));
    }
    for &x in &type2 {
        owned.push((x, 1));
    }
    for p in pendants.iter().flatten() {
        owned.push((*p, 2));
    }
    owned.sort_unstable();
    for (owner, count) in owned {
        b.triangle_owners.push((owner, count));
    }
    let mut triangles = Vec::new();
    for (owner, count) in std::mem::take(&mut b.triangle_owners) {
        for _ in 0..count {
            let (a, c, d) = (b.vertex(), b.vertex(), b.vertex());
            b.join(a, c);
            b.join(c, d);
            b.join(a, d);
            b.join(owner, a);
            triangles.extend([a, c, d]);
        }
    }
    trace.insert("type1".into(), type1);
    trace.insert("type2".into(), type2);
    trace.insert("triangles".into(), triangles);

    let instance = Instance::majority(b.graph);
    Ok(MmoReductionOutput {
        instance,
        target,
        edges: gadgets,
        pendants,
        trace,
    })
}

impl MmoReductionOutput {
    /// The set from the forward direction of the equivalence: originals,
    /// connectors, pendants, and for each edge the side its orientation
    /// points away from. `true` orients edge `i` from its first endpoint.
    pub fn witness_from_orientation(&self, orientation: &[bool]) -> VertexSet {
        let mut out = self.trace["original"].clone();
        for (g, &forward) in self.edges.iter().zip(orientation) {
            out.extend(if forward { &g.forward } else { &g.backward });
            out.extend(&g.connectors);
        }
        out.extend(self.pendants.iter().flatten());
        VertexSet::new(out)
    }

    /// Structural checks on the generated instance.
    pub fn audit(&self, wg: &WeightedGraph) -> std::result::Result<(), String> {
        let g = self.instance.graph();
        for &x in &self.trace["type2"] {
            if g.degree(x) != 3 {
                return Err(format!("connector {} has degree {}", x + 1, g.degree(x)));
            }
        }
        for tri in self.trace["triangles"].chunks(3) {
            if g.degree(tri[0]) != 3 || g.degree(tri[1]) != 2 || g.degree(tri[2]) != 2 {
                return Err(format!("triangle at {} has wrong degrees", tri[0] + 1));
            }
        }
        for &x in self.trace["type1"]
            .iter()
            .chain(self.pendants.iter().flatten())
        {
            if g.degree(x) % 2 != 1 {
                return Err(format!("vertex {} has even degree {}", x + 1, g.degree(x)));
            }
        }
        if let Some(v) = self.instance.validate(true).first() {
            return Err(format!("strict threshold validation failed: {v}"));
        }
        let w: usize = wg.edges().iter().map(|e| e.2).sum();
        let heavy: usize = self.trace["type4"]
            .iter()
            .map(|&x| wg.weighted_degree(x) - wg.bound())
            .sum();
        let connectors: usize = wg.edges().iter().map(|e| 3 * e.2 - 2).sum();
        let expected = wg.graph().vertex_count() + w + connectors + heavy;
        if self.target != expected {
            return Err(format!(
                "target {} differs from formula {}",
                self.target, expected
            ));
        }
        Ok(())
    }
}
