//! The split-vertex flow network of a DAG, flows on it, and the
//! flow-to-path-cover decomposition.
//!
//! Node layout: `s = 0`, `t = 1`, `v_in = 2 + 2v`, `v_out = 3 + 2v`.
//! Edge layout for a base graph with `n` vertices and arcs `a_0..a_{m'}`:
//! `split(v) = v`, `source(v) = n + v`, `sink(v) = 2n + v`, `arc(i) = 3n + i`.
//! Only split edges carry a demand (of one unit).

mod decompose;
mod instance;
mod residual;

pub use decompose::{decompose_flow, decompose_flow_counted, DecomposeStats};
pub use instance::{InstanceArc, MaxFlowInstance};
pub use residual::{
    apply_residual_path, find_residual_path, ResidualSearch, ResidualStep, ResidualView, SearchOrder,
};

use crate::error::{MpcError, Result};
use crate::graph::{validate_path_cover, Dag, PathCover, Vertex};

pub type Node = u32;
pub type EdgeId = u32;

pub const SOURCE: Node = 0;
pub const SINK: Node = 1;

#[inline]
pub fn node_in(v: Vertex) -> Node {
    2 + 2 * v
}

#[inline]
pub fn node_out(v: Vertex) -> Node {
    3 + 2 * v
}

/// Base vertex of a non-terminal node, and whether it is the out-copy.
#[inline]
pub fn base_of(x: Node) -> (Vertex, bool) {
    debug_assert!(x >= 2);
    ((x - 2) / 2, x % 2 == 1)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EdgeKind {
    Split(Vertex),
    Source(Vertex),
    Sink(Vertex),
    /// Index into [`FlowReduction::arcs`].
    Arc(u32),
}

/// The flow network of a DAG (or of a spanning subgraph of it).
#[derive(Debug, Clone)]
pub struct FlowReduction {
    n: usize,
    arcs: Vec<(Vertex, Vertex)>,
    in_offsets: Vec<u32>,
    in_arcs: Vec<u32>,
    out_offsets: Vec<u32>,
    out_arcs: Vec<u32>,
    topo: Vec<Vertex>,
}

/// Flow reduction of `g` with one arc per edge, in [`Dag::edges`] order.
pub fn build_flow_reduction(g: &Dag) -> FlowReduction {
    FlowReduction::with_arcs(g, g.edges().collect())
}

impl FlowReduction {
    /// Reduction of `g` restricted to `arcs`, which must be edges of `g`.
    pub fn with_arcs(g: &Dag, arcs: Vec<(Vertex, Vertex)>) -> FlowReduction {
        debug_assert!(arcs.iter().all(|&(u, v)| g.has_edge(u, v)));
        let n = g.n();
        let index = |key: fn(&(Vertex, Vertex)) -> Vertex| {
            let mut offsets = vec![0u32; n + 1];
            for a in &arcs {
                offsets[key(a) as usize + 1] += 1;
            }
            for i in 0..n {
                offsets[i + 1] += offsets[i];
            }
            let mut fill = offsets.clone();
            let mut list = vec![0u32; arcs.len()];
            for (i, a) in arcs.iter().enumerate() {
                let slot = &mut fill[key(a) as usize];
                list[*slot as usize] = i as u32;
                *slot += 1;
            }
            (offsets, list)
        };
        let (in_offsets, in_arcs) = index(|a| a.1);
        let (out_offsets, out_arcs) = index(|a| a.0);
        FlowReduction {
            n,
            arcs,
            in_offsets,
            in_arcs,
            out_offsets,
            out_arcs,
            topo: g.topological_order().order().to_vec(),
        }
    }

    /// Number of base vertices.
    pub fn base_n(&self) -> usize {
        self.n
    }

    pub fn node_count(&self) -> usize {
        2 * self.n + 2
    }

    pub fn edge_count(&self) -> usize {
        3 * self.n + self.arcs.len()
    }

    pub fn arcs(&self) -> &[(Vertex, Vertex)] {
        &self.arcs
    }

    /// Base topological order used for decomposition.
    pub fn topo_order(&self) -> &[Vertex] {
        &self.topo
    }

    #[inline]
    pub fn split(&self, v: Vertex) -> EdgeId {
        v
    }

    #[inline]
    pub fn source_edge(&self, v: Vertex) -> EdgeId {
        self.n as EdgeId + v
    }

    #[inline]
    pub fn sink_edge(&self, v: Vertex) -> EdgeId {
        2 * self.n as EdgeId + v
    }

    #[inline]
    pub fn arc_edge(&self, arc: u32) -> EdgeId {
        3 * self.n as EdgeId + arc
    }

    /// Arc indices entering `v_in`.
    #[inline]
    pub fn arcs_into(&self, v: Vertex) -> &[u32] {
        &self.in_arcs[self.in_offsets[v as usize] as usize..self.in_offsets[v as usize + 1] as usize]
    }

    /// Arc indices leaving `v_out`.
    #[inline]
    pub fn arcs_from(&self, v: Vertex) -> &[u32] {
        &self.out_arcs
            [self.out_offsets[v as usize] as usize..self.out_offsets[v as usize + 1] as usize]
    }

    pub fn kind(&self, e: EdgeId) -> EdgeKind {
        let n = self.n as u32;
        if e >= 3 * n {
            EdgeKind::Arc(e - 3 * n)
        } else if e >= 2 * n {
            EdgeKind::Sink(e - 2 * n)
        } else if e >= n {
            EdgeKind::Source(e - n)
        } else {
            EdgeKind::Split(e)
        }
    }

    /// `(tail, head)` nodes of an edge.
    pub fn endpoints(&self, e: EdgeId) -> (Node, Node) {
        match self.kind(e) {
            EdgeKind::Split(v) => (node_in(v), node_out(v)),
            EdgeKind::Source(v) => (SOURCE, node_in(v)),
            EdgeKind::Sink(v) => (node_out(v), SINK),
            EdgeKind::Arc(i) => {
                let (u, v) = self.arcs[i as usize];
                (node_out(u), node_in(v))
            }
        }
    }

    #[inline]
    pub fn demand(&self, e: EdgeId) -> u32 {
        u32::from(e < self.n as u32)
    }
}

/// Integer flow on the edges of a [`FlowReduction`], indexed by [`EdgeId`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Flow {
    values: Vec<u32>,
}

impl Flow {
    pub fn zero(r: &FlowReduction) -> Flow {
        Flow {
            values: vec![0; r.edge_count()],
        }
    }

    pub fn from_values(values: Vec<u32>) -> Flow {
        Flow { values }
    }

    #[inline]
    pub fn get(&self, e: EdgeId) -> u32 {
        self.values[e as usize]
    }

    #[inline]
    pub fn set(&mut self, e: EdgeId, value: u32) {
        self.values[e as usize] = value;
    }

    pub fn values(&self) -> &[u32] {
        &self.values
    }

    /// Net flow out of `s`.
    pub fn size(&self, r: &FlowReduction) -> u64 {
        (0..r.base_n() as Vertex)
            .map(|v| self.get(r.source_edge(v)) as u64)
            .sum()
    }
}

/// Checks demands and conservation. Returns the flow size.
pub fn check_feasible(r: &FlowReduction, f: &Flow) -> Result<u64> {
    if f.values.len() != r.edge_count() {
        return Err(MpcError::InfeasibleFlow(format!(
            "flow has {} values for {} edges",
            f.values.len(),
            r.edge_count()
        )));
    }
    let mut into_t = 0u64;
    for v in 0..r.base_n() as Vertex {
        let split = f.get(r.split(v)) as u64;
        if split < 1 {
            return Err(MpcError::InfeasibleFlow(format!("vertex {v} is not covered")));
        }
        let inflow = f.get(r.source_edge(v)) as u64
            + r.arcs_into(v)
                .iter()
                .map(|&a| f.get(r.arc_edge(a)) as u64)
                .sum::<u64>();
        let outflow = f.get(r.sink_edge(v)) as u64
            + r.arcs_from(v)
                .iter()
                .map(|&a| f.get(r.arc_edge(a)) as u64)
                .sum::<u64>();
        if inflow != split || outflow != split {
            return Err(MpcError::InfeasibleFlow(format!(
                "conservation fails at vertex {v}: in {inflow}, through {split}, out {outflow}"
            )));
        }
        into_t += f.get(r.sink_edge(v)) as u64;
    }
    let size = f.size(r);
    debug_assert_eq!(size, into_t);
    Ok(size)
}

/// One unit of flow along each path of `pc`.
pub fn path_cover_to_flow(r: &FlowReduction, g: &Dag, pc: &PathCover) -> Result<Flow> {
    validate_path_cover(g, pc).into_result()?;
    // (u, v) -> arc index, looked up through the out-arc lists of u.
    let arc_index = |u: Vertex, v: Vertex| -> Result<u32> {
        r.arcs_from(u)
            .iter()
            .copied()
            .find(|&a| r.arcs()[a as usize].1 == v)
            .ok_or_else(|| MpcError::InvalidCover(format!("edge ({u},{v}) is not in the reduction")))
    };
    let mut f = Flow::zero(r);
    for path in &pc.paths {
        let (first, last) = (path[0], path[path.len() - 1]);
        f.values[r.source_edge(first) as usize] += 1;
        f.values[r.sink_edge(last) as usize] += 1;
        for &v in path {
            f.values[r.split(v) as usize] += 1;
        }
        for w in path.windows(2) {
            f.values[r.arc_edge(arc_index(w[0], w[1])?) as usize] += 1;
        }
    }
    Ok(f)
}
