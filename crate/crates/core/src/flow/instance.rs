use super::{EdgeId, Flow, FlowReduction, Node};
use crate::error::{MpcError, Result};

/// A reduction edge `(tail, head)` seen as a pair of opposite max-flow arcs:
/// `tail -> head` with capacity `f(e) - d(e)` and `head -> tail` with
/// capacity `|f|`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct InstanceArc {
    pub edge: EdgeId,
    pub tail: Node,
    pub head: Node,
    pub forward_cap: u32,
    pub reverse_cap: u32,
}

/// Maximum-flow problem whose optimum turns a feasible flow into a minimum one.
#[derive(Debug, Clone)]
pub struct MaxFlowInstance {
    pub node_count: usize,
    pub arcs: Vec<InstanceArc>,
    pub initial_size: u64,
}

impl MaxFlowInstance {
    pub fn from_flow(r: &FlowReduction, f: &Flow) -> MaxFlowInstance {
        let size = f.size(r);
        let cap = u32::try_from(size).unwrap_or(u32::MAX);
        let arcs = (0..r.edge_count() as EdgeId)
            .map(|e| {
                let (tail, head) = r.endpoints(e);
                InstanceArc {
                    edge: e,
                    tail,
                    head,
                    forward_cap: f.get(e) - r.demand(e).min(f.get(e)),
                    reverse_cap: cap,
                }
            })
            .collect();
        MaxFlowInstance {
            node_count: r.node_count(),
            arcs,
            initial_size: size,
        }
    }

    /// Applies a max-flow solution given as net flow per arc (positive along
    /// `tail -> head`, negative along `head -> tail`): `f*(e) = f(e) - net(e)`.
    pub fn apply(&self, f: &Flow, net: &[i64]) -> Result<Flow> {
        let mut out = f.clone();
        for (arc, &x) in self.arcs.iter().zip(net) {
            if x > arc.forward_cap as i64 || -x > arc.reverse_cap as i64 {
                return Err(MpcError::InfeasibleFlow(format!(
                    "net flow {x} exceeds the capacities of edge {}",
                    arc.edge
                )));
            }
            let value = f.get(arc.edge) as i64 - x;
            out.set(arc.edge, value as u32);
        }
        Ok(out)
    }
}
