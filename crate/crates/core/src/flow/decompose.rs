use super::{check_feasible, Flow, FlowReduction};
use crate::error::{MpcError, Result};
use crate::graph::{PathCover, Vertex};

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct DecomposeStats {
    /// Elementary steps: arcs examined plus path-id moves.
    pub ops: u64,
}

/// Splits a feasible flow into `|f|` paths.
///
/// Vertices are handled in topological order. Each vertex keeps a FIFO of
/// the ids of paths that passed through it and have not yet been continued;
/// `v` pulls `f(s, v)` fresh ids and then `f(u, v)` ids from the FIFO of each
/// in-neighbor `u`, in arc order. Work is `O(||P|| + |E|)`.
pub fn decompose_flow(r: &FlowReduction, f: &Flow) -> Result<PathCover> {
    decompose_flow_counted(r, f).map(|(pc, _)| pc)
}

pub fn decompose_flow_counted(r: &FlowReduction, f: &Flow) -> Result<(PathCover, DecomposeStats)> {
    let size = check_feasible(r, f)?;
    let n = r.base_n();
    let mut stats = DecomposeStats::default();

    // Slot of v holds the ids of the split(v) paths through v.
    let mut start = Vec::with_capacity(n + 1);
    let mut acc = 0usize;
    for v in 0..n as Vertex {
        start.push(acc);
        acc += f.get(r.split(v)) as usize;
    }
    start.push(acc);
    let mut slots = vec![0u32; acc];
    let mut head = start.clone();

    let mut paths: Vec<Vec<Vertex>> = Vec::with_capacity(size as usize);
    for &v in r.topo_order() {
        let vi = v as usize;
        let mut fill = start[vi];
        for _ in 0..f.get(r.source_edge(v)) {
            slots[fill] = paths.len() as u32;
            paths.push(Vec::new());
            fill += 1;
            stats.ops += 1;
        }
        for &a in r.arcs_into(v) {
            stats.ops += 1;
            let units = f.get(r.arc_edge(a)) as usize;
            if units == 0 {
                continue;
            }
            let u = r.arcs()[a as usize].0 as usize;
            if head[u] + units > start[u + 1] {
                return Err(MpcError::InfeasibleFlow(format!(
                    "arc ({u},{v}) carries more flow than passed through {u}"
                )));
            }
            for k in 0..units {
                slots[fill + k] = slots[head[u] + k];
            }
            head[u] += units;
            fill += units;
            stats.ops += units as u64;
        }
        debug_assert_eq!(fill, start[vi + 1]);
        for &id in &slots[start[vi]..fill] {
            paths[id as usize].push(v);
        }
        stats.ops += (fill - start[vi]) as u64;
    }
    Ok((PathCover::new(paths), stats))
}
