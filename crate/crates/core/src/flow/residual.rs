use std::collections::VecDeque;

use super::{base_of, node_in, node_out, EdgeId, Flow, FlowReduction, Node, SINK, SOURCE};
use crate::error::{MpcError, Result};
use crate::graph::Vertex;

/// One edge of the residual graph. A direct step lowers the flow on `edge`
/// by one; a reverse step (traversing `edge` against its direction) raises it.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ResidualStep {
    pub from: Node,
    pub to: Node,
    pub edge: EdgeId,
    pub direct: bool,
}

/// Residual graph of a flow, enumerated on demand.
pub struct ResidualView<'a> {
    r: &'a FlowReduction,
    f: &'a Flow,
}

impl<'a> ResidualView<'a> {
    pub fn new(r: &'a FlowReduction, f: &'a Flow) -> Self {
        ResidualView { r, f }
    }

    fn direct(&self, e: EdgeId) -> bool {
        self.f.get(e) > self.r.demand(e)
    }

    /// Residual out-steps of `x`, appended to `out`.
    pub fn neighbors(&self, x: Node, out: &mut Vec<ResidualStep>) {
        let r = self.r;
        let step = |to, edge, direct| ResidualStep {
            from: x,
            to,
            edge,
            direct,
        };
        match x {
            SOURCE => {
                for v in 0..r.base_n() as Vertex {
                    let e = r.source_edge(v);
                    if self.direct(e) {
                        out.push(step(node_in(v), e, true));
                    }
                }
            }
            SINK => {
                for v in 0..r.base_n() as Vertex {
                    out.push(step(node_out(v), r.sink_edge(v), false));
                }
            }
            _ => {
                let (v, is_out) = base_of(x);
                if is_out {
                    let sink = r.sink_edge(v);
                    if self.direct(sink) {
                        out.push(step(SINK, sink, true));
                    }
                    out.push(step(node_in(v), r.split(v), false));
                    for &a in r.arcs_from(v) {
                        let e = r.arc_edge(a);
                        if self.direct(e) {
                            out.push(step(node_in(r.arcs()[a as usize].1), e, true));
                        }
                    }
                } else {
                    for &a in r.arcs_into(v) {
                        out.push(step(node_out(r.arcs()[a as usize].0), r.arc_edge(a), false));
                    }
                    let split = r.split(v);
                    if self.direct(split) {
                        out.push(step(node_out(v), split, true));
                    }
                    out.push(step(SOURCE, r.source_edge(v), false));
                }
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SearchOrder {
    DepthFirst,
    BreadthFirst,
}

/// Reusable scratch space for repeated residual searches on one reduction.
pub struct ResidualSearch {
    parent: Vec<Option<ResidualStep>>,
    seen: Vec<u32>,
    stamp: u32,
    buf: Vec<ResidualStep>,
    /// Nodes visited by the last search.
    pub visited: usize,
}

impl ResidualSearch {
    pub fn new(r: &FlowReduction) -> Self {
        ResidualSearch {
            parent: vec![None; r.node_count()],
            seen: vec![0; r.node_count()],
            stamp: 0,
            buf: Vec::new(),
            visited: 0,
        }
    }

    /// An `s`-`t` path in the residual graph, or `None` if the flow is minimum.
    pub fn find(
        &mut self,
        r: &FlowReduction,
        f: &Flow,
        order: SearchOrder,
    ) -> Option<Vec<ResidualStep>> {
        self.stamp += 1;
        self.visited = 0;
        let stamp = self.stamp;
        let view = ResidualView::new(r, f);
        let found = match order {
            SearchOrder::BreadthFirst => {
                let mut queue = VecDeque::from([SOURCE]);
                self.seen[SOURCE as usize] = stamp;
                self.parent[SOURCE as usize] = None;
                let mut hit = false;
                'bfs: while let Some(x) = queue.pop_front() {
                    self.visited += 1;
                    self.buf.clear();
                    view.neighbors(x, &mut self.buf);
                    for &st in &self.buf {
                        if self.seen[st.to as usize] != stamp {
                            self.seen[st.to as usize] = stamp;
                            self.parent[st.to as usize] = Some(st);
                            if st.to == SINK {
                                hit = true;
                                break 'bfs;
                            }
                            queue.push_back(st.to);
                        }
                    }
                }
                hit
            }
            SearchOrder::DepthFirst => {
                let mut stack: Vec<(Node, Option<ResidualStep>)> = vec![(SOURCE, None)];
                let mut hit = false;
                while let Some((x, via)) = stack.pop() {
                    if self.seen[x as usize] == stamp {
                        continue;
                    }
                    self.seen[x as usize] = stamp;
                    self.parent[x as usize] = via;
                    if x == SINK {
                        hit = true;
                        break;
                    }
                    self.visited += 1;
                    self.buf.clear();
                    view.neighbors(x, &mut self.buf);
                    for &st in self.buf.iter().rev() {
                        if self.seen[st.to as usize] != stamp {
                            stack.push((st.to, Some(st)));
                        }
                    }
                }
                hit
            }
        };
        if !found {
            return None;
        }
        let mut path = Vec::new();
        let mut x = SINK;
        while let Some(st) = self.parent[x as usize] {
            path.push(st);
            x = st.from;
        }
        path.reverse();
        Some(path)
    }
}

/// Convenience wrapper allocating fresh scratch space.
pub fn find_residual_path(
    r: &FlowReduction,
    f: &Flow,
    order: SearchOrder,
) -> Option<Vec<ResidualStep>> {
    ResidualSearch::new(r).find(r, f, order)
}

/// Pushes one unit back along a simple `s`-`t` residual path, lowering the
/// flow size by one.
pub fn apply_residual_path(r: &FlowReduction, f: &mut Flow, path: &[ResidualStep]) -> Result<()> {
    let bad = |msg: String| Err(MpcError::NotResidualPath(msg));
    match (path.first(), path.last()) {
        (Some(first), Some(last)) if first.from == SOURCE && last.to == SINK => {}
        _ => return bad("path must lead from s to t".into()),
    }
    let mut on_path = std::collections::HashSet::new();
    on_path.insert(SOURCE);
    for (i, st) in path.iter().enumerate() {
        if i > 0 && path[i - 1].to != st.from {
            return bad(format!("step {i} does not continue the path"));
        }
        if !on_path.insert(st.to) {
            return bad(format!("node {} repeats", st.to));
        }
        if st.edge as usize >= r.edge_count() {
            return bad(format!("edge {} does not exist", st.edge));
        }
        let (tail, head) = r.endpoints(st.edge);
        let expected = if st.direct { (tail, head) } else { (head, tail) };
        if (st.from, st.to) != expected {
            return bad(format!("step {i} does not match edge {}", st.edge));
        }
    }
    // Simple path: each edge is used at most once, so checks against the
    // original flow are checks at application time.
    for (i, st) in path.iter().enumerate() {
        if st.direct && f.get(st.edge) <= r.demand(st.edge) {
            return bad(format!("step {i} lowers edge {} below its demand", st.edge));
        }
    }
    for st in path {
        let value = f.get(st.edge);
        f.set(st.edge, if st.direct { value - 1 } else { value + 1 });
    }
    Ok(())
}
