//! Transitive sparsification heuristics. Both return a spanning subgraph
//! with the same reachability relation as the input.

use std::fmt;
use std::str::FromStr;

use crate::error::{MpcError, Result};
use crate::graph::{validate_path_cover, Dag, PathCover, Vertex};
use crate::maxflow::{GreedyDp, InLists};

#[derive(Debug, Clone)]
pub struct SparsifyResult {
    pub g_sparse: Dag,
    /// The greedy cover built along the way (greedy heuristic only); valid
    /// for both the input and `g_sparse`.
    pub greedy_cover: Option<PathCover>,
}

/// Keeps, for every DFS root-to-leaf path and every target `w`, only the
/// edge into `w` from the deepest vertex of the path.
pub fn dfs_sparsify(g: &Dag) -> SparsifyResult {
    let n = g.n();
    let order = g.topological_order();
    // Out-lists sorted by topological rank: bucket each edge by its head in
    // topological order.
    let mut offsets = vec![0usize; n + 1];
    for v in 0..n {
        offsets[v + 1] = offsets[v] + g.out_neighbors(v as Vertex).len();
    }
    let mut fill = offsets.clone();
    let mut succ = vec![0 as Vertex; g.m()];
    for &w in order.order() {
        for &v in g.in_neighbors(w) {
            succ[fill[v as usize]] = w;
            fill[v as usize] += 1;
        }
    }

    let mut pre = vec![0u32; n];
    let mut last_reach = vec![0u32; n];
    let mut next_pre = 1u32;
    let mut kept = Vec::new();
    // Frame: (vertex, next out-list slot).
    let mut stack: Vec<(Vertex, usize)> = Vec::new();
    let visit = |v: Vertex, pre: &mut Vec<u32>, next_pre: &mut u32| {
        pre[v as usize] = *next_pre;
        *next_pre += 1;
    };
    for &root in order.order() {
        if pre[root as usize] != 0 {
            continue;
        }
        visit(root, &mut pre, &mut next_pre);
        stack.push((root, offsets[root as usize]));
        while let Some(&mut (v, ref mut slot)) = stack.last_mut() {
            let end = offsets[v as usize + 1];
            if *slot == end {
                stack.pop();
                continue;
            }
            let w = succ[*slot];
            if pre[w as usize] == 0 {
                // Descend; the edge check happens on return.
                visit(w, &mut pre, &mut next_pre);
                stack.push((w, offsets[w as usize]));
                continue;
            }
            *slot += 1;
            let pv = pre[v as usize];
            if last_reach[w as usize] < pv {
                kept.push((v, w));
                last_reach[w as usize] = pv;
            }
        }
    }
    SparsifyResult {
        g_sparse: subgraph(g, kept),
        greedy_cover: None,
    }
}

fn subgraph(g: &Dag, mut edges: Vec<(Vertex, Vertex)>) -> Dag {
    edges.sort_unstable();
    Dag::from_edges(g.n(), &edges).expect("a subgraph of a DAG is a DAG")
}

/// Extracts greedy paths one at a time, each from the current sparsified
/// graph, and uses each path right away to delete incoming edges from
/// vertices that already reach an earlier vertex of the path.
pub fn greedy_sparsify(g: &Dag) -> SparsifyResult {
    let n = g.n();
    let mut lists = InLists::new(g);
    let mut on_cover = vec![false; lists.src.len()];
    let mut dp = GreedyDp::new(g);
    let mut in_r = vec![false; n];
    let mut touched = Vec::new();
    let mut paths = Vec::new();
    while let Some((path, slots)) = dp.next_path(&lists) {
        for slot in slots {
            on_cover[slot] = true;
        }
        for &v in &path {
            let vi = v as usize;
            let mut keep = lists.start[vi];
            for slot in lists.slots(v) {
                let u = lists.src[slot];
                let delete = in_r[u as usize] && !on_cover[slot];
                if !in_r[u as usize] {
                    in_r[u as usize] = true;
                    touched.push(u);
                }
                if !delete {
                    lists.src[keep] = u;
                    on_cover[keep] = on_cover[slot];
                    keep += 1;
                }
            }
            if keep != lists.start[vi] + lists.len[vi] {
                lists.len[vi] = keep - lists.start[vi];
                dp.touch(v);
            }
        }
        for u in touched.drain(..) {
            in_r[u as usize] = false;
        }
        paths.push(path);
    }

    let kept = (0..n as Vertex)
        .flat_map(|v| lists.slots(v).map(|slot| (lists.src[slot], v)).collect::<Vec<_>>())
        .collect();
    SparsifyResult {
        g_sparse: subgraph(g, kept),
        greedy_cover: Some(PathCover::new(paths)),
    }
}

/// Pre-processing applied before a solver.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Presparsify {
    None,
    Dfs,
    Greedy,
    /// Greedy first, then DFS on its output.
    Both,
}

impl Presparsify {
    pub const ALL: [Presparsify; 4] =
        [Presparsify::None, Presparsify::Dfs, Presparsify::Greedy, Presparsify::Both];

    pub fn name(self) -> &'static str {
        match self {
            Presparsify::None => "none",
            Presparsify::Dfs => "dfs",
            Presparsify::Greedy => "greedy",
            Presparsify::Both => "both",
        }
    }

    /// Runs the selected heuristics. For `Both`, the greedy cover is kept
    /// only if the DFS pass left all of its edges in place.
    pub fn apply(self, g: &Dag) -> SparsifyResult {
        match self {
            Presparsify::None => SparsifyResult {
                g_sparse: g.clone(),
                greedy_cover: None,
            },
            Presparsify::Dfs => dfs_sparsify(g),
            Presparsify::Greedy => greedy_sparsify(g),
            Presparsify::Both => {
                let first = greedy_sparsify(g);
                let second = dfs_sparsify(&first.g_sparse);
                let greedy_cover = first
                    .greedy_cover
                    .filter(|pc| validate_path_cover(&second.g_sparse, pc).is_valid());
                SparsifyResult {
                    g_sparse: second.g_sparse,
                    greedy_cover,
                }
            }
        }
    }
}

impl fmt::Display for Presparsify {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Presparsify {
    type Err = MpcError;
    fn from_str(s: &str) -> Result<Self> {
        Presparsify::ALL
            .into_iter()
            .find(|p| p.name() == s)
            .ok_or_else(|| MpcError::InvalidSpec(format!("unknown presparsify mode `{s}`")))
    }
}
