//! DAG representation, topological ordering and path-cover validation.

mod io;
mod oracle;

pub use io::{parse_cover, parse_graph, write_cover, write_graph};
pub use oracle::{reaches_oracle, width_oracle, WIDTH_ORACLE_LIMIT};

use crate::error::{MpcError, Result};

/// Vertex identifier. Vertices of a [`Dag`] are `0..n`.
pub type Vertex = u32;

/// Immutable adjacency-list DAG.
///
/// Both adjacency directions are stored in CSR form and sorted by vertex id.
/// Construction rejects self-loops, duplicate edges and cycles, so every
/// value of this type is a well-formed DAG.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Dag {
    n: usize,
    out_offsets: Vec<u32>,
    out_targets: Vec<Vertex>,
    in_offsets: Vec<u32>,
    in_sources: Vec<Vertex>,
}

impl Dag {
    /// Builds a DAG from an edge list. Edge order does not matter.
    pub fn from_edges(n: usize, edges: &[(Vertex, Vertex)]) -> Result<Dag> {
        for &(u, v) in edges {
            for x in [u, v] {
                if x as usize >= n {
                    return Err(MpcError::VertexOutOfRange {
                        vertex: x as u64,
                        n,
                    });
                }
            }
            if u == v {
                return Err(MpcError::SelfLoop(u));
            }
        }
        let (out_offsets, out_targets) = csr(n, edges.iter().map(|&(u, v)| (u, v)));
        for u in 0..n {
            let row = &out_targets[out_offsets[u] as usize..out_offsets[u + 1] as usize];
            if let Some(w) = row.windows(2).find(|w| w[0] == w[1]) {
                return Err(MpcError::DuplicateEdge(u as Vertex, w[0]));
            }
        }
        let (in_offsets, in_sources) = csr(n, edges.iter().map(|&(u, v)| (v, u)));
        let dag = Dag {
            n,
            out_offsets,
            out_targets,
            in_offsets,
            in_sources,
        };
        topological_sort(&dag)?;
        Ok(dag)
    }

    /// Graph with `n` vertices and no edges.
    pub fn edgeless(n: usize) -> Dag {
        Dag::from_edges(n, &[]).expect("edgeless graph is valid")
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.out_targets.len()
    }

    #[inline]
    pub fn out_neighbors(&self, v: Vertex) -> &[Vertex] {
        let v = v as usize;
        &self.out_targets[self.out_offsets[v] as usize..self.out_offsets[v + 1] as usize]
    }

    #[inline]
    pub fn in_neighbors(&self, v: Vertex) -> &[Vertex] {
        let v = v as usize;
        &self.in_sources[self.in_offsets[v] as usize..self.in_offsets[v + 1] as usize]
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        (u as usize) < self.n && self.out_neighbors(u).binary_search(&v).is_ok()
    }

    /// All edges, grouped by tail in ascending order.
    pub fn edges(&self) -> impl Iterator<Item = (Vertex, Vertex)> + '_ {
        (0..self.n as Vertex).flat_map(move |u| self.out_neighbors(u).iter().map(move |&v| (u, v)))
    }

    pub fn topological_order(&self) -> TopologicalOrder {
        topological_sort(self).expect("Dag invariant: acyclic")
    }

    /// Spanning subgraph keeping the edges for which `keep` returns true.
    pub fn filter_edges(&self, mut keep: impl FnMut(Vertex, Vertex) -> bool) -> Dag {
        let edges: Vec<_> = self.edges().filter(|&(u, v)| keep(u, v)).collect();
        Dag::from_edges(self.n, &edges).expect("subgraph of a DAG is a DAG")
    }
}

fn csr(n: usize, pairs: impl Iterator<Item = (Vertex, Vertex)> + Clone) -> (Vec<u32>, Vec<Vertex>) {
    let mut offsets = vec![0u32; n + 1];
    for (a, _) in pairs.clone() {
        offsets[a as usize + 1] += 1;
    }
    for i in 0..n {
        offsets[i + 1] += offsets[i];
    }
    let mut fill = offsets.clone();
    let mut targets = vec![0; offsets[n] as usize];
    for (a, b) in pairs {
        targets[fill[a as usize] as usize] = b;
        fill[a as usize] += 1;
    }
    for a in 0..n {
        targets[offsets[a] as usize..offsets[a + 1] as usize].sort_unstable();
    }
    (offsets, targets)
}

/// Topological order with its inverse permutation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TopologicalOrder {
    order: Vec<Vertex>,
    rank: Vec<u32>,
}

impl TopologicalOrder {
    pub fn order(&self) -> &[Vertex] {
        &self.order
    }

    #[inline]
    pub fn rank(&self, v: Vertex) -> u32 {
        self.rank[v as usize]
    }

    pub fn ranks(&self) -> &[u32] {
        &self.rank
    }
}

/// Depth-first topological sort over in-edges: a vertex is emitted once all
/// its in-neighbors have been. Roots and neighbors are taken in ascending id
/// order, so the result is deterministic (and the identity on graphs whose
/// edges all ascend).
fn topological_sort(g: &Dag) -> Result<TopologicalOrder> {
    const NEW: u8 = 0;
    const ACTIVE: u8 = 1;
    const DONE: u8 = 2;
    let n = g.n;
    let mut state = vec![NEW; n];
    let mut order = Vec::with_capacity(n);
    // (vertex, index of the next in-neighbor to explore)
    let mut stack: Vec<(Vertex, u32)> = Vec::new();
    for root in 0..n as Vertex {
        if state[root as usize] != NEW {
            continue;
        }
        state[root as usize] = ACTIVE;
        stack.push((root, 0));
        while let Some(top) = stack.last_mut() {
            let (v, next) = *top;
            let preds = g.in_neighbors(v);
            if let Some(&u) = preds.get(next as usize) {
                top.1 += 1;
                match state[u as usize] {
                    NEW => {
                        state[u as usize] = ACTIVE;
                        stack.push((u, 0));
                    }
                    ACTIVE => return Err(MpcError::CycleDetected(u)),
                    _ => {}
                }
            } else {
                state[v as usize] = DONE;
                order.push(v);
                stack.pop();
            }
        }
    }
    let mut rank = vec![0u32; n];
    for (i, &v) in order.iter().enumerate() {
        rank[v as usize] = i as u32;
    }
    Ok(TopologicalOrder { order, rank })
}

/// A set of vertex sequences. Validity with respect to a graph is checked by
/// [`validate_path_cover`]; the type itself only holds the sequences.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct PathCover {
    pub paths: Vec<Vec<Vertex>>,
}

impl PathCover {
    pub fn new(paths: Vec<Vec<Vertex>>) -> Self {
        PathCover { paths }
    }

    /// Number of paths.
    pub fn len(&self) -> usize {
        self.paths.len()
    }

    pub fn is_empty(&self) -> bool {
        self.paths.is_empty()
    }

    /// Total number of vertex occurrences over all paths.
    pub fn total_length(&self) -> usize {
        self.paths.iter().map(Vec::len).sum()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValidationReport {
    /// Consecutive pairs inside a path that are not edges of the graph.
    pub non_edges: Vec<(Vertex, Vertex)>,
    pub uncovered: Vec<Vertex>,
    /// Indices of empty paths.
    pub empty_paths: Vec<usize>,
    /// Ids that do not name a vertex of the graph.
    pub out_of_range: Vec<u64>,
    pub size: usize,
    pub total_length: usize,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.non_edges.is_empty()
            && self.uncovered.is_empty()
            && self.empty_paths.is_empty()
            && self.out_of_range.is_empty()
    }

    pub fn into_result(self) -> Result<ValidationReport> {
        if self.is_valid() {
            Ok(self)
        } else {
            Err(MpcError::InvalidCover(self.to_string()))
        }
    }
}

impl std::fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        fn list<T: std::fmt::Display>(items: impl Iterator<Item = T>) -> String {
            items.map(|x| x.to_string()).collect::<Vec<_>>().join(" ")
        }
        write!(f, "size: {}, total length: {}", self.size, self.total_length)?;
        if !self.uncovered.is_empty() {
            write!(f, "; uncovered: {}", list(self.uncovered.iter()))?;
        }
        if !self.non_edges.is_empty() {
            write!(
                f,
                "; non-edges: {}",
                list(self.non_edges.iter().map(|(u, v)| format!("({u},{v})")))
            )?;
        }
        if !self.empty_paths.is_empty() {
            write!(f, "; empty paths: {}", list(self.empty_paths.iter()))?;
        }
        if !self.out_of_range.is_empty() {
            write!(f, "; unknown vertices: {}", list(self.out_of_range.iter()))?;
        }
        Ok(())
    }
}

pub fn validate_path_cover(g: &Dag, pc: &PathCover) -> ValidationReport {
    let mut covered = vec![false; g.n()];
    let mut report = ValidationReport {
        non_edges: Vec::new(),
        uncovered: Vec::new(),
        empty_paths: Vec::new(),
        out_of_range: Vec::new(),
        size: pc.len(),
        total_length: pc.total_length(),
    };
    for (i, path) in pc.paths.iter().enumerate() {
        if path.is_empty() {
            report.empty_paths.push(i);
        }
        for &v in path {
            match covered.get_mut(v as usize) {
                Some(c) => *c = true,
                None => report.out_of_range.push(v as u64),
            }
        }
        for w in path.windows(2) {
            if !g.has_edge(w[0], w[1]) {
                report.non_edges.push((w[0], w[1]));
            }
        }
    }
    report.uncovered = (0..g.n() as Vertex).filter(|&v| !covered[v as usize]).collect();
    report
}
