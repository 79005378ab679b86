//! Parameterized MPC solvers that process vertices in topological order.
//!
//! Each step adds one vertex as its own path, keeps at most one incoming
//! edge per path id, and runs one layered residual traversal to restore a
//! minimum flow. `k2` tracks ids on segments of each layer and only
//! re-decomposes the lowest layer touched; `k3` relabels every vertex of
//! all layers from that one up.

mod check;
mod engine;

use crate::deadline::Deadline;
use crate::error::Result;
use crate::generators::transitive_closure;
use crate::graph::{Dag, PathCover};
use check::CHAIN_CHECK_LIMIT;
use engine::{Engine, Labels};

#[derive(Debug, Clone, Copy, Default)]
pub struct ParamOptions {
    /// Scan all invariants after every vertex (slow).
    pub check_invariants: bool,
    pub deadline: Deadline,
}

/// Operation counters of one run.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct ParamStats {
    /// Work charged to input edges: in-neighbor scans plus arcs added.
    pub edge_ops: u64,
    /// Nodes dequeued by the layered traversals.
    pub visits: u64,
    /// Steps of the per-layer decompositions.
    pub decompose_ops: u64,
    /// Segment records examined while resolving path ids.
    pub resolve_ops: u64,
    pub segments: u64,
    pub merges: u64,
    pub max_layers: usize,
    /// Arcs of the sparsified reduction.
    pub arcs: usize,
}

pub fn k2_solve(g: &Dag) -> Result<PathCover> {
    k2_solve_with(g, &ParamOptions::default()).map(|(pc, _)| pc)
}

pub fn k3_solve(g: &Dag) -> Result<PathCover> {
    k3_solve_with(g, &ParamOptions::default()).map(|(pc, _)| pc)
}

pub fn k2_solve_with(g: &Dag, opts: &ParamOptions) -> Result<(PathCover, ParamStats)> {
    solve(g, Labels::BackLinks, opts)
}

pub fn k3_solve_with(g: &Dag, opts: &ParamOptions) -> Result<(PathCover, ParamStats)> {
    solve(g, Labels::Full, opts)
}

fn solve(g: &Dag, labels: Labels, opts: &ParamOptions) -> Result<(PathCover, ParamStats)> {
    if g.n() == 0 {
        return Ok((PathCover::default(), ParamStats::default()));
    }
    let order = g.topological_order();
    let closure = (opts.check_invariants && g.n() <= CHAIN_CHECK_LIMIT).then(|| transitive_closure(g));
    let mut engine = Engine::new(g, labels, order.ranks().to_vec());
    for (i, &v) in order.order().iter().enumerate() {
        if i % 64 == 0 {
            opts.deadline.check()?;
        }
        engine.process(v)?;
        if opts.check_invariants {
            engine.check_invariants(&order.order()[..=i], closure.as_ref())?;
        }
    }
    let mut stats = engine.stats;
    stats.arcs = engine.arcs.len();
    Ok((engine.finish()?, stats))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::fixtures::*;
    use crate::graph::{validate_path_cover, width_oracle, Vertex};
    use crate::MpcError;
    use rand::seq::SliceRandom;
    use rand::{Rng, SeedableRng};

    type Solver = fn(&Dag, &ParamOptions) -> Result<(PathCover, ParamStats)>;
    const SOLVERS: [(&str, Solver); 2] = [("k2", k2_solve_with), ("k3", k3_solve_with)];

    fn checked() -> ParamOptions {
        ParamOptions {
            check_invariants: true,
            ..ParamOptions::default()
        }
    }

    /// Random DAG with shuffled vertex ids, so topological ranks differ from ids.
    fn random_dag(rng: &mut impl Rng, n: u32, p: f64) -> Dag {
        let mut label: Vec<Vertex> = (0..n).collect();
        label.shuffle(rng);
        let edges: Vec<_> = (0..n)
            .flat_map(|u| ((u + 1)..n).map(move |v| (u, v)))
            .filter(|_| rng.gen_bool(p))
            .map(|(u, v)| (label[u as usize], label[v as usize]))
            .collect();
        Dag::from_edges(n as usize, &edges).unwrap()
    }

    fn run(solver: Solver, g: &Dag) -> (PathCover, ParamStats) {
        let (pc, stats) = solver(g, &checked()).unwrap();
        assert!(validate_path_cover(g, &pc).is_valid());
        (pc, stats)
    }

    #[test]
    fn small_examples() {
        for (name, solver) in SOLVERS {
            assert_eq!(run(solver, &diamond()).0.len(), 2, "{name}");
            assert_eq!(run(solver, &triangle()).0.len(), 1, "{name}");
            assert_eq!(run(solver, &chain(5)).0.len(), 1, "{name}");
            assert_eq!(run(solver, &Dag::edgeless(6)).0.len(), 6, "{name}");
            assert_eq!(run(solver, &Dag::edgeless(1)).0.paths, vec![vec![0]], "{name}");
            assert!(solver(&Dag::edgeless(0), &checked()).unwrap().0.is_empty());
        }
    }

    #[test]
    fn width_three_example() {
        // Two crossing chains plus a side vertex; {1, 3, 6} is a maximum antichain.
        let edges = [(0, 1), (1, 2), (0, 3), (3, 4), (1, 4), (3, 2), (5, 6), (6, 4)];
        let g = Dag::from_edges(7, &edges).unwrap();
        assert_eq!(width_oracle(&g).unwrap(), 3);
        for (_, solver) in SOLVERS {
            assert_eq!(run(solver, &g).0.len(), 3);
        }
    }

    #[test]
    fn incoming_edges_are_sparsified_per_path() {
        for (_, solver) in SOLVERS {
            // At vertex 2, in-neighbors 0 and 1 share a path: only (1,2) enters.
            assert_eq!(run(solver, &triangle()).1.arcs, 2);
            // At vertex 3, in-neighbors 1 and 2 lie on different paths.
            assert_eq!(run(solver, &diamond()).1.arcs, 4);
            let complete: Vec<_> = (0..6).flat_map(|u| (u + 1..6).map(move |v| (u, v))).collect();
            assert_eq!(run(solver, &Dag::from_edges(6, &complete).unwrap()).1.arcs, 5);
        }
    }

    #[test]
    fn chain_stays_in_one_layer() {
        for (_, solver) in SOLVERS {
            let (pc, stats) = run(solver, &chain(300));
            assert_eq!(pc.len(), 1);
            assert!(stats.max_layers <= 2);
        }
    }

    #[test]
    fn random_graphs_match_the_oracle() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(23);
        for _ in 0..200 {
            let n = rng.gen_range(1..=60);
            let p = rng.gen_range(0.0..0.6f64).powi(2);
            let g = random_dag(&mut rng, n, p);
            let k = width_oracle(&g).unwrap();
            for (name, solver) in SOLVERS {
                let (pc, stats) = run(solver, &g);
                assert_eq!(pc.len(), k, "{name} on {:?}", g.edges().collect::<Vec<_>>());
                assert!(stats.edge_ops <= 2 * g.m() as u64);
            }
        }
    }

    #[test]
    fn every_prefix_is_solved_minimally() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(29);
        let g = random_dag(&mut rng, 40, 0.1);
        let order = g.topological_order();
        for i in 1..=g.n() {
            // Induced subgraph on the first i vertices, relabeled by rank.
            let rank = order.ranks();
            let edges: Vec<_> = g
                .edges()
                .filter(|&(u, v)| (rank[u as usize] as usize) < i && (rank[v as usize] as usize) < i)
                .map(|(u, v)| (rank[u as usize], rank[v as usize]))
                .collect();
            let prefix = Dag::from_edges(i, &edges).unwrap();
            let k = width_oracle(&prefix).unwrap();
            for (_, solver) in SOLVERS {
                assert_eq!(run(solver, &prefix).0.len(), k);
            }
        }
    }

    #[test]
    fn expired_deadline_times_out() {
        let past = ParamOptions {
            deadline: Deadline::at(std::time::Instant::now()),
            ..ParamOptions::default()
        };
        assert_eq!(k2_solve_with(&chain(10), &past).unwrap_err(), MpcError::TimedOut);
    }
}
