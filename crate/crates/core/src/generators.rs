//! Seeded random DAG families and the transitive closure.
//!
//! Every generator uses [`ChaCha8Rng`] seeded with the 64-bit seed of the
//! [`GenSpec`], so the same [`GenSpec`] always produces the same graph.

use std::collections::HashSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::bitset::BitMatrix;
use crate::error::{MpcError, Result};
use crate::graph::{Dag, Vertex};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Family {
    RandomDag,
    PathPartition,
    TransitiveClosure,
}

impl Family {
    pub fn name(self) -> &'static str {
        match self {
            Family::RandomDag => "random",
            Family::PathPartition => "pathpart",
            Family::TransitiveClosure => "tc",
        }
    }
}

impl std::fmt::Display for Family {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for Family {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "random" => Ok(Family::RandomDag),
            "pathpart" => Ok(Family::PathPartition),
            "tc" => Ok(Family::TransitiveClosure),
            other => Err(format!("unknown family {other:?} (expected random, pathpart or tc)")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct GenSpec {
    pub family: Family,
    pub n: usize,
    pub m: u64,
    /// Number of parts; only read for [`Family::PathPartition`].
    pub k_parts: Option<usize>,
    pub seed: u64,
}

impl GenSpec {
    pub fn random(n: usize, m: u64, seed: u64) -> Self {
        GenSpec {
            family: Family::RandomDag,
            n,
            m,
            k_parts: None,
            seed,
        }
    }

    pub fn path_partition(n: usize, m: u64, k_parts: usize, seed: u64) -> Self {
        GenSpec {
            family: Family::PathPartition,
            k_parts: Some(k_parts),
            ..GenSpec::random(n, m, seed)
        }
    }

    pub fn transitive_closure(n: usize, m: u64, seed: u64) -> Self {
        GenSpec {
            family: Family::TransitiveClosure,
            ..GenSpec::random(n, m, seed)
        }
    }

    pub fn max_edges(&self) -> u64 {
        let n = self.n as u64;
        n * n.saturating_sub(1) / 2
    }

    fn check_density(&self) -> Result<()> {
        if self.m > self.max_edges() {
            return Err(MpcError::TooDense {
                n: self.n,
                m: self.m,
                max: self.max_edges(),
            });
        }
        if self.n > Vertex::MAX as usize {
            return Err(MpcError::InvalidSpec(format!("n = {} is too large", self.n)));
        }
        Ok(())
    }
}

/// Builds the graph described by `spec`.
pub fn generate(spec: &GenSpec) -> Result<Dag> {
    match spec.family {
        Family::RandomDag => gen_random_dag(spec),
        Family::PathPartition => gen_path_partition(spec),
        Family::TransitiveClosure => gen_transitive_closure(spec),
    }
}

fn random_edges(spec: &GenSpec, rng: &mut ChaCha8Rng) -> Result<Vec<(Vertex, Vertex)>> {
    spec.check_density()?;
    let n = spec.n as u64;
    let mut keys: HashSet<u64> = HashSet::with_capacity(spec.m as usize);
    let mut edges = Vec::with_capacity(spec.m as usize);
    while (edges.len() as u64) < spec.m {
        let a = rng.gen_range(0..n);
        let b = rng.gen_range(0..n);
        if a == b {
            continue;
        }
        let (lo, hi) = (a.min(b), a.max(b));
        if keys.insert(lo * n + hi) {
            edges.push((lo as Vertex, hi as Vertex));
        }
    }
    Ok(edges)
}

/// `m` distinct vertex pairs drawn uniformly, each oriented from the smaller
/// id to the larger, so `0..n` is a topological order.
pub fn gen_random_dag(spec: &GenSpec) -> Result<Dag> {
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let edges = random_edges(spec, &mut rng)?;
    Dag::from_edges(spec.n, &edges)
}

/// A random DAG plus, for each of `k_parts` uniformly assigned parts, the
/// edges joining consecutive members of the part. Edges already present are
/// not duplicated.
pub fn gen_path_partition(spec: &GenSpec) -> Result<Dag> {
    let k = spec
        .k_parts
        .ok_or_else(|| MpcError::InvalidSpec("path partition needs k_parts".into()))?;
    if k == 0 || k > spec.n.max(1) {
        return Err(MpcError::InvalidSpec(format!(
            "k_parts = {k} must lie in 1..={}",
            spec.n
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let mut edges = random_edges(spec, &mut rng)?;
    let n = spec.n as u64;
    let mut keys: HashSet<u64> = edges
        .iter()
        .map(|&(u, v)| u as u64 * n + v as u64)
        .collect();
    let mut last_in_part: Vec<Option<Vertex>> = vec![None; k];
    for v in 0..spec.n as Vertex {
        let part = rng.gen_range(0..k);
        if let Some(u) = last_in_part[part] {
            if keys.insert(u as u64 * n + v as u64) {
                edges.push((u, v));
            }
        }
        last_in_part[part] = Some(v);
    }
    Dag::from_edges(spec.n, &edges)
}

/// Transitive closure of a random DAG. Same width as the underlying graph.
pub fn gen_transitive_closure(spec: &GenSpec) -> Result<Dag> {
    Ok(transitive_closure(&gen_random_dag(spec)?))
}

/// Edge `(u, v)` for every `u != v` with `u` reaching `v`, computed with
/// reachability bit rows swept in reverse topological order.
pub fn transitive_closure(g: &Dag) -> Dag {
    let n = g.n();
    let mut reach = BitMatrix::new(n, n);
    for &v in g.topological_order().order().iter().rev() {
        for &w in g.out_neighbors(v) {
            reach.set(v as usize, w as usize);
            reach.or_row_into(w as usize, v as usize);
        }
    }
    let edges: Vec<_> = (0..n)
        .flat_map(|u| reach.row_ones(u).map(move |v| (u as Vertex, v as Vertex)))
        .collect();
    Dag::from_edges(n, &edges).expect("closure of a DAG is a DAG")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::fixtures::*;
    use crate::graph::{reaches_oracle, width_oracle, write_graph};

    #[test]
    fn complete_order_dag() {
        let g = gen_random_dag(&GenSpec::random(4, 6, 1)).unwrap();
        assert_eq!(g.m(), 6);
        assert_eq!(width_oracle(&g).unwrap(), 1);
        assert_eq!(transitive_closure(&g), g);
        assert_eq!(gen_transitive_closure(&GenSpec::transitive_closure(4, 6, 9)).unwrap(), g);
    }

    #[test]
    fn edgeless_random_dag() {
        let g = gen_random_dag(&GenSpec::random(1000, 0, 3)).unwrap();
        assert_eq!(g.m(), 0);
        assert_eq!(width_oracle(&g).unwrap(), 1000);
    }

    #[test]
    fn too_dense_is_rejected() {
        assert!(matches!(
            gen_random_dag(&GenSpec::random(4, 7, 0)),
            Err(MpcError::TooDense { max: 6, .. })
        ));
    }

    #[test]
    fn random_edges_ascend_and_count_is_exact() {
        let g = gen_random_dag(&GenSpec::random(300, 2000, 11)).unwrap();
        assert_eq!(g.m(), 2000);
        assert!(g.edges().all(|(u, v)| u < v));
    }

    #[test]
    fn path_partition_examples() {
        let single = gen_path_partition(&GenSpec::path_partition(25, 0, 1, 5)).unwrap();
        assert_eq!(single.m(), 24);
        assert_eq!(width_oracle(&single).unwrap(), 1);
        let singletons = gen_path_partition(&GenSpec::path_partition(10, 0, 10, 5));
        // Parts are random, so only the bound is fixed in general; with m = 0
        // every edge joins two members of one part.
        let singletons = singletons.unwrap();
        assert!(width_oracle(&singletons).unwrap() <= 10);
        assert!(gen_path_partition(&GenSpec::path_partition(10, 0, 11, 5)).is_err());
        assert!(gen_path_partition(&GenSpec::path_partition(10, 0, 0, 5)).is_err());
    }

    #[test]
    fn path_partition_width_bounded_by_parts() {
        for seed in 0..20 {
            let spec = GenSpec::path_partition(120, 150, 7, seed);
            let g = gen_path_partition(&spec).unwrap();
            assert!(g.m() as u64 <= 150 + 120 - 7);
            assert!(width_oracle(&g).unwrap() <= 7);
        }
    }

    #[test]
    fn closure_examples() {
        let c = transitive_closure(&chain(3));
        assert_eq!(c.edges().collect::<Vec<_>>(), vec![(0, 1), (0, 2), (1, 2)]);
        assert_eq!(transitive_closure(&Dag::edgeless(4)).m(), 0);
        let d = transitive_closure(&diamond());
        let added: Vec<_> = d.edges().filter(|&(u, v)| !diamond().has_edge(u, v)).collect();
        assert_eq!(added, vec![(0, 3)]);
    }

    #[test]
    fn closure_matches_reachability_and_is_idempotent() {
        for seed in 0..10 {
            let g = gen_random_dag(&GenSpec::random(40, 60, seed)).unwrap();
            let c = transitive_closure(&g);
            for u in 0..40 {
                for v in 0..40 {
                    assert_eq!(c.has_edge(u, v), u != v && reaches_oracle(&g, u, v));
                }
            }
            assert_eq!(transitive_closure(&c), c);
            assert_eq!(width_oracle(&c).unwrap(), width_oracle(&g).unwrap());
        }
    }

    #[test]
    fn same_spec_same_bytes() {
        for spec in [
            GenSpec::random(500, 3000, 42),
            GenSpec::path_partition(500, 300, 13, 42),
            GenSpec::transitive_closure(200, 300, 42),
        ] {
            assert_eq!(
                write_graph(&generate(&spec).unwrap()),
                write_graph(&generate(&spec).unwrap())
            );
        }
        assert_ne!(
            write_graph(&generate(&GenSpec::random(500, 3000, 1)).unwrap()),
            write_graph(&generate(&GenSpec::random(500, 3000, 2)).unwrap())
        );
    }
}
