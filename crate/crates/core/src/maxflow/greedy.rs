use std::cmp::Reverse;
use std::collections::BinaryHeap;

use crate::graph::{Dag, PathCover, TopologicalOrder, Vertex};

/// Greedy cover: repeatedly extract a path through the most uncovered
/// vertices until every vertex is covered.
///
/// The path is found with a DP over the topological order,
/// `dp[v] = uncov(v) + max(0, max dp[u])` over in-neighbors `u`. Ties go to
/// the smallest id, and a predecessor is taken only when its value is
/// strictly positive.
pub fn greedy_cover(g: &Dag) -> PathCover {
    let lists = InLists::new(g);
    let mut dp = GreedyDp::new(g);
    let mut paths = Vec::new();
    while let Some((path, _)) = dp.next_path(&lists) {
        paths.push(path);
    }
    PathCover::new(paths)
}

/// In-neighbor lists in a compacted layout that allows deleting entries:
/// the live entries of `v` are `src[start[v]..start[v] + len[v]]`.
pub(crate) struct InLists {
    pub(crate) start: Vec<usize>,
    pub(crate) len: Vec<usize>,
    pub(crate) src: Vec<Vertex>,
}

impl InLists {
    pub(crate) fn new(g: &Dag) -> Self {
        let n = g.n();
        let mut start = Vec::with_capacity(n + 1);
        let mut src = Vec::with_capacity(g.m());
        for v in 0..n as Vertex {
            start.push(src.len());
            src.extend_from_slice(g.in_neighbors(v));
        }
        start.push(src.len());
        let len = (0..n).map(|v| start[v + 1] - start[v]).collect();
        InLists { start, len, src }
    }

    pub(crate) fn slots(&self, v: Vertex) -> std::ops::Range<usize> {
        let s = self.start[v as usize];
        s..s + self.len[v as usize]
    }
}

/// The greedy DP, kept up to date between paths. Values only decrease, so
/// after a path is taken only vertices whose inputs changed are recomputed
/// (in topological order), and the best end vertex comes from a max-heap
/// with stale entries skipped. The results equal a full recomputation.
pub(crate) struct GreedyDp<'g> {
    g: &'g Dag,
    order: TopologicalOrder,
    dp: Vec<u32>,
    /// In-list slot of the chosen predecessor edge.
    pred: Vec<usize>,
    covered: Vec<bool>,
    left: usize,
    queued: Vec<bool>,
    todo: BinaryHeap<Reverse<u32>>,
    best: BinaryHeap<(u32, Reverse<Vertex>)>,
}

impl<'g> GreedyDp<'g> {
    pub(crate) fn new(g: &'g Dag) -> Self {
        let n = g.n();
        let order = g.topological_order();
        GreedyDp {
            g,
            todo: (0..n as u32).map(Reverse).collect(),
            order,
            dp: vec![u32::MAX; n],
            pred: vec![usize::MAX; n],
            covered: vec![false; n],
            left: n,
            queued: vec![true; n],
            best: BinaryHeap::new(),
        }
    }

    /// Marks `v` for recomputation, e.g. after its in-list changed.
    pub(crate) fn touch(&mut self, v: Vertex) {
        if !self.queued[v as usize] {
            self.queued[v as usize] = true;
            self.todo.push(Reverse(self.order.rank(v)));
        }
    }

    fn refresh(&mut self, lists: &InLists) {
        while let Some(Reverse(r)) = self.todo.pop() {
            let v = self.order.order()[r as usize];
            let vi = v as usize;
            self.queued[vi] = false;
            let (mut best, mut from) = (0, usize::MAX);
            for slot in lists.slots(v) {
                let d = self.dp[lists.src[slot] as usize];
                // In-lists stay sorted by id, so strict `>` keeps the smallest id.
                if d > best {
                    best = d;
                    from = slot;
                }
            }
            self.pred[vi] = from;
            let d = u32::from(!self.covered[vi]) + best;
            if d != self.dp[vi] {
                self.dp[vi] = d;
                self.best.push((d, Reverse(v)));
                // Values only decrease, so `w` can change only if `v` is
                // its chosen predecessor.
                for &w in self.g.out_neighbors(v) {
                    let from = self.pred[w as usize];
                    if from != usize::MAX && lists.src[from] == v {
                        self.touch(w);
                    }
                }
            }
        }
    }

    /// Extracts the next path with its predecessor slots (one per edge, in
    /// path order), or `None` once everything is covered.
    pub(crate) fn next_path(&mut self, lists: &InLists) -> Option<(Vec<Vertex>, Vec<usize>)> {
        if self.left == 0 {
            return None;
        }
        self.refresh(lists);
        let end = loop {
            let &(d, Reverse(v)) = self.best.peek().expect("some vertex is uncovered");
            if self.dp[v as usize] == d {
                break v;
            }
            self.best.pop();
        };
        let (mut path, mut slots) = (vec![end], Vec::new());
        let mut v = end;
        loop {
            if !self.covered[v as usize] {
                self.covered[v as usize] = true;
                self.left -= 1;
                self.touch(v);
            }
            match self.pred[v as usize] {
                usize::MAX => break,
                slot => {
                    slots.push(slot);
                    v = lists.src[slot];
                    path.push(v);
                }
            }
        }
        path.reverse();
        slots.reverse();
        Some((path, slots))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::fixtures::*;
    use crate::graph::{validate_path_cover, width_oracle};
    use rand::{Rng, SeedableRng};

    /// Full DP recomputation for every path.
    fn reference(g: &Dag) -> Vec<Vec<Vertex>> {
        let n = g.n();
        let order = g.topological_order();
        let (mut covered, mut left) = (vec![false; n], n);
        let (mut dp, mut pred) = (vec![0u32; n], vec![Vertex::MAX; n]);
        let mut paths = Vec::new();
        while left > 0 {
            for &v in order.order() {
                let (mut best, mut from) = (0, Vertex::MAX);
                for &u in g.in_neighbors(v) {
                    if dp[u as usize] > best {
                        (best, from) = (dp[u as usize], u);
                    }
                }
                dp[v as usize] = u32::from(!covered[v as usize]) + best;
                pred[v as usize] = from;
            }
            let end = (0..n).fold(0, |e, v| if dp[v] > dp[e] { v } else { e });
            let mut path = vec![end as Vertex];
            while pred[*path.last().unwrap() as usize] != Vertex::MAX {
                path.push(pred[*path.last().unwrap() as usize]);
            }
            for &v in &path {
                left -= usize::from(!covered[v as usize]);
                covered[v as usize] = true;
            }
            path.reverse();
            paths.push(path);
        }
        paths
    }

    #[test]
    fn incremental_dp_matches_full_recomputation() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(6);
        for _ in 0..200 {
            let n = rng.gen_range(1..=80u32);
            let p = rng.gen_range(0.0..0.7f64).powi(2);
            let mut label: Vec<Vertex> = (0..n).collect();
            for j in (1..label.len()).rev() {
                label.swap(j, rng.gen_range(0..=j));
            }
            let edges: Vec<_> = (0..n)
                .flat_map(|u| ((u + 1)..n).map(move |v| (u, v)))
                .filter(|_| rng.gen_bool(p))
                .map(|(u, v)| (label[u as usize], label[v as usize]))
                .collect();
            let g = Dag::from_edges(n as usize, &edges).unwrap();
            assert_eq!(greedy_cover(&g).paths, reference(&g));
        }
    }

    #[test]
    fn hand_run_examples() {
        assert_eq!(greedy_cover(&diamond()).paths, vec![vec![0, 1, 3], vec![2]]);
        assert_eq!(greedy_cover(&chain(3)).paths, vec![vec![0, 1, 2]]);
        assert_eq!(greedy_cover(&triangle()).paths, vec![vec![0, 1, 2]]);
        assert!(greedy_cover(&Dag::edgeless(0)).is_empty());
    }

    #[test]
    fn size_is_within_the_log_bound() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        for _ in 0..200 {
            let n = rng.gen_range(1..=60u32);
            let p = rng.gen_range(0.0..0.6);
            let edges: Vec<_> = (0..n)
                .flat_map(|u| ((u + 1)..n).map(move |v| (u, v)))
                .filter(|_| rng.gen_bool(p))
                .collect();
            let g = Dag::from_edges(n as usize, &edges).unwrap();
            let pc = greedy_cover(&g);
            assert!(validate_path_cover(&g, &pc).is_valid());
            let k = width_oracle(&g).unwrap();
            assert!(pc.len() >= k);
            assert!(pc.len() as f64 <= k as f64 * ((n as f64).ln() + 1.0));
        }
    }
}
