use std::collections::VecDeque;

use crate::deadline::Deadline;
use crate::error::Result;
use crate::flow::{MaxFlowInstance, SINK, SOURCE};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockingOutcome {
    /// Max-flow value, i.e. how much the initial flow shrinks.
    pub value: u64,
    /// Net flow per instance arc, positive along `tail -> head`.
    pub net: Vec<i64>,
    pub augmentations: u64,
    pub phases: u64,
}

const UNREACHED: u32 = u32::MAX;

/// Dinitz's algorithm on a [`MaxFlowInstance`].
///
/// Instance arc `i` becomes residual arcs `2i` (`tail -> head`) and `2i + 1`
/// (`head -> tail`), which share one capacity budget.
pub fn blocking_max_flow(inst: &MaxFlowInstance, deadline: Deadline) -> Result<BlockingOutcome> {
    let nodes = inst.node_count;
    let arcs = inst.arcs.len();
    let mut cap = Vec::with_capacity(2 * arcs);
    let mut to = Vec::with_capacity(2 * arcs);
    let mut offsets = vec![0u32; nodes + 1];
    for a in &inst.arcs {
        cap.extend([a.forward_cap, a.reverse_cap]);
        to.extend([a.head, a.tail]);
        offsets[a.tail as usize + 1] += 1;
        offsets[a.head as usize + 1] += 1;
    }
    for i in 0..nodes {
        offsets[i + 1] += offsets[i];
    }
    let mut fill = offsets.clone();
    let mut adj = vec![0u32; 2 * arcs];
    for (i, a) in inst.arcs.iter().enumerate() {
        for (node, id) in [(a.tail, 2 * i), (a.head, 2 * i + 1)] {
            adj[fill[node as usize] as usize] = id as u32;
            fill[node as usize] += 1;
        }
    }

    let (s, t) = (SOURCE as usize, SINK as usize);
    let mut level = vec![UNREACHED; nodes];
    let mut iter = vec![0u32; nodes];
    let mut queue = VecDeque::new();
    let mut stack: Vec<u32> = Vec::new();
    let mut out = BlockingOutcome {
        value: 0,
        net: Vec::new(),
        augmentations: 0,
        phases: 0,
    };
    let mut last_dist = 0;

    loop {
        deadline.check()?;
        level.fill(UNREACHED);
        level[s] = 0;
        queue.clear();
        queue.push_back(s);
        while let Some(x) = queue.pop_front() {
            for &e in &adj[offsets[x] as usize..offsets[x + 1] as usize] {
                let y = to[e as usize] as usize;
                if cap[e as usize] > 0 && level[y] == UNREACHED {
                    level[y] = level[x] + 1;
                    queue.push_back(y);
                }
            }
        }
        if level[t] == UNREACHED {
            break;
        }
        assert!(
            level[t] > last_dist,
            "level-graph distance did not increase: {} after {last_dist}",
            level[t]
        );
        last_dist = level[t];
        out.phases += 1;
        iter.copy_from_slice(&offsets[..nodes]);

        // Iterative DFS along current arcs; `stack` holds the arcs of the
        // partial path from s.
        stack.clear();
        let mut x = s;
        loop {
            if x == t {
                let push = stack.iter().map(|&e| cap[e as usize]).min().unwrap();
                let mut cut = None;
                for (i, &e) in stack.iter().enumerate() {
                    cap[e as usize] -= push;
                    cap[(e ^ 1) as usize] += push;
                    if cut.is_none() && cap[e as usize] == 0 {
                        cut = Some(i);
                    }
                }
                out.value += push as u64;
                out.augmentations += 1;
                if out.augmentations.is_multiple_of(1024) {
                    deadline.check()?;
                }
                let i = cut.unwrap();
                stack.truncate(i);
                x = if i == 0 { s } else { to[stack[i - 1] as usize] as usize };
                continue;
            }
            let end = offsets[x + 1];
            let mut advanced = false;
            while iter[x] < end {
                let e = adj[iter[x] as usize] as usize;
                let y = to[e] as usize;
                if cap[e] > 0 && level[y] == level[x] + 1 {
                    stack.push(e as u32);
                    x = y;
                    advanced = true;
                    break;
                }
                iter[x] += 1;
            }
            if advanced {
                continue;
            }
            // Dead end: drop x from this level graph and retreat.
            level[x] = UNREACHED;
            match stack.pop() {
                None => break,
                Some(e) => {
                    x = to[(e ^ 1) as usize] as usize;
                    iter[x] += 1;
                }
            }
        }
    }

    out.net = inst
        .arcs
        .iter()
        .enumerate()
        .map(|(i, a)| a.forward_cap as i64 - cap[2 * i] as i64)
        .collect();
    Ok(out)
}
