//! Brute-force reference implementations used to check the solvers.
//!
//! Nothing here shares code with the flow or sparsification modules.

use super::{Dag, Vertex};
use crate::error::{MpcError, Result};

/// Largest instance accepted by [`width_oracle`].
pub const WIDTH_ORACLE_LIMIT: usize = 5_000;

/// Whether a directed path from `u` to `v` exists. Reflexive.
pub fn reaches_oracle(g: &Dag, u: Vertex, v: Vertex) -> bool {
    if u == v {
        return true;
    }
    let mut seen = vec![false; g.n()];
    let mut stack = vec![u];
    seen[u as usize] = true;
    while let Some(x) = stack.pop() {
        for &y in g.out_neighbors(x) {
            if y == v {
                return true;
            }
            if !seen[y as usize] {
                seen[y as usize] = true;
                stack.push(y);
            }
        }
    }
    false
}

/// Vertices reachable from `u`, excluding `u` itself.
fn strict_descendants(g: &Dag, u: Vertex, seen: &mut [u32], stamp: u32) -> Vec<Vertex> {
    let mut out = Vec::new();
    let mut stack = vec![u];
    seen[u as usize] = stamp;
    while let Some(x) = stack.pop() {
        for &y in g.out_neighbors(x) {
            if seen[y as usize] != stamp {
                seen[y as usize] = stamp;
                out.push(y);
                stack.push(y);
            }
        }
    }
    out
}

/// Width of `g`: `n` minus a maximum matching of the bipartite graph that
/// joins `u` (left) to `v` (right) whenever `u` strictly reaches `v`.
pub fn width_oracle(g: &Dag) -> Result<usize> {
    let n = g.n();
    if n > WIDTH_ORACLE_LIMIT {
        return Err(MpcError::InstanceTooLarge {
            n,
            limit: WIDTH_ORACLE_LIMIT,
        });
    }
    let mut seen = vec![0u32; n];
    let reach: Vec<Vec<Vertex>> = (0..n as Vertex)
        .map(|u| strict_descendants(g, u, &mut seen, u + 1))
        .collect();

    const FREE: u32 = u32::MAX;
    let mut match_right = vec![FREE; n];
    let mut visited = vec![0u32; n];
    let mut matching = 0;
    for root in 0..n as u32 {
        // Kuhn's augmenting path search, iterative.
        let stamp = root + 1;
        let mut stack: Vec<(u32, usize)> = vec![(root, 0)];
        let mut via: Vec<u32> = Vec::new();
        let mut found = false;
        while let Some(&mut (left, ref mut next)) = stack.last_mut() {
            let cand = &reach[left as usize];
            if *next >= cand.len() {
                stack.pop();
                via.pop();
                continue;
            }
            let right = cand[*next];
            *next += 1;
            if visited[right as usize] == stamp {
                continue;
            }
            visited[right as usize] = stamp;
            via.push(right);
            let owner = match_right[right as usize];
            if owner == FREE {
                found = true;
                break;
            }
            stack.push((owner, 0));
        }
        if found {
            // stack[i] is the left vertex that takes via[i].
            for (&(left, _), &right) in stack.iter().zip(via.iter()) {
                match_right[right as usize] = left;
            }
            matching += 1;
        }
    }
    Ok(n - matching)
}
