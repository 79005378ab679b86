use std::collections::{HashMap, HashSet};

use super::engine::{Engine, NIL};
use crate::error::{MpcError, Result};
use crate::flow::{node_in, node_out};
use crate::graph::{Dag, Vertex};

/// Label-chain checks need reachability; they run only up to this size.
pub(crate) const CHAIN_CHECK_LIMIT: usize = 2000;

fn fail<T>(msg: String) -> Result<T> {
    Err(MpcError::InvariantViolation(msg))
}

impl<'g> Engine<'g> {
    /// Full scan of the state after processing `done` (a topological prefix).
    pub(crate) fn check_invariants(&mut self, done: &[Vertex], closure: Option<&Dag>) -> Result<()> {
        self.gen += 1;
        // Layer lists and t-exit counts.
        let mut listed = 0;
        for p in 0..self.by_pos.len() {
            let h = self.by_pos[p];
            let (mut x, mut exits) = (self.lhead[h as usize], 0);
            while x != NIL {
                listed += 1;
                if self.pos(x) != p {
                    return fail(format!("node {x} listed in layer {p} but sits elsewhere"));
                }
                if x % 2 == 1 {
                    exits += self.sink[((x - 3) / 2) as usize];
                }
                x = self.next[x as usize];
            }
            if exits != self.exits[h as usize] {
                return fail(format!("layer {p} counts {} exits, found {exits}", self.exits[h as usize]));
            }
            if exits == 0 {
                return fail(format!("layer {p} has no flow to t"));
            }
        }
        if listed != 2 * done.len() {
            return fail(format!("{listed} nodes listed for {} vertices", done.len()));
        }
        if self.by_pos.len() > self.size as usize {
            return fail(format!("{} layers for flow size {}", self.by_pos.len(), self.size));
        }

        // Conservation and level monotonicity.
        let mut starts = 0;
        for &v in done {
            let vi = v as usize;
            let (a0, a1) = self.in_range[vi];
            let inflow = u32::from(self.source[vi])
                + (a0..a1).map(|a| self.arc_flow[a as usize]).sum::<u32>();
            let outflow = self.sink[vi]
                + (0..self.out_len[vi])
                    .map(|k| self.arc_flow[self.out_arc(v, k) as usize])
                    .sum::<u32>();
            for k in 0..self.out_len[vi] {
                let with_flow = self.arc_flow[self.out_arc(v, k) as usize] > 0;
                if with_flow != (k < self.fcount[vi]) {
                    return fail(format!("out-slot {k} of {v} is misplaced"));
                }
            }
            let split = self.split[vi];
            if split == 0 || inflow != split || outflow != split {
                return fail(format!("flow at {v}: in {inflow}, split {split}, out {outflow}"));
            }
            starts += u32::from(self.source[vi]);
            let (pi, po) = (self.pos(node_in(v)), self.pos(node_out(v)));
            if pi > po || (split > 1 && pi != po) || (pi < po && split != 1) {
                return fail(format!("levels of {v}: in {pi}, out {po}, split {split}"));
            }
        }
        if starts != self.size {
            return fail(format!("{starts} flow units for size {}", self.size));
        }
        for a in 0..self.arcs.len() {
            let (u, w) = self.arcs[a];
            let (pu, pw) = (self.pos(node_out(u)), self.pos(node_in(w)));
            if pu > pw || (self.arc_flow[a] > 0 && pu != pw) {
                return fail(format!("levels across arc ({u},{w}): {pu} -> {pw}"));
            }
        }

        // Segments: one live segment per entry, distinct ids per layer.
        for p in 0..self.by_pos.len() {
            let h = self.by_pos[p] as usize;
            let list = self.lsegs[h].clone();
            let mut ids = HashSet::new();
            let mut entries = HashSet::new();
            for s in list {
                if self.sroot(s) != s {
                    continue;
                }
                let e = self.sentry[s as usize];
                let up = self.up_seg[e as usize];
                let crossing = up != NIL
                    && self.sroot(up) == s
                    && self.pos(node_out(e)) == p
                    && self.pos(node_in(e)) < p;
                let start = self.source[e as usize]
                    && self.pos(node_in(e)) == p
                    && self.sroot(self.seg[e as usize]) == s;
                if !crossing && !start {
                    continue;
                }
                let id = self.resolve(s);
                if !ids.insert(id) {
                    return fail(format!("id {id} repeats in layer {p}"));
                }
                entries.insert(e);
            }
            let mut expected = 0;
            let mut x = self.lhead[h];
            while x != NIL {
                let v = (x - 2) / 2;
                let is_out = x % 2 == 1;
                let entry = if is_out {
                    self.pos(node_in(v)) < p
                } else {
                    self.source[v as usize]
                };
                if entry {
                    expected += 1;
                    if !entries.contains(&v) {
                        return fail(format!("entry {v} of layer {p} has no segment"));
                    }
                }
                x = self.next[x as usize];
            }
            if expected != entries.len() {
                return fail(format!("layer {p}: {} segments for {expected} entries", entries.len()));
            }
        }

        // Labels: ids in range, and vertices sharing an id form a chain.
        let mut classes: HashMap<u32, Vec<Vertex>> = HashMap::new();
        for &v in done {
            let c = self.label(v);
            if c >= self.size {
                return fail(format!("vertex {v} has id {c} beyond flow size {}", self.size));
            }
            classes.entry(c).or_default().push(v);
        }
        if let Some(closure) = closure {
            for (c, mut members) in classes {
                members.sort_by_key(|&v| self.rank[v as usize]);
                for w in members.windows(2) {
                    if !closure.has_edge(w[0], w[1]) {
                        return fail(format!("id {c} labels {} and {}, which are not a chain", w[0], w[1]));
                    }
                }
            }
        }
        Ok(())
    }
}
