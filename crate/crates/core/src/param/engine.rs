use std::collections::VecDeque;

use super::ParamStats;
use crate::error::{MpcError, Result};
use crate::flow::{base_of, decompose_flow, node_in, node_out, Flow, FlowReduction, Node};
use crate::graph::{Dag, PathCover, Vertex};

pub(crate) const NIL: u32 = u32::MAX;

/// How path ids are kept for in-edge sparsification.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Labels {
    /// Ids live on segments; a vertex finds its id through its segment.
    BackLinks,
    /// Every vertex stores its own id; all layers from `l` up are redone.
    Full,
}

/// Residual step into a node: `edge` is `split(u) = u`, `sink(u) = n + u`
/// or `arc(a) = 2n + a`.
#[derive(Debug, Clone, Copy)]
pub(crate) struct Step {
    from: Node,
    edge: u32,
    direct: bool,
}

const NO_STEP: Step = Step {
    from: NIL,
    edge: NIL,
    direct: false,
};

/// Incremental flow reduction, levels and segment decomposition.
///
/// Levels are layer handles merged with union-find; `by_pos` lists the root
/// handles bottom to top. Every residual edge between non-terminal nodes
/// goes to an equal or lower layer. Each layer is split into segments: the
/// pieces of flow units inside it, each starting at an entry vertex
/// (crossing in from below, or fed by `s`).
pub(crate) struct Engine<'g> {
    pub(crate) g: &'g Dag,
    pub(crate) labels: Labels,
    pub(crate) n: usize,
    pub(crate) rank: Vec<u32>,

    pub(crate) split: Vec<u32>,
    pub(crate) source: Vec<bool>,
    pub(crate) sink: Vec<u32>,
    pub(crate) arcs: Vec<(Vertex, Vertex)>,
    pub(crate) arc_flow: Vec<u32>,
    pub(crate) in_range: Vec<(u32, u32)>,
    out_off: Vec<u32>,
    pub(crate) out_len: Vec<u32>,
    /// The first `fcount[u]` out-slots of `u` hold exactly its arcs with flow.
    pub(crate) fcount: Vec<u32>,
    out_arcs: Vec<u32>,
    /// Out-slot of each arc, relative to its tail.
    oslot: Vec<u32>,
    pub(crate) size: u32,

    lvl: Vec<u32>,
    lparent: Vec<u32>,
    lpos: Vec<u32>,
    pub(crate) by_pos: Vec<u32>,
    pub(crate) exits: Vec<u32>,
    pub(crate) lhead: Vec<u32>,
    ltail: Vec<u32>,
    pub(crate) lsegs: Vec<Vec<u32>>,
    /// Stamp renewed whenever ids in the layer may have changed.
    lepoch: Vec<u32>,
    epoch: u32,
    pub(crate) next: Vec<u32>,
    prev: Vec<u32>,

    sparent: Vec<u32>,
    pub(crate) sentry: Vec<Vertex>,
    pub(crate) sval: Vec<u32>,
    rval: Vec<u32>,
    rstamp: Vec<u32>,
    chain: Vec<u32>,
    free: Vec<u32>,
    pub(crate) seg: Vec<u32>,
    pub(crate) up_seg: Vec<u32>,
    pub(crate) sid: Vec<u32>,
    pub(crate) vid: Vec<u32>,
    /// Cached ids with the layer epoch they were read in.
    vval: Vec<u32>,
    vepoch: Vec<u32>,

    stamp: u32,
    disc: Vec<u32>,
    in_s: Vec<u32>,
    parent: Vec<Step>,
    t_step: Step,
    queues: Vec<VecDeque<Node>>,
    pending: usize,
    low_push: usize,
    s_list: Vec<Node>,
    it: u32,
    sur: Vec<Vertex>,
    sur_stamp: Vec<u32>,
    sur_ids: Vec<u32>,
    dstamp: u32,
    rem_arc: Vec<u32>,
    rem_arc_stamp: Vec<u32>,
    rem_sink: Vec<u32>,
    ptr: Vec<u32>,
    vstamp: Vec<u32>,
    entries: Vec<(Vertex, bool)>,
    pub(crate) gen: u32,

    pub(crate) stats: ParamStats,
}

impl<'g> Engine<'g> {
    pub(crate) fn new(g: &'g Dag, labels: Labels, rank: Vec<u32>) -> Self {
        let n = g.n();
        let nodes = 2 * n + 2;
        let mut out_off = Vec::with_capacity(n + 1);
        let mut acc = 0u32;
        for v in 0..n as Vertex {
            out_off.push(acc);
            acc += g.out_neighbors(v).len() as u32;
        }
        out_off.push(acc);
        Engine {
            g,
            labels,
            n,
            rank,
            split: vec![0; n],
            source: vec![false; n],
            sink: vec![0; n],
            arcs: Vec::new(),
            arc_flow: Vec::new(),
            in_range: vec![(0, 0); n],
            out_off,
            out_len: vec![0; n],
            fcount: vec![0; n],
            out_arcs: vec![0; g.m()],
            oslot: Vec::new(),
            size: 0,
            lvl: vec![NIL; nodes],
            lparent: Vec::new(),
            lpos: Vec::new(),
            by_pos: Vec::new(),
            exits: Vec::new(),
            lhead: Vec::new(),
            ltail: Vec::new(),
            lsegs: Vec::new(),
            lepoch: Vec::new(),
            epoch: 0,
            next: vec![NIL; nodes],
            prev: vec![NIL; nodes],
            sparent: Vec::new(),
            sentry: Vec::new(),
            sval: Vec::new(),
            rval: Vec::new(),
            rstamp: Vec::new(),
            chain: Vec::new(),
            free: Vec::new(),
            seg: vec![NIL; n],
            up_seg: vec![NIL; n],
            sid: vec![NIL; n],
            vid: vec![NIL; n],
            vval: vec![0; n],
            vepoch: vec![0; n],
            stamp: 0,
            disc: vec![0; nodes],
            in_s: vec![0; nodes],
            parent: vec![NO_STEP; nodes],
            t_step: NO_STEP,
            queues: Vec::new(),
            pending: 0,
            low_push: 0,
            s_list: Vec::new(),
            it: 0,
            sur: vec![0; n],
            sur_stamp: vec![0; n],
            sur_ids: Vec::new(),
            dstamp: 0,
            rem_arc: Vec::new(),
            rem_arc_stamp: Vec::new(),
            rem_sink: vec![0; n],
            ptr: vec![0; n],
            vstamp: vec![0; n],
            entries: Vec::new(),
            gen: 0,
            stats: ParamStats::default(),
        }
    }

    // ---- edge encoding ----

    #[inline]
    fn split_edge(&self, u: Vertex) -> u32 {
        u
    }

    #[inline]
    fn sink_edge(&self, u: Vertex) -> u32 {
        self.n as u32 + u
    }

    #[inline]
    fn arc_edge(&self, a: u32) -> u32 {
        2 * self.n as u32 + a
    }

    #[inline]
    pub(crate) fn out_arc(&self, u: Vertex, k: u32) -> u32 {
        self.out_arcs[(self.out_off[u as usize] + k) as usize]
    }

    // ---- layers ----

    fn lroot(&mut self, mut h: u32) -> u32 {
        let mut r = h;
        while self.lparent[r as usize] != r {
            r = self.lparent[r as usize];
        }
        while self.lparent[h as usize] != r {
            let up = self.lparent[h as usize];
            self.lparent[h as usize] = r;
            h = up;
        }
        r
    }

    #[inline]
    pub(crate) fn layer_of(&mut self, x: Node) -> u32 {
        let r = self.lroot(self.lvl[x as usize]);
        self.lvl[x as usize] = r;
        r
    }

    #[inline]
    pub(crate) fn pos(&mut self, x: Node) -> usize {
        let r = self.layer_of(x);
        self.lpos[r as usize] as usize
    }

    fn new_layer(&mut self) -> u32 {
        let h = self.lparent.len() as u32;
        self.lparent.push(h);
        self.lpos.push(self.by_pos.len() as u32);
        self.by_pos.push(h);
        self.exits.push(0);
        self.lhead.push(NIL);
        self.ltail.push(NIL);
        self.lsegs.push(Vec::new());
        self.epoch += 1;
        self.lepoch.push(self.epoch);
        if self.queues.len() < self.by_pos.len() {
            self.queues.push(VecDeque::new());
        }
        self.stats.max_layers = self.stats.max_layers.max(self.by_pos.len());
        h
    }

    /// Appends `x` to the node list of root layer `h`.
    fn link(&mut self, x: Node, h: u32) {
        let (xi, hi) = (x as usize, h as usize);
        self.lvl[xi] = h;
        self.next[xi] = NIL;
        self.prev[xi] = self.ltail[hi];
        match self.ltail[hi] {
            NIL => self.lhead[hi] = x,
            t => self.next[t as usize] = x,
        }
        self.ltail[hi] = x;
    }

    fn unlink(&mut self, x: Node) {
        let h = self.layer_of(x) as usize;
        let (p, nx) = (self.prev[x as usize], self.next[x as usize]);
        match p {
            NIL => self.lhead[h] = nx,
            p => self.next[p as usize] = nx,
        }
        match nx {
            NIL => self.ltail[h] = p,
            nx => self.prev[nx as usize] = p,
        }
    }

    // ---- segments ----

    pub(crate) fn sroot(&mut self, mut h: u32) -> u32 {
        let mut r = h;
        while self.sparent[r as usize] != r {
            r = self.sparent[r as usize];
        }
        while self.sparent[h as usize] != r {
            let up = self.sparent[h as usize];
            self.sparent[h as usize] = r;
            h = up;
        }
        r
    }

    fn new_seg(&mut self, entry: Vertex, val: u32) -> u32 {
        let h = match self.free.pop() {
            Some(h) => h,
            None => {
                let h = self.sparent.len() as u32;
                self.sparent.push(h);
                self.sentry.push(0);
                self.sval.push(0);
                self.rval.push(0);
                self.rstamp.push(0);
                h
            }
        };
        self.sparent[h as usize] = h;
        self.sentry[h as usize] = entry;
        self.sval[h as usize] = val;
        self.rstamp[h as usize] = 0;
        self.stats.segments += 1;
        h
    }

    /// Path id used to sparsify edges out of `u`.
    #[inline]
    pub(crate) fn label(&mut self, u: Vertex) -> u32 {
        match self.labels {
            Labels::BackLinks => {
                let ui = u as usize;
                let layer = self.layer_of(node_in(u)) as usize;
                if self.vepoch[ui] == self.lepoch[layer] {
                    return self.vval[ui];
                }
                let h = self.sroot(self.seg[ui]);
                let val = if self.rstamp[h as usize] == self.gen {
                    self.rval[h as usize]
                } else {
                    self.resolve(h)
                };
                self.vval[ui] = val;
                self.vepoch[ui] = self.lepoch[layer];
                val
            }
            Labels::Full => self.vid[u as usize],
        }
    }
}

impl<'g> Engine<'g> {
    /// Adds `v` (all its in-neighbors already processed) and restores a
    /// minimum flow with one layered traversal.
    pub(crate) fn process(&mut self, v: Vertex) -> Result<()> {
        let vi = v as usize;
        self.it += 1;
        self.split[vi] = 1;
        self.source[vi] = true;
        self.sink[vi] = 1;
        if self.by_pos.is_empty() {
            self.new_layer();
        }
        self.sparsify_incoming(v);
        let top = self.by_pos.len() - 1;
        let top_h = self.by_pos[top];
        self.link(node_in(v), top_h);
        let (found, l) = self.traverse(v, top);
        if found {
            self.apply_path(v);
        } else {
            self.sid[vi] = self.size;
            self.size += 1;
        }
        self.relevel(v, l);
        match self.labels {
            Labels::BackLinks => {
                self.decompose_layer(l)?;
            }
            Labels::Full => {
                for p in l..self.by_pos.len() {
                    self.decompose_layer(p)?;
                }
            }
        }
        if self.exits[self.by_pos[l] as usize] == 0 {
            self.merge(l);
        }
        // Layers below `l` were not touched.
        for p in l..self.by_pos.len() {
            self.epoch += 1;
            self.lepoch[self.by_pos[p] as usize] = self.epoch;
        }
        Ok(())
    }

    /// Keeps one in-neighbor per path id, the last one by topological rank,
    /// and adds its arc to the reduction with zero flow.
    fn sparsify_incoming(&mut self, v: Vertex) {
        let g = self.g;
        self.gen += 1;
        self.sur_ids.clear();
        for &u in g.in_neighbors(v) {
            self.stats.edge_ops += 1;
            let c = self.label(u) as usize;
            if self.sur_stamp[c] != self.it {
                self.sur_stamp[c] = self.it;
                self.sur[c] = u;
                self.sur_ids.push(c as u32);
            } else if self.rank[u as usize] > self.rank[self.sur[c] as usize] {
                self.sur[c] = u;
            }
        }
        let start = self.arcs.len() as u32;
        for i in 0..self.sur_ids.len() {
            let u = self.sur[self.sur_ids[i] as usize];
            let a = self.arcs.len() as u32;
            self.arcs.push((u, v));
            self.arc_flow.push(0);
            self.rem_arc.push(0);
            self.rem_arc_stamp.push(0);
            let slot = (self.out_off[u as usize] + self.out_len[u as usize]) as usize;
            self.out_arcs[slot] = a;
            self.oslot.push(self.out_len[u as usize]);
            self.out_len[u as usize] += 1;
            self.stats.edge_ops += 1;
        }
        self.in_range[v as usize] = (start, self.arcs.len() as u32);
    }

    #[inline]
    fn reach(&mut self, y: Node, step: Step, j: usize) {
        if self.disc[y as usize] != self.stamp {
            self.disc[y as usize] = self.stamp;
            self.parent[y as usize] = step;
            let p = self.pos(y);
            debug_assert!(p <= j, "residual edge climbs from layer {j} to {p}");
            self.queues[p].push_back(y);
            self.pending += 1;
            self.low_push = self.low_push.min(p);
        }
    }

    /// Layered search from `v_in`, sweeping layers top-down with one FIFO per
    /// layer. Returns whether `t` was reached and the lowest layer dequeued
    /// from (or `top` if none). The dequeued nodes end up in `s_list`.
    fn traverse(&mut self, v: Vertex, top: usize) -> (bool, usize) {
        self.stamp += 1;
        let st = self.stamp;
        self.s_list.clear();
        let vin = node_in(v);
        self.disc[vin as usize] = st;
        self.in_s[vin as usize] = st;
        self.s_list.push(vin);
        self.pending = 0;
        self.low_push = top;
        let (a0, a1) = self.in_range[v as usize];
        for a in a0..a1 {
            let x = node_out(self.arcs[a as usize].0);
            let step = Step {
                from: vin,
                edge: self.arc_edge(a),
                direct: false,
            };
            self.reach(x, step, top);
        }
        let mut low = top;
        let mut found = false;
        'sweep: for j in (0..=top).rev() {
            if self.pending == 0 {
                break;
            }
            while let Some(x) = self.queues[j].pop_front() {
                self.pending -= 1;
                low = j;
                self.in_s[x as usize] = st;
                self.s_list.push(x);
                self.stats.visits += 1;
                let (u, is_out) = base_of(x);
                let ui = u as usize;
                if is_out {
                    if self.sink[ui] > 0 {
                        self.t_step = Step {
                            from: x,
                            edge: self.sink_edge(u),
                            direct: true,
                        };
                        found = true;
                        break 'sweep;
                    }
                    let back = Step {
                        from: x,
                        edge: self.split_edge(u),
                        direct: false,
                    };
                    self.reach(node_in(u), back, j);
                    for k in 0..self.fcount[ui] {
                        let a = self.out_arc(u, k);
                        let step = Step {
                            from: x,
                            edge: self.arc_edge(a),
                            direct: true,
                        };
                        self.reach(node_in(self.arcs[a as usize].1), step, j);
                    }
                } else {
                    let (a0, a1) = self.in_range[ui];
                    for a in a0..a1 {
                        let step = Step {
                            from: x,
                            edge: self.arc_edge(a),
                            direct: false,
                        };
                        self.reach(node_out(self.arcs[a as usize].0), step, j);
                    }
                    if self.split[ui] > 1 {
                        let step = Step {
                            from: x,
                            edge: self.split_edge(u),
                            direct: true,
                        };
                        self.reach(node_out(u), step, j);
                    }
                }
            }
        }
        for q in &mut self.queues[self.low_push..=top] {
            q.clear();
        }
        (found, low)
    }

    /// Sets the flow of arc `a`, keeping its tail's flow arcs in front.
    fn set_arc_flow(&mut self, a: u32, f: u32) {
        let ai = a as usize;
        let old = self.arc_flow[ai];
        self.arc_flow[ai] = f;
        if (old > 0) == (f > 0) {
            return;
        }
        let u = self.arcs[ai].0 as usize;
        let base = self.out_off[u] as usize;
        // Swap `a` with the first slot past the flow region (gaining flow)
        // or with the last slot inside it (losing flow).
        let target = if f > 0 {
            self.fcount[u] += 1;
            self.fcount[u] - 1
        } else {
            self.fcount[u] -= 1;
            self.fcount[u]
        };
        let here = self.oslot[ai];
        let b = self.out_arcs[base + target as usize];
        self.out_arcs.swap(base + here as usize, base + target as usize);
        self.oslot[ai] = target;
        self.oslot[b as usize] = here;
    }

    /// Pushes one unit back along the path found by the last traversal.
    fn apply_path(&mut self, v: Vertex) {
        let vin = node_in(v);
        let n = self.n as u32;
        let mut step = self.t_step;
        loop {
            let e = step.edge;
            if e < n {
                let s = &mut self.split[e as usize];
                *s = if step.direct { *s - 1 } else { *s + 1 };
            } else if e < 2 * n {
                let u = e - n;
                self.sink[u as usize] -= 1;
                let h = self.layer_of(node_out(u));
                self.exits[h as usize] -= 1;
            } else {
                let a = e - 2 * n;
                let f = self.arc_flow[a as usize];
                self.set_arc_flow(a, if step.direct { f - 1 } else { f + 1 });
            }
            if step.from == vin {
                break;
            }
            step = self.parent[step.from as usize];
        }
        self.source[v as usize] = false;
    }

    /// Moves every dequeued node to layer `l` and puts `v_out` at `l + 1`.
    /// A vertex whose in-copy moves while its out-copy stays behind becomes
    /// the new entry of the remaining part of its segment.
    fn relevel(&mut self, v: Vertex, l: usize) {
        let st = self.stamp;
        for i in 0..self.s_list.len() {
            let x = self.s_list[i];
            let (y, is_out) = base_of(x);
            if is_out || y == v {
                continue;
            }
            let yo = node_out(y);
            if self.in_s[yo as usize] == st {
                continue;
            }
            let (pi, po) = (self.pos(x), self.pos(yo));
            if pi == po && pi > l {
                let h = self.sroot(self.seg[y as usize]);
                self.sentry[h as usize] = y;
                self.up_seg[y as usize] = h;
            }
        }
        let lh = self.by_pos[l];
        for i in 0..self.s_list.len() {
            let x = self.s_list[i];
            let old = self.layer_of(x);
            if old == lh {
                continue;
            }
            self.unlink(x);
            let (u, is_out) = base_of(x);
            if is_out {
                let s = self.sink[u as usize];
                self.exits[old as usize] -= s;
                self.exits[lh as usize] += s;
            }
            self.link(x, lh);
        }
        if l + 1 == self.by_pos.len() {
            self.new_layer();
        }
        let up = self.by_pos[l + 1];
        self.link(node_out(v), up);
        self.exits[up as usize] += 1;
        let h = self.new_seg(v, NIL);
        self.up_seg[v as usize] = h;
        self.lsegs[up as usize].push(h);
    }
}

impl<'g> Engine<'g> {
    /// Rebuilds the segments of the layer at position `p` by following flow
    /// units from each entry. Lower layers must already be consistent.
    fn decompose_layer(&mut self, p: usize) -> Result<()> {
        let lh = self.by_pos[p] as usize;
        let old = std::mem::take(&mut self.lsegs[lh]);
        self.free.extend(old);
        self.dstamp += 1;
        self.gen += 1;
        let mut entries = std::mem::take(&mut self.entries);
        entries.clear();
        let mut x = self.lhead[lh];
        while x != NIL {
            let (u, is_out) = base_of(x);
            if is_out {
                if self.pos(node_in(u)) < p {
                    entries.push((u, true));
                }
            } else if self.source[u as usize] {
                entries.push((u, false));
            }
            x = self.next[x as usize];
        }
        for &(u, crossing) in &entries {
            let val = if crossing {
                let below = self.sroot(self.seg[u as usize]);
                match self.labels {
                    Labels::BackLinks => self.resolve(below),
                    // Lower layers were just redone, so their ids are current.
                    Labels::Full => self.sval[below as usize],
                }
            } else {
                self.sid[u as usize]
            };
            let h = self.new_seg(u, val);
            self.lsegs[lh].push(h);
            let start = if crossing {
                self.up_seg[u as usize] = h;
                node_out(u)
            } else {
                node_in(u)
            };
            self.walk(h, start, p, val)?;
        }
        self.entries = entries;
        Ok(())
    }

    /// Follows one flow unit through layer `p`, consuming remaining flow.
    fn walk(&mut self, h: u32, mut x: Node, p: usize, val: u32) -> Result<()> {
        loop {
            self.stats.decompose_ops += 1;
            let (u, is_out) = base_of(x);
            let ui = u as usize;
            if !is_out {
                self.seg[ui] = h;
                if self.labels == Labels::Full {
                    self.vid[ui] = val;
                }
                if self.pos(node_out(u)) > p {
                    return Ok(());
                }
                x = node_out(u);
                continue;
            }
            if self.vstamp[ui] != self.dstamp {
                self.vstamp[ui] = self.dstamp;
                self.rem_sink[ui] = self.sink[ui];
                self.ptr[ui] = 0;
            }
            if self.rem_sink[ui] > 0 {
                self.rem_sink[ui] -= 1;
                return Ok(());
            }
            loop {
                let k = self.ptr[ui];
                if k >= self.fcount[ui] {
                    return Err(MpcError::InvariantViolation(format!(
                        "flow unit stuck at the out-copy of {u}"
                    )));
                }
                let a = self.out_arc(u, k) as usize;
                if self.rem_arc_stamp[a] != self.dstamp {
                    self.rem_arc_stamp[a] = self.dstamp;
                    self.rem_arc[a] = self.arc_flow[a];
                }
                if self.rem_arc[a] > 0 {
                    self.rem_arc[a] -= 1;
                    x = node_in(self.arcs[a].1);
                    break;
                }
                self.ptr[ui] += 1;
                self.stats.decompose_ops += 1;
            }
        }
    }

    /// Path id of root segment `h`. A segment entered from below carries
    /// the id of the segment holding its entry's in-copy, so ids are found by
    /// walking down entries; results are cached until the next change.
    pub(crate) fn resolve(&mut self, mut h: u32) -> u32 {
        let gen = self.gen;
        let mut chain = std::mem::take(&mut self.chain);
        chain.clear();
        let val = loop {
            self.stats.resolve_ops += 1;
            if self.rstamp[h as usize] == gen {
                break self.rval[h as usize];
            }
            let e = self.sentry[h as usize];
            let up = self.up_seg[e as usize];
            let crossing = up != NIL
                && self.sroot(up) == h
                && self.layer_of(node_in(e)) != self.layer_of(node_out(e));
            if !crossing {
                break self.sval[h as usize];
            }
            chain.push(h);
            h = self.sroot(self.seg[e as usize]);
        };
        chain.push(h);
        for &c in &chain {
            self.rstamp[c as usize] = gen;
            self.rval[c as usize] = val;
        }
        self.chain = chain;
        val
    }

    /// Collapses the layers at positions `l` and `l + 1`. Segments of the
    /// upper layer entered from the lower one are joined to their lower part.
    fn merge(&mut self, l: usize) {
        self.stats.merges += 1;
        let (a, b) = (self.by_pos[l], self.by_pos[l + 1]);
        let (ai, bi) = (a as usize, b as usize);
        let upper = std::mem::take(&mut self.lsegs[bi]);
        for &h in &upper {
            if self.sroot(h) != h {
                continue;
            }
            let e = self.sentry[h as usize];
            let up = self.up_seg[e as usize];
            if up == NIL || self.sroot(up) != h {
                continue;
            }
            if self.layer_of(node_out(e)) == b && self.layer_of(node_in(e)) == a {
                let below = self.sroot(self.seg[e as usize]);
                self.sparent[h as usize] = below;
            }
        }
        self.lsegs[ai].extend(upper);
        self.lparent[bi] = a;
        if self.lhead[bi] != NIL {
            match self.ltail[ai] {
                NIL => self.lhead[ai] = self.lhead[bi],
                t => {
                    self.next[t as usize] = self.lhead[bi];
                    self.prev[self.lhead[bi] as usize] = t;
                }
            }
            self.ltail[ai] = self.ltail[bi];
        }
        self.exits[ai] += self.exits[bi];
        self.by_pos.remove(l + 1);
        for q in l + 1..self.by_pos.len() {
            self.lpos[self.by_pos[q] as usize] = q as u32;
        }
    }

    /// Decomposes the final flow into paths.
    pub(crate) fn finish(self) -> Result<PathCover> {
        let n = self.n;
        let r = FlowReduction::with_arcs(self.g, self.arcs);
        let mut values = Vec::with_capacity(r.edge_count());
        values.extend_from_slice(&self.split);
        values.extend(self.source.iter().map(|&b| u32::from(b)));
        values.extend_from_slice(&self.sink);
        values.extend_from_slice(&self.arc_flow);
        debug_assert_eq!(values.len(), 3 * n + r.arcs().len());
        decompose_flow(&r, &Flow::from_values(values))
    }
}
