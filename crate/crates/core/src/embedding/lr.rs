//! Left-right planarity test (Brandes' formulation of de Fraysseix and
//! Rosenstiehl), with all three DFS passes written iteratively.

use std::collections::{BTreeMap, HashMap};

use super::RotationSystem;
use crate::graph::Graph;

const NONE: usize = usize::MAX;

#[derive(Debug, Clone, Copy)]
struct Interval {
    low: usize,
    high: usize,
}

impl Interval {
    const EMPTY: Interval = Interval { low: NONE, high: NONE };

    fn is_empty(&self) -> bool {
        self.low == NONE && self.high == NONE
    }
}

#[derive(Debug, Clone, Copy)]
struct ConflictPair {
    left: Interval,
    right: Interval,
}

impl ConflictPair {
    fn swap(&mut self) {
        std::mem::swap(&mut self.left, &mut self.right);
    }
}

/// Half-edge rotation store: per node, `neighbor -> (cw, ccw)`.
struct HalfEdges {
    links: Vec<HashMap<usize, (usize, usize)>>,
    first: Vec<usize>,
}

impl HalfEdges {
    fn new(n: usize) -> Self {
        HalfEdges {
            links: vec![HashMap::new(); n],
            first: vec![NONE; n],
        }
    }

    /// Inserts `t` clockwise right after `reference` around `s`.
    fn add_cw(&mut self, s: usize, t: usize, reference: usize) {
        if reference == NONE {
            self.links[s].insert(t, (t, t));
            self.first[s] = t;
            return;
        }
        let cw_ref = self.links[s][&reference].0;
        self.links[s].get_mut(&reference).unwrap().0 = t;
        self.links[s].insert(t, (cw_ref, reference));
        self.links[s].get_mut(&cw_ref).unwrap().1 = t;
    }

    /// Inserts `t` counterclockwise right after `reference` around `s`.
    fn add_ccw(&mut self, s: usize, t: usize, reference: usize) {
        if reference == NONE {
            self.links[s].insert(t, (t, t));
            self.first[s] = t;
            return;
        }
        let ccw_ref = self.links[s][&reference].1;
        self.add_cw(s, t, ccw_ref);
        if self.first[s] == reference {
            self.first[s] = t;
        }
    }

    fn add_first(&mut self, s: usize, t: usize) {
        let reference = self.first[s];
        self.add_ccw(s, t, reference);
    }

    fn clockwise(&self, v: usize) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.links[v].len());
        let start = self.first[v];
        if start == NONE {
            return out;
        }
        let mut w = start;
        loop {
            out.push(w);
            w = self.links[v][&w].0;
            if w == start {
                break;
            }
        }
        out
    }
}

struct Lr {
    n: usize,
    adj: Vec<Vec<(usize, usize)>>,
    tail: Vec<usize>,
    head: Vec<usize>,
    oriented: Vec<bool>,
    out: Vec<Vec<usize>>,
    height: Vec<usize>,
    lowpt: Vec<usize>,
    lowpt2: Vec<usize>,
    nesting: Vec<i64>,
    parent_edge: Vec<usize>,
    roots: Vec<usize>,
    reference: Vec<usize>,
    side: Vec<i64>,
    stack: Vec<ConflictPair>,
    stack_bottom: Vec<usize>,
    lowpt_edge: Vec<usize>,
}

impl Lr {
    fn new(g: &Graph) -> Lr {
        let n = g.node_count();
        let edges: Vec<(usize, usize)> = g.edges().collect();
        let m = edges.len();
        let mut adj = vec![Vec::new(); n];
        for (e, &(u, v)) in edges.iter().enumerate() {
            adj[u].push((v, e));
            adj[v].push((u, e));
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        Lr {
            n,
            adj,
            tail: vec![NONE; m],
            head: vec![NONE; m],
            oriented: vec![false; m],
            out: vec![Vec::new(); n],
            height: vec![NONE; n],
            lowpt: vec![0; m],
            lowpt2: vec![0; m],
            nesting: vec![0; m],
            parent_edge: vec![NONE; n],
            roots: Vec::new(),
            reference: vec![NONE; m],
            side: vec![1; m],
            stack: Vec::new(),
            stack_bottom: vec![0; m],
            lowpt_edge: vec![NONE; m],
        }
    }

    fn test(&mut self) -> bool {
        let m = self.tail.len();
        if self.n > 2 && m > 3 * self.n - 6 {
            return false;
        }
        let mut ind = vec![0usize; self.n];
        let mut skip = vec![false; m];
        for v in 0..self.n {
            if self.height[v] == NONE {
                self.height[v] = 0;
                self.roots.push(v);
                self.orient(v, &mut ind, &mut skip);
            }
        }
        self.sort_out_edges();
        let mut ind = vec![0usize; self.n];
        let mut skip = vec![false; m];
        for r in self.roots.clone() {
            if !self.testing(r, &mut ind, &mut skip) {
                return false;
            }
        }
        true
    }

    fn sort_out_edges(&mut self) {
        for v in 0..self.n {
            let mut list = std::mem::take(&mut self.out[v]);
            list.sort_by_key(|&e| self.nesting[e]);
            self.out[v] = list;
        }
    }

    fn orient(&mut self, root: usize, ind: &mut [usize], skip: &mut [bool]) {
        let mut stack = vec![root];
        while let Some(v) = stack.pop() {
            let e = self.parent_edge[v];
            while ind[v] < self.adj[v].len() {
                let (w, vw) = self.adj[v][ind[v]];
                if !(skip[vw] && self.tail[vw] == v) {
                    if self.oriented[vw] {
                        ind[v] += 1;
                        continue;
                    }
                    self.oriented[vw] = true;
                    self.tail[vw] = v;
                    self.head[vw] = w;
                    self.out[v].push(vw);
                    self.lowpt[vw] = self.height[v];
                    self.lowpt2[vw] = self.height[v];
                    if self.height[w] == NONE {
                        self.parent_edge[w] = vw;
                        self.height[w] = self.height[v] + 1;
                        stack.push(v);
                        stack.push(w);
                        skip[vw] = true;
                        break;
                    }
                    self.lowpt[vw] = self.height[w];
                }
                self.nesting[vw] = 2 * self.lowpt[vw] as i64;
                if self.lowpt2[vw] < self.height[v] {
                    self.nesting[vw] += 1;
                }
                if e != NONE {
                    if self.lowpt[vw] < self.lowpt[e] {
                        self.lowpt2[e] = self.lowpt[e].min(self.lowpt2[vw]);
                        self.lowpt[e] = self.lowpt[vw];
                    } else if self.lowpt[vw] > self.lowpt[e] {
                        self.lowpt2[e] = self.lowpt2[e].min(self.lowpt[vw]);
                    } else {
                        self.lowpt2[e] = self.lowpt2[e].min(self.lowpt2[vw]);
                    }
                }
                ind[v] += 1;
            }
        }
    }

    fn testing(&mut self, root: usize, ind: &mut [usize], skip: &mut [bool]) -> bool {
        let mut stack = vec![root];
        while let Some(v) = stack.pop() {
            let e = self.parent_edge[v];
            let mut descended = false;
            while ind[v] < self.out[v].len() {
                let ei = self.out[v][ind[v]];
                let w = self.head[ei];
                if !skip[ei] {
                    self.stack_bottom[ei] = self.stack.len();
                    if ei == self.parent_edge[w] {
                        stack.push(v);
                        stack.push(w);
                        skip[ei] = true;
                        descended = true;
                        break;
                    }
                    self.lowpt_edge[ei] = ei;
                    self.stack.push(ConflictPair {
                        left: Interval::EMPTY,
                        right: Interval { low: ei, high: ei },
                    });
                }
                if self.lowpt[ei] < self.height[v] {
                    if ei == self.out[v][0] {
                        self.lowpt_edge[e] = self.lowpt_edge[ei];
                    } else if !self.add_constraints(ei, e) {
                        return false;
                    }
                }
                ind[v] += 1;
            }
            if !descended && e != NONE {
                self.remove_back_edges(e);
            }
        }
        true
    }

    fn conflicting(&self, i: &Interval, b: usize) -> bool {
        !i.is_empty() && self.lowpt[i.high] > self.lowpt[b]
    }

    fn lowest(&self, p: &ConflictPair) -> usize {
        if p.left.is_empty() {
            return self.lowpt[p.right.low];
        }
        if p.right.is_empty() {
            return self.lowpt[p.left.low];
        }
        self.lowpt[p.left.low].min(self.lowpt[p.right.low])
    }

    fn set_ref(&mut self, e: usize, to: usize) {
        if e != NONE {
            self.reference[e] = to;
        }
    }

    fn add_constraints(&mut self, ei: usize, e: usize) -> bool {
        let mut p = ConflictPair {
            left: Interval::EMPTY,
            right: Interval::EMPTY,
        };
        loop {
            let Some(mut q) = self.stack.pop() else {
                return false;
            };
            if !q.left.is_empty() {
                q.swap();
            }
            if !q.left.is_empty() {
                return false;
            }
            if self.lowpt[q.right.low] > self.lowpt[e] {
                if p.right.is_empty() {
                    p.right = q.right;
                } else {
                    self.set_ref(p.right.low, q.right.high);
                }
                p.right.low = q.right.low;
            } else {
                let target = self.lowpt_edge[e];
                self.set_ref(q.right.low, target);
            }
            if self.stack.len() == self.stack_bottom[ei] {
                break;
            }
        }
        while let Some(top) = self.stack.last() {
            if !(self.conflicting(&top.left, ei) || self.conflicting(&top.right, ei)) {
                break;
            }
            let mut q = self.stack.pop().unwrap();
            if self.conflicting(&q.right, ei) {
                q.swap();
            }
            if self.conflicting(&q.right, ei) {
                return false;
            }
            self.set_ref(p.right.low, q.right.high);
            if q.right.low != NONE {
                p.right.low = q.right.low;
            }
            if p.left.is_empty() {
                p.left = q.left;
            } else {
                self.set_ref(p.left.low, q.left.high);
            }
            p.left.low = q.left.low;
        }
        if !(p.left.is_empty() && p.right.is_empty()) {
            self.stack.push(p);
        }
        true
    }

    fn remove_back_edges(&mut self, e: usize) {
        let u = self.tail[e];
        while let Some(top) = self.stack.last() {
            if self.lowest(top) != self.height[u] {
                break;
            }
            let p = self.stack.pop().unwrap();
            if p.left.low != NONE {
                self.side[p.left.low] = -1;
            }
        }
        if let Some(mut p) = self.stack.pop() {
            while p.left.high != NONE && self.head[p.left.high] == u {
                p.left.high = self.reference[p.left.high];
            }
            if p.left.high == NONE && p.left.low != NONE {
                self.reference[p.left.low] = p.right.low;
                self.side[p.left.low] = -1;
                p.left.low = NONE;
            }
            while p.right.high != NONE && self.head[p.right.high] == u {
                p.right.high = self.reference[p.right.high];
            }
            if p.right.high == NONE && p.right.low != NONE {
                self.reference[p.right.low] = p.left.low;
                self.side[p.right.low] = -1;
                p.right.low = NONE;
            }
            self.stack.push(p);
        }
        if self.lowpt[e] < self.height[u] {
            let top = *self.stack.last().expect("return edge implies a conflict pair");
            let (hl, hr) = (top.left.high, top.right.high);
            self.reference[e] = if hl != NONE && (hr == NONE || self.lowpt[hl] > self.lowpt[hr]) {
                hl
            } else {
                hr
            };
        }
    }

    fn sign(&mut self, e: usize) -> i64 {
        let mut stack = vec![e];
        let mut old_ref: HashMap<usize, usize> = HashMap::new();
        while let Some(x) = stack.pop() {
            if self.reference[x] != NONE {
                stack.push(x);
                stack.push(self.reference[x]);
                old_ref.insert(x, self.reference[x]);
                self.reference[x] = NONE;
            } else if let Some(&r) = old_ref.get(&x) {
                self.side[x] *= self.side[r];
            }
        }
        self.side[e]
    }

    fn embedding(&mut self) -> HalfEdges {
        for e in 0..self.tail.len() {
            let s = self.sign(e);
            self.nesting[e] *= s;
        }
        self.sort_out_edges();
        let mut half = HalfEdges::new(self.n);
        for v in 0..self.n {
            let mut prev = NONE;
            for &e in &self.out[v] {
                let w = self.head[e];
                half.add_cw(v, w, prev);
                prev = w;
            }
        }
        let mut left_ref = vec![NONE; self.n];
        let mut right_ref = vec![NONE; self.n];
        let mut ind = vec![0usize; self.n];
        for &root in &self.roots {
            let mut stack = vec![root];
            while let Some(v) = stack.pop() {
                while ind[v] < self.out[v].len() {
                    let ei = self.out[v][ind[v]];
                    ind[v] += 1;
                    let w = self.head[ei];
                    if ei == self.parent_edge[w] {
                        half.add_first(w, v);
                        left_ref[v] = w;
                        right_ref[v] = w;
                        stack.push(v);
                        stack.push(w);
                        break;
                    }
                    if self.side[ei] == 1 {
                        half.add_cw(w, v, right_ref[w]);
                    } else {
                        half.add_ccw(w, v, left_ref[w]);
                        left_ref[w] = v;
                    }
                }
            }
        }
        half
    }
}

pub fn is_planar(g: &Graph) -> bool {
    Lr::new(g).test()
}

/// A rotation system for `g`, or `None` when `g` is not planar.
pub(super) fn embed(g: &Graph) -> Option<RotationSystem> {
    let mut lr = Lr::new(g);
    if !lr.test() {
        return None;
    }
    let half = lr.embedding();
    // The half-edge store is clockwise; reverse it for counterclockwise rotations.
    let rot: BTreeMap<_, _> = (0..g.node_count())
        .map(|v| {
            let ccw = half.clockwise(v).into_iter().rev().map(|w| g.id(w)).collect();
            (g.id(v), ccw)
        })
        .collect();
    Some(RotationSystem::new(rot))
}
