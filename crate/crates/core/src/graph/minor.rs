//! Exact minor containment for small graphs.
//!
//! The search assigns every vertex either to one of the pattern's branch sets
//! or to "deleted", one vertex at a time in a fixed order. Vertices that still
//! have unassigned neighbors form the frontier; everything the rest of the
//! search needs to know is the frontier's labels, how the frontier splits into
//! connected pieces of each branch set, which branch sets are finished, and
//! which pattern edges are already realized. Failed states are memoized on
//! exactly that signature.
//!
//! Before searching, vertices that cannot matter are stripped: isolated ones
//! when the pattern has no isolated vertex, pendant ones when its minimum
//! degree is at least 2, and degree-2 vertices are suppressed when its minimum
//! degree is at least 3. The node cap applies to what remains.

use std::collections::{BTreeSet, HashSet};

use super::{Graph, GraphError};

pub const DEFAULT_MINOR_CAP: usize = 40;

/// Minor patterns supported by the oracle.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MinorPattern {
    Complete(usize),
    CompleteBipartite(usize, usize),
}

impl MinorPattern {
    fn order(&self) -> usize {
        match *self {
            MinorPattern::Complete(k) => k,
            MinorPattern::CompleteBipartite(p, q) => p + q,
        }
    }

    fn adjacent(&self, a: usize, b: usize) -> bool {
        match *self {
            MinorPattern::Complete(_) => a != b,
            MinorPattern::CompleteBipartite(p, _) => (a < p) != (b < p),
        }
    }

    fn min_degree(&self) -> usize {
        match *self {
            MinorPattern::Complete(k) => k.saturating_sub(1),
            MinorPattern::CompleteBipartite(p, q) => p.min(q),
        }
    }

    fn edge_count(&self) -> usize {
        match *self {
            MinorPattern::Complete(k) => k * k.saturating_sub(1) / 2,
            MinorPattern::CompleteBipartite(p, q) => p * q,
        }
    }

    /// Label `l` may open only once label `l - 1` of the same class is open.
    fn same_class_as_previous(&self, l: usize) -> bool {
        match *self {
            MinorPattern::Complete(_) => l > 0,
            MinorPattern::CompleteBipartite(p, _) => l > 0 && l != p,
        }
    }
}

#[derive(Debug, Clone, Copy)]
pub struct MinorOracle {
    pub cap: usize,
}

impl Default for MinorOracle {
    fn default() -> Self {
        MinorOracle { cap: DEFAULT_MINOR_CAP }
    }
}

/// `minor_contains` with the default node cap.
pub fn minor_contains(g: &Graph, h: MinorPattern) -> Result<bool, GraphError> {
    MinorOracle::default().contains(g, h)
}

impl MinorOracle {
    pub fn contains(&self, g: &Graph, h: MinorPattern) -> Result<bool, GraphError> {
        let k = h.order();
        if k == 0 {
            return Ok(true);
        }
        if k > 12 {
            return Err(GraphError::InvalidParameter(format!("pattern with {k} vertices is too large")));
        }
        if g.node_count() < k || g.edge_count() < h.edge_count() {
            return Ok(false);
        }
        let mut adj: Vec<BTreeSet<usize>> =
            (0..g.node_count()).map(|v| g.neighbors(v).iter().copied().collect()).collect();
        reduce(&mut adj, h.min_degree());

        let alive: Vec<usize> = (0..adj.len()).filter(|&v| !adj[v].is_empty() || h.min_degree() == 0).collect();
        // Patterns here are connected, so a model lives inside one component.
        let comps = components(&adj, &alive);
        if let Some(big) = comps.iter().map(Vec::len).max() {
            if big > self.cap {
                return Err(GraphError::CapExceeded { nodes: big, cap: self.cap });
            }
        }
        for comp in comps {
            if comp.len() < k {
                continue;
            }
            if Search::new(&adj, &comp, h).run() {
                return Ok(true);
            }
        }
        Ok(false)
    }
}

fn reduce(adj: &mut [BTreeSet<usize>], min_degree: usize) {
    if min_degree < 2 {
        return;
    }
    let mut removed = vec![false; adj.len()];
    let mut stack: Vec<usize> = (0..adj.len()).collect();
    while let Some(v) = stack.pop() {
        if removed[v] {
            continue;
        }
        let d = adj[v].len();
        if d <= 1 || (d == 2 && min_degree >= 3) {
            let nbrs: Vec<usize> = adj[v].iter().copied().collect();
            for &w in &nbrs {
                adj[w].remove(&v);
            }
            if let [a, b] = nbrs[..] {
                adj[a].insert(b);
                adj[b].insert(a);
            }
            adj[v].clear();
            removed[v] = true;
            stack.extend(nbrs);
        }
    }
}

fn components(adj: &[BTreeSet<usize>], alive: &[usize]) -> Vec<Vec<usize>> {
    let mut seen = vec![false; adj.len()];
    let mut out = Vec::new();
    for &s in alive {
        if seen[s] {
            continue;
        }
        seen[s] = true;
        let mut comp = vec![s];
        let mut stack = vec![s];
        while let Some(v) = stack.pop() {
            for &w in &adj[v] {
                if !seen[w] {
                    seen[w] = true;
                    comp.push(w);
                    stack.push(w);
                }
            }
        }
        comp.sort_unstable();
        out.push(comp);
    }
    out
}

/// Frontier signature: `(label, piece)` per frontier vertex in order, plus
/// opened / finished label masks and realized pattern edges.
#[derive(Clone, PartialEq, Eq, Hash)]
struct State {
    frontier: Vec<(u8, u8)>,
    started: u16,
    closed: u16,
    realized: u128,
}

struct Search {
    h: MinorPattern,
    k: usize,
    /// Earlier-positioned neighbors of each position.
    back: Vec<Vec<usize>>,
    /// Last position among a vertex's neighbors (its frontier exit time).
    last: Vec<usize>,
    /// Frontier positions after each step.
    frontier_after: Vec<Vec<usize>>,
    pattern_edges: Vec<(usize, usize)>,
    failed: HashSet<(usize, State)>,
}

impl Search {
    fn new(adj: &[BTreeSet<usize>], comp: &[usize], h: MinorPattern) -> Search {
        let order = elimination_order(adj, comp);
        let n = order.len();
        let mut pos = vec![usize::MAX; adj.len()];
        for (i, &v) in order.iter().enumerate() {
            pos[v] = i;
        }
        let mut back = vec![Vec::new(); n];
        let mut last = vec![0usize; n];
        for (i, &v) in order.iter().enumerate() {
            for &w in &adj[v] {
                let j = pos[w];
                if j < i {
                    back[i].push(j);
                }
                last[i] = last[i].max(j);
            }
            back[i].sort_unstable();
        }
        let frontier_after = (0..n)
            .map(|i| (0..=i).filter(|&p| last[p] > i).collect())
            .collect();
        let k = h.order();
        let mut pattern_edges = Vec::new();
        for a in 0..k {
            for b in a + 1..k {
                if h.adjacent(a, b) {
                    pattern_edges.push((a, b));
                }
            }
        }
        Search {
            h,
            k,
            back,
            last,
            frontier_after,
            pattern_edges,
            failed: HashSet::new(),
        }
    }

    fn run(&mut self) -> bool {
        let start = State {
            frontier: Vec::new(),
            started: 0,
            closed: 0,
            realized: 0,
        };
        self.step(0, &start)
    }

    fn edge_bit(&self, a: usize, b: usize) -> u128 {
        let (a, b) = (a.min(b), a.max(b));
        1u128 << (a * self.k + b)
    }

    fn all_edges_at(&self, label: usize, realized: u128) -> bool {
        self.pattern_edges
            .iter()
            .filter(|&&(a, b)| a == label || b == label)
            .all(|&(a, b)| realized & self.edge_bit(a, b) != 0)
    }

    fn step(&mut self, i: usize, state: &State) -> bool {
        let n = self.back.len();
        if i == n {
            return state.started.count_ones() as usize == self.k;
        }
        let key = (i, state.clone());
        if self.failed.contains(&key) {
            return false;
        }
        // Labels 1..=k are branch sets 0..k; 0 means deleted.
        for choice in (1..=self.k).chain(std::iter::once(0)) {
            if let Some(next) = self.assign(i, state, choice) {
                if self.step(i + 1, &next) {
                    return true;
                }
            }
        }
        self.failed.insert(key);
        false
    }

    fn assign(&self, i: usize, state: &State, choice: usize) -> Option<State> {
        let n = self.back.len();
        let prev_frontier: &[usize] = if i == 0 { &[] } else { &self.frontier_after[i - 1] };
        let mut started = state.started;
        let mut realized = state.realized;

        // Piece ids: old pieces keep their ids, the new vertex's piece is `fresh`.
        let fresh = u8::MAX;
        let mut entries: Vec<(usize, u8, u8)> = prev_frontier
            .iter()
            .zip(&state.frontier)
            .map(|(&p, &(l, c))| (p, l, c))
            .collect();

        if choice != 0 {
            let label = choice - 1;
            let bit = 1u16 << label;
            if state.closed & bit != 0 {
                return None;
            }
            if started & bit == 0 && self.h.same_class_as_previous(label) && started & (bit >> 1) == 0 {
                return None;
            }
            started |= bit;
            let mut merged: Vec<u8> = Vec::new();
            for &(p, l, c) in &entries {
                if self.back[i].binary_search(&p).is_err() || l == 0 {
                    continue;
                }
                let other = (l - 1) as usize;
                if other == label {
                    merged.push(c);
                } else if self.h.adjacent(label, other) {
                    realized |= self.edge_bit(label, other);
                }
            }
            for e in &mut entries {
                if e.1 as usize == choice && merged.contains(&e.2) {
                    e.2 = fresh;
                }
            }
        }
        let mut pieces_before: Vec<(u8, u8)> = entries.iter().filter(|e| e.1 != 0).map(|e| (e.1, e.2)).collect();
        if choice != 0 {
            pieces_before.push((choice as u8, fresh));
        }
        pieces_before.sort_unstable();
        pieces_before.dedup();

        if self.last[i] > i {
            entries.push((i, choice as u8, if choice == 0 { 0 } else { fresh }));
        }
        entries.retain(|&(p, _, _)| self.last[p] > i);

        let mut closed = state.closed;
        let mut pieces_after: Vec<(u8, u8)> = entries.iter().filter(|e| e.1 != 0).map(|e| (e.1, e.2)).collect();
        pieces_after.sort_unstable();
        pieces_after.dedup();
        for label in 1..=self.k as u8 {
            let before = pieces_before.iter().filter(|p| p.0 == label).count();
            let after = pieces_after.iter().filter(|p| p.0 == label).count();
            let dying = before - after;
            if dying == 0 {
                continue;
            }
            if after > 0 || dying > 1 {
                return None;
            }
            let l = (label - 1) as usize;
            if !self.all_edges_at(l, realized) {
                return None;
            }
            closed |= 1 << l;
        }

        let remaining = n - i - 1;
        if (self.k - started.count_ones() as usize) > remaining {
            return None;
        }

        // Canonical piece numbering by first appearance.
        let mut rename: Vec<(u8, u8)> = Vec::new();
        let frontier = entries
            .iter()
            .map(|&(_, l, c)| {
                if l == 0 {
                    return (0, 0);
                }
                let id = match rename.iter().position(|&(lab, old)| lab == l && old == c) {
                    Some(x) => x,
                    None => {
                        rename.push((l, c));
                        rename.len() - 1
                    }
                };
                (l, id as u8)
            })
            .collect();
        Some(State {
            frontier,
            started,
            closed,
            realized,
        })
    }
}

/// Greedy order keeping the frontier small: repeatedly take the vertex with
/// most already-placed neighbors, then fewest unplaced ones, then smallest index.
fn elimination_order(adj: &[BTreeSet<usize>], comp: &[usize]) -> Vec<usize> {
    let mut placed = vec![false; adj.len()];
    let mut placed_nbrs = vec![0usize; adj.len()];
    let mut order = Vec::with_capacity(comp.len());
    let first = *comp
        .iter()
        .min_by_key(|&&v| (adj[v].len(), v))
        .expect("non-empty component");
    let mut next = Some(first);
    while let Some(v) = next {
        placed[v] = true;
        order.push(v);
        for &w in &adj[v] {
            placed_nbrs[w] += 1;
        }
        next = comp
            .iter()
            .copied()
            .filter(|&w| !placed[w])
            .min_by_key(|&w| (usize::MAX - placed_nbrs[w], adj[w].len() - placed_nbrs[w], w));
    }
    order
}
