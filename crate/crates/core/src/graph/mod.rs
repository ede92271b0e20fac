//! Simple undirected graphs with unique node identifiers.
//!
//! Nodes are stored in ascending identifier order, so a node's dense index
//! and its identifier sort the same way. Algorithms that break ties "by
//! smallest identifier" can therefore work on indices directly.

mod degeneracy;
mod generate;
mod minor;

use std::collections::HashMap;
use std::fmt;

use thiserror::Error;

pub use degeneracy::{degeneracy_order, DegeneracyOrder};
pub use generate::{generate, GraphKind};
pub use minor::{minor_contains, MinorOracle, MinorPattern, DEFAULT_MINOR_CAP};

/// Node identifier. Identifiers are positive and unique within a graph.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct NodeId(pub u32);

impl fmt::Display for NodeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl From<u32> for NodeId {
    fn from(v: u32) -> Self {
        NodeId(v)
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("node {0} listed more than once")]
    DuplicateNode(NodeId),
    #[error("node identifier 0 is reserved")]
    ZeroId,
    #[error("edge endpoint {0} is not a declared node")]
    UnknownNode(NodeId),
    #[error("edge {{{0}, {1}}} is not in the graph")]
    EdgeNotInGraph(NodeId, NodeId),
    #[error("graph is not connected")]
    Disconnected,
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("instance has {nodes} nodes after reduction, above the cap of {cap}")]
    CapExceeded { nodes: usize, cap: usize },
}

/// A simple, undirected graph. Immutable after construction.
#[derive(Clone)]
pub struct Graph {
    ids: Vec<NodeId>,
    index: HashMap<NodeId, usize>,
    adj: Vec<Vec<usize>>,
    edge_count: usize,
    connected: bool,
}

impl Graph {
    /// Builds a graph from an edge list. Duplicate edges and their reversals
    /// are merged, self-loops dropped; the node set is the set of endpoints.
    pub fn from_edges<I>(edges: I) -> Result<Graph, GraphError>
    where
        I: IntoIterator<Item = (NodeId, NodeId)>,
    {
        let edges: Vec<_> = edges.into_iter().collect();
        let mut nodes: Vec<NodeId> = edges.iter().flat_map(|&(u, v)| [u, v]).collect();
        nodes.sort_unstable();
        nodes.dedup();
        Graph::with_nodes(nodes, edges)
    }

    /// Convenience wrapper over [`Graph::from_edges`] for raw integers.
    pub fn from_pairs(edges: &[(u32, u32)]) -> Result<Graph, GraphError> {
        Graph::from_edges(edges.iter().map(|&(u, v)| (NodeId(u), NodeId(v))))
    }

    /// Builds a graph with an explicit node list, which may include isolated
    /// nodes. Every edge endpoint must be declared.
    pub fn with_nodes<N, E>(nodes: N, edges: E) -> Result<Graph, GraphError>
    where
        N: IntoIterator<Item = NodeId>,
        E: IntoIterator<Item = (NodeId, NodeId)>,
    {
        let mut ids: Vec<NodeId> = nodes.into_iter().collect();
        ids.sort_unstable();
        for w in ids.windows(2) {
            if w[0] == w[1] {
                return Err(GraphError::DuplicateNode(w[0]));
            }
        }
        if ids.first() == Some(&NodeId(0)) {
            return Err(GraphError::ZeroId);
        }
        let index: HashMap<NodeId, usize> = ids.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let mut adj = vec![Vec::new(); ids.len()];
        for (u, v) in edges {
            let iu = *index.get(&u).ok_or(GraphError::UnknownNode(u))?;
            let iv = *index.get(&v).ok_or(GraphError::UnknownNode(v))?;
            if iu == iv {
                continue;
            }
            adj[iu].push(iv);
            adj[iv].push(iu);
        }
        let mut edge_count = 0;
        for list in &mut adj {
            list.sort_unstable();
            list.dedup();
            edge_count += list.len();
        }
        let mut g = Graph {
            ids,
            index,
            adj,
            edge_count: edge_count / 2,
            connected: false,
        };
        g.connected = g.component_count() <= 1;
        Ok(g)
    }

    pub fn node_count(&self) -> usize {
        self.ids.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    /// Whether the connectivity check at construction passed.
    pub fn is_connected(&self) -> bool {
        self.connected
    }

    /// Node identifiers in ascending order.
    pub fn ids(&self) -> &[NodeId] {
        &self.ids
    }

    pub fn id(&self, idx: usize) -> NodeId {
        self.ids[idx]
    }

    pub fn index_of(&self, id: NodeId) -> Option<usize> {
        self.index.get(&id).copied()
    }

    pub fn contains(&self, id: NodeId) -> bool {
        self.index.contains_key(&id)
    }

    /// Neighbor indices of `idx`, ascending.
    pub fn neighbors(&self, idx: usize) -> &[usize] {
        &self.adj[idx]
    }

    /// Neighbor identifiers of `id`, ascending. Empty for unknown nodes.
    pub fn neighbor_ids(&self, id: NodeId) -> Vec<NodeId> {
        match self.index_of(id) {
            Some(i) => self.adj[i].iter().map(|&j| self.ids[j]).collect(),
            None => Vec::new(),
        }
    }

    pub fn degree(&self, idx: usize) -> usize {
        self.adj[idx].len()
    }

    pub fn has_edge_idx(&self, u: usize, v: usize) -> bool {
        self.adj[u].binary_search(&v).is_ok()
    }

    pub fn has_edge(&self, u: NodeId, v: NodeId) -> bool {
        match (self.index_of(u), self.index_of(v)) {
            (Some(a), Some(b)) => self.has_edge_idx(a, b),
            _ => false,
        }
    }

    /// Edges as index pairs `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, list)| list.iter().filter(move |&&v| v > u).map(move |&v| (u, v)))
    }

    /// Edges as identifier pairs with the smaller identifier first.
    pub fn edge_ids(&self) -> Vec<(NodeId, NodeId)> {
        self.edges().map(|(u, v)| (self.ids[u], self.ids[v])).collect()
    }

    pub fn max_id(&self) -> NodeId {
        self.ids.last().copied().unwrap_or(NodeId(0))
    }

    /// Checks that every identifier is at most `n^c`.
    pub fn ids_within_polynomial_range(&self, c: u32) -> bool {
        let bound = (self.node_count() as u128).saturating_pow(c);
        self.ids.iter().all(|v| (v.0 as u128) <= bound)
    }

    pub fn component_count(&self) -> usize {
        self.components().len()
    }

    /// Connected components as sorted index lists.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let n = self.node_count();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for s in 0..n {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut comp = vec![s];
            let mut stack = vec![s];
            while let Some(v) = stack.pop() {
                for &w in &self.adj[v] {
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

    /// Whether the graph contains a cycle.
    pub fn has_cycle(&self) -> bool {
        self.edge_count + self.component_count() > self.node_count()
    }

    /// The subgraph induced by a set of node indices.
    pub fn induced(&self, nodes: &[usize]) -> Graph {
        let keep: Vec<bool> = {
            let mut k = vec![false; self.node_count()];
            for &v in nodes {
                k[v] = true;
            }
            k
        };
        let edges = self
            .edges()
            .filter(|&(u, v)| keep[u] && keep[v])
            .map(|(u, v)| (self.ids[u], self.ids[v]));
        Graph::with_nodes(nodes.iter().map(|&v| self.ids[v]), edges)
            .expect("induced subgraph of a valid graph")
    }

    /// A copy of this graph with the given edges removed. Unknown edges are ignored.
    pub fn without_edges(&self, removed: &[(NodeId, NodeId)]) -> Graph {
        let gone: std::collections::HashSet<(NodeId, NodeId)> =
            removed.iter().map(|&(u, v)| (u.min(v), u.max(v))).collect();
        let edges = self.edge_ids().into_iter().filter(|e| !gone.contains(e));
        Graph::with_nodes(self.ids.iter().copied(), edges).expect("subgraph of a valid graph")
    }

    /// A copy of this graph with extra edges between existing nodes.
    pub fn with_extra_edges(&self, extra: &[(NodeId, NodeId)]) -> Result<Graph, GraphError> {
        let edges = self.edge_ids().into_iter().chain(extra.iter().copied());
        Graph::with_nodes(self.ids.iter().copied(), edges)
    }

    /// Contracts every listed edge. Each contracted class keeps the smallest
    /// identifier among its members; loops and parallel edges are dropped.
    pub fn contract_edges(&self, contracted: &[(NodeId, NodeId)]) -> Result<Graph, GraphError> {
        let n = self.node_count();
        let mut uf = UnionFind::new(n);
        for &(u, v) in contracted {
            if !self.has_edge(u, v) {
                return Err(GraphError::EdgeNotInGraph(u, v));
            }
            let (a, b) = (self.index[&u], self.index[&v]);
            uf.union(a, b);
        }
        // Representative of each class is its smallest index, i.e. smallest id.
        let mut rep = vec![usize::MAX; n];
        for v in 0..n {
            let r = uf.find(v);
            if rep[r] == usize::MAX {
                rep[r] = v;
            }
        }
        let label = |v: usize, uf: &mut UnionFind| self.ids[rep[uf.find(v)]];
        let mut nodes: Vec<NodeId> = (0..n).map(|v| label(v, &mut uf)).collect();
        nodes.sort_unstable();
        nodes.dedup();
        let mut edges = Vec::with_capacity(self.edge_count);
        for (u, v) in self.edges().collect::<Vec<_>>() {
            edges.push((label(u, &mut uf), label(v, &mut uf)));
        }
        Graph::with_nodes(nodes, edges)
    }

    /// Relabels nodes through `map`, which must be injective on this graph's ids.
    pub fn relabel(&self, map: impl Fn(NodeId) -> NodeId) -> Result<Graph, GraphError> {
        let nodes: Vec<NodeId> = self.ids.iter().map(|&v| map(v)).collect();
        let edges: Vec<_> = self.edge_ids().into_iter().map(|(u, v)| (map(u), map(v))).collect();
        Graph::with_nodes(nodes, edges)
    }
}

impl PartialEq for Graph {
    fn eq(&self, other: &Self) -> bool {
        self.ids == other.ids && self.adj == other.adj
    }
}

impl Eq for Graph {}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Graph")
            .field("n", &self.node_count())
            .field("m", &self.edge_count)
            .field("edges", &self.edge_ids())
            .finish()
    }
}

pub(crate) struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub(crate) fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect() }
    }

    pub(crate) fn find(&mut self, mut v: usize) -> usize {
        while self.parent[v] != v {
            self.parent[v] = self.parent[self.parent[v]];
            v = self.parent[v];
        }
        v
    }

    pub(crate) fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        self.parent[ra.max(rb)] = ra.min(rb);
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(edges: &[(u32, u32)]) -> Graph {
        Graph::from_pairs(edges).unwrap()
    }

    #[test]
    fn smallest_path() {
        let p = g(&[(1, 2), (2, 3)]);
        assert_eq!(p.node_count(), 3);
        assert_eq!(p.edge_count(), 2);
        assert!(p.is_connected());
    }

    #[test]
    fn two_components_flagged() {
        let p = g(&[(1, 2), (3, 4)]);
        assert!(!p.is_connected());
        assert_eq!(p.component_count(), 2);
    }

    #[test]
    fn dedup_and_loop_removal() {
        let p = g(&[(1, 2), (2, 1), (1, 1)]);
        assert_eq!(p.node_count(), 2);
        assert_eq!(p.edge_ids(), vec![(NodeId(1), NodeId(2))]);
    }

    #[test]
    fn duplicate_declared_node_is_structural_error() {
        let err = Graph::with_nodes([NodeId(1), NodeId(1)], []).unwrap_err();
        assert_eq!(err, GraphError::DuplicateNode(NodeId(1)));
        let err = Graph::with_nodes([NodeId(1)], [(NodeId(1), NodeId(2))]).unwrap_err();
        assert_eq!(err, GraphError::UnknownNode(NodeId(2)));
    }

    #[test]
    fn contract_path_edge() {
        let p = g(&[(1, 2), (2, 3)]);
        let c = p.contract_edges(&[(NodeId(2), NodeId(3))]).unwrap();
        assert_eq!(c, g(&[(1, 2)]));
    }

    #[test]
    fn contract_triangle_edge_removes_loop() {
        let t = g(&[(1, 2), (2, 3), (1, 3)]);
        let c = t.contract_edges(&[(NodeId(1), NodeId(2))]).unwrap();
        assert_eq!(c, g(&[(1, 3)]));
    }

    #[test]
    fn contract_c4_two_opposite_edges() {
        let c4 = g(&[(1, 2), (2, 3), (3, 4), (4, 1)]);
        let c = c4
            .contract_edges(&[(NodeId(1), NodeId(2)), (NodeId(3), NodeId(4))])
            .unwrap();
        assert_eq!(c, g(&[(1, 3)]));
    }

    #[test]
    fn contract_rejects_non_edge() {
        let p = g(&[(1, 2), (2, 3)]);
        assert!(matches!(
            p.contract_edges(&[(NodeId(1), NodeId(3))]),
            Err(GraphError::EdgeNotInGraph(..))
        ));
    }

    #[test]
    fn contracting_spanning_tree_leaves_one_node() {
        let g = generate(&GraphKind::Grid { w: 4, h: 3 }).unwrap();
        // BFS tree edges
        let mut seen = vec![false; g.node_count()];
        let mut queue = std::collections::VecDeque::from([0usize]);
        seen[0] = true;
        let mut tree = Vec::new();
        while let Some(v) = queue.pop_front() {
            for &w in g.neighbors(v) {
                if !seen[w] {
                    seen[w] = true;
                    tree.push((g.id(v), g.id(w)));
                    queue.push_back(w);
                }
            }
        }
        let c = g.contract_edges(&tree).unwrap();
        assert_eq!(c.node_count(), 1);
        assert_eq!(c.edge_count(), 0);
        assert_eq!(c.ids(), &[NodeId(1)]);
    }

    #[test]
    fn has_cycle_matches_forest_count() {
        assert!(!g(&[(1, 2), (2, 3), (3, 4)]).has_cycle());
        assert!(g(&[(1, 2), (2, 3), (3, 1)]).has_cycle());
    }

    #[test]
    fn polynomial_id_range() {
        let p = g(&[(1, 2), (2, 4)]);
        assert!(p.ids_within_polynomial_range(2));
        let q = g(&[(1, 2), (2, 10)]);
        assert!(!q.ids_within_polynomial_range(2));
    }
}
