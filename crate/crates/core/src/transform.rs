//! Unfolding a planar graph along a DFS tree into a path-outerplanar graph.
//!
//! The DFS explores neighbors counterclockwise starting right after the edge
//! it arrived by; at the root a virtual edge `r'` sits just before the first
//! rotation entry. The Euler tour `f` of the tree numbers the visits
//! `1..=2n-1`, and every cotree edge is re-attached to the visit ("copy") of
//! each endpoint whose corner contains it. Walking counterclockwise from a
//! cotree edge, the first tree edge met is the one that copy departs along.

use std::collections::BTreeMap;
use std::fmt;

use crate::embedding::{EmbeddingError, RotationSystem};
use crate::graph::{Graph, GraphError, NodeId};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum TransformError {
    #[error("root {0} is not a node of the graph")]
    UnknownRoot(NodeId),
    #[error("graph is not connected")]
    Disconnected,
    #[error(transparent)]
    Rotation(#[from] EmbeddingError),
    #[error("path edge {{{0}, {1}}} missing from the unfolded graph")]
    MissingPathEdge(u32, u32),
    #[error("cotree edge {{{u}, {v}}} mapped to {{{i}, {j}}} whose images are not its endpoints")]
    WrongImage { u: NodeId, v: NodeId, i: u32, j: u32 },
    #[error("unfolded edge {{{0}, {1}}} is neither a path edge nor a cotree image")]
    StrayEdge(u32, u32),
    #[error("index {0} outside 1..=2n-1")]
    IndexOutOfRange(u32),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootedTree {
    root: NodeId,
    parent: BTreeMap<NodeId, NodeId>,
    children: BTreeMap<NodeId, Vec<NodeId>>,
}

impl RootedTree {
    pub fn root(&self) -> NodeId {
        self.root
    }

    pub fn parent(&self, v: NodeId) -> Option<NodeId> {
        self.parent.get(&v).copied()
    }

    pub fn children(&self, v: NodeId) -> &[NodeId] {
        self.children.get(&v).map_or(&[], Vec::as_slice)
    }

    pub fn node_count(&self) -> usize {
        self.children.len()
    }

    pub fn is_tree_edge(&self, u: NodeId, v: NodeId) -> bool {
        self.parent(u) == Some(v) || self.parent(v) == Some(u)
    }

    /// Tree edges as `(parent, child)`.
    pub fn edges(&self) -> impl Iterator<Item = (NodeId, NodeId)> + '_ {
        self.parent.iter().map(|(&c, &p)| (p, c))
    }

    /// Hop distance from the root.
    pub fn depth(&self, mut v: NodeId) -> u32 {
        let mut d = 0;
        while let Some(p) = self.parent(v) {
            v = p;
            d += 1;
        }
        d
    }
}

/// DFS tree whose child order follows the rotation counterclockwise, starting
/// right after the parent edge (after `r'` at the root).
pub fn spanning_tree_dfs(g: &Graph, rot: &RotationSystem, root: NodeId) -> Result<RootedTree, TransformError> {
    if !g.contains(root) {
        return Err(TransformError::UnknownRoot(root));
    }
    if !g.is_connected() {
        return Err(TransformError::Disconnected);
    }
    rot.check_against(g)?;
    let mut parent = BTreeMap::new();
    let mut children: BTreeMap<NodeId, Vec<NodeId>> = g.ids().iter().map(|&v| (v, Vec::new())).collect();
    let mut visited = BTreeMap::from([(root, true)]);
    let scan_order = |v: NodeId, from: Option<NodeId>| -> Vec<NodeId> {
        let list = rot.rotation(v).unwrap_or(&[]);
        let start = from.and_then(|p| list.iter().position(|&w| w == p)).map_or(0, |p| p + 1);
        list[start..].iter().chain(&list[..start]).copied().collect()
    };
    let mut stack = vec![(root, scan_order(root, None), 0usize)];
    while let Some((v, order, idx)) = stack.last_mut() {
        let v = *v;
        if *idx == order.len() {
            stack.pop();
            continue;
        }
        let w = order[*idx];
        *idx += 1;
        if visited.insert(w, true).is_none() {
            parent.insert(w, v);
            children.get_mut(&v).expect("node").push(w);
            stack.push((w, scan_order(w, Some(v)), 0));
        }
    }
    Ok(RootedTree { root, parent, children })
}

/// Euler-tour numbering: `f(1..=2n-1)` are real nodes, `f(0) = f(2n) = r'`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DfsMapping {
    f: Vec<Option<NodeId>>,
    copies: BTreeMap<NodeId, Vec<u32>>,
}

impl DfsMapping {
    /// Number of real indices, `2n - 1`.
    pub fn len(&self) -> u32 {
        self.f.len() as u32 - 2
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// `f(i)`; `None` at the sentinel positions `0` and `2n` or out of range.
    pub fn f(&self, i: u32) -> Option<NodeId> {
        self.f.get(i as usize).copied().flatten()
    }

    pub fn copies(&self, v: NodeId) -> &[u32] {
        self.copies.get(&v).map_or(&[], Vec::as_slice)
    }

    pub fn fmin(&self, v: NodeId) -> u32 {
        self.copies(v)[0]
    }

    pub fn fmax(&self, v: NodeId) -> u32 {
        *self.copies(v).last().expect("every node has a copy")
    }

    pub fn all_copies(&self) -> &BTreeMap<NodeId, Vec<u32>> {
        &self.copies
    }
}

impl fmt::Display for DfsMapping {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        out.write_str("f:")?;
        for x in &self.f {
            match x {
                Some(v) => write!(out, " {v}")?,
                None => out.write_str(" r'")?,
            }
        }
        Ok(())
    }
}

pub fn dfs_mapping(t: &RootedTree) -> DfsMapping {
    let mut f = vec![None];
    let mut stack = vec![(t.root, 0usize)];
    f.push(Some(t.root));
    while let Some((v, next)) = stack.last_mut() {
        let v = *v;
        let kids = t.children(v);
        if *next == kids.len() {
            stack.pop();
            if let Some(&(p, _)) = stack.last() {
                f.push(Some(p));
            }
            continue;
        }
        let c = kids[*next];
        *next += 1;
        f.push(Some(c));
        stack.push((c, 0));
    }
    f.push(None);
    let mut copies: BTreeMap<NodeId, Vec<u32>> = BTreeMap::new();
    for (i, v) in f.iter().enumerate() {
        if let Some(v) = v {
            copies.entry(*v).or_default().push(i as u32);
        }
    }
    DfsMapping { f, copies }
}

/// The unfolded graph on indices `1..=2n-1`, stored as a [`Graph`] whose node
/// ids are the indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InducedGraph {
    pub n_virtual: u32,
    pub graph: Graph,
    /// Cotree edge `(u, v)` with `u < v` to `(i, j)` with `f(i) = u`, `f(j) = v`.
    pub cotree_map: BTreeMap<(NodeId, NodeId), (u32, u32)>,
}

impl InducedGraph {
    /// Checks both clauses of the unfolding definition against `g` and `fm`:
    /// every path edge is present, and non-path edges are exactly the cotree
    /// images with the right endpoints.
    pub fn validate(&self, g: &Graph, fm: &DfsMapping) -> Result<(), TransformError> {
        let nv = self.n_virtual;
        for i in 1..nv {
            if !self.graph.has_edge(NodeId(i), NodeId(i + 1)) {
                return Err(TransformError::MissingPathEdge(i, i + 1));
            }
        }
        let mut images = std::collections::BTreeSet::new();
        for (&(u, v), &(i, j)) in &self.cotree_map {
            for x in [i, j] {
                if x == 0 || x > nv {
                    return Err(TransformError::IndexOutOfRange(x));
                }
            }
            let ok = g.has_edge(u, v)
                && ((fm.f(i) == Some(u) && fm.f(j) == Some(v)) || (fm.f(i) == Some(v) && fm.f(j) == Some(u)));
            if !ok {
                return Err(TransformError::WrongImage { u, v, i, j });
            }
            images.insert((i.min(j), i.max(j)));
        }
        for (a, b) in self.graph.edge_ids() {
            if b.0 != a.0 + 1 && !images.contains(&(a.0, b.0)) {
                return Err(TransformError::StrayEdge(a.0, b.0));
            }
        }
        Ok(())
    }

    pub fn cotree_count(&self) -> usize {
        self.cotree_map.len()
    }
}

/// Index of the copy of `u` that leaves along the first tree edge met when
/// walking counterclockwise around `u` from the edge to `from`.
fn corner(u: NodeId, from: NodeId, rot: &RotationSystem, t: &RootedTree, fm: &DfsMapping) -> u32 {
    let list = rot.rotation(u).expect("validated rotation");
    let start = list.iter().position(|&w| w == from).expect("neighbor in rotation");
    let d = list.len();
    for step in 1..=d {
        let pos = start + step;
        if u == t.root && pos == d {
            // Crossed the r' corridor, which sits just before entry 0.
            return fm.len();
        }
        let w = list[pos % d];
        if t.parent(w) == Some(u) {
            return fm.fmin(w) - 1;
        }
        if t.parent(u) == Some(w) {
            return fm.fmax(u);
        }
    }
    unreachable!("a node of a connected graph with n >= 2 has a tree edge")
}

pub fn induce_graph(g: &Graph, rot: &RotationSystem, t: &RootedTree, fm: &DfsMapping) -> Result<InducedGraph, TransformError> {
    rot.check_against(g)?;
    let nv = fm.len();
    let mut edges: Vec<(NodeId, NodeId)> = (1..nv).map(|i| (NodeId(i), NodeId(i + 1))).collect();
    let mut cotree_map = BTreeMap::new();
    for (u, v) in g.edge_ids() {
        if t.is_tree_edge(u, v) {
            continue;
        }
        let i = corner(u, v, rot, t, fm);
        let j = corner(v, u, rot, t, fm);
        cotree_map.insert((u, v), (i, j));
        edges.push((NodeId(i), NodeId(j)));
    }
    let graph = Graph::with_nodes((1..=nv).map(NodeId), edges)?;
    Ok(InducedGraph {
        n_virtual: nv,
        graph,
        cotree_map,
    })
}

/// Rebuilds `g` from the unfolded graph: add an edge between consecutive
/// copies of each node, contract those edges keeping the smaller index,
/// relabel every index by `f`, and compare.
pub fn contract_check(g: &Graph, induced: &InducedGraph, fm: &DfsMapping) -> Result<bool, TransformError> {
    induced.validate(g, fm)?;
    let mut repeat = Vec::new();
    for copies in fm.all_copies().values() {
        for w in copies.windows(2) {
            repeat.push((NodeId(w[0]), NodeId(w[1])));
        }
    }
    let union = induced.graph.with_extra_edges(&repeat)?;
    let contracted = union.contract_edges(&repeat)?;
    let relabeled = contracted.relabel(|i| fm.f(i.0).expect("real index"))?;
    Ok(relabeled == *g)
}

/// Tree, mapping and unfolded graph for `g` rooted at `root`.
pub fn unfold(g: &Graph, rot: &RotationSystem, root: NodeId) -> Result<(RootedTree, DfsMapping, InducedGraph), TransformError> {
    let t = spanning_tree_dfs(g, rot, root)?;
    let fm = dfs_mapping(&t);
    let induced = induce_graph(g, rot, &t, &fm)?;
    Ok((t, fm, induced))
}
