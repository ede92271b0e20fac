use std::fmt;

use super::lr::is_planar;
use crate::graph::{Graph, NodeId};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WitnessKind {
    K5,
    K33,
}

impl fmt::Display for WitnessKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            WitnessKind::K5 => "K5-subdivision",
            WitnessKind::K33 => "K33-subdivision",
        })
    }
}

/// A subdivision of K5 or K3,3 inside the input graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NonPlanarWitness {
    pub kind: WitnessKind,
    pub branch_nodes: Vec<NodeId>,
    /// One path per branch-node pair joined in the pattern, endpoints included.
    pub paths: Vec<Vec<NodeId>>,
}

impl NonPlanarWitness {
    /// The subgraph formed by the witness paths.
    pub fn subgraph(&self) -> Graph {
        let edges = self.paths.iter().flat_map(|p| p.windows(2).map(|w| (w[0], w[1])));
        Graph::from_edges(edges).expect("witness paths are simple")
    }
}

/// Deletes edges greedily while the rest stays non-planar. What remains is an
/// edge-minimal non-planar graph, hence a Kuratowski subdivision.
pub(super) fn witness(g: &Graph) -> NonPlanarWitness {
    let ids: Vec<NodeId> = g.ids().to_vec();
    let mut edges = g.edge_ids();
    let mut i = 0;
    while i < edges.len() {
        let mut trial = edges.clone();
        trial.remove(i);
        let h = Graph::with_nodes(ids.iter().copied(), trial.iter().copied()).expect("subgraph");
        if is_planar(&h) {
            i += 1;
        } else {
            edges = trial;
        }
    }
    let h = Graph::from_edges(edges).expect("non-empty subgraph");
    let branch: Vec<usize> = (0..h.node_count()).filter(|&v| h.degree(v) > 2).collect();
    let kind = if branch.len() == 5 { WitnessKind::K5 } else { WitnessKind::K33 };
    let mut paths = Vec::new();
    for &b in &branch {
        for &first in h.neighbors(b) {
            let mut path = vec![b, first];
            let (mut prev, mut cur) = (b, first);
            while h.degree(cur) == 2 {
                let next = *h.neighbors(cur).iter().find(|&&x| x != prev).expect("degree two");
                prev = cur;
                cur = next;
                path.push(cur);
            }
            if b < cur {
                paths.push(path.into_iter().map(|v| h.id(v)).collect());
            }
        }
    }
    paths.sort();
    NonPlanarWitness {
        kind,
        branch_nodes: branch.into_iter().map(|v| h.id(v)).collect(),
        paths,
    }
}
