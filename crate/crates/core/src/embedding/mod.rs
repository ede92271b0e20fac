//! Combinatorial embeddings: rotation systems, face tracing, and planarity
//! testing with embedding extraction.

mod kuratowski;
mod lr;

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use crate::graph::{Graph, NodeId};

pub use kuratowski::{NonPlanarWitness, WitnessKind};
pub use lr::is_planar;

/// Counterclockwise cyclic neighbor order per node, stored starting from the
/// smallest neighbor.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct RotationSystem {
    rot: BTreeMap<NodeId, Vec<NodeId>>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum EmbeddingError {
    #[error("node {0} has no rotation")]
    MissingNode(NodeId),
    #[error("rotation at {0} is not a permutation of its neighbors")]
    NotPermutation(NodeId),
    #[error("rotation given for unknown node {0}")]
    UnknownNode(NodeId),
}

impl RotationSystem {
    pub fn new(rot: BTreeMap<NodeId, Vec<NodeId>>) -> RotationSystem {
        let rot = rot
            .into_iter()
            .map(|(v, mut list)| {
                if let Some(start) = list.iter().enumerate().min_by_key(|&(_, w)| *w).map(|(i, _)| i) {
                    list.rotate_left(start);
                }
                (v, list)
            })
            .collect();
        RotationSystem { rot }
    }

    pub fn rotation(&self, v: NodeId) -> Option<&[NodeId]> {
        self.rot.get(&v).map(Vec::as_slice)
    }

    pub fn iter(&self) -> impl Iterator<Item = (NodeId, &[NodeId])> {
        self.rot.iter().map(|(&v, l)| (v, l.as_slice()))
    }

    pub fn len(&self) -> usize {
        self.rot.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rot.is_empty()
    }

    /// Position of `w` in the rotation at `v`.
    pub fn position(&self, v: NodeId, w: NodeId) -> Option<usize> {
        self.rot.get(&v)?.iter().position(|&x| x == w)
    }

    /// Neighbor after `w` in counterclockwise order around `v`.
    pub fn next_ccw(&self, v: NodeId, w: NodeId) -> Option<NodeId> {
        let list = self.rot.get(&v)?;
        let p = list.iter().position(|&x| x == w)?;
        Some(list[(p + 1) % list.len()])
    }

    /// Neighbor before `w` in counterclockwise order around `v`.
    pub fn prev_ccw(&self, v: NodeId, w: NodeId) -> Option<NodeId> {
        let list = self.rot.get(&v)?;
        let p = list.iter().position(|&x| x == w)?;
        Some(list[(p + list.len() - 1) % list.len()])
    }

    /// Reverses every rotation (the mirror embedding).
    pub fn mirrored(&self) -> RotationSystem {
        RotationSystem::new(
            self.rot
                .iter()
                .map(|(&v, l)| (v, l.iter().rev().copied().collect()))
                .collect(),
        )
    }

    /// Returns the system with the rotation at `v` replaced.
    pub fn with_rotation(&self, v: NodeId, list: Vec<NodeId>) -> RotationSystem {
        let mut rot = self.rot.clone();
        rot.insert(v, list);
        RotationSystem::new(rot)
    }

    /// Checks that every node of `g` has a rotation that permutes its neighbors.
    pub fn check_against(&self, g: &Graph) -> Result<(), EmbeddingError> {
        for (&v, list) in &self.rot {
            if !g.contains(v) {
                return Err(EmbeddingError::UnknownNode(v));
            }
            let mut sorted = list.clone();
            sorted.sort_unstable();
            if sorted != g.neighbor_ids(v) {
                return Err(EmbeddingError::NotPermutation(v));
            }
        }
        for &v in g.ids() {
            if !self.rot.contains_key(&v) {
                return Err(EmbeddingError::MissingNode(v));
            }
        }
        Ok(())
    }
}

impl fmt::Display for RotationSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (v, list) in &self.rot {
            write!(f, "rot {v}:")?;
            for w in list {
                write!(f, " {w}")?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

pub type Dart = (NodeId, NodeId);

/// Traces all faces. Arriving at `v` along `(u, v)`, the walk leaves along the
/// edge preceding `(v, u)` in counterclockwise order.
pub fn faces(g: &Graph, rot: &RotationSystem) -> Result<Vec<Vec<Dart>>, EmbeddingError> {
    rot.check_against(g)?;
    let mut pos: HashMap<Dart, usize> = HashMap::with_capacity(2 * g.edge_count());
    for (v, list) in rot.iter() {
        for (i, &w) in list.iter().enumerate() {
            pos.insert((v, w), i);
        }
    }
    let mut seen: HashMap<Dart, bool> = pos.keys().map(|&d| (d, false)).collect();
    let mut out = Vec::new();
    let mut darts: Vec<Dart> = pos.keys().copied().collect();
    darts.sort_unstable();
    for start in darts {
        if seen[&start] {
            continue;
        }
        let mut face = Vec::new();
        let mut d = start;
        loop {
            seen.insert(d, true);
            face.push(d);
            let (u, v) = d;
            let list = rot.rotation(v).expect("checked");
            let p = pos[&(v, u)];
            let next = list[(p + list.len() - 1) % list.len()];
            d = (v, next);
            if d == start {
                break;
            }
        }
        out.push(face);
    }
    Ok(out)
}

/// True iff `rot` permutes each neighborhood and the face count satisfies
/// Euler's formula on every component.
pub fn validate_rotation(g: &Graph, rot: &RotationSystem) -> bool {
    let Ok(fs) = faces(g, rot) else {
        return false;
    };
    let isolated = (0..g.node_count()).filter(|&v| g.degree(v) == 0).count();
    let v = g.node_count() as i64;
    let e = g.edge_count() as i64;
    let f = (fs.len() + isolated) as i64;
    v - e + f == 2 * g.component_count() as i64
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Embedding {
    Planar(RotationSystem),
    NonPlanar(NonPlanarWitness),
}

/// Left-right planarity test with embedding extraction; on failure, a
/// Kuratowski subdivision.
pub fn planar_embed(g: &Graph) -> Embedding {
    match lr::embed(g) {
        Some(rot) => Embedding::Planar(rot),
        None => Embedding::NonPlanar(kuratowski::witness(g)),
    }
}
