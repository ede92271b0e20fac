//! The planarity proof-labeling scheme.
//!
//! Every edge `{x, y}` of `G` gets a certificate naming its one or two images
//! in the unfolded graph together with the path-outerplanarity certificates of
//! their endpoints. An edge's certificate is stored at whichever endpoint
//! comes first in a degeneracy order, so no node stores more than five.

mod codec;
mod verify;

use std::collections::BTreeMap;

use crate::embedding::{planar_embed, validate_rotation, Embedding, NonPlanarWitness, RotationSystem};
use crate::graph::{degeneracy_order, Graph, NodeId};
use crate::pop::{honest_intervals, PopCertificate};
use crate::transform::{unfold, DfsMapping, InducedGraph, RootedTree, TransformError};

pub use codec::{decode_node, encode_node, parse_certificate_file, write_certificate_file, CodecError};
pub use verify::{verify_node_planarity, verify_spanning_tree_sub, Decision, Verdict};

/// Maximum number of edge certificates a node may hold.
pub const MAX_EDGE_CERTS: usize = 5;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct EdgeCertificate {
    pub id_x: NodeId,
    pub id_y: NodeId,
    /// Indices with `f(i) = f(i2) = id_x` and `f(j) = f(j2) = id_y`.
    pub i: u32,
    pub j: u32,
    pub i2: u32,
    pub j2: u32,
    pub pop_i: PopCertificate,
    pub pop_j: PopCertificate,
    pub pop_i2: PopCertificate,
    pub pop_j2: PopCertificate,
}

impl EdgeCertificate {
    pub fn mentions(&self, v: NodeId) -> bool {
        self.id_x == v || self.id_y == v
    }

    /// Endpoints as an ordered pair.
    pub fn key(&self) -> (NodeId, NodeId) {
        (self.id_x.min(self.id_y), self.id_x.max(self.id_y))
    }
}

/// Spanning-tree sub-certificate: root id, parent id and hop distance.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct TreeSub {
    pub root: NodeId,
    pub parent: Option<NodeId>,
    pub dist: u32,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct NodeCertificate {
    pub n: u32,
    pub tree: TreeSub,
    pub edges: Vec<EdgeCertificate>,
}

pub type Certificates = BTreeMap<NodeId, NodeCertificate>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ProveError {
    #[error("graph is not connected")]
    Disconnected,
    #[error("graph is not planar ({})", .0.kind)]
    NonPlanar(NonPlanarWitness),
    #[error("supplied rotation system is not a planar embedding of the graph")]
    InvalidRotation,
    #[error(transparent)]
    Transform(#[from] TransformError),
}

/// Everything the honest prover computed, kept for diagnostics.
#[derive(Debug, Clone)]
pub struct Proof {
    pub rotation: RotationSystem,
    pub tree: RootedTree,
    pub mapping: DfsMapping,
    pub induced: InducedGraph,
    pub pop: Vec<PopCertificate>,
    pub certificates: Certificates,
}

pub fn prove_planar(g: &Graph, rot: Option<&RotationSystem>) -> Result<Certificates, ProveError> {
    prove_planar_detailed(g, rot, None).map(|p| p.certificates)
}

/// Honest prover. `root` defaults to the smallest identifier.
pub fn prove_planar_detailed(g: &Graph, rot: Option<&RotationSystem>, root: Option<NodeId>) -> Result<Proof, ProveError> {
    if !g.is_connected() || g.node_count() == 0 {
        return Err(ProveError::Disconnected);
    }
    let rotation = match rot {
        Some(r) if validate_rotation(g, r) => r.clone(),
        Some(_) => return Err(ProveError::InvalidRotation),
        None => match planar_embed(g) {
            Embedding::Planar(r) => r,
            Embedding::NonPlanar(w) => return Err(ProveError::NonPlanar(w)),
        },
    };
    let root = root.unwrap_or(g.ids()[0]);
    let (tree, mapping, induced) = unfold(g, &rotation, root)?;
    let nv = mapping.len();
    let edges: Vec<(u32, u32)> = induced.graph.edge_ids().iter().map(|&(a, b)| (a.0, b.0)).collect();
    let pop: Vec<PopCertificate> = honest_intervals(nv as usize, &edges)
        .into_iter()
        .enumerate()
        .map(|(k, (lo, hi))| PopCertificate {
            n: nv,
            rank: k as u32 + 1,
            lo,
            hi,
        })
        .collect();
    let cert_at = |i: u32| pop[i as usize - 1];

    let order = degeneracy_order(g);
    let depth = depths(&tree);
    let mut certificates: Certificates = g
        .ids()
        .iter()
        .map(|&v| {
            (
                v,
                NodeCertificate {
                    n: g.node_count() as u32,
                    tree: TreeSub {
                        root,
                        parent: tree.parent(v),
                        dist: depth[&v],
                    },
                    edges: Vec::new(),
                },
            )
        })
        .collect();
    for (x, y) in g.edge_ids() {
        let (i, j, i2, j2) = if let Some(&(i, j)) = induced.cotree_map.get(&(x, y)) {
            (i, j, i, j)
        } else {
            // Tree edge: the child's first and last visits border the parent's.
            let (parent, child) = if tree.parent(y) == Some(x) { (x, y) } else { (y, x) };
            let (lo, hi) = (mapping.fmin(child), mapping.fmax(child));
            let (p1, c1, p2, c2) = (lo - 1, lo, hi + 1, hi);
            if parent == x {
                (p1, c1, p2, c2)
            } else {
                (c1, p1, c2, p2)
            }
        };
        let cert = EdgeCertificate {
            id_x: x,
            id_y: y,
            i,
            j,
            i2,
            j2,
            pop_i: cert_at(i),
            pop_j: cert_at(j),
            pop_i2: cert_at(i2),
            pop_j2: cert_at(j2),
        };
        let holder = order.earlier(x, y);
        certificates.get_mut(&holder).expect("node").edges.push(cert);
    }
    Ok(Proof {
        rotation,
        tree,
        mapping,
        induced,
        pop,
        certificates,
    })
}

fn depths(t: &RootedTree) -> BTreeMap<NodeId, u32> {
    let mut out = BTreeMap::from([(t.root(), 0)]);
    let mut stack = vec![t.root()];
    while let Some(v) = stack.pop() {
        let d = out[&v];
        for &c in t.children(v) {
            out.insert(c, d + 1);
            stack.push(c);
        }
    }
    out
}

fn bits_for(values: u64) -> u64 {
    // Bits needed to distinguish `values` codes.
    64 - (values.max(2) - 1).leading_zeros() as u64
}

/// Width of a node identifier field.
pub fn id_bits(max_id: NodeId) -> u64 {
    bits_for(max_id.0 as u64 + 1)
}

/// Width of an index, rank or interval endpoint field: the values `0..=2n`
/// plus two infinity codes.
pub fn index_bits(n: u32) -> u64 {
    bits_for(2 * n as u64 + 3)
}

/// Length of the canonical binary packing of a node certificate.
pub fn certificate_size_bits(cert: &NodeCertificate, n: u32, max_id: NodeId) -> u64 {
    let idw = id_bits(max_id);
    let w = index_bits(n);
    let header = 3 + 1;
    let tree = idw + if cert.tree.parent.is_some() { idw } else { 0 } + 2 * w;
    let edge = 2 * idw + 4 * w + 4 * (4 * w);
    header + tree + cert.edges.len() as u64 * edge
}

/// Largest certificate in an assignment, in bits.
pub fn max_certificate_bits(g: &Graph, certs: &Certificates) -> u64 {
    let n = g.node_count() as u32;
    certs
        .values()
        .map(|c| certificate_size_bits(c, n, g.max_id()))
        .max()
        .unwrap_or(0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{generate, GraphKind};

    fn verify_all(g: &Graph, certs: &Certificates) -> Vec<(NodeId, Verdict)> {
        g.ids()
            .iter()
            .map(|&x| {
                let nb: BTreeMap<NodeId, NodeCertificate> =
                    g.neighbor_ids(x).into_iter().map(|y| (y, certs[&y].clone())).collect();
                (x, verify_node_planarity(x, &certs[&x], &nb))
            })
            .collect()
    }

    fn all_accept(g: &Graph, certs: &Certificates) -> bool {
        verify_all(g, certs).iter().all(|(_, v)| v.accepted())
    }

    #[test]
    fn triangle_certificates() {
        let g = generate(&GraphKind::Complete { k: 3 }).unwrap();
        let certs = prove_planar(&g, None).unwrap();
        assert_eq!(certs.len(), 3);
        let all: Vec<&EdgeCertificate> = certs.values().flat_map(|c| &c.edges).collect();
        assert_eq!(all.len(), 3);
        let tree = all.iter().filter(|e| e.i != e.i2).count();
        assert_eq!(tree, 2);
        assert!(all_accept(&g, &certs));
    }

    #[test]
    fn path_has_only_tree_edges() {
        let g = generate(&GraphKind::Path { n: 6 }).unwrap();
        let p = prove_planar_detailed(&g, None, None).unwrap();
        assert_eq!(p.induced.cotree_count(), 0);
        assert_eq!(p.mapping.len(), 11);
        assert!(p.pop.iter().all(|c| c.interval() == (crate::pop::Bound::At(0), crate::pop::Bound::At(12))));
        assert!(all_accept(&g, &p.certificates));
    }

    #[test]
    fn edge_certificates_once_and_at_most_five() {
        let g = generate(&GraphKind::RandomMaximalPlanar { n: 100, seed: 5 }).unwrap();
        let certs = prove_planar(&g, None).unwrap();
        assert!(certs.values().all(|c| c.edges.len() <= MAX_EDGE_CERTS));
        let mut seen = std::collections::BTreeSet::new();
        for (&holder, c) in &certs {
            for e in &c.edges {
                assert!(e.mentions(holder));
                assert!(seen.insert(e.key()), "edge {:?} certified twice", e.key());
            }
        }
        assert_eq!(seen.len(), g.edge_count());
        assert!(all_accept(&g, &certs));
    }

    #[test]
    fn honest_certificates_accept_on_planar_families() {
        for kind in [
            GraphKind::Grid { w: 7, h: 6 },
            GraphKind::Wheel { n: 20 },
            GraphKind::Tree { n: 60, seed: 3 },
            GraphKind::RandomMaximalPlanar { n: 80, seed: 2 },
            GraphKind::Cycle { n: 5 },
            GraphKind::Path { n: 2 },
        ] {
            let g = generate(&kind).unwrap();
            let certs = prove_planar(&g, None).unwrap();
            for (x, v) in verify_all(&g, &certs) {
                assert!(v.accepted(), "{kind:?} node {x}: {v}");
            }
        }
    }

    #[test]
    fn honest_certificates_accept_for_other_roots() {
        let g = generate(&GraphKind::RandomMaximalPlanar { n: 40, seed: 9 }).unwrap();
        for root in [NodeId(7), NodeId(40)] {
            let p = prove_planar_detailed(&g, None, Some(root)).unwrap();
            assert!(all_accept(&g, &p.certificates));
        }
    }

    #[test]
    fn single_node_graph() {
        let g = Graph::with_nodes([NodeId(4)], []).unwrap();
        let certs = prove_planar(&g, None).unwrap();
        assert!(all_accept(&g, &certs));
    }

    #[test]
    fn nonplanar_and_disconnected_refused() {
        let k5 = generate(&GraphKind::Complete { k: 5 }).unwrap();
        assert!(matches!(prove_planar(&k5, None), Err(ProveError::NonPlanar(_))));
        let two = Graph::from_pairs(&[(1, 2), (3, 4)]).unwrap();
        assert_eq!(prove_planar(&two, None), Err(ProveError::Disconnected));
    }

    #[test]
    fn phase_one_parent_matches_prover_tree() {
        let g = generate(&GraphKind::Grid { w: 5, h: 5 }).unwrap();
        let p = prove_planar_detailed(&g, None, None).unwrap();
        for (&v, c) in &p.certificates {
            assert_eq!(c.tree.parent, p.tree.parent(v));
        }
    }

    #[test]
    fn triangle_size_bound() {
        let g = generate(&GraphKind::Complete { k: 3 }).unwrap();
        let certs = prove_planar(&g, None).unwrap();
        let bound = 150.0 * 3f64.log2();
        assert!((max_certificate_bits(&g, &certs) as f64) <= bound);
    }

    #[test]
    fn empty_edge_list_is_header_plus_tree() {
        let c = NodeCertificate {
            n: 16,
            tree: TreeSub {
                root: NodeId(1),
                parent: Some(NodeId(2)),
                dist: 1,
            },
            edges: vec![],
        };
        // ids up to 16 need 5 bits; indices up to 2n+2 = 34 need 6.
        assert_eq!(certificate_size_bits(&c, 16, NodeId(16)), 4 + 5 + 5 + 6 + 6);
    }

    #[test]
    fn mutations_are_caught() {
        let g = generate(&GraphKind::Wheel { n: 8 }).unwrap();
        let honest = prove_planar(&g, None).unwrap();
        let holder = *honest.iter().find(|(_, c)| !c.edges.is_empty()).unwrap().0;

        let mut dropped = honest.clone();
        dropped.get_mut(&holder).unwrap().edges.pop();
        assert!(!all_accept(&g, &dropped));

        let mut doubled = honest.clone();
        let e = doubled[&holder].edges[0];
        let other = if e.id_x == holder { e.id_y } else { e.id_x };
        doubled.get_mut(&other).unwrap().edges.push(e);
        assert!(!all_accept(&g, &doubled));

        let mut zeroed = honest.clone();
        let c = zeroed.get_mut(&holder).unwrap();
        c.edges.clear();
        c.tree.dist = 0;
        assert!(!all_accept(&g, &zeroed));
    }
}
