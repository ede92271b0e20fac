//! One-round LOCAL simulation.
//!
//! Certificates are opaque bytes. Each node's verifier receives a
//! [`LocalView`] that hands out certificates of the node itself and its
//! neighbors only; any other request is refused and counted.

mod attack;
mod sweep;

use std::collections::BTreeMap;
use std::sync::atomic::{AtomicUsize, Ordering};

use crate::graph::{Graph, NodeId};
use crate::pls::{self, certificate_size_bits, Certificates, Decision, NodeCertificate, Verdict};

pub use attack::{attack, template_certificates, AttackSummary, Strategy, StrategyOutcome};
pub use sweep::{size_sweep, sweep_csv, SweepKind, SweepRow};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Origin {
    Honest,
    Random { seed: u64 },
    Mutated { base: Box<Origin>, edits: usize },
    External,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Assignment {
    pub certs: BTreeMap<NodeId, Vec<u8>>,
    pub origin: Origin,
}

impl Assignment {
    pub fn from_certificates(certs: &Certificates, origin: Origin) -> Assignment {
        Assignment {
            certs: certs.iter().map(|(&v, c)| (v, pls::encode_node(c).into_bytes())).collect(),
            origin,
        }
    }

    pub fn honest(certs: &Certificates) -> Assignment {
        Assignment::from_certificates(certs, Origin::Honest)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SimError {
    #[error("no certificate for node {0}")]
    Incomplete(NodeId),
    #[error("certificate for {0}, which is not a node of the graph")]
    UnknownNode(NodeId),
    #[error("only radius 1 is supported, got {0}")]
    Radius(u32),
}

/// A decoder turns certificate bytes into the verifier's input type.
pub trait NodeVerifier: Sync {
    type Cert: Sync;
    fn decode(&self, bytes: &[u8]) -> Result<Self::Cert, String>;
    fn verify(&self, view: &LocalView<'_, Self::Cert>) -> Verdict;
}

/// What one node may see during the round.
pub struct LocalView<'a, C> {
    node: NodeId,
    neighbors: &'a [NodeId],
    decoded: &'a BTreeMap<NodeId, Result<C, String>>,
    violations: &'a AtomicUsize,
}

impl<'a, C> LocalView<'a, C> {
    pub fn node(&self) -> NodeId {
        self.node
    }

    pub fn neighbors(&self) -> &'a [NodeId] {
        self.neighbors
    }

    /// Certificate of `v` if `v` is in the closed neighborhood; otherwise
    /// the access is logged as a violation and refused.
    pub fn cert(&self, v: NodeId) -> Option<&'a Result<C, String>> {
        if v != self.node && self.neighbors.binary_search(&v).is_err() {
            self.violations.fetch_add(1, Ordering::Relaxed);
            return None;
        }
        self.decoded.get(&v)
    }

    pub fn own(&self) -> &'a Result<C, String> {
        self.decoded.get(&self.node).expect("complete assignment")
    }
}

/// The planarity verifier reading text certificates.
#[derive(Debug, Clone, Copy, Default)]
pub struct PlanarityVerifier;

impl NodeVerifier for PlanarityVerifier {
    type Cert = NodeCertificate;

    fn decode(&self, bytes: &[u8]) -> Result<NodeCertificate, String> {
        let text = std::str::from_utf8(bytes).map_err(|e| e.to_string())?;
        pls::decode_node(text).map_err(|e| e.to_string())
    }

    fn verify(&self, view: &LocalView<'_, NodeCertificate>) -> Verdict {
        let own = match view.own() {
            Ok(c) => c,
            Err(e) => return Verdict::reject(1, format!("malformed own certificate: {e}")),
        };
        let mut nb = BTreeMap::new();
        for &y in view.neighbors() {
            match view.cert(y) {
                Some(Ok(c)) => {
                    nb.insert(y, c.clone());
                }
                Some(Err(e)) => return Verdict::reject(1, format!("malformed certificate at {y}: {e}")),
                None => return Verdict::reject(1, format!("no certificate visible at {y}")),
            }
        }
        pls::verify_node_planarity(view.node(), own, &nb)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunReport {
    pub per_node: BTreeMap<NodeId, Verdict>,
    pub global: Decision,
    pub first_rejector: Option<NodeId>,
    pub max_bits: u64,
    pub mean_bits: f64,
    /// Refused certificate requests outside closed neighborhoods.
    pub violations: usize,
}

impl RunReport {
    pub fn accepted(&self) -> bool {
        self.global == Decision::Accept
    }

    /// Phase of the first rejecting node.
    pub fn first_phase(&self) -> Option<u8> {
        self.first_rejector.and_then(|v| self.per_node[&v].phase)
    }
}

/// Packed size of a certificate, or eight bits per byte when it does not
/// decode.
fn bits_of(bytes: &[u8], g: &Graph) -> u64 {
    match PlanarityVerifier.decode(bytes) {
        Ok(c) => certificate_size_bits(&c, g.node_count() as u32, g.max_id()),
        Err(_) => 8 * bytes.len() as u64,
    }
}

pub fn run_round<V: NodeVerifier>(g: &Graph, a: &Assignment, verifier: &V) -> Result<RunReport, SimError> {
    run_round_radius(g, a, verifier, 1)
}

pub fn run_round_radius<V: NodeVerifier>(g: &Graph, a: &Assignment, verifier: &V, radius: u32) -> Result<RunReport, SimError> {
    if radius != 1 {
        return Err(SimError::Radius(radius));
    }
    if let Some(&v) = a.certs.keys().find(|&&v| !g.contains(v)) {
        return Err(SimError::UnknownNode(v));
    }
    if let Some(&v) = g.ids().iter().find(|v| !a.certs.contains_key(v)) {
        return Err(SimError::Incomplete(v));
    }
    let decoded: BTreeMap<NodeId, Result<V::Cert, String>> = a.certs.iter().map(|(&v, b)| (v, verifier.decode(b))).collect();
    let neighbors: Vec<Vec<NodeId>> = g
        .ids()
        .iter()
        .map(|&v| {
            let mut nb = g.neighbor_ids(v);
            nb.sort_unstable();
            nb
        })
        .collect();
    let violations = AtomicUsize::new(0);
    let eval = |i: usize| {
        let view = LocalView {
            node: g.id(i),
            neighbors: &neighbors[i],
            decoded: &decoded,
            violations: &violations,
        };
        verifier.verify(&view)
    };
    let verdicts: Vec<Verdict> = evaluate(g.node_count(), eval);
    let per_node: BTreeMap<NodeId, Verdict> = g.ids().iter().copied().zip(verdicts).collect();
    let first_rejector = per_node.iter().find(|(_, v)| !v.accepted()).map(|(&k, _)| k);
    let bits: Vec<u64> = a.certs.values().map(|b| bits_of(b, g)).collect();
    Ok(RunReport {
        global: if first_rejector.is_none() { Decision::Accept } else { Decision::Reject },
        first_rejector,
        max_bits: bits.iter().copied().max().unwrap_or(0),
        mean_bits: bits.iter().sum::<u64>() as f64 / bits.len().max(1) as f64,
        violations: violations.into_inner(),
        per_node,
    })
}

#[cfg(feature = "parallel")]
fn evaluate<F: Fn(usize) -> Verdict + Sync + Send>(n: usize, f: F) -> Vec<Verdict> {
    use rayon::prelude::*;
    if n < 256 {
        return (0..n).map(f).collect();
    }
    (0..n).into_par_iter().map(f).collect()
}

#[cfg(not(feature = "parallel"))]
fn evaluate<F: Fn(usize) -> Verdict>(n: usize, f: F) -> Vec<Verdict> {
    (0..n).map(f).collect()
}

/// Proves and verifies in one go; panics only if `g` is not a connected
/// planar graph.
pub fn honest_round(g: &Graph) -> RunReport {
    let certs = pls::prove_planar(g, None).expect("connected planar graph");
    run_round(g, &Assignment::honest(&certs), &PlanarityVerifier).expect("complete assignment")
}
