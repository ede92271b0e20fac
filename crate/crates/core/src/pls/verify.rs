use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use super::{EdgeCertificate, NodeCertificate, TreeSub, MAX_EDGE_CERTS};
use crate::graph::NodeId;
use crate::pop::{pop_verify_node, PopCertificate};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Decision {
    Accept,
    Reject,
}

/// Outcome of the local verifier. Rejections name the phase (1, 2 or 3)
/// that failed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Verdict {
    pub decision: Decision,
    pub phase: Option<u8>,
    pub reason: String,
}

impl Verdict {
    pub fn accept() -> Verdict {
        Verdict {
            decision: Decision::Accept,
            phase: None,
            reason: String::new(),
        }
    }

    pub fn reject(phase: u8, reason: impl Into<String>) -> Verdict {
        Verdict {
            decision: Decision::Reject,
            phase: Some(phase),
            reason: reason.into(),
        }
    }

    pub fn accepted(&self) -> bool {
        self.decision == Decision::Accept
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.phase {
            None => f.write_str("accept"),
            Some(p) => write!(f, "reject (phase {p}): {}", self.reason),
        }
    }
}

/// One incident edge seen from `x`, with the two virtual edges oriented so
/// that the `x` side comes first.
#[derive(Debug, Clone, Copy)]
struct Oriented {
    y: NodeId,
    xs: (u32, u32),
    ys: (u32, u32),
    tree: bool,
}

impl Oriented {
    fn x_min(&self) -> u32 {
        self.xs.0.min(self.xs.1)
    }
    fn y_min(&self) -> u32 {
        self.ys.0.min(self.ys.1)
    }
    fn y_max(&self) -> u32 {
        self.ys.0.max(self.ys.1)
    }
}

type Fail = (u8, String);

fn fail<T>(phase: u8, msg: impl Into<String>) -> Result<T, Fail> {
    Err((phase, msg.into()))
}

/// Spanning-tree check at `x`. `parent` is the parent derived from the
/// edge certificates; it must agree with the tree sub-certificate.
pub fn verify_spanning_tree_sub(
    x: NodeId,
    own: &TreeSub,
    neighbors: &BTreeMap<NodeId, TreeSub>,
    parent: Option<NodeId>,
) -> Result<(), String> {
    if let Some((y, _)) = neighbors.iter().find(|(_, t)| t.root != own.root) {
        return Err(format!("neighbor {y} names root {} instead of {}", neighbors[y].root, own.root));
    }
    if own.parent != parent {
        return Err(format!("tree parent {:?} disagrees with edge certificates ({parent:?})", own.parent));
    }
    match own.parent {
        None => {
            if x != own.root || own.dist != 0 {
                return Err(format!("{x} has no parent but is not a root at distance 0"));
            }
        }
        Some(p) => {
            if x == own.root {
                return Err("the root has a parent".into());
            }
            let Some(pt) = neighbors.get(&p) else {
                return Err(format!("parent {p} is not a neighbor"));
            };
            if own.dist == 0 || pt.dist != own.dist - 1 {
                return Err(format!("distance {} does not follow parent distance {}", own.dist, pt.dist));
            }
        }
    }
    Ok(())
}

/// Local verifier at node `x`. `neighbors` must hold exactly the
/// certificates of the neighbors of `x`; it never panics on adversarial
/// input.
pub fn verify_node_planarity(x: NodeId, own: &NodeCertificate, neighbors: &BTreeMap<NodeId, NodeCertificate>) -> Verdict {
    match run(x, own, neighbors) {
        Ok(()) => Verdict::accept(),
        Err((phase, reason)) => Verdict::reject(phase, reason),
    }
}

fn run(x: NodeId, own: &NodeCertificate, neighbors: &BTreeMap<NodeId, NodeCertificate>) -> Result<(), Fail> {
    let n = own.n;
    if n == 0 || n > u32::MAX / 2 {
        return fail(1, format!("bad node count {n}"));
    }
    let nv = 2 * n - 1;
    if own.edges.len() > MAX_EDGE_CERTS {
        return fail(1, format!("{} edge certificates, at most {MAX_EDGE_CERTS} allowed", own.edges.len()));
    }
    if let Some((y, _)) = neighbors.iter().find(|(_, c)| c.n != n) {
        return fail(1, format!("neighbor {y} disagrees on n"));
    }

    let (incident, pops) = phase1(x, own, neighbors, nv)?;

    if n == 1 {
        if !neighbors.is_empty() {
            return fail(2, "n = 1 but the node has neighbors");
        }
        return verify_spanning_tree_sub(x, &own.tree, &BTreeMap::new(), None).map_err(|e| (2, e));
    }
    let copies = phase2(x, own, neighbors, &incident, nv)?;
    phase3(&incident, &pops, &copies, nv)
}

/// Coverage, well-formedness, and agreement of the POP certificates carried
/// by the incident edge certificates.
fn phase1(
    x: NodeId,
    own: &NodeCertificate,
    neighbors: &BTreeMap<NodeId, NodeCertificate>,
    nv: u32,
) -> Result<(Vec<Oriented>, BTreeMap<u32, PopCertificate>), Fail> {
    let mut found: BTreeMap<NodeId, Vec<&EdgeCertificate>> = neighbors.keys().map(|&y| (y, Vec::new())).collect();
    for e in &own.edges {
        let other = match (e.id_x == x, e.id_y == x) {
            (true, false) => e.id_y,
            (false, true) => e.id_x,
            _ => return fail(1, format!("own edge certificate {}-{} is not incident to {x}", e.id_x, e.id_y)),
        };
        match found.get_mut(&other) {
            Some(list) => list.push(e),
            None => return fail(1, format!("own edge certificate names non-neighbor {other}")),
        }
    }
    for (&y, c) in neighbors {
        for e in &c.edges {
            if !e.mentions(x) {
                continue;
            }
            if e.key() != (x.min(y), x.max(y)) {
                return fail(1, format!("neighbor {y} holds certificate {}-{} naming {x}", e.id_x, e.id_y));
            }
            found.get_mut(&y).expect("neighbor").push(e);
        }
    }

    let mut incident = Vec::with_capacity(found.len());
    let mut pops: BTreeMap<u32, PopCertificate> = BTreeMap::new();
    for (y, list) in found {
        let [e] = list[..] else {
            return fail(1, format!("edge {x}-{y} certified {} times", list.len()));
        };
        let (xs, ys, xp, yp) = if e.id_x == x {
            ((e.i, e.i2), (e.j, e.j2), (e.pop_i, e.pop_i2), (e.pop_j, e.pop_j2))
        } else {
            ((e.j, e.j2), (e.i, e.i2), (e.pop_j, e.pop_j2), (e.pop_i, e.pop_i2))
        };
        for (idx, p) in [(xs.0, xp.0), (xs.1, xp.1), (ys.0, yp.0), (ys.1, yp.1)] {
            if idx == 0 || idx > nv {
                return fail(1, format!("index {idx} on edge {x}-{y} outside 1..={nv}"));
            }
            if p.rank != idx || p.n != nv {
                return fail(1, format!("POP certificate {p} does not belong to index {idx}"));
            }
            if let Some(prev) = pops.insert(idx, p) {
                if prev != p {
                    return fail(1, format!("two POP certificates for index {idx}"));
                }
            }
        }
        // A leaf child has one copy, so its two virtual edges share it.
        if [xs.0, xs.1].iter().any(|a| *a == ys.0 || *a == ys.1) {
            return fail(1, format!("edge {x}-{y} gives one index to both endpoints"));
        }
        let tree = !(xs.0 == xs.1 && ys.0 == ys.1);
        if tree && (xs.0.abs_diff(ys.0) != 1 || xs.1.abs_diff(ys.1) != 1) {
            return fail(1, format!("tree edge {x}-{y} maps off the path"));
        }
        incident.push(Oriented { y, xs, ys, tree });
    }

    let copies: BTreeSet<u32> = incident.iter().filter(|o| o.tree).flat_map(|o| [o.xs.0, o.xs.1]).collect();
    if let Some(o) = incident.iter().find(|o| !o.tree && !copies.contains(&o.xs.0)) {
        return fail(1, format!("cotree edge {x}-{} uses index {} that is not a copy of {x}", o.y, o.xs.0));
    }
    Ok((incident, pops))
}

/// Spanning tree and Euler-tour structure. Returns the copies of `x`.
fn phase2(
    x: NodeId,
    own: &NodeCertificate,
    neighbors: &BTreeMap<NodeId, NodeCertificate>,
    incident: &[Oriented],
    nv: u32,
) -> Result<BTreeSet<u32>, Fail> {
    let tree_edges: Vec<&Oriented> = incident.iter().filter(|o| o.tree).collect();
    let parents: Vec<&&Oriented> = tree_edges.iter().filter(|o| o.y_min() < o.x_min()).collect();
    if parents.len() > 1 {
        return fail(2, format!("{} parents derived from edge certificates", parents.len()));
    }
    let parent = parents.first().map(|o| o.y);
    let trees: BTreeMap<NodeId, TreeSub> = neighbors.iter().map(|(&y, c)| (y, c.tree)).collect();
    verify_spanning_tree_sub(x, &own.tree, &trees, parent).map_err(|e| (2, e))?;

    let copies: BTreeSet<u32> = tree_edges.iter().flat_map(|o| [o.xs.0, o.xs.1]).collect();
    let (Some(&fmin), Some(&fmax)) = (copies.first(), copies.last()) else {
        return fail(2, format!("{x} has no tree edge"));
    };
    if let Some(p) = parents.first() {
        let (a, b) = (p.xs.0.min(p.xs.1), p.xs.0.max(p.xs.1));
        if (a, b) != (fmin, fmax) {
            return fail(2, format!("parent edge uses copies {a},{b}, expected first and last {fmin},{fmax}"));
        }
    } else if fmin != 1 || fmax != nv {
        return fail(2, format!("root copies span {fmin}..{fmax}, expected 1..{nv}"));
    }

    let mut children: Vec<&&Oriented> = tree_edges.iter().filter(|o| o.y_min() > o.x_min()).collect();
    children.sort_by_key(|o| o.y_min());
    for c in &children {
        let want = (c.y_min() - 1, c.y_max() + 1);
        let got = (c.xs.0.min(c.xs.1), c.xs.0.max(c.xs.1));
        if got != want {
            return fail(2, format!("child edge to {} has copies {:?}, expected {:?}", c.y, got, want));
        }
    }
    match (children.first(), children.last()) {
        (None, _) | (_, None) => {
            if fmin != fmax {
                return fail(2, format!("leaf {x} has copies {fmin} and {fmax}"));
            }
        }
        (Some(first), Some(last)) => {
            if fmin != first.y_min() - 1 || fmax != last.y_max() + 1 {
                return fail(2, format!("children of {x} do not span its first and last copies"));
            }
            for w in children.windows(2) {
                if w[1].y_min() != w[0].y_max() + 2 {
                    return fail(2, format!("children {} and {} are not consecutive in the tour", w[0].y, w[1].y));
                }
            }
        }
    }
    Ok(copies)
}

/// Runs the path-outerplanarity check once per copy of `x`.
fn phase3(incident: &[Oriented], pops: &BTreeMap<u32, PopCertificate>, copies: &BTreeSet<u32>, nv: u32) -> Result<(), Fail> {
    let mut adj: BTreeMap<u32, Vec<u32>> = copies.iter().map(|&i| (i, Vec::new())).collect();
    for o in incident {
        let pairs: &[(u32, u32)] = if o.tree { &[(o.xs.0, o.ys.0), (o.xs.1, o.ys.1)] } else { &[(o.xs.0, o.ys.0)] };
        for &(a, b) in pairs {
            adj.get_mut(&a).expect("copy").push(b);
        }
    }
    for (&i, nb) in &adj {
        let own = pops[&i];
        let certs: Vec<PopCertificate> = nb.iter().map(|j| pops[j]).collect();
        if let Err(r) = pop_verify_node(&own, &certs) {
            return fail(3, format!("copy {i} of {nv}: {r}"));
        }
    }
    Ok(())
}
