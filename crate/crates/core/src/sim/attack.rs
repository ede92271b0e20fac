//! Adversarial provers.
//!
//! Every strategy produces a full assignment; the summary counts how many
//! trials ended with all nodes accepting.

use std::collections::BTreeMap;
use std::fmt::{self, Write as _};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{run_round, Assignment, Origin, PlanarityVerifier};
use crate::embedding::is_planar;
use crate::graph::{degeneracy_order, generate, Graph, GraphKind, NodeId};
use crate::pls::{prove_planar, prove_planar_detailed, Certificates, EdgeCertificate, NodeCertificate, TreeSub, MAX_EDGE_CERTS};
use crate::pop::{Bound, PopCertificate};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Strategy {
    /// Every field drawn at random.
    Uniform,
    /// A best-effort template with 1, 2 or 4 random field edits.
    TemplateEdits,
    /// The template with the certificates of two nodes exchanged.
    Swap,
    /// Honest certificates of another planar graph on the same identifiers.
    Replay,
}

impl Strategy {
    pub const ALL: [Strategy; 4] = [Strategy::Uniform, Strategy::TemplateEdits, Strategy::Swap, Strategy::Replay];

    pub fn name(self) -> &'static str {
        match self {
            Strategy::Uniform => "uniform",
            Strategy::TemplateEdits => "template-edits",
            Strategy::Swap => "swap",
            Strategy::Replay => "replay",
        }
    }
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for Strategy {
    type Err = String;
    fn from_str(s: &str) -> Result<Strategy, String> {
        Strategy::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| format!("unknown strategy `{s}`"))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StrategyOutcome {
    pub strategy: Strategy,
    pub trials: usize,
    pub accepted: usize,
    /// Trials whose first rejecting node failed in phase 1, 2, 3.
    pub phases: [usize; 3],
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AttackSummary {
    pub seed: u64,
    pub nodes: usize,
    pub edges: usize,
    pub outcomes: Vec<StrategyOutcome>,
}

impl AttackSummary {
    pub fn accepted(&self) -> usize {
        self.outcomes.iter().map(|o| o.accepted).sum()
    }

    pub fn to_csv(&self) -> String {
        let names: Vec<&str> = self.outcomes.iter().map(|o| o.strategy.name()).collect();
        let mut s = format!("# seed={} strategies={}\nstrategy,trials,accepted,phase1,phase2,phase3\n", self.seed, names.join(","));
        for o in &self.outcomes {
            let _ = writeln!(s, "{},{},{},{},{},{}", o.strategy, o.trials, o.accepted, o.phases[0], o.phases[1], o.phases[2]);
        }
        s
    }

    pub fn to_human(&self) -> String {
        let mut s = format!("graph: {} nodes, {} edges; seed {}\n", self.nodes, self.edges, self.seed);
        for o in &self.outcomes {
            let _ = writeln!(
                s,
                "  {:<15} trials {:>5}  accepted {:>3}  rejected in phase 1/2/3: {}/{}/{}",
                o.strategy.name(),
                o.trials,
                o.accepted,
                o.phases[0],
                o.phases[1],
                o.phases[2]
            );
        }
        let _ = writeln!(s, "accepted: {}", self.accepted());
        s
    }
}

const TEMPLATES: u64 = 8;

pub fn attack(g: &Graph, strategies: &[Strategy], trials: usize, seed: u64) -> AttackSummary {
    let templates: Vec<Certificates> = (0..TEMPLATES).map(|t| template_certificates(g, seed.wrapping_add(t))).collect();
    let outcomes = strategies
        .iter()
        .enumerate()
        .map(|(si, &strategy)| {
            let run = |t: usize| {
                let mix = seed ^ ((si as u64 + 1) << 40) ^ (t as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15);
                let mut rng = ChaCha8Rng::seed_from_u64(mix);
                let a = forge(g, strategy, &templates[t % templates.len()], t, mix, &mut rng);
                run_round(g, &a, &PlanarityVerifier).expect("forged assignments cover every node")
            };
            let reports = run_trials(trials, run);
            let mut o = StrategyOutcome {
                strategy,
                trials,
                accepted: 0,
                phases: [0; 3],
            };
            for r in reports {
                match r.first_phase() {
                    None => o.accepted += 1,
                    Some(p) => o.phases[(p.clamp(1, 3) - 1) as usize] += 1,
                }
            }
            o
        })
        .collect();
    AttackSummary {
        seed,
        nodes: g.node_count(),
        edges: g.edge_count(),
        outcomes,
    }
}

#[cfg(feature = "parallel")]
fn run_trials<F: Fn(usize) -> super::RunReport + Sync + Send>(trials: usize, f: F) -> Vec<super::RunReport> {
    use rayon::prelude::*;
    (0..trials).into_par_iter().map(f).collect()
}

#[cfg(not(feature = "parallel"))]
fn run_trials<F: Fn(usize) -> super::RunReport>(trials: usize, f: F) -> Vec<super::RunReport> {
    (0..trials).map(f).collect()
}

fn forge(g: &Graph, s: Strategy, template: &Certificates, trial: usize, seed: u64, rng: &mut ChaCha8Rng) -> Assignment {
    match s {
        Strategy::Uniform => {
            let certs = g.ids().iter().map(|&v| (v, random_certificate(g, v, rng))).collect();
            Assignment::from_certificates(&certs, Origin::Random { seed })
        }
        Strategy::TemplateEdits => {
            let k = [1, 2, 4][trial % 3];
            let mut certs = template.clone();
            for _ in 0..k {
                edit_field(g, &mut certs, rng);
            }
            Assignment::from_certificates(
                &certs,
                Origin::Mutated {
                    base: Box::new(Origin::Honest),
                    edits: k,
                },
            )
        }
        Strategy::Swap => {
            let mut certs = template.clone();
            let pick: Vec<NodeId> = g.ids().choose_multiple(rng, 2).copied().collect();
            if let [u, v] = pick[..] {
                let cu = certs.remove(&u).expect("node");
                let cv = certs.insert(v, cu).expect("node");
                certs.insert(u, cv);
            }
            Assignment::from_certificates(
                &certs,
                Origin::Mutated {
                    base: Box::new(Origin::Honest),
                    edits: 2,
                },
            )
        }
        Strategy::Replay => {
            let certs = replay_certificates(g, rng);
            Assignment::from_certificates(&certs, Origin::External)
        }
    }
}

/// Best-effort certificates for any graph. A planar spanning subgraph
/// (grown from a spanning forest in random order) is certified honestly,
/// then each left-over edge receives a cotree-shaped certificate between
/// random copies of its endpoints. For a connected planar graph this is the
/// honest assignment.
pub fn template_certificates(g: &Graph, seed: u64) -> Certificates {
    if let Ok(c) = prove_planar(g, None) {
        return c;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut kept: Vec<(NodeId, NodeId)> = spanning_forest(g);
    let mut rest: Vec<(NodeId, NodeId)> = g.edge_ids().into_iter().filter(|e| !kept.contains(e)).collect();
    rest.shuffle(&mut rng);
    let mut left = Vec::new();
    for e in rest {
        kept.push(e);
        let h = Graph::with_nodes(g.ids().iter().copied(), kept.iter().copied()).expect("subgraph");
        if !is_planar(&h) {
            kept.pop();
            left.push(e);
        }
    }
    let mut certs = Certificates::new();
    let mut copies: BTreeMap<NodeId, Vec<u32>> = BTreeMap::new();
    let mut pops: BTreeMap<NodeId, Vec<PopCertificate>> = BTreeMap::new();
    for comp in g.components() {
        let sub = Graph::with_nodes(
            comp.iter().map(|&i| g.id(i)),
            kept.iter().copied().filter(|&(u, _)| comp.contains(&g.index_of(u).expect("node"))),
        )
        .expect("component");
        let p = prove_planar_detailed(&sub, None, None).expect("planar connected subgraph");
        for (&v, c) in &p.certificates {
            certs.insert(v, c.clone());
        }
        for (&v, cs) in p.mapping.all_copies() {
            copies.insert(v, cs.clone());
            pops.insert(v, cs.iter().map(|&i| p.pop[i as usize - 1]).collect());
        }
    }
    let order = degeneracy_order(g);
    for (u, v) in left {
        let (cu, cv) = (rng.gen_range(0..copies[&u].len()), rng.gen_range(0..copies[&v].len()));
        let (i, j) = (copies[&u][cu], copies[&v][cv]);
        let (pi, pj) = (pops[&u][cu], pops[&v][cv]);
        let e = EdgeCertificate {
            id_x: u,
            id_y: v,
            i,
            j,
            i2: i,
            j2: j,
            pop_i: pi,
            pop_j: pj,
            pop_i2: pi,
            pop_j2: pj,
        };
        let first = order.earlier(u, v);
        let second = if first == u { v } else { u };
        for holder in [first, second] {
            let c = certs.get_mut(&holder).expect("node");
            if c.edges.len() < MAX_EDGE_CERTS {
                c.edges.push(e);
                break;
            }
        }
    }
    certs
}

fn spanning_forest(g: &Graph) -> Vec<(NodeId, NodeId)> {
    let mut seen = vec![false; g.node_count()];
    let mut out = Vec::new();
    for s in 0..g.node_count() {
        if seen[s] {
            continue;
        }
        seen[s] = true;
        let mut stack = vec![s];
        while let Some(u) = stack.pop() {
            for &w in g.neighbors(u) {
                if !seen[w] {
                    seen[w] = true;
                    let (a, b) = (g.id(u), g.id(w));
                    out.push((a.min(b), a.max(b)));
                    stack.push(w);
                }
            }
        }
    }
    out
}

/// Honest certificates of a random planar graph relabelled onto the
/// identifiers of `g`.
fn replay_certificates(g: &Graph, rng: &mut ChaCha8Rng) -> Certificates {
    let n = g.node_count();
    let kind = match (n, rng.gen_range(0..3)) {
        (0..=2, _) => GraphKind::Path { n: n.max(2) },
        (_, 0) => GraphKind::RandomMaximalPlanar { n, seed: rng.gen() },
        (_, 1) => GraphKind::Tree { n, seed: rng.gen() },
        _ => GraphKind::Cycle { n },
    };
    let source = generate(&kind).expect("valid parameters");
    let mut ids = g.ids().to_vec();
    ids.shuffle(rng);
    let map = |v: NodeId| ids.get(v.0 as usize - 1).copied().unwrap_or(v);
    let source = source.relabel(map).expect("bijective relabel");
    prove_planar(&source, None)
        .expect("planar source")
        .into_iter()
        .filter(|(v, _)| g.contains(*v))
        .collect()
}

fn random_bound(rng: &mut ChaCha8Rng, top: u32) -> Bound {
    match rng.gen_range(0..8) {
        0 => Bound::NegInf,
        1 => Bound::PosInf,
        _ => Bound::At(rng.gen_range(0..=top)),
    }
}

fn random_pop(rng: &mut ChaCha8Rng, nv: u32) -> PopCertificate {
    PopCertificate {
        n: if rng.gen_bool(0.8) { nv } else { rng.gen_range(1..=nv + 2) },
        rank: rng.gen_range(1..=nv.max(1)),
        lo: random_bound(rng, nv + 1),
        hi: random_bound(rng, nv + 1),
    }
}

fn random_certificate(g: &Graph, v: NodeId, rng: &mut ChaCha8Rng) -> NodeCertificate {
    let n = g.node_count() as u32;
    let nv = 2 * n - 1;
    let nb = g.neighbor_ids(v);
    let ids = g.ids();
    let edges = (0..rng.gen_range(0..=MAX_EDGE_CERTS.min(nb.len())))
        .map(|_| {
            let y = *nb.choose(rng).expect("edge count bounded by degree");
            let mut idx = || rng.gen_range(1..=nv);
            let (i, j, i2, j2) = (idx(), idx(), idx(), idx());
            EdgeCertificate {
                id_x: v,
                id_y: y,
                i,
                j,
                i2,
                j2,
                pop_i: random_pop(rng, nv),
                pop_j: random_pop(rng, nv),
                pop_i2: random_pop(rng, nv),
                pop_j2: random_pop(rng, nv),
            }
        })
        .collect();
    NodeCertificate {
        n: if rng.gen_bool(0.8) { n } else { rng.gen_range(1..=2 * n) },
        tree: TreeSub {
            root: *ids.choose(rng).expect("non-empty graph"),
            parent: if rng.gen_bool(0.2) { None } else { nb.choose(rng).copied() },
            dist: rng.gen_range(0..n),
        },
        edges,
    }
}

/// Rewrites one field of one certificate with a nearby or random value.
fn edit_field(g: &Graph, certs: &mut Certificates, rng: &mut ChaCha8Rng) {
    let n = g.node_count() as u32;
    let nv = 2 * n - 1;
    let v = *g.ids().choose(rng).expect("non-empty graph");
    let nudge = |x: u32, rng: &mut ChaCha8Rng| -> u32 {
        if rng.gen_bool(0.5) {
            (x as i64 + [-2i64, -1, 1, 2][rng.gen_range(0..4)]).clamp(0, nv as i64 + 1) as u32
        } else {
            rng.gen_range(0..=nv + 1)
        }
    };
    let c = certs.get_mut(&v).expect("node");
    if c.edges.is_empty() || rng.gen_bool(0.2) {
        match rng.gen_range(0..4) {
            0 => c.n = nudge(c.n, rng),
            1 => c.tree.root = *g.ids().choose(rng).expect("non-empty"),
            2 => c.tree.parent = g.neighbor_ids(v).choose(rng).copied().filter(|_| rng.gen_bool(0.9)),
            _ => c.tree.dist = nudge(c.tree.dist, rng),
        }
        return;
    }
    let k = rng.gen_range(0..c.edges.len());
    let e = &mut c.edges[k];
    let pop = |p: &mut PopCertificate, rng: &mut ChaCha8Rng| match rng.gen_range(0..4) {
        0 => p.n = nudge(p.n, rng),
        1 => p.rank = nudge(p.rank, rng),
        2 => p.lo = random_bound(rng, nv + 1),
        _ => p.hi = random_bound(rng, nv + 1),
    };
    match rng.gen_range(0..10) {
        0 => e.i = nudge(e.i, rng),
        1 => e.j = nudge(e.j, rng),
        2 => e.i2 = nudge(e.i2, rng),
        3 => e.j2 = nudge(e.j2, rng),
        4 => pop(&mut e.pop_i, rng),
        5 => pop(&mut e.pop_j, rng),
        6 => pop(&mut e.pop_i2, rng),
        7 => pop(&mut e.pop_j2, rng),
        8 => std::mem::swap(&mut e.id_x, &mut e.id_y),
        _ => {
            // Hand the edge certificate to its other endpoint.
            let e = c.edges.remove(k);
            let other = if e.id_x == v { e.id_y } else { e.id_x };
            certs.get_mut(&other).expect("endpoint").edges.push(e);
        }
    }
}
