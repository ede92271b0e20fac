//! Instances behind the lower bounds for minor-closed families: paths and
//! cycles of cliques, and the two-path instances whose gluing yields
//! `K_{q,q}`.
//!
//! Identifiers are shifted by one relative to the textbook numbering, since
//! `0` is not a valid [`NodeId`]: block `r` holds ids `r(k-1)+1 ..= (r+1)(k-1)`.

use std::collections::BTreeSet;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::graph::{minor_contains, Graph, GraphError, MinorPattern, NodeId};

fn bad(msg: impl Into<String>) -> GraphError {
    GraphError::InvalidParameter(msg.into())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BlockShape {
    Path,
    /// Blocks at positions `from..=to` of the permutation, closed into a ring.
    Cycle { from: usize, to: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockInstance {
    pub k: usize,
    pub p: usize,
    /// `permutation[b - 1]` is the position of ordinary block `b`.
    pub permutation: Vec<usize>,
    pub shape: BlockShape,
    /// Add the symmetrizing edges used in the minor-freeness argument.
    pub extended: bool,
}

impl BlockInstance {
    pub fn path(k: usize, p: usize) -> BlockInstance {
        BlockInstance {
            k,
            p,
            permutation: (1..=p).collect(),
            shape: BlockShape::Path,
            extended: false,
        }
    }

    pub fn block_ids(&self, r: usize) -> Vec<NodeId> {
        let s = self.k - 1;
        (r * s + 1..=(r + 1) * s).map(|v| NodeId(v as u32)).collect()
    }

    /// Block order along the chain or ring.
    fn sequence(&self) -> Result<Vec<usize>, GraphError> {
        if self.k < 3 || self.p < 1 {
            return Err(bad("blocks need k >= 3 and p >= 1"));
        }
        if self.permutation.len() != self.p {
            return Err(bad("permutation length differs from p"));
        }
        let mut inverse = vec![0; self.p + 1];
        for (b, &pos) in self.permutation.iter().enumerate() {
            if pos == 0 || pos > self.p || inverse[pos] != 0 {
                return Err(bad("not a permutation of 1..=p"));
            }
            inverse[pos] = b + 1;
        }
        Ok(match self.shape {
            BlockShape::Path => {
                let mut seq = vec![0];
                seq.extend(&inverse[1..]);
                seq.push(self.p + 1);
                seq
            }
            BlockShape::Cycle { from, to } => {
                if from < 1 || from >= to || to > self.p {
                    return Err(bad("cycle range needs 1 <= from < to <= p"));
                }
                inverse[from..=to].to_vec()
            }
        })
    }
}

/// Edges of a block connection from `src` to `dst`: the right part of `src`
/// joined to the left part of `dst`. With `extended`, position `i` of `src`
/// is joined to every position `j < i` of `dst` instead.
fn connect(src: &[NodeId], dst: &[NodeId], extended: bool, out: &mut Vec<(NodeId, NodeId)>) {
    let s = src.len();
    for (i, &u) in src.iter().enumerate() {
        for (j, &v) in dst.iter().enumerate() {
            let join = if extended { j < i } else { i >= s / 2 && j < s / 2 };
            if join {
                out.push((u, v));
            }
        }
    }
}

pub fn gen_block_instance(spec: &BlockInstance) -> Result<Graph, GraphError> {
    let seq = spec.sequence()?;
    let blocks: Vec<Vec<NodeId>> = seq.iter().map(|&r| spec.block_ids(r)).collect();
    let mut edges = Vec::new();
    for b in &blocks {
        for (x, &u) in b.iter().enumerate() {
            for &v in &b[x + 1..] {
                edges.push((u, v));
            }
        }
    }
    for w in blocks.windows(2) {
        connect(&w[0], &w[1], spec.extended, &mut edges);
    }
    if let BlockShape::Cycle { .. } = spec.shape {
        connect(&blocks[blocks.len() - 1], &blocks[0], spec.extended, &mut edges);
    }
    Graph::with_nodes(blocks.concat(), edges)
}

/// Parameters of the two-path instance `I_{a,b}`. `a` and `b` select the
/// identifier sets `a_a` and `b_b`, both in `1..=n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BipartiteInstance {
    pub n: usize,
    pub p: usize,
    pub q: usize,
    pub a: usize,
    pub b: usize,
}

impl BipartiteInstance {
    pub fn n_a(&self) -> usize {
        self.n / 2
    }

    pub fn n_b(&self) -> usize {
        self.n.div_ceil(2)
    }

    pub fn d(&self) -> usize {
        self.n / (2 * self.q)
    }
}

/// The identifier partition of `{1, ..., n^2}`: contiguous slices, the
/// `a` sets first.
pub fn id_set_a(n: usize, i: usize) -> Vec<NodeId> {
    let na = n / 2;
    ((i - 1) * na + 1..=i * na).map(|v| NodeId(v as u32)).collect()
}

pub fn id_set_b(n: usize, i: usize) -> Vec<NodeId> {
    let (na, nb) = (n / 2, n.div_ceil(2));
    let base = n * na;
    (base + (i - 1) * nb + 1..=base + i * nb).map(|v| NodeId(v as u32)).collect()
}

fn check_two_path(n: usize, q: usize) -> Result<(), GraphError> {
    if q < 2 || n < 6 * q {
        return Err(bad("need q >= 2 and n >= 6q"));
    }
    Ok(())
}

fn path_edges(ids: &[NodeId], out: &mut Vec<(NodeId, NodeId)>) {
    out.extend(ids.windows(2).map(|w| (w[0], w[1])));
}

pub fn gen_bipartite_instance(spec: &BipartiteInstance) -> Result<Graph, GraphError> {
    check_two_path(spec.n, spec.q)?;
    if spec.p < 2 || spec.p > spec.q {
        return Err(bad("need 2 <= p <= q"));
    }
    if !(1..=spec.n).contains(&spec.a) || !(1..=spec.n).contains(&spec.b) {
        return Err(bad("identifier set index outside 1..=n"));
    }
    let a = id_set_a(spec.n, spec.a);
    let b = id_set_b(spec.n, spec.b);
    let mut edges = Vec::new();
    path_edges(&a, &mut edges);
    path_edges(&b, &mut edges);
    let d = spec.d();
    for j in 1..=spec.q {
        edges.push((a[j * d - 1], b[j * d - 1]));
    }
    Graph::with_nodes(a.iter().chain(&b).copied(), edges)
}

/// Which identifier sets the `q` copies of each path use.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdChoice {
    pub a: Vec<usize>,
    pub b: Vec<usize>,
}

impl IdChoice {
    pub fn first(q: usize) -> IdChoice {
        IdChoice {
            a: (1..=q).collect(),
            b: (1..=q).collect(),
        }
    }

    /// `q` distinct sets of each kind drawn from `1..=n`.
    pub fn sampled(n: usize, q: usize, seed: u64) -> IdChoice {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let pool: Vec<usize> = (1..=n).collect();
        let mut a: Vec<usize> = pool.choose_multiple(&mut rng, q).copied().collect();
        let mut b: Vec<usize> = pool.choose_multiple(&mut rng, q).copied().collect();
        a.sort_unstable();
        b.sort_unstable();
        IdChoice { a, b }
    }
}

/// The glued instance `J`: paths `P_i` on `a_i` and `Q_i` on `b_i`, with
/// `a_i[jd]` joined to `b_{i+j}[jd]`, indices wrapping past `q`.
pub fn gen_glued_instance(n: usize, q: usize, ids: &IdChoice) -> Result<Graph, GraphError> {
    check_two_path(n, q)?;
    let distinct = |v: &[usize]| v.iter().collect::<BTreeSet<_>>().len() == v.len();
    if ids.a.len() != q || ids.b.len() != q || !distinct(&ids.a) || !distinct(&ids.b) {
        return Err(bad("need q distinct identifier sets per side"));
    }
    if ids.a.iter().chain(&ids.b).any(|&i| i == 0 || i > n) {
        return Err(bad("identifier set index outside 1..=n"));
    }
    let d = n / (2 * q);
    let p: Vec<Vec<NodeId>> = ids.a.iter().map(|&i| id_set_a(n, i)).collect();
    let qs: Vec<Vec<NodeId>> = ids.b.iter().map(|&i| id_set_b(n, i)).collect();
    let mut edges = Vec::new();
    for path in p.iter().chain(&qs) {
        path_edges(path, &mut edges);
    }
    for i in 1..=q {
        for j in 1..=q {
            let t = (i + j - 1) % q + 1;
            edges.push((p[i - 1][j * d - 1], qs[t - 1][j * d - 1]));
        }
    }
    Graph::with_nodes(p.concat().into_iter().chain(qs.concat()), edges)
}

/// Contracts every path of `J` to its smallest identifier.
pub fn contract_paths(j: &Graph, n: usize, ids: &IdChoice) -> Result<Graph, GraphError> {
    let mut contracted = Vec::new();
    for path in ids.a.iter().map(|&i| id_set_a(n, i)).chain(ids.b.iter().map(|&i| id_set_b(n, i))) {
        path_edges(&path, &mut contracted);
    }
    j.contract_edges(&contracted)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClaimCheck {
    pub claim: &'static str,
    pub instance: String,
    pub outcome: Result<bool, GraphError>,
}

impl ClaimCheck {
    pub fn holds(&self) -> bool {
        self.outcome == Ok(true)
    }
}

#[derive(Debug, Clone, Default)]
pub struct LowerBoundReport {
    pub checks: Vec<ClaimCheck>,
}

impl LowerBoundReport {
    pub fn all_hold(&self) -> bool {
        !self.checks.is_empty() && self.checks.iter().all(ClaimCheck::holds)
    }

    pub fn failures(&self) -> impl Iterator<Item = &ClaimCheck> {
        self.checks.iter().filter(|c| !c.holds())
    }
}

fn permutations_for(p: usize) -> Vec<Vec<usize>> {
    let id: Vec<usize> = (1..=p).collect();
    let mut out = vec![id.clone()];
    if p >= 2 {
        let mut rotated = id;
        rotated.rotate_left(1);
        out.push(rotated);
    }
    out
}

/// Runs the minor oracle on every construction: paths of blocks avoid
/// `K_k`, cycles of blocks contain it, `I_{a,b}` avoids `K_{2,3}`, and `J`
/// contains `K_{q,q}`. `two_path` lists `(q, n)` pairs.
pub fn validate_lowerbound_claims(ks: &[usize], ps: &[usize], two_path: &[(usize, usize)]) -> LowerBoundReport {
    let mut report = LowerBoundReport::default();
    let mut push = |claim, instance: String, outcome| report.checks.push(ClaimCheck { claim, instance, outcome });
    for &k in ks {
        for &p in ps {
            for perm in permutations_for(p) {
                let mut spec = BlockInstance {
                    k,
                    p,
                    permutation: perm.clone(),
                    shape: BlockShape::Path,
                    extended: false,
                };
                let outcome = gen_block_instance(&spec).and_then(|g| minor_contains(&g, MinorPattern::Complete(k)).map(|c| !c));
                push("path of blocks is K_k-minor-free", format!("k={k} p={p} perm={perm:?}"), outcome);
                for from in 1..=p {
                    for to in from + 1..=p {
                        spec.shape = BlockShape::Cycle { from, to };
                        let outcome = gen_block_instance(&spec).and_then(|g| minor_contains(&g, MinorPattern::Complete(k)));
                        push("cycle of blocks contains K_k", format!("k={k} p={p} perm={perm:?} ring={from}..{to}"), outcome);
                    }
                }
            }
        }
    }
    for &(q, n) in two_path {
        let spec = BipartiteInstance { n, p: 2, q, a: 1, b: 1 };
        let outcome = gen_bipartite_instance(&spec).and_then(|g| minor_contains(&g, MinorPattern::CompleteBipartite(2, 3)).map(|c| !c));
        push("I_{a,b} is K_{2,3}-minor-free", format!("n={n} q={q}"), outcome);
        let outcome = gen_glued_instance(n, q, &IdChoice::first(q)).and_then(|g| minor_contains(&g, MinorPattern::CompleteBipartite(q, q)));
        push("J contains K_{q,q}", format!("n={n} q={q}"), outcome);
    }
    report
}
