//! Oracles shared by the integration tests. Each one recomputes a quantity
//! from its definition, independently of the library code it checks.
#![allow(dead_code)]

use std::collections::BTreeMap;

use planar_pls::graph::NodeId;
use planar_pls::pop::{pop_verify_node, Bound, PopCertificate};
use planar_pls::transform::RootedTree;
use planar_pls::Graph;

/// Interval endpoints considered by the exhaustive enumeration for `n`
/// ranked nodes: both infinities and every virtual or real rank.
pub fn bounded_domain(n: u32) -> Vec<Bound> {
    let mut d = vec![Bound::NegInf];
    d.extend((0..=n + 1).map(Bound::At));
    d.push(Bound::PosInf);
    d
}

/// Counts interval assignments (up to `limit`) under which every node
/// accepts, with ranks fixed by `order`. With `prefilter`, a node only
/// tries intervals `(a, b)` with `a < rank < b`, a condition it checks on
/// itself and so cannot remove an accepting assignment.
pub fn count_accepting(g: &Graph, order: &[NodeId], prefilter: bool, limit: u64) -> u64 {
    let n = order.len() as u32;
    let rank: BTreeMap<NodeId, u32> = order.iter().enumerate().map(|(i, &v)| (v, i as u32 + 1)).collect();
    // nbr[r] = neighbor ranks of the node ranked r.
    let mut nbr = vec![Vec::new(); n as usize + 1];
    for (u, v) in g.edge_ids() {
        nbr[rank[&u] as usize].push(rank[&v]);
        nbr[rank[&v] as usize].push(rank[&u]);
    }
    // complete_at[r] = nodes whose closed neighborhood is fully ranked <= r
    // for the first time at r.
    let mut complete_at = vec![Vec::new(); n as usize + 1];
    for r in 1..=n {
        let last = nbr[r as usize].iter().copied().chain([r]).max().unwrap();
        complete_at[last as usize].push(r);
    }
    let dom = bounded_domain(n);
    let mut choice: Vec<(Bound, Bound)> = vec![(Bound::NegInf, Bound::PosInf); n as usize + 1];
    let mut count = 0;
    recurse(1, n, &dom, prefilter, &nbr, &complete_at, &mut choice, &mut count, limit);
    count
}

#[allow(clippy::too_many_arguments)]
fn recurse(
    r: u32,
    n: u32,
    dom: &[Bound],
    prefilter: bool,
    nbr: &[Vec<u32>],
    complete_at: &[Vec<u32>],
    choice: &mut Vec<(Bound, Bound)>,
    count: &mut u64,
    limit: u64,
) {
    if *count >= limit {
        return;
    }
    if r > n {
        *count += 1;
        return;
    }
    let at = Bound::At(r);
    for &lo in dom {
        for &hi in dom {
            if prefilter && !(lo < at && at < hi) {
                continue;
            }
            choice[r as usize] = (lo, hi);
            let ok = complete_at[r as usize].iter().all(|&x| {
                let cert = |k: u32| PopCertificate {
                    n,
                    rank: k,
                    lo: choice[k as usize].0,
                    hi: choice[k as usize].1,
                };
                let nb: Vec<PopCertificate> = nbr[x as usize].iter().map(|&k| cert(k)).collect();
                pop_verify_node(&cert(x), &nb).is_ok()
            });
            if ok {
                recurse(r + 1, n, dom, prefilter, nbr, complete_at, choice, count, limit);
            }
            if *count >= limit {
                return;
            }
        }
    }
}

/// All orderings of `g`'s nodes that trace a Hamiltonian path, which are
/// exactly the rank assignments passing the spanning-path check.
pub fn hamiltonian_orders(g: &Graph) -> Vec<Vec<NodeId>> {
    let mut out = Vec::new();
    let ids = g.ids().to_vec();
    let mut cur = Vec::new();
    let mut used = vec![false; ids.len()];
    fn go(g: &Graph, ids: &[NodeId], cur: &mut Vec<NodeId>, used: &mut [bool], out: &mut Vec<Vec<NodeId>>) {
        if cur.len() == ids.len() {
            out.push(cur.clone());
            return;
        }
        for (i, &v) in ids.iter().enumerate() {
            if used[i] || cur.last().is_some_and(|&l| !g.has_edge(l, v)) {
                continue;
            }
            used[i] = true;
            cur.push(v);
            go(g, ids, cur, used, out);
            cur.pop();
            used[i] = false;
        }
    }
    go(g, &ids, &mut cur, &mut used, &mut out);
    out
}

/// Euler tour by plain recursion over the tree's child lists.
pub fn recursive_tour(t: &RootedTree) -> Vec<NodeId> {
    fn go(t: &RootedTree, v: NodeId, out: &mut Vec<NodeId>) {
        out.push(v);
        for &c in t.children(v) {
            go(t, c, out);
            out.push(v);
        }
    }
    let mut out = Vec::new();
    go(t, t.root(), &mut out);
    out
}

/// Descendants of `v` including itself.
pub fn subtree(t: &RootedTree, v: NodeId) -> Vec<NodeId> {
    let mut out = vec![v];
    let mut i = 0;
    while i < out.len() {
        out.extend_from_slice(t.children(out[i]));
        i += 1;
    }
    out
}

/// All graphs on `k` labelled nodes `1..=k`, one per edge subset.
pub fn all_graphs(k: u32) -> impl Iterator<Item = Graph> {
    let pairs: Vec<(u32, u32)> = (1..=k).flat_map(|a| (a + 1..=k).map(move |b| (a, b))).collect();
    (0u32..1 << pairs.len()).map(move |mask| {
        let edges: Vec<(NodeId, NodeId)> = pairs
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .map(|(_, &(a, b))| (NodeId(a), NodeId(b)))
            .collect();
        Graph::with_nodes((1..=k).map(NodeId), edges).unwrap()
    })
}

/// Canonical form under relabelling: the smallest sorted edge list over
/// all permutations of `1..=k`.
pub fn canonical(g: &Graph) -> Vec<(u32, u32)> {
    let k = g.node_count();
    let mut perm: Vec<u32> = (1..=k as u32).collect();
    let mut best: Option<Vec<(u32, u32)>> = None;
    loop {
        let mut e: Vec<(u32, u32)> = g
            .edge_ids()
            .iter()
            .map(|&(u, v)| {
                let (a, b) = (perm[u.0 as usize - 1], perm[v.0 as usize - 1]);
                (a.min(b), a.max(b))
            })
            .collect();
        e.sort_unstable();
        if best.as_ref().is_none_or(|b| e < *b) {
            best = Some(e);
        }
        if !next_permutation(&mut perm) {
            break;
        }
    }
    best.unwrap()
}

fn next_permutation(p: &mut [u32]) -> bool {
    let Some(i) = (1..p.len()).rev().find(|&i| p[i - 1] < p[i]) else {
        return false;
    };
    let j = (i..p.len()).rev().find(|&j| p[j] > p[i - 1]).unwrap();
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

/// The four-node crossing instance: the path 1-2-3-4 with chords {1,3}
/// and {2,4}.
pub fn crossing_instance() -> Graph {
    Graph::from_pairs(&[(1, 2), (2, 3), (3, 4), (1, 3), (2, 4)]).unwrap()
}
