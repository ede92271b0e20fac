//! Named instance collections for corpus-wide checks.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::embedding::is_planar;
use crate::graph::{generate, Graph, GraphKind};
use crate::lowerbound::{gen_block_instance, BlockInstance};

#[derive(Debug, Clone)]
pub struct Instance {
    pub name: String,
    pub graph: Graph,
}

fn push(out: &mut Vec<Instance>, name: String, kind: GraphKind) {
    let graph = generate(&kind).expect("corpus parameters are valid");
    out.push(Instance { name, graph });
}

/// Connected planar instances: grids up to 20x20, wheels up to 64 nodes,
/// trees and random maximal planar graphs up to 256 nodes, paths and
/// cycles, and paths of blocks for `k` in {4, 5}.
pub fn planar_corpus() -> Vec<Instance> {
    let mut out = Vec::new();
    for w in [2, 3, 4, 5, 6, 8, 10, 12, 15, 20] {
        for h in [2, 5, w] {
            if h <= w && !(h == w && (w == 2 || w == 5)) {
                push(&mut out, format!("grid-{w}x{h}"), GraphKind::Grid { w, h });
            }
        }
    }
    for n in (4..=64).step_by(2) {
        push(&mut out, format!("wheel-{n}"), GraphKind::Wheel { n });
    }
    for n in [10, 20, 40, 80, 128, 256] {
        for seed in 0..10 {
            push(&mut out, format!("tree-{n}-s{seed}"), GraphKind::Tree { n, seed });
        }
    }
    for n in [4, 8, 16, 32, 64, 128, 256] {
        for seed in 0..10 {
            push(&mut out, format!("rmp-{n}-s{seed}"), GraphKind::RandomMaximalPlanar { n, seed });
        }
    }
    for n in [2, 3, 7, 50] {
        push(&mut out, format!("path-{n}"), GraphKind::Path { n });
    }
    for n in [3, 4, 9, 40] {
        push(&mut out, format!("cycle-{n}"), GraphKind::Cycle { n });
    }
    for k in [4, 5] {
        for p in 1..=6 {
            for rotate in [false, true] {
                let mut permutation: Vec<usize> = (1..=p).collect();
                if rotate {
                    permutation.rotate_left(1);
                }
                let spec = BlockInstance {
                    permutation,
                    ..BlockInstance::path(k, p)
                };
                let graph = gen_block_instance(&spec).expect("valid block parameters");
                out.push(Instance {
                    name: format!("blocks-k{k}-p{p}{}", if rotate { "-rot" } else { "" }),
                    graph,
                });
            }
        }
    }
    out
}

/// Non-planar instances: `K5`, `K6`, `K3,3`, Petersen, and `random` connected
/// non-planar `G(n, p)` graphs with `n <= 30`.
pub fn nonplanar_corpus(random: usize, seed: u64) -> Vec<Instance> {
    let mut out = Vec::new();
    push(&mut out, "K5".into(), GraphKind::Complete { k: 5 });
    push(&mut out, "K6".into(), GraphKind::Complete { k: 6 });
    push(&mut out, "K33".into(), GraphKind::CompleteBipartite { p: 3, q: 3 });
    push(&mut out, "petersen".into(), GraphKind::Petersen);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    while out.len() < 4 + random {
        let n = rng.gen_range(6..=30);
        let p = rng.gen_range(0.25..0.6);
        let s: u64 = rng.gen();
        let g = generate(&GraphKind::Gnp { n, p, seed: s }).expect("valid parameters");
        if g.node_count() == n && g.is_connected() && !is_planar(&g) {
            out.push(Instance {
                name: format!("gnp-{n}-{p:.2}-s{s}"),
                graph: g,
            });
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn planar_corpus_is_large_connected_and_planar() {
        let c = planar_corpus();
        assert!(c.len() >= 200, "{}", c.len());
        for i in &c {
            assert!(i.graph.is_connected(), "{}", i.name);
            assert!(is_planar(&i.graph), "{}", i.name);
        }
        assert!(c.iter().any(|i| i.name == "grid-20x20"));
        assert!(c.iter().any(|i| i.name == "wheel-64"));
    }

    #[test]
    fn nonplanar_corpus_sizes() {
        let c = nonplanar_corpus(20, 1);
        assert_eq!(c.len(), 24);
        assert!(c.iter().all(|i| i.graph.node_count() <= 30 && !is_planar(&i.graph)));
    }
}
