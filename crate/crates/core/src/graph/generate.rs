use std::collections::HashMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{Graph, GraphError, NodeId};

/// Instance families. All node identifiers are `1..=n` unless noted.
#[derive(Debug, Clone, PartialEq)]
pub enum GraphKind {
    Path { n: usize },
    Cycle { n: usize },
    /// `w` columns by `h` rows; node `(r, c)` gets id `r * w + c + 1`.
    Grid { w: usize, h: usize },
    /// Hub `1` joined to the rim cycle `2..=n`.
    Wheel { n: usize },
    /// Random recursive tree: node `i` attaches to a uniform earlier node.
    Tree { n: usize, seed: u64 },
    /// Stacked triangulation followed by random edge flips.
    RandomMaximalPlanar { n: usize, seed: u64 },
    Complete { k: usize },
    /// Sides `1..=p` and `p+1..=p+q`.
    CompleteBipartite { p: usize, q: usize },
    Petersen,
    /// Every edge of `base` replaced by a path with `steps` new inner nodes,
    /// numbered after the base graph's largest id.
    Subdivided { base: Box<GraphKind>, steps: usize },
    /// Erdős–Rényi `G(n, p)`; may be disconnected.
    Gnp { n: usize, p: f64, seed: u64 },
}

fn bad(msg: impl Into<String>) -> GraphError {
    GraphError::InvalidParameter(msg.into())
}

fn id(v: usize) -> NodeId {
    NodeId(v as u32 + 1)
}

pub fn generate(kind: &GraphKind) -> Result<Graph, GraphError> {
    match *kind {
        GraphKind::Path { n } => {
            if n < 2 {
                return Err(bad("path needs n >= 2"));
            }
            Graph::from_edges((1..n).map(|i| (id(i - 1), id(i))))
        }
        GraphKind::Cycle { n } => {
            if n < 3 {
                return Err(bad("cycle needs n >= 3"));
            }
            Graph::from_edges((0..n).map(|i| (id(i), id((i + 1) % n))))
        }
        GraphKind::Grid { w, h } => {
            if w == 0 || h == 0 || w * h < 2 {
                return Err(bad("grid needs w, h >= 1 and at least two nodes"));
            }
            let mut edges = Vec::new();
            for r in 0..h {
                for c in 0..w {
                    let v = r * w + c;
                    if c + 1 < w {
                        edges.push((id(v), id(v + 1)));
                    }
                    if r + 1 < h {
                        edges.push((id(v), id(v + w)));
                    }
                }
            }
            Graph::from_edges(edges)
        }
        GraphKind::Wheel { n } => {
            if n < 4 {
                return Err(bad("wheel needs n >= 4"));
            }
            let rim = n - 1;
            let mut edges = Vec::new();
            for i in 0..rim {
                edges.push((id(0), id(i + 1)));
                edges.push((id(i + 1), id((i + 1) % rim + 1)));
            }
            Graph::from_edges(edges)
        }
        GraphKind::Tree { n, seed } => {
            if n < 2 {
                return Err(bad("tree needs n >= 2"));
            }
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            Graph::from_edges((1..n).map(|i| (id(rng.gen_range(0..i)), id(i))))
        }
        GraphKind::RandomMaximalPlanar { n, seed } => random_maximal_planar(n, seed),
        GraphKind::Complete { k } => {
            if k < 2 {
                return Err(bad("complete graph needs k >= 2"));
            }
            let mut edges = Vec::new();
            for a in 0..k {
                for b in a + 1..k {
                    edges.push((id(a), id(b)));
                }
            }
            Graph::from_edges(edges)
        }
        GraphKind::CompleteBipartite { p, q } => {
            if p == 0 || q == 0 {
                return Err(bad("complete bipartite needs p, q >= 1"));
            }
            let mut edges = Vec::new();
            for a in 0..p {
                for b in 0..q {
                    edges.push((id(a), id(p + b)));
                }
            }
            Graph::from_edges(edges)
        }
        GraphKind::Petersen => {
            let mut edges = Vec::new();
            for i in 0..5 {
                edges.push((id(i), id((i + 1) % 5)));
                edges.push((id(i), id(i + 5)));
                edges.push((id(5 + i), id(5 + (i + 2) % 5)));
            }
            Graph::from_edges(edges)
        }
        GraphKind::Subdivided { ref base, steps } => {
            let base = generate(base)?;
            let mut next = base.max_id().0;
            let mut edges = Vec::new();
            for (u, v) in base.edge_ids() {
                let mut prev = u;
                for _ in 0..steps {
                    next += 1;
                    edges.push((prev, NodeId(next)));
                    prev = NodeId(next);
                }
                edges.push((prev, v));
            }
            Graph::with_nodes(
                base.ids().iter().copied().chain((base.max_id().0 + 1..=next).map(NodeId)),
                edges,
            )
        }
        GraphKind::Gnp { n, p, seed } => {
            if n < 1 || !(0.0..=1.0).contains(&p) {
                return Err(bad("gnp needs n >= 1 and 0 <= p <= 1"));
            }
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut edges = Vec::new();
            for a in 0..n {
                for b in a + 1..n {
                    if rng.gen_bool(p) {
                        edges.push((id(a), id(b)));
                    }
                }
            }
            Graph::with_nodes((0..n).map(id), edges)
        }
    }
}

/// Inserts vertices into uniformly chosen faces, then applies `n` rounds of
/// random diagonal flips that keep every degree at least 3.
fn random_maximal_planar(n: usize, seed: u64) -> Result<Graph, GraphError> {
    if n < 3 {
        return Err(bad("random maximal planar needs n >= 3"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    // Faces are counterclockwise triples; each directed edge lies on the face to its left.
    let mut faces: Vec<[usize; 3]> = vec![[0, 1, 2], [0, 2, 1]];
    for x in 3..n {
        let f = rng.gen_range(0..faces.len());
        let [a, b, c] = faces[f];
        faces[f] = [a, b, x];
        faces.push([b, c, x]);
        faces.push([c, a, x]);
    }

    let mut dart_face: HashMap<(usize, usize), usize> = HashMap::new();
    for (fi, f) in faces.iter().enumerate() {
        for k in 0..3 {
            dart_face.insert((f[k], f[(k + 1) % 3]), fi);
        }
    }
    let mut edge_list: Vec<(usize, usize)> = dart_face.keys().filter(|&&(u, v)| u < v).copied().collect();
    edge_list.sort_unstable();
    let mut edge_pos: HashMap<(usize, usize), usize> =
        edge_list.iter().enumerate().map(|(i, &e)| (e, i)).collect();
    let mut degree = vec![0usize; n];
    for &(u, v) in &edge_list {
        degree[u] += 1;
        degree[v] += 1;
    }

    if n >= 5 {
        for _ in 0..n {
            let (u, v) = edge_list[rng.gen_range(0..edge_list.len())];
            if degree[u] <= 3 || degree[v] <= 3 {
                continue;
            }
            let f1 = dart_face[&(u, v)];
            let f2 = dart_face[&(v, u)];
            let w = third(faces[f1], u, v);
            let z = third(faces[f2], v, u);
            let diagonal = (w.min(z), w.max(z));
            if w == z || edge_pos.contains_key(&diagonal) {
                continue;
            }
            dart_face.remove(&(u, v));
            dart_face.remove(&(v, u));
            let slot = edge_pos.remove(&(u, v)).expect("edge present");
            edge_list[slot] = diagonal;
            edge_pos.insert(diagonal, slot);
            faces[f1] = [u, z, w];
            faces[f2] = [z, v, w];
            for (fi, f) in [(f1, faces[f1]), (f2, faces[f2])] {
                for k in 0..3 {
                    dart_face.insert((f[k], f[(k + 1) % 3]), fi);
                }
            }
            degree[u] -= 1;
            degree[v] -= 1;
            degree[w] += 1;
            degree[z] += 1;
        }
    }

    edge_list.sort_unstable();
    Graph::from_edges(edge_list.into_iter().map(|(u, v)| (id(u), id(v))))
}

/// The vertex of a triangular face following the directed edge `(u, v)`.
fn third(face: [usize; 3], u: usize, v: usize) -> usize {
    for k in 0..3 {
        if face[k] == u && face[(k + 1) % 3] == v {
            return face[(k + 2) % 3];
        }
    }
    unreachable!("dart ({u}, {v}) not on face {face:?}")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_2x2_is_a_4_cycle() {
        let g = generate(&GraphKind::Grid { w: 2, h: 2 }).unwrap();
        assert_eq!((g.node_count(), g.edge_count()), (4, 4));
    }

    #[test]
    fn k5_has_ten_edges() {
        let g = generate(&GraphKind::Complete { k: 5 }).unwrap();
        assert_eq!((g.node_count(), g.edge_count()), (5, 10));
    }

    #[test]
    fn random_maximal_planar_edge_count() {
        let g = generate(&GraphKind::RandomMaximalPlanar { n: 10, seed: 1 }).unwrap();
        assert_eq!((g.node_count(), g.edge_count()), (10, 24));
        for n in [3, 4, 5, 17, 100] {
            let g = generate(&GraphKind::RandomMaximalPlanar { n, seed: 9 }).unwrap();
            assert_eq!(g.edge_count(), 3 * n - 6);
            assert!(g.is_connected());
        }
    }

    #[test]
    fn generation_is_deterministic() {
        let a = generate(&GraphKind::RandomMaximalPlanar { n: 40, seed: 3 }).unwrap();
        let b = generate(&GraphKind::RandomMaximalPlanar { n: 40, seed: 3 }).unwrap();
        let c = generate(&GraphKind::RandomMaximalPlanar { n: 40, seed: 4 }).unwrap();
        assert_eq!(a, b);
        assert_ne!(a, c);
        let t1 = generate(&GraphKind::Tree { n: 30, seed: 2 }).unwrap();
        let t2 = generate(&GraphKind::Tree { n: 30, seed: 2 }).unwrap();
        assert_eq!(t1, t2);
    }

    #[test]
    fn petersen_is_cubic() {
        let g = generate(&GraphKind::Petersen).unwrap();
        assert_eq!((g.node_count(), g.edge_count()), (10, 15));
        assert!((0..10).all(|v| g.degree(v) == 3));
    }

    #[test]
    fn wheel_and_bipartite_counts() {
        let w = generate(&GraphKind::Wheel { n: 6 }).unwrap();
        assert_eq!((w.node_count(), w.edge_count()), (6, 10));
        let k33 = generate(&GraphKind::CompleteBipartite { p: 3, q: 3 }).unwrap();
        assert_eq!((k33.node_count(), k33.edge_count()), (6, 9));
    }

    #[test]
    fn subdivision_adds_inner_nodes() {
        let g = generate(&GraphKind::Subdivided {
            base: Box::new(GraphKind::Complete { k: 4 }),
            steps: 2,
        })
        .unwrap();
        assert_eq!(g.node_count(), 4 + 6 * 2);
        assert_eq!(g.edge_count(), 6 * 3);
    }

    #[test]
    fn invalid_parameters_rejected() {
        assert!(generate(&GraphKind::Wheel { n: 3 }).is_err());
        assert!(generate(&GraphKind::Grid { w: 0, h: 4 }).is_err());
        assert!(generate(&GraphKind::RandomMaximalPlanar { n: 2, seed: 0 }).is_err());
        assert!(generate(&GraphKind::Gnp { n: 5, p: 1.5, seed: 0 }).is_err());
    }
}
