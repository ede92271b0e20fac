use std::collections::{BTreeSet, HashMap};

use super::{Graph, NodeId};

/// A total order on the nodes produced by repeated minimum-degree removal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegeneracyOrder {
    order: Vec<NodeId>,
    position: HashMap<NodeId, usize>,
    forward: Vec<usize>,
}

impl DegeneracyOrder {
    /// Nodes in removal order.
    pub fn order(&self) -> &[NodeId] {
        &self.order
    }

    /// Position of `v` in the order.
    pub fn position(&self, v: NodeId) -> Option<usize> {
        self.position.get(&v).copied()
    }

    /// Number of neighbors of `v` that come later in the order.
    pub fn forward_degree(&self, v: NodeId) -> Option<usize> {
        self.position(v).map(|p| self.forward[p])
    }

    pub fn max_forward_degree(&self) -> usize {
        self.forward.iter().copied().max().unwrap_or(0)
    }

    /// The endpoint of `{u, v}` that comes first in the order.
    pub fn earlier(&self, u: NodeId, v: NodeId) -> NodeId {
        if self.position[&u] < self.position[&v] {
            u
        } else {
            v
        }
    }
}

/// Removes a minimum-degree node at each step, breaking ties by smallest id.
/// A node's forward degree is its degree at the moment of removal.
pub fn degeneracy_order(g: &Graph) -> DegeneracyOrder {
    let n = g.node_count();
    let mut degree: Vec<usize> = (0..n).map(|v| g.degree(v)).collect();
    let mut queue: BTreeSet<(usize, usize)> = (0..n).map(|v| (degree[v], v)).collect();
    let mut removed = vec![false; n];
    let mut order = Vec::with_capacity(n);
    let mut forward = Vec::with_capacity(n);
    while let Some((d, v)) = queue.pop_first() {
        removed[v] = true;
        order.push(g.id(v));
        forward.push(d);
        for &w in g.neighbors(v) {
            if !removed[w] {
                queue.remove(&(degree[w], w));
                degree[w] -= 1;
                queue.insert((degree[w], w));
            }
        }
    }
    let position = order.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    DegeneracyOrder { order, position, forward }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{generate, GraphKind};

    /// Recounts forward degrees straight from the order.
    fn recount(g: &Graph, ord: &DegeneracyOrder) -> Vec<usize> {
        ord.order()
            .iter()
            .map(|&v| {
                g.neighbor_ids(v)
                    .into_iter()
                    .filter(|&w| ord.position(w) > ord.position(v))
                    .count()
            })
            .collect()
    }

    #[test]
    fn triangle_is_2_degenerate() {
        let g = generate(&GraphKind::Complete { k: 3 }).unwrap();
        let ord = degeneracy_order(&g);
        assert!(ord.max_forward_degree() <= 2);
        assert_eq!(ord.order(), &[NodeId(1), NodeId(2), NodeId(3)]);
    }

    #[test]
    fn k4_is_3_degenerate() {
        let g = generate(&GraphKind::Complete { k: 4 }).unwrap();
        assert_eq!(degeneracy_order(&g).max_forward_degree(), 3);
    }

    #[test]
    fn maximal_planar_forward_degree_at_most_five() {
        let g = generate(&GraphKind::RandomMaximalPlanar { n: 50, seed: 7 }).unwrap();
        let ord = degeneracy_order(&g);
        let counted = recount(&g, &ord);
        assert_eq!(counted, ord.forward);
        assert!(counted.iter().all(|&d| d <= 5));
    }

    #[test]
    fn recorded_forward_degree_matches_order() {
        for seed in 0..10 {
            let g = generate(&GraphKind::Gnp { n: 25, p: 0.3, seed }).unwrap();
            let ord = degeneracy_order(&g);
            assert_eq!(recount(&g, &ord), ord.forward);
        }
    }
}
