//! `gen` subcommands: lower-bound constructions and the standard families.

use clap::Subcommand;

use planar_pls::graph::{generate, GraphError, GraphKind};
use planar_pls::io::write_graph;
use planar_pls::lowerbound::{gen_bipartite_instance, gen_block_instance, gen_glued_instance, BipartiteInstance, BlockInstance, BlockShape, IdChoice};
use planar_pls::Graph;

#[derive(Subcommand)]
pub enum Construction {
    /// Path or cycle of `k-1`-cliques.
    Blocks {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        p: usize,
        #[arg(long, default_value = "path", value_parser = ["path", "cycle"])]
        shape: String,
        /// First ring position (cycle shape).
        #[arg(long, default_value_t = 1)]
        from: usize,
        /// Last ring position (cycle shape); defaults to `p`.
        #[arg(long)]
        to: Option<usize>,
        /// Position of each ordinary block, comma-separated; identity if omitted.
        #[arg(long, value_delimiter = ',')]
        perm: Vec<usize>,
        /// Add the symmetrizing edges between consecutive blocks.
        #[arg(long)]
        extended: bool,
    },
    /// Two paths on identifier sets `a_a` and `b_b` joined by `q` rungs.
    Bipartite {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 2)]
        p: usize,
        #[arg(long)]
        q: usize,
        #[arg(long, default_value_t = 1)]
        a: usize,
        #[arg(long, default_value_t = 1)]
        b: usize,
    },
    /// `q` copies of each path glued into a graph with a `K_{q,q}` minor.
    Glued {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        q: usize,
        /// Sample the identifier sets; the first `q` sets if omitted.
        #[arg(long)]
        seed: Option<u64>,
    },
    Path {
        #[arg(long)]
        n: usize,
    },
    Cycle {
        #[arg(long)]
        n: usize,
    },
    Grid {
        #[arg(long)]
        w: usize,
        #[arg(long)]
        h: usize,
    },
    Wheel {
        #[arg(long)]
        n: usize,
    },
    /// Random recursive tree.
    Tree {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Random maximal planar graph.
    Rmp {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    Complete {
        #[arg(long)]
        k: usize,
    },
    Kpq {
        #[arg(long)]
        p: usize,
        #[arg(long)]
        q: usize,
    },
    Petersen,
    Gnp {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        p: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

impl Construction {
    /// The instance and a one-line description of how it was built.
    pub fn build(&self) -> Result<(Graph, String), GraphError> {
        let family = |kind: GraphKind| generate(&kind).map(|g| (g, format!("{kind:?}")));
        match self {
            Construction::Blocks {
                k,
                p,
                shape,
                from,
                to,
                perm,
                extended,
            } => {
                let shape = match shape.as_str() {
                    "cycle" => BlockShape::Cycle {
                        from: *from,
                        to: to.unwrap_or(*p),
                    },
                    _ => BlockShape::Path,
                };
                let permutation = if perm.is_empty() { (1..=*p).collect() } else { perm.clone() };
                let spec = BlockInstance {
                    k: *k,
                    p: *p,
                    permutation,
                    shape,
                    extended: *extended,
                };
                let g = gen_block_instance(&spec)?;
                Ok((g, format!("blocks k={k} p={p} shape={shape:?} permutation={:?} extended={extended}", spec.permutation)))
            }
            &Construction::Bipartite { n, p, q, a, b } => {
                let g = gen_bipartite_instance(&BipartiteInstance { n, p, q, a, b })?;
                Ok((g, format!("bipartite n={n} p={p} q={q} a={a} b={b}")))
            }
            &Construction::Glued { n, q, seed } => {
                let ids = match seed {
                    Some(s) => IdChoice::sampled(n, q, s),
                    None => IdChoice::first(q),
                };
                let g = gen_glued_instance(n, q, &ids)?;
                let seed = seed.map_or("none".to_string(), |s| s.to_string());
                Ok((g, format!("glued n={n} q={q} seed={seed} a={:?} b={:?}", ids.a, ids.b)))
            }
            &Construction::Path { n } => family(GraphKind::Path { n }),
            &Construction::Cycle { n } => family(GraphKind::Cycle { n }),
            &Construction::Grid { w, h } => family(GraphKind::Grid { w, h }),
            &Construction::Wheel { n } => family(GraphKind::Wheel { n }),
            &Construction::Tree { n, seed } => family(GraphKind::Tree { n, seed }),
            &Construction::Rmp { n, seed } => family(GraphKind::RandomMaximalPlanar { n, seed }),
            &Construction::Complete { k } => family(GraphKind::Complete { k }),
            &Construction::Kpq { p, q } => family(GraphKind::CompleteBipartite { p, q }),
            Construction::Petersen => family(GraphKind::Petersen),
            &Construction::Gnp { n, p, seed } => family(GraphKind::Gnp { n, p, seed }),
        }
    }

    pub fn render(&self) -> Result<String, GraphError> {
        let (g, how) = self.build()?;
        Ok(write_graph(&g, None, &[format!("generated by planar-pls gen: {how}")]))
    }
}
