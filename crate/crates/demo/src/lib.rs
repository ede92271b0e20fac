//! Browser bindings. Every exported function takes a graph in the text
//! format and returns JSON; the page in `www/` draws the result.

use serde::Serialize;
use wasm_bindgen::prelude::wasm_bindgen;

use planar_pls::embedding::{faces, planar_embed, Embedding, RotationSystem};
use planar_pls::graph::{generate, GraphKind, NodeId};
use planar_pls::io::parse_graph;
use planar_pls::pls::{certificate_size_bits, prove_planar};
use planar_pls::sim::{run_round, Assignment, Origin, PlanarityVerifier};
use planar_pls::transform::unfold;
use planar_pls::Graph;

#[derive(Debug, Serialize)]
pub struct EmbedView {
    pub planar: bool,
    pub nodes: Vec<u32>,
    pub edges: Vec<(u32, u32)>,
    /// Straight-line positions in the unit square, keyed like `nodes`.
    pub positions: Vec<(f64, f64)>,
    pub rotation: Vec<(u32, Vec<u32>)>,
    pub faces: Vec<Vec<u32>>,
    /// Witness kind and its edges when the graph is not planar.
    pub witness: Option<(String, Vec<(u32, u32)>)>,
}

#[derive(Debug, Serialize)]
pub struct NodeVerdict {
    pub node: u32,
    pub accept: bool,
    pub phase: Option<u8>,
    pub reason: String,
    pub bits: u64,
}

#[derive(Debug, Serialize)]
pub struct RoundView {
    pub accept: bool,
    pub tampered: Option<u32>,
    pub verdicts: Vec<NodeVerdict>,
    pub max_bits: u64,
}

#[derive(Debug, Serialize)]
pub struct UnfoldView {
    pub root: u32,
    /// `f(i)` for `i = 1..=2n-1`.
    pub tour: Vec<u32>,
    pub tree_edges: Vec<(u32, u32)>,
    /// Cotree edges as index pairs on the tour.
    pub arcs: Vec<(u32, u32)>,
}

fn load(text: &str) -> Result<(Graph, Option<RotationSystem>), String> {
    let f = parse_graph(text).map_err(|e| e.to_string())?;
    Ok((f.graph, f.rotation))
}

fn raw_edges(g: &Graph) -> Vec<(u32, u32)> {
    g.edge_ids().into_iter().map(|(u, v)| (u.0, v.0)).collect()
}

/// Barycentric drawing with the longest face pinned to a circle. Straight
/// and crossing-free for 3-connected graphs; a readable sketch otherwise.
fn layout(g: &Graph, face_list: &[Vec<u32>]) -> Vec<(f64, f64)> {
    let n = g.node_count();
    let mut pos = vec![(0.5, 0.5); n];
    let mut pinned = vec![false; n];
    let outer = face_list.iter().max_by_key(|f| f.len()).cloned().unwrap_or_default();
    let mut ring = Vec::new();
    for v in outer {
        let i = g.index_of(NodeId(v)).expect("face node");
        if !pinned[i] {
            pinned[i] = true;
            ring.push(i);
        }
    }
    if ring.is_empty() {
        ring = (0..n).collect();
        ring.iter().for_each(|&i| pinned[i] = true);
    }
    for (k, &i) in ring.iter().enumerate() {
        let a = std::f64::consts::TAU * k as f64 / ring.len() as f64;
        pos[i] = (0.5 + 0.45 * a.cos(), 0.5 + 0.45 * a.sin());
    }
    for _ in 0..400 {
        for i in 0..n {
            if pinned[i] || g.degree(i) == 0 {
                continue;
            }
            let d = g.degree(i) as f64;
            let (sx, sy) = g.neighbors(i).iter().fold((0.0, 0.0), |(x, y), &j| (x + pos[j].0, y + pos[j].1));
            pos[i] = (sx / d, sy / d);
        }
    }
    pos
}

pub fn embed_view(text: &str) -> Result<EmbedView, String> {
    let (g, _) = load(text)?;
    let nodes: Vec<u32> = g.ids().iter().map(|v| v.0).collect();
    let edges = raw_edges(&g);
    match planar_embed(&g) {
        Embedding::Planar(rot) => {
            let face_list: Vec<Vec<u32>> = faces(&g, &rot)
                .map_err(|e| e.to_string())?
                .into_iter()
                .map(|f| f.into_iter().map(|(u, _)| u.0).collect())
                .collect();
            Ok(EmbedView {
                planar: true,
                positions: layout(&g, &face_list),
                rotation: rot.iter().map(|(v, l)| (v.0, l.iter().map(|w| w.0).collect())).collect(),
                faces: face_list,
                nodes,
                edges,
                witness: None,
            })
        }
        Embedding::NonPlanar(w) => Ok(EmbedView {
            planar: false,
            positions: layout(&g, &[]),
            rotation: Vec::new(),
            faces: Vec::new(),
            witness: Some((w.kind.to_string(), raw_edges(&w.subgraph()))),
            nodes,
            edges,
        }),
    }
}

/// Honest certificates, optionally with one field of `tamper`'s certificate
/// altered, then one verification round.
pub fn round_view(text: &str, tamper: Option<u32>, field: &str) -> Result<RoundView, String> {
    let (g, rot) = load(text)?;
    let mut certs = prove_planar(&g, rot.as_ref()).map_err(|e| e.to_string())?;
    let origin = match tamper {
        None => Origin::Honest,
        Some(v) => {
            let c = certs.get_mut(&NodeId(v)).ok_or_else(|| format!("no node {v}"))?;
            let n = c.n;
            match field {
                "dist" => c.tree.dist += 1,
                "parent" => c.tree.parent = Some(c.tree.root),
                "n" => c.n += 1,
                "index" | "pop" => {
                    let e = c.edges.first_mut().ok_or_else(|| format!("node {v} stores no edge certificate"))?;
                    if field == "index" {
                        e.i = e.i % (2 * n - 1) + 1;
                    } else {
                        e.pop_j.rank = e.pop_j.rank % (2 * n - 1) + 1;
                    }
                }
                other => return Err(format!("unknown field `{other}`")),
            }
            Origin::External
        }
    };
    let report = run_round(&g, &Assignment::from_certificates(&certs, origin), &PlanarityVerifier).map_err(|e| e.to_string())?;
    let verdicts = report
        .per_node
        .iter()
        .map(|(v, verdict)| NodeVerdict {
            node: v.0,
            accept: verdict.accepted(),
            phase: verdict.phase,
            reason: verdict.reason.clone(),
            bits: certificate_size_bits(&certs[v], g.node_count() as u32, g.max_id()),
        })
        .collect();
    Ok(RoundView {
        accept: report.accepted(),
        tampered: tamper,
        verdicts,
        max_bits: report.max_bits,
    })
}

pub fn unfold_view(text: &str, root: u32) -> Result<UnfoldView, String> {
    let (g, rot) = load(text)?;
    let rot = match rot {
        Some(r) => r,
        None => match planar_embed(&g) {
            Embedding::Planar(r) => r,
            Embedding::NonPlanar(w) => return Err(format!("not planar ({})", w.kind)),
        },
    };
    let (tree, fm, induced) = unfold(&g, &rot, NodeId(root)).map_err(|e| e.to_string())?;
    Ok(UnfoldView {
        root,
        tour: (1..=fm.len()).map(|i| fm.f(i).expect("index in range").0).collect(),
        tree_edges: tree.edges().map(|(u, v)| (u.0, v.0)).collect(),
        arcs: induced.cotree_map.values().copied().collect(),
    })
}

/// Text of a generated family member, for the page's presets.
pub fn preset_text(name: &str, n: usize, seed: u64) -> Result<String, String> {
    let side = (n as f64).sqrt().round().max(2.0) as usize;
    let kind = match name {
        "grid" => GraphKind::Grid { w: side, h: side },
        "wheel" => GraphKind::Wheel { n },
        "tree" => GraphKind::Tree { n, seed },
        "rmp" => GraphKind::RandomMaximalPlanar { n, seed },
        "k5" => GraphKind::Complete { k: 5 },
        "k33" => GraphKind::CompleteBipartite { p: 3, q: 3 },
        other => return Err(format!("unknown preset `{other}`")),
    };
    let g = generate(&kind).map_err(|e| e.to_string())?;
    Ok(planar_pls::io::write_graph(&g, None, &[]))
}

fn json<T: Serialize>(r: Result<T, String>) -> String {
    match r {
        Ok(v) => serde_json::to_string(&v).expect("serializable"),
        Err(e) => serde_json::json!({ "error": e }).to_string(),
    }
}

#[wasm_bindgen]
pub fn embed(text: &str) -> String {
    json(embed_view(text))
}

/// `tamper` of 0 means no tampering.
#[wasm_bindgen]
pub fn prove_and_verify(text: &str, tamper: u32, field: &str) -> String {
    json(round_view(text, (tamper != 0).then_some(tamper), field))
}

#[wasm_bindgen]
pub fn unfold_arcs(text: &str, root: u32) -> String {
    json(unfold_view(text, root))
}

#[wasm_bindgen]
pub fn preset(name: &str, n: usize, seed: u64) -> String {
    preset_text(name, n, seed).unwrap_or_default()
}
