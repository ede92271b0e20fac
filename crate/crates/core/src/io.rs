//! Plain-text graph format.
//!
//! ```text
//! # comment
//! 3 3
//! 1 2
//! 2 3
//! 1 3
//! rot 1: 2 3
//! ```
//!
//! The header gives the node and edge counts; the node count must equal the
//! number of distinct identifiers in the edge list. `rot` lines, if present,
//! give counterclockwise rotations and must cover every node.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use crate::embedding::RotationSystem;
use crate::graph::{Graph, NodeId};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("line {line}: {msg}")]
pub struct ParseError {
    pub line: usize,
    pub msg: String,
}

fn err(line: usize, msg: impl Into<String>) -> ParseError {
    ParseError { line, msg: msg.into() }
}

#[derive(Debug, Clone)]
pub struct GraphFile {
    pub graph: Graph,
    pub rotation: Option<RotationSystem>,
}

fn parse_id(tok: &str, line: usize) -> Result<NodeId, ParseError> {
    match tok.parse::<u32>() {
        Ok(0) => Err(err(line, "node ids must be positive")),
        Ok(v) => Ok(NodeId(v)),
        Err(_) => Err(err(line, format!("bad node id `{tok}`"))),
    }
}

pub fn parse_graph(text: &str) -> Result<GraphFile, ParseError> {
    let mut header: Option<(usize, usize)> = None;
    let mut edges = Vec::new();
    let mut rot: BTreeMap<NodeId, Vec<NodeId>> = BTreeMap::new();
    let mut last_line = 0;
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        last_line = line;
        let body = raw.split('#').next().unwrap_or("").trim();
        if body.is_empty() {
            continue;
        }
        if let Some(rest) = body.strip_prefix("rot ") {
            if header.is_none() {
                return Err(err(line, "rotation before header"));
            }
            let (node, list) = rest.split_once(':').ok_or_else(|| err(line, "rotation line needs `u:`"))?;
            let v = parse_id(node.trim(), line)?;
            let list = list
                .split_whitespace()
                .map(|t| parse_id(t, line))
                .collect::<Result<Vec<_>, _>>()?;
            if rot.insert(v, list).is_some() {
                return Err(err(line, format!("second rotation for {v}")));
            }
            continue;
        }
        let toks: Vec<&str> = body.split_whitespace().collect();
        match header {
            None => {
                let [n, m] = toks[..] else {
                    return Err(err(line, "header must be `n m`"));
                };
                let n = n.parse().map_err(|_| err(line, "bad node count"))?;
                let m = m.parse().map_err(|_| err(line, "bad edge count"))?;
                header = Some((n, m));
            }
            Some((_, m)) => {
                let [u, v] = toks[..] else {
                    return Err(err(line, "edge line must be `u v`"));
                };
                if edges.len() == m {
                    return Err(err(line, format!("more than {m} edge lines")));
                }
                edges.push((parse_id(u, line)?, parse_id(v, line)?));
            }
        }
    }
    let (n, m) = header.ok_or_else(|| err(last_line.max(1), "missing header"))?;
    if edges.len() != m {
        return Err(err(last_line, format!("expected {m} edges, found {}", edges.len())));
    }
    let distinct: BTreeSet<NodeId> = edges.iter().flat_map(|&(u, v)| [u, v]).collect();
    if distinct.len() != n {
        return Err(err(1, format!("header says {n} nodes, edges mention {}", distinct.len())));
    }
    let graph = Graph::from_edges(edges).map_err(|e| err(1, e.to_string()))?;
    let rotation = if rot.is_empty() {
        None
    } else {
        let rs = RotationSystem::new(rot);
        rs.check_against(&graph).map_err(|e| err(1, e.to_string()))?;
        Some(rs)
    };
    Ok(GraphFile { graph, rotation })
}

/// Serializes `g` with optional leading comment lines and rotation lines.
pub fn write_graph(g: &Graph, rot: Option<&RotationSystem>, comments: &[String]) -> String {
    let mut s = String::new();
    for c in comments {
        let _ = writeln!(s, "# {c}");
    }
    let _ = writeln!(s, "{} {}", g.node_count(), g.edge_count());
    for (u, v) in g.edge_ids() {
        let _ = writeln!(s, "{u} {v}");
    }
    if let Some(r) = rot {
        s.push_str(&r.to_string());
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::embedding::{planar_embed, Embedding};
    use crate::graph::{generate, GraphKind};

    #[test]
    fn round_trip_with_rotation() {
        let g = generate(&GraphKind::Wheel { n: 7 }).unwrap();
        let Embedding::Planar(r) = planar_embed(&g) else { panic!() };
        let text = write_graph(&g, Some(&r), &["wheel".into()]);
        let back = parse_graph(&text).unwrap();
        assert_eq!(back.graph, g);
        assert_eq!(back.rotation, Some(r));
    }

    #[test]
    fn comments_and_blank_lines_ignored() {
        let f = parse_graph("# c\n\n2 1 # header\n1 2\n").unwrap();
        assert_eq!(f.graph.edge_count(), 1);
        assert!(f.rotation.is_none());
    }

    #[test]
    fn malformed_inputs() {
        for (text, line) in [
            ("x y\n", 1),
            ("3\n", 1),
            ("3 2\n1 2\n", 2),
            ("3 1\n1 2\n", 1),
            ("2 1\n1 0\n", 2),
            ("2 1\n1 2\n2 1\n", 3),
            ("2 1\n1 2 3\n", 2),
            ("rot 1: 2\n2 1\n1 2\n", 1),
        ] {
            let e = parse_graph(text).unwrap_err();
            assert_eq!(e.line, line, "{text:?}: {e}");
        }
    }

    #[test]
    fn rotation_must_match_graph() {
        assert!(parse_graph("3 2\n1 2\n2 3\nrot 1: 3\nrot 2: 1 3\nrot 3: 2\n").is_err());
        assert!(parse_graph("3 2\n1 2\n2 3\nrot 1: 2\n").is_err());
    }
}
