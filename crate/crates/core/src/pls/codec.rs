//! Text form of certificates.
//!
//! ```text
//! node 3 n=4 root=1 parent=2 dist=1 edges=1 #bits=131
//!   edge 3 4 i=4 j=5 i2=6 j2=5 pi=7:4:3:6 pj=7:5:0:8 pi2=7:6:0:8 pj2=7:5:0:8
//! ```
//!
//! [`encode_node`] writes a record without the `node X` prefix and the bit
//! count; that body is what a node stores.

use std::fmt::Write as _;

use super::{certificate_size_bits, Certificates, EdgeCertificate, NodeCertificate, TreeSub};
use crate::graph::{Graph, NodeId};
use crate::pop::PopCertificate;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("line {line}: {msg}")]
pub struct CodecError {
    pub line: usize,
    pub msg: String,
}

fn err(line: usize, msg: impl Into<String>) -> CodecError {
    CodecError { line, msg: msg.into() }
}

pub fn encode_node(c: &NodeCertificate) -> String {
    let mut s = String::new();
    let parent = c.tree.parent.map_or("-".to_string(), |p| p.to_string());
    let _ = write!(
        s,
        "n={} root={} parent={} dist={} edges={}",
        c.n,
        c.tree.root,
        parent,
        c.tree.dist,
        c.edges.len()
    );
    for e in &c.edges {
        let _ = write!(
            s,
            "\n  edge {} {} i={} j={} i2={} j2={} pi={} pj={} pi2={} pj2={}",
            e.id_x, e.id_y, e.i, e.j, e.i2, e.j2, e.pop_i, e.pop_j, e.pop_i2, e.pop_j2
        );
    }
    s
}

/// Splits `key=value` tokens in order and checks the keys.
fn fields<'a>(toks: &[&'a str], keys: &[&str], line: usize) -> Result<Vec<&'a str>, CodecError> {
    if toks.len() != keys.len() {
        return Err(err(line, format!("expected {} fields, found {}", keys.len(), toks.len())));
    }
    toks.iter()
        .zip(keys)
        .map(|(t, k)| match t.split_once('=') {
            Some((a, b)) if a == *k => Ok(b),
            _ => Err(err(line, format!("expected `{k}=`, found `{t}`"))),
        })
        .collect()
}

fn num(s: &str, line: usize) -> Result<u32, CodecError> {
    s.parse().map_err(|_| err(line, format!("bad number `{s}`")))
}

fn id(s: &str, line: usize) -> Result<NodeId, CodecError> {
    num(s, line).map(NodeId)
}

fn pop(s: &str, line: usize) -> Result<PopCertificate, CodecError> {
    s.parse().map_err(|m: String| err(line, m))
}

fn parse_header(toks: &[&str], line: usize) -> Result<(NodeCertificate, usize), CodecError> {
    let f = fields(toks, &["n", "root", "parent", "dist", "edges"], line)?;
    let parent = if f[2] == "-" { None } else { Some(id(f[2], line)?) };
    let cert = NodeCertificate {
        n: num(f[0], line)?,
        tree: TreeSub {
            root: id(f[1], line)?,
            parent,
            dist: num(f[3], line)?,
        },
        edges: Vec::new(),
    };
    let k = f[4].parse().map_err(|_| err(line, "bad edge count"))?;
    Ok((cert, k))
}

fn parse_edge(toks: &[&str], line: usize) -> Result<EdgeCertificate, CodecError> {
    let [kw, x, y, rest @ ..] = toks else {
        return Err(err(line, "edge line too short"));
    };
    if *kw != "edge" {
        return Err(err(line, format!("expected `edge`, found `{kw}`")));
    }
    let f = fields(rest, &["i", "j", "i2", "j2", "pi", "pj", "pi2", "pj2"], line)?;
    Ok(EdgeCertificate {
        id_x: id(x, line)?,
        id_y: id(y, line)?,
        i: num(f[0], line)?,
        j: num(f[1], line)?,
        i2: num(f[2], line)?,
        j2: num(f[3], line)?,
        pop_i: pop(f[4], line)?,
        pop_j: pop(f[5], line)?,
        pop_i2: pop(f[6], line)?,
        pop_j2: pop(f[7], line)?,
    })
}

/// Inverse of [`encode_node`]. Line numbers in errors are relative to the
/// record.
pub fn decode_node(text: &str) -> Result<NodeCertificate, CodecError> {
    let mut lines = text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty());
    let (_, head) = lines.next().ok_or_else(|| err(1, "empty certificate"))?;
    let toks: Vec<&str> = head.split_whitespace().collect();
    let (mut cert, k) = parse_header(&toks, 1)?;
    for (i, l) in lines {
        let toks: Vec<&str> = l.split_whitespace().collect();
        cert.edges.push(parse_edge(&toks, i + 1)?);
    }
    if cert.edges.len() != k {
        return Err(err(1, format!("header announces {k} edges, found {}", cert.edges.len())));
    }
    Ok(cert)
}

/// Certificate file for a whole graph, one record per node, each header
/// annotated with the packed size in bits.
pub fn write_certificate_file(g: &Graph, certs: &Certificates) -> String {
    let mut s = String::new();
    for (v, c) in certs {
        let bits = certificate_size_bits(c, g.node_count() as u32, g.max_id());
        let body = encode_node(c);
        let (head, rest) = body.split_once('\n').map_or((body.as_str(), ""), |(a, b)| (a, b));
        let _ = writeln!(s, "node {v} {head} #bits={bits}");
        if !rest.is_empty() {
            s.push_str(rest);
            s.push('\n');
        }
    }
    s
}

pub fn parse_certificate_file(text: &str) -> Result<Certificates, CodecError> {
    let mut out = Certificates::new();
    let mut current: Option<(NodeId, NodeCertificate, usize, usize)> = None;
    let finish = |cur: Option<(NodeId, NodeCertificate, usize, usize)>, out: &mut Certificates| -> Result<(), CodecError> {
        if let Some((v, c, k, line)) = cur {
            if c.edges.len() != k {
                return Err(err(line, format!("node {v} announces {k} edges, found {}", c.edges.len())));
            }
            if out.insert(v, c).is_some() {
                return Err(err(line, format!("second record for node {v}")));
            }
        }
        Ok(())
    };
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let body = raw.split('#').next().unwrap_or("").trim();
        if body.is_empty() {
            continue;
        }
        let toks: Vec<&str> = body.split_whitespace().collect();
        if toks[0] == "node" {
            finish(current.take(), &mut out)?;
            let v = id(toks.get(1).ok_or_else(|| err(line, "missing node id"))?, line)?;
            let (c, k) = parse_header(&toks[2..], line)?;
            current = Some((v, c, k, line));
        } else {
            let Some((_, c, _, _)) = current.as_mut() else {
                return Err(err(line, "edge line before any node record"));
            };
            c.edges.push(parse_edge(&toks, line)?);
        }
    }
    finish(current, &mut out)?;
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{generate, GraphKind};
    use crate::pls::prove_planar;

    #[test]
    fn node_round_trip() {
        let g = generate(&GraphKind::Wheel { n: 9 }).unwrap();
        let certs = prove_planar(&g, None).unwrap();
        for c in certs.values() {
            assert_eq!(&decode_node(&encode_node(c)).unwrap(), c);
        }
    }

    #[test]
    fn file_round_trip() {
        let g = generate(&GraphKind::Grid { w: 4, h: 3 }).unwrap();
        let certs = prove_planar(&g, None).unwrap();
        let text = write_certificate_file(&g, &certs);
        assert!(text.lines().next().unwrap().contains("#bits="));
        assert_eq!(parse_certificate_file(&text).unwrap(), certs);
    }

    #[test]
    fn malformed_records() {
        assert!(decode_node("").is_err());
        assert!(decode_node("n=3 root=1 parent=- dist=0 edges=1").is_err());
        assert!(decode_node("n=3 root=1 parent=x dist=0 edges=0").is_err());
        assert!(decode_node("n=3 root=1 dist=0 parent=- edges=0").is_err());
        let e = parse_certificate_file("node 1 n=2 root=1 parent=- dist=0 edges=0\n  edge 1 2 i=1\n").unwrap_err();
        assert_eq!(e.line, 2);
        let e = parse_certificate_file("  edge 1 2\n").unwrap_err();
        assert_eq!(e.line, 1);
        assert!(parse_certificate_file(
            "node 1 n=1 root=1 parent=- dist=0 edges=0\nnode 1 n=1 root=1 parent=- dist=0 edges=0\n"
        )
        .is_err());
    }
}
