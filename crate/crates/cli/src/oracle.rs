//! `oracle-check`: re-runs the structural checks on the unfolding and the
//! lower-bound constructions.

use std::fs;
use std::path::Path;

use anyhow::Context as _;
use clap::ValueEnum;
use rayon::prelude::*;

use planar_pls::corpus::{planar_corpus, Instance};
use planar_pls::embedding::{planar_embed, Embedding};
use planar_pls::graph::NodeId;
use planar_pls::io::parse_graph;
use planar_pls::lowerbound::validate_lowerbound_claims;
use planar_pls::pop::is_path_outerplanar;
use planar_pls::transform::{contract_check, unfold};

use crate::{CmdResult, Fail, EXIT_PARSE, EXIT_REJECT};

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Scope {
    Transform,
    Lowerbound,
    All,
}

fn load_dir(dir: &Path) -> Result<Vec<Instance>, Fail> {
    let mut paths: Vec<_> = fs::read_dir(dir)
        .with_context(|| format!("reading {}", dir.display()))?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.is_file())
        .collect();
    paths.sort();
    paths
        .into_iter()
        .map(|p| {
            let text = fs::read_to_string(&p).with_context(|| format!("reading {}", p.display()))?;
            let file = parse_graph(&text).map_err(|e| Fail::new(EXIT_PARSE, format!("{}: {e}", p.display())))?;
            Ok(Instance {
                name: p.file_name().unwrap_or_default().to_string_lossy().into_owned(),
                graph: file.graph,
            })
        })
        .collect()
}

/// Failures for one instance, or `None` if it is not a connected planar graph.
fn check_instance(inst: &Instance) -> Option<Vec<String>> {
    let g = &inst.graph;
    if !g.is_connected() {
        return None;
    }
    let Embedding::Planar(rot) = planar_embed(g) else {
        return None;
    };
    let ids = g.ids();
    let mut roots = vec![ids[0], ids[ids.len() / 2], ids[ids.len() - 1]];
    roots.dedup();
    let mut fails = Vec::new();
    for root in roots {
        match unfold(g, &rot, root) {
            Ok((_, fm, induced)) => {
                let order: Vec<NodeId> = (1..=induced.n_virtual).map(NodeId).collect();
                if is_path_outerplanar(&induced.graph, &order) != Ok(true) {
                    fails.push(format!("{} root {root}: unfolded graph is not path-outerplanar", inst.name));
                }
                if contract_check(g, &induced, &fm) != Ok(true) {
                    fails.push(format!("{} root {root}: contraction does not recover the graph", inst.name));
                }
            }
            Err(e) => fails.push(format!("{} root {root}: {e}", inst.name)),
        }
    }
    Some(fails)
}

pub fn run(scope: Scope, corpus: Option<&Path>) -> CmdResult {
    let mut failures = Vec::new();
    if scope != Scope::Lowerbound {
        let instances = match corpus {
            Some(dir) => load_dir(dir)?,
            None => planar_corpus(),
        };
        let results: Vec<Option<Vec<String>>> = instances.par_iter().map(check_instance).collect();
        let skipped = results.iter().filter(|r| r.is_none()).count();
        let fails: Vec<String> = results.into_iter().flatten().flatten().collect();
        println!(
            "transform: {} instances checked, {skipped} skipped (disconnected or non-planar), {} failures",
            instances.len() - skipped,
            fails.len()
        );
        failures.extend(fails);
    }
    if scope != Scope::Transform {
        let mut report = validate_lowerbound_claims(&[4], &[1, 2, 3, 4], &[(3, 22), (3, 18)]);
        report.checks.extend(validate_lowerbound_claims(&[5], &[1, 2, 3], &[]).checks);
        let fails: Vec<String> = report.failures().map(|c| format!("{} [{}]: {:?}", c.claim, c.instance, c.outcome)).collect();
        println!("lowerbound: {} claim checks, {} failures", report.checks.len(), fails.len());
        failures.extend(fails);
    }
    for f in &failures {
        println!("FAIL {f}");
    }
    Ok(if failures.is_empty() { 0 } else { EXIT_REJECT })
}
