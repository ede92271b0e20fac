use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::Context as _;
use clap::{Parser, Subcommand, ValueEnum};

use planar_pls::embedding::{planar_embed, Embedding, NonPlanarWitness};
use planar_pls::io::{parse_graph, write_graph, GraphFile};
use planar_pls::pls::{parse_certificate_file, prove_planar, write_certificate_file, ProveError};
use planar_pls::sim::{attack, run_round_radius, size_sweep, sweep_csv, Assignment, Origin, PlanarityVerifier, SimError, Strategy, SweepKind};

mod gen;
mod oracle;

const EXIT_NONPLANAR: u8 = 2;
const EXIT_REJECT: u8 = 3;
const EXIT_PARSE: u8 = 64;
const EXIT_MISMATCH: u8 = 65;

#[derive(Parser)]
#[command(name = "planar-pls", version, about = "Certify planarity with one-round local certificates")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Csv,
    Human,
}

#[derive(Subcommand)]
enum Cmd {
    /// Print the graph with counterclockwise rotations, or a Kuratowski witness.
    Embed { graph: PathBuf },
    /// Write honest certificates for a connected planar graph.
    Prove {
        graph: PathBuf,
        /// Certificate file to write; stdout if omitted.
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Run one verification round and print every node's verdict.
    Verify {
        graph: PathBuf,
        certs: PathBuf,
        /// Verification radius; only 1 is supported.
        #[arg(long, default_value_t = 1)]
        radius: u32,
    },
    /// Forge certificates and count how many the verifier accepts.
    Attack {
        graph: PathBuf,
        #[arg(long, default_value_t = 1000)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Comma-separated strategy names; all by default.
        #[arg(long, value_delimiter = ',')]
        strategies: Vec<Strategy>,
        #[arg(long, value_enum, default_value_t = Format::Human)]
        format: Format,
    },
    /// Emit a generated instance in the graph text format.
    Gen {
        #[command(subcommand)]
        what: gen::Construction,
        /// Output file; stdout if omitted.
        #[arg(short, long, global = true)]
        out: Option<PathBuf>,
    },
    /// Largest certificate against log2(n) over increasing sizes.
    Sweep {
        #[arg(long, value_parser = parse_kind)]
        kind: SweepKind,
        #[arg(long, value_delimiter = ',', required = true)]
        sizes: Vec<usize>,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
    },
    /// Check the unfolding and the lower-bound constructions on a corpus.
    OracleCheck {
        #[arg(long, value_enum, default_value_t = oracle::Scope::All)]
        scope: oracle::Scope,
        /// Directory of graph files; the built-in corpus if unset.
        #[arg(long, env = "PLANAR_PLS_CORPUS")]
        corpus: Option<PathBuf>,
    },
}

fn parse_kind(s: &str) -> Result<SweepKind, String> {
    s.parse()
}

/// A command's failure, carrying its exit status.
struct Fail {
    code: u8,
    msg: String,
}

impl Fail {
    fn new(code: u8, msg: impl Into<String>) -> Fail {
        Fail { code, msg: msg.into() }
    }
}

impl From<anyhow::Error> for Fail {
    fn from(e: anyhow::Error) -> Fail {
        Fail::new(1, format!("{e:#}"))
    }
}

type CmdResult = Result<u8, Fail>;

fn read(path: &Path) -> Result<String, Fail> {
    Ok(fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?)
}

fn load_graph(path: &Path) -> Result<GraphFile, Fail> {
    parse_graph(&read(path)?).map_err(|e| Fail::new(EXIT_PARSE, format!("{}: {e}", path.display())))
}

fn emit(out: Option<&Path>, text: &str) -> Result<(), Fail> {
    match out {
        Some(p) => fs::write(p, text).with_context(|| format!("writing {}", p.display()))?,
        None => std::io::stdout().write_all(text.as_bytes()).context("writing stdout")?,
    }
    Ok(())
}

fn describe_witness(w: &NonPlanarWitness) -> String {
    let branch: Vec<String> = w.branch_nodes.iter().map(|v| v.to_string()).collect();
    let mut s = format!("non-planar: {} on branch nodes {}\n", w.kind, branch.join(" "));
    for p in &w.paths {
        let p: Vec<String> = p.iter().map(|v| v.to_string()).collect();
        s.push_str(&format!("  path {}\n", p.join("-")));
    }
    s
}

fn cmd_embed(graph: &Path) -> CmdResult {
    let file = load_graph(graph)?;
    match planar_embed(&file.graph) {
        Embedding::Planar(rot) => {
            emit(None, &write_graph(&file.graph, Some(&rot), &[]))?;
            Ok(0)
        }
        Embedding::NonPlanar(w) => {
            print!("{}", describe_witness(&w));
            Ok(EXIT_NONPLANAR)
        }
    }
}

fn cmd_prove(graph: &Path, out: Option<&Path>) -> CmdResult {
    let file = load_graph(graph)?;
    match prove_planar(&file.graph, file.rotation.as_ref()) {
        Ok(certs) => {
            emit(out, &write_certificate_file(&file.graph, &certs))?;
            Ok(0)
        }
        Err(ProveError::NonPlanar(w)) => {
            print!("{}", describe_witness(&w));
            Ok(EXIT_NONPLANAR)
        }
        Err(e) => Err(Fail::new(1, e.to_string())),
    }
}

fn cmd_verify(graph: &Path, certs: &Path, radius: u32) -> CmdResult {
    let file = load_graph(graph)?;
    let certs = parse_certificate_file(&read(certs)?).map_err(|e| Fail::new(EXIT_PARSE, format!("{}: {e}", certs.display())))?;
    let assignment = Assignment::from_certificates(&certs, Origin::External);
    let report = run_round_radius(&file.graph, &assignment, &PlanarityVerifier, radius).map_err(|e| match e {
        SimError::Radius(_) => Fail::new(EXIT_PARSE, e.to_string()),
        _ => Fail::new(EXIT_MISMATCH, e.to_string()),
    })?;
    let mut s = String::new();
    for (v, verdict) in &report.per_node {
        s.push_str(&format!("node {v} {verdict}\n"));
    }
    let decision = if report.accepted() { "accept" } else { "reject" };
    s.push_str(&format!("global {decision} max_bits={} mean_bits={:.1}\n", report.max_bits, report.mean_bits));
    emit(None, &s)?;
    Ok(if report.accepted() { 0 } else { EXIT_REJECT })
}

fn cmd_attack(graph: &Path, trials: usize, seed: u64, strategies: &[Strategy], format: Format) -> CmdResult {
    let file = load_graph(graph)?;
    let strategies = if strategies.is_empty() { &Strategy::ALL[..] } else { strategies };
    let summary = attack(&file.graph, strategies, trials, seed);
    match format {
        Format::Csv => {
            emit(None, &summary.to_csv())?;
            eprintln!("accepted: {}", summary.accepted());
        }
        Format::Human => emit(None, &summary.to_human())?,
    }
    Ok(0)
}

fn cmd_sweep(kind: SweepKind, sizes: &[usize], seed: u64, format: Format) -> CmdResult {
    let rows = size_sweep(kind, sizes, seed).map_err(|e| Fail::new(1, e.to_string()))?;
    match format {
        Format::Csv => emit(None, &sweep_csv(&rows, kind, seed))?,
        Format::Human => {
            for r in &rows {
                println!("n={:<6} max bits {:<6} bits/log2(n) {:.2}", r.n, r.max_bits, r.ratio);
            }
        }
    }
    Ok(0)
}

fn run(cli: Cli) -> CmdResult {
    match cli.cmd {
        Cmd::Embed { graph } => cmd_embed(&graph),
        Cmd::Prove { graph, out } => cmd_prove(&graph, out.as_deref()),
        Cmd::Verify { graph, certs, radius } => cmd_verify(&graph, &certs, radius),
        Cmd::Attack {
            graph,
            trials,
            seed,
            strategies,
            format,
        } => cmd_attack(&graph, trials, seed, &strategies, format),
        Cmd::Gen { what, out } => {
            let text = what.render().map_err(|e| Fail::new(1, e.to_string()))?;
            emit(out.as_deref(), &text)?;
            Ok(0)
        }
        Cmd::Sweep { kind, sizes, seed, format } => cmd_sweep(kind, &sizes, seed, format),
        Cmd::OracleCheck { scope, corpus } => oracle::run(scope, corpus.as_deref()),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_PARSE } else { 0 });
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.msg);
            ExitCode::from(f.code)
        }
    }
}
