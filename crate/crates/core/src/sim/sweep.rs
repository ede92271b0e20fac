use std::fmt::Write as _;

use crate::graph::{generate, GraphError, GraphKind};
use crate::pls::{max_certificate_bits, prove_planar};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SweepKind {
    /// Square grids; `n` must be a perfect square.
    Grid,
    RandomMaximalPlanar,
}

impl std::str::FromStr for SweepKind {
    type Err = String;
    fn from_str(s: &str) -> Result<SweepKind, String> {
        match s {
            "grid" => Ok(SweepKind::Grid),
            "rmp" | "random-maximal-planar" => Ok(SweepKind::RandomMaximalPlanar),
            _ => Err(format!("unknown sweep kind `{s}`")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepRow {
    pub n: usize,
    pub max_bits: u64,
    pub ratio: f64,
}

pub fn size_sweep(kind: SweepKind, sizes: &[usize], seed: u64) -> Result<Vec<SweepRow>, GraphError> {
    if sizes.windows(2).any(|w| w[0] >= w[1]) {
        return Err(GraphError::InvalidParameter("sizes must be strictly ascending".into()));
    }
    sizes
        .iter()
        .map(|&n| {
            let g = match kind {
                SweepKind::Grid => {
                    let w = (n as f64).sqrt().round() as usize;
                    if w * w != n {
                        return Err(GraphError::InvalidParameter(format!("{n} is not a square")));
                    }
                    generate(&GraphKind::Grid { w, h: w })?
                }
                SweepKind::RandomMaximalPlanar => generate(&GraphKind::RandomMaximalPlanar { n, seed })?,
            };
            let certs = prove_planar(&g, None).map_err(|e| GraphError::InvalidParameter(e.to_string()))?;
            let max_bits = max_certificate_bits(&g, &certs);
            Ok(SweepRow {
                n,
                max_bits,
                ratio: max_bits as f64 / (n as f64).log2(),
            })
        })
        .collect()
}

pub fn sweep_csv(rows: &[SweepRow], kind: SweepKind, seed: u64) -> String {
    let mut s = format!("# kind={kind:?} seed={seed}\nn,max_bits,ratio\n");
    for r in rows {
        let _ = writeln!(s, "{},{},{:.3}", r.n, r.max_bits, r.ratio);
    }
    s
}
