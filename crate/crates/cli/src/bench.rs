//! Scaling report: the 2-respecting solver (and optionally the whole
//! pipeline) over a list of edge counts, with instrumented operation counts.

use std::io::Write;
use std::time::Instant;

use serde::Serialize;
use twocut::generate::rng;
use twocut::{generate, min_2respect_instrumented, min_cut, random_spanning_tree, GenSpec, Model, PipelineConfig};

use crate::error::{CliError, CliResult};

#[derive(Debug, Serialize)]
pub struct Row {
    pub m: usize,
    pub n: usize,
    pub ops: u64,
    pub ops_per_m_log_m: f64,
    pub respect2_ms: f64,
    /// Empty when the size is above the pipeline limit.
    pub mincut_ms: Option<f64>,
}

/// Runs one row per requested edge count on `G(n, p)` with average degree
/// `degree` (so `n ≈ 2m/degree`).
pub fn run(sizes: &[usize], degree: usize, pipeline_limit: usize, seed: u64) -> CliResult<Vec<Row>> {
    let mut rows = Vec::with_capacity(sizes.len());
    for (i, &target) in sizes.iter().enumerate() {
        let n = (2 * target / degree.max(1)).max(2);
        let p = (2.0 * target as f64 / (n as f64 * (n as f64 - 1.0))).min(1.0);
        let spec = GenSpec { model: Model::Gnp { n, p }, weights: (1, 20), seed: seed.wrapping_add(i as u64) };
        let g = generate(&spec)?.graph;
        let tree = random_spanning_tree(&g, &mut rng(spec.seed, 7))?;

        let start = Instant::now();
        let (_, stats) = min_2respect_instrumented(&g, &tree)?;
        let respect2_ms = ms(start);
        let mincut_ms = if g.m() <= pipeline_limit {
            let start = Instant::now();
            min_cut(&g, &PipelineConfig { parallelism: 1, ..PipelineConfig::with_seed(spec.seed) })?;
            Some(ms(start))
        } else {
            None
        };
        let m = g.m() as f64;
        rows.push(Row {
            m: g.m(),
            n,
            ops: stats.total(),
            ops_per_m_log_m: stats.total() as f64 / (m * m.log2().max(1.0)),
            respect2_ms,
            mincut_ms,
        });
    }
    Ok(rows)
}

fn ms(start: Instant) -> f64 {
    start.elapsed().as_secs_f64() * 1e3
}

/// Largest over smallest normalized operation count.
pub fn spread(rows: &[Row]) -> f64 {
    let lo = rows.iter().map(|r| r.ops_per_m_log_m).fold(f64::INFINITY, f64::min);
    let hi = rows.iter().map(|r| r.ops_per_m_log_m).fold(0.0, f64::max);
    if rows.is_empty() {
        1.0
    } else {
        hi / lo
    }
}

pub fn write_csv(rows: &[Row], out: impl Write) -> CliResult<()> {
    let io = |e: std::io::Error| CliError::Io { path: "<stdout>".into(), source: e };
    let mut w = csv::Writer::from_writer(out);
    for row in rows {
        w.serialize(row).map_err(|e| io(e.into()))?;
    }
    w.flush().map_err(io)
}

pub fn write_table(rows: &[Row], mut out: impl Write) -> std::io::Result<()> {
    writeln!(out, "{:>9} {:>8} {:>12} {:>10} {:>12} {:>12}", "m", "n", "ops", "ops/mlogm", "respect2 ms", "mincut ms")?;
    for r in rows {
        let mincut = r.mincut_ms.map_or_else(|| "-".to_string(), |t| format!("{t:.1}"));
        writeln!(
            out,
            "{:>9} {:>8} {:>12} {:>10.2} {:>12.1} {:>12}",
            r.m, r.n, r.ops, r.ops_per_m_log_m, r.respect2_ms, mincut
        )?;
    }
    Ok(())
}
