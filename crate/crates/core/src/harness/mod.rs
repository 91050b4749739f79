//! Experiment engine: Monte-Carlo sweeps over the observation models, with
//! CSV and SVG output.

mod experiments;
mod svg;

use std::fmt;
use std::io::Write;

use serde::Serialize;

use crate::error::Result;
use crate::graph::Graph;
use crate::optimize::{best_of, brute_force_qstar, HeuristicConfig};
use crate::scalar::Scalar;

pub use experiments::{
    edge_sample_replicate, er_replicate, fig1_summary, fig1_sweep, qbar_estimate, qbar_monotonicity,
    theorem1_check, theorem2_check, theorem2_translate, undersampling_check, MonotonicityReport,
    PointSummary, QbarEstimate, Reference, SweepConfig, Theorem1Report, Theorem2Case, Theorem2Report,
    UndersamplingReport,
};
pub use svg::{emit_svg_scatter, ScatterAxes};

/// Graphs whose largest component (isolated vertices aside) has at most this
/// many vertices are scored exactly by the experiments.
pub const EXACT_AUTO_LIMIT: usize = 10;

pub const CSV_HEADER: [&str; 8] = [
    "experiment",
    "param_name",
    "param_value",
    "replicate",
    "seed",
    "score",
    "score_kind",
    "runtime_ms",
];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ScoreKind {
    Exact,
    Heuristic,
}

impl fmt::Display for ScoreKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ScoreKind::Exact => f.write_str("exact"),
            ScoreKind::Heuristic => f.write_str("heuristic"),
        }
    }
}

/// One replicate of a sweep. `seed` alone reproduces `score`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExperimentRecord {
    pub experiment: String,
    pub param_name: String,
    pub param_value: f64,
    pub replicate: usize,
    pub seed: u64,
    pub score: f64,
    pub score_kind: ScoreKind,
    /// Zero unless timing was requested, so that output stays reproducible.
    pub runtime_ms: u64,
}

/// Outcome of a statistical check.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Holds,
    Fails,
    Inconclusive,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Holds => f.write_str("holds"),
            Verdict::Fails => f.write_str("fails"),
            Verdict::Inconclusive => f.write_str("inconclusive"),
        }
    }
}

/// z for two-sided 95% intervals.
pub const Z95: f64 = 1.959_963_984_540_054;

/// Wilson score interval for `successes` out of `trials` at the given z.
pub fn wilson_interval(successes: usize, trials: usize, z: f64) -> (f64, f64) {
    if trials == 0 {
        return (0.0, 1.0);
    }
    let n = trials as f64;
    let phat = successes as f64 / n;
    let z2 = z * z;
    let denom = 1.0 + z2 / n;
    let centre = (phat + z2 / (2.0 * n)) / denom;
    let half = z * (phat * (1.0 - phat) / n + z2 / (4.0 * n * n)).sqrt() / denom;
    ((centre - half).max(0.0), (centre + half).min(1.0))
}

/// Sample mean and standard error of the mean (0 for fewer than two values).
pub fn mean_and_stderr(xs: &[f64]) -> (f64, f64) {
    if xs.is_empty() {
        return (0.0, 0.0);
    }
    let n = xs.len() as f64;
    let mean = xs.iter().sum::<f64>() / n;
    if xs.len() < 2 {
        return (mean, 0.0);
    }
    let var = xs.iter().map(|x| (x - mean) * (x - mean)).sum::<f64>() / (n - 1.0);
    (mean, (var / n).sqrt())
}

/// Modularity of `g`: exact when every component is small enough, otherwise
/// the best of `runs` heuristic runs (a lower bound on `q*`).
pub fn score_graph(g: &Graph, runs: usize, cfg: &HeuristicConfig) -> Result<(f64, ScoreKind)> {
    if g.is_empty() {
        return Ok((0.0, ScoreKind::Exact));
    }
    if largest_component(g) <= EXACT_AUTO_LIMIT {
        let (q, _) = brute_force_qstar(g)?;
        return Ok((q.to_f64(), ScoreKind::Exact));
    }
    Ok((best_of(g, runs, cfg)?.best_score, ScoreKind::Heuristic))
}

fn largest_component(g: &Graph) -> usize {
    let comp = g.components();
    let mut size = vec![0usize; g.n()];
    let degree = g.neighbor_counts();
    for v in 0..g.n() {
        if degree[v] > 0 {
            size[comp[v]] += 1;
        }
    }
    size.into_iter().max().unwrap_or(0)
}

/// Writes the header and one row per record.
pub fn emit_csv<W: Write>(records: &[ExperimentRecord], out: W) -> Result<()> {
    let mut w = csv::WriterBuilder::new().has_headers(false).from_writer(out);
    w.write_record(CSV_HEADER)?;
    for r in records {
        w.serialize(r)?;
    }
    w.flush()?;
    Ok(())
}
