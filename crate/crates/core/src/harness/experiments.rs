use std::time::Instant;

use num_rational::BigRational;
use rand::{Rng, RngCore};
use rayon::prelude::*;

use super::{mean_and_stderr, score_graph, wilson_interval, ExperimentRecord, ScoreKind, Verdict, Z95};
use crate::error::{domain, Error, Result};
use crate::fattening::fatten;
use crate::graph::Graph;
use crate::modularity::modularity_f64;
use crate::optimize::HeuristicConfig;
use crate::partition::Partition;
use crate::sampling::{erdos_renyi, sample_edges, RandomSource};
use crate::scalar::{Exact, Scalar};

#[derive(Debug, Clone, PartialEq)]
pub struct SweepConfig {
    pub grid: Vec<f64>,
    pub replicates: usize,
    /// Heuristic runs per replicate (best of).
    pub runs: usize,
    pub seed: u64,
    /// Horizontal jitter for scatter plots.
    pub jitter: f64,
    pub heuristic: HeuristicConfig,
    /// Record wall time per replicate (makes output non-reproducible).
    pub timing: bool,
}

impl Default for SweepConfig {
    fn default() -> Self {
        SweepConfig {
            grid: (1..=9).map(|i| i as f64 / 10.0).collect(),
            replicates: 50,
            runs: 200,
            seed: 0,
            jitter: 0.0,
            heuristic: HeuristicConfig::default(),
            timing: false,
        }
    }
}

impl SweepConfig {
    fn validate(&self) -> Result<()> {
        if self.grid.is_empty() {
            return domain("parameter grid is empty");
        }
        if self.replicates == 0 || self.runs == 0 {
            return domain("replicates and runs must be at least 1");
        }
        check_probabilities(&self.grid)
    }
}

fn check_probabilities(ps: &[f64]) -> Result<()> {
    if let Some(p) = ps.iter().find(|p| !(0.0..=1.0).contains(*p)) {
        return domain(format!("probability {p} is outside [0, 1]"));
    }
    Ok(())
}

/// Scores `G_p` for the replicate identified by `seed`.
pub fn edge_sample_replicate(
    g: &Graph,
    p: f64,
    seed: u64,
    runs: usize,
    cfg: &HeuristicConfig,
) -> Result<(f64, ScoreKind)> {
    let mut rng = RandomSource::new(seed);
    let gp = sample_edges(g, p, &mut rng)?;
    score_graph(&gp, runs, &cfg.clone().with_seed(rng.next_u64()))
}

/// Scores `G(n, c/n)` for the replicate identified by `seed`.
pub fn er_replicate(n: usize, c: f64, seed: u64, runs: usize, cfg: &HeuristicConfig) -> Result<(f64, ScoreKind)> {
    let mut rng = RandomSource::new(seed);
    let g = erdos_renyi(n, c / n as f64, &mut rng)?;
    score_graph(&g, runs, &cfg.clone().with_seed(rng.next_u64()))
}

/// Runs `reps` replicates at every point, in parallel, returning records in
/// (point, replicate) order. Replicate `r` of point `i` gets child seed
/// `i · reps + r` of `master`.
fn run_replicates<F>(
    experiment: &str,
    param_name: &str,
    points: &[f64],
    reps: usize,
    master: u64,
    timing: bool,
    f: F,
) -> Result<Vec<ExperimentRecord>>
where
    F: Fn(f64, u64) -> Result<(f64, ScoreKind)> + Sync,
{
    let root = RandomSource::new(master);
    (0..points.len() * reps)
        .into_par_iter()
        .map(|task| {
            let (i, r) = (task / reps, task % reps);
            let seed = root.child_seed(task as u64);
            let start = Instant::now();
            let (score, kind) = f(points[i], seed)?;
            Ok(ExperimentRecord {
                experiment: experiment.to_owned(),
                param_name: param_name.to_owned(),
                param_value: points[i],
                replicate: r,
                seed,
                score,
                score_kind: kind,
                runtime_ms: if timing { start.elapsed().as_millis() as u64 } else { 0 },
            })
        })
        .collect()
}

/// Sampled-graph modularity over a grid of `p`: one record per
/// (p, replicate).
pub fn fig1_sweep(g: &Graph, cfg: &SweepConfig) -> Result<Vec<ExperimentRecord>> {
    cfg.validate()?;
    if g.is_empty() {
        return domain("the sweep needs a graph with at least one edge");
    }
    run_replicates("fig1", "p", &cfg.grid, cfg.replicates, cfg.seed, cfg.timing, |p, seed| {
        edge_sample_replicate(g, p, seed, cfg.runs, &cfg.heuristic)
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct PointSummary {
    pub param_value: f64,
    pub count: usize,
    pub mean: f64,
    pub stderr: f64,
    pub min: f64,
    pub max: f64,
}

/// Per-parameter summaries, in order of first appearance.
pub fn fig1_summary(records: &[ExperimentRecord]) -> Vec<PointSummary> {
    let mut keys: Vec<f64> = Vec::new();
    for r in records {
        if !keys.contains(&r.param_value) {
            keys.push(r.param_value);
        }
    }
    keys.into_iter()
        .map(|k| {
            let xs: Vec<f64> = records.iter().filter(|r| r.param_value == k).map(|r| r.score).collect();
            let (mean, stderr) = mean_and_stderr(&xs);
            PointSummary {
                param_value: k,
                count: xs.len(),
                mean,
                stderr,
                min: xs.iter().copied().fold(f64::INFINITY, f64::min),
                max: xs.iter().copied().fold(f64::NEG_INFINITY, f64::max),
            }
        })
        .collect()
}

/// Reference value of `q*(G)` for the sampling checks.
#[derive(Debug, Clone, PartialEq)]
pub enum Reference {
    Exact(Exact),
    /// A heuristic estimate, flagged as such in reports.
    Heuristic(f64),
}

impl Reference {
    pub fn value(&self) -> f64 {
        match self {
            Reference::Exact(q) => q.to_f64(),
            Reference::Heuristic(q) => *q,
        }
    }

    pub fn kind(&self) -> ScoreKind {
        match self {
            Reference::Exact(_) => ScoreKind::Exact,
            Reference::Heuristic(_) => ScoreKind::Heuristic,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Theorem1Report {
    pub p: f64,
    pub eps: f64,
    pub reference: f64,
    pub reference_kind: ScoreKind,
    /// Replicates with `q(G_p) ≤ reference − eps`.
    pub failures: usize,
    /// Replicates with `q(G_p) = 0`.
    pub zeros: usize,
    pub reps: usize,
    pub fraction: f64,
    /// Wilson 95% interval for the failure fraction.
    pub ci: (f64, f64),
    pub records: Vec<ExperimentRecord>,
}

/// Fraction of `G_p` replicates whose modularity falls to `q*(G) − eps` or
/// below.
#[allow(clippy::too_many_arguments)]
pub fn theorem1_check(
    g: &Graph,
    p: f64,
    eps: f64,
    reps: usize,
    reference: &Reference,
    runs: usize,
    cfg: &HeuristicConfig,
    seed: u64,
) -> Result<Theorem1Report> {
    check_probabilities(&[p])?;
    if reps == 0 || runs == 0 {
        return domain("reps and runs must be at least 1");
    }
    let records = run_replicates("thm1", "p", &[p], reps, seed, false, |p, s| {
        edge_sample_replicate(g, p, s, runs, cfg)
    })?;
    let threshold = reference.value() - eps;
    let failures = records.iter().filter(|r| r.score <= threshold).count();
    let zeros = records.iter().filter(|r| r.score == 0.0).count();
    Ok(Theorem1Report {
        p,
        eps,
        reference: reference.value(),
        reference_kind: reference.kind(),
        failures,
        zeros,
        reps,
        fraction: failures as f64 / reps as f64,
        ci: wilson_interval(failures, reps, Z95),
        records,
    })
}

/// The partition `A′` built from the observed graph alone: `a` fattened at
/// `eta`.
pub fn theorem2_translate(g_observed: &Graph, a: &Partition, eta: f64) -> Result<Partition> {
    let eta = BigRational::from_float(eta).ok_or_else(|| Error::Domain(format!("eta {eta} is not finite")))?;
    fatten(g_observed, &eta, a)
}

#[derive(Debug, Clone, PartialEq)]
pub struct Theorem2Case {
    pub seed: u64,
    /// `δ_A(G_p)`.
    pub observed_deficit: f64,
    /// `δ_{A′}(G)`.
    pub true_deficit: f64,
    /// Exact when both optima were found by exhaustive search.
    pub kind: ScoreKind,
    pub satisfied: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Theorem2Report {
    pub eta: f64,
    pub slack: f64,
    pub satisfied: usize,
    pub reps: usize,
    pub fraction: f64,
    pub ci: (f64, f64),
    pub cases: Vec<Theorem2Case>,
}

/// For random partitions `A` of `G_p`, checks
/// `δ_{A′}(G) ≤ δ_A(G_p) + 2·eta + slack` with `A′` from
/// [`theorem2_translate`]. Optima are exact on small graphs and heuristic
/// otherwise; `slack` absorbs heuristic error.
#[allow(clippy::too_many_arguments)]
pub fn theorem2_check(
    g: &Graph,
    p: f64,
    eta: f64,
    reps: usize,
    runs: usize,
    cfg: &HeuristicConfig,
    seed: u64,
    slack: f64,
) -> Result<Theorem2Report> {
    check_probabilities(&[p])?;
    if g.is_empty() {
        return domain("the check needs a graph with at least one edge");
    }
    if reps == 0 {
        return domain("reps must be at least 1");
    }
    let (q_true, true_kind) = score_graph(g, runs, &cfg.clone().with_seed(seed))?;
    let root = RandomSource::new(seed);
    let cases: Vec<Theorem2Case> = (0..reps)
        .into_par_iter()
        .map(|r| {
            let s = root.child_seed(r as u64);
            let mut rng = RandomSource::new(s);
            let gp = sample_edges(g, p, &mut rng)?;
            let parts = rng.gen_range(1..=8usize);
            let labels: Vec<usize> = (0..g.n()).map(|_| rng.gen_range(0..parts)).collect();
            let a = Partition::from_assignment(&labels);
            let (q_obs, obs_kind) = score_graph(&gp, runs, &cfg.clone().with_seed(rng.next_u64()))?;
            let observed_deficit = q_obs - modularity_f64(&gp, &a)?.score;
            // A′ needs a non-empty observed graph; otherwise A itself is used
            let a_prime = if gp.is_empty() { a } else { theorem2_translate(&gp, &a, eta)? };
            let true_deficit = q_true - modularity_f64(g, &a_prime)?.score;
            let kind = if true_kind == ScoreKind::Exact && obs_kind == ScoreKind::Exact {
                ScoreKind::Exact
            } else {
                ScoreKind::Heuristic
            };
            Ok(Theorem2Case {
                seed: s,
                observed_deficit,
                true_deficit,
                kind,
                satisfied: true_deficit <= observed_deficit + 2.0 * eta + slack,
            })
        })
        .collect::<Result<_>>()?;
    let satisfied = cases.iter().filter(|c| c.satisfied).count();
    Ok(Theorem2Report {
        eta,
        slack,
        satisfied,
        reps,
        fraction: satisfied as f64 / reps as f64,
        ci: wilson_interval(satisfied, reps, Z95),
        cases,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct QbarEstimate {
    pub n: usize,
    pub c: f64,
    pub mean: f64,
    pub stderr: f64,
    pub records: Vec<ExperimentRecord>,
}

/// Monte-Carlo mean of the modularity of `G(n, c/n)`. Heuristic replicates
/// make this a lower-bound estimate.
pub fn qbar_estimate(
    n: usize,
    c: f64,
    reps: usize,
    runs: usize,
    cfg: &HeuristicConfig,
    seed: u64,
) -> Result<QbarEstimate> {
    if n == 0 || !(0.0..=n as f64).contains(&c) {
        return domain(format!("need n >= 1 and 0 <= c <= n, got n = {n}, c = {c}"));
    }
    if reps == 0 || runs == 0 {
        return domain("reps and runs must be at least 1");
    }
    let records = run_replicates("qbar", "c", &[c], reps, seed, false, |c, s| er_replicate(n, c, s, runs, cfg))?;
    let scores: Vec<f64> = records.iter().map(|r| r.score).collect();
    let (mean, stderr) = mean_and_stderr(&scores);
    Ok(QbarEstimate {
        n,
        c,
        mean,
        stderr,
        records,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct MonotonicityReport {
    pub estimates: Vec<QbarEstimate>,
    pub verdict: Verdict,
}

/// Checks that the estimates of `q̄(n, c)` do not increase along `cs`
/// (ascending). Any significant increase between neighbours fails; otherwise
/// the chain holds if its ends are significantly apart and is inconclusive
/// when all intervals overlap.
pub fn qbar_monotonicity(
    n: usize,
    cs: &[f64],
    reps: usize,
    runs: usize,
    cfg: &HeuristicConfig,
    seed: u64,
) -> Result<MonotonicityReport> {
    if cs.len() < 2 || cs.windows(2).any(|w| w[0] >= w[1]) {
        return domain("need at least two strictly increasing values of c");
    }
    let root = RandomSource::new(seed);
    let estimates = cs
        .iter()
        .enumerate()
        .map(|(i, &c)| qbar_estimate(n, c, reps, runs, cfg, root.child_seed(i as u64)))
        .collect::<Result<Vec<_>>>()?;
    let separated = |a: &QbarEstimate, b: &QbarEstimate| {
        // b significantly above a
        let se = (a.stderr * a.stderr + b.stderr * b.stderr).sqrt();
        b.mean - a.mean > Z95 * se
    };
    let verdict = if estimates.windows(2).any(|w| separated(&w[0], &w[1])) {
        Verdict::Fails
    } else if separated(estimates.last().expect("two estimates"), &estimates[0]) {
        Verdict::Holds
    } else {
        Verdict::Inconclusive
    };
    Ok(MonotonicityReport { estimates, verdict })
}

#[derive(Debug, Clone, PartialEq)]
pub struct UndersamplingReport {
    pub p0: f64,
    pub eps_tol: f64,
    pub p0_summary: PointSummary,
    pub points: Vec<PointSummary>,
    pub verdict: Verdict,
    pub records: Vec<ExperimentRecord>,
}

/// Compares the mean modularity at `p0` with the largest mean over `grid`,
/// allowing `eps_tol`: holds when `mean(p0) ≥ max − eps_tol` with 95%
/// confidence, fails when the opposite is significant.
#[allow(clippy::too_many_arguments)]
pub fn undersampling_check(
    h: &Graph,
    p0: f64,
    grid: &[f64],
    reps: usize,
    runs: usize,
    cfg: &HeuristicConfig,
    seed: u64,
    eps_tol: f64,
) -> Result<UndersamplingReport> {
    check_probabilities(grid)?;
    check_probabilities(&[p0])?;
    if grid.is_empty() || grid.iter().any(|&p| p < p0) {
        return domain("p0 must not exceed any grid value");
    }
    if reps == 0 || runs == 0 {
        return domain("reps and runs must be at least 1");
    }
    let mut points = vec![p0];
    points.extend(grid.iter().copied().filter(|&p| p != p0));
    let records = run_replicates("undersample", "p", &points, reps, seed, false, |p, s| {
        edge_sample_replicate(h, p, s, runs, cfg)
    })?;
    let summaries = super::fig1_summary(&records);
    let p0_summary = summaries[0].clone();
    let grid_points: Vec<PointSummary> = summaries
        .iter()
        .filter(|s| grid.contains(&s.param_value))
        .cloned()
        .collect();
    let top = grid_points
        .iter()
        .fold(None::<&PointSummary>, |best, s| match best {
            Some(b) if b.mean >= s.mean => Some(b),
            _ => Some(s),
        })
        .expect("grid is non-empty");
    let verdict = if top.param_value == p0 {
        Verdict::Holds
    } else {
        let d = p0_summary.mean - (top.mean - eps_tol);
        let se = (p0_summary.stderr.powi(2) + top.stderr.powi(2)).sqrt();
        if d - Z95 * se >= 0.0 {
            Verdict::Holds
        } else if d + Z95 * se < 0.0 {
            Verdict::Fails
        } else {
            Verdict::Inconclusive
        }
    };
    Ok(UndersamplingReport {
        p0,
        eps_tol,
        p0_summary,
        points: grid_points,
        verdict,
        records,
    })
}
