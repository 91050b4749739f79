//! Seeded local-move modularity heuristic (Louvain moves, optional
//! Leiden-style refinement before aggregation).

use rand::seq::SliceRandom;
use rayon::prelude::*;

use crate::error::{domain, Result};
use crate::graph::Graph;
use crate::partition::Partition;
use crate::sampling::RandomSource;
use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq)]
pub struct HeuristicConfig {
    /// Sweeps of local moves per aggregation level.
    pub max_sweeps: usize,
    pub refinement: bool,
    pub seed: u64,
    /// Moves must gain more than this.
    pub min_gain: f64,
}

impl Default for HeuristicConfig {
    fn default() -> Self {
        HeuristicConfig {
            max_sweeps: 100,
            refinement: true,
            seed: 0,
            min_gain: 1e-9,
        }
    }
}

impl HeuristicConfig {
    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    fn validate(&self) -> Result<()> {
        if self.max_sweeps == 0 {
            return domain("max_sweeps must be at least 1");
        }
        if self.min_gain.is_nan() || self.min_gain < 0.0 {
            return domain("min_gain must be non-negative");
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct OptimizeResult {
    pub best_partition: Partition,
    pub best_score: f64,
    pub runs: usize,
    pub per_run_scores: Vec<f64>,
    /// Score after each sweep of the best run, starting from singletons.
    pub score_trace: Vec<f64>,
}

/// Scores partitions of the input graph from integer sums, so equal
/// partitions always give bit-identical values.
struct Scorer {
    edges: Vec<(usize, usize, i128)>,
    degrees: Vec<i128>,
    volume: i128,
}

impl Scorer {
    fn new(g: &Graph) -> Result<Self> {
        let iw = g.integer_weights()?;
        Ok(Scorer {
            edges: iw.edges,
            degrees: iw.degrees,
            volume: iw.volume,
        })
    }

    fn score(&self, labels: &[usize]) -> f64 {
        let k = labels.iter().copied().max().map_or(0, |m| m + 1);
        let mut vol = vec![0i128; k];
        for (v, &d) in self.degrees.iter().enumerate() {
            vol[labels[v]] += d;
        }
        let internal: i128 = self
            .edges
            .iter()
            .filter(|(u, v, _)| labels[*u] == labels[*v])
            .map(|(_, _, w)| w)
            .sum();
        let sum_sq: i128 = vol.iter().map(|x| x * x).sum();
        let numer = 2 * internal * self.volume - sum_sq;
        f64::from_i128(numer) / f64::from_i128(self.volume * self.volume)
    }
}

/// Weighted graph at one aggregation level.
struct Level {
    adj: Vec<Vec<(usize, f64)>>,
    /// Node degree, including weight folded inside the node.
    k: Vec<f64>,
}

impl Level {
    fn from_graph(g: &Graph) -> Self {
        let mut adj = vec![Vec::new(); g.n()];
        let mut k = vec![0.0; g.n()];
        for e in g.edges() {
            let w = f64::from_weight(&e.w);
            adj[e.u].push((e.v, w));
            adj[e.v].push((e.u, w));
            k[e.u] += w;
            k[e.v] += w;
        }
        Level { adj, k }
    }

    fn n(&self) -> usize {
        self.k.len()
    }

    /// Quotient graph over `groups` (`0..count`).
    fn aggregate(&self, groups: &[usize], count: usize) -> Level {
        let mut k = vec![0.0; count];
        let mut maps: Vec<Vec<(usize, f64)>> = vec![Vec::new(); count];
        let mut slot = vec![usize::MAX; count];
        let mut members = vec![Vec::new(); count];
        for (v, &g) in groups.iter().enumerate() {
            members[g].push(v);
            k[g] += self.k[v];
        }
        for g in 0..count {
            let mut touched = Vec::new();
            for &v in &members[g] {
                for &(u, w) in &self.adj[v] {
                    let h = groups[u];
                    if h == g {
                        continue;
                    }
                    if slot[h] == usize::MAX {
                        slot[h] = maps[g].len();
                        maps[g].push((h, w));
                        touched.push(h);
                    } else {
                        maps[g][slot[h]].1 += w;
                    }
                }
            }
            for h in touched {
                slot[h] = usize::MAX;
            }
            maps[g].sort_by_key(|&(h, _)| h);
        }
        Level { adj: maps, k }
    }
}

/// Relabels by first appearance; returns the number of labels.
fn compact(labels: &mut [usize]) -> usize {
    let mut map = vec![usize::MAX; labels.iter().copied().max().map_or(0, |m| m + 1)];
    let mut next = 0;
    for l in labels.iter_mut() {
        if map[*l] == usize::MAX {
            map[*l] = next;
            next += 1;
        }
        *l = map[*l];
    }
    next
}

/// Weight from `v` to each neighboring group, in ascending group order.
fn neighbor_weights(level: &Level, v: usize, groups: &[usize], acc: &mut [f64], touched: &mut Vec<usize>) {
    touched.clear();
    for &(u, w) in &level.adj[v] {
        let c = groups[u];
        // weights are positive, so zero means not yet seen
        if acc[c] == 0.0 {
            touched.push(c);
        }
        acc[c] += w;
    }
    touched.sort_unstable();
}

struct Run<'a> {
    cfg: &'a HeuristicConfig,
    rng: RandomSource,
    m2: f64,
}

impl Run<'_> {
    /// Local moving; returns whether any node moved. Pushes the score after
    /// every sweep onto `trace` via `record`.
    fn move_nodes(&mut self, level: &Level, comm: &mut [usize], mut record: impl FnMut(&[usize])) -> bool {
        let n = level.n();
        let mut tot = vec![0.0; n];
        for v in 0..n {
            tot[comm[v]] += level.k[v];
        }
        let mut acc = vec![0.0; n];
        let mut touched = Vec::new();
        let mut order: Vec<usize> = (0..n).collect();
        let mut any = false;
        for _ in 0..self.cfg.max_sweeps {
            order.shuffle(&mut self.rng);
            let mut moved = false;
            for &v in &order {
                let kv = level.k[v];
                let a = comm[v];
                neighbor_weights(level, v, comm, &mut acc, &mut touched);
                tot[a] -= kv;
                let stay = acc[a] - tot[a] * kv / self.m2;
                let (mut best_c, mut best_gain) = (a, 0.0);
                for &c in &touched {
                    if c == a {
                        continue;
                    }
                    let gain = 2.0 * (acc[c] - tot[c] * kv / self.m2 - stay) / self.m2;
                    if gain > best_gain {
                        best_gain = gain;
                        best_c = c;
                    }
                }
                for &c in &touched {
                    acc[c] = 0.0;
                }
                acc[a] = 0.0;
                if best_gain > self.cfg.min_gain {
                    comm[v] = best_c;
                    moved = true;
                } else {
                    best_c = a;
                }
                tot[best_c] += kv;
            }
            if moved {
                any = true;
                record(comm);
            } else {
                break;
            }
        }
        any
    }

    /// Splits each community into well-connected subcommunities by merging
    /// singletons greedily. Returns the refined labels (not compacted).
    fn refine(&mut self, level: &Level, comm: &[usize]) -> Vec<usize> {
        let n = level.n();
        let ncomm = comm.iter().copied().max().map_or(0, |m| m + 1);
        let mut comm_tot = vec![0.0; ncomm];
        for v in 0..n {
            comm_tot[comm[v]] += level.k[v];
        }
        let mut sub: Vec<usize> = (0..n).collect();
        let mut sub_tot = level.k.clone();
        let mut size = vec![1usize; n];
        // weight from each subcommunity to the rest of its community
        let mut ext = vec![0.0; n];
        for v in 0..n {
            ext[v] = level.adj[v]
                .iter()
                .filter(|&&(u, _)| comm[u] == comm[v])
                .map(|&(_, w)| w)
                .sum();
        }
        let mut acc = vec![0.0; n];
        let mut touched = Vec::new();
        let mut order: Vec<usize> = (0..n).collect();
        order.shuffle(&mut self.rng);
        for &v in &order {
            if size[sub[v]] != 1 {
                continue;
            }
            let c = comm[v];
            let kv = level.k[v];
            if ext[v] < kv * (comm_tot[c] - kv) / self.m2 {
                continue;
            }
            neighbor_weights(level, v, &sub, &mut acc, &mut touched);
            let own = sub[v];
            let mut best: Option<(usize, f64)> = None;
            for &t in &touched {
                // subcommunity ids are node ids of their first member
                if t == own || comm[t] != c {
                    continue;
                }
                if ext[t] < sub_tot[t] * (comm_tot[c] - sub_tot[t]) / self.m2 {
                    continue;
                }
                let gain = acc[t] - kv * sub_tot[t] / self.m2;
                if gain >= 0.0 && best.is_none_or(|(_, g)| gain > g) {
                    best = Some((t, gain));
                }
            }
            if let Some((t, _)) = best {
                ext[t] = ext[t] + ext[v] - 2.0 * acc[t];
                sub_tot[t] += kv;
                sub_tot[own] = 0.0;
                size[t] += 1;
                size[own] = 0;
                sub[v] = t;
            }
            for &t in &touched {
                acc[t] = 0.0;
            }
        }
        sub
    }
}

/// One run of the heuristic on a non-empty graph.
pub fn local_move_heuristic(g: &Graph, cfg: &HeuristicConfig) -> Result<OptimizeResult> {
    cfg.validate()?;
    if g.is_empty() {
        return domain("the heuristic needs a graph with at least one edge");
    }
    let scorer = Scorer::new(g)?;
    let mut level = Level::from_graph(g);
    let mut run = Run {
        cfg,
        rng: RandomSource::new(cfg.seed),
        m2: level.k.iter().sum(),
    };

    // node_of[v]: the current-level node holding input vertex v
    let mut node_of: Vec<usize> = (0..g.n()).collect();
    let mut comm: Vec<usize> = (0..g.n()).collect();
    let mut trace = vec![scorer.score(&comm)];
    let lift = |node_of: &[usize], comm: &[usize]| -> Vec<usize> { node_of.iter().map(|&x| comm[x]).collect() };

    loop {
        {
            let node_of_ref = &node_of;
            let trace_ref = &mut trace;
            let scorer_ref = &scorer;
            run.move_nodes(&level, &mut comm, |c| {
                trace_ref.push(scorer_ref.score(&lift(node_of_ref, c)));
            });
        }
        let ncomm = compact(&mut comm);
        if ncomm == level.n() {
            break;
        }
        let mut groups = if cfg.refinement {
            run.refine(&level, &comm)
        } else {
            comm.clone()
        };
        let count = compact(&mut groups);
        if count == level.n() {
            break;
        }
        let mut next_comm = vec![0; count];
        for v in 0..level.n() {
            next_comm[groups[v]] = comm[v];
        }
        level = level.aggregate(&groups, count);
        for x in node_of.iter_mut() {
            *x = groups[*x];
        }
        comm = next_comm;
    }

    let labels = lift(&node_of, &comm);
    let mut partition = Partition::from_assignment(&labels);
    let mut score = scorer.score(partition.assignment());
    if score < 0.0 {
        partition = Partition::trivial(g.n());
        score = 0.0;
    }
    Ok(OptimizeResult {
        best_partition: partition,
        best_score: score,
        runs: 1,
        per_run_scores: vec![score],
        score_trace: trace,
    })
}

/// Best of `runs` heuristic runs with seeds `cfg.seed + i`. Runs execute in
/// parallel; the result does not depend on scheduling. An edgeless graph
/// yields the trivial partition with score 0.
pub fn best_of(g: &Graph, runs: usize, cfg: &HeuristicConfig) -> Result<OptimizeResult> {
    cfg.validate()?;
    if runs == 0 {
        return domain("runs must be at least 1");
    }
    if g.is_empty() {
        return Ok(OptimizeResult {
            best_partition: Partition::trivial(g.n()),
            best_score: 0.0,
            runs,
            per_run_scores: vec![0.0; runs],
            score_trace: vec![0.0],
        });
    }
    let results: Vec<OptimizeResult> = (0..runs)
        .into_par_iter()
        .map(|i| local_move_heuristic(g, &cfg.clone().with_seed(cfg.seed.wrapping_add(i as u64))))
        .collect::<Result<_>>()?;
    let per_run_scores: Vec<f64> = results.iter().map(|r| r.best_score).collect();
    let mut best = 0;
    for (i, s) in per_run_scores.iter().enumerate() {
        if *s > per_run_scores[best] {
            best = i;
        }
    }
    let winner = results.into_iter().nth(best).expect("runs >= 1");
    Ok(OptimizeResult {
        best_partition: winner.best_partition,
        best_score: winner.best_score,
        runs,
        per_run_scores,
        score_trace: winner.score_trace,
    })
}
