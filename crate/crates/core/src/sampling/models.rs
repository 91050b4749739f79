use rand::seq::index;
use rand::seq::SliceRandom;
use rand::Rng;

use crate::error::{domain, Result};
use crate::graph::{Edge, Graph};
use crate::sampling::RandomSource;
use crate::scalar::Weight;

/// Which observation model to apply.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SampleSpec {
    /// Keep each edge independently with probability `p`.
    EdgeProbability(f64),
    /// Edge-limited search with budget `c`.
    Budget(f64),
    /// Edge-limited search with budget `c · n`.
    BudgetPerVertex(f64),
    /// Induced subgraph on a uniform `k`-subset of vertices.
    Vertices(usize),
}

pub fn observe(g: &Graph, spec: SampleSpec, rng: &mut RandomSource) -> Result<Graph> {
    match spec {
        SampleSpec::EdgeProbability(p) => sample_edges(g, p, rng),
        SampleSpec::Budget(c) => edge_limited_search(g, c, rng),
        SampleSpec::BudgetPerVertex(c) => edge_limited_search(g, c * g.n() as f64, rng),
        SampleSpec::Vertices(k) => vertex_sample(g, k, rng),
    }
}

fn check_probability(p: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&p) {
        return domain(format!("probability must lie in [0, 1], got {p}"));
    }
    Ok(())
}

/// `G_p`: each edge kept with probability `p`, weight unchanged.
pub fn sample_edges(g: &Graph, p: f64, rng: &mut RandomSource) -> Result<Graph> {
    check_probability(p)?;
    Ok(g.filter_edges(|_| rng.gen_bool(p)))
}

fn budget_size(g: &Graph, c: f64) -> Result<usize> {
    if !c.is_finite() || c < 0.0 {
        return domain(format!("budget must be a finite non-negative number, got {c}"));
    }
    if !g.is_unweighted() {
        return domain("edge-limited search is defined for unweighted graphs");
    }
    Ok((c.ceil() as usize).min(g.m()))
}

/// c-edge-limited search: a uniformly random set of `min(⌈c⌉, m)` edges.
///
/// The query loop over random vertex pairs is not simulated; its output law
/// (a uniform edge subset of that size) is sampled directly.
pub fn edge_limited_search(g: &Graph, c: f64, rng: &mut RandomSource) -> Result<Graph> {
    let size = budget_size(g, c)?;
    let mut keep = vec![false; g.m()];
    for i in index::sample(rng, g.m(), size) {
        keep[i] = true;
    }
    let mut i = 0;
    Ok(g.filter_edges(|_| {
        i += 1;
        keep[i - 1]
    }))
}

/// The first `min(⌈c⌉, m)` edges of a uniformly random ordering of the
/// edges; same law as [`edge_limited_search`].
pub fn first_edges_of_random_order(g: &Graph, c: f64, rng: &mut RandomSource) -> Result<Graph> {
    let size = budget_size(g, c)?;
    let mut order: Vec<usize> = (0..g.m()).collect();
    order.shuffle(rng);
    let mut keep = vec![false; g.m()];
    for &i in &order[..size] {
        keep[i] = true;
    }
    let mut i = 0;
    Ok(g.filter_edges(|_| {
        i += 1;
        keep[i - 1]
    }))
}

/// Induced subgraph on a uniform `k`-subset; new ids follow the original
/// order and labels name the original vertices.
pub fn vertex_sample(g: &Graph, k: usize, rng: &mut RandomSource) -> Result<Graph> {
    if k == 0 || k > g.n() {
        return domain(format!("vertex sample size must lie in 1..={}, got {k}", g.n()));
    }
    let mut chosen = index::sample(rng, g.n(), k).into_vec();
    chosen.sort_unstable();
    g.induced_subgraph(&chosen)
}

/// `G(n, p)`.
pub fn erdos_renyi(n: usize, p: f64, rng: &mut RandomSource) -> Result<Graph> {
    check_probability(p)?;
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                edges.push(Edge { u, v, w: Weight::from_integer(1) });
            }
        }
    }
    Ok(Graph::from_sorted_parts(n, edges, None))
}

/// Adds a uniformly random set of `extra` non-edges (weight 1).
pub fn add_false_positives(g: &Graph, extra: usize, rng: &mut RandomSource) -> Result<Graph> {
    let n = g.n();
    let pairs = n * n.saturating_sub(1) / 2;
    let free = pairs - g.m();
    if extra > free {
        return domain(format!("asked for {extra} false positives but only {free} non-edges exist"));
    }
    if extra == 0 {
        return Ok(g.clone());
    }
    let mut non_edges = Vec::with_capacity(free);
    for u in 0..n {
        for v in u + 1..n {
            if !g.has_edge(u, v) {
                non_edges.push((u, v));
            }
        }
    }
    let mut edges = g.edges().to_vec();
    for i in index::sample(rng, free, extra) {
        let (u, v) = non_edges[i];
        edges.push(Edge { u, v, w: Weight::from_integer(1) });
    }
    edges.sort();
    Ok(Graph::from_sorted_parts(n, edges, g.labels().map(<[String]>::to_vec)))
}
