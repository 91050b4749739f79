//! Exhaustive modularity maximization over set partitions.
//!
//! Partitions are enumerated as restricted-growth strings with an integer
//! objective `2·I·VOL − Σ vol_j²` (that is, `q · VOL²`), updated per vertex.
//! Isolated vertices never change any term and are left out.
//!
//! For `q*` each connected component is searched on its own: splitting a part
//! along component boundaries keeps its internal weight and lowers the degree
//! tax, so some optimum never mixes components, and the objective is a sum over
//! components.

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::error::{domain, resource, Result};
use crate::graph::Graph;
use crate::partition::Partition;
use crate::scalar::Exact;

/// Largest vertex set searched exhaustively (Bell(13) ≈ 2.8·10⁷ partitions).
pub const BRUTE_FORCE_LIMIT: usize = 13;

/// Search over partitions of `verts` (global ids, increasing) into at most
/// `max_parts` parts.
struct Search {
    /// Weighted links from each local vertex to earlier local vertices.
    back: Vec<Vec<(usize, i128)>>,
    deg: Vec<i128>,
    /// For pruning: `2·VOL·(weight of edges touching vertices ≥ i) − Σ_{j ≥ i} d_j²`.
    tail_bound: Vec<i128>,
    two_vol: i128,
    max_parts: usize,

    labels: Vec<usize>,
    part_vol: Vec<i128>,
    /// Row `i` holds the weight from vertex `i` into each open part.
    links: Vec<i128>,
    best: Option<i128>,
    best_labels: Vec<usize>,
}

impl Search {
    fn new(verts: &[usize], weights: &[(usize, usize, i128)], degrees: &[i128], volume: i128, max_parts: usize) -> Self {
        let s = verts.len();
        let mut local = vec![usize::MAX; degrees.len()];
        for (i, &v) in verts.iter().enumerate() {
            local[v] = i;
        }
        let mut back = vec![Vec::new(); s];
        let mut touching = vec![0i128; s + 1];
        for &(u, v, w) in weights {
            let (a, b) = (local[u], local[v]);
            if a == usize::MAX || b == usize::MAX {
                continue;
            }
            let (lo, hi) = if a < b { (a, b) } else { (b, a) };
            back[hi].push((lo, w));
            // the edge stops being "open" once its later endpoint is placed
            touching[hi] += w;
        }
        let deg: Vec<i128> = verts.iter().map(|&v| degrees[v]).collect();
        let mut tail_bound = vec![0i128; s + 1];
        for i in (0..s).rev() {
            tail_bound[i] = tail_bound[i + 1] + 2 * volume * touching[i] - deg[i] * deg[i];
        }
        Search {
            back,
            deg,
            tail_bound,
            two_vol: 2 * volume,
            max_parts,
            labels: vec![0; s],
            part_vol: Vec::with_capacity(s),
            links: vec![0; s * (s + 1)],
            best: None,
            best_labels: Vec::new(),
        }
    }

    fn run(mut self) -> (i128, Vec<usize>) {
        if self.deg.is_empty() {
            return (0, Vec::new());
        }
        self.descend(0, 0);
        (self.best.unwrap_or(0), self.best_labels)
    }

    fn descend(&mut self, i: usize, score: i128) {
        let s = self.deg.len();
        if i == s {
            // lexicographic visiting order: the first optimum found is the least
            if self.best.is_none_or(|b| score > b) {
                self.best = Some(score);
                self.best_labels = self.labels.clone();
            }
            return;
        }
        if let Some(b) = self.best {
            if score + self.tail_bound[i] <= b {
                return;
            }
        }
        let k = self.part_vol.len();
        let row = i * (s + 1);
        self.links[row..row + k + 1].fill(0);
        for &(j, w) in &self.back[i] {
            self.links[row + self.labels[j]] += w;
        }
        let d = self.deg[i];
        let open = k + usize::from(k < self.max_parts);
        for p in 0..open {
            let vol = if p < k { self.part_vol[p] } else { 0 };
            let delta = self.two_vol * self.links[row + p] - (2 * vol * d + d * d);
            self.labels[i] = p;
            if p == k {
                self.part_vol.push(d);
            } else {
                self.part_vol[p] += d;
            }
            self.descend(i + 1, score + delta);
            if p == k {
                self.part_vol.pop();
            } else {
                self.part_vol[p] -= d;
            }
        }
    }
}

struct Prepared {
    weights: Vec<(usize, usize, i128)>,
    degrees: Vec<i128>,
    volume: i128,
    active: Vec<usize>,
}

fn prepare(g: &Graph) -> Result<Prepared> {
    let iw = g.integer_weights()?;
    if iw.volume.checked_mul(iw.volume).is_none() {
        return resource("squared volume overflows i128");
    }
    let active = (0..g.n()).filter(|&v| iw.degrees[v] != 0).collect();
    Ok(Prepared {
        weights: iw.edges,
        degrees: iw.degrees,
        volume: iw.volume,
        active,
    })
}

fn too_large<T>(n: usize, limit: usize) -> Result<T> {
    resource(format!(
        "exhaustive search over {n} non-isolated vertices exceeds limit {limit}"
    ))
}

fn to_exact(numer: i128, volume: i128) -> Exact {
    if volume == 0 {
        return Exact::from_integer(BigInt::from(0));
    }
    BigRational::new(BigInt::from(numer), BigInt::from(volume) * BigInt::from(volume))
}

/// Exact `q*` and the lexicographically least canonical optimal partition.
pub fn brute_force_qstar(g: &Graph) -> Result<(Exact, Partition)> {
    brute_force_qstar_with_limit(g, BRUTE_FORCE_LIMIT)
}

/// As [`brute_force_qstar`]; `limit` bounds the size of each connected
/// component that is searched.
pub fn brute_force_qstar_with_limit(g: &Graph, limit: usize) -> Result<(Exact, Partition)> {
    let prep = prepare(g)?;
    if prep.active.is_empty() {
        return Ok((to_exact(0, 0), Partition::trivial(g.n())));
    }
    let comp = g.components();
    let ncomp = comp.iter().copied().max().map_or(0, |c| c + 1);
    let mut members = vec![Vec::new(); ncomp];
    for &v in &prep.active {
        members[comp[v]].push(v);
    }
    members.retain(|m| !m.is_empty());
    if let Some(big) = members.iter().find(|m| m.len() > limit) {
        return too_large(big.len(), limit);
    }

    let mut total = 0i128;
    let mut label = vec![usize::MAX; g.n()];
    let mut next = 0;
    for m in &members {
        let search = Search::new(m, &prep.weights, &prep.degrees, prep.volume, m.len());
        let (score, local) = search.run();
        total += score;
        let base = next;
        for (i, &v) in m.iter().enumerate() {
            label[v] = base + local[i];
            next = next.max(base + local[i] + 1);
        }
    }
    // isolated vertices join the part of the first non-isolated vertex
    let anchor = label[prep.active[0]];
    for l in label.iter_mut().filter(|l| **l == usize::MAX) {
        *l = anchor;
    }
    Ok((to_exact(total, prep.volume), Partition::from_assignment(&label)))
}

/// Exact maximum modularity over partitions with at most `k` parts.
pub fn brute_force_q_at_most_k(g: &Graph, k: usize) -> Result<Exact> {
    brute_force_q_at_most_k_with_limit(g, k, BRUTE_FORCE_LIMIT)
}

pub fn brute_force_q_at_most_k_with_limit(g: &Graph, k: usize, limit: usize) -> Result<Exact> {
    if k == 0 {
        return domain("k must be at least 1");
    }
    let prep = prepare(g)?;
    if prep.active.len() > limit {
        return too_large(prep.active.len(), limit);
    }
    let (score, _) = Search::new(&prep.active, &prep.weights, &prep.degrees, prep.volume, k).run();
    Ok(to_exact(score, prep.volume))
}
