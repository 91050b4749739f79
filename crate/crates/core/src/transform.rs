//! Deterministic graph transforms and graph-to-graph distances.

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::error::{domain, resource, Result};
use crate::graph::{Edge, Graph};
use crate::scalar::Exact;

/// Default vertex limit for [`cut_distance`].
pub const CUT_DISTANCE_LIMIT: usize = 14;

/// The b-blow-up: every vertex becomes `b` mutually non-adjacent copies and
/// copies of adjacent vertices are fully joined with the original weight.
///
/// Copy `c` of vertex `i` gets id `i * b + c`.
pub fn blow_up(g: &Graph, b: usize) -> Result<Graph> {
    if b == 0 {
        return domain("blow-up factor must be at least 1");
    }
    if b == 1 {
        return Ok(g.clone());
    }
    let mut edges = Vec::with_capacity(g.m() * b * b);
    for e in g.edges() {
        for cu in 0..b {
            for cv in 0..b {
                edges.push(Edge {
                    u: e.u * b + cu,
                    v: e.v * b + cv,
                    w: e.w,
                });
            }
        }
    }
    edges.sort();
    let labels = g.labels().map(|ls| {
        ls.iter()
            .flat_map(|l| (0..b).map(move |c| format!("{l}#{c}")))
            .collect()
    });
    Ok(Graph::from_sorted_parts(g.n() * b, edges, labels))
}

/// Appends `t` isolated vertices.
pub fn add_isolated_vertices(g: &Graph, t: usize) -> Graph {
    let labels = g.labels().map(|ls| {
        let mut ls = ls.to_vec();
        let mut next = g.n();
        for _ in 0..t {
            // avoid clashing with an existing token
            while ls.iter().any(|l| *l == next.to_string()) {
                next += 1;
            }
            ls.push(next.to_string());
            next += 1;
        }
        ls
    });
    Graph::from_sorted_parts(g.n() + t, g.edges().to_vec(), labels)
}

/// Cut distance between two unweighted graphs on the same vertex set:
/// `n^-2 max_{S,T} |e_G(S,T) - e_H(S,T)|`, with `e(S,T)` counting ordered
/// adjacent pairs. Exact, over all `(S, T)`.
pub fn cut_distance(g: &Graph, h: &Graph) -> Result<Exact> {
    cut_distance_with_limit(g, h, CUT_DISTANCE_LIMIT)
}

pub fn cut_distance_with_limit(g: &Graph, h: &Graph, limit: usize) -> Result<Exact> {
    if g.n() != h.n() {
        return domain(format!(
            "cut distance needs equal vertex counts ({} vs {})",
            g.n(),
            h.n()
        ));
    }
    if !g.is_unweighted() || !h.is_unweighted() {
        return domain("cut distance is defined here for unweighted graphs");
    }
    let n = g.n();
    if n > limit {
        return resource(format!("cut distance enumerates 2^n sets; n = {n} exceeds limit {limit}"));
    }
    if n == 0 {
        return Ok(Exact::from_integer(BigInt::from(0)));
    }

    let mut diff = vec![vec![0i64; n]; n];
    for e in g.edges() {
        diff[e.u][e.v] += 1;
        diff[e.v][e.u] += 1;
    }
    for e in h.edges() {
        diff[e.u][e.v] -= 1;
        diff[e.v][e.u] -= 1;
    }

    // For fixed S the best T takes all positive (or all negative) column sums.
    // S runs over a Gray code so each step updates the column sums in O(n).
    let mut col = vec![0i64; n];
    let mut in_s = vec![false; n];
    let mut best = 0i64;
    for step in 1u64..(1u64 << n) {
        let flip = step.trailing_zeros() as usize;
        let sign = if in_s[flip] { -1 } else { 1 };
        in_s[flip] = !in_s[flip];
        for (c, d) in col.iter_mut().zip(&diff[flip]) {
            *c += sign * d;
        }
        let pos: i64 = col.iter().filter(|&&c| c > 0).sum();
        let neg: i64 = col.iter().filter(|&&c| c < 0).sum();
        best = best.max(pos).max(-neg);
    }
    Ok(BigRational::new(
        BigInt::from(best),
        BigInt::from((n * n) as i64),
    ))
}

/// `2 |E Δ E'| / max(|E|, |E'|)`, the certified bound on how far modularity
/// can move between two unweighted graphs on the same vertex set.
pub fn similarity_bound(g: &Graph, h: &Graph) -> Result<Exact> {
    if g.n() != h.n() {
        return domain(format!(
            "graphs must share a vertex set ({} vs {} vertices)",
            g.n(),
            h.n()
        ));
    }
    if !g.is_unweighted() || !h.is_unweighted() {
        return domain("similarity bound is defined for unweighted graphs");
    }
    if g.is_empty() && h.is_empty() {
        return domain("similarity bound is undefined when both graphs are empty");
    }
    let sym = symmetric_difference(g, h);
    let denom = g.m().max(h.m());
    Ok(BigRational::new(
        BigInt::from(2 * sym),
        BigInt::from(denom),
    ))
}

/// Size of the symmetric difference of the two edge sets.
pub fn symmetric_difference(g: &Graph, h: &Graph) -> usize {
    let (a, b) = (g.edges(), h.edges());
    let (mut i, mut j, mut count) = (0, 0, 0);
    while i < a.len() && j < b.len() {
        match (a[i].u, a[i].v).cmp(&(b[j].u, b[j].v)) {
            std::cmp::Ordering::Less => {
                count += 1;
                i += 1;
            }
            std::cmp::Ordering::Greater => {
                count += 1;
                j += 1;
            }
            std::cmp::Ordering::Equal => {
                i += 1;
                j += 1;
            }
        }
    }
    count + (a.len() - i) + (b.len() - j)
}
