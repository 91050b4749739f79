//! Deterministic constructions for the worked examples.

use crate::error::{domain, Result};
use crate::graph::Graph;

fn clique_edges(base: usize, size: usize) -> impl Iterator<Item = (usize, usize)> {
    (0..size).flat_map(move |i| (i + 1..size).map(move |j| (base + i, base + j)))
}

/// `k` disjoint triangles; triangle `t` is `{3t, 3t+1, 3t+2}`.
pub fn gen_triangles(k: usize) -> Graph {
    Graph::from_edges(3 * k, (0..k).flat_map(|t| clique_edges(3 * t, 3)))
        .expect("triangle edges are valid")
}

/// A star with `m − k` edges (center 0, leaves `1..=m−k`) plus `k` disjoint
/// edges on the following vertices. Needs `k + 1 < m`.
pub fn gen_star_plus_matching(m: usize, k: usize) -> Result<Graph> {
    if k + 1 >= m {
        return domain(format!("need k + 1 < m, got m = {m}, k = {k}"));
    }
    let leaves = m - k;
    let start = leaves + 1;
    let star = (1..=leaves).map(|l| (0, l));
    let matching = (0..k).map(|i| (start + 2 * i, start + 2 * i + 1));
    Graph::from_edges(start + 2 * k, star.chain(matching))
}

/// Two disjoint cliques on the first and last `n/2` vertices.
pub fn gen_two_cliques(n: usize) -> Result<Graph> {
    if n < 4 || n % 2 == 1 {
        return domain(format!("two-clique graph needs an even n >= 4, got {n}"));
    }
    let h = n / 2;
    Graph::from_edges(n, clique_edges(0, h).chain(clique_edges(h, h)))
}

/// `K_k` on `0..k` plus `t` disjoint edges on the next `2t` vertices.
pub fn gen_clique_plus_matching(k: usize, t: usize) -> Result<Graph> {
    if k < 2 {
        return domain(format!("clique size must be at least 2, got {k}"));
    }
    let matching = (0..t).map(|i| (k + 2 * i, k + 2 * i + 1));
    Graph::from_edges(k + 2 * t, clique_edges(0, k).chain(matching))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shapes() {
        let t = gen_triangles(3);
        assert_eq!((t.n(), t.m()), (9, 9));
        let s = gen_star_plus_matching(6, 2).unwrap();
        assert_eq!((s.n(), s.m()), (9, 6));
        assert!(gen_star_plus_matching(3, 2).is_err());
        let c = gen_two_cliques(8).unwrap();
        assert_eq!((c.n(), c.m()), (8, 12));
        assert!(gen_two_cliques(7).is_err());
        assert!(gen_two_cliques(2).is_err());
        let cm = gen_clique_plus_matching(3, 3).unwrap();
        assert_eq!((cm.n(), cm.m()), (9, 6));
        assert!(gen_clique_plus_matching(1, 2).is_err());
    }
}
