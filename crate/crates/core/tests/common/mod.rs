//! Independent reference implementations used by the integration tests.
//! Nothing here calls into the scoring or search code under test.

#![allow(dead_code)]

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use obsmod::{Exact, Graph};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn big(w: &obsmod::Weight) -> BigRational {
    BigRational::new(BigInt::from(*w.numer()), BigInt::from(*w.denom()))
}

/// Modularity from the textbook double sum over vertex pairs:
/// `(1/2W) sum_{uv} [A_uv - d_u d_v / 2W] [c_u = c_v]`, with `W` the total
/// edge weight and the sum over ordered pairs including `u = v`.
pub fn naive_modularity(g: &Graph, labels: &[usize]) -> Exact {
    let n = g.n();
    let mut a = vec![vec![BigRational::zero(); n]; n];
    for e in g.edges() {
        a[e.u][e.v] = big(&e.w);
        a[e.v][e.u] = big(&e.w);
    }
    let d: Vec<BigRational> = a
        .iter()
        .map(|row| row.iter().fold(BigRational::zero(), |s, x| s + x))
        .collect();
    let two_w = d.iter().fold(BigRational::zero(), |s, x| s + x);
    if two_w.is_zero() {
        return BigRational::zero();
    }
    let mut total = BigRational::zero();
    for u in 0..n {
        for v in 0..n {
            if labels[u] == labels[v] {
                total += &a[u][v] - &d[u] * &d[v] / &two_w;
            }
        }
    }
    total / two_w
}

/// Every set partition of `0..n` as a label vector (restricted growth strings).
pub fn all_partitions(n: usize, max_parts: usize) -> Vec<Vec<usize>> {
    fn go(i: usize, n: usize, max: usize, labels: &mut Vec<usize>, used: usize, out: &mut Vec<Vec<usize>>) {
        if i == n {
            out.push(labels.clone());
            return;
        }
        for c in 0..=used.min(max - 1) {
            labels.push(c);
            go(i + 1, n, max, labels, used.max(c + 1), out);
            labels.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, max_parts.max(1), &mut Vec::new(), 0, &mut out);
    out
}

/// Maximum of `naive_modularity` over all partitions with at most `k` parts.
pub fn naive_q_at_most_k(g: &Graph, k: usize) -> Exact {
    all_partitions(g.n(), k)
        .iter()
        .map(|l| naive_modularity(g, l))
        .fold(BigRational::zero(), |a, b| if b > a { b } else { a })
}

pub fn naive_qstar(g: &Graph) -> Exact {
    naive_q_at_most_k(g, g.n().max(1))
}

/// Random simple graph: each pair present with probability `p`.
pub fn random_graph(r: &mut impl Rng, n: usize, p: f64) -> Graph {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if r.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edges(n, edges).unwrap()
}

/// Random simple graph with at least one edge.
pub fn random_nonempty_graph(r: &mut impl Rng, n: usize, p: f64) -> Graph {
    loop {
        let g = random_graph(r, n, p);
        if !g.is_empty() {
            return g;
        }
    }
}

pub fn random_labels(r: &mut impl Rng, n: usize, max_parts: usize) -> Vec<usize> {
    (0..n).map(|_| r.gen_range(0..max_parts)).collect()
}

/// One representative per isomorphism class of simple graphs on `n` vertices,
/// found by brute-force canonical forms (smallest adjacency bitmask over all
/// vertex permutations).
pub fn isomorphism_classes(n: usize) -> Vec<Graph> {
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
    let perms = permutations(n);
    let index = |u: usize, v: usize| {
        let (a, b) = if u < v { (u, v) } else { (v, u) };
        pairs.iter().position(|&p| p == (a, b)).unwrap()
    };
    let mut seen = std::collections::BTreeSet::new();
    let mut reps = Vec::new();
    for mask in 0u64..(1 << pairs.len()) {
        let canon = perms
            .iter()
            .map(|pi| {
                pairs
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| mask >> i & 1 == 1)
                    .fold(0u64, |acc, (_, &(u, v))| acc | 1 << index(pi[u], pi[v]))
            })
            .min()
            .unwrap();
        if seen.insert(canon) {
            let edges = pairs.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &e)| e);
            reps.push(Graph::from_edges(n, edges).unwrap());
        }
    }
    reps
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for i in 0..=p.len() {
            let mut q = p.clone();
            q.insert(i, n - 1);
            out.push(q);
        }
    }
    out
}

/// `max over subsets S of min(sum S, 1 - sum S)` by plain subset enumeration.
pub fn naive_lambda(x: &[Exact]) -> Exact {
    let total = x.iter().fold(BigRational::zero(), |s, v| s + v);
    let mut best = BigRational::zero();
    for mask in 0u64..(1 << x.len()) {
        let s = x
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .fold(BigRational::zero(), |s, (_, v)| s + v);
        let rest = &total - &s;
        let m = if s < rest { s } else { rest };
        if m > best {
            best = m;
        }
    }
    best
}

/// Positive rationals with a shared random denominator, normalized to sum 1.
pub fn random_weight_vector(r: &mut impl Rng, n: usize) -> Vec<Exact> {
    let raw: Vec<i64> = (0..n).map(|_| r.gen_range(1..=1000)).collect();
    let total: i64 = raw.iter().sum();
    raw.iter().map(|&a| BigRational::new(a.into(), total.into())).collect()
}

pub fn sum_sq(x: &[Exact]) -> Exact {
    x.iter().fold(BigRational::zero(), |s, v| s + v * v)
}

/// Volume of each part of a label vector.
pub fn part_volumes(g: &Graph, labels: &[usize]) -> Vec<Exact> {
    let k = labels.iter().max().map_or(0, |m| m + 1);
    let mut vol = vec![BigRational::zero(); k];
    for e in g.edges() {
        vol[labels[e.u]] += big(&e.w);
        vol[labels[e.v]] += big(&e.w);
    }
    vol
}
