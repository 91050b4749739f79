//! Number partitioning and the fattening (greedy amalgamation) algorithm.
//!
//! Every routine here is generic over [`Scalar`], so the same code runs in
//! exact rationals and in `f64`. Operation counters tally the comparisons and
//! additions of the greedy loops; the initial descending sort is setup and is
//! not counted.

use std::cmp::Ordering;

use crate::error::{domain, resource, Result};
use crate::graph::Graph;
use crate::modularity::check_partition;
use crate::partition::Partition;
use crate::scalar::Scalar;

/// Default size limit for [`lambda_exact`].
pub const LAMBDA_LIMIT: usize = 24;

/// Positive entries normalized to sum to one.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightVector<T> {
    x: Vec<T>,
    order: Vec<usize>,
}

impl<T: Scalar> WeightVector<T> {
    /// Normalizes `values`, which must be non-empty and strictly positive.
    pub fn new(values: Vec<T>) -> Result<Self> {
        if values.is_empty() {
            return domain("weight vector must have at least one entry");
        }
        if let Some(i) = values.iter().position(|v| *v <= T::zero()) {
            return domain(format!("weight vector entry {i} is not positive"));
        }
        let total = values.iter().fold(T::zero(), |acc, v| acc + v.clone());
        let x: Vec<T> = values.into_iter().map(|v| v / total.clone()).collect();
        let mut order: Vec<usize> = (0..x.len()).collect();
        order.sort_by(|&i, &j| {
            x[j].partial_cmp(&x[i])
                .unwrap_or(Ordering::Equal)
                .then(i.cmp(&j))
        });
        Ok(WeightVector { x, order })
    }

    pub fn len(&self) -> usize {
        self.x.len()
    }

    pub fn is_empty(&self) -> bool {
        self.x.is_empty()
    }

    pub fn values(&self) -> &[T] {
        &self.x
    }

    /// Indices in descending order of value, ties by index.
    pub fn order(&self) -> &[usize] {
        &self.order
    }

    pub fn sum_of_squares(&self) -> T {
        self.x
            .iter()
            .fold(T::zero(), |acc, v| acc + v.clone() * v.clone())
    }
}

/// A partition of the index set `0..n` with the sum of each part.
#[derive(Debug, Clone, PartialEq)]
pub struct IndexPartition<T> {
    pub parts: Vec<Vec<usize>>,
    pub sums: Vec<T>,
}

impl<T: Scalar> IndexPartition<T> {
    /// Checks that `parts` cover `0..x.len()` exactly once and computes sums.
    pub fn new(parts: Vec<Vec<usize>>, x: &WeightVector<T>) -> Result<Self> {
        let n = x.len();
        let mut seen = vec![false; n];
        for part in &parts {
            if part.is_empty() {
                return domain("index partition has an empty part");
            }
            for &i in part {
                if i >= n || seen[i] {
                    return domain(format!("index {i} is out of range or repeated"));
                }
                seen[i] = true;
            }
        }
        if seen.iter().any(|s| !s) {
            return domain("index partition does not cover every index");
        }
        let sums = parts.iter().map(|p| part_sum(x.values(), p)).collect();
        Ok(IndexPartition { parts, sums })
    }

    pub fn k(&self) -> usize {
        self.parts.len()
    }

    /// Whether every part sum is at least `eta`.
    pub fn is_fat(&self, eta: &T) -> bool {
        self.sums.iter().all(|s| s >= eta)
    }
}

fn part_sum<T: Scalar>(x: &[T], part: &[usize]) -> T {
    part.iter().fold(T::zero(), |acc, &i| acc + x[i].clone())
}

/// Result of [`greedy_bipartition`]; `a` and `b` are sorted index sets.
#[derive(Debug, Clone, PartialEq)]
pub struct Bipartition<T> {
    pub a: Vec<usize>,
    pub b: Vec<usize>,
    pub gamma: T,
    pub ops: u64,
}

/// Both bins of the greedy rule on `idx` (already in descending order).
/// Bins keep the processing order, so they stay sorted descending.
fn greedy_bins<T: Scalar>(x: &[T], idx: &[usize], ops: &mut u64) -> (Vec<usize>, T, Vec<usize>, T) {
    let (mut a, mut b) = (Vec::new(), Vec::new());
    let (mut sa, mut sb) = (T::zero(), T::zero());
    for &j in idx {
        *ops += 2;
        if sa <= sb {
            sa = sa + x[j].clone();
            a.push(j);
        } else {
            sb = sb + x[j].clone();
            b.push(j);
        }
    }
    (a, sa, b, sb)
}

fn min_of<T: Scalar>(a: T, b: T) -> T {
    if a <= b {
        a
    } else {
        b
    }
}

/// Greedy bi-partitioning: largest first, each element into a lighter bin
/// (`A` on ties). `gamma` is the lighter bin's sum.
pub fn greedy_bipartition<T: Scalar>(x: &WeightVector<T>) -> Bipartition<T> {
    let mut ops = 0;
    let (mut a, sa, mut b, sb) = greedy_bins(x.values(), x.order(), &mut ops);
    a.sort_unstable();
    b.sort_unstable();
    Bipartition {
        a,
        b,
        gamma: min_of(sa, sb),
        ops,
    }
}

/// `λ(x)`: the best lighter-side sum over all bipartitions, by enumeration.
pub fn lambda_exact<T: Scalar>(x: &WeightVector<T>) -> Result<T> {
    lambda_exact_with_limit(x, LAMBDA_LIMIT)
}

pub fn lambda_exact_with_limit<T: Scalar>(x: &WeightVector<T>, limit: usize) -> Result<T> {
    let n = x.len();
    if n > limit {
        return resource(format!("lambda enumerates 2^(n-1) subsets; n = {n} exceeds limit {limit}"));
    }
    let total = part_sum(x.values(), &(0..n).collect::<Vec<_>>());
    // Element 0 stays on the complement side; a Gray code walks the rest.
    let free = n - 1;
    let mut inside = vec![false; n];
    let mut s = T::zero();
    let mut best = T::zero();
    for step in 1u64..(1u64 << free) {
        let i = step.trailing_zeros() as usize + 1;
        if inside[i] {
            s = s - x.values()[i].clone();
        } else {
            s = s + x.values()[i].clone();
        }
        inside[i] = !inside[i];
        let side = min_of(s.clone(), total.clone() - s.clone());
        if side > best {
            best = side;
        }
    }
    Ok(best)
}

/// Output of [`greedy_number_partition`].
#[derive(Debug, Clone, PartialEq)]
pub struct NumberPartition<T> {
    pub partition: IndexPartition<T>,
    pub ops: u64,
}

fn check_eta<T: Scalar>(eta: &T) -> Result<()> {
    if *eta <= T::zero() || *eta > T::one() {
        return domain(format!("eta must lie in (0, 1], got {eta:?}"));
    }
    Ok(())
}

/// Number greedy partitioning: starting from one part, split the first part
/// whose greedy bipartition has both sides of sum at least `eta`, until none
/// can be split. The result is `(x, eta)`-fat with cost below `2 eta`.
pub fn greedy_number_partition<T: Scalar>(x: &WeightVector<T>, eta: &T) -> Result<NumberPartition<T>> {
    check_eta(eta)?;
    let mut ops = 0;
    let mut done: Vec<(Vec<usize>, T)> = Vec::new();
    // Depth-first with the second half pushed first reproduces the
    // "split the first splittable part in place" order.
    let mut stack = vec![(x.order().to_vec(), T::one())];
    while let Some((part, sum)) = stack.pop() {
        let (a, sa, b, sb) = greedy_bins(x.values(), &part, &mut ops);
        ops += 1;
        if !b.is_empty() && min_of(sa.clone(), sb.clone()) >= *eta {
            stack.push((b, sb));
            stack.push((a, sa));
        } else {
            done.push((part, sum));
        }
    }
    let (parts, sums): (Vec<_>, Vec<_>) = done
        .into_iter()
        .map(|(mut p, s)| {
            p.sort_unstable();
            (p, s)
        })
        .unzip();
    Ok(NumberPartition {
        partition: IndexPartition { parts, sums },
        ops,
    })
}

/// `c(A, x) = Σ S_j² − Σ x_i²`.
pub fn partition_cost<T: Scalar>(a: &IndexPartition<T>, x: &WeightVector<T>) -> T {
    let parts_sq = a
        .sums
        .iter()
        .fold(T::zero(), |acc, s| acc + s.clone() * s.clone());
    parts_sq - x.sum_of_squares()
}

/// Output of [`fatten_counted`].
#[derive(Debug, Clone, PartialEq)]
pub struct FattenOutcome {
    pub partition: Partition,
    pub ops: u64,
}

/// Amalgamates parts of `b` into an `eta`-fat partition of `g` whose score is
/// more than `q_b - 2 eta`.
///
/// Parts of zero volume cannot enter a weight vector; they are merged into
/// the first part of positive volume, which changes neither coverage nor
/// degree tax.
pub fn fatten<T: Scalar>(g: &Graph, eta: &T, b: &Partition) -> Result<Partition> {
    Ok(fatten_counted(g, eta, b)?.partition)
}

pub fn fatten_counted<T: Scalar>(g: &Graph, eta: &T, b: &Partition) -> Result<FattenOutcome> {
    check_eta(eta)?;
    check_partition(g, b)?;
    if g.is_empty() {
        return domain("cannot fatten a partition of an empty graph");
    }
    let iw = g.integer_weights()?;
    let mut ops = 0u64;
    let mut vol = vec![0i128; b.k()];
    for (v, &d) in iw.degrees.iter().enumerate() {
        vol[b.part_of(v)] += d;
        ops += 1;
    }

    // positive-volume parts become entries of x; zero-volume parts ride along
    // with the first positive one
    let mut entry_of = vec![usize::MAX; b.k()];
    let mut values = Vec::new();
    for (j, &vj) in vol.iter().enumerate() {
        ops += 1;
        if vj > 0 {
            entry_of[j] = values.len();
            values.push(T::from_i128(vj) / T::from_i128(iw.volume));
        }
    }
    for e in entry_of.iter_mut().filter(|e| **e == usize::MAX) {
        *e = 0;
    }

    let x = WeightVector::new(values)?;
    let np = greedy_number_partition(&x, eta)?;
    ops += np.ops;

    let mut group_of_entry = vec![0; x.len()];
    for (g_idx, part) in np.partition.parts.iter().enumerate() {
        for &i in part {
            group_of_entry[i] = g_idx;
            ops += 1;
        }
    }
    let groups: Vec<usize> = entry_of.iter().map(|&e| group_of_entry[e]).collect();
    ops += b.n() as u64;
    Ok(FattenOutcome {
        partition: b.coarsen(&groups),
        ops,
    })
}

/// Whether every part of `p` has volume at least `eta · vol(V)`.
pub fn is_eta_fat<T: Scalar>(g: &Graph, p: &Partition, eta: &T) -> Result<bool> {
    check_partition(g, p)?;
    let iw = g.integer_weights()?;
    let mut vol = vec![0i128; p.k()];
    for (v, &d) in iw.degrees.iter().enumerate() {
        vol[p.part_of(v)] += d;
    }
    let threshold = eta.clone() * T::from_i128(iw.volume);
    Ok(vol.into_iter().all(|v| T::from_i128(v) >= threshold))
}
