//! Modularity score of a vertex partition: coverage minus degree tax.

use crate::error::{domain, resource, Result};
use crate::graph::Graph;
use crate::partition::Partition;
use crate::scalar::{ArithmeticMode, Exact, Scalar};

/// Coverage, degree tax and their difference for one (graph, partition) pair.
#[derive(Debug, Clone, PartialEq)]
pub struct ModularityBreakdown<T> {
    /// Fraction of edge weight inside parts.
    pub coverage: T,
    /// Sum of squared part volumes over the squared total volume.
    pub degree_tax: T,
    pub score: T,
    /// `q* - score`, filled in by [`ModularityBreakdown::with_optimum`].
    pub deficit: Option<T>,
}

impl<T: Scalar> ModularityBreakdown<T> {
    pub fn zero() -> Self {
        ModularityBreakdown {
            coverage: T::zero(),
            degree_tax: T::zero(),
            score: T::zero(),
            deficit: None,
        }
    }

    pub fn with_optimum(mut self, qstar: T) -> Self {
        self.deficit = Some(qstar - self.score.clone());
        self
    }
}

/// Integer sums behind a breakdown: `coverage = 2 * internal / volume` and
/// `degree_tax = sum_sq / volume^2`, over integer-rescaled weights.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) struct ScoreParts {
    pub internal: i128,
    pub sum_sq: i128,
    pub volume: i128,
}

pub(crate) fn score_parts(g: &Graph, p: &Partition) -> Result<ScoreParts> {
    check_partition(g, p)?;
    let iw = g.integer_weights()?;
    let mut vol = vec![0i128; p.k()];
    for (v, &d) in iw.degrees.iter().enumerate() {
        vol[p.part_of(v)] += d;
    }
    let internal = iw
        .edges
        .iter()
        .filter(|(u, v, _)| p.part_of(*u) == p.part_of(*v))
        .map(|(_, _, w)| w)
        .sum();
    let mut sum_sq: i128 = 0;
    for x in vol {
        sum_sq = x
            .checked_mul(x)
            .and_then(|sq| sum_sq.checked_add(sq))
            .ok_or_else(|| crate::Error::Resource("degree tax overflows i128".into()))?;
    }
    if iw.volume.checked_mul(iw.volume).is_none() {
        return resource("squared volume overflows i128");
    }
    Ok(ScoreParts {
        internal,
        sum_sq,
        volume: iw.volume,
    })
}

pub(crate) fn check_partition(g: &Graph, p: &Partition) -> Result<()> {
    if p.n() > g.n() {
        return domain(format!(
            "partition references vertex {} but the graph has {} vertices",
            p.n() - 1,
            g.n()
        ));
    }
    if p.n() < g.n() {
        return domain(format!(
            "partition covers {} of {} vertices",
            p.n(),
            g.n()
        ));
    }
    Ok(())
}

/// Modularity breakdown in the arithmetic of `T` (`Exact` or `f64`).
///
/// An edgeless graph scores all zeros by convention.
pub fn modularity<T: Scalar>(g: &Graph, p: &Partition) -> Result<ModularityBreakdown<T>> {
    let parts = score_parts(g, p)?;
    if parts.volume == 0 {
        return Ok(ModularityBreakdown::zero());
    }
    let vol = T::from_i128(parts.volume);
    let coverage = T::from_i128(2 * parts.internal) / vol.clone();
    let degree_tax = T::from_i128(parts.sum_sq) / (vol.clone() * vol);
    let score = coverage.clone() - degree_tax.clone();
    Ok(ModularityBreakdown {
        coverage,
        degree_tax,
        score,
        deficit: None,
    })
}

pub fn modularity_exact(g: &Graph, p: &Partition) -> Result<ModularityBreakdown<Exact>> {
    modularity(g, p)
}

pub fn modularity_f64(g: &Graph, p: &Partition) -> Result<ModularityBreakdown<f64>> {
    modularity(g, p)
}

/// Score only, computed in `mode` and reported as `f64`.
pub fn score_in(g: &Graph, p: &Partition, mode: ArithmeticMode) -> Result<f64> {
    Ok(match mode {
        ArithmeticMode::Exact => modularity_exact(g, p)?.score.to_f64(),
        ArithmeticMode::Float => modularity_f64(g, p)?.score,
    })
}
