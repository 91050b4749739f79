//! Vertex partitions in canonical form.

use std::collections::HashMap;

use crate::error::{domain, Result};

/// A partition of `0..n` into non-empty parts.
///
/// Parts are numbered by first appearance in vertex order, so two equal
/// partitions always have identical assignment vectors.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition {
    assignment: Vec<usize>,
    k: usize,
}

impl Partition {
    /// Canonicalizes an arbitrary labelling (labels need not be contiguous).
    pub fn from_assignment<L: Copy + Eq + std::hash::Hash>(labels: &[L]) -> Self {
        let mut ids: HashMap<L, usize> = HashMap::new();
        let assignment = labels
            .iter()
            .map(|l| {
                let next = ids.len();
                *ids.entry(*l).or_insert(next)
            })
            .collect();
        Partition {
            assignment,
            k: ids.len(),
        }
    }

    /// Builds a partition from explicit parts, which must cover `0..n` exactly once.
    pub fn from_parts(n: usize, parts: &[Vec<usize>]) -> Result<Self> {
        let mut labels = vec![usize::MAX; n];
        for (j, part) in parts.iter().enumerate() {
            if part.is_empty() {
                return domain(format!("part {j} is empty"));
            }
            for &v in part {
                if v >= n {
                    return domain(format!("vertex {v} out of range for n = {n}"));
                }
                if labels[v] != usize::MAX {
                    return domain(format!("vertex {v} appears in two parts"));
                }
                labels[v] = j;
            }
        }
        if let Some(v) = labels.iter().position(|&l| l == usize::MAX) {
            return domain(format!("vertex {v} is not assigned to any part"));
        }
        Ok(Self::from_assignment(&labels))
    }

    /// The one-part partition.
    pub fn trivial(n: usize) -> Self {
        Partition {
            assignment: vec![0; n],
            k: usize::from(n > 0),
        }
    }

    pub fn singletons(n: usize) -> Self {
        Partition {
            assignment: (0..n).collect(),
            k: n,
        }
    }

    pub fn n(&self) -> usize {
        self.assignment.len()
    }

    /// Number of parts.
    pub fn k(&self) -> usize {
        self.k
    }

    pub fn assignment(&self) -> &[usize] {
        &self.assignment
    }

    pub fn part_of(&self, v: usize) -> usize {
        self.assignment[v]
    }

    /// Members of each part, in increasing vertex order.
    pub fn parts(&self) -> Vec<Vec<usize>> {
        let mut parts = vec![Vec::new(); self.k];
        for (v, &p) in self.assignment.iter().enumerate() {
            parts[p].push(v);
        }
        parts
    }

    /// Merges parts according to `groups[j]`, the new group of old part `j`.
    pub fn coarsen(&self, groups: &[usize]) -> Partition {
        let labels: Vec<usize> = self.assignment.iter().map(|&p| groups[p]).collect();
        Partition::from_assignment(&labels)
    }

    /// Extends the partition to `n + extra` vertices, placing the new vertices
    /// with `place(i)` (a part index, or `k..` for fresh parts).
    pub fn extend(&self, extra: usize, mut place: impl FnMut(usize) -> usize) -> Partition {
        let mut labels = self.assignment.clone();
        labels.extend((0..extra).map(&mut place));
        Partition::from_assignment(&labels)
    }

    /// Whether every part of `self` lies inside a part of `other`.
    pub fn refines(&self, other: &Partition) -> bool {
        if self.n() != other.n() {
            return false;
        }
        let mut owner = vec![usize::MAX; self.k];
        self.assignment
            .iter()
            .zip(&other.assignment)
            .all(|(&a, &b)| match owner[a] {
                usize::MAX => {
                    owner[a] = b;
                    true
                }
                o => o == b,
            })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_numbering() {
        let p = Partition::from_assignment(&[7, 3, 7, 9, 3]);
        assert_eq!(p.assignment(), &[0, 1, 0, 2, 1]);
        assert_eq!(p.k(), 3);
        let q = Partition::from_parts(5, &[vec![3], vec![1, 4], vec![0, 2]]).unwrap();
        assert_eq!(p, q);
    }

    #[test]
    fn from_parts_rejects_bad_covers() {
        assert!(Partition::from_parts(3, &[vec![0, 1]]).is_err());
        assert!(Partition::from_parts(3, &[vec![0, 1], vec![1, 2]]).is_err());
        assert!(Partition::from_parts(3, &[vec![0, 1, 2], vec![]]).is_err());
        assert!(Partition::from_parts(3, &[vec![0, 1, 5]]).is_err());
    }

    #[test]
    fn trivial_and_singletons() {
        assert_eq!(Partition::trivial(4).k(), 1);
        assert_eq!(Partition::trivial(0).k(), 0);
        assert_eq!(Partition::singletons(4).parts(), vec![vec![0], vec![1], vec![2], vec![3]]);
        assert!(Partition::singletons(4).refines(&Partition::trivial(4)));
        assert!(!Partition::trivial(4).refines(&Partition::singletons(4)));
    }
}
