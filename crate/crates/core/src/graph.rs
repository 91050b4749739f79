//! Undirected graphs with exact non-negative edge weights.
//!
//! Unweighted graphs are the special case where every stored weight is 1.
//! Edges are kept sorted as `(u, v)` with `u < v`; zero-weight pairs are
//! simply not stored.

use std::borrow::Cow;
use std::collections::{BTreeMap, HashMap};

use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{domain, resource, Error, Result};
use crate::scalar::{is_negative, Weight};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Edge {
    pub u: usize,
    pub v: usize,
    pub w: Weight,
}

#[derive(Debug, Clone)]
pub struct Graph {
    n: usize,
    edges: Vec<Edge>,
    labels: Option<Vec<String>>,
    merged_duplicates: usize,
}

impl PartialEq for Graph {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.edges == other.edges && self.labels == other.labels
    }
}

impl Eq for Graph {}

/// Edge weights rescaled to integers by the least common denominator.
/// Modularity is invariant under scaling, so exact scoring works on these.
#[derive(Debug, Clone)]
pub struct IntegerWeights {
    pub edges: Vec<(usize, usize, i128)>,
    pub degrees: Vec<i128>,
    pub volume: i128,
}

impl Graph {
    /// Graph on `n` vertices with no edges.
    pub fn empty(n: usize) -> Self {
        Graph {
            n,
            edges: Vec::new(),
            labels: None,
            merged_duplicates: 0,
        }
    }

    /// Unweighted graph from an edge list. Repeated pairs are rejected here;
    /// use [`GraphBuilder`] to merge them.
    pub fn from_edges(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut b = GraphBuilder::new(n);
        for (u, v) in edges {
            b.add_edge(u, v, Weight::one())?;
        }
        if b.merged_duplicates() > 0 {
            return Err(Error::Data("repeated edge in unweighted edge list".into()));
        }
        Ok(b.build())
    }

    pub fn from_weighted_edges(
        n: usize,
        edges: impl IntoIterator<Item = (usize, usize, Weight)>,
    ) -> Result<Self> {
        let mut b = GraphBuilder::new(n);
        for (u, v, w) in edges {
            b.add_edge(u, v, w)?;
        }
        Ok(b.build())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of positive-weight pairs.
    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    /// Number of duplicate pairs that were merged by summing during construction.
    pub fn merged_duplicates(&self) -> usize {
        self.merged_duplicates
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    /// Label of a vertex, falling back to its numeric id.
    pub fn label(&self, v: usize) -> Cow<'_, str> {
        match &self.labels {
            Some(l) => Cow::Borrowed(&l[v]),
            None => Cow::Owned(v.to_string()),
        }
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self> {
        if labels.len() != self.n {
            return domain(format!(
                "{} labels supplied for {} vertices",
                labels.len(),
                self.n
            ));
        }
        self.labels = Some(labels);
        Ok(self)
    }

    pub fn without_labels(mut self) -> Self {
        self.labels = None;
        self
    }

    pub fn is_unweighted(&self) -> bool {
        self.edges.iter().all(|e| e.w.is_one())
    }

    /// Largest edge weight (the `b` for which the graph is b-bounded).
    pub fn max_weight(&self) -> Weight {
        self.edges.iter().map(|e| e.w).max().unwrap_or_else(Weight::zero)
    }

    /// Total edge weight `e_w(V)`.
    pub fn total_weight(&self) -> Weight {
        self.edges.iter().map(|e| e.w).sum()
    }

    pub fn weight(&self, u: usize, v: usize) -> Weight {
        let (a, b) = if u < v { (u, v) } else { (v, u) };
        self.edges
            .binary_search_by(|e| (e.u, e.v).cmp(&(a, b)))
            .map(|i| self.edges[i].w)
            .unwrap_or_else(|_| Weight::zero())
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        !self.weight(u, v).is_zero()
    }

    pub fn weighted_degrees(&self) -> Vec<Weight> {
        let mut d = vec![Weight::zero(); self.n];
        for e in &self.edges {
            d[e.u] += e.w;
            d[e.v] += e.w;
        }
        d
    }

    /// Number of neighbours of each vertex.
    pub fn neighbor_counts(&self) -> Vec<usize> {
        let mut d = vec![0; self.n];
        for e in &self.edges {
            d[e.u] += 1;
            d[e.v] += 1;
        }
        d
    }

    pub fn adjacency(&self) -> Vec<Vec<(usize, Weight)>> {
        let mut adj = vec![Vec::new(); self.n];
        for e in &self.edges {
            adj[e.u].push((e.v, e.w));
            adj[e.v].push((e.u, e.w));
        }
        adj
    }

    pub fn isolated_vertices(&self) -> Vec<usize> {
        self.neighbor_counts()
            .iter()
            .enumerate()
            .filter(|(_, &d)| d == 0)
            .map(|(v, _)| v)
            .collect()
    }

    /// Connected component index per vertex, numbered by smallest member.
    pub fn components(&self) -> Vec<usize> {
        let mut parent: Vec<usize> = (0..self.n).collect();
        fn find(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        for e in &self.edges {
            let (a, b) = (find(&mut parent, e.u), find(&mut parent, e.v));
            if a != b {
                parent[a.max(b)] = a.min(b);
            }
        }
        let mut ids = HashMap::new();
        (0..self.n)
            .map(|v| {
                let root = find(&mut parent, v);
                let next = ids.len();
                *ids.entry(root).or_insert(next)
            })
            .collect()
    }

    /// Rescales weights to integers by their least common denominator.
    pub fn integer_weights(&self) -> Result<IntegerWeights> {
        let mut lcm: i128 = 1;
        for e in &self.edges {
            lcm = lcm.lcm(&i128::from(*e.w.denom()));
            if lcm > 1 << 62 {
                return resource("common denominator of edge weights is too large");
            }
        }
        let mut degrees = vec![0i128; self.n];
        let mut edges = Vec::with_capacity(self.edges.len());
        for e in &self.edges {
            let w = i128::from(*e.w.numer()) * (lcm / i128::from(*e.w.denom()));
            degrees[e.u] += w;
            degrees[e.v] += w;
            edges.push((e.u, e.v, w));
        }
        let volume = degrees.iter().sum();
        Ok(IntegerWeights {
            edges,
            degrees,
            volume,
        })
    }

    /// Induced subgraph on `vertices` (relabelled `0..k` in the given order).
    /// The new graph carries the original labels, or original ids as labels.
    pub fn induced_subgraph(&self, vertices: &[usize]) -> Result<Graph> {
        let mut index = vec![usize::MAX; self.n];
        for (i, &v) in vertices.iter().enumerate() {
            if v >= self.n {
                return domain(format!("vertex {v} out of range for n = {}", self.n));
            }
            if index[v] != usize::MAX {
                return domain(format!("vertex {v} listed twice"));
            }
            index[v] = i;
        }
        let mut edges: Vec<Edge> = self
            .edges
            .iter()
            .filter(|e| index[e.u] != usize::MAX && index[e.v] != usize::MAX)
            .map(|e| {
                let (a, b) = (index[e.u], index[e.v]);
                Edge {
                    u: a.min(b),
                    v: a.max(b),
                    w: e.w,
                }
            })
            .collect();
        edges.sort();
        let labels = vertices.iter().map(|&v| self.label(v).into_owned()).collect();
        Ok(Graph {
            n: vertices.len(),
            edges,
            labels: Some(labels),
            merged_duplicates: 0,
        })
    }

    /// Same vertex set, edges restricted to those accepted by `keep`.
    pub fn filter_edges(&self, mut keep: impl FnMut(&Edge) -> bool) -> Graph {
        Graph {
            n: self.n,
            edges: self.edges.iter().filter(|e| keep(e)).copied().collect(),
            labels: self.labels.clone(),
            merged_duplicates: 0,
        }
    }

    pub(crate) fn from_sorted_parts(n: usize, edges: Vec<Edge>, labels: Option<Vec<String>>) -> Graph {
        debug_assert!(edges.windows(2).all(|w| (w[0].u, w[0].v) < (w[1].u, w[1].v)));
        Graph {
            n,
            edges,
            labels,
            merged_duplicates: 0,
        }
    }
}

/// Incremental graph construction with label interning and duplicate merging.
#[derive(Debug, Default)]
pub struct GraphBuilder {
    n: usize,
    weights: BTreeMap<(usize, usize), Weight>,
    labels: Vec<String>,
    label_index: HashMap<String, usize>,
    labelled: bool,
    merged: usize,
}

impl GraphBuilder {
    pub fn new(n: usize) -> Self {
        GraphBuilder {
            n,
            ..Default::default()
        }
    }

    /// Builder whose vertices are created from string tokens in first-appearance order.
    pub fn labelled() -> Self {
        GraphBuilder {
            labelled: true,
            ..Default::default()
        }
    }

    pub fn vertex(&mut self, token: &str) -> usize {
        if let Some(&id) = self.label_index.get(token) {
            return id;
        }
        let id = self.n;
        self.n += 1;
        self.labels.push(token.to_owned());
        self.label_index.insert(token.to_owned(), id);
        id
    }

    pub fn add_edge(&mut self, u: usize, v: usize, w: Weight) -> Result<()> {
        if u >= self.n || v >= self.n {
            return domain(format!("edge ({u}, {v}) out of range for n = {}", self.n));
        }
        if u == v {
            return Err(Error::Data(format!("self-loop at vertex {u}")));
        }
        if is_negative(&w) {
            return Err(Error::Data(format!("negative weight on edge ({u}, {v})")));
        }
        if w.is_zero() {
            return Ok(());
        }
        let key = (u.min(v), u.max(v));
        match self.weights.get_mut(&key) {
            Some(existing) => {
                *existing += w;
                self.merged += 1;
            }
            None => {
                self.weights.insert(key, w);
            }
        }
        Ok(())
    }

    pub fn add_labelled_edge(&mut self, a: &str, b: &str, w: Weight) -> Result<()> {
        let u = self.vertex(a);
        let v = self.vertex(b);
        self.add_edge(u, v, w)
    }

    pub fn merged_duplicates(&self) -> usize {
        self.merged
    }

    pub fn build(self) -> Graph {
        let edges = self
            .weights
            .into_iter()
            .map(|((u, v), w)| Edge { u, v, w })
            .collect();
        Graph {
            n: self.n,
            edges,
            labels: self.labelled.then_some(self.labels),
            merged_duplicates: self.merged,
        }
    }
}
