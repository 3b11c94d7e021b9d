//! Immutable simple graphs over bitset adjacency.
//!
//! Every theorem in this crate is phrased over a [`Graph`]: neighbourhoods
//! `Γ(v)`, the neighbourhood subgraphs `G_v`, the set of missing edges and the
//! edge density `α` are all computed here.

use std::fmt;

use num_rational::Ratio;
use serde::{Serialize, Serializer};
use smallvec::SmallVec;

use crate::error::{Error, Result};
use crate::graph6;

const WORD: usize = 64;

fn words_for(n: usize) -> usize {
    n.div_ceil(WORD)
}

/// A set of vertices stored as a bitset.
///
/// Sets for graphs with up to 128 vertices live inline.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct VertexSet {
    words: SmallVec<[u64; 2]>,
}

impl VertexSet {
    /// Empty set able to hold vertices `0..n`.
    pub fn new(n: usize) -> Self {
        Self {
            words: smallvec::smallvec![0; words_for(n)],
        }
    }

    /// The set `{0, .., n-1}`.
    pub fn full(n: usize) -> Self {
        let mut s = Self::new(n);
        for (i, w) in s.words.iter_mut().enumerate() {
            let lo = i * WORD;
            let bits = (n - lo).min(WORD);
            *w = if bits == WORD { u64::MAX } else { (1u64 << bits) - 1 };
        }
        s
    }

    pub fn from_vertices(n: usize, vertices: impl IntoIterator<Item = usize>) -> Self {
        let mut s = Self::new(n);
        for v in vertices {
            s.insert(v);
        }
        s
    }

    /// Grows the backing storage if `v` does not fit.
    pub fn insert(&mut self, v: usize) {
        let w = v / WORD;
        if w >= self.words.len() {
            self.words.resize(w + 1, 0);
        }
        self.words[w] |= 1u64 << (v % WORD);
    }

    pub fn remove(&mut self, v: usize) {
        if let Some(w) = self.words.get_mut(v / WORD) {
            *w &= !(1u64 << (v % WORD));
        }
    }

    #[inline]
    pub fn contains(&self, v: usize) -> bool {
        self.words
            .get(v / WORD)
            .is_some_and(|w| (w >> (v % WORD)) & 1 == 1)
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn first(&self) -> Option<usize> {
        self.words
            .iter()
            .enumerate()
            .find(|(_, &w)| w != 0)
            .map(|(i, w)| i * WORD + w.trailing_zeros() as usize)
    }

    /// Vertices in increasing order.
    pub fn iter(&self) -> Iter<'_> {
        Iter {
            words: &self.words,
            index: 0,
            current: self.words.first().copied().unwrap_or(0),
        }
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }

    pub fn intersection(&self, other: &VertexSet) -> VertexSet {
        let mut out = self.clone();
        out.intersect_with(other);
        out
    }

    pub fn intersect_with(&mut self, other: &VertexSet) {
        for (i, w) in self.words.iter_mut().enumerate() {
            *w &= other.words.get(i).copied().unwrap_or(0);
        }
    }

    pub fn difference(&self, other: &VertexSet) -> VertexSet {
        let mut out = self.clone();
        out.difference_with(other);
        out
    }

    pub fn difference_with(&mut self, other: &VertexSet) {
        for (w, o) in self.words.iter_mut().zip(other.words.iter()) {
            *w &= !o;
        }
    }

    pub fn union_with(&mut self, other: &VertexSet) {
        if other.words.len() > self.words.len() {
            self.words.resize(other.words.len(), 0);
        }
        for (w, o) in self.words.iter_mut().zip(other.words.iter()) {
            *w |= o;
        }
    }

    pub fn intersection_len(&self, other: &VertexSet) -> usize {
        self.words
            .iter()
            .zip(other.words.iter())
            .map(|(a, b)| (a & b).count_ones() as usize)
            .sum()
    }

    pub fn is_subset(&self, other: &VertexSet) -> bool {
        self.words
            .iter()
            .enumerate()
            .all(|(i, w)| w & !other.words.get(i).copied().unwrap_or(0) == 0)
    }

    pub fn is_disjoint(&self, other: &VertexSet) -> bool {
        self.intersection_len(other) == 0
    }

    /// Keeps only vertices strictly greater than `v`.
    pub(crate) fn retain_above(&mut self, v: usize) {
        let w = v / WORD;
        for (i, word) in self.words.iter_mut().enumerate() {
            if i < w {
                *word = 0;
            } else if i == w {
                let shift = v % WORD + 1;
                *word &= if shift == WORD { 0 } else { u64::MAX << shift };
            }
        }
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl Serialize for VertexSet {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_seq(self.iter())
    }
}

pub struct Iter<'a> {
    words: &'a [u64],
    index: usize,
    current: u64,
}

impl Iterator for Iter<'_> {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        loop {
            if self.current != 0 {
                let bit = self.current.trailing_zeros() as usize;
                self.current &= self.current - 1;
                return Some(self.index * WORD + bit);
            }
            self.index += 1;
            self.current = *self.words.get(self.index)?;
        }
    }
}

impl<'a> IntoIterator for &'a VertexSet {
    type Item = usize;
    type IntoIter = Iter<'a>;

    fn into_iter(self) -> Iter<'a> {
        self.iter()
    }
}

/// Immutable simple undirected graph on vertices `0..n`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    adj: Vec<VertexSet>,
    edge_count: usize,
}

/// An induced subgraph together with the map back to its parent.
///
/// `map[i]` is the parent vertex that became vertex `i` of `graph`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InducedSubgraph {
    pub graph: Graph,
    pub map: Vec<usize>,
}

impl InducedSubgraph {
    pub fn lift(&self, v: usize) -> usize {
        self.map[v]
    }

    pub fn lift_set(&self, set: &VertexSet, parent_n: usize) -> VertexSet {
        VertexSet::from_vertices(parent_n, set.iter().map(|v| self.map[v]))
    }
}

/// Edge count, missing-edge count and density `α = e / C(n,2)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct DensityStats {
    pub n: usize,
    pub edge_count: u64,
    pub missing_count: u64,
    pub pair_count: u64,
    pub alpha: f64,
}

impl DensityStats {
    /// `α` as an exact reduced fraction.
    pub fn alpha_exact(&self) -> Ratio<u64> {
        Ratio::new(self.edge_count, self.pair_count)
    }

    pub fn is_complete(&self) -> bool {
        self.missing_count == 0
    }
}

pub fn pairs(n: usize) -> u64 {
    let n = n as u64;
    n * n.saturating_sub(1) / 2
}

impl Graph {
    /// Builds a graph from an edge list. Duplicate edges collapse.
    pub fn build(n: usize, edges: &[(usize, usize)]) -> Result<Graph> {
        let mut adj = vec![VertexSet::new(n); n];
        for &(u, v) in edges {
            for x in [u, v] {
                if x >= n {
                    return Err(Error::VertexOutOfRange { vertex: x, n });
                }
            }
            if u == v {
                return Err(Error::LoopEdge(u));
            }
            adj[u].insert(v);
            adj[v].insert(u);
        }
        Ok(Self::from_adjacency(adj))
    }

    pub fn empty(n: usize) -> Graph {
        Self::from_adjacency(vec![VertexSet::new(n); n])
    }

    /// Caller guarantees symmetry and irreflexivity.
    pub(crate) fn from_adjacency(adj: Vec<VertexSet>) -> Graph {
        let n = adj.len();
        let degree_sum: usize = adj.iter().map(VertexSet::len).sum();
        let g = Graph {
            n,
            adj,
            edge_count: degree_sum / 2,
        };
        debug_assert!(g.check_invariants(), "adjacency is not a simple graph");
        g
    }

    /// Symmetry, irreflexivity, range and degree-sum consistency.
    pub fn check_invariants(&self) -> bool {
        let range = VertexSet::full(self.n);
        let mut degree_sum = 0;
        for (v, nb) in self.adj.iter().enumerate() {
            if nb.contains(v) || !nb.is_subset(&range) {
                return false;
            }
            if nb.iter().any(|u| !self.adj[u].contains(v)) {
                return false;
            }
            degree_sum += nb.len();
        }
        degree_sum == 2 * self.edge_count
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    /// `Γ(v)`.
    #[inline]
    pub fn neighbours(&self, v: usize) -> &VertexSet {
        &self.adj[v]
    }

    pub(crate) fn adjacency(&self) -> &[VertexSet] {
        &self.adj
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && self.adj[u].contains(v)
    }

    pub fn vertices(&self) -> VertexSet {
        VertexSet::full(self.n)
    }

    /// Edges `(u, v)` with `u < v` in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n).flat_map(move |u| {
            let mut above = self.adj[u].clone();
            above.retain_above(u);
            above.into_iter_owned().map(move |v| (u, v))
        })
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.adj.iter().map(VertexSet::len).collect()
    }

    pub fn density(&self) -> Result<DensityStats> {
        if self.n < 2 {
            return Err(Error::DensityUndefined(self.n));
        }
        let pair_count = pairs(self.n);
        let edge_count = self.edge_count as u64;
        Ok(DensityStats {
            n: self.n,
            edge_count,
            missing_count: pair_count - edge_count,
            pair_count,
            alpha: edge_count as f64 / pair_count as f64,
        })
    }

    /// Non-adjacent unordered pairs `(u, v)`, `u < v`, lexicographic.
    pub fn missing_edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity((pairs(self.n) as usize).saturating_sub(self.edge_count));
        for u in 0..self.n {
            for v in (u + 1)..self.n {
                if !self.adj[u].contains(v) {
                    out.push((u, v));
                }
            }
        }
        out
    }

    /// `Γ(u) ∩ Γ(v) \ {u, v}`.
    pub fn common_neighbourhood(&self, u: usize, v: usize) -> Result<VertexSet> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        if u == v {
            return Err(Error::SameVertex(u));
        }
        let mut s = self.adj[u].intersection(&self.adj[v]);
        s.remove(u);
        s.remove(v);
        Ok(s)
    }

    /// `G_v = G[Γ(v)]`, with the relabelling map back to `G`.
    pub fn neighbourhood_subgraph(&self, v: usize) -> Result<InducedSubgraph> {
        self.check_vertex(v)?;
        Ok(self.induced_subgraph(&self.adj[v]))
    }

    /// `G[S]`; vertex `i` of the result is the `i`-th smallest member of `S`.
    pub fn induced_subgraph(&self, set: &VertexSet) -> InducedSubgraph {
        let map: Vec<usize> = set.iter().filter(|&v| v < self.n).collect();
        let k = map.len();
        let mut index = vec![usize::MAX; self.n];
        for (i, &v) in map.iter().enumerate() {
            index[v] = i;
        }
        let adj = map
            .iter()
            .map(|&v| {
                VertexSet::from_vertices(
                    k,
                    self.adj[v].iter().filter_map(|u| {
                        let i = index[u];
                        (i != usize::MAX).then_some(i)
                    }),
                )
            })
            .collect();
        InducedSubgraph {
            graph: Graph::from_adjacency(adj),
            map,
        }
    }

    /// `G - x`.
    pub fn remove_vertex(&self, x: usize) -> Result<InducedSubgraph> {
        self.check_vertex(x)?;
        let mut keep = self.vertices();
        keep.remove(x);
        Ok(self.induced_subgraph(&keep))
    }

    pub fn complement(&self) -> Graph {
        let full = VertexSet::full(self.n);
        let adj = (0..self.n)
            .map(|v| {
                let mut s = full.difference(&self.adj[v]);
                s.remove(v);
                s
            })
            .collect();
        Graph::from_adjacency(adj)
    }

    /// Number of triangles.
    pub fn triangle_count(&self) -> u64 {
        let mut count = 0u64;
        for (u, v) in self.edges() {
            let mut common = self.adj[u].intersection(&self.adj[v]);
            common.retain_above(v);
            count += common.len() as u64;
        }
        count
    }

    /// Number of edges inside `S`.
    pub fn edges_within(&self, set: &VertexSet) -> usize {
        set.iter().map(|v| self.adj[v].intersection_len(set)).sum::<usize>() / 2
    }

    pub fn is_independent(&self, set: &VertexSet) -> bool {
        set.iter().all(|v| self.adj[v].is_disjoint(set))
    }

    pub fn is_clique(&self, set: &VertexSet) -> bool {
        set.iter().all(|v| {
            let mut rest = set.clone();
            rest.remove(v);
            rest.is_subset(&self.adj[v])
        })
    }

    pub fn check_vertex(&self, v: usize) -> Result<()> {
        if v < self.n {
            Ok(())
        } else {
            Err(Error::VertexOutOfRange { vertex: v, n: self.n })
        }
    }

    pub fn to_graph6(&self) -> String {
        graph6::encode(self)
    }
}

impl VertexSet {
    fn into_iter_owned(self) -> impl Iterator<Item = usize> {
        let words = self.words;
        words
            .into_iter()
            .enumerate()
            .flat_map(|(i, mut w)| {
                std::iter::from_fn(move || {
                    if w == 0 {
                        return None;
                    }
                    let bit = w.trailing_zeros() as usize;
                    w &= w - 1;
                    Some(i * WORD + bit)
                })
            })
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, m={}, {})", self.n, self.edge_count, self.to_graph6())
    }
}

impl fmt::Display for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_graph6())
    }
}

impl Serialize for Graph {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_graph6())
    }
}
