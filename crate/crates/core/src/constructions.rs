//! Graph generators: standard families, the polarity graph `ER_q`, seeded
//! random graphs and exhaustive labelled enumeration.

use std::ops::Range;

use rand::{RngExt, SeedableRng};
use rand_xoshiro::Xoshiro256PlusPlus;
use rayon::prelude::*;
use serde::Serialize;

use crate::detect;
use crate::error::{Error, Result};
use crate::graph::{pairs, Graph, VertexSet};

/// Largest `n` accepted by [`enumerate_labelled`] (`2^21` graphs).
pub const MAX_ENUMERATION_N: usize = 7;

/// Version tag of the random-graph generator. Bumped whenever the stream of
/// graphs produced for a given seed changes.
pub const RNG_VERSION: &str = "xoshiro256++/v1";

pub fn complete(n: usize) -> Graph {
    Graph::from_adjacency(
        (0..n)
            .map(|v| {
                let mut s = VertexSet::full(n);
                s.remove(v);
                s
            })
            .collect(),
    )
}

pub fn cycle(n: usize) -> Result<Graph> {
    if n < 3 {
        return Err(Error::InvalidParameter(format!("cycle needs n >= 3, got {n}")));
    }
    let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
    Graph::build(n, &edges)
}

pub fn path(n: usize) -> Result<Graph> {
    if n == 0 {
        return Err(Error::InvalidParameter("path needs n >= 1".into()));
    }
    let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
    Graph::build(n, &edges)
}

/// `K_{a,b}` with parts `{0..a}` and `{a..a+b}`.
pub fn complete_bipartite(a: usize, b: usize) -> Graph {
    complete_multipartite(&[a, b])
}

pub fn complete_multipartite(parts: &[usize]) -> Graph {
    let n: usize = parts.iter().sum();
    let mut part_of = Vec::with_capacity(n);
    for (i, &size) in parts.iter().enumerate() {
        part_of.extend(std::iter::repeat_n(i, size));
    }
    let adj = (0..n)
        .map(|u| VertexSet::from_vertices(n, (0..n).filter(|&v| part_of[v] != part_of[u])))
        .collect();
    Graph::from_adjacency(adj)
}

/// Turán graph `T(n, r)`: complete `r`-partite with parts as equal as possible.
pub fn turan(n: usize, r: usize) -> Result<Graph> {
    if r == 0 {
        return Err(Error::InvalidParameter("turan needs r >= 1".into()));
    }
    let parts: Vec<usize> = (0..r).map(|i| n / r + usize::from(i < n % r)).collect();
    Ok(complete_multipartite(&parts))
}

/// The Petersen graph as the Kneser graph `KG(5,2)`.
pub fn petersen() -> Graph {
    let subsets: Vec<(usize, usize)> = (0..5)
        .flat_map(|a| ((a + 1)..5).map(move |b| (a, b)))
        .collect();
    let mut edges = Vec::new();
    for (i, &(a, b)) in subsets.iter().enumerate() {
        for (j, &(c, d)) in subsets.iter().enumerate().skip(i + 1) {
            if a != c && a != d && b != c && b != d {
                edges.push((i, j));
            }
        }
    }
    Graph::build(10, &edges).expect("valid construction")
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum StandardKind {
    Empty { n: usize },
    Complete { n: usize },
    Cycle { n: usize },
    Path { n: usize },
    CompleteBipartite { a: usize, b: usize },
    Turan { n: usize, r: usize },
    Petersen,
}

pub fn standard(kind: &StandardKind) -> Result<Graph> {
    match *kind {
        StandardKind::Empty { n } => Ok(Graph::empty(n)),
        StandardKind::Complete { n } => Ok(complete(n)),
        StandardKind::Cycle { n } => cycle(n),
        StandardKind::Path { n } => path(n),
        StandardKind::CompleteBipartite { a, b } => Ok(complete_bipartite(a, b)),
        StandardKind::Turan { n, r } => turan(n, r),
        StandardKind::Petersen => Ok(petersen()),
    }
}

pub fn is_prime(q: u64) -> bool {
    q >= 2 && (2..).take_while(|d| d * d <= q).all(|d| !q.is_multiple_of(d))
}

/// Points of `PG(2, q)` in normalised form (first non-zero coordinate 1).
pub fn projective_points(q: u64) -> Vec<[u64; 3]> {
    let mut pts = Vec::with_capacity((q * q + q + 1) as usize);
    for y in 0..q {
        for z in 0..q {
            pts.push([1, y, z]);
        }
    }
    for z in 0..q {
        pts.push([0, 1, z]);
    }
    pts.push([0, 0, 1]);
    pts
}

/// The polarity graph `ER_q` for prime `q`: points of `PG(2,q)`, with
/// `x ~ y` iff `x·y ≡ 0 (mod q)`. Absolute points (`x·x ≡ 0`) would carry
/// loops; those are dropped.
pub fn polarity_graph(q: u64) -> Result<Graph> {
    if !is_prime(q) {
        return Err(Error::NotPrime(q));
    }
    let pts = projective_points(q);
    let dot = |x: &[u64; 3], y: &[u64; 3]| (x[0] * y[0] + x[1] * y[1] + x[2] * y[2]) % q;
    let mut edges = Vec::new();
    for (i, x) in pts.iter().enumerate() {
        for (j, y) in pts.iter().enumerate().skip(i + 1) {
            if dot(x, y) == 0 {
                edges.push((i, j));
            }
        }
    }
    Graph::build(pts.len(), &edges)
}

/// `G(n, p)` from a seeded Xoshiro256++ stream; pairs `(u, v)`, `u < v`, are
/// visited in lexicographic order and kept when a uniform draw in `[0, 1)`
/// falls below `p`.
pub fn random_gnp(n: usize, p: f64, seed: u64) -> Result<Graph> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::InvalidParameter(format!("p must lie in [0, 1], got {p}")));
    }
    let mut rng = Xoshiro256PlusPlus::seed_from_u64(seed);
    let mut edges = Vec::new();
    for u in 0..n {
        for v in (u + 1)..n {
            if rng.random::<f64>() < p {
                edges.push((u, v));
            }
        }
    }
    Graph::build(n, &edges)
}

/// The edge slots of an `n`-vertex labelled graph, `(i, j)` with `i < j` in
/// lexicographic order; bit `k` of an enumeration mask is slot `k`.
pub fn edge_slots(n: usize) -> Vec<(usize, usize)> {
    (0..n).flat_map(|i| ((i + 1)..n).map(move |j| (i, j))).collect()
}

/// Graph encoded by `mask` over [`edge_slots`].
pub fn graph_from_mask(n: usize, mask: u64) -> Graph {
    let mut adj = vec![VertexSet::new(n); n];
    let mut k = 0;
    for i in 0..n {
        for j in (i + 1)..n {
            if (mask >> k) & 1 == 1 {
                adj[i].insert(j);
                adj[j].insert(i);
            }
            k += 1;
        }
    }
    Graph::from_adjacency(adj)
}

type Filter = Box<dyn Fn(&Graph) -> bool + Send + Sync>;

/// Exhaustive stream of the `2^C(n,2)` labelled graphs on `n` vertices, in
/// increasing mask order, optionally filtered.
pub struct GraphStream {
    n: usize,
    masks: Range<u64>,
    filter: Option<Filter>,
}

pub fn enumerate_labelled(n: usize) -> Result<GraphStream> {
    if n > MAX_ENUMERATION_N {
        return Err(Error::CapExceeded {
            n,
            cap: MAX_ENUMERATION_N,
        });
    }
    Ok(GraphStream {
        n,
        masks: 0..(1u64 << pairs(n)),
        filter: None,
    })
}

impl GraphStream {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn total(&self) -> u64 {
        1u64 << pairs(self.n)
    }

    pub fn mask_range(&self) -> Range<u64> {
        self.masks.clone()
    }

    pub fn with_filter(mut self, f: impl Fn(&Graph) -> bool + Send + Sync + 'static) -> Self {
        self.filter = Some(Box::new(f));
        self
    }

    /// Skips `offset` masks and yields at most `limit` more.
    pub fn offset_limit(mut self, offset: u64, limit: Option<u64>) -> Self {
        let start = self.masks.start.saturating_add(offset).min(self.masks.end);
        let end = limit.map_or(self.masks.end, |l| start.saturating_add(l).min(self.masks.end));
        self.masks = start..end;
        self
    }

    /// Keeps the `index`-th of `count` contiguous blocks of the mask range.
    pub fn shard(mut self, index: u64, count: u64) -> Result<Self> {
        self.masks = shard_range(self.masks, index, count)?;
        Ok(self)
    }
}

pub fn shard_range(range: Range<u64>, index: u64, count: u64) -> Result<Range<u64>> {
    if count == 0 || index >= count {
        return Err(Error::InvalidParameter(format!("bad shard {index}/{count}")));
    }
    let len = range.end - range.start;
    let lo = range.start + (len as u128 * index as u128 / count as u128) as u64;
    let hi = range.start + (len as u128 * (index + 1) as u128 / count as u128) as u64;
    Ok(lo..hi)
}

impl Iterator for GraphStream {
    type Item = Graph;

    fn next(&mut self) -> Option<Graph> {
        for mask in self.masks.by_ref() {
            let g = graph_from_mask(self.n, mask);
            if self.filter.as_ref().is_none_or(|f| f(&g)) {
                return Some(g);
            }
        }
        None
    }
}

/// `Δ(n, H, t)`: most triangles in an `n`-vertex graph with no copy of `h`
/// and no induced `K_{2,t}`. `None` when no graph qualifies.
pub fn delta_max(n: usize, h: &Graph, t: usize) -> Result<Option<u64>> {
    let stream = enumerate_labelled(n)?;
    if h.n() > detect::MAX_PATTERN_VERTICES {
        return Err(Error::PatternTooLarge(h.n()));
    }
    if t < 2 {
        return Err(Error::InvalidParameter(format!("t must be >= 2, got {t}")));
    }
    let best = stream
        .mask_range()
        .into_par_iter()
        .filter_map(|mask| {
            let g = graph_from_mask(n, mask);
            let qualifies = detect::contains_subgraph(&g, h).ok()?.is_none()
                && !detect::has_induced_k2t(&g, t).ok()?;
            qualifies.then(|| g.triangle_count())
        })
        .max();
    Ok(best)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::detect::find_induced_k2t;
    use std::collections::HashSet;

    #[test]
    fn polarity_small_cases() {
        let g = polarity_graph(2).unwrap();
        assert_eq!((g.n(), g.edge_count()), (7, 9));
        assert_eq!(find_induced_k2t(&g, 2).unwrap(), None);
        assert!(detect::contains_subgraph(&g, &cycle(4).unwrap()).unwrap().is_none());
        let g = polarity_graph(3).unwrap();
        assert_eq!((g.n(), g.edge_count()), (13, 24));
        let g = polarity_graph(5).unwrap();
        assert_eq!((g.n(), g.edge_count()), (31, 90));
        assert_eq!(find_induced_k2t(&g, 2).unwrap(), None);
        assert_eq!(polarity_graph(4), Err(Error::NotPrime(4)));
        assert_eq!(polarity_graph(1), Err(Error::NotPrime(1)));
    }

    #[test]
    fn standard_graphs() {
        let k5 = standard(&StandardKind::Complete { n: 5 }).unwrap();
        assert_eq!(k5.edge_count(), 10);
        let t63 = turan(6, 3).unwrap();
        assert_eq!(t63, complete_multipartite(&[2, 2, 2]));
        assert_eq!(t63.edge_count(), 12);
        assert!(find_induced_k2t(&t63, 2).unwrap().is_some());
        let k23 = complete_bipartite(2, 3);
        assert_eq!(k23.edge_count(), 6);
        assert!(!k23.has_edge(0, 1) && !k23.has_edge(2, 3));
        assert!(cycle(2).is_err());
        assert!(path(0).is_err());
        assert!(turan(3, 0).is_err());
        let p = petersen();
        assert!(p.degrees().iter().all(|&d| d == 3));
    }

    #[test]
    fn random_graphs() {
        assert_eq!(random_gnp(10, 0.0, 7).unwrap().edge_count(), 0);
        assert_eq!(random_gnp(10, 1.0, 7).unwrap(), complete(10));
        let a = random_gnp(20, 0.5, 42).unwrap();
        let b = random_gnp(20, 0.5, 42).unwrap();
        assert_eq!(a.to_graph6(), b.to_graph6());
        assert_ne!(a, random_gnp(20, 0.5, 43).unwrap());
        assert!(random_gnp(5, 1.5, 0).is_err());
    }

    #[test]
    fn enumeration_counts() {
        assert_eq!(enumerate_labelled(3).unwrap().count(), 8);
        assert_eq!(enumerate_labelled(5).unwrap().count(), 1024);
        assert_eq!(enumerate_labelled(0).unwrap().count(), 1);
        assert!(enumerate_labelled(8).is_err());

        let seen: HashSet<String> = enumerate_labelled(5).unwrap().map(|g| g.to_graph6()).collect();
        assert_eq!(seen.len(), 1024);
    }

    #[test]
    fn enumeration_filter_matches_recount() {
        let filtered = enumerate_labelled(4)
            .unwrap()
            .with_filter(|g| g.triangle_count() == 0)
            .count();
        // Independent recount: a triple is a triangle iff its three slots are set.
        let slots = edge_slots(4);
        let idx = |a: usize, b: usize| slots.iter().position(|&s| s == (a.min(b), a.max(b))).unwrap();
        let recount = (0u64..64)
            .filter(|mask| {
                (0..4).all(|a| {
                    ((a + 1)..4).all(|b| {
                        ((b + 1)..4).all(|c| {
                            let bits = [idx(a, b), idx(a, c), idx(b, c)];
                            !bits.iter().all(|&k| (mask >> k) & 1 == 1)
                        })
                    })
                })
            })
            .count();
        assert_eq!(filtered, recount);
        assert_eq!(recount, 41);
    }

    #[test]
    fn stream_slicing() {
        let all: Vec<_> = enumerate_labelled(4).unwrap().collect();
        let part: Vec<_> = enumerate_labelled(4).unwrap().offset_limit(10, Some(5)).collect();
        assert_eq!(part, all[10..15].to_vec());
        let mut joined = Vec::new();
        for i in 0..3 {
            joined.extend(enumerate_labelled(4).unwrap().shard(i, 3).unwrap());
        }
        assert_eq!(joined, all);
        assert!(enumerate_labelled(4).unwrap().shard(3, 3).is_err());
    }

    #[test]
    fn delta_max_small() {
        assert_eq!(delta_max(3, &complete(3), 2).unwrap(), Some(0));
        assert!(delta_max(8, &complete(3), 2).is_err());
    }
}
