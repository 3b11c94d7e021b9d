//! Exact detectors: independent sets, induced `K_{2,t}`, subgraph copies and
//! maximum cliques.
//!
//! Independent-set queries run the clique kernel on the complement, so there
//! is a single branch-and-bound engine behind every search here. All searches
//! break ties by vertex order and are deterministic.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};

/// Largest pattern accepted by [`contains_subgraph`].
pub const MAX_PATTERN_VERTICES: usize = 10;

/// Non-adjacent `a`, `b` and an independent set `t_side` inside their common
/// neighbourhood: an induced `K_{2,t}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InducedK2tCertificate {
    pub a: usize,
    pub b: usize,
    pub t_side: VertexSet,
}

impl InducedK2tCertificate {
    pub fn verify(&self, g: &Graph, t: usize) -> bool {
        let (a, b) = (self.a, self.b);
        a < g.n()
            && b < g.n()
            && a != b
            && !g.has_edge(a, b)
            && self.t_side.len() == t
            && !self.t_side.contains(a)
            && !self.t_side.contains(b)
            && self.t_side.iter().all(|x| x < g.n() && g.has_edge(a, x) && g.has_edge(b, x))
            && g.is_independent(&self.t_side)
    }
}

/// A (not necessarily induced) copy of `pattern` in a host graph.
/// `map[p]` is the host vertex playing pattern vertex `p`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Embedding {
    pub pattern: Graph,
    pub map: Vec<usize>,
}

impl Embedding {
    pub fn verify(&self, host: &Graph) -> bool {
        if self.map.len() != self.pattern.n() || self.map.iter().any(|&v| v >= host.n()) {
            return false;
        }
        let image = VertexSet::from_vertices(host.n(), self.map.iter().copied());
        image.len() == self.map.len()
            && self
                .pattern
                .edges()
                .all(|(p, q)| host.has_edge(self.map[p], self.map[q]))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum WitnessCertificate {
    Embedding(Embedding),
    InducedK2t(InducedK2tCertificate),
    Clique { vertices: VertexSet },
}

impl WitnessCertificate {
    /// `t` is only consulted for induced `K_{2,t}` certificates.
    pub fn verify(&self, g: &Graph, t: usize) -> bool {
        match self {
            WitnessCertificate::Embedding(e) => e.verify(g),
            WitnessCertificate::InducedK2t(c) => c.verify(g, t),
            WitnessCertificate::Clique { vertices } => {
                vertices.iter().all(|v| v < g.n()) && g.is_clique(vertices)
            }
        }
    }
}

/// Branch-and-bound clique search over an adjacency list, with greedy
/// colouring bounds.
struct CliqueKernel<'a> {
    adj: &'a [VertexSet],
}

impl CliqueKernel<'_> {
    /// Greedy sequential colouring of `cands` in vertex order. Returns the
    /// vertices sorted by colour class and each one's (1-based) colour.
    fn colour_sort(&self, cands: &VertexSet) -> (Vec<usize>, Vec<usize>) {
        let mut order = Vec::with_capacity(cands.len());
        let mut colours = Vec::with_capacity(cands.len());
        let mut uncoloured = cands.clone();
        let mut colour = 0;
        while !uncoloured.is_empty() {
            colour += 1;
            let mut available = uncoloured.clone();
            while let Some(v) = available.first() {
                available.remove(v);
                available.difference_with(&self.adj[v]);
                uncoloured.remove(v);
                order.push(v);
                colours.push(colour);
            }
        }
        (order, colours)
    }

    fn colour_count(&self, cands: &VertexSet) -> usize {
        let mut uncoloured = cands.clone();
        let mut colour = 0;
        while !uncoloured.is_empty() {
            colour += 1;
            let mut available = uncoloured.clone();
            while let Some(v) = available.first() {
                available.remove(v);
                available.difference_with(&self.adj[v]);
                uncoloured.remove(v);
            }
        }
        colour
    }

    fn maximum(&self, cands: &VertexSet) -> Vec<usize> {
        let mut best = Vec::new();
        let mut current = Vec::new();
        self.expand(cands.clone(), &mut current, &mut best);
        best.sort_unstable();
        best
    }

    fn expand(&self, mut cands: VertexSet, current: &mut Vec<usize>, best: &mut Vec<usize>) {
        let (order, colours) = self.colour_sort(&cands);
        for i in (0..order.len()).rev() {
            if current.len() + colours[i] <= best.len() {
                return;
            }
            let v = order[i];
            current.push(v);
            let next = cands.intersection(&self.adj[v]);
            if next.is_empty() {
                if current.len() > best.len() {
                    best.clone_from(current);
                }
            } else {
                self.expand(next, current, best);
            }
            current.pop();
            cands.remove(v);
        }
    }

    /// Lexicographically least clique of exactly `k` vertices inside `cands`.
    fn first_of_size(&self, cands: &VertexSet, k: usize) -> Option<Vec<usize>> {
        let mut current = Vec::with_capacity(k);
        self.first_rec(cands, k, &mut current).then_some(current)
    }

    fn first_rec(&self, cands: &VertexSet, k: usize, current: &mut Vec<usize>) -> bool {
        if current.len() == k {
            return true;
        }
        let need = k - current.len();
        if cands.len() < need || (need > 1 && self.colour_count(cands) < need) {
            return false;
        }
        for v in cands.iter() {
            let mut next = cands.intersection(&self.adj[v]);
            next.retain_above(v);
            current.push(v);
            if self.first_rec(&next, k, current) {
                return true;
            }
            current.pop();
        }
        false
    }
}

fn complement_adjacency(g: &Graph) -> Vec<VertexSet> {
    let full = g.vertices();
    (0..g.n())
        .map(|v| {
            let mut s = full.difference(g.neighbours(v));
            s.remove(v);
            s
        })
        .collect()
}

/// Lexicographically least independent set of size `t`, if any.
pub fn find_independent_set(g: &Graph, t: usize) -> Option<VertexSet> {
    find_independent_set_within(g, &g.vertices(), t)
}

/// As [`find_independent_set`], restricted to vertices of `within`.
pub fn find_independent_set_within(g: &Graph, within: &VertexSet, t: usize) -> Option<VertexSet> {
    let comp = complement_adjacency(g);
    independent_within(g, &comp, within, t)
}

fn independent_within(
    g: &Graph,
    comp: &[VertexSet],
    within: &VertexSet,
    t: usize,
) -> Option<VertexSet> {
    CliqueKernel { adj: comp }
        .first_of_size(within, t)
        .map(|vs| VertexSet::from_vertices(g.n(), vs))
}

/// Induced `K_{2,t}` search.
///
/// Non-adjacent pairs are tried in order of decreasing common-neighbourhood
/// size (ties lexicographic); inside each common neighbourhood an independent
/// `t`-set is sought.
pub fn find_induced_k2t(g: &Graph, t: usize) -> Result<Option<InducedK2tCertificate>> {
    if t < 2 {
        return Err(Error::InvalidParameter(format!("induced K_{{2,t}} needs t >= 2, got {t}")));
    }
    let mut candidates: Vec<(usize, usize, VertexSet)> = Vec::new();
    for (a, b) in g.missing_edges() {
        let common = g.common_neighbourhood(a, b)?;
        if common.len() >= t {
            candidates.push((a, b, common));
        }
    }
    if candidates.is_empty() {
        return Ok(None);
    }
    candidates.sort_by(|x, y| y.2.len().cmp(&x.2.len()).then((x.0, x.1).cmp(&(y.0, y.1))));
    let comp = complement_adjacency(g);
    for (a, b, common) in candidates {
        if let Some(t_side) = independent_within(g, &comp, &common, t) {
            let cert = InducedK2tCertificate { a, b, t_side };
            debug_assert!(cert.verify(g, t));
            return Ok(Some(cert));
        }
    }
    Ok(None)
}

/// Convenience predicate over [`find_induced_k2t`].
pub fn has_induced_k2t(g: &Graph, t: usize) -> Result<bool> {
    Ok(find_induced_k2t(g, t)?.is_some())
}

/// A maximum clique (sorted). Errors on the empty graph.
pub fn max_clique(g: &Graph) -> Result<VertexSet> {
    if g.n() == 0 {
        return Err(Error::InvalidParameter("max_clique of a graph with no vertices".into()));
    }
    let clique = CliqueKernel { adj: g.adjacency() }.maximum(&g.vertices());
    let set = VertexSet::from_vertices(g.n(), clique);
    debug_assert!(g.is_clique(&set));
    Ok(set)
}

/// `ω(G)`, with `ω` of the empty graph taken as 0.
pub fn clique_number(g: &Graph) -> usize {
    if g.n() == 0 {
        0
    } else {
        CliqueKernel { adj: g.adjacency() }.maximum(&g.vertices()).len()
    }
}

/// Lexicographically least clique on exactly `k` vertices.
pub fn find_clique(g: &Graph, k: usize) -> Option<VertexSet> {
    CliqueKernel { adj: g.adjacency() }
        .first_of_size(&g.vertices(), k)
        .map(|vs| VertexSet::from_vertices(g.n(), vs))
}

/// A maximum independent set (sorted).
pub fn max_independent_set(g: &Graph) -> VertexSet {
    let comp = complement_adjacency(g);
    VertexSet::from_vertices(g.n(), CliqueKernel { adj: &comp }.maximum(&g.vertices()))
}

/// Finds a copy of `h` as a (not necessarily induced) subgraph of `g`.
pub fn contains_subgraph(g: &Graph, h: &Graph) -> Result<Option<Embedding>> {
    if h.n() > MAX_PATTERN_VERTICES {
        return Err(Error::PatternTooLarge(h.n()));
    }
    Ok(embed(g, h).map(|map| Embedding {
        pattern: h.clone(),
        map,
    }))
}

/// First embedding over `family`, trying members in the given order.
pub fn contains_family_member(g: &Graph, family: &[Graph]) -> Result<Option<Embedding>> {
    if family.is_empty() {
        return Err(Error::EmptyFamily);
    }
    for h in family {
        if let Some(e) = contains_subgraph(g, h)? {
            return Ok(Some(e));
        }
    }
    Ok(None)
}

/// Exact isomorphism test.
pub fn is_isomorphic(a: &Graph, b: &Graph) -> bool {
    if a.n() != b.n() || a.edge_count() != b.edge_count() {
        return false;
    }
    let mut da = a.degrees();
    let mut db = b.degrees();
    da.sort_unstable();
    db.sort_unstable();
    // An injective edge-preserving map between graphs with equal vertex and
    // edge counts is an isomorphism.
    da == db && embed(a, b).is_some()
}

/// Backtracking subgraph matcher. Pattern vertices are placed highest degree
/// first, then preferring vertices with the most already-placed neighbours.
fn embed(host: &Graph, pattern: &Graph) -> Option<Vec<usize>> {
    let k = pattern.n();
    if k > host.n() || pattern.edge_count() > host.edge_count() {
        return None;
    }
    let order = match_order(pattern);
    let host_degrees = host.degrees();
    let mut map = vec![usize::MAX; k];
    let mut used = VertexSet::new(host.n());
    let ok = embed_rec(host, pattern, &order, &host_degrees, 0, &mut map, &mut used);
    ok.then_some(map)
}

fn match_order(pattern: &Graph) -> Vec<usize> {
    let k = pattern.n();
    let mut placed = VertexSet::new(k);
    let mut order = Vec::with_capacity(k);
    for _ in 0..k {
        let next = (0..k)
            .filter(|&p| !placed.contains(p))
            .max_by(|&p, &q| {
                let key = |v: usize| (pattern.neighbours(v).intersection_len(&placed), pattern.degree(v));
                key(p).cmp(&key(q)).then(q.cmp(&p))
            })
            .expect("unplaced vertex remains");
        placed.insert(next);
        order.push(next);
    }
    order
}

fn embed_rec(
    host: &Graph,
    pattern: &Graph,
    order: &[usize],
    host_degrees: &[usize],
    depth: usize,
    map: &mut [usize],
    used: &mut VertexSet,
) -> bool {
    if depth == order.len() {
        return true;
    }
    let p = order[depth];
    let mut cands = host.vertices();
    cands.difference_with(used);
    for q in pattern.neighbours(p).iter() {
        if map[q] != usize::MAX {
            cands.intersect_with(host.neighbours(map[q]));
        }
    }
    let need = pattern.degree(p);
    for v in cands.iter() {
        if host_degrees[v] < need {
            continue;
        }
        map[p] = v;
        used.insert(v);
        if embed_rec(host, pattern, order, host_degrees, depth + 1, map, used) {
            return true;
        }
        used.remove(v);
        map[p] = usize::MAX;
    }
    false
}
