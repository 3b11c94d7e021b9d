//! Graph families `{H−x}`, `{H−ē}` and exact small Ramsey numbers
//! `R(K_t, F)` by exhaustive search.
//!
//! The search grows graphs one vertex at a time. "No independent `t`-set and
//! no member of `F`" is closed under deleting vertices, so every valid graph
//! on `k + 1` vertices extends a valid graph on its first `k` vertices, and
//! only the new vertex has to be checked: its non-neighbours must hold no
//! independent `(t−1)`-set and no member of `F` may embed through it.
//! Graphs here have at most [`MAX_RAMSEY_CAP`] vertices and live in `u32`
//! adjacency masks.

use rayon::prelude::*;
use serde::Serialize;

use crate::bounds::binomial;
use crate::detect::{self, MAX_PATTERN_VERTICES};
use crate::error::{Error, Result};
use crate::graph::Graph;

pub const MAX_RAMSEY_CAP: usize = 10;
pub const DEFAULT_RAMSEY_CAP: usize = 9;

/// Depth at which the search tree is split into parallel subtrees.
const SPLIT_DEPTH: usize = 4;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum FamilyOrigin {
    MinusVertex,
    MinusVertexOrNonedge,
    Explicit,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GraphFamily {
    pub members: Vec<Graph>,
    pub origin: FamilyOrigin,
}

impl GraphFamily {
    /// Members deduplicated up to isomorphism, first occurrence kept.
    pub fn explicit(members: Vec<Graph>) -> Result<GraphFamily> {
        if members.is_empty() {
            return Err(Error::EmptyFamily);
        }
        Ok(GraphFamily {
            members: dedup(members),
            origin: FamilyOrigin::Explicit,
        })
    }

    /// `{K_r}`.
    pub fn clique(r: usize) -> GraphFamily {
        GraphFamily {
            members: vec![crate::constructions::complete(r)],
            origin: FamilyOrigin::Explicit,
        }
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    fn min_order(&self) -> usize {
        self.members.iter().map(Graph::n).min().unwrap_or(0)
    }
}

fn dedup(members: Vec<Graph>) -> Vec<Graph> {
    let mut out: Vec<Graph> = Vec::new();
    for g in members {
        if !out.iter().any(|h| detect::is_isomorphic(h, &g)) {
            out.push(g);
        }
    }
    out
}

fn check_family_source(h: &Graph) -> Result<()> {
    if h.n() < 2 {
        return Err(Error::InvalidParameter(format!("H needs at least 2 vertices, got {}", h.n())));
    }
    if h.n() > MAX_PATTERN_VERTICES + 1 {
        return Err(Error::PatternTooLarge(h.n()));
    }
    Ok(())
}

/// `{H − x : x ∈ V(H)}` up to isomorphism.
pub fn family_minus_vertex(h: &Graph) -> Result<GraphFamily> {
    check_family_source(h)?;
    let members = (0..h.n())
        .map(|x| h.remove_vertex(x).map(|s| s.graph))
        .collect::<Result<Vec<_>>>()?;
    Ok(GraphFamily {
        members: dedup(members),
        origin: FamilyOrigin::MinusVertex,
    })
}

/// `{H − x} ∪ {H − {u, v} : uv ∉ E(H)}` up to isomorphism.
pub fn family_minus_ebar(h: &Graph) -> Result<GraphFamily> {
    let mut members = family_minus_vertex(h)?.members;
    for (u, v) in h.missing_edges() {
        let mut keep = h.vertices();
        keep.remove(u);
        keep.remove(v);
        members.push(h.induced_subgraph(&keep).graph);
    }
    Ok(GraphFamily {
        members: dedup(members),
        origin: FamilyOrigin::MinusVertexOrNonedge,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RamseyQuery {
    /// Independent-set side.
    pub t: usize,
    pub family: GraphFamily,
}

impl RamseyQuery {
    pub fn new(t: usize, family: GraphFamily) -> Result<RamseyQuery> {
        if t < 2 {
            return Err(Error::InvalidParameter(format!("t must be >= 2, got {t}")));
        }
        if family.is_empty() {
            return Err(Error::EmptyFamily);
        }
        if let Some(big) = family.members.iter().find(|m| m.n() > MAX_PATTERN_VERTICES) {
            return Err(Error::PatternTooLarge(big.n()));
        }
        Ok(RamseyQuery { t, family })
    }

    /// `R(t, r)`.
    pub fn classical(t: usize, r: usize) -> Result<RamseyQuery> {
        RamseyQuery::new(t, GraphFamily::clique(r))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RamseyResult {
    pub lower: u64,
    pub upper: u64,
    pub exact: Option<u64>,
    /// A graph on `lower − 1` vertices with no independent `t`-set and no
    /// family member; absent when `lower ≤ 1`.
    pub lower_witness: Option<Graph>,
    pub n_cap: usize,
    /// Valid graphs visited by the search.
    pub nodes: u64,
}

impl RamseyResult {
    /// Re-checks the witness with the general-purpose detectors.
    pub fn witness_is_valid(&self, query: &RamseyQuery) -> Result<bool> {
        let Some(w) = &self.lower_witness else {
            return Ok(self.lower <= 1);
        };
        Ok(w.n() as u64 + 1 == self.lower
            && detect::find_independent_set(w, query.t).is_none()
            && detect::contains_family_member(w, &query.family.members)?.is_none())
    }
}

/// Pattern graph in mask form with per-anchor matching orders.
#[derive(Clone, Debug)]
struct MaskPattern {
    adj: Vec<u32>,
    /// `orders[p]` places `p` first, then vertices with the most already
    /// placed neighbours.
    orders: Vec<Vec<usize>>,
}

impl MaskPattern {
    fn new(h: &Graph) -> MaskPattern {
        let k = h.n();
        let adj: Vec<u32> = (0..k).map(|v| to_mask(h.neighbours(v).iter())).collect();
        let orders = (0..k)
            .map(|p| {
                let mut order = vec![p];
                let mut placed = 1u32 << p;
                while order.len() < k {
                    let next = (0..k)
                        .filter(|&q| placed >> q & 1 == 0)
                        .max_by_key(|&q| ((adj[q] & placed).count_ones(), adj[q].count_ones(), std::cmp::Reverse(q)))
                        .expect("unplaced vertex");
                    placed |= 1 << next;
                    order.push(next);
                }
                order
            })
            .collect();
        MaskPattern { adj, orders }
    }

    fn n(&self) -> usize {
        self.adj.len()
    }

    fn degree(&self, p: usize) -> u32 {
        self.adj[p].count_ones()
    }

    fn is_clique(&self) -> bool {
        let k = self.n() as u32;
        self.adj.iter().all(|a| a.count_ones() + 1 == k)
    }

    /// Copy of the pattern in the host on `k` vertices.
    #[cfg(test)]
    fn embeds(&self, host: &[u32], k: usize) -> bool {
        (0..k).any(|v| self.embeds_through(host, k, v))
    }

    /// Copy of the pattern in the host (first `k` vertices) using vertex `v`.
    fn embeds_through(&self, host: &[u32], k: usize, v: usize) -> bool {
        if self.n() > k {
            return false;
        }
        let deg_v = host[v].count_ones();
        let mut map = [usize::MAX; MAX_PATTERN_VERTICES];
        for p in 0..self.n() {
            if self.degree(p) > deg_v {
                continue;
            }
            map[p] = v;
            if self.extend(host, k, &self.orders[p], 1, &mut map, 1 << v) {
                return true;
            }
            map[p] = usize::MAX;
        }
        false
    }

    fn extend(&self, host: &[u32], k: usize, order: &[usize], depth: usize, map: &mut [usize], used: u32) -> bool {
        if depth == order.len() {
            return true;
        }
        let p = order[depth];
        let mut cands = low_mask(k) & !used;
        let mut nbrs = self.adj[p];
        while nbrs != 0 {
            let q = nbrs.trailing_zeros() as usize;
            nbrs &= nbrs - 1;
            if map[q] != usize::MAX {
                cands &= host[map[q]];
            }
        }
        let need = self.degree(p);
        while cands != 0 {
            let w = cands.trailing_zeros() as usize;
            cands &= cands - 1;
            if host[w].count_ones() < need {
                continue;
            }
            map[p] = w;
            if self.extend(host, k, order, depth + 1, map, used | 1 << w) {
                map[p] = usize::MAX;
                return true;
            }
        }
        map[p] = usize::MAX;
        false
    }
}

fn to_mask(vs: impl Iterator<Item = usize>) -> u32 {
    vs.fold(0, |m, v| m | 1 << v)
}

fn low_mask(k: usize) -> u32 {
    if k >= 32 {
        u32::MAX
    } else {
        (1u32 << k) - 1
    }
}

/// Whether `cands` contains `size` pairwise adjacent vertices.
fn has_clique_in(adj: &[u32], cands: u32, size: u32) -> bool {
    if size == 0 {
        return true;
    }
    if cands.count_ones() < size {
        return false;
    }
    let mut rest = cands;
    while rest != 0 && rest.count_ones() >= size {
        let v = rest.trailing_zeros() as usize;
        rest &= rest - 1;
        if has_clique_in(adj, rest & adj[v], size - 1) {
            return true;
        }
    }
    false
}

/// Whether `cands` contains `size` pairwise non-adjacent vertices.
fn has_independent_in(adj: &[u32], cands: u32, size: u32) -> bool {
    if size == 0 {
        return true;
    }
    if cands.count_ones() < size {
        return false;
    }
    let mut rest = cands;
    while rest != 0 && rest.count_ones() >= size {
        let v = rest.trailing_zeros() as usize;
        rest &= rest - 1;
        if has_independent_in(adj, rest & !adj[v], size - 1) {
            return true;
        }
    }
    false
}

struct Search {
    t: u32,
    cap: usize,
    patterns: Vec<MaskPattern>,
    /// Sizes of the clique members when the whole family is cliques.
    clique_sizes: Option<Vec<u32>>,
}

#[derive(Clone, Debug)]
struct Best {
    depth: usize,
    adj: [u32; MAX_RAMSEY_CAP],
    nodes: u64,
}

impl Search {
    /// Whether vertex `k` with neighbourhood `nbrs` keeps the graph valid.
    fn accepts(&self, adj: &[u32; MAX_RAMSEY_CAP], k: usize, nbrs: u32) -> bool {
        if has_independent_in(adj, low_mask(k) & !nbrs, self.t - 1) {
            return false;
        }
        match &self.clique_sizes {
            Some(sizes) => !sizes.iter().any(|&r| has_clique_in(adj, nbrs, r - 1)),
            None => {
                let mut trial = *adj;
                trial[k] = nbrs;
                let mut m = nbrs;
                while m != 0 {
                    let u = m.trailing_zeros() as usize;
                    m &= m - 1;
                    trial[u] |= 1 << k;
                }
                !self.patterns.iter().any(|p| p.embeds_through(&trial, k + 1, k))
            }
        }
    }

    fn children(&self, adj: &[u32; MAX_RAMSEY_CAP], k: usize) -> impl Iterator<Item = [u32; MAX_RAMSEY_CAP]> + '_ {
        let adj = *adj;
        (0..(1u32 << k)).filter_map(move |nbrs| {
            self.accepts(&adj, k, nbrs).then(|| {
                let mut next = adj;
                next[k] = nbrs;
                let mut m = nbrs;
                while m != 0 {
                    let u = m.trailing_zeros() as usize;
                    m &= m - 1;
                    next[u] |= 1 << k;
                }
                next
            })
        })
    }

    /// First graph of maximum order in depth-first preorder below `adj`.
    fn explore(&self, adj: &[u32; MAX_RAMSEY_CAP], k: usize) -> Best {
        let mut best = Best {
            depth: k,
            adj: *adj,
            nodes: 1,
        };
        if k == self.cap {
            return best;
        }
        for child in self.children(adj, k) {
            let sub = self.explore(&child, k + 1);
            best.nodes += sub.nodes;
            if sub.depth > best.depth {
                best.depth = sub.depth;
                best.adj = sub.adj;
            }
        }
        best
    }

    /// Preorder walk down to `split`, returning the best node above `split`
    /// and the frontier nodes at `split`, both in preorder.
    fn frontier(&self, adj: &[u32; MAX_RAMSEY_CAP], k: usize, split: usize, shallow: &mut Best, out: &mut Vec<[u32; MAX_RAMSEY_CAP]>) {
        shallow.nodes += 1;
        if k > shallow.depth {
            shallow.depth = k;
            shallow.adj = *adj;
        }
        if k == split {
            shallow.nodes -= 1;
            out.push(*adj);
            return;
        }
        for child in self.children(adj, k) {
            self.frontier(&child, k + 1, split, shallow, out);
        }
    }

    fn run(&self) -> Best {
        let root = [0u32; MAX_RAMSEY_CAP];
        let split = SPLIT_DEPTH.min(self.cap);
        let mut shallow = Best {
            depth: 0,
            adj: root,
            nodes: 0,
        };
        let mut frontier = Vec::new();
        self.frontier(&root, 0, split, &mut shallow, &mut frontier);
        let subtrees: Vec<Best> = frontier.par_iter().map(|adj| self.explore(adj, split)).collect();
        let nodes = shallow.nodes + subtrees.iter().map(|b| b.nodes).sum::<u64>();
        // Earliest subtree among those reaching the deepest level, which is
        // exactly what a sequential preorder walk would report.
        let mut best = shallow;
        for sub in subtrees {
            if sub.depth > best.depth {
                best.depth = sub.depth;
                best.adj = sub.adj;
            }
        }
        best.nodes = nodes;
        best
    }
}

fn graph_from_masks(adj: &[u32], k: usize) -> Graph {
    let mut edges = Vec::new();
    for (u, &row) in adj.iter().enumerate().take(k) {
        let mut m = row & low_mask(k) & !low_mask(u + 1);
        while m != 0 {
            let v = m.trailing_zeros() as usize;
            m &= m - 1;
            edges.push((u, v));
        }
    }
    Graph::build(k, &edges).expect("mask graph is simple")
}

/// Exact `R(K_t, F)` if it is at most `n_cap + 1`, otherwise a bracket whose
/// upper end is the Erdős–Szekeres bound for the smallest member.
pub fn ramsey_exact(query: &RamseyQuery, n_cap: usize) -> Result<RamseyResult> {
    if n_cap > MAX_RAMSEY_CAP {
        return Err(Error::CapExceeded {
            n: n_cap,
            cap: MAX_RAMSEY_CAP,
        });
    }
    // The empty graph is contained in everything, so one vertex suffices.
    if query.family.min_order() == 0 {
        return Ok(RamseyResult {
            lower: 1,
            upper: 1,
            exact: Some(1),
            lower_witness: None,
            n_cap,
            nodes: 0,
        });
    }
    let patterns: Vec<MaskPattern> = query.family.members.iter().map(MaskPattern::new).collect();
    let clique_sizes = patterns
        .iter()
        .all(MaskPattern::is_clique)
        .then(|| patterns.iter().map(|p| p.n() as u32).collect());
    let search = Search {
        t: query.t as u32,
        cap: n_cap,
        patterns,
        clique_sizes,
    };
    let best = search.run();
    let witness = (best.depth > 0).then(|| graph_from_masks(&best.adj, best.depth));
    let result = if best.depth < n_cap {
        let value = best.depth as u64 + 1;
        RamseyResult {
            lower: value,
            upper: value,
            exact: Some(value),
            lower_witness: witness,
            n_cap,
            nodes: best.nodes,
        }
    } else {
        let v = query.family.min_order() as u64;
        let t = query.t as u64;
        let upper = binomial(v + t - 2, t - 1).map_or(u64::MAX, |b| b.min(u64::MAX as u128) as u64);
        RamseyResult {
            lower: n_cap as u64 + 1,
            upper,
            exact: None,
            lower_witness: witness,
            n_cap,
            nodes: best.nodes,
        }
    };
    debug_assert!(result.lower <= result.upper);
    Ok(result)
}

/// `R(K_t, {H − x})` with the default cap.
pub fn ramsey_minus_vertex(h: &Graph, t: usize) -> Result<RamseyResult> {
    ramsey_exact(&RamseyQuery::new(t, family_minus_vertex(h)?)?, DEFAULT_RAMSEY_CAP)
}

/// `R(K_t, {H − ē})` with the default cap.
pub fn ramsey_minus_ebar(h: &Graph, t: usize) -> Result<RamseyResult> {
    ramsey_exact(&RamseyQuery::new(t, family_minus_ebar(h)?)?, DEFAULT_RAMSEY_CAP)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Provenance {
    /// `R(t, 1) = 1`, `R(t, 2) = t`, `R(2, r) = r`.
    Trivial,
    /// Reproduced by [`ramsey_exact`] in this crate's tests.
    Searched,
    /// Classical published value beyond the in-crate search cap.
    Literature,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct KnownRamsey {
    pub value: u64,
    pub provenance: Provenance,
}

const TABLE: &[(usize, u64, u64, Provenance)] = &[
    (3, 3, 6, Provenance::Searched),
    (3, 4, 9, Provenance::Searched),
    (3, 5, 14, Provenance::Literature),
    (3, 6, 18, Provenance::Literature),
    (3, 7, 23, Provenance::Literature),
    (3, 8, 28, Provenance::Literature),
    (3, 9, 36, Provenance::Literature),
    (4, 4, 18, Provenance::Literature),
    (4, 5, 25, Provenance::Literature),
];

/// Classical `R(t, r)` (symmetric in its arguments).
pub fn known_ramsey(t: usize, r: u64) -> Option<KnownRamsey> {
    let (a, b) = if (t as u64) <= r { (t as u64, r) } else { (r, t as u64) };
    let trivial = |value| Some(KnownRamsey { value, provenance: Provenance::Trivial });
    match a {
        0 => None,
        1 => trivial(1),
        2 => trivial(b),
        _ => TABLE
            .iter()
            .find(|&&(x, y, _, _)| x as u64 == a && y == b)
            .map(|&(_, _, value, provenance)| KnownRamsey { value, provenance }),
    }
}

/// [`known_ramsey`] restricted to values reproduced in-crate, shaped for
/// [`crate::bounds::clique_guarantee`].
pub fn exact_small_ramsey(t: usize, r: u64) -> Option<f64> {
    known_ramsey(t, r)
        .filter(|k| k.provenance != Provenance::Literature)
        .map(|k| k.value as f64)
}
