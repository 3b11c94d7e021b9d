//! Constructive clique/subgraph extraction for graphs with no induced
//! `K_{2,t}`.
//!
//! For each vertex `v` a greedy maximal packing of disjoint independent
//! `t`-sets in `Γ(v)` lower-bounds the missing edges `m_v` inside `G_v`.
//! Averaging `Σ m_v` over the missing edges picks a non-adjacent pair `a, b`
//! whose common neighbourhood `S` is large; `G[S]` then holds either an
//! independent `t`-set (an induced `K_{2,t}` with `a, b`) or a copy of some
//! `H − x`, which `a` completes to a copy of `H`.

use rayon::prelude::*;
use serde::Serialize;

use crate::bounds;
use crate::detect::{self, Embedding, InducedK2tCertificate, WitnessCertificate, MAX_PATTERN_VERTICES};
use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};
use crate::ramsey;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Packing {
    pub v: usize,
    pub parts: Vec<VertexSet>,
    pub gamma: usize,
}

impl Packing {
    /// Disjoint independent `t`-subsets of `Γ(v)` leaving no independent
    /// `t`-set behind.
    pub fn is_valid(&self, g: &Graph, t: usize) -> bool {
        if self.v >= g.n() || self.gamma != self.parts.len() {
            return false;
        }
        let mut rest = g.neighbours(self.v).clone();
        for part in &self.parts {
            if part.len() != t || !part.is_subset(&rest) || !g.is_independent(part) {
                return false;
            }
            rest.difference_with(part);
        }
        detect::find_independent_set_within(g, &rest, t).is_none()
    }
}

fn check_t(t: usize) -> Result<()> {
    if t < 2 {
        return Err(Error::InvalidParameter(format!("t must be >= 2, got {t}")));
    }
    Ok(())
}

/// Repeatedly removes the lexicographically least independent `t`-set from
/// what is left of `Γ(v)`.
pub fn greedy_packing(g: &Graph, v: usize, t: usize) -> Result<Packing> {
    check_t(t)?;
    g.check_vertex(v)?;
    let mut rest = g.neighbours(v).clone();
    let mut parts = Vec::new();
    while let Some(part) = detect::find_independent_set_within(g, &rest, t) {
        rest.difference_with(&part);
        parts.push(part);
    }
    Ok(Packing {
        v,
        gamma: parts.len(),
        parts,
    })
}

/// `q(x) = ((t−1)/2)·x·(x+t−1)`.
pub fn q(x: usize, t: usize) -> f64 {
    (t as f64 - 1.0) / 2.0 * x as f64 * (x as f64 + t as f64 - 1.0)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VertexLedger {
    pub v: usize,
    pub degree: usize,
    /// Non-adjacent pairs inside `Γ(v)`.
    pub m_v: u64,
    /// Edges inside `Γ(v)`.
    pub e_v: u64,
    pub gamma_v: usize,
    pub q_of_gamma: f64,
}

impl VertexLedger {
    /// `m_v ≥ q(γ_v)`, compared exactly as `2m_v ≥ (t−1)γ(γ+t−1)`.
    pub fn q_bound_holds(&self, t: usize) -> bool {
        let gamma = self.gamma_v as u64;
        2 * self.m_v >= (t as u64 - 1) * gamma * (gamma + t as u64 - 1)
    }

    /// `m_v + e_v = C(deg, 2)`.
    pub fn identity_holds(&self) -> bool {
        self.m_v + self.e_v == crate::graph::pairs(self.degree)
    }
}

pub(crate) fn vertex_ledger(g: &Graph, v: usize, t: usize) -> Result<VertexLedger> {
    let nbrs = g.neighbours(v);
    let members = nbrs.to_vec();
    let mut m_v = 0;
    for (i, &x) in members.iter().enumerate() {
        m_v += members[i + 1..].iter().filter(|&&y| !g.has_edge(x, y)).count() as u64;
    }
    let gamma_v = greedy_packing(g, v, t)?.gamma;
    Ok(VertexLedger {
        v,
        degree: nbrs.len(),
        m_v,
        e_v: g.edges_within(nbrs) as u64,
        gamma_v,
        q_of_gamma: q(gamma_v, t),
    })
}

/// Per-vertex ledger, computed in parallel and returned in vertex order.
pub fn ledger(g: &Graph, t: usize) -> Result<Vec<VertexLedger>> {
    check_t(t)?;
    (0..g.n()).into_par_iter().map(|v| vertex_ledger(g, v, t)).collect()
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PigeonholeChoice {
    pub edge: (usize, usize),
    pub s: VertexSet,
    pub sum_m: u64,
    pub missing: u64,
    /// `Σ m_v / |M|`, a lower bound on `|S|`.
    pub average: f64,
}

/// Missing edge with the largest common neighbourhood (ties lexicographic).
/// `None` for complete graphs.
pub fn pigeonhole_edge(g: &Graph, ledgers: &[VertexLedger]) -> Result<Option<PigeonholeChoice>> {
    let missing = g.missing_edges();
    if missing.is_empty() {
        return Ok(None);
    }
    let mut best: Option<((usize, usize), VertexSet)> = None;
    for &(a, b) in &missing {
        let s = g.common_neighbourhood(a, b)?;
        if best.as_ref().is_none_or(|(_, cur)| s.len() > cur.len()) {
            best = Some(((a, b), s));
        }
    }
    let (edge, s) = best.expect("at least one missing edge");
    let sum_m: u64 = ledgers.iter().map(|l| l.m_v).sum();
    let average = sum_m as f64 / missing.len() as f64;
    debug_assert!(s.len() as f64 >= average);
    Ok(Some(PigeonholeChoice {
        edge,
        s,
        sum_m,
        missing: missing.len() as u64,
        average,
    }))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Outcome {
    HEmbedded,
    InducedK2tFound,
    HypothesisNotMet,
    BoundaryDegenerate,
}

/// `R(K_t, {H − x})` as used by the extraction.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct RamseyThreshold {
    /// Exact value, or an upper bound when `exact` is false.
    pub value: u64,
    pub exact: bool,
}

impl RamseyThreshold {
    pub fn compute(h: &Graph, t: usize) -> Result<RamseyThreshold> {
        let res = ramsey::ramsey_minus_vertex(h, t)?;
        Ok(RamseyThreshold {
            value: res.exact.unwrap_or(res.upper),
            exact: res.exact.is_some(),
        })
    }
}

/// Where the input sits relative to the theorem's hypothesis `R ≤ β²n`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Slack {
    pub s_size: usize,
    pub ramsey_threshold: RamseyThreshold,
    pub beta_sq_n: f64,
    pub hypothesis_holds: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ProofTrace {
    pub t: usize,
    pub ledgers: Vec<VertexLedger>,
    pub sum_m: u64,
    pub missing_count: u64,
    pub averaging_bound: Option<f64>,
    pub selected_edge: Option<(usize, usize)>,
    #[serde(rename = "S")]
    pub s: Option<VertexSet>,
    pub outcome: Outcome,
    pub certificate: Option<WitnessCertificate>,
    pub slack: Slack,
}

pub fn extract(g: &Graph, h: &Graph, t: usize) -> Result<ProofTrace> {
    check_inputs(h, t)?;
    let threshold = RamseyThreshold::compute(h, t)?;
    extract_with_threshold(g, h, t, threshold)
}

fn check_inputs(h: &Graph, t: usize) -> Result<()> {
    check_t(t)?;
    if h.n() > MAX_PATTERN_VERTICES {
        return Err(Error::PatternTooLarge(h.n()));
    }
    if h.n() < 2 {
        return Err(Error::InvalidParameter(format!("H needs at least 2 vertices, got {}", h.n())));
    }
    Ok(())
}

/// As [`extract`] with a precomputed `R(K_t, {H − x})`.
pub fn extract_with_threshold(g: &Graph, h: &Graph, t: usize, threshold: RamseyThreshold) -> Result<ProofTrace> {
    check_inputs(h, t)?;
    let ledgers = ledger(g, t)?;
    let sum_m = ledgers.iter().map(|l| l.m_v).sum();
    let beta_sq_n = match g.density() {
        Ok(d) => bounds::beta(d.alpha, t)?.beta_sq() * g.n() as f64,
        Err(_) => 0.0,
    };
    let mut slack = Slack {
        s_size: 0,
        ramsey_threshold: threshold,
        beta_sq_n,
        hypothesis_holds: threshold.value as f64 <= beta_sq_n,
    };
    let Some(choice) = pigeonhole_edge(g, &ledgers)? else {
        return Ok(ProofTrace {
            t,
            ledgers,
            sum_m,
            missing_count: 0,
            averaging_bound: None,
            selected_edge: None,
            s: None,
            outcome: Outcome::BoundaryDegenerate,
            certificate: None,
            slack,
        });
    };
    slack.s_size = choice.s.len();
    let (a, b) = choice.edge;
    let trace = |outcome, certificate| ProofTrace {
        t,
        ledgers: ledgers.clone(),
        sum_m,
        missing_count: choice.missing,
        averaging_bound: Some(choice.average),
        selected_edge: Some(choice.edge),
        s: Some(choice.s.clone()),
        outcome,
        certificate,
        slack,
    };

    if let Some(t_side) = detect::find_independent_set_within(g, &choice.s, t) {
        let cert = InducedK2tCertificate { a, b, t_side };
        return Ok(trace(Outcome::InducedK2tFound, Some(WitnessCertificate::InducedK2t(cert))));
    }
    if let Some(emb) = embed_via_endpoint(g, h, &choice.s, a)? {
        return Ok(trace(Outcome::HEmbedded, Some(WitnessCertificate::Embedding(emb))));
    }
    // With the hypothesis met, a small S means the averaging step failed,
    // which only happens when G has an induced K_{2,t} elsewhere.
    if slack.hypothesis_holds {
        if let Some(cert) = detect::find_induced_k2t(g, t)? {
            return Ok(trace(Outcome::InducedK2tFound, Some(WitnessCertificate::InducedK2t(cert))));
        }
    }
    Ok(trace(Outcome::HypothesisNotMet, None))
}

/// A copy of `H − x` inside `G[S]` for some `x`, completed to `H` by mapping
/// `x` to `a` (adjacent to all of `S`).
fn embed_via_endpoint(g: &Graph, h: &Graph, s: &VertexSet, a: usize) -> Result<Option<Embedding>> {
    let inner = g.induced_subgraph(s);
    for x in 0..h.n() {
        let hx = h.remove_vertex(x)?;
        if let Some(e) = detect::contains_subgraph(&inner.graph, &hx.graph)? {
            let mut map = vec![usize::MAX; h.n()];
            for (i, &host_vertex) in e.map.iter().enumerate() {
                map[hx.lift(i)] = inner.lift(host_vertex);
            }
            map[x] = a;
            let emb = Embedding {
                pattern: h.clone(),
                map,
            };
            debug_assert!(emb.verify(g));
            return Ok(Some(emb));
        }
    }
    Ok(None)
}

/// Re-derives every field of `trace` from `g` and checks the certificate.
pub fn verify_trace(g: &Graph, trace: &ProofTrace, h: &Graph, t: usize) -> bool {
    verify_trace_inner(g, trace, h, t).unwrap_or(false)
}

fn verify_trace_inner(g: &Graph, trace: &ProofTrace, h: &Graph, t: usize) -> Result<bool> {
    if trace.t != t || trace.ledgers.len() != g.n() {
        return Ok(false);
    }
    for (v, l) in trace.ledgers.iter().enumerate() {
        let nbrs = g.neighbours(v);
        let e_v = g.edges_within(nbrs) as u64;
        let m_v = crate::graph::pairs(nbrs.len()) - e_v;
        let packing = greedy_packing(g, v, t)?;
        if l.v != v || l.degree != nbrs.len() || l.e_v != e_v || l.m_v != m_v || l.gamma_v != packing.gamma {
            return Ok(false);
        }
    }
    let missing = g.missing_edges();
    if trace.sum_m != trace.ledgers.iter().map(|l| l.m_v).sum::<u64>() || trace.missing_count != missing.len() as u64 {
        return Ok(false);
    }

    if trace.outcome == Outcome::BoundaryDegenerate {
        return Ok(missing.is_empty() && trace.selected_edge.is_none() && trace.certificate.is_none());
    }
    let (Some((a, b)), Some(s)) = (trace.selected_edge, trace.s.as_ref()) else {
        return Ok(false);
    };
    if a >= g.n() || b >= g.n() || a == b || g.has_edge(a, b) || *s != g.common_neighbourhood(a, b)? {
        return Ok(false);
    }
    // Every missing edge lies in exactly |CN| neighbourhoods, so Σ m_v is the
    // total over M and the chosen S is at least the average.
    let mut total = 0;
    for &(x, y) in &missing {
        let cn = g.common_neighbourhood(x, y)?.len();
        if cn > s.len() {
            return Ok(false);
        }
        total += cn as u64;
    }
    if total != trace.sum_m || trace.slack.s_size != s.len() {
        return Ok(false);
    }

    Ok(match (&trace.outcome, &trace.certificate) {
        (Outcome::HEmbedded, Some(WitnessCertificate::Embedding(e))) => e.pattern == *h && e.verify(g),
        (Outcome::InducedK2tFound, Some(WitnessCertificate::InducedK2t(c))) => c.verify(g, t),
        (Outcome::HypothesisNotMet, None) => {
            let inner = g.induced_subgraph(s);
            let family = ramsey::family_minus_vertex(h)?;
            detect::find_independent_set(&inner.graph, t).is_none()
                && detect::contains_family_member(&inner.graph, &family.members)?.is_none()
        }
        _ => false,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{complete, cycle, petersen, random_gnp};

    fn k5_minus_01() -> Graph {
        let edges: Vec<_> = complete(5).edges().filter(|&e| e != (0, 1)).collect();
        Graph::build(5, &edges).unwrap()
    }

    #[test]
    fn packing_examples() {
        for v in 0..5 {
            assert_eq!(greedy_packing(&complete(5), v, 2).unwrap().gamma, 0);
            assert_eq!(greedy_packing(&cycle(5).unwrap(), v, 2).unwrap().gamma, 1);
        }
        let p = petersen();
        for v in 0..10 {
            let pk = greedy_packing(&p, v, 2).unwrap();
            assert_eq!(pk.gamma, 1);
            assert!(pk.is_valid(&p, 2));
        }
        assert!(greedy_packing(&p, 0, 1).is_err());
        assert!(greedy_packing(&p, 10, 2).is_err());
    }

    #[test]
    fn ledger_examples() {
        for l in ledger(&complete(4), 2).unwrap() {
            assert_eq!((l.m_v, l.gamma_v, l.q_of_gamma), (0, 0, 0.0));
        }
        for g in [cycle(5).unwrap(), cycle(4).unwrap()] {
            for l in ledger(&g, 2).unwrap() {
                assert_eq!((l.m_v, l.gamma_v, l.q_of_gamma), (1, 1, 1.0));
                assert!(l.q_bound_holds(2) && l.identity_holds());
            }
        }
    }

    #[test]
    fn pigeonhole_examples() {
        let g = k5_minus_01();
        let c = pigeonhole_edge(&g, &ledger(&g, 2).unwrap()).unwrap().unwrap();
        assert_eq!(c.edge, (0, 1));
        assert_eq!(c.s.to_vec(), vec![2, 3, 4]);

        let c4 = cycle(4).unwrap();
        let c = pigeonhole_edge(&c4, &ledger(&c4, 2).unwrap()).unwrap().unwrap();
        assert_eq!((c.edge, c.s.to_vec()), ((0, 2), vec![1, 3]));

        let k4 = complete(4);
        assert_eq!(pigeonhole_edge(&k4, &ledger(&k4, 2).unwrap()).unwrap(), None);
    }

    #[test]
    fn extract_examples() {
        let g = k5_minus_01();
        let tr = extract(&g, &complete(4), 2).unwrap();
        assert_eq!(tr.outcome, Outcome::HEmbedded);
        assert_eq!(tr.s.as_ref().unwrap().to_vec(), vec![2, 3, 4]);
        let Some(WitnessCertificate::Embedding(e)) = &tr.certificate else { panic!() };
        assert!(e.map.contains(&0));
        assert!(verify_trace(&g, &tr, &complete(4), 2));

        let c4 = cycle(4).unwrap();
        let tr = extract(&c4, &complete(3), 2).unwrap();
        assert_eq!(tr.outcome, Outcome::InducedK2tFound);
        assert!(verify_trace(&c4, &tr, &complete(3), 2));

        let c5 = cycle(5).unwrap();
        let tr = extract(&c5, &complete(3), 2).unwrap();
        assert_eq!(tr.outcome, Outcome::HypothesisNotMet);
        assert!((tr.slack.beta_sq_n - 0.428_932_188_134_524_8).abs() < 1e-12);
        assert_eq!(tr.slack.ramsey_threshold, RamseyThreshold { value: 2, exact: true });
        assert!(!tr.slack.hypothesis_holds);
        assert!(verify_trace(&c5, &tr, &complete(3), 2));

        let k5 = complete(5);
        let tr = extract(&k5, &complete(3), 2).unwrap();
        assert_eq!(tr.outcome, Outcome::BoundaryDegenerate);
        assert!(verify_trace(&k5, &tr, &complete(3), 2));
    }

    #[test]
    fn corrupted_traces_are_rejected() {
        let g = k5_minus_01();
        let h = complete(4);
        let tr = extract(&g, &h, 2).unwrap();

        let mut bad = tr.clone();
        if let Some(WitnessCertificate::Embedding(e)) = &mut bad.certificate {
            e.map[0] = e.map[1];
        }
        assert!(!verify_trace(&g, &bad, &h, 2));

        let mut bad = tr.clone();
        bad.s = Some(VertexSet::from_vertices(5, [2, 3]));
        assert!(!verify_trace(&g, &bad, &h, 2));

        let mut bad = tr.clone();
        bad.ledgers[0].m_v += 1;
        assert!(!verify_trace(&g, &bad, &h, 2));

        let mut bad = tr;
        bad.outcome = Outcome::HypothesisNotMet;
        assert!(!verify_trace(&g, &bad, &h, 2));
    }

    #[test]
    fn random_traces_verify() {
        let h = complete(4);
        let threshold = RamseyThreshold::compute(&h, 2).unwrap();
        for seed in 0..60 {
            let g = random_gnp(14, 0.3 + (seed % 3) as f64 * 0.2, seed).unwrap();
            let tr = extract_with_threshold(&g, &h, 2, threshold).unwrap();
            assert!(verify_trace(&g, &tr, &h, 2), "seed {seed}");
            if tr.slack.hypothesis_holds && !g.missing_edges().is_empty() {
                assert_ne!(tr.outcome, Outcome::HypothesisNotMet, "seed {seed}");
            }
        }
    }

    #[test]
    fn rejects_bad_inputs() {
        assert!(extract(&cycle(5).unwrap(), &complete(11), 2).is_err());
        assert!(extract(&cycle(5).unwrap(), &complete(3), 1).is_err());
    }
}
