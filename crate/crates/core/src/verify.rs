//! Verification suites: exhaustive and randomised checks of every bound and
//! proof step, reporting violations as re-checkable graph6 payloads.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::Range;
use std::str::FromStr;

use rayon::prelude::*;
use serde::Serialize;

use crate::bounds::{self, FormulaId};
use crate::constructions::{self, complete, cycle, graph_from_mask, polarity_graph, random_gnp, MAX_ENUMERATION_N};
use crate::detect::{self, WitnessCertificate};
use crate::error::{Error, Result};
use crate::graph::{pairs, Graph};
use crate::ramsey::{self, exact_small_ramsey, RamseyQuery};
use crate::witness::{self, Outcome, RamseyThreshold};

/// Violations kept per report; the total is always counted.
pub const MAX_REPORTED_VIOLATIONS: usize = 100;

/// Relative tolerance for real-valued inequalities whose two sides can
/// coincide exactly (both sides carry `β²`, which is irrational in general).
pub const REAL_TOLERANCE: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SuiteId {
    Beta,
    CliqueExhaustive,
    ProofIneq,
    RamseySmall,
    Polarity,
    TriangleThm,
    TuranUpper,
    WitnessRandom,
    TriangleBound,
}

impl SuiteId {
    pub const ALL: [SuiteId; 9] = [
        SuiteId::Beta,
        SuiteId::CliqueExhaustive,
        SuiteId::ProofIneq,
        SuiteId::RamseySmall,
        SuiteId::Polarity,
        SuiteId::TriangleThm,
        SuiteId::TuranUpper,
        SuiteId::WitnessRandom,
        SuiteId::TriangleBound,
    ];

    pub fn name(self) -> &'static str {
        match self {
            SuiteId::Beta => "beta",
            SuiteId::CliqueExhaustive => "clique-exhaustive",
            SuiteId::ProofIneq => "proof-ineq",
            SuiteId::RamseySmall => "ramsey-small",
            SuiteId::Polarity => "polarity",
            SuiteId::TriangleThm => "triangle-thm",
            SuiteId::TuranUpper => "turan-upper",
            SuiteId::WitnessRandom => "witness-random",
            SuiteId::TriangleBound => "triangle-bound",
        }
    }

    /// Default largest graph order for the exhaustive suites.
    pub fn default_n_max(self) -> usize {
        match self {
            SuiteId::TriangleThm => 6,
            _ => MAX_ENUMERATION_N,
        }
    }
}

impl fmt::Display for SuiteId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SuiteId {
    type Err = Error;

    fn from_str(s: &str) -> Result<SuiteId> {
        SuiteId::ALL
            .into_iter()
            .find(|id| id.name() == s)
            .ok_or_else(|| Error::InvalidParameter(format!("unknown suite {s:?}")))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SuiteConfig {
    pub n_max: usize,
    pub t_values: Vec<usize>,
    /// `(index, count)`: run the `index`-th of `count` contiguous blocks.
    pub shard: Option<(u64, u64)>,
    pub seed: u64,
    pub samples: usize,
}

impl SuiteConfig {
    pub fn for_suite(id: SuiteId) -> SuiteConfig {
        SuiteConfig {
            n_max: id.default_n_max(),
            t_values: vec![2, 3],
            shard: None,
            seed: 0,
            samples: 1000,
        }
    }

    fn shard_of(&self, range: Range<u64>) -> Result<Range<u64>> {
        match self.shard {
            Some((i, k)) => constructions::shard_range(range, i, k),
            None => Ok(range),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct Violation {
    /// The offending graph, when there is one.
    pub graph6: Option<String>,
    pub claim: String,
    pub observed: String,
    pub required: String,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SuiteReport {
    pub suite: SuiteId,
    pub config: SuiteConfig,
    /// Checks performed, by claim id.
    pub checked: BTreeMap<String, u64>,
    pub violation_count: u64,
    pub violations: Vec<Violation>,
    /// Inputs at `α = 1`, excluded from the claims and counted here.
    pub boundary_cases: u64,
    pub notes: Vec<String>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.violation_count == 0
    }
}

/// Order-independent accumulator for parallel suites.
#[derive(Clone, Debug, Default)]
struct Tally {
    checked: BTreeMap<String, u64>,
    violations: Vec<(Vec<u64>, Violation)>,
    violation_count: u64,
    boundary: u64,
}

impl Tally {
    fn check(&mut self, claim: &str, ok: bool, violation: impl FnOnce() -> (Vec<u64>, Violation)) {
        *self.checked.entry(claim.to_string()).or_default() += 1;
        if !ok {
            self.violation_count += 1;
            self.violations.push(violation());
            self.trim();
        }
    }

    fn count(&mut self, key: &str) {
        *self.checked.entry(key.to_string()).or_default() += 1;
    }

    /// Keeps the smallest keys, so merge order does not matter.
    fn trim(&mut self) {
        if self.violations.len() > 2 * MAX_REPORTED_VIOLATIONS {
            self.violations.sort();
            self.violations.truncate(MAX_REPORTED_VIOLATIONS);
        }
    }

    fn merge(mut self, other: Tally) -> Tally {
        for (k, v) in other.checked {
            *self.checked.entry(k).or_default() += v;
        }
        self.violations.extend(other.violations);
        self.violation_count += other.violation_count;
        self.boundary += other.boundary;
        self.trim();
        self
    }

    fn finish(mut self, suite: SuiteId, config: &SuiteConfig, notes: Vec<String>) -> SuiteReport {
        self.violations.sort();
        self.violations.truncate(MAX_REPORTED_VIOLATIONS);
        SuiteReport {
            suite,
            config: config.clone(),
            checked: self.checked,
            violation_count: self.violation_count,
            violations: self.violations.into_iter().map(|(_, v)| v).collect(),
            boundary_cases: self.boundary,
            notes,
        }
    }
}

fn violation(key: Vec<u64>, g: Option<&Graph>, claim: impl Into<String>, observed: impl fmt::Display, required: impl fmt::Display) -> (Vec<u64>, Violation) {
    (
        key,
        Violation {
            graph6: g.map(Graph::to_graph6),
            claim: claim.into(),
            observed: observed.to_string(),
            required: required.to_string(),
        },
    )
}

fn real_ge(lhs: f64, rhs: f64) -> bool {
    lhs >= rhs - REAL_TOLERANCE * rhs.abs().max(1.0)
}

fn check_config(id: SuiteId, config: &SuiteConfig) -> Result<()> {
    let exhaustive = matches!(
        id,
        SuiteId::CliqueExhaustive | SuiteId::ProofIneq | SuiteId::TriangleThm | SuiteId::TuranUpper
    );
    if exhaustive && config.n_max > MAX_ENUMERATION_N {
        return Err(Error::CapExceeded {
            n: config.n_max,
            cap: MAX_ENUMERATION_N,
        });
    }
    if config.t_values.iter().any(|&t| t < 2) {
        return Err(Error::InvalidParameter("every t must be >= 2".into()));
    }
    if let Some((i, k)) = config.shard {
        if k == 0 || i >= k {
            return Err(Error::InvalidParameter(format!("bad shard {i}/{k}")));
        }
    }
    Ok(())
}

pub fn run_suite(id: SuiteId, config: &SuiteConfig) -> Result<SuiteReport> {
    check_config(id, config)?;
    match id {
        SuiteId::Beta => beta_suite(config),
        SuiteId::CliqueExhaustive => clique_exhaustive(config),
        SuiteId::ProofIneq => proof_ineq(config),
        SuiteId::RamseySmall => ramsey_small(config),
        SuiteId::Polarity => polarity_suite(config),
        SuiteId::TriangleThm => triangle_thm(config),
        SuiteId::TuranUpper => turan_upper(config),
        SuiteId::WitnessRandom => witness_random(config),
        SuiteId::TriangleBound => triangle_bound(config),
    }
}

/// Runs `per_graph` over every labelled graph with `2 ≤ n ≤ n_max` (each
/// order's mask range sharded), in parallel.
fn exhaustive(config: &SuiteConfig, n_min: usize, per_graph: impl Fn(usize, u64, &Graph, &mut Tally) + Sync) -> Result<Tally> {
    let mut total = Tally::default();
    for n in n_min..=config.n_max {
        let masks = config.shard_of(0..1u64 << pairs(n))?;
        let tally = masks
            .into_par_iter()
            .fold(Tally::default, |mut tally, mask| {
                let g = graph_from_mask(n, mask);
                per_graph(n, mask, &g, &mut tally);
                tally
            })
            .reduce(Tally::default, Tally::merge);
        total = total.merge(tally);
    }
    Ok(total)
}

fn shard_indices(config: &SuiteConfig, len: usize) -> Result<Range<usize>> {
    let r = config.shard_of(0..len as u64)?;
    Ok(r.start as usize..r.end as usize)
}

const BETA_GRID_STEPS: usize = 100;

fn beta_suite(config: &SuiteConfig) -> Result<SuiteReport> {
    let ts = 2..=10usize;
    let cells: Vec<(usize, usize)> = ts.flat_map(|t| (0..=BETA_GRID_STEPS).map(move |i| (t, i))).collect();
    let mut tally = Tally::default();
    for &(t, i) in &cells[shard_indices(config, cells.len())?] {
        let alpha = i as f64 / BETA_GRID_STEPS as f64;
        let b = bounds::beta(alpha, t)?;
        let key = vec![t as u64, i as u64];
        let at = format!("(alpha={alpha}, t={t})");
        let res = b.identity_residual();
        tally.check("identity-residual", res <= 1e-10, || {
            violation(key.clone(), None, format!("identity-residual {at}"), res, "<= 1e-10")
        });
        let (lo, hi) = b.bracket_slack();
        tally.check("bracket", lo >= -1e-12 && hi >= -1e-12, || {
            violation(key.clone(), None, format!("bracket {at}"), format!("slack ({lo}, {hi})"), ">= -1e-12")
        });
        if t == 2 {
            let closed = 1.0 - (1.0 - alpha).sqrt();
            let diff = (b.beta - closed).abs();
            tally.check("t2-closed-form", diff <= 1e-12, || {
                violation(key.clone(), None, format!("t2-closed-form {at}"), diff, "<= 1e-12")
            });
        }
    }
    Ok(tally.finish(SuiteId::Beta, config, vec![]))
}

/// Integer clique guarantees for every edge count on `n` vertices with
/// `α < 1`: `(claim, guarantee)` pairs.
fn guarantee_table(n: usize, t: usize) -> Result<Vec<Vec<(String, i64)>>> {
    let p = pairs(n);
    (0..p)
        .map(|e| {
            let alpha = e as f64 / p as f64;
            let mut row: Vec<(String, i64)> = bounds::clique_lower_report(n, alpha, t)?
                .into_iter()
                .filter(|r| r.applicable)
                .filter_map(|r| r.integer_guarantee.map(|k| (formula_claim(r.formula_id), k)))
                .collect();
            let cg = bounds::clique_guarantee(n, alpha, t, exact_small_ramsey)?;
            row.push(("clique-guarantee".into(), cg.omega_at_least as i64));
            Ok(row)
        })
        .collect()
}

fn formula_claim(id: FormulaId) -> String {
    format!("formula:{}", id.name())
}

fn clique_exhaustive(config: &SuiteConfig) -> Result<SuiteReport> {
    let tables: BTreeMap<(usize, usize), Vec<Vec<(String, i64)>>> = (2..=config.n_max)
        .flat_map(|n| config.t_values.iter().map(move |&t| (n, t)))
        .map(|(n, t)| guarantee_table(n, t).map(|tab| ((n, t), tab)))
        .collect::<Result<_>>()?;
    let tally = exhaustive(config, 2, |n, mask, g, tally| {
        let e = g.edge_count();
        let omega = detect::clique_number(g) as i64;
        for &t in &config.t_values {
            if detect::has_induced_k2t(g, t).unwrap_or(true) {
                tally.count("skipped:induced-k2t");
                continue;
            }
            if e as u64 == pairs(n) {
                tally.boundary += 1;
                continue;
            }
            for (claim, k) in &tables[&(n, t)][e] {
                tally.check(claim, omega >= *k, || {
                    violation(vec![n as u64, mask, t as u64], Some(g), format!("{claim} (t={t})"), omega, format!(">= {k}"))
                });
            }
        }
    })?;
    Ok(tally.finish(SuiteId::CliqueExhaustive, config, vec![]))
}

fn proof_ineq(config: &SuiteConfig) -> Result<SuiteReport> {
    let tally = exhaustive(config, 2, |n, mask, g, tally| {
        let key = |t: usize| vec![n as u64, mask, t as u64];
        let stats = g.density().expect("n >= 2");
        for &t in &config.t_values {
            let ledgers: Vec<_> = (0..n)
                .map(|v| witness::vertex_ledger(g, v, t).expect("valid vertex and t"))
                .collect();
            let k2t_free = !detect::has_induced_k2t(g, t).unwrap_or(true);
            for l in &ledgers {
                tally.check("ledger-identity", l.identity_holds(), || {
                    violation(key(t), Some(g), format!("ledger-identity (v={}, t={t})", l.v), l.m_v + l.e_v, pairs(l.degree))
                });
                if k2t_free {
                    tally.check("m-v-ge-q", l.q_bound_holds(t), || {
                        violation(key(t), Some(g), format!("m-v-ge-q (v={}, t={t})", l.v), l.m_v, l.q_of_gamma)
                    });
                }
                // The residual neighbourhood after a maximal packing has no
                // independent t-set and no K_{ω(G_v)+1}.
                let local = g.neighbourhood_subgraph(l.v).expect("valid vertex");
                let w = detect::clique_number(&local.graph) as u64;
                if let Some(r) = exact_small_ramsey(t, w + 1) {
                    let residual = l.degree as i64 - (t * l.gamma_v) as i64;
                    tally.check("packing-residual", residual < r as i64, || {
                        violation(key(t), Some(g), format!("packing-residual (v={}, t={t})", l.v), residual, format!("<= {}", r as i64 - 1))
                    });
                }
            }
            if !k2t_free {
                continue;
            }
            if stats.is_complete() {
                tally.boundary += 1;
                continue;
            }
            let cg = bounds::clique_guarantee(n, stats.alpha, t, exact_small_ramsey).expect("valid parameters");
            if cg.r < 1 || detect::find_clique(g, cg.r as usize + 1).is_some() {
                continue;
            }
            tally.count("in-scope:no-k-r-plus-1");
            let sum_m: u64 = ledgers.iter().map(|l| l.m_v).sum();
            let rhs = stats.missing_count as f64 * cg.beta_sq_n;
            tally.check("averaging", real_ge(sum_m as f64, rhs), || {
                violation(key(t), Some(g), format!("averaging (t={t})"), sum_m, format!(">= {rhs}"))
            });
            let mean_gamma = ledgers.iter().map(|l| l.gamma_v).sum::<usize>() as f64 / n as f64;
            let b2 = cg.beta_sq_n / n as f64;
            let need = (stats.alpha - b2) * (n as f64 - 1.0) / t as f64;
            tally.check("gamma-aggregate", real_ge(mean_gamma, need), || {
                violation(key(t), Some(g), format!("gamma-aggregate (t={t})"), mean_gamma, format!(">= {need}"))
            });
        }
    })?;
    let notes = vec!["averaging and gamma-aggregate apply only to graphs with no K_{r+1}; by the clique guarantee there are none, so in-scope:no-k-r-plus-1 is expected to be absent".into()];
    Ok(tally.finish(SuiteId::ProofIneq, config, notes))
}

fn ramsey_small(config: &SuiteConfig) -> Result<SuiteReport> {
    // (t, r, R(t, r))
    let mut cases = vec![(3, 3, 6)];
    cases.extend((1..=8).map(|r| (2, r, r as u64)));
    cases.push((3, 4, 9));
    let mut tally = Tally::default();
    let mut notes = Vec::new();
    for i in shard_indices(config, cases.len())? {
        let (t, r, expected) = cases[i];
        let q = RamseyQuery::classical(t, r)?;
        let res = ramsey::ramsey_exact(&q, ramsey::DEFAULT_RAMSEY_CAP)?;
        let claim = format!("R({t},{r})");
        tally.check("exact-value", res.exact == Some(expected), || {
            violation(vec![i as u64], None, claim.clone(), format!("{:?}", res.exact), expected)
        });
        let valid = res.witness_is_valid(&q)?;
        tally.check("witness-valid", valid, || {
            violation(vec![i as u64], res.lower_witness.as_ref(), format!("witness {claim}"), "invalid", "no independent t-set and no K_r")
        });
        if (t, r) == (3, 3) {
            let is_c5 = res.lower_witness.as_ref().is_some_and(|w| detect::is_isomorphic(w, &cycle(5).expect("n >= 3")));
            tally.check("r33-witness-c5", is_c5, || {
                violation(vec![i as u64], res.lower_witness.as_ref(), "witness R(3,3) is C5", "other", "C5")
            });
        }
        notes.push(format!("{claim} = {:?} ({} nodes)", res.exact, res.nodes));
    }
    Ok(tally.finish(SuiteId::RamseySmall, config, notes))
}

pub const POLARITY_QS: [u64; 4] = [2, 3, 5, 7];

fn polarity_suite(config: &SuiteConfig) -> Result<SuiteReport> {
    let mut tally = Tally::default();
    for &q in &POLARITY_QS[shard_indices(config, POLARITY_QS.len())?] {
        let g = polarity_graph(q)?;
        let key = vec![q];
        let claim = |c: &str| format!("{c} (q={q})");
        let n = (q * q + q + 1) as usize;
        tally.check("vertex-count", g.n() == n, || violation(key.clone(), Some(&g), claim("vertex-count"), g.n(), n));
        let m = (q * (q + 1) * (q + 1) / 2) as usize;
        tally.check("edge-count", g.edge_count() == m, || violation(key.clone(), Some(&g), claim("edge-count"), g.edge_count(), m));
        let low = g.degrees().iter().filter(|&&d| d == q as usize).count();
        let high = g.degrees().iter().filter(|&&d| d == q as usize + 1).count();
        tally.check("degrees", low == q as usize + 1 && low + high == n, || {
            violation(key.clone(), Some(&g), claim("degrees"), format!("{low} of degree q, {high} of degree q+1"), format!("{} of degree q, rest q+1", q + 1))
        });
        let k22 = detect::find_induced_k2t(&g, 2)?;
        tally.check("no-induced-k22", k22.is_none(), || violation(key.clone(), Some(&g), claim("no-induced-k22"), "found", "none"));
    }
    Ok(tally.finish(SuiteId::Polarity, config, vec![]))
}

fn triangle_thm(config: &SuiteConfig) -> Result<SuiteReport> {
    let h = complete(3);
    let t = 2;
    let r_ebar = ramsey::ramsey_minus_ebar(&h, t)?
        .exact
        .ok_or_else(|| Error::InvalidParameter("R(K_2, {K3 - ebar}) unresolved".into()))?;
    let mut deltas = BTreeMap::new();
    let mut notes = vec![format!("R(K_2, {{K3 - ebar}}) = {r_ebar}")];
    for n in 2..=config.n_max {
        let d = constructions::delta_max(n, &h, t)?.unwrap_or(0);
        notes.push(format!("Delta({n}, K3, 2) = {d}"));
        deltas.insert(n, d);
    }
    let tally = exhaustive(config, 2, |n, mask, g, tally| {
        if detect::has_induced_k2t(g, t).unwrap_or(true) {
            return;
        }
        let cond = bounds::triangle_theorem_condition_exact(n, g.edge_count() as u64, r_ebar, deltas[&n]).expect("n >= 2");
        if !cond {
            return;
        }
        let has_k3 = g.triangle_count() > 0;
        tally.check("condition-implies-k3", has_k3, || {
            violation(vec![n as u64, mask], Some(g), "condition-implies-k3", "triangle-free", "contains K3")
        });
    })?;
    Ok(tally.finish(SuiteId::TriangleThm, config, notes))
}

/// Forbidden graphs for the Turán checks.
pub fn turan_battery() -> Vec<(&'static str, Graph)> {
    vec![
        ("K3", complete(3)),
        ("K4", complete(4)),
        ("K5", complete(5)),
        ("C4", cycle(4).expect("n >= 3")),
        ("C5", cycle(5).expect("n >= 3")),
    ]
}

struct TuranCase {
    name: &'static str,
    h: Graph,
    t: usize,
    ramsey: u64,
}

fn turan_cases(ts: &[usize]) -> Result<Vec<TuranCase>> {
    let mut out = Vec::new();
    for (name, h) in turan_battery() {
        for &t in ts {
            let r = ramsey::ramsey_minus_vertex(&h, t)?;
            let ramsey = r
                .exact
                .ok_or_else(|| Error::InvalidParameter(format!("R(K_{t}, {{{name} - x}}) unresolved")))?;
            out.push(TuranCase { name, h: h.clone(), t, ramsey });
        }
    }
    Ok(out)
}

/// Checks `e(G)` against every induced Turán bound for one case; the caller
/// guarantees `G` has no induced `K_{2,t}` and no `H`.
fn check_turan(case: &TuranCase, g: &Graph, key: Vec<u64>, tally: &mut Tally) {
    let n = g.n();
    let e = g.edge_count() as f64;
    let mut bounds_here = bounds::induced_turan_upper(n, case.t, case.h.n(), Some(case.ramsey)).expect("n >= 2");
    bounds_here.retain(|b| b.formula_id == FormulaId::InducedTuranRamsey);
    if case.t >= 2 {
        // No induced K_{2,t} is no induced K_{2,(t−1)+1}.
        bounds_here.extend(bounds::induced_turan_upper(n, case.t - 1, case.h.n(), None).expect("n >= 2"));
    }
    for b in bounds_here {
        let claim = formula_claim(b.formula_id);
        tally.check(&claim, e < b.bound, || {
            violation(key.clone(), Some(g), format!("{claim} (H={}, t={})", case.name, case.t), e, format!("< {}", b.bound))
        });
    }
}

fn turan_upper(config: &SuiteConfig) -> Result<SuiteReport> {
    let cases = turan_cases(&config.t_values)?;
    let mut notes: Vec<String> = cases
        .iter()
        .map(|c| format!("R(K_{}, {{{} - x}}) = {}", c.t, c.name, c.ramsey))
        .collect();
    let mut tally = exhaustive(config, 2, |n, mask, g, tally| {
        for (i, case) in cases.iter().enumerate() {
            if detect::has_induced_k2t(g, case.t).unwrap_or(true) || detect::contains_subgraph(g, &case.h).map_or(true, |e| e.is_some()) {
                continue;
            }
            check_turan(case, g, vec![0, n as u64, mask, i as u64], tally);
        }
    })?;

    let random = random_witness_graphs(config)?;
    let random_cases: Vec<&TuranCase> = cases.iter().filter(|c| c.t == 2).collect();
    let mut in_scope = 0;
    for (idx, g) in &random {
        for (i, case) in random_cases.iter().enumerate() {
            if detect::has_induced_k2t(g, 2)? || detect::contains_subgraph(g, &case.h)?.is_some() {
                continue;
            }
            in_scope += 1;
            check_turan(case, g, vec![1, *idx as u64, i as u64], &mut tally);
        }
    }
    notes.push(format!("random graphs: {} sampled, {in_scope} (graph, H) pairs in scope", random.len()));
    Ok(tally.finish(SuiteId::TuranUpper, config, notes))
}

pub const WITNESS_N: usize = 20;
pub const WITNESS_PS: [f64; 3] = [0.3, 0.5, 0.7];

/// The seeded random graphs of the witness suite: sample `i` is
/// `G(20, p_{i mod 3})` with seed `config.seed + i`.
fn random_witness_graphs(config: &SuiteConfig) -> Result<Vec<(usize, Graph)>> {
    shard_indices(config, config.samples)?
        .map(|i| random_gnp(WITNESS_N, WITNESS_PS[i % 3], config.seed + i as u64).map(|g| (i, g)))
        .collect()
}

fn witness_random(config: &SuiteConfig) -> Result<SuiteReport> {
    let h = complete(4);
    let t = 2;
    let threshold = RamseyThreshold::compute(&h, t)?;
    let graphs = random_witness_graphs(config)?;
    let tally = graphs
        .par_iter()
        .map(|(i, g)| -> Result<Tally> {
            let mut tally = Tally::default();
            let key = vec![*i as u64];
            let trace = witness::extract_with_threshold(g, &h, t, threshold)?;
            tally.count(&format!("outcome:{}", outcome_name(trace.outcome)));
            let ok = witness::verify_trace(g, &trace, &h, t);
            tally.check("trace-verifies", ok, || violation(key.clone(), Some(g), "trace-verifies", "false", "true"));
            match (&trace.outcome, &trace.certificate) {
                (Outcome::HEmbedded, Some(WitnessCertificate::Embedding(e))) => {
                    let image = crate::graph::VertexSet::from_vertices(g.n(), e.map.iter().copied());
                    let genuine = e.map.len() == 4 && image.len() == 4 && g.is_clique(&image);
                    tally.check("genuine-k4", genuine, || violation(key.clone(), Some(g), "genuine-k4", format!("{:?}", e.map), "a 4-clique"));
                }
                (Outcome::InducedK2tFound, Some(WitnessCertificate::InducedK2t(c))) => {
                    tally.check("genuine-induced-k22", c.verify(g, 2), || {
                        violation(key.clone(), Some(g), "genuine-induced-k22", format!("{c:?}"), "an induced K_{2,2}")
                    });
                }
                (Outcome::HEmbedded | Outcome::InducedK2tFound, _) => {
                    tally.check("certificate-present", false, || violation(key.clone(), Some(g), "certificate-present", "missing", "present"));
                }
                _ => {}
            }
            Ok(tally)
        })
        .try_reduce(Tally::default, |a, b| Ok(a.merge(b)))?;
    Ok(tally.finish(SuiteId::WitnessRandom, config, vec![]))
}

fn outcome_name(o: Outcome) -> &'static str {
    match o {
        Outcome::HEmbedded => "h-embedded",
        Outcome::InducedK2tFound => "induced-k2t-found",
        Outcome::HypothesisNotMet => "hypothesis-not-met",
        Outcome::BoundaryDegenerate => "boundary-degenerate",
    }
}

fn triangle_bound(config: &SuiteConfig) -> Result<SuiteReport> {
    const C_STEPS: usize = 60;
    const N_STEPS: usize = 90;
    let cells: Vec<(usize, usize)> = (0..=C_STEPS).flat_map(|i| (0..=N_STEPS).map(move |j| (i, j))).collect();
    let mut tally = Tally::default();
    for &(i, j) in &cells[shard_indices(config, cells.len())?] {
        let c = 10f64.powf(-3.0 + 6.0 * i as f64 / C_STEPS as f64);
        let n = 10f64.powf(9.0 * j as f64 / N_STEPS as f64);
        let key = vec![i as u64, j as u64];
        let at = format!("(C={c:e}, n={n:e})");
        let tb = bounds::triangle_upper(c, n)?;
        let margin = tb.relative_margin();
        tally.check("below-cap", tb.bound < tb.cap && margin >= 1e-9, || {
            violation(key.clone(), None, format!("below-cap {at}"), margin, ">= 1e-9")
        });
        let up_n = bounds::triangle_upper(c, n * 16384.0)?.bound / tb.bound / 2f64.powi(27);
        tally.check("scaling-n", (up_n - 1.0).abs() <= 1e-9, || {
            violation(key.clone(), None, format!("scaling-n {at}"), up_n, "1 +- 1e-9")
        });
        let up_c = bounds::triangle_upper(c * 128.0, n)?.bound / tb.bound / 2f64.powi(15);
        tally.check("scaling-c", (up_c - 1.0).abs() <= 1e-9, || {
            violation(key.clone(), None, format!("scaling-c {at}"), up_c, "1 +- 1e-9")
        });
    }
    Ok(tally.finish(SuiteId::TriangleBound, config, vec![]))
}
