//! Closed-form bounds: `β_t(α)`, clique-number guarantees, Ramsey upper
//! bounds, induced Turán upper bounds and the triangle-count bound.
//!
//! All logarithms are natural. Floors and ceilings of floating-point values
//! snap to the nearest integer when within [`SNAP_TOLERANCE`] of it, so that
//! mathematically integral values such as `(2/3)·0.9·√10000 = 60` are not
//! lost to rounding.

use std::f64::consts::E;
use std::io::Write;

use serde::Serialize;

use crate::error::{Error, Result};

pub const SNAP_TOLERANCE: f64 = 1e-9;

fn snapped(x: f64) -> Option<f64> {
    let r = x.round();
    ((x - r).abs() <= SNAP_TOLERANCE * r.abs().max(1.0)).then_some(r)
}

pub fn floor_snapped(x: f64) -> i64 {
    snapped(x).unwrap_or_else(|| x.floor()) as i64
}

pub fn ceil_snapped(x: f64) -> i64 {
    snapped(x).unwrap_or_else(|| x.ceil()) as i64
}

fn check_alpha_t(alpha: f64, t: usize) -> Result<()> {
    if !(0.0..=1.0).contains(&alpha) {
        return Err(Error::InvalidParameter(format!("alpha must lie in [0, 1], got {alpha}")));
    }
    if t < 2 {
        return Err(Error::InvalidParameter(format!("t must be >= 2, got {t}")));
    }
    Ok(())
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct BetaValue {
    pub alpha: f64,
    pub t: usize,
    pub beta: f64,
}

impl BetaValue {
    pub fn beta_sq(&self) -> f64 {
        self.beta * self.beta
    }

    /// `|(t−1)(α−β²)² − t²(1−α)β²|`.
    pub fn identity_residual(&self) -> f64 {
        let t = self.t as f64;
        let b2 = self.beta_sq();
        ((t - 1.0) * (self.alpha - b2).powi(2) - t * t * (1.0 - self.alpha) * b2).abs()
    }

    /// `√(t−1)/t · α ≤ β ≤ α` slack pair `(β − lower, α − β)`.
    pub fn bracket_slack(&self) -> (f64, f64) {
        let t = self.t as f64;
        let lower = (t - 1.0).sqrt() / t * self.alpha;
        (self.beta - lower, self.alpha - self.beta)
    }
}

/// `β_t(α) = t/(2√(t−1)) · [√(1 − (1−2/t)²α) − √(1−α)]`.
///
/// Evaluated in the rationalised form `2α√(t−1) / (t(√a + √b))`, which avoids
/// cancellation for small `α`.
pub fn beta(alpha: f64, t: usize) -> Result<BetaValue> {
    check_alpha_t(alpha, t)?;
    let tf = t as f64;
    let s = 1.0 - 2.0 / tf;
    let root_a = (1.0 - s * s * alpha).sqrt();
    let root_b = (1.0 - alpha).sqrt();
    let beta = if alpha == 0.0 {
        0.0
    } else {
        2.0 * alpha * (tf - 1.0).sqrt() / (tf * (root_a + root_b))
    };
    Ok(BetaValue { alpha, t, beta })
}

pub fn beta_identity_residual(alpha: f64, t: usize) -> Result<f64> {
    Ok(beta(alpha, t)?.identity_residual())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "method", rename_all = "snake_case")]
pub enum RamseyMethod {
    /// `R(t, r) ≤ C(r+t−2, t−1)`.
    ErdosSzekeres,
    /// `R(3, r) ≤ (r−2)² / (ln(r−1) − 1)` for `r ≥ 4`.
    Shearer,
    /// `R(t, r) ≤ 2·20^{t−3} r^{t−1} / (ln r)^{t−2}` for `r` large enough;
    /// `valid_from_r` is the caller's assumed threshold.
    Bollobas { valid_from_r: u64 },
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct RamseyUpper {
    pub method: RamseyMethod,
    pub t: usize,
    pub r: u64,
    pub value: f64,
    pub exact_integer: Option<u128>,
    pub asymptotic_only: bool,
    pub applicable: bool,
}

pub fn binomial(n: u64, k: u64) -> Option<u128> {
    if k > n {
        return Some(0);
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc.checked_mul((n - i) as u128)? / (i as u128 + 1);
    }
    Some(acc)
}

fn binomial_f64(n: u64, k: u64) -> f64 {
    let k = k.min(n - k);
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

pub fn ramsey_upper(t: usize, r: u64, method: RamseyMethod) -> Result<RamseyUpper> {
    if t < 2 || r < 1 {
        return Err(Error::InvalidParameter(format!("ramsey_upper needs t >= 2, r >= 1 (got t = {t}, r = {r})")));
    }
    let rf = r as f64;
    let out = |value, exact_integer, asymptotic_only, applicable| RamseyUpper {
        method,
        t,
        r,
        value,
        exact_integer,
        asymptotic_only,
        applicable,
    };
    match method {
        RamseyMethod::ErdosSzekeres => {
            let n = r + t as u64 - 2;
            let k = t as u64 - 1;
            let exact = binomial(n, k);
            let value = exact.map_or_else(|| binomial_f64(n, k), |v| v as f64);
            Ok(out(value, exact, false, true))
        }
        RamseyMethod::Shearer => {
            if t != 3 || r < 4 {
                return Err(Error::InvalidParameter(format!(
                    "Shearer's bound needs t = 3 and r >= 4 (got t = {t}, r = {r})"
                )));
            }
            let value = (rf - 2.0).powi(2) / ((rf - 1.0).ln() - 1.0);
            Ok(out(value, None, false, true))
        }
        RamseyMethod::Bollobas { valid_from_r } => {
            if r < 2 {
                return Err(Error::InvalidParameter("Bollobás' bound needs r >= 2".into()));
            }
            let value = 2.0 * 20f64.powi(t as i32 - 3) * rf.powi(t as i32 - 1) / rf.ln().powi(t as i32 - 2);
            Ok(out(value, None, true, r >= valid_from_r))
        }
    }
}

/// Erdős–Szekeres as a plain closure-friendly function.
pub fn erdos_szekeres(t: usize, r: u64) -> Option<f64> {
    ramsey_upper(t, r, RamseyMethod::ErdosSzekeres).ok().map(|u| u.value)
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct CliqueGuarantee {
    /// Lower bound on `ω(G)`, at least 1.
    pub omega_at_least: u64,
    /// Largest `r ≥ 1` with `R(t, r) ≤ β²n`, or 0.
    pub r: u64,
    pub beta_sq_n: f64,
    /// `α = 1`: the graph is complete and the averaging step has no missing
    /// edge to work with, so the value is not a theorem guarantee.
    pub boundary_degenerate: bool,
}

/// `1 + max{r ≥ 1 : R(t, r) ≤ β²n}` for any upper bound `ramsey(t, r)` on
/// `R(t, r)`; values the bound cannot supply (`None`) stop the scan.
pub fn clique_guarantee(
    n: usize,
    alpha: f64,
    t: usize,
    ramsey: impl Fn(usize, u64) -> Option<f64>,
) -> Result<CliqueGuarantee> {
    if n < 2 {
        return Err(Error::InvalidParameter(format!("n must be >= 2, got {n}")));
    }
    let b = beta(alpha, t)?;
    let beta_sq_n = b.beta_sq() * n as f64;
    let mut best = 0;
    // R(t, r) >= r for t >= 2, so r never exceeds n here.
    for r in 1..=(n as u64 + 1) {
        match ramsey(t, r) {
            Some(v) if v <= beta_sq_n => best = r,
            _ => break,
        }
    }
    Ok(CliqueGuarantee {
        omega_at_least: best + 1,
        r: best,
        beta_sq_n,
        boundary_degenerate: alpha == 1.0,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum FormulaId {
    /// `ω ≥ α²n/10` (t = 2).
    GhsAlphaSquared,
    /// `ω ≥ (1 − √(1−α))² n` (t = 2).
    HolmsenBetaSquared,
    /// `ω ≥ ⌊β√(2n)⌋` (t = 3).
    K23BetaFloor,
    /// `ω ≥ ⌊(2/3)α√n⌋` (t = 3).
    K23AlphaFloor,
    /// `ω ≥ β√(½ n ln n) + 2` for `n ≥ exp(2e²/β²)` (t = 3).
    K23ShearerBeta,
    /// `ω ≥ (1/3)α√(n ln n) + 2` under the same threshold (t = 3).
    K23ShearerAlpha,
    /// `ω ≥ ⌊((t−1)/e)(β²n)^{1/(t−1)}⌋ − t + 3`.
    K2tBetaFloor,
    /// `ω ≥ ⌊((t−1)/4)(α²n)^{1/(t−1)}⌋ − t + 3`.
    K2tAlphaFloor,
    /// `ω ≥ (1/20)(β²n)^{1/(t−1)} (ln n/(t−1))^{1−1/(t−1)}`, large n only.
    K2tBollobasBeta,
    /// `ω ≥ (1/(20t))(α²n(ln n)^{t−2})^{1/(t−1)}`, large n only.
    K2tBollobasAlpha,
    /// `e < (t/(2√(t−1))) R(K_t,{H−x})^{1/2} n^{3/2}`, no induced `K_{2,t}`.
    InducedTuranRamsey,
    /// `e < (t+1)^{(v_H−1)/2} n^{3/2}`, no induced `K_{2,t+1}`.
    InducedTuranPolynomial,
    /// `e < e^{v_H/2−1} 2^{t−1} n^{3/2}`, no induced `K_{2,t+1}`.
    InducedTuranExponential,
}

impl FormulaId {
    pub fn name(self) -> &'static str {
        match self {
            FormulaId::GhsAlphaSquared => "ghs_alpha_squared",
            FormulaId::HolmsenBetaSquared => "holmsen_beta_squared",
            FormulaId::K23BetaFloor => "k23_beta_floor",
            FormulaId::K23AlphaFloor => "k23_alpha_floor",
            FormulaId::K23ShearerBeta => "k23_shearer_beta",
            FormulaId::K23ShearerAlpha => "k23_shearer_alpha",
            FormulaId::K2tBetaFloor => "k2t_beta_floor",
            FormulaId::K2tAlphaFloor => "k2t_alpha_floor",
            FormulaId::K2tBollobasBeta => "k2t_bollobas_beta",
            FormulaId::K2tBollobasAlpha => "k2t_bollobas_alpha",
            FormulaId::InducedTuranRamsey => "induced_turan_ramsey",
            FormulaId::InducedTuranPolynomial => "induced_turan_polynomial",
            FormulaId::InducedTuranExponential => "induced_turan_exponential",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BoundReport {
    pub formula_id: FormulaId,
    pub value: f64,
    pub integer_guarantee: Option<i64>,
    pub applicable: bool,
    /// Why `applicable` is false.
    pub reason: Option<String>,
    pub threshold_note: Option<String>,
    pub asymptotic_only: bool,
}

impl BoundReport {
    fn floor_form(formula_id: FormulaId, value: i64) -> Self {
        BoundReport {
            formula_id,
            value: value as f64,
            integer_guarantee: Some(value.max(1)),
            applicable: true,
            reason: None,
            threshold_note: None,
            asymptotic_only: false,
        }
    }

    fn real_form(formula_id: FormulaId, value: f64) -> Self {
        BoundReport {
            formula_id,
            value,
            integer_guarantee: Some(ceil_snapped(value).max(1)),
            applicable: true,
            reason: None,
            threshold_note: None,
            asymptotic_only: false,
        }
    }
}

/// Every clique lower bound that applies to `(n, α, t)`.
pub fn clique_lower_report(n: usize, alpha: f64, t: usize) -> Result<Vec<BoundReport>> {
    if n < 2 {
        return Err(Error::InvalidParameter(format!("n must be >= 2, got {n}")));
    }
    let b = beta(alpha, t)?;
    let nf = n as f64;
    let tf = t as f64;
    let beta = b.beta;
    let ln_n = nf.ln();
    let mut out = Vec::new();

    if t == 2 {
        out.push(BoundReport::real_form(FormulaId::GhsAlphaSquared, alpha * alpha * nf / 10.0));
        let h = 1.0 - (1.0 - alpha).sqrt();
        out.push(BoundReport::real_form(FormulaId::HolmsenBetaSquared, h * h * nf));
    }

    if t == 3 {
        out.push(BoundReport::floor_form(
            FormulaId::K23BetaFloor,
            floor_snapped(beta * (2.0 * nf).sqrt()),
        ));
        out.push(BoundReport::floor_form(
            FormulaId::K23AlphaFloor,
            floor_snapped(2.0 * alpha * nf.sqrt() / 3.0),
        ));
        let threshold = if beta > 0.0 {
            (2.0 * E * E / (beta * beta)).exp()
        } else {
            f64::INFINITY
        };
        let met = nf >= threshold;
        let note = format!("requires n >= exp(2e^2/beta^2) = {threshold:.6e}");
        for (id, value) in [
            (FormulaId::K23ShearerBeta, beta * (0.5 * nf * ln_n).sqrt() + 2.0),
            (FormulaId::K23ShearerAlpha, alpha * (nf * ln_n).sqrt() / 3.0 + 2.0),
        ] {
            let mut rep = BoundReport::real_form(id, value);
            rep.applicable = met;
            rep.reason = (!met).then(|| format!("n = {n} is below the threshold"));
            rep.threshold_note = Some(note.clone());
            out.push(rep);
        }
    }

    let inv = 1.0 / (tf - 1.0);
    out.push(BoundReport::floor_form(
        FormulaId::K2tBetaFloor,
        floor_snapped((tf - 1.0) / E * (b.beta_sq() * nf).powf(inv)) - t as i64 + 3,
    ));
    out.push(BoundReport::floor_form(
        FormulaId::K2tAlphaFloor,
        floor_snapped((tf - 1.0) / 4.0 * (alpha * alpha * nf).powf(inv)) - t as i64 + 3,
    ));
    for (id, value) in [
        (
            FormulaId::K2tBollobasBeta,
            (b.beta_sq() * nf).powf(inv) * (ln_n / (tf - 1.0)).powf(1.0 - inv) / 20.0,
        ),
        (
            FormulaId::K2tBollobasAlpha,
            (alpha * alpha * nf * ln_n.powi(t as i32 - 2)).powf(inv) / (20.0 * tf),
        ),
    ] {
        let mut rep = BoundReport::real_form(id, value);
        rep.applicable = false;
        rep.asymptotic_only = true;
        rep.reason = Some("asymptotic-only: holds for n large enough in terms of beta; threshold not quantified".into());
        out.push(rep);
    }
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct HypothesisCheck {
    pub beta_sq_n: f64,
    /// `R ≤ β²n`.
    pub beta_form: bool,
    /// `R ≤ (t−1)/t² · α²n`, the weaker sufficient condition.
    pub alpha_form: bool,
}

/// Whether `R(K_t, {H−x}) = ramsey_value` (or any upper bound on it) is small
/// enough for the subgraph theorem to force `H ⊆ G`.
pub fn subgraph_hypothesis(n: usize, alpha: f64, t: usize, ramsey_value: u64) -> Result<HypothesisCheck> {
    let b = beta(alpha, t)?;
    let nf = n as f64;
    let tf = t as f64;
    let beta_sq_n = b.beta_sq() * nf;
    let r = ramsey_value as f64;
    Ok(HypothesisCheck {
        beta_sq_n,
        beta_form: r <= beta_sq_n,
        alpha_form: r <= (tf - 1.0) / (tf * tf) * alpha * alpha * nf,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct TuranBound {
    pub formula_id: FormulaId,
    pub n: usize,
    pub t: usize,
    /// The bound applies to graphs with no induced `K_{2,s}` for this `s`.
    pub forbidden_k2_side: usize,
    pub v_h: usize,
    pub ramsey_value: Option<u64>,
    pub bound: f64,
    /// Smaller of the two Ramsey-free bounds.
    pub tightest_general: bool,
}

/// Upper bounds on `ex(n, {H, K_{2,s}-ind})`.
///
/// The Ramsey form (forbidding induced `K_{2,t}`) is emitted when `t ≥ 2` and
/// `ramsey_value = R(K_t, {H−x})` is supplied; the two Ramsey-free forms bound
/// the case of forbidden induced `K_{2,t+1}`.
pub fn induced_turan_upper(
    n: usize,
    t: usize,
    v_h: usize,
    ramsey_value: Option<u64>,
) -> Result<Vec<TuranBound>> {
    if n < 2 || t < 1 || v_h < 1 {
        return Err(Error::InvalidParameter(format!(
            "induced_turan_upper needs n >= 2, t >= 1, v_H >= 1 (got n = {n}, t = {t}, v_H = {v_h})"
        )));
    }
    let nf = n as f64;
    let tf = t as f64;
    let n32 = nf.powf(1.5);
    let mut out = Vec::new();
    if let Some(r) = ramsey_value {
        if t >= 2 {
            if r == 0 {
                return Err(Error::InvalidParameter("Ramsey value must be positive".into()));
            }
            out.push(TuranBound {
                formula_id: FormulaId::InducedTuranRamsey,
                n,
                t,
                forbidden_k2_side: t,
                v_h,
                ramsey_value: Some(r),
                bound: tf / (2.0 * (tf - 1.0).sqrt()) * (r as f64).sqrt() * n32,
                tightest_general: false,
            });
        }
    }
    let poly = (tf + 1.0).powf((v_h as f64 - 1.0) / 2.0) * n32;
    let expo = (v_h as f64 / 2.0 - 1.0).exp() * 2f64.powi(t as i32 - 1) * n32;
    for (formula_id, bound, tight) in [
        (FormulaId::InducedTuranPolynomial, poly, poly <= expo),
        (FormulaId::InducedTuranExponential, expo, expo < poly),
    ] {
        out.push(TuranBound {
            formula_id,
            n,
            t,
            forbidden_k2_side: t + 1,
            v_h,
            ramsey_value: None,
            bound,
            tightest_general: tight,
        });
    }
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct TriangleBound {
    /// Degree split point `2^{4/7} C^{2/7} n^{6/7}`.
    pub f_opt: f64,
    /// `(4/3)C³n^{9/2}f^{−3} + 2C²n^{3/2}f^{1/2}` at `f = f_opt`.
    pub bound: f64,
    /// `3 C^{15/7} n^{27/14}`.
    pub cap: f64,
}

impl TriangleBound {
    pub fn relative_margin(&self) -> f64 {
        (self.cap - self.bound) / self.cap
    }
}

/// Two-term triangle-count bound when every `m`-vertex subgraph in the class
/// has at most `C m^{3/2}` edges.
pub fn triangle_two_term(c: f64, n: f64, f: f64) -> f64 {
    4.0 / 3.0 * c.powi(3) * n.powf(4.5) * f.powi(-3) + 2.0 * c * c * n.powf(1.5) * f.sqrt()
}

pub fn triangle_upper(c: f64, n: f64) -> Result<TriangleBound> {
    if c.is_nan() || c <= 0.0 || n.is_nan() || n < 1.0 {
        return Err(Error::InvalidParameter(format!("triangle_upper needs C > 0 and n >= 1 (got C = {c}, n = {n})")));
    }
    let f_opt = 2f64.powf(4.0 / 7.0) * c.powf(2.0 / 7.0) * n.powf(6.0 / 7.0);
    let bound = triangle_two_term(c, n, f_opt);
    let cap = 3.0 * c.powf(15.0 / 7.0) * n.powf(27.0 / 14.0);
    debug_assert!(bound < cap);
    Ok(TriangleBound { f_opt, bound, cap })
}

/// `α²(n−1) > R(K_t,{H−ē}) − 1 + 3Δ(n,H,t)/C(n,2)`, in floating point.
pub fn triangle_theorem_condition(
    n: usize,
    alpha: f64,
    t: usize,
    ramsey_ebar: u64,
    delta_max: u64,
) -> Result<bool> {
    check_alpha_t(alpha, t)?;
    if n < 2 {
        return Err(Error::InvalidParameter(format!("n must be >= 2, got {n}")));
    }
    let pairs = crate::graph::pairs(n) as f64;
    Ok(alpha * alpha * (n as f64 - 1.0) > ramsey_ebar as f64 - 1.0 + 3.0 * delta_max as f64 / pairs)
}

/// The same inequality in exact integer arithmetic for `α = edges / C(n,2)`:
/// `e²(n−1) > (R−1)·P² + 3Δ·P` with `P = C(n,2)`.
pub fn triangle_theorem_condition_exact(n: usize, edges: u64, ramsey_ebar: u64, delta_max: u64) -> Result<bool> {
    if n < 2 || ramsey_ebar == 0 {
        return Err(Error::InvalidParameter(format!("need n >= 2 and R >= 1 (got n = {n}, R = {ramsey_ebar})")));
    }
    let p = crate::graph::pairs(n) as u128;
    let e = edges as u128;
    Ok(e * e * (n as u128 - 1) > (ramsey_ebar as u128 - 1) * p * p + 3 * delta_max as u128 * p)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SweepRow {
    pub n: usize,
    pub alpha: f64,
    pub t: usize,
    pub beta: f64,
    pub formula_id: FormulaId,
    pub value: f64,
    pub integer_guarantee: Option<i64>,
    pub applicable: bool,
}

/// Clique bound table over the grid `ns × alphas × ts`.
pub fn sweep(ns: &[usize], alphas: &[f64], ts: &[usize]) -> Result<Vec<SweepRow>> {
    let mut rows = Vec::new();
    for &n in ns {
        for &alpha in alphas {
            for &t in ts {
                let b = beta(alpha, t)?.beta;
                for rep in clique_lower_report(n, alpha, t)? {
                    rows.push(SweepRow {
                        n,
                        alpha,
                        t,
                        beta: b,
                        formula_id: rep.formula_id,
                        value: rep.value,
                        integer_guarantee: rep.integer_guarantee,
                        applicable: rep.applicable,
                    });
                }
            }
        }
    }
    Ok(rows)
}

pub fn write_sweep_csv<W: Write>(rows: &[SweepRow], out: W) -> csv::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    for row in rows {
        w.serialize(row)?;
    }
    w.flush()?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Independent oracle: bisection on the quartic identity over the bracket
    /// `[√(t−1)/t·α, α]`, on which it changes sign exactly once.
    fn beta_by_bisection(alpha: f64, t: usize) -> f64 {
        let tf = t as f64;
        let g = |b: f64| (tf - 1.0) * (alpha - b * b).powi(2) - tf * tf * (1.0 - alpha) * b * b;
        let (mut lo, mut hi) = ((tf - 1.0).sqrt() / tf * alpha, alpha);
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if g(mid) > 0.0 {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        0.5 * (lo + hi)
    }

    #[test]
    fn beta_examples() {
        for t in 2..8 {
            assert_eq!(beta(0.0, t).unwrap().beta, 0.0);
            assert!((beta(1.0, t).unwrap().beta - 1.0).abs() < 1e-15);
        }
        let b = beta(0.5, 2).unwrap().beta;
        assert!((b - 0.292_893_218_813_452_5).abs() < 1e-15);
        assert!((b - beta_by_bisection(0.5, 2)).abs() < 1e-12);
    }

    #[test]
    fn beta_matches_bisection_oracle() {
        for t in 2..=10 {
            for i in 1..100 {
                let alpha = i as f64 / 100.0;
                let b = beta(alpha, t).unwrap().beta;
                assert!((b - beta_by_bisection(alpha, t)).abs() < 1e-12, "alpha={alpha} t={t}");
            }
        }
    }

    #[test]
    fn beta_errors() {
        assert!(beta(-0.1, 2).is_err());
        assert!(beta(1.1, 2).is_err());
        assert!(beta(0.5, 1).is_err());
    }

    #[test]
    fn residual_examples() {
        assert!(beta_identity_residual(0.3, 2).unwrap() <= 1e-10);
        assert!(beta_identity_residual(0.9, 7).unwrap() <= 1e-10);
        assert_eq!(beta_identity_residual(0.0, 5).unwrap(), 0.0);
    }

    #[test]
    fn ramsey_upper_examples() {
        let es = ramsey_upper(2, 5, RamseyMethod::ErdosSzekeres).unwrap();
        assert_eq!(es.exact_integer, Some(5));
        assert_eq!(ramsey_upper(3, 3, RamseyMethod::ErdosSzekeres).unwrap().exact_integer, Some(6));
        let sh = ramsey_upper(3, 4, RamseyMethod::Shearer).unwrap();
        assert!((sh.value - 40.562_895_902_988_64).abs() < 1e-9);
        assert!(ramsey_upper(4, 4, RamseyMethod::Shearer).is_err());
        assert!(ramsey_upper(3, 3, RamseyMethod::Shearer).is_err());
        let bo = ramsey_upper(4, 50, RamseyMethod::Bollobas { valid_from_r: 100 }).unwrap();
        assert!(bo.asymptotic_only && !bo.applicable);
        assert!(ramsey_upper(1, 3, RamseyMethod::ErdosSzekeres).is_err());
        for r in 1..200 {
            assert_eq!(erdos_szekeres(2, r), Some(r as f64));
        }
    }

    #[test]
    fn clique_guarantee_examples() {
        let g = clique_guarantee(100, 0.5, 2, erdos_szekeres).unwrap();
        assert!((g.beta_sq_n - 8.578_643_762_690_495).abs() < 1e-12);
        assert_eq!(g.omega_at_least, 9);
        let g = clique_guarantee(10, 1.0 / 3.0, 2, erdos_szekeres).unwrap();
        assert!((g.beta_sq_n - 0.336_735_048_112_146).abs() < 1e-12);
        assert_eq!(g.omega_at_least, 1);
        assert_eq!(clique_guarantee(50, 0.0, 3, erdos_szekeres).unwrap().omega_at_least, 1);
        let g = clique_guarantee(50, 1.0, 2, erdos_szekeres).unwrap();
        assert!(g.boundary_degenerate);
        assert_eq!(g.omega_at_least, 51);
    }

    #[test]
    fn holmsen_specialisation() {
        for n in 2..60 {
            for i in 0..100 {
                let alpha = i as f64 / 100.0;
                let g = clique_guarantee(n, alpha, 2, erdos_szekeres).unwrap();
                if g.beta_sq_n >= 1.0 {
                    assert_eq!(g.omega_at_least as i64, g.beta_sq_n.floor() as i64 + 1);
                }
            }
        }
    }

    fn find(reports: &[BoundReport], id: FormulaId) -> &BoundReport {
        reports.iter().find(|r| r.formula_id == id).unwrap()
    }

    #[test]
    fn clique_report_examples() {
        let rep = clique_lower_report(50, 1.0, 2).unwrap();
        assert_eq!(find(&rep, FormulaId::HolmsenBetaSquared).value, 50.0);

        let rep = clique_lower_report(10_000, 0.9, 3).unwrap();
        assert_eq!(find(&rep, FormulaId::K23AlphaFloor).value, 60.0);
        assert_eq!(find(&rep, FormulaId::K23BetaFloor).value, 94.0);
        let large = find(&rep, FormulaId::K23ShearerBeta);
        assert!(!large.applicable && large.threshold_note.is_some());
        assert!(rep.iter().all(|r| r.formula_id != FormulaId::GhsAlphaSquared));

        for r in clique_lower_report(30, 0.0, 2).unwrap() {
            assert!(r.value <= 1.0);
            assert_eq!(r.integer_guarantee, Some(1));
        }
        let rep = clique_lower_report(30, 0.4, 5).unwrap();
        let bo = find(&rep, FormulaId::K2tBollobasAlpha);
        assert!(bo.asymptotic_only && !bo.applicable);
    }

    #[test]
    fn threshold_met_for_huge_n() {
        let rep = clique_lower_report(1usize << 62, 0.99, 3).unwrap();
        assert!(find(&rep, FormulaId::K23ShearerBeta).applicable);
    }

    #[test]
    fn turan_examples() {
        let b = induced_turan_upper(100, 2, 3, Some(3)).unwrap();
        let a = b.iter().find(|x| x.formula_id == FormulaId::InducedTuranRamsey).unwrap();
        assert!((a.bound - 3f64.sqrt() * 1000.0).abs() < 1e-9);

        let b = induced_turan_upper(100, 1, 3, None).unwrap();
        assert_eq!(b.len(), 2);
        let poly = b.iter().find(|x| x.formula_id == FormulaId::InducedTuranPolynomial).unwrap();
        assert!((poly.bound - 2000.0).abs() < 1e-9);
        assert_eq!(poly.forbidden_k2_side, 2);

        let b = induced_turan_upper(100, 10, 10, None).unwrap();
        let expo = b.iter().find(|x| x.formula_id == FormulaId::InducedTuranExponential).unwrap();
        assert!(expo.tightest_general);
        let b = induced_turan_upper(100, 10, 3, None).unwrap();
        let poly = b.iter().find(|x| x.formula_id == FormulaId::InducedTuranPolynomial).unwrap();
        assert!(poly.tightest_general);
    }

    #[test]
    fn turan_monotone() {
        for r in 1..20 {
            let lo = induced_turan_upper(50, 3, 4, Some(r)).unwrap()[0].bound;
            let hi = induced_turan_upper(50, 3, 4, Some(r + 1)).unwrap()[0].bound;
            let bigger_n = induced_turan_upper(51, 3, 4, Some(r)).unwrap()[0].bound;
            assert!(lo < hi && lo < bigger_n);
        }
    }

    #[test]
    fn triangle_examples() {
        let tb = triangle_upper(1.0, 1.0).unwrap();
        assert!(tb.bound < 3.0);
        assert!((tb.bound - 2.844_365_193_143_776).abs() < 1e-12);
        let base = triangle_upper(2.5, 1000.0).unwrap().bound;
        let up_n = triangle_upper(2.5, 1000.0 * 16384.0).unwrap().bound;
        assert!((up_n / base / 2f64.powi(27) - 1.0).abs() < 1e-9);
        let up_c = triangle_upper(2.5 * 128.0, 1000.0).unwrap().bound;
        assert!((up_c / base / 2f64.powi(15) - 1.0).abs() < 1e-9);
        assert!(triangle_upper(0.0, 5.0).is_err());
    }

    #[test]
    fn f_opt_minimises_two_term_bound() {
        // Finite-difference oracle: the two-term bound is larger on both sides.
        for &(c, n) in &[(1.0, 1.0), (0.01, 1e6), (50.0, 123.0)] {
            let tb = triangle_upper(c, n).unwrap();
            for eps in [1e-3, 1e-2] {
                assert!(triangle_two_term(c, n, tb.f_opt * (1.0 + eps)) > tb.bound);
                assert!(triangle_two_term(c, n, tb.f_opt * (1.0 - eps)) > tb.bound);
            }
        }
    }

    #[test]
    fn triangle_condition_examples() {
        assert!(triangle_theorem_condition(100, 1.0, 2, 2, 0).unwrap());
        for r in 2..10 {
            assert!(!triangle_theorem_condition(30, 0.0, 2, r, 0).unwrap());
        }
        // alpha = 4/6 on 4 vertices: (16/36)*3 = 4/3 > 1.
        assert!(triangle_theorem_condition_exact(4, 4, 2, 0).unwrap());
        assert!(!triangle_theorem_condition_exact(4, 3, 2, 0).unwrap());
        assert_eq!(
            triangle_theorem_condition_exact(4, 4, 2, 0).unwrap(),
            triangle_theorem_condition(4, 4.0 / 6.0, 2, 2, 0).unwrap()
        );
    }

    #[test]
    fn sweep_csv_has_header_and_rows() {
        let rows = sweep(&[10, 100], &[0.5], &[2, 3]).unwrap();
        let mut buf = Vec::new();
        write_sweep_csv(&rows, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert!(text.starts_with("n,alpha,t,beta,formula_id,value,integer_guarantee,applicable\n"));
        assert_eq!(text.lines().count(), rows.len() + 1);
    }
}
