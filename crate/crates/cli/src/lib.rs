//! Command implementations behind the `k2tlab` binary.
//!
//! Every command produces a [`Report`] (serialised with `--json`), a text
//! rendering for the terminal, and an exit code: 0 for a clean result, 1 for
//! a semantic finding, 2 for usage errors (returned here as `Err`).

pub mod args;

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::time::Instant;

use anyhow::{bail, Context, Result};
use serde::Serialize;
use serde_json::{json, Value};

use k2tlab::bounds::{self, BoundReport};
use k2tlab::ramsey::{self, GraphFamily, RamseyQuery};
use k2tlab::verify::{self, SuiteConfig, SuiteId, Violation};
use k2tlab::{constructions, detect, graph6, witness, Graph};

use args::{Cli, Command, FamilyKind, GenerateArgs, GraphKind, RamseyArgs, SweepArgs, VerifyArgs};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub schema_version: u32,
    pub command: String,
    pub inputs: Value,
    pub results: Value,
    pub violations: Vec<Violation>,
    pub runtime_ms: u64,
}

/// A finished command: the report, what to print, and how to exit.
#[derive(Debug)]
pub struct Execution {
    pub report: Report,
    pub text: String,
    pub exit_code: i32,
}

struct Outcome {
    inputs: Value,
    results: Value,
    violations: Vec<Violation>,
    text: String,
    exit_code: i32,
}

impl Outcome {
    fn new(inputs: Value, results: Value, text: String) -> Outcome {
        Outcome {
            inputs,
            results,
            violations: Vec::new(),
            text,
            exit_code: 0,
        }
    }
}

pub fn execute(cli: &Cli) -> Result<Execution> {
    let start = Instant::now();
    if cli.csv.is_some() && !matches!(cli.command, Command::Sweep(_)) {
        bail!("--csv is only supported by the sweep command");
    }
    let (name, out) = match &cli.command {
        Command::Detect { graph, t } => ("detect", cmd_detect(graph, *t)?),
        Command::Bounds(a) => ("bounds", cmd_bounds(a)?),
        Command::Witness { graph, h, t } => ("witness", cmd_witness(graph, h, *t)?),
        Command::Verify(a) => ("verify", cmd_verify(a)?),
        Command::Generate(a) => ("generate", cmd_generate(a)?),
        Command::Ramsey(a) => ("ramsey", cmd_ramsey(a)?),
        Command::Sweep(a) => ("sweep", cmd_sweep(a, cli.csv.as_ref())?),
    };
    let report = Report {
        schema_version: SCHEMA_VERSION,
        command: name.to_string(),
        inputs: out.inputs,
        results: out.results,
        violations: out.violations,
        runtime_ms: start.elapsed().as_millis() as u64,
    };
    Ok(Execution {
        report,
        text: out.text,
        exit_code: out.exit_code,
    })
}

pub fn load_graph(path: &Path) -> Result<Graph> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    graph6::read_graph(&text).with_context(|| format!("parsing {}", path.display()))
}

fn describe(g: &Graph) -> String {
    format!("n = {}, m = {}", g.n(), g.edge_count())
}

fn vertex_list(vs: impl IntoIterator<Item = usize>) -> String {
    let items: Vec<String> = vs.into_iter().map(|v| v.to_string()).collect();
    format!("{{{}}}", items.join(", "))
}

fn cmd_detect(path: &Path, t: usize) -> Result<Outcome> {
    let g = load_graph(path)?;
    let found = detect::find_induced_k2t(&g, t)?;
    let inputs = json!({ "graph": path, "graph6": g.to_graph6(), "t": t });
    let results = json!({
        "n": g.n(),
        "edges": g.edge_count(),
        "found": found.is_some(),
        "certificate": found,
    });
    let mut text = format!("graph: {}\n", describe(&g));
    match &found {
        Some(c) => writeln!(
            text,
            "induced K_{{2,{t}}}: found\n  a = {}, b = {}, independent side = {}",
            c.a,
            c.b,
            vertex_list(c.t_side.iter())
        )?,
        None => writeln!(text, "induced K_{{2,{t}}}: none")?,
    }
    let mut out = Outcome::new(inputs, results, text);
    out.exit_code = i32::from(found.is_some());
    Ok(out)
}

fn cmd_bounds(a: &args::BoundsArgs) -> Result<Outcome> {
    let (n, alpha, t) = (a.n, a.alpha, a.t);
    let beta = bounds::beta(alpha, t)?;
    let table = bounds::clique_lower_report(n, alpha, t)?;
    let guarantee = bounds::clique_guarantee(n, alpha, t, bounds::erdos_szekeres)?;
    let hypothesis = a
        .ramsey
        .map(|r| bounds::subgraph_hypothesis(n, alpha, t, r))
        .transpose()?;
    let turan = a
        .vh
        .map(|vh| bounds::induced_turan_upper(n, t, vh, a.ramsey))
        .transpose()?;
    let inputs = json!({ "n": n, "alpha": alpha, "t": t, "vh": a.vh, "ramsey": a.ramsey });
    let results = json!({
        "beta": beta.beta,
        "beta_sq_n": guarantee.beta_sq_n,
        "boundary_degenerate": guarantee.boundary_degenerate,
        "clique_guarantee": guarantee,
        "clique_bounds": table,
        "subgraph_hypothesis": hypothesis,
        "turan_bounds": turan,
    });

    let mut text = String::new();
    writeln!(text, "n = {n}, alpha = {alpha}, t = {t}")?;
    writeln!(text, "beta = {}, beta^2 n = {}", beta.beta, guarantee.beta_sq_n)?;
    if guarantee.boundary_degenerate {
        writeln!(text, "boundary-degenerate: alpha = 1 (complete graph, no missing edge)")?;
    }
    writeln!(
        text,
        "omega >= {} via R(t, r) <= C(r+t-2, t-1) (r = {}){}",
        guarantee.omega_at_least,
        guarantee.r,
        if guarantee.boundary_degenerate { ", not a guarantee" } else { "" }
    )?;
    text.push('\n');
    text.push_str(&bound_table(&table));
    if let Some(h) = hypothesis {
        writeln!(
            text,
            "\nsubgraph hypothesis R <= beta^2 n: {}; R <= (t-1)/t^2 alpha^2 n: {}",
            yes_no(h.beta_form),
            yes_no(h.alpha_form)
        )?;
    }
    if let Some(turan) = &turan {
        let rows: Vec<Vec<String>> = turan
            .iter()
            .map(|b| {
                vec![
                    b.formula_id.name().to_string(),
                    format!("K_{{2,{}}}", b.forbidden_k2_side),
                    b.bound.to_string(),
                    if b.tightest_general { "tightest".into() } else { String::new() },
                ]
            })
            .collect();
        text.push('\n');
        text.push_str(&align(&["turan formula", "forbids", "edges <", ""], &rows));
    }
    Ok(Outcome::new(inputs, results, text))
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn bound_table(table: &[BoundReport]) -> String {
    let rows: Vec<Vec<String>> = table
        .iter()
        .map(|r| {
            let note = r
                .reason
                .clone()
                .or_else(|| r.threshold_note.clone())
                .unwrap_or_default();
            vec![
                r.formula_id.name().to_string(),
                r.value.to_string(),
                r.integer_guarantee.map(|g| g.to_string()).unwrap_or_else(|| "-".into()),
                yes_no(r.applicable).to_string(),
                note,
            ]
        })
        .collect();
    align(&["formula", "value", "omega >=", "applies", "note"], &rows)
}

/// Left-aligned columns separated by two spaces; trailing blanks trimmed.
fn align(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut widths: Vec<usize> = header.iter().map(|h| h.chars().count()).collect();
    for row in rows {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.chars().count());
        }
    }
    let mut out = String::new();
    let head: Vec<String> = header.iter().map(|h| h.to_string()).collect();
    for row in std::iter::once(&head).chain(rows) {
        let mut line = String::new();
        for (cell, w) in row.iter().zip(&widths) {
            let _ = write!(line, "{cell:<w$}  ");
        }
        out.push_str(line.trim_end());
        out.push('\n');
    }
    out
}

fn cmd_witness(graph: &Path, h_path: &Path, t: usize) -> Result<Outcome> {
    let g = load_graph(graph)?;
    let h = load_graph(h_path)?;
    let trace = witness::extract(&g, &h, t)?;
    let verified = witness::verify_trace(&g, &trace, &h, t);
    let inputs = json!({
        "graph": graph,
        "graph6": g.to_graph6(),
        "h": h_path,
        "h_graph6": h.to_graph6(),
        "t": t,
    });
    let mut results = serde_json::to_value(&trace)?;
    results["verified"] = json!(verified);

    let outcome_tag = serde_json::to_value(trace.outcome)?;
    let mut text = format!("graph: {}\nh: {}\n", describe(&g), describe(&h));
    writeln!(text, "outcome: {}", outcome_tag.as_str().unwrap_or_default())?;
    if let Some((a, b)) = trace.selected_edge {
        writeln!(text, "missing edge: ({a}, {b})")?;
    }
    if let Some(s) = &trace.s {
        writeln!(text, "S = {}", vertex_list(s.iter()))?;
    }
    match &trace.certificate {
        Some(detect::WitnessCertificate::Embedding(e)) => {
            writeln!(text, "embedding: {}", vertex_list(e.map.iter().copied()))?
        }
        Some(detect::WitnessCertificate::InducedK2t(c)) => writeln!(
            text,
            "induced K_{{2,{t}}}: a = {}, b = {}, independent side = {}",
            c.a,
            c.b,
            vertex_list(c.t_side.iter())
        )?,
        Some(detect::WitnessCertificate::Clique { vertices }) => {
            writeln!(text, "clique: {}", vertex_list(vertices.iter()))?
        }
        None => {}
    }
    let s = &trace.slack;
    writeln!(
        text,
        "slack: |S| = {}, R = {}{}, beta^2 n = {}, hypothesis {}",
        s.s_size,
        s.ramsey_threshold.value,
        if s.ramsey_threshold.exact { "" } else { " (upper bound)" },
        s.beta_sq_n,
        if s.hypothesis_holds { "holds" } else { "fails" }
    )?;
    writeln!(text, "trace verified: {}", yes_no(verified))?;

    let mut out = Outcome::new(inputs, results, text);
    if !verified {
        out.violations.push(Violation {
            graph6: Some(g.to_graph6()),
            claim: "witness-trace".into(),
            observed: "trace failed re-verification".into(),
            required: "every step of the trace re-checks".into(),
        });
        out.exit_code = 1;
    }
    Ok(out)
}

fn cmd_verify(a: &VerifyArgs) -> Result<Outcome> {
    let id: SuiteId = a.suite.parse()?;
    let mut config = SuiteConfig::for_suite(id);
    if let Some(n) = a.nmax {
        config.n_max = n;
    }
    config.t_values = a.t.clone();
    config.shard = a.shard;
    config.seed = a.seed;
    config.samples = a.samples;
    let report = verify::run_suite(id, &config)?;

    let inputs = serde_json::to_value(&config)?;
    let mut results = serde_json::to_value(&report)?;
    if let Some(obj) = results.as_object_mut() {
        obj.remove("violations");
        obj.insert("passed".into(), json!(report.passed()));
    }

    let mut text = format!("suite: {}\n", id.name());
    let rows: Vec<Vec<String>> = report
        .checked
        .iter()
        .map(|(claim, count)| vec![claim.clone(), count.to_string()])
        .collect();
    text.push_str(&align(&["claim", "checked"], &rows));
    writeln!(text, "violations: {}", report.violation_count)?;
    if report.boundary_cases > 0 {
        writeln!(text, "boundary cases (alpha = 1, excluded): {}", report.boundary_cases)?;
    }
    for note in &report.notes {
        writeln!(text, "note: {note}")?;
    }
    for v in &report.violations {
        writeln!(
            text,
            "  {} {}: observed {}, required {}",
            v.claim,
            v.graph6.as_deref().unwrap_or("-"),
            v.observed,
            v.required
        )?;
    }
    writeln!(text, "{}", if report.passed() { "PASS" } else { "FAIL" })?;

    let mut out = Outcome::new(inputs, results, text);
    out.exit_code = i32::from(!report.passed());
    out.violations = report.violations;
    Ok(out)
}

fn need<T: Copy>(value: Option<T>, flag: &str, kind: GraphKind) -> Result<T> {
    value.with_context(|| format!("{kind:?} needs --{flag}").to_lowercase())
}

fn cmd_generate(a: &GenerateArgs) -> Result<Outcome> {
    let kind = a.kind;
    let size = a.size;
    let n = || need(a.n.or(size.map(|s| s as usize)), "n", kind);
    let g = match kind {
        GraphKind::Polarity => constructions::polarity_graph(need(a.q.or(size), "q", kind)?)?,
        GraphKind::Complete => constructions::complete(n()?),
        GraphKind::Empty => Graph::empty(n()?),
        GraphKind::Cycle => constructions::cycle(n()?)?,
        GraphKind::Path => constructions::path(n()?)?,
        GraphKind::Bipartite => {
            constructions::complete_bipartite(need(a.a, "a", kind)?, need(a.b, "b", kind)?)
        }
        GraphKind::Turan => constructions::turan(n()?, need(a.r, "r", kind)?)?,
        GraphKind::Petersen => constructions::petersen(),
        GraphKind::Gnp => constructions::random_gnp(n()?, need(a.p, "p", kind)?, a.seed)?,
    };
    let encoded = g.to_graph6();
    let inputs = json!({
        "kind": format!("{kind:?}").to_lowercase(),
        "size": size,
        "n": a.n,
        "q": a.q,
        "a": a.a,
        "b": a.b,
        "r": a.r,
        "p": a.p,
        "seed": a.seed,
        "rng": constructions::RNG_VERSION,
        "out": a.out,
    });
    let results = json!({ "n": g.n(), "edges": g.edge_count(), "graph6": encoded });
    let text = match &a.out {
        Some(path) => {
            fs::write(path, format!("{encoded}\n")).with_context(|| format!("writing {}", path.display()))?;
            format!("wrote {} ({})\n", path.display(), describe(&g))
        }
        None => format!("{encoded}\n"),
    };
    Ok(Outcome::new(inputs, results, text))
}

fn cmd_ramsey(a: &RamseyArgs) -> Result<Outcome> {
    let (query, h_graph, known) = match (&a.h, a.r) {
        (Some(path), _) => {
            let h = load_graph(path)?;
            let family = match a.family {
                FamilyKind::MinusVertex => ramsey::family_minus_vertex(&h)?,
                FamilyKind::MinusEbar => ramsey::family_minus_ebar(&h)?,
            };
            (RamseyQuery::new(a.t, family)?, Some(h), None)
        }
        (None, Some(r)) => (
            RamseyQuery::new(a.t, GraphFamily::clique(r))?,
            None,
            ramsey::known_ramsey(a.t, r as u64),
        ),
        (None, None) => bail!("ramsey needs --r or --h"),
    };
    let result = ramsey::ramsey_exact(&query, a.cap)?;
    let witness_valid = result.witness_is_valid(&query)?;

    let inputs = json!({
        "t": a.t,
        "r": a.r,
        "h": a.h,
        "h_graph6": h_graph.as_ref().map(Graph::to_graph6),
        "family": a.h.as_ref().map(|_| format!("{:?}", a.family).to_lowercase()),
        "cap": a.cap,
    });
    let results = json!({
        "query": query,
        "result": result,
        "witness_valid": witness_valid,
        "known": known,
    });

    let target = match a.r {
        Some(r) => format!("R({}, {r})", a.t),
        None => format!(
            "R(K_{}, {{{}}})",
            a.t,
            query.family.members.iter().map(Graph::to_graph6).collect::<Vec<_>>().join(", ")
        ),
    };
    let mut text = match result.exact {
        Some(v) => format!("{target} = {v}\n"),
        None => format!("{target} in [{}, {}] (search capped at n = {})\n", result.lower, result.upper, a.cap),
    };
    if let Some(w) = &result.lower_witness {
        writeln!(text, "witness on {} vertices: {}", w.n(), w.to_graph6())?;
    }
    writeln!(text, "nodes searched: {}", result.nodes)?;
    if let Some(k) = known {
        writeln!(text, "reference value: {} ({:?})", k.value, k.provenance)?;
    }
    Ok(Outcome::new(inputs, results, text))
}

fn cmd_sweep(a: &SweepArgs, csv_path: Option<&PathBuf>) -> Result<Outcome> {
    let rows = bounds::sweep(&a.n, &a.alpha, &a.t)?;
    let mut buf = Vec::new();
    bounds::write_sweep_csv(&rows, &mut buf)?;
    let csv = String::from_utf8(buf)?;
    let inputs = json!({ "n": a.n, "alpha": a.alpha, "t": a.t, "csv": csv_path });
    let results = json!({ "rows": rows });
    let mut out = Outcome::new(inputs, results, String::new());
    match csv_path {
        Some(p) if p.as_os_str() != "-" => {
            fs::write(p, &csv).with_context(|| format!("writing {}", p.display()))?;
            out.text = format!("wrote {} rows to {}\n", rows.len(), p.display());
        }
        _ => out.text = csv,
    }
    Ok(out)
}
