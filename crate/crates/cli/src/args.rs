use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "k2tlab", version, about = "Bounds, detectors and certificates for graphs with no induced K_{2,t}")]
pub struct Cli {
    /// Write the JSON report here (`-` for stdout, replacing the text output).
    #[arg(long, global = true, value_name = "PATH")]
    pub json: Option<PathBuf>,

    /// Write the CSV table here (`sweep` only; `-` for stdout).
    #[arg(long, global = true, value_name = "PATH")]
    pub csv: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Search a graph for an induced K_{2,t}. Exit 1 if one is found.
    Detect {
        /// Graph file, graph6 or edge list.
        #[arg(long)]
        graph: PathBuf,
        #[arg(long, default_value_t = 2)]
        t: usize,
    },
    /// Evaluate every clique and Turán bound for the given parameters.
    Bounds(BoundsArgs),
    /// Trace the extraction of H (or an induced K_{2,t}) from a graph.
    Witness {
        #[arg(long)]
        graph: PathBuf,
        /// Pattern graph file.
        #[arg(long)]
        h: PathBuf,
        #[arg(long, default_value_t = 2)]
        t: usize,
    },
    /// Run a verification suite. Exit 1 on any violation.
    Verify(VerifyArgs),
    /// Emit a graph in graph6.
    Generate(GenerateArgs),
    /// Exact small Ramsey numbers R(K_t, F).
    Ramsey(RamseyArgs),
    /// Clique bound table over a grid, as CSV.
    Sweep(SweepArgs),
}

#[derive(Debug, Args)]
pub struct BoundsArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub alpha: f64,
    #[arg(long, default_value_t = 2)]
    pub t: usize,
    /// Vertex count of the forbidden graph H, for the Turán bounds.
    #[arg(long)]
    pub vh: Option<usize>,
    /// A value (or upper bound) of R(K_t, {H - x}).
    #[arg(long)]
    pub ramsey: Option<u64>,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long)]
    pub suite: String,
    #[arg(long)]
    pub nmax: Option<usize>,
    /// Run block I of K, written `I/K`.
    #[arg(long, value_parser = parse_shard)]
    pub shard: Option<(u64, u64)>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Random graphs for the sampling suites.
    #[arg(long, default_value_t = 1000)]
    pub samples: usize,
    /// Comma-separated values of t.
    #[arg(long, value_delimiter = ',', default_values_t = [2, 3])]
    pub t: Vec<usize>,
}

fn parse_shard(s: &str) -> Result<(u64, u64), String> {
    let (i, k) = s.split_once('/').ok_or("expected I/K")?;
    let i: u64 = i.trim().parse().map_err(|e| format!("shard index: {e}"))?;
    let k: u64 = k.trim().parse().map_err(|e| format!("shard count: {e}"))?;
    if k == 0 || i >= k {
        return Err(format!("need 0 <= I < K, got {i}/{k}"));
    }
    Ok((i, k))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum GraphKind {
    Polarity,
    Complete,
    Empty,
    Cycle,
    Path,
    Bipartite,
    Turan,
    Petersen,
    Gnp,
}

#[derive(Debug, Args)]
pub struct GenerateArgs {
    pub kind: GraphKind,
    /// Shorthand for the main size parameter (`q` for polarity, else `n`).
    pub size: Option<u64>,
    #[arg(long)]
    pub n: Option<usize>,
    /// Prime for the polarity graph.
    #[arg(long)]
    pub q: Option<u64>,
    #[arg(long)]
    pub a: Option<usize>,
    #[arg(long)]
    pub b: Option<usize>,
    /// Number of parts for the Turán graph.
    #[arg(long)]
    pub r: Option<usize>,
    /// Edge probability for `gnp`.
    #[arg(long)]
    pub p: Option<f64>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Write the graph6 line here instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum FamilyKind {
    /// {H - x}
    MinusVertex,
    /// {H - x} together with H minus a non-adjacent pair
    MinusEbar,
}

#[derive(Debug, Args)]
pub struct RamseyArgs {
    #[arg(long)]
    pub t: usize,
    /// Classical R(t, r).
    #[arg(long, conflicts_with = "h", required_unless_present = "h")]
    pub r: Option<usize>,
    /// Pattern H; the family is derived from it.
    #[arg(long)]
    pub h: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = FamilyKind::MinusVertex)]
    pub family: FamilyKind,
    #[arg(long, default_value_t = 9)]
    pub cap: usize,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    #[arg(long, value_delimiter = ',', required = true)]
    pub n: Vec<usize>,
    #[arg(long, value_delimiter = ',', required = true)]
    pub alpha: Vec<f64>,
    #[arg(long, value_delimiter = ',', default_values_t = [2])]
    pub t: Vec<usize>,
}
