//! `hyperrank` command-line front end.
//!
//! Exit status: 0 on success, 1 when a verification verdict is `fail`,
//! 2 on usage or parameter errors.

mod run;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

#[derive(Parser, Debug)]
#[command(
    name = "hyperrank",
    version,
    about = "Exact rank workbench for higher inclusion matrices"
)]
pub struct Cli {
    /// Worker threads for parallel experiments (default: available cores)
    #[arg(long, global = true, env = "HYPERRANK_THREADS")]
    pub threads: Option<usize>,

    /// Master seed for every random choice
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,

    /// Write the artifact here instead of standard output
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,

    /// Output format; each command has its own default
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Format {
    Json,
    Csv,
    Matrixmarket,
    HypergraphText,
}

#[derive(Subcommand, Debug, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    /// Build a named hypergraph
    #[command(subcommand)]
    Construct(Construct),
    /// Inclusion matrix M_s^r(G) of a hypergraph, as MatrixMarket
    Matrix(MatrixArgs),
    /// Rank of an inclusion matrix (hypergraph or MatrixMarket input)
    Rank(RankArgs),
    /// Integer kernel basis with associated s-graphs
    Nullspace(NullspaceArgs),
    /// Lower or upper shadow of a uniform family
    Shadow(ShadowArgs),
    /// Cascade (k-binomial) decomposition of m
    Cascade(CascadeArgs),
    /// Closed-form quantities
    #[command(subcommand)]
    Formula(Formula),
    /// Theorem checks
    #[command(subcommand)]
    Verify(Verify),
    /// Exhaustive rank-extremal search over removal families
    Rex(RexArgs),
    /// Random-hypergraph threshold sweep
    Sweep(SweepArgs),
    /// Random removal families and the fraction keeping full rank
    Resilience(ResilienceArgs),
}

#[derive(Subcommand, Debug, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Construct {
    /// Complete r-graph on [n]
    Complete(NR),
    /// Canonical s-star configuration of t sets
    Star(NTS),
    /// K_n^r minus the upper shadow of a t-element s-star
    Gts(NTRS),
    /// The tightness construction R(n,r,s)
    #[command(name = "R")]
    #[serde(rename = "R")]
    R(NRS),
    /// Tight Hamilton cycle with pendant attachments
    Hamilton(NR),
    /// Binomial random r-graph with edge probability p
    Random(RandomArgs),
}

#[derive(Args, Debug, Serialize)]
pub struct NR {
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub r: usize,
}

#[derive(Args, Debug, Serialize)]
pub struct NTS {
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub t: usize,
    #[arg(long)]
    pub s: usize,
}

#[derive(Args, Debug, Serialize)]
pub struct NRS {
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub r: usize,
    #[arg(long)]
    pub s: usize,
}

#[derive(Args, Debug, Serialize)]
pub struct NTRS {
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub t: usize,
    #[arg(long)]
    pub r: usize,
    #[arg(long)]
    pub s: usize,
}

#[derive(Args, Debug, Serialize)]
pub struct RandomArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub r: usize,
    #[arg(long)]
    pub p: f64,
}

#[derive(Args, Debug, Serialize)]
pub struct MatrixArgs {
    /// Hypergraph text file; `-` or absent reads standard input
    #[arg(long)]
    pub input: Option<PathBuf>,
    #[arg(long)]
    pub s: usize,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Mode {
    Exact,
    Modular,
    Certified,
}

#[derive(Args, Debug, Serialize)]
pub struct RankArgs {
    /// Hypergraph text or MatrixMarket file; `-` or absent reads standard input
    #[arg(long)]
    pub input: Option<PathBuf>,
    /// Column subset size; required for hypergraph input
    #[arg(long)]
    pub s: Option<usize>,
    #[arg(long, value_enum, default_value_t = Mode::Exact)]
    pub mode: Mode,
    /// Prime modulus for `--mode modular`
    #[arg(long)]
    pub p: Option<u64>,
}

#[derive(Args, Debug, Serialize)]
pub struct NullspaceArgs {
    #[arg(long)]
    pub input: Option<PathBuf>,
    #[arg(long)]
    pub s: Option<usize>,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Direction {
    Lower,
    Upper,
}

#[derive(Args, Debug, Serialize)]
pub struct ShadowArgs {
    /// Uniform family in hypergraph text format
    #[arg(long)]
    pub input: Option<PathBuf>,
    #[arg(long)]
    pub p: usize,
    #[arg(long, value_enum)]
    pub direction: Direction,
}

#[derive(Args, Debug, Serialize)]
pub struct CascadeArgs {
    #[arg(long)]
    pub m: String,
    #[arg(long)]
    pub k: usize,
}

#[derive(Subcommand, Debug, Serialize)]
pub enum Formula {
    /// N(n,t,r,s), the size of the upper shadow of a t-element s-star
    #[command(name = "N")]
    N(NTRS),
    /// K(n,m,k,p), the minimum upper p-shadow of m k-sets in [n]
    #[command(name = "K")]
    K(KArgs),
    /// Kruskal-Katona lower bound on the lower p-shadow of m k-sets
    #[command(name = "kkbound")]
    #[serde(rename = "kkbound")]
    KkBound(KkArgs),
}

#[derive(Args, Debug, Serialize)]
pub struct KArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub m: String,
    #[arg(long)]
    pub k: usize,
    #[arg(long)]
    pub p: usize,
}

#[derive(Args, Debug, Serialize)]
pub struct KkArgs {
    #[arg(long)]
    pub m: String,
    #[arg(long)]
    pub k: usize,
    #[arg(long)]
    pub p: usize,
}

#[derive(Subcommand, Debug, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verify {
    /// Full rank of M_s^r(K_n^r) for all s <= r <= n <= n-max
    Gottlieb(GottliebArgs),
    /// Rank of the star-deleted graph G(n,t,r,s) is C(n,s) - t
    Construction(NTRS),
    /// Both conclusions for the tightness construction
    #[command(name = "R")]
    #[serde(rename = "R")]
    R(NRS),
    /// Full rank of the Hamilton frame with unit increments
    Hamilton(NR),
    /// All labeled graphs on [n]: rank = n - b(G), rex table
    Census(CensusArgs),
    /// Exhaustive shadow minima against the cascade bound
    Kk(KkOracleArgs),
}

#[derive(Args, Debug, Serialize)]
pub struct GottliebArgs {
    #[arg(long)]
    pub n_max: usize,
}

#[derive(Args, Debug, Serialize)]
pub struct CensusArgs {
    #[arg(long)]
    pub n: usize,
}

#[derive(Args, Debug, Serialize)]
pub struct KkOracleArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub k: usize,
    #[arg(long)]
    pub p: usize,
}

#[derive(Args, Debug, Serialize)]
pub struct RexArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub t: usize,
    #[arg(long)]
    pub r: usize,
    #[arg(long)]
    pub s: usize,
    /// Largest removal family size searched
    #[arg(long)]
    pub f_cap: usize,
    /// Cap on rank evaluations
    #[arg(long, default_value_t = hyperrank::experiments::DEFAULT_REX_BUDGET)]
    pub budget: u64,
}

#[derive(Args, Debug, Serialize)]
pub struct SweepArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub r: usize,
    #[arg(long)]
    pub s: usize,
    /// Comma-separated probabilities (default: 13 log-spaced points from
    /// 1/4 to 4 times the threshold estimate)
    #[arg(long, value_delimiter = ',')]
    pub p_grid: Option<Vec<f64>>,
    #[arg(long, default_value_t = 300)]
    pub trials: usize,
}

#[derive(Args, Debug, Serialize)]
pub struct ResilienceArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub r: usize,
    #[arg(long)]
    pub s: usize,
    #[arg(long)]
    pub family_size: usize,
    /// Maximum s-degree of the removed family (default: no cap)
    #[arg(long)]
    pub degree_cap: Option<usize>,
    #[arg(long, default_value_t = 100)]
    pub trials: usize,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(threads) = cli.threads {
        if threads == 0 {
            eprintln!("error: --threads must be positive");
            return ExitCode::from(2);
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global()
            .expect("global pool is configured once");
    }
    match run::dispatch(&cli) {
        Ok(status) => ExitCode::from(status),
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(2)
        }
    }
}
