mod commands;
mod input;

use std::io::Write;
use std::process::ExitCode;

use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};
use wordrep::Error;

#[derive(Parser, Debug)]
#[command(name = "wordrep", version, about = "Word-representability with checkable certificates")]
pub struct Cli {
    /// Search-node budget for exact searches.
    #[arg(long, global = true)]
    pub budget: Option<u64>,
    /// Worker threads (defaults to all cores).
    #[arg(long, global = true)]
    pub jobs: Option<usize>,
    /// Seed for sampled checks.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Largest occurrence count tried when also searching for a representing word.
    #[arg(long, global = true)]
    pub max_occurrence: Option<usize>,
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    G6,
    Dot,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Decide a class membership and emit a certificate document.
    Check(CheckArgs),
    /// Multi-word-representation number, by search or by a product construction.
    Mu(MuArgs),
    /// Build lexicographic products, powers, maps and special subgraphs.
    #[command(subcommand)]
    Lex(LexCommand),
    /// Size of a maximum representable set.
    Eta(EtaArgs),
    /// Re-check a certificate document without searching.
    Verify(VerifyArgs),
    /// Minimum of eta over a corpus of n-vertex graphs.
    Tau(TauArgs),
    /// Check the cap^k bound on representable sets of a lexicographic power.
    PowerBound(PowerBoundArgs),
}

#[derive(Args, Debug)]
#[command(group(ArgGroup::new("property").required(true).args(["wr", "comparability", "minimal"])))]
pub struct CheckArgs {
    #[arg(long)]
    pub wr: bool,
    #[arg(long)]
    pub comparability: bool,
    /// Minimal non-word-representable: non-representable, every vertex deletion representable.
    #[arg(long)]
    pub minimal: bool,
    /// graph6 or sparse6: literal, file, or `-` for stdin.
    pub input: String,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Construction {
    /// Lexicographic map of the outer graph plus copies of the inner graph.
    ProductTwo,
    /// At most k parts for the k-th power of a representable graph.
    Power,
    /// Two transitive parts for the k-th power, from a two-part comparability split.
    PowerComparability,
    /// Sum of the factors' part counts.
    ProductGeneral,
    /// As many parts as the outer cover, filling supervertices with comparability parts.
    ProductTight,
    /// Three disjoint parts when both factors are minimal non-representable.
    MinimalProduct,
}

#[derive(Args, Debug)]
pub struct MuArgs {
    /// Host graph for the search mode.
    pub input: Option<String>,
    #[arg(long, value_enum)]
    pub constructive: Option<Construction>,
    /// Sidecar JSON written by `lex`, naming the factors.
    #[arg(long)]
    pub structure: Option<String>,
    #[arg(long)]
    pub outer: Option<String>,
    #[arg(long)]
    pub inner: Option<String>,
    #[arg(long)]
    pub base: Option<String>,
    #[arg(long)]
    pub k: Option<usize>,
    /// Edges of the first comparability part, e.g. `0-1,1-2`; the rest form the second.
    #[arg(long)]
    pub split: Option<String>,
    /// Supervertex left out of the outer map in the minimal-product construction.
    #[arg(long, default_value_t = 0)]
    pub r: usize,
    /// Root vertex of each supervertex, comma separated (default all 0).
    #[arg(long)]
    pub roots: Option<String>,
    /// Inner vertex deleted from supervertex r.
    #[arg(long)]
    pub deleted: Option<usize>,
}

#[derive(Args, Debug)]
pub struct FactorArgs {
    pub outer: String,
    pub inner: String,
    /// Write the structure sidecar JSON here.
    #[arg(long)]
    pub sidecar: Option<String>,
}

#[derive(Subcommand, Debug)]
pub enum LexCommand {
    Product(FactorArgs),
    Power {
        input: String,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        sidecar: Option<String>,
    },
    Map {
        #[command(flatten)]
        factors: FactorArgs,
        /// Outer edges to join, e.g. `0-1,1-2`; empty for none.
        #[arg(long, default_value = "")]
        edges: String,
    },
    Special {
        #[command(flatten)]
        factors: FactorArgs,
        #[arg(long, default_value = "")]
        edges: String,
        /// Comparability fill of one supervertex, e.g. `2:0-1,1-2`; repeatable.
        #[arg(long)]
        fill: Vec<String>,
    },
}

#[derive(Args, Debug)]
pub struct EtaArgs {
    pub input: String,
    /// Certify the upper bound by listing every larger set with its obstruction.
    #[arg(long)]
    pub blockers: bool,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    /// Certificate document JSON: literal, file, or `-`.
    pub input: String,
    /// Largest witness re-decided during verification.
    #[arg(long, default_value_t = 16)]
    pub witness_cap: usize,
}

#[derive(Args, Debug)]
pub struct TauArgs {
    #[arg(long)]
    pub n: usize,
    /// One graph per line; omitted for n <= 5 to use every labelled graph.
    pub corpus: Option<String>,
    /// Accept corpora on 8 or more vertices.
    #[arg(long)]
    pub allow_large: bool,
}

#[derive(Args, Debug)]
pub struct PowerBoundArgs {
    pub input: String,
    #[arg(long)]
    pub k: usize,
    #[arg(long)]
    pub cap: usize,
    #[arg(long, default_value_t = 50)]
    pub samples: usize,
}

/// Exit statuses shared by every command.
pub mod exit {
    pub const OK: u8 = 0;
    pub const VERIFY_FAILED: u8 = 1;
    pub const INPUT: u8 = 2;
    pub const UNKNOWN: u8 = 3;
}

/// Writes one line to stdout; a closed pipe is not an error.
pub fn emit(text: &str) {
    let _ = writeln!(std::io::stdout().lock(), "{text}");
}

fn status_of(e: &Error) -> u8 {
    match e {
        Error::BudgetExhausted(_) | Error::Unknown { .. } => exit::UNKNOWN,
        Error::Verification(_) => exit::VERIFY_FAILED,
        _ => exit::INPUT,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(jobs) = cli.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(jobs).build_global() {
            eprintln!("error: --jobs: {e}");
            return ExitCode::from(exit::INPUT);
        }
    }
    match commands::run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            let code = status_of(&e);
            if code == exit::UNKNOWN {
                emit(&serde_json::json!({ "status": "unknown", "reason": e.to_string() }).to_string());
            }
            eprintln!("error: {e}");
            ExitCode::from(code)
        }
    }
}
