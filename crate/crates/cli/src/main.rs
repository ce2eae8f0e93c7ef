mod commands;
mod input;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use kmetric::Error;

use crate::input::KRange;

#[derive(Parser, Debug)]
#[command(name = "kmetric", version, about = "k-metric dimension of graphs, coronas, fans and wheels")]
pub struct Cli {
    #[command(flatten)]
    pub global: Global,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct Global {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Search nodes per solve (default: $KMETRIC_NODE_BUDGET, else 50000000).
    #[arg(long, global = true, value_parser = clap::value_parser!(u64).range(1..))]
    pub node_budget: Option<u64>,
    /// Worker threads.
    #[arg(long, global = true, default_value_t = 1, value_parser = clap::value_parser!(u32).range(1..))]
    pub threads: u32,
    /// Seed for random instances.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// k', twins, C(g), diameter, girth, order and size.
    Analyze {
        /// Graph expression, or @path to an edge list.
        graph: String,
    },
    /// dim_k over a range of k.
    Dimk {
        graph: String,
        /// `a..b` (inclusive) or a single k. Default: 1..k'.
        #[arg(long)]
        k: Option<KRange>,
        /// Include wall-clock times in json/csv output.
        #[arg(long)]
        timings: bool,
    },
    /// An optimal k-metric basis.
    Basis {
        graph: String,
        #[arg(long)]
        k: KRange,
        /// List up to N optimal bases in lexicographic order.
        #[arg(long, value_name = "N")]
        all: Option<usize>,
        /// Per-pair coverage of the basis.
        #[arg(long)]
        audit: bool,
    },
    /// Check one claim over a parameter range.
    Sweep {
        /// Claim name, e.g. FanDim2 or SandwichBounds.
        theorem: String,
        /// Orders for fan/wheel claims, `a..b` inclusive.
        #[arg(long)]
        n: Option<KRange>,
        /// Graph for single-graph claims.
        #[arg(long)]
        graph: Option<String>,
        /// Base graph for corona claims.
        #[arg(long)]
        base: Option<String>,
        /// Comma-separated attachment family for corona claims.
        #[arg(long)]
        attach: Option<String>,
        #[arg(long)]
        k: Option<KRange>,
        /// Check N random coronas (base order 2..3, attachments 2..5) from --seed.
        #[arg(long, value_name = "N")]
        random: Option<usize>,
    },
    /// Run the curated corpus.
    Verify {
        /// Restrict to one claim.
        #[arg(long)]
        only: Option<String>,
    },
}

pub mod exit {
    pub const USAGE: u8 = 2;
    pub const INFEASIBLE: u8 = 3;
    pub const EXHAUSTED: u8 = 4;
    pub const VIOLATION: u8 = 5;
}

pub fn exit_code(e: &Error) -> u8 {
    match e {
        Error::ResourceExhausted(_) => exit::EXHAUSTED,
        Error::KTooLarge { .. }
        | Error::Infeasible(..)
        | Error::ForcedExcluded(_)
        | Error::DisconnectedGraph
        | Error::TrivialGraph(_) => exit::INFEASIBLE,
        _ => exit::USAGE,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.code())
        }
    }
}
