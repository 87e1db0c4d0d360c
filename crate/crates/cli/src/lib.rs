//! Command-line front end for `packmech-core`: instance files, reports and
//! the `solve`, `pay`, `verify`, `simulate` and `counterexample` commands.
//!
//! Exit codes: 0 success or PASS, 1 property failure, 2 input error,
//! 3 disallowed configuration.

pub mod commands;
pub mod format;
pub mod report;

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use packmech_core::{Allocator, OracleKind};

pub use commands::{execute, CliError, Finished};

/// Corpus seed used when neither `--corpus SEED,N` nor `GM_SEED` sets one.
pub const DEFAULT_SEED: u64 = 7;

#[derive(Debug, Parser)]
#[command(name = "packmech", version, about = "Truthful greedy packing toolkit")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Allocate an instance and print the packing.
    Solve {
        file: PathBuf,
        #[command(flatten)]
        target: TargetArgs,
    },
    /// Allocate and charge every winner its critical value.
    Pay {
        file: PathBuf,
        #[command(flatten)]
        target: TargetArgs,
        /// Bisection precision.
        #[arg(long, default_value = "1/1000000")]
        delta: String,
        /// Exact breakpoint search (max-value oracles only).
        #[arg(long)]
        breakpoint: bool,
    },
    /// Check a property on one instance or on a seeded corpus.
    Verify(VerifyArgs),
    /// Run an online instance slot by slot.
    Simulate {
        file: PathBuf,
        #[arg(long, default_value = "maxvalue")]
        oracle: OracleKind,
        /// Writes the per-slot trace as JSON.
        #[arg(long)]
        trace: Option<PathBuf>,
    },
    /// Build the two-bin instance on which max-greedy packing is not monotone.
    Counterexample {
        #[arg(long)]
        eps: String,
        #[arg(long, default_value = "counterexample.json")]
        instance: PathBuf,
        #[arg(long, default_value = "counterexample-witness.json")]
        witness: PathBuf,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum AllocatorKind {
    Iterative,
    Gap,
    Global,
    Online,
}

#[derive(Debug, Clone, Args)]
pub struct TargetArgs {
    /// Defaults to `online` for online instances and `iterative` otherwise.
    #[arg(long, value_enum)]
    pub allocator: Option<AllocatorKind>,
    #[arg(long, default_value = "halfgreedy")]
    pub oracle: OracleKind,
}

impl TargetArgs {
    pub fn allocator(&self, online: bool) -> Allocator {
        let kind = self.allocator.unwrap_or(if online {
            AllocatorKind::Online
        } else {
            AllocatorKind::Iterative
        });
        let o = self.oracle.clone();
        match kind {
            AllocatorKind::Iterative => Allocator::Iterative(o),
            AllocatorKind::Gap => Allocator::Gap(o),
            AllocatorKind::Global => Allocator::Global(o),
            AllocatorKind::Online => Allocator::Online(o),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum PropertyArg {
    Monotone,
    Loser,
    Bitonic,
    Stable,
    Ratio,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Level {
    /// The single-bin oracle, run on bin 0.
    Oracle,
    /// The full allocator.
    Allocator,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum KindArg {
    Knapsack,
    Multi,
    Identical,
    Gap,
    OnlineUnit,
    OnlineMulti,
}

#[derive(Debug, Clone, Args)]
pub struct VerifyArgs {
    #[arg(required_unless_present = "corpus", conflicts_with = "corpus")]
    pub file: Option<PathBuf>,
    /// `SEED,N`, or just `N` to take the seed from `GM_SEED`.
    #[arg(long)]
    pub corpus: Option<String>,
    #[arg(long, value_enum, default_value = "multi")]
    pub kind: KindArg,
    #[arg(long, value_enum)]
    pub property: PropertyArg,
    #[arg(long, value_enum, default_value = "allocator")]
    pub level: Level,
    #[command(flatten)]
    pub target: TargetArgs,
    /// Ratio to certify instead of the allocator's own guarantee.
    #[arg(long)]
    pub bound: Option<String>,
    /// Where a failing check writes its witness.
    #[arg(long, default_value = "witness.json")]
    pub witness: PathBuf,
}
