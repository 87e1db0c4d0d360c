//! Greedy iterative packing with truthful payments.
//!
//! Single-bin knapsack oracles ([`oracles`]) are composed into multi-bin
//! allocators ([`packing`], [`online`]). When the oracle is monotone and
//! loser-independent, the composition is monotone, so charging every winner
//! its critical value ([`mechanism`]) gives a truthful mechanism. The
//! [`verify`] module checks those properties and the approximation ratios
//! against exhaustive optima.
//!
//! All arithmetic is exact ([`rational::Rational`]); ties are broken by agent
//! index everywhere, so every allocator is a deterministic function of its
//! input.
#![no_std]

extern crate alloc;

pub mod corpus;
pub mod mechanism;
pub mod model;
pub mod online;
pub mod oracles;
pub mod packing;
pub mod rational;
pub mod verify;

use alloc::string::String;

pub use mechanism::{critical_value, run_mechanism, Outcome, PaymentConfig, PaymentMode};
pub use model::{
    assignment_value, improves, validate_instance, AgentId, Assignment, Bid, BinId, BinSpec,
    Instance, ModelError, Slot,
};
pub use online::{dynamic_auction, dynamic_multi_auction, simulate_online, OnlineRun, SlotEvent};
pub use oracles::{FptasConfig, Item, OracleKind, OracleResult};
pub use packing::{gap_iterative_pack, global_greedy_pack, iterative_pack, Allocator};
pub use rational::Rational;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error("agent {agent}: generalized assignment needs a size for every bin")]
    MissingSizeVector { agent: AgentId },
    #[error("instance is not online")]
    NotOnline,
    #[error("{what} {id}: unit auctions need unit sizes and capacities")]
    NonUnitInstance { what: &'static str, id: usize },
    #[error(
        "allocator {allocator} is not on the truthful allow-list \
         (iterative packing with max-greedy is not monotone; global greedy is unproven)"
    )]
    DisallowedAllocator { allocator: String },
    #[error("no critical value: agent {agent} is a loser")]
    Loser { agent: AgentId },
    #[error("unknown agent {agent}")]
    UnknownAgent { agent: AgentId },
    #[error("breakpoint payments are only available for max-value allocators")]
    BreakpointUnsupported,
    #[error("payment delta must be positive")]
    NonPositiveDelta,
    #[error("{what}: {found} exceeds the exhaustive-search limit {limit}")]
    BoundExceeded {
        what: &'static str,
        limit: usize,
        found: usize,
    },
    #[error("counterexample epsilon must lie strictly between 0 and 1/6")]
    EpsilonOutOfRange,
    #[error("instance has no bins")]
    NoBins,
    #[error("value grid must be ascending")]
    GridNotAscending,
}
