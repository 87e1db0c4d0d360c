//! Property checkers, brute-force optima and ratio reports.
//!
//! The definitions behind monotonicity and loser-independence quantify over
//! every improvement of a bid, which cannot be enumerated. The checkers here
//! replay a finite [`PerturbationGrid`] plus threshold probes found by
//! bisection, and report the first counterexample they meet together with
//! everything needed to replay it.

mod brute;
mod counterexample;
mod properties;
mod ratio;

pub use brute::{brute_opt_knapsack, brute_opt_multiknapsack, brute_opt_online, BruteBounds};
pub use counterexample::{counterexample_instance, max_greedy_counterexample};
pub use properties::{
    check_bitonic, check_loser_independent, check_monotone, check_stability, PerturbationGrid,
};
pub use ratio::{ratio_report, RatioBound, RatioReport};

use alloc::vec::Vec;
use core::fmt;

use crate::model::{AgentId, Assignment, Bid, Instance};
use crate::oracles::{Item, OracleKind};
use crate::packing::Allocator;
use crate::Error;

/// What a property check runs: a single-bin oracle (on bin 0) or a full
/// multi-bin allocator.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Target {
    Oracle(OracleKind),
    Allocator(Allocator),
}

impl Target {
    /// Output of the target; oracle targets yield a one-bin assignment.
    pub fn evaluate(&self, inst: &Instance) -> Result<Assignment, Error> {
        match self {
            Target::Oracle(oracle) => {
                let bin = inst.bins.first().ok_or(Error::NoBins)?;
                let items: Vec<Item> = inst.bids.iter().map(|b| Item::from_bid(b, 0)).collect();
                let mut out = Assignment::empty(1);
                out.per_bin[0] = oracle.run(&items, &bin.capacity).selected;
                Ok(out)
            }
            Target::Allocator(allocator) => allocator.allocate(inst),
        }
    }
}

impl fmt::Display for Target {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Target::Oracle(o) => write!(f, "oracle:{o}"),
            Target::Allocator(a) => write!(f, "{a}"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Property {
    Monotone,
    LoserIndependent,
    Bitonic,
    Stable,
}

impl Property {
    pub fn name(self) -> &'static str {
        match self {
            Property::Monotone => "monotone",
            Property::LoserIndependent => "loser_independent",
            Property::Bitonic => "bitonic",
            Property::Stable => "stable",
        }
    }
}

impl fmt::Display for Property {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    Fail,
}

/// A replayable counterexample: running the target with `old_bid` and then
/// `new_bid` for `agent` (all other bids fixed) yields the two outputs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witness {
    pub agent: AgentId,
    pub old_bid: Bid,
    pub new_bid: Bid,
    pub old_output: Assignment,
    pub new_output: Assignment,
    /// Index of the failing trial within the check.
    pub trial: usize,
}

impl Witness {
    /// Re-runs both sides against `inst` and reports whether the recorded
    /// outputs are reproduced.
    pub fn replays(&self, target: &Target, inst: &Instance) -> Result<bool, Error> {
        let old = target.evaluate(&inst.with_bid(self.old_bid.clone()))?;
        let new = target.evaluate(&inst.with_bid(self.new_bid.clone()))?;
        Ok(old == self.old_output && new == self.new_output)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PropertyReport {
    pub property: Property,
    pub verdict: Verdict,
    pub witness: Option<Witness>,
    pub trials: usize,
}

impl PropertyReport {
    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }

    fn pass(property: Property, trials: usize) -> Self {
        PropertyReport {
            property,
            verdict: Verdict::Pass,
            witness: None,
            trials,
        }
    }

    fn fail(property: Property, trials: usize, witness: Witness) -> Self {
        PropertyReport {
            property,
            verdict: Verdict::Fail,
            witness: Some(witness),
            trials,
        }
    }
}

/// Running total over many per-instance reports; keeps the first failure.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Tally {
    pub property: Property,
    pub instances: usize,
    pub trials: usize,
    pub failures: usize,
    /// Corpus index and witness of the first failing instance.
    pub first_failure: Option<(usize, Witness)>,
}

impl Tally {
    pub fn new(property: Property) -> Self {
        Tally {
            property,
            instances: 0,
            trials: 0,
            failures: 0,
            first_failure: None,
        }
    }

    pub fn add(&mut self, index: usize, report: PropertyReport) {
        self.instances += 1;
        self.trials += report.trials;
        if let Some(w) = report.witness {
            self.failures += 1;
            if self.first_failure.is_none() {
                self.first_failure = Some((index, w));
            }
        }
    }

    pub fn passed(&self) -> bool {
        self.failures == 0
    }
}
