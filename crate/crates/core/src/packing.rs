//! Multi-bin allocators built from a single-bin oracle.

use alloc::collections::BTreeSet;
use alloc::vec::Vec;
use core::fmt;

use num_traits::{One, Signed, Zero};

use crate::model::{AgentId, Assignment, BinId, Instance};
use crate::oracles::{Item, OracleKind, OracleResult};
use crate::rational::{int, Rational};
use crate::{online, Error};

/// An assignment plus how many oracle calls produced it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Packing {
    pub assignment: Assignment,
    pub oracle_calls: usize,
}

fn call_oracle(
    inst: &Instance,
    oracle: &OracleKind,
    bin: BinId,
    taken: &BTreeSet<AgentId>,
) -> OracleResult {
    let items: Vec<Item> = inst
        .bids
        .iter()
        .filter(|b| !taken.contains(&b.agent))
        .map(|b| Item::from_bid(b, bin))
        .collect();
    oracle.run(&items, &inst.bins[bin].capacity)
}

/// Packs bins one at a time in declaration order, each with the oracle over
/// the bids not yet placed. No backtracking.
pub fn iterative_pack_counted(inst: &Instance, oracle: &OracleKind) -> Packing {
    let mut assignment = Assignment::empty(inst.num_bins());
    let mut taken = BTreeSet::new();
    for bin in 0..inst.num_bins() {
        let out = call_oracle(inst, oracle, bin, &taken);
        taken.extend(out.selected.iter().copied());
        assignment.per_bin[bin] = out.selected;
    }
    Packing {
        assignment,
        oracle_calls: inst.num_bins(),
    }
}

pub fn iterative_pack(inst: &Instance, oracle: &OracleKind) -> Assignment {
    iterative_pack_counted(inst, oracle).assignment
}

/// [`iterative_pack`] for generalized assignment: every bid must carry a
/// per-bin size vector, and bin `j` sees the `j`-th entry.
pub fn gap_iterative_pack(inst: &Instance, oracle: &OracleKind) -> Result<Assignment, Error> {
    for bid in &inst.bids {
        match &bid.size_vector {
            Some(sizes) if sizes.len() == inst.num_bins() => {}
            _ => return Err(Error::MissingSizeVector { agent: bid.agent }),
        }
    }
    Ok(iterative_pack(inst, oracle))
}

/// Each round runs the oracle on every still-empty bin and commits the single
/// most valuable packing (lowest bin on ties), for at most `bin_budget` rounds.
/// Stops early once no bin improves the value.
pub fn global_greedy_pack_counted(inst: &Instance, oracle: &OracleKind) -> Packing {
    let budget = inst.bin_budget.unwrap_or(inst.num_bins());
    let mut assignment = Assignment::empty(inst.num_bins());
    let mut used = BTreeSet::new();
    let mut taken = BTreeSet::new();
    let mut oracle_calls = 0;
    for _ in 0..budget {
        let mut best: Option<(BinId, Rational, BTreeSet<AgentId>)> = None;
        for bin in (0..inst.num_bins()).filter(|b| !used.contains(b)) {
            let out = call_oracle(inst, oracle, bin, &taken);
            oracle_calls += 1;
            let value: Rational = out
                .selected
                .iter()
                .fold(Rational::zero(), |acc, &i| acc + &inst.bids[i].value);
            if best.as_ref().is_none_or(|(_, v, _)| value > *v) {
                best = Some((bin, value, out.selected));
            }
        }
        match best {
            Some((bin, value, selected)) if value.is_positive() => {
                used.insert(bin);
                taken.extend(selected.iter().copied());
                assignment.per_bin[bin] = selected;
            }
            _ => break,
        }
    }
    Packing {
        assignment,
        oracle_calls,
    }
}

pub fn global_greedy_pack(inst: &Instance, oracle: &OracleKind) -> Assignment {
    global_greedy_pack_counted(inst, oracle).assignment
}

/// How an instance is turned into an assignment.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Allocator {
    /// Local greedy over bins in declaration order.
    Iterative(OracleKind),
    /// Local greedy with per-bin size vectors required.
    Gap(OracleKind),
    /// Global greedy under the instance's bin budget.
    Global(OracleKind),
    /// Slot-by-slot online packing.
    Online(OracleKind),
}

impl Allocator {
    pub fn oracle(&self) -> &OracleKind {
        match self {
            Allocator::Iterative(o)
            | Allocator::Gap(o)
            | Allocator::Global(o)
            | Allocator::Online(o) => o,
        }
    }

    pub fn allocate(&self, inst: &Instance) -> Result<Assignment, Error> {
        Ok(self.allocate_counted(inst)?.assignment)
    }

    pub fn allocate_counted(&self, inst: &Instance) -> Result<Packing, Error> {
        match self {
            Allocator::Iterative(o) => Ok(iterative_pack_counted(inst, o)),
            Allocator::Gap(o) => Ok(Packing {
                assignment: gap_iterative_pack(inst, o)?,
                oracle_calls: inst.num_bins(),
            }),
            Allocator::Global(o) => Ok(global_greedy_pack_counted(inst, o)),
            Allocator::Online(o) => {
                let run = online::simulate_online(inst, o)?;
                Ok(Packing {
                    oracle_calls: run.trace.len(),
                    assignment: run.assignment,
                })
            }
        }
    }

    /// Guaranteed lower bound on `ALG / OPT`, `1 / (alpha + 1)`, when the
    /// oracle has an approximation factor. The FPTAS composition is held to
    /// `1 / (2 + eps)`.
    pub fn composition_bound(&self) -> Option<Rational> {
        let ratio = match (self, self.oracle()) {
            // trivially optimal per unit slot
            (Allocator::Online(_), OracleKind::MaxValue) => int(2),
            (_, OracleKind::Fptas(cfg)) => int(2) + cfg.epsilon(),
            (_, o) => o.approximation_factor()? + int(1),
        };
        Some(Rational::one() / ratio)
    }

    pub fn name(&self) -> &'static str {
        match self {
            Allocator::Iterative(_) => "iterative",
            Allocator::Gap(_) => "gap",
            Allocator::Global(_) => "global",
            Allocator::Online(_) => "online",
        }
    }
}

impl fmt::Display for Allocator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}+{}", self.name(), self.oracle())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::Bid;
    use crate::rational::rat;
    use alloc::vec;

    pub(crate) fn witness_instance(raised: bool) -> Instance {
        let eps = rat(1, 10);
        let one = Rational::one();
        let fourth = if raised { rat(6, 10) } else { rat(1, 2) };
        Instance::offline(
            &[
                (&one + &eps, rat(1, 2)),
                (&one + &eps, rat(1, 2)),
                (rat(3, 2), rat(3, 4)),
                (fourth, rat(1, 4)),
                (int(2) - &eps, one.clone()),
                (int(2) - &eps, one.clone()),
            ],
            &[int(1), int(1)],
        )
    }

    fn bins(a: &Assignment) -> Vec<Vec<usize>> {
        a.per_bin.iter().map(|s| s.iter().copied().collect()).collect()
    }

    #[test]
    fn iterative_max_greedy_evicts_raised_item() {
        let a = iterative_pack(&witness_instance(false), &OracleKind::MaxGreedy);
        assert_eq!(bins(&a), [vec![0, 1], vec![2, 3]]);
        let b = iterative_pack(&witness_instance(true), &OracleKind::MaxGreedy);
        assert_eq!(bins(&b), [vec![4], vec![5]]);
    }

    #[test]
    fn single_bin_equals_oracle() {
        let inst = Instance::offline(
            &[(int(6), int(1)), (int(10), int(2)), (int(12), int(3))],
            &[int(5)],
        );
        for oracle in [OracleKind::HalfGreedy, OracleKind::MaxGreedy, OracleKind::Exact] {
            let items: Vec<Item> = inst.bids.iter().map(|b| Item::from_bid(b, 0)).collect();
            let direct = oracle.run(&items, &int(5)).selected;
            assert_eq!(iterative_pack(&inst, &oracle).per_bin[0], direct);
        }
        assert_eq!(iterative_pack_counted(&inst, &OracleKind::Exact).oracle_calls, 1);
    }

    #[test]
    fn gap_requires_size_vectors() {
        let inst = witness_instance(false);
        assert_eq!(
            gap_iterative_pack(&inst, &OracleKind::HalfGreedy),
            Err(Error::MissingSizeVector { agent: 0 })
        );
    }

    #[test]
    fn gap_uniform_vectors_match_iterative() {
        let mut inst = witness_instance(false);
        for bid in &mut inst.bids {
            bid.size_vector = Some(vec![bid.size.clone(); 2]);
        }
        assert_eq!(
            gap_iterative_pack(&inst, &OracleKind::MaxGreedy).unwrap(),
            iterative_pack(&witness_instance(false), &OracleKind::MaxGreedy)
        );
    }

    #[test]
    fn gap_per_bin_sizes() {
        let mut inst = Instance::offline(&[(int(2), int(1)), (int(2), int(1))], &[int(1), int(1)]);
        inst.bids[0].size_vector = Some(vec![int(1), rat(1, 2)]);
        inst.bids[1].size_vector = Some(vec![rat(1, 2), int(1)]);
        let a = gap_iterative_pack(&inst, &OracleKind::Exact).unwrap();
        assert_eq!(a.value(&inst), int(4));
        assert!(a.is_feasible(&inst));
        // an item too large for every bin never lands
        inst.bids.push(Bid::new(2, int(9), int(2)).with_sizes(vec![int(2), int(3)]));
        let a = gap_iterative_pack(&inst, &OracleKind::Exact).unwrap();
        assert!(!a.contains(2));
    }

    #[test]
    fn global_greedy_budget() {
        let mut inst = Instance::offline(&[(int(3), int(1)), (int(4), int(2))], &[int(1), int(2)]);
        inst.bin_budget = Some(1);
        let a = global_greedy_pack(&inst, &OracleKind::Exact);
        assert_eq!(bins(&a), [vec![], vec![1]]);
        assert_eq!(a.value(&inst), int(4));
        inst.bin_budget = Some(0);
        assert_eq!(global_greedy_pack(&inst, &OracleKind::Exact), Assignment::empty(2));
    }

    #[test]
    fn global_greedy_single_bin_matches_iterative() {
        let inst = Instance::offline(
            &[(int(6), int(1)), (int(10), int(2)), (int(12), int(3))],
            &[int(5)],
        );
        let g = global_greedy_pack_counted(&inst, &OracleKind::HalfGreedy);
        assert_eq!(g.assignment, iterative_pack(&inst, &OracleKind::HalfGreedy));
        assert!(g.oracle_calls <= 1);
    }
}
