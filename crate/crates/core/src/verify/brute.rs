use alloc::collections::BTreeSet;
use alloc::vec;
use alloc::vec::Vec;

use num_traits::Zero;

use crate::model::{AgentId, Assignment, Instance};
use crate::oracles::Item;
use crate::rational::Rational;
use crate::Error;

/// Size limits for the exhaustive baselines.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BruteBounds;

impl BruteBounds {
    pub const KNAPSACK_ITEMS: usize = 20;
    pub const MULTI_ITEMS: usize = 10;
    pub const MULTI_BINS: usize = 3;
    pub const ONLINE_AGENTS: usize = 8;
    pub const ONLINE_SLOTS: usize = 8;
}

fn bound(what: &'static str, limit: usize, found: usize) -> Result<(), Error> {
    if found > limit {
        Err(Error::BoundExceeded { what, limit, found })
    } else {
        Ok(())
    }
}

/// Maximum value over every feasible subset; ties go to the lexicographically
/// smallest ascending list of agent ids.
pub fn brute_opt_knapsack(
    items: &[Item],
    capacity: &Rational,
) -> Result<(Rational, BTreeSet<AgentId>), Error> {
    let n = items.len();
    bound("knapsack items", BruteBounds::KNAPSACK_ITEMS, n)?;
    let mut best_value = Rational::zero();
    let mut best: Vec<AgentId> = Vec::new();
    for mask in 0u32..(1u32 << n) {
        let mut load = Rational::zero();
        let mut value = Rational::zero();
        let mut ids = Vec::new();
        for (i, item) in items.iter().enumerate() {
            if mask & (1 << i) != 0 {
                load += &item.size;
                value += &item.value;
                ids.push(item.agent);
            }
        }
        if load > *capacity {
            continue;
        }
        ids.sort_unstable();
        if value > best_value || (value == best_value && ids < best) {
            best_value = value;
            best = ids;
        }
    }
    Ok((best_value, best.into_iter().collect()))
}

/// Exhaustive search over all maps agent -> {unassigned, bin} that respect
/// capacities (per-bin sizes honored), optionally restricted per agent.
struct AssignSearch<'a> {
    inst: &'a Instance,
    allowed: Vec<Vec<bool>>,
    suffix: Vec<Rational>,
    loads: Vec<Rational>,
    current: Vec<Option<usize>>,
    best_value: Rational,
    best: Vec<Option<usize>>,
}

impl<'a> AssignSearch<'a> {
    fn new(inst: &'a Instance, allowed: Vec<Vec<bool>>) -> Self {
        let n = inst.num_agents();
        let mut suffix = vec![Rational::zero(); n + 1];
        for i in (0..n).rev() {
            suffix[i] = &suffix[i + 1] + &inst.bids[i].value;
        }
        AssignSearch {
            inst,
            allowed,
            suffix,
            loads: vec![Rational::zero(); inst.num_bins()],
            current: vec![None; n],
            best_value: Rational::zero(),
            best: vec![None; n],
        }
    }

    fn run(&mut self, at: usize, value: &Rational) {
        if at == self.inst.num_agents() {
            if *value > self.best_value {
                self.best_value = value.clone();
                self.best.clone_from(&self.current);
            }
            return;
        }
        // cannot strictly improve on the incumbent
        if value + &self.suffix[at] <= self.best_value {
            return;
        }
        let bid = &self.inst.bids[at];
        for bin in 0..self.inst.num_bins() {
            if !self.allowed[at][bin] {
                continue;
            }
            let load = &self.loads[bin] + bid.size_in(bin);
            if load > self.inst.bins[bin].capacity {
                continue;
            }
            let prev = core::mem::replace(&mut self.loads[bin], load);
            self.current[at] = Some(bin);
            self.run(at + 1, &(value + &bid.value));
            self.current[at] = None;
            self.loads[bin] = prev;
        }
        self.run(at + 1, value);
    }

    fn finish(mut self) -> (Rational, Assignment) {
        self.run(0, &Rational::zero());
        let mut a = Assignment::empty(self.inst.num_bins());
        for (agent, bin) in self.best.iter().enumerate() {
            if let Some(bin) = bin {
                a.per_bin[*bin].insert(agent);
            }
        }
        (self.best_value, a)
    }
}

/// Offline optimum of a multiple-knapsack / generalized-assignment instance.
pub fn brute_opt_multiknapsack(inst: &Instance) -> Result<(Rational, Assignment), Error> {
    bound("multi-knapsack items", BruteBounds::MULTI_ITEMS, inst.num_agents())?;
    bound("multi-knapsack bins", BruteBounds::MULTI_BINS, inst.num_bins())?;
    let allowed = vec![vec![true; inst.num_bins()]; inst.num_agents()];
    Ok(AssignSearch::new(inst, allowed).finish())
}

/// Offline optimum of an online instance: every agent may go to any slot
/// inside its window, subject to slot capacities.
pub fn brute_opt_online(inst: &Instance) -> Result<Rational, Error> {
    if !inst.online {
        return Err(Error::NotOnline);
    }
    bound("online agents", BruteBounds::ONLINE_AGENTS, inst.num_agents())?;
    bound("online slots", BruteBounds::ONLINE_SLOTS, inst.num_bins())?;
    let allowed = inst
        .bids
        .iter()
        .map(|b| {
            inst.bins
                .iter()
                .map(|bin| bin.slot.is_some_and(|s| b.present_at(s)))
                .collect()
        })
        .collect();
    Ok(AssignSearch::new(inst, allowed).finish().0)
}
