use alloc::collections::BTreeSet;
use alloc::vec::Vec;

use num_traits::{One, Zero};

use super::{Property, PropertyReport, Target, Witness};
use crate::model::{AgentId, Assignment, Bid, Instance, Slot};
use crate::rational::{int, rat, sum, Rational};
use crate::Error;

/// Finite stand-in for "every improvement of a bid".
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PerturbationGrid {
    /// Multipliers on the value (>= 1 for improvements).
    pub value_scales: Vec<Rational>,
    /// Amounts added to the value.
    pub value_offsets: Vec<Rational>,
    /// Multipliers on the size, and on every size-vector entry (<= 1).
    pub size_scales: Vec<Rational>,
    /// Slots by which arrival moves earlier and departure later (online only).
    pub window_shifts: Vec<Slot>,
    /// Restricts which agents are perturbed.
    pub agents: Option<BTreeSet<AgentId>>,
    /// Bisection steps spent locating value thresholds; zero disables probing.
    pub probe_steps: u32,
}

impl Default for PerturbationGrid {
    /// Values x{1, 1.01, 2, 10}, sizes x{1, 0.99, 1/2}, windows widened by
    /// 0..2 slots, 12 probe steps.
    fn default() -> Self {
        PerturbationGrid {
            value_scales: [rat(1, 1), rat(101, 100), rat(2, 1), rat(10, 1)].into(),
            value_offsets: Vec::new(),
            size_scales: [rat(1, 1), rat(99, 100), rat(1, 2)].into(),
            window_shifts: [0, 1, 2].into(),
            agents: None,
            probe_steps: 12,
        }
    }
}

impl PerturbationGrid {
    /// A grid that only raises `agent`'s value to exactly `value`.
    pub fn single_value(agent: AgentId, old: &Rational, value: &Rational) -> Self {
        PerturbationGrid {
            value_scales: Vec::new(),
            value_offsets: [value - old].into(),
            size_scales: [Rational::one()].into(),
            window_shifts: [0].into(),
            agents: Some([agent].into()),
            probe_steps: 0,
        }
    }

    fn covers(&self, agent: AgentId) -> bool {
        self.agents.as_ref().is_none_or(|a| a.contains(&agent))
    }

    fn values_for(&self, bid: &Bid) -> Vec<Rational> {
        let mut values: Vec<Rational> = self
            .value_scales
            .iter()
            .map(|s| &bid.value * s)
            .chain(self.value_offsets.iter().map(|o| &bid.value + o))
            .collect();
        values.sort();
        values.dedup();
        values
    }

    fn windows_for(&self, bid: &Bid, inst: &Instance) -> Vec<(Option<Slot>, Option<Slot>)> {
        let (Some(a), Some(d)) = (bid.arrival, bid.departure) else {
            return [(bid.arrival, bid.departure)].into();
        };
        let first = inst.bins.iter().filter_map(|b| b.slot).min().unwrap_or(a);
        let last = inst.bins.iter().filter_map(|b| b.slot).max().unwrap_or(d);
        let mut out = Vec::new();
        for &s in &self.window_shifts {
            for &t in &self.window_shifts {
                let a2 = a.saturating_sub(s);
                let d2 = d.saturating_add(t);
                if (s == 0 || a2 >= first) && (t == 0 || d2 <= last) {
                    out.push((Some(a2), Some(d2)));
                }
            }
        }
        out.sort();
        out.dedup();
        out
    }

    /// Every grid improvement of `bid`, excluding `bid` itself.
    pub fn improvements(&self, bid: &Bid, inst: &Instance) -> Vec<Bid> {
        let mut out = Vec::new();
        for value in self.values_for(bid) {
            for scale in &self.size_scales {
                for &(arrival, departure) in &self.windows_for(bid, inst) {
                    let next = Bid {
                        agent: bid.agent,
                        value: value.clone(),
                        size: &bid.size * scale,
                        size_vector: bid
                            .size_vector
                            .as_ref()
                            .map(|v| v.iter().map(|w| w * scale).collect()),
                        arrival,
                        departure,
                    };
                    if next != *bid {
                        out.push(next);
                    }
                }
            }
        }
        out
    }

    /// Improvements plus degradations (lower value, larger size, narrower
    /// window): arbitrary legal changes for the stability check.
    pub fn perturbations(&self, bid: &Bid, inst: &Instance) -> Vec<Bid> {
        let mut out = self.improvements(bid, inst);
        for scale in [Rational::zero(), rat(1, 2)] {
            out.push(bid.with_value(&bid.value * &scale));
        }
        for scale in [rat(3, 2), int(2)] {
            let mut b = bid.clone();
            b.size = &b.size * &scale;
            b.size_vector = b
                .size_vector
                .map(|v| v.iter().map(|w| w * &scale).collect());
            out.push(b);
        }
        if let (Some(a), Some(d)) = (bid.arrival, bid.departure) {
            if a < d {
                out.push(Bid {
                    arrival: Some(a + 1),
                    ..bid.clone()
                });
                out.push(Bid {
                    departure: Some(d - 1),
                    ..bid.clone()
                });
            }
        }
        out.retain(|b| b != bid);
        out.dedup();
        out
    }
}

struct Runner<'a> {
    target: &'a Target,
    inst: &'a Instance,
    base: Assignment,
    trials: usize,
}

impl<'a> Runner<'a> {
    fn new(target: &'a Target, inst: &'a Instance) -> Result<Self, Error> {
        Ok(Runner {
            base: target.evaluate(inst)?,
            target,
            inst,
            trials: 0,
        })
    }

    fn run(&mut self, bid: &Bid) -> Result<Assignment, Error> {
        self.trials += 1;
        self.target.evaluate(&self.inst.with_bid(bid.clone()))
    }

    fn witness(&self, agent: AgentId, new_bid: Bid, new_output: Assignment) -> Witness {
        Witness {
            agent,
            old_bid: self.inst.bids[agent].clone(),
            new_bid,
            old_output: self.base.clone(),
            new_output,
            trial: self.trials - 1,
        }
    }
}

fn midpoints(values: &[Rational]) -> Vec<Rational> {
    let two = int(2);
    values.windows(2).map(|w| (&w[0] + &w[1]) / &two).collect()
}

/// Improving a selected agent's bid must keep it selected.
pub fn check_monotone(
    target: &Target,
    inst: &Instance,
    grid: &PerturbationGrid,
) -> Result<PropertyReport, Error> {
    let mut runner = Runner::new(target, inst)?;
    for agent in runner.base.selected() {
        if !grid.covers(agent) {
            continue;
        }
        let bid = &inst.bids[agent];
        let mut probes = grid.improvements(bid, inst);
        if grid.probe_steps > 0 {
            let mut values = grid.values_for(bid);
            values.insert(0, bid.value.clone());
            values.dedup();
            probes.extend(midpoints(&values).into_iter().map(|v| bid.with_value(v)));
        }
        for probe in probes {
            let out = runner.run(&probe)?;
            if !out.contains(agent) {
                let w = runner.witness(agent, probe, out);
                return Ok(PropertyReport::fail(Property::Monotone, runner.trials, w));
            }
        }
    }
    Ok(PropertyReport::pass(Property::Monotone, runner.trials))
}

/// Improving an unselected agent's bid must either leave the whole output
/// unchanged or get the agent selected. Besides the grid, the value
/// threshold at which the agent starts winning is located by bisection and
/// every bisection point is checked as well.
pub fn check_loser_independent(
    target: &Target,
    inst: &Instance,
    grid: &PerturbationGrid,
) -> Result<PropertyReport, Error> {
    let mut runner = Runner::new(target, inst)?;
    let selected = runner.base.selected();
    // comfortably above anything the rest of the instance can offer
    let ceiling = sum(inst.bids.iter().map(|b| &b.value)) * int(2) + int(1);
    for agent in 0..inst.num_agents() {
        if selected.contains(&agent) || !grid.covers(agent) {
            continue;
        }
        let bid = &inst.bids[agent];
        let ok = |out: &Assignment, base: &Assignment| out.contains(agent) || out == base;
        for probe in grid.improvements(bid, inst) {
            let out = runner.run(&probe)?;
            if !ok(&out, &runner.base) {
                let w = runner.witness(agent, probe, out);
                return Ok(PropertyReport::fail(Property::LoserIndependent, runner.trials, w));
            }
        }
        if grid.probe_steps == 0 {
            continue;
        }
        let mut ladder = grid.values_for(bid);
        ladder.push(ceiling.clone());
        ladder.retain(|v| *v > bid.value);
        let mut lo = bid.value.clone();
        let mut hi = None;
        for v in ladder {
            let probe = bid.with_value(v.clone());
            let out = runner.run(&probe)?;
            if out.contains(agent) {
                hi = Some(v);
                break;
            }
            if !ok(&out, &runner.base) {
                let w = runner.witness(agent, probe, out);
                return Ok(PropertyReport::fail(Property::LoserIndependent, runner.trials, w));
            }
            lo = v;
        }
        let Some(mut hi) = hi else { continue };
        for _ in 0..grid.probe_steps {
            let mid = (&lo + &hi) / int(2);
            let probe = bid.with_value(mid.clone());
            let out = runner.run(&probe)?;
            if out.contains(agent) {
                hi = mid;
            } else if out == runner.base {
                lo = mid;
            } else {
                let w = runner.witness(agent, probe, out);
                return Ok(PropertyReport::fail(Property::LoserIndependent, runner.trials, w));
            }
        }
    }
    Ok(PropertyReport::pass(Property::LoserIndependent, runner.trials))
}

/// Sweeps `agent`'s value upward: the output value may not rise between two
/// consecutive points where the agent loses, nor fall between two where it
/// wins.
pub fn check_bitonic(
    target: &Target,
    inst: &Instance,
    agent: AgentId,
    value_grid: &[Rational],
) -> Result<PropertyReport, Error> {
    if agent >= inst.num_agents() {
        return Err(Error::UnknownAgent { agent });
    }
    if value_grid.windows(2).any(|w| w[0] > w[1]) {
        return Err(Error::GridNotAscending);
    }
    let bid = &inst.bids[agent];
    let mut trials = 0;
    let mut prev: Option<(Bid, Assignment, bool, Rational)> = None;
    for value in value_grid {
        let probe_bid = bid.with_value(value.clone());
        let probe = inst.with_bid(probe_bid.clone());
        let out = target.evaluate(&probe)?;
        trials += 1;
        let won = out.contains(agent);
        let total = out.value(&probe);
        if let Some((pbid, pout, pwon, ptotal)) = prev.take() {
            let broken = (!pwon && !won && total > ptotal) || (pwon && won && total < ptotal);
            if broken {
                let w = Witness {
                    agent,
                    old_bid: pbid,
                    new_bid: probe_bid,
                    old_output: pout,
                    new_output: out,
                    trial: trials - 1,
                };
                return Ok(PropertyReport::fail(Property::Bitonic, trials, w));
            }
        }
        prev = Some((probe_bid, out, won, total));
    }
    Ok(PropertyReport::pass(Property::Bitonic, trials))
}

/// Any change to one agent's bid that leaves its own allocation unchanged
/// must leave everyone else's unchanged too.
pub fn check_stability(
    target: &Target,
    inst: &Instance,
    grid: &PerturbationGrid,
) -> Result<PropertyReport, Error> {
    let mut runner = Runner::new(target, inst)?;
    for agent in 0..inst.num_agents() {
        if !grid.covers(agent) {
            continue;
        }
        let own = runner.base.bin_of(agent);
        for probe in grid.perturbations(&inst.bids[agent], inst) {
            let out = runner.run(&probe)?;
            if out.bin_of(agent) == own && out != runner.base {
                let w = runner.witness(agent, probe, out);
                return Ok(PropertyReport::fail(Property::Stable, runner.trials, w));
            }
        }
    }
    Ok(PropertyReport::pass(Property::Stable, runner.trials))
}
