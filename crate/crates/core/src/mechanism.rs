//! Critical-value payments for monotone allocators.
//!
//! A monotone allocator gives every agent a single value threshold: it wins
//! above it and loses below it. Charging each winner that threshold makes
//! truthful reporting a dominant strategy. Online allocators are handled the
//! same way, by replaying the whole slot sequence with only the agent's value
//! varied (arrival, departure and size stay as reported).

use alloc::vec::Vec;

use num_traits::{One, Zero};

use crate::model::{AgentId, Assignment, Instance};
use crate::oracles::OracleKind;
use crate::packing::Allocator;
use crate::rational::{rat, Rational};
use crate::Error;

/// How critical values are found.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PaymentMode {
    /// Binary search on `[0, reported value]` down to width `delta`, returning
    /// the winning end.
    Bisection { delta: Rational },
    /// Exact threshold from the finite set of rival values. Only for
    /// max-value allocators, whose decisions depend on value comparisons alone.
    Breakpoint,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PaymentConfig {
    pub mode: PaymentMode,
}

impl PaymentConfig {
    pub fn bisection(delta: Rational) -> Result<Self, Error> {
        if delta <= Rational::zero() {
            return Err(Error::NonPositiveDelta);
        }
        Ok(PaymentConfig {
            mode: PaymentMode::Bisection { delta },
        })
    }

    pub fn breakpoint() -> Self {
        PaymentConfig {
            mode: PaymentMode::Breakpoint,
        }
    }

    /// The bisection width, if any.
    pub fn delta(&self) -> Option<&Rational> {
        match &self.mode {
            PaymentMode::Bisection { delta } => Some(delta),
            PaymentMode::Breakpoint => None,
        }
    }
}

impl Default for PaymentConfig {
    /// Bisection with `delta = 10^-6`.
    fn default() -> Self {
        PaymentConfig {
            mode: PaymentMode::Bisection {
                delta: rat(1, 1_000_000),
            },
        }
    }
}

/// Allocation plus per-agent payments (indexed by agent; losers pay zero).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub assignment: Assignment,
    pub payments: Vec<Rational>,
}

impl Outcome {
    /// Quasilinear utility of `agent` when its true value is `true_value`.
    pub fn utility(&self, agent: AgentId, true_value: &Rational) -> Rational {
        if self.assignment.contains(agent) {
            true_value - &self.payments[agent]
        } else {
            -self.payments[agent].clone()
        }
    }
}

/// Allocators on the allow-list: local (or online) iterative packing over a
/// loser-independent oracle. The max-greedy composition is not monotone and
/// the global greedy composition has no monotonicity guarantee.
pub fn is_truthful_allocator(allocator: &Allocator) -> bool {
    match allocator {
        Allocator::Iterative(o) | Allocator::Gap(o) | Allocator::Online(o) => {
            o.is_loser_independent()
        }
        Allocator::Global(_) => false,
    }
}

fn ensure_allowed(allocator: &Allocator) -> Result<(), Error> {
    if is_truthful_allocator(allocator) {
        Ok(())
    } else {
        Err(Error::DisallowedAllocator {
            allocator: alloc::format!("{allocator}"),
        })
    }
}

/// Whether `agent` wins when reporting `value`, all else fixed.
pub fn wins_at(
    inst: &Instance,
    allocator: &Allocator,
    agent: AgentId,
    value: &Rational,
) -> Result<bool, Error> {
    let probe = inst.with_bid(inst.bids[agent].with_value(value.clone()));
    Ok(allocator.allocate(&probe)?.contains(agent))
}

/// Infimum of the values at which `agent` is still selected.
pub fn critical_value(
    inst: &Instance,
    allocator: &Allocator,
    agent: AgentId,
    cfg: &PaymentConfig,
) -> Result<Rational, Error> {
    ensure_allowed(allocator)?;
    if agent >= inst.num_agents() {
        return Err(Error::UnknownAgent { agent });
    }
    let reported = inst.bids[agent].value.clone();
    if !wins_at(inst, allocator, agent, &reported)? {
        return Err(Error::Loser { agent });
    }
    match &cfg.mode {
        PaymentMode::Bisection { delta } => bisect(inst, allocator, agent, reported, delta),
        PaymentMode::Breakpoint => breakpoint(inst, allocator, agent, reported),
    }
}

fn bisect(
    inst: &Instance,
    allocator: &Allocator,
    agent: AgentId,
    reported: Rational,
    delta: &Rational,
) -> Result<Rational, Error> {
    let mut lo = Rational::zero();
    if wins_at(inst, allocator, agent, &lo)? {
        return Ok(lo);
    }
    let mut hi = reported;
    let two = Rational::from_integer(2.into());
    while &hi - &lo >= *delta {
        let mid = (&lo + &hi) / &two;
        if wins_at(inst, allocator, agent, &mid)? {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(hi)
}

fn breakpoint(
    inst: &Instance,
    allocator: &Allocator,
    agent: AgentId,
    reported: Rational,
) -> Result<Rational, Error> {
    if *allocator.oracle() != OracleKind::MaxValue {
        return Err(Error::BreakpointUnsupported);
    }
    // Between consecutive rival values every comparison the allocator makes
    // has a fixed outcome, so the threshold is one of these candidates.
    let mut candidates: Vec<Rational> = inst
        .bids
        .iter()
        .filter(|b| b.agent != agent && b.value < reported)
        .map(|b| b.value.clone())
        .collect();
    candidates.push(Rational::zero());
    candidates.sort();
    candidates.dedup();
    let two = Rational::from_integer(2.into());
    for (i, c) in candidates.iter().enumerate() {
        if wins_at(inst, allocator, agent, c)? {
            return Ok(c.clone());
        }
        let next = candidates.get(i + 1).unwrap_or(&reported);
        let inside = (c + next) / &two;
        if wins_at(inst, allocator, agent, &inside)? {
            return Ok(c.clone());
        }
    }
    Ok(reported)
}

/// Allocation plus critical-value payments for every winner.
pub fn run_mechanism(
    inst: &Instance,
    allocator: &Allocator,
    cfg: &PaymentConfig,
) -> Result<Outcome, Error> {
    ensure_allowed(allocator)?;
    let assignment = allocator.allocate(inst)?;
    let payments = (0..inst.num_agents())
        .map(|agent| {
            if assignment.contains(agent) {
                critical_value(inst, allocator, agent, cfg)
            } else {
                Ok(Rational::zero())
            }
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Outcome {
        assignment,
        payments,
    })
}

/// Result of replaying a winner just above and just below its payment.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ThresholdCheck {
    pub agent: AgentId,
    pub payment: Rational,
    pub wins_above: bool,
    /// `None` when the payment is zero and there is nothing below to test.
    pub loses_below: Option<bool>,
}

impl ThresholdCheck {
    pub fn confirmed(&self) -> bool {
        self.wins_above && self.loses_below != Some(false)
    }
}

/// Replays every winner at `payment + delta` (must win) and
/// `payment - delta` (must lose, when that is nonnegative).
pub fn confirm_thresholds(
    inst: &Instance,
    allocator: &Allocator,
    outcome: &Outcome,
    delta: &Rational,
) -> Result<Vec<ThresholdCheck>, Error> {
    let mut checks = Vec::new();
    for agent in outcome.assignment.selected() {
        let payment = outcome.payments[agent].clone();
        let wins_above = wins_at(inst, allocator, agent, &(&payment + delta))?;
        let below = &payment - delta;
        let loses_below = if below >= Rational::zero() {
            Some(!wins_at(inst, allocator, agent, &below)?)
        } else if payment > Rational::zero() {
            Some(!wins_at(inst, allocator, agent, &Rational::zero())?)
        } else {
            None
        };
        checks.push(ThresholdCheck {
            agent,
            payment,
            wins_above,
            loses_below,
        });
    }
    Ok(checks)
}

/// Multipliers applied to an agent's true value in the truthfulness grid.
pub fn misreport_multipliers() -> Vec<Rational> {
    [(0, 1), (1, 4), (1, 2), (3, 4), (1, 1), (5, 4), (2, 1)]
        .iter()
        .map(|&(p, q)| rat(p, q))
        .collect()
}

/// A misreport that beat truthful reporting.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProfitableMisreport {
    pub agent: AgentId,
    pub reported: crate::model::Bid,
    pub truthful_utility: Rational,
    pub misreport_utility: Rational,
}

/// Compares each agent's truthful utility with its utility under every
/// value misreport on the grid and, for online instances, every later
/// arrival or earlier departure (never earlier arrival or later departure).
/// Returns every profitable misreport found, plus the number of replays.
pub fn truthfulness_spot_check(
    inst: &Instance,
    allocator: &Allocator,
    cfg: &PaymentConfig,
) -> Result<(Vec<ProfitableMisreport>, usize), Error> {
    let truthful = run_mechanism(inst, allocator, cfg)?;
    let mut found = Vec::new();
    let mut trials = 0;
    // bisection payments are upper thresholds within delta
    let slack = cfg.delta().cloned().unwrap_or_else(Rational::zero);
    for bid in &inst.bids {
        let agent = bid.agent;
        let true_value = &bid.value;
        let honest = truthful.utility(agent, true_value);
        let mut reports = Vec::new();
        for m in misreport_multipliers() {
            reports.push(bid.with_value(true_value * &m));
        }
        if let (Some(a), Some(d)) = (bid.arrival, bid.departure) {
            let mut lies = Vec::new();
            for later in a..=d {
                for earlier in later..=d {
                    if (later, earlier) != (a, d) {
                        let mut lie = bid.clone();
                        lie.arrival = Some(later);
                        lie.departure = Some(earlier);
                        lies.push(lie);
                    }
                }
            }
            for lie in lies {
                for m in [Rational::one(), rat(1, 2), rat(2, 1)] {
                    reports.push(lie.with_value(true_value * &m));
                }
            }
        }
        for report in reports {
            trials += 1;
            let lied = inst.with_bid(report.clone());
            let out = run_mechanism(&lied, allocator, cfg)?;
            // a narrowed window is a subwindow, so any slot won lies in the true one
            let utility = out.utility(agent, true_value);
            if utility > &honest + &slack {
                found.push(ProfitableMisreport {
                    agent,
                    reported: report,
                    truthful_utility: honest.clone(),
                    misreport_utility: utility,
                });
            }
        }
    }
    Ok((found, trials))
}
