//! Online packing over time-aligned bins (one bin per slot).
//!
//! Bids become visible at their reported arrival. At each slot the oracle sees
//! exactly the bids that have arrived, have not departed and have not been
//! placed yet; its choice is final.

use alloc::collections::BTreeSet;
use alloc::vec::Vec;

use num_traits::One;

use crate::model::{AgentId, Assignment, Bid, BinId, BinSpec, Instance, Slot};
use crate::oracles::{FptasConfig, Item, OracleKind};
use crate::Error;

/// What happened at one slot.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SlotEvent {
    pub bin: BinId,
    pub slot: Slot,
    /// Arrived, not departed, not yet placed.
    pub present: BTreeSet<AgentId>,
    pub chosen: BTreeSet<AgentId>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OnlineRun {
    pub assignment: Assignment,
    pub trace: Vec<SlotEvent>,
}

/// Incremental driver: bids are handed over as they arrive and slots are
/// closed one at a time, so nothing can depend on a bid before it is pushed.
#[derive(Debug, Clone)]
pub struct OnlineAllocator<'a> {
    oracle: &'a OracleKind,
    known: Vec<Bid>,
    placed: BTreeSet<AgentId>,
    last_slot: Option<Slot>,
}

impl<'a> OnlineAllocator<'a> {
    pub fn new(oracle: &'a OracleKind) -> Self {
        OnlineAllocator {
            oracle,
            known: Vec::new(),
            placed: BTreeSet::new(),
            last_slot: None,
        }
    }

    /// Makes a bid visible.
    pub fn arrive(&mut self, bid: Bid) {
        self.known.push(bid);
        self.known.sort_by_key(|b| b.agent);
    }

    /// Runs the oracle for `bin` over the currently present bids and commits
    /// its choice. Slots must be processed in increasing order.
    pub fn close_slot(&mut self, bin: &BinSpec) -> SlotEvent {
        let slot = bin.slot.expect("online bins carry slots");
        debug_assert!(self.last_slot.is_none_or(|s| s < slot));
        self.last_slot = Some(slot);
        let items: Vec<Item> = self
            .known
            .iter()
            .filter(|b| !self.placed.contains(&b.agent) && b.present_at(slot))
            .map(|b| Item::from_bid(b, bin.id))
            .collect();
        let present = items.iter().map(|it| it.agent).collect();
        let chosen = self.oracle.run(&items, &bin.capacity).selected;
        self.placed.extend(chosen.iter().copied());
        SlotEvent {
            bin: bin.id,
            slot,
            present,
            chosen,
        }
    }
}

/// Processes the slots in time order, releasing each bid to the allocator
/// only once the current slot reaches its arrival.
pub fn simulate_online(inst: &Instance, oracle: &OracleKind) -> Result<OnlineRun, Error> {
    if !inst.online {
        return Err(Error::NotOnline);
    }
    let mut pending: Vec<&Bid> = inst.bids.iter().collect();
    // simultaneous arrivals by agent index
    pending.sort_by_key(|b| (b.arrival, b.agent));
    let mut pending = pending.into_iter().peekable();

    let mut allocator = OnlineAllocator::new(oracle);
    let mut assignment = Assignment::empty(inst.num_bins());
    let mut trace = Vec::with_capacity(inst.num_bins());
    for bin in &inst.bins {
        let slot = bin.slot.ok_or(Error::NotOnline)?;
        while let Some(bid) = pending.next_if(|b| b.arrival.is_none_or(|a| a <= slot)) {
            allocator.arrive(bid.clone());
        }
        let event = allocator.close_slot(bin);
        assignment.per_bin[bin.id] = event.chosen.clone();
        trace.push(event);
    }
    Ok(OnlineRun { assignment, trace })
}

fn require_unit(inst: &Instance) -> Result<(), Error> {
    let one = crate::rational::Rational::one();
    if let Some(bin) = inst.bins.iter().find(|b| b.capacity != one) {
        return Err(Error::NonUnitInstance {
            what: "bin",
            id: bin.id,
        });
    }
    for bid in &inst.bids {
        let unit = match &bid.size_vector {
            Some(sizes) => sizes.iter().all(|s| *s == one),
            None => bid.size == one,
        };
        if !unit {
            return Err(Error::NonUnitInstance {
                what: "agent",
                id: bid.agent,
            });
        }
    }
    Ok(())
}

/// Unit slots, unit items: the most valuable present bid wins each slot.
pub fn dynamic_auction(inst: &Instance) -> Result<Assignment, Error> {
    require_unit(inst)?;
    Ok(simulate_online(inst, &OracleKind::MaxValue)?.assignment)
}

/// Slots with capacities and sized bids, each slot packed by the FPTAS.
pub fn dynamic_multi_auction(inst: &Instance, eps: &FptasConfig) -> Result<Assignment, Error> {
    Ok(simulate_online(inst, &OracleKind::Fptas(eps.clone()))?.assignment)
}
