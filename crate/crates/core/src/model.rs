//! Bids, bins, instances and assignments.

use alloc::collections::BTreeSet;
use alloc::vec;
use alloc::vec::Vec;

use num_traits::{Signed, Zero};

use crate::rational::{sum, Rational};

/// Dense agent index; declaration order in the instance, also the tie-break order.
pub type AgentId = usize;
/// Dense bin index; declaration order is the packing order.
pub type BinId = usize;
/// Discrete time slot.
pub type Slot = u32;

/// A single-minded agent's declaration.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Bid {
    pub agent: AgentId,
    pub value: Rational,
    pub size: Rational,
    /// Per-bin sizes (generalized assignment); supersedes `size` when present.
    pub size_vector: Option<Vec<Rational>>,
    pub arrival: Option<Slot>,
    pub departure: Option<Slot>,
}

impl Bid {
    pub fn new(agent: AgentId, value: Rational, size: Rational) -> Self {
        Bid {
            agent,
            value,
            size,
            size_vector: None,
            arrival: None,
            departure: None,
        }
    }

    pub fn with_sizes(mut self, sizes: Vec<Rational>) -> Self {
        self.size_vector = Some(sizes);
        self
    }

    pub fn with_window(mut self, arrival: Slot, departure: Slot) -> Self {
        self.arrival = Some(arrival);
        self.departure = Some(departure);
        self
    }

    /// Size this bid occupies in `bin`.
    pub fn size_in(&self, bin: BinId) -> &Rational {
        match &self.size_vector {
            Some(sizes) => &sizes[bin],
            None => &self.size,
        }
    }

    /// Whether the bid's time window covers `slot`. Bids without a window
    /// are present everywhere.
    pub fn present_at(&self, slot: Slot) -> bool {
        self.arrival.is_none_or(|a| a <= slot) && self.departure.is_none_or(|d| slot <= d)
    }

    pub fn with_value(&self, value: Rational) -> Self {
        Bid {
            value,
            ..self.clone()
        }
    }
}

/// Whether `new` is an improvement of `old`: no larger size (componentwise for
/// size vectors), no smaller value, and no narrower time window.
pub fn improves(old: &Bid, new: &Bid) -> bool {
    if old.agent != new.agent || new.value < old.value || new.size > old.size {
        return false;
    }
    let sizes_ok = match (&old.size_vector, &new.size_vector) {
        (None, None) => true,
        (Some(a), Some(b)) => a.len() == b.len() && a.iter().zip(b).all(|(x, y)| y <= x),
        _ => false,
    };
    let arrival_ok = match (old.arrival, new.arrival) {
        (None, None) => true,
        (Some(a), Some(b)) => b <= a,
        _ => false,
    };
    let departure_ok = match (old.departure, new.departure) {
        (None, None) => true,
        (Some(d), Some(e)) => e >= d,
        _ => false,
    };
    sizes_ok && arrival_ok && departure_ok
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BinSpec {
    pub id: BinId,
    pub capacity: Rational,
    pub slot: Option<Slot>,
}

impl BinSpec {
    pub fn new(id: BinId, capacity: Rational) -> Self {
        BinSpec {
            id,
            capacity,
            slot: None,
        }
    }

    pub fn at_slot(mut self, slot: Slot) -> Self {
        self.slot = Some(slot);
        self
    }
}

/// A violated instance invariant.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ModelError {
    #[error("agent at position {position} has id {found}; ids must be dense 0..n-1 in order")]
    AgentIdOrder { position: usize, found: AgentId },
    #[error("bin at position {position} has id {found}; ids must be dense 0..m-1 in order")]
    BinIdOrder { position: usize, found: BinId },
    #[error("agent {agent}: negative value")]
    NegativeValue { agent: AgentId },
    #[error("agent {agent}: nonpositive size")]
    NonPositiveSize { agent: AgentId },
    #[error("agent {agent}: nonpositive size for bin {bin}")]
    NonPositiveBinSize { agent: AgentId, bin: BinId },
    #[error("agent {agent}: size vector has {found} entries, expected {expected}")]
    SizeVectorLength {
        agent: AgentId,
        expected: usize,
        found: usize,
    },
    #[error("agent {agent}: arrival {arrival} after departure {departure}")]
    WindowInverted {
        agent: AgentId,
        arrival: Slot,
        departure: Slot,
    },
    #[error("agent {agent}: online instances need arrival and departure")]
    MissingWindow { agent: AgentId },
    #[error("bin {bin}: nonpositive capacity")]
    NonPositiveCapacity { bin: BinId },
    #[error("bin {bin}: online instances need a slot on every bin")]
    MissingSlot { bin: BinId },
    #[error("bin {bin}: slots must be strictly increasing")]
    SlotsNotIncreasing { bin: BinId },
    #[error("bin budget {budget} exceeds the {bins} bins")]
    BinBudget { budget: usize, bins: usize },
}

/// Agents plus bins. Agent and bin ids equal their positions.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Instance {
    pub bids: Vec<Bid>,
    pub bins: Vec<BinSpec>,
    /// At most this many bins may be used (global greedy only).
    pub bin_budget: Option<usize>,
    pub online: bool,
}

impl Instance {
    /// Offline instance from `(value, size)` pairs and bin capacities.
    pub fn offline(items: &[(Rational, Rational)], capacities: &[Rational]) -> Self {
        Instance {
            bids: items
                .iter()
                .enumerate()
                .map(|(i, (v, w))| Bid::new(i, v.clone(), w.clone()))
                .collect(),
            bins: capacities
                .iter()
                .enumerate()
                .map(|(j, c)| BinSpec::new(j, c.clone()))
                .collect(),
            bin_budget: None,
            online: false,
        }
    }

    pub fn num_agents(&self) -> usize {
        self.bids.len()
    }

    pub fn num_bins(&self) -> usize {
        self.bins.len()
    }

    /// Copy with agent `bid.agent`'s declaration replaced by `bid`.
    pub fn with_bid(&self, bid: Bid) -> Self {
        let mut next = self.clone();
        let agent = bid.agent;
        next.bids[agent] = bid;
        next
    }

    pub fn validate(self) -> Result<Self, ModelError> {
        let m = self.bins.len();
        for (position, bin) in self.bins.iter().enumerate() {
            if bin.id != position {
                return Err(ModelError::BinIdOrder {
                    position,
                    found: bin.id,
                });
            }
            if !bin.capacity.is_positive() {
                return Err(ModelError::NonPositiveCapacity { bin: bin.id });
            }
        }
        for (position, bid) in self.bids.iter().enumerate() {
            let agent = bid.agent;
            if agent != position {
                return Err(ModelError::AgentIdOrder {
                    position,
                    found: agent,
                });
            }
            if bid.value.is_negative() {
                return Err(ModelError::NegativeValue { agent });
            }
            if !bid.size.is_positive() {
                return Err(ModelError::NonPositiveSize { agent });
            }
            if let Some(sizes) = &bid.size_vector {
                if sizes.len() != m {
                    return Err(ModelError::SizeVectorLength {
                        agent,
                        expected: m,
                        found: sizes.len(),
                    });
                }
                if let Some(bin) = sizes.iter().position(|s| !s.is_positive()) {
                    return Err(ModelError::NonPositiveBinSize { agent, bin });
                }
            }
            if let (Some(arrival), Some(departure)) = (bid.arrival, bid.departure) {
                if arrival > departure {
                    return Err(ModelError::WindowInverted {
                        agent,
                        arrival,
                        departure,
                    });
                }
            }
            if self.online && (bid.arrival.is_none() || bid.departure.is_none()) {
                return Err(ModelError::MissingWindow { agent });
            }
        }
        if self.online {
            let mut last: Option<Slot> = None;
            for bin in &self.bins {
                let slot = bin.slot.ok_or(ModelError::MissingSlot { bin: bin.id })?;
                if last.is_some_and(|prev| slot <= prev) {
                    return Err(ModelError::SlotsNotIncreasing { bin: bin.id });
                }
                last = Some(slot);
            }
        }
        if let Some(budget) = self.bin_budget {
            if budget > m {
                return Err(ModelError::BinBudget { budget, bins: m });
            }
        }
        Ok(self)
    }
}

/// Returns the instance iff every invariant holds, else the first violation.
pub fn validate_instance(inst: Instance) -> Result<Instance, ModelError> {
    inst.validate()
}

/// Disjoint per-bin agent sets.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Assignment {
    pub per_bin: Vec<BTreeSet<AgentId>>,
}

impl Assignment {
    pub fn empty(bins: usize) -> Self {
        Assignment {
            per_bin: vec![BTreeSet::new(); bins],
        }
    }

    pub fn selected(&self) -> BTreeSet<AgentId> {
        self.per_bin.iter().flatten().copied().collect()
    }

    pub fn bin_of(&self, agent: AgentId) -> Option<BinId> {
        self.per_bin.iter().position(|set| set.contains(&agent))
    }

    pub fn contains(&self, agent: AgentId) -> bool {
        self.bin_of(agent).is_some()
    }

    pub fn value(&self, inst: &Instance) -> Rational {
        assignment_value(self, inst)
    }

    /// Disjoint sets, known agents, and every bin within capacity.
    pub fn is_feasible(&self, inst: &Instance) -> bool {
        if self.per_bin.len() != inst.bins.len() {
            return false;
        }
        let mut seen = BTreeSet::new();
        for (bin, set) in self.per_bin.iter().enumerate() {
            let mut load = Rational::zero();
            for &agent in set {
                if agent >= inst.bids.len() || !seen.insert(agent) {
                    return false;
                }
                load += inst.bids[agent].size_in(bin);
            }
            if load > inst.bins[bin].capacity {
                return false;
            }
        }
        true
    }
}

/// Total declared value of the selected agents.
pub fn assignment_value(a: &Assignment, inst: &Instance) -> Rational {
    sum(a.per_bin.iter().flatten().map(|&i| &inst.bids[i].value))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat};

    fn two_bin_six_items() -> Instance {
        Instance::offline(
            &[
                (rat(11, 10), rat(1, 2)),
                (rat(11, 10), rat(1, 2)),
                (rat(3, 2), rat(3, 4)),
                (rat(1, 2), rat(1, 4)),
                (rat(19, 10), int(1)),
                (rat(19, 10), int(1)),
            ],
            &[int(1), int(1)],
        )
    }

    #[test]
    fn accepts_well_formed() {
        assert!(two_bin_six_items().validate().is_ok());
    }

    #[test]
    fn rejects_zero_size() {
        let mut inst = two_bin_six_items();
        inst.bids[2].size = int(0);
        let err = inst.validate().unwrap_err();
        assert_eq!(err, ModelError::NonPositiveSize { agent: 2 });
        assert!(alloc::format!("{err}").contains("nonpositive size"));
    }

    #[test]
    fn rejects_inverted_window() {
        let mut inst = Instance::offline(&[(int(1), int(1))], &[int(1)]);
        inst.online = true;
        inst.bins[0].slot = Some(1);
        inst.bids[0] = inst.bids[0].clone().with_window(3, 1);
        assert!(matches!(
            inst.validate(),
            Err(ModelError::WindowInverted { agent: 0, .. })
        ));
    }

    #[test]
    fn rejects_online_without_slots_or_windows() {
        let mut inst = Instance::offline(&[(int(1), int(1))], &[int(1), int(1)]);
        inst.online = true;
        assert_eq!(
            inst.clone().validate(),
            Err(ModelError::MissingWindow { agent: 0 })
        );
        inst.bids[0] = inst.bids[0].clone().with_window(1, 2);
        assert_eq!(
            inst.clone().validate(),
            Err(ModelError::MissingSlot { bin: 0 })
        );
        inst.bins[0].slot = Some(2);
        inst.bins[1].slot = Some(2);
        assert_eq!(
            inst.validate(),
            Err(ModelError::SlotsNotIncreasing { bin: 1 })
        );
    }

    #[test]
    fn rejects_budget_and_size_vector_problems() {
        let mut inst = two_bin_six_items();
        inst.bin_budget = Some(3);
        assert_eq!(
            inst.clone().validate(),
            Err(ModelError::BinBudget { budget: 3, bins: 2 })
        );
        inst.bin_budget = Some(2);
        inst.bids[0].size_vector = Some(vec![int(1)]);
        assert!(matches!(
            inst.clone().validate(),
            Err(ModelError::SizeVectorLength { agent: 0, .. })
        ));
        inst.bids[0].size_vector = Some(vec![int(1), int(0)]);
        assert_eq!(
            inst.validate(),
            Err(ModelError::NonPositiveBinSize { agent: 0, bin: 1 })
        );
    }

    #[test]
    fn values_of_sample_pairs() {
        let inst = two_bin_six_items();
        let mut a = Assignment::empty(2);
        assert_eq!(a.value(&inst), int(0));
        a.per_bin[0] = [0, 1].into();
        assert_eq!(a.value(&inst), rat(22, 10));
        a.per_bin[0].clear();
        a.per_bin[1] = [2, 3].into();
        assert_eq!(a.value(&inst), int(2));
        assert!(a.is_feasible(&inst));
        a.per_bin[1].insert(4);
        assert!(!a.is_feasible(&inst));
    }

    #[test]
    fn improvement_order() {
        let old = Bid::new(3, rat(1, 2), rat(1, 4));
        let raised = Bid::new(3, rat(6, 10), rat(1, 4));
        assert!(improves(&old, &raised));
        assert!(improves(&old, &old));
        assert!(!improves(&raised, &old));
        let wider = old.clone().with_window(1, 3);
        assert!(improves(&wider, &old.clone().with_window(0, 3)));
        assert!(!improves(&wider, &old.clone().with_window(2, 3)));
        assert!(!improves(&wider, &old.clone().with_window(1, 2)));
        let gap = old.clone().with_sizes(vec![rat(1, 2), int(1)]);
        assert!(improves(&gap, &old.clone().with_sizes(vec![rat(1, 2), rat(1, 2)])));
        assert!(!improves(&gap, &old.with_sizes(vec![int(1), rat(1, 2)])));
    }
}
