//! Seed-addressed random instances over small rational grids.
//!
//! The same `(kind, seed, count, limits)` always yields the same corpus.

use alloc::vec::Vec;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::model::{Bid, BinSpec, Instance, Slot};
use crate::rational::{int, rat, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CorpusKind {
    /// One bin.
    Knapsack,
    /// Several bins with assorted capacities.
    MultiKnapsack,
    /// Several bins of one common capacity.
    IdenticalBins,
    /// Several bins, per-bin size vectors.
    Gap,
    /// Unit slots and unit items with time windows.
    OnlineUnit,
    /// Slots with capacities and sized items with time windows.
    OnlineMulti,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CorpusSpec {
    pub kind: CorpusKind,
    pub seed: u64,
    pub count: usize,
    pub max_agents: usize,
    pub max_bins: usize,
}

impl CorpusSpec {
    pub fn new(kind: CorpusKind, seed: u64, count: usize) -> Self {
        let (max_agents, max_bins) = match kind {
            CorpusKind::Knapsack => (12, 1),
            CorpusKind::MultiKnapsack | CorpusKind::IdenticalBins | CorpusKind::Gap => (10, 3),
            CorpusKind::OnlineUnit | CorpusKind::OnlineMulti => (8, 8),
        };
        CorpusSpec {
            kind,
            seed,
            count,
            max_agents,
            max_bins,
        }
    }

    pub fn with_limits(mut self, max_agents: usize, max_bins: usize) -> Self {
        self.max_agents = max_agents;
        self.max_bins = max_bins;
        self
    }
}

const CAPACITIES: [(i64, i64); 3] = [(1, 1), (3, 2), (2, 1)];

// values in {0, 1/2, 1, ..., 10}; zero appears now and then
fn value(rng: &mut ChaCha8Rng) -> Rational {
    if rng.gen_ratio(1, 25) {
        int(0)
    } else {
        rat(rng.gen_range(1..=20), 2)
    }
}

// sizes in {1/8, ..., 12/8}, occasionally larger than a unit bin
fn size(rng: &mut ChaCha8Rng) -> Rational {
    rat(rng.gen_range(1..=12), 8)
}

fn capacity(rng: &mut ChaCha8Rng) -> Rational {
    let (p, q) = CAPACITIES[rng.gen_range(0..CAPACITIES.len())];
    rat(p, q)
}

fn offline(spec: &CorpusSpec, rng: &mut ChaCha8Rng) -> Instance {
    let n = rng.gen_range(1..=spec.max_agents.max(1));
    let m = match spec.kind {
        CorpusKind::Knapsack => 1,
        _ => rng.gen_range(1..=spec.max_bins.max(1)),
    };
    let bins: Vec<BinSpec> = match spec.kind {
        CorpusKind::IdenticalBins => {
            let c = capacity(rng);
            (0..m).map(|j| BinSpec::new(j, c.clone())).collect()
        }
        _ => (0..m).map(|j| BinSpec::new(j, capacity(rng))).collect(),
    };
    let bids = (0..n)
        .map(|i| {
            let mut bid = Bid::new(i, value(rng), size(rng));
            if spec.kind == CorpusKind::Gap {
                bid.size_vector = Some((0..m).map(|_| size(rng)).collect());
            }
            bid
        })
        .collect();
    Instance {
        bids,
        bins,
        bin_budget: None,
        online: false,
    }
}

fn online(spec: &CorpusSpec, rng: &mut ChaCha8Rng) -> Instance {
    let slots = rng.gen_range(1..=spec.max_bins.max(1)) as Slot;
    let n = rng.gen_range(1..=spec.max_agents.max(1));
    let unit = spec.kind == CorpusKind::OnlineUnit;
    let bins = (0..slots)
        .map(|j| {
            let cap = if unit { int(1) } else { capacity(rng) };
            BinSpec::new(j as usize, cap).at_slot(j + 1)
        })
        .collect();
    let bids = (0..n)
        .map(|i| {
            let a = rng.gen_range(1..=slots);
            let d = rng.gen_range(a..=slots);
            let w = if unit { int(1) } else { size(rng) };
            Bid::new(i, value(rng), w).with_window(a, d)
        })
        .collect();
    Instance {
        bids,
        bins,
        bin_budget: None,
        online: true,
    }
}

/// Generates the corpus described by `spec`. Every instance validates.
pub fn generate(spec: &CorpusSpec) -> Vec<Instance> {
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    (0..spec.count)
        .map(|_| match spec.kind {
            CorpusKind::OnlineUnit | CorpusKind::OnlineMulti => online(spec, &mut rng),
            _ => offline(spec, &mut rng),
        })
        .collect()
}
