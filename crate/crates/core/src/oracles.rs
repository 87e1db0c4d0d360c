//! Single-bin allocation oracles.
//!
//! Every oracle receives the bids still in play (projected onto one bin as
//! [`Item`]s) and that bin's capacity, and returns the subset packed into the
//! bin. Ties always fall to the lower agent index, so each oracle is a
//! deterministic function of its input.

use alloc::collections::BTreeSet;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;
use core::ops::{Add, Sub};
use core::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::model::{AgentId, Bid, BinId};
use crate::rational::{
    ceil_log2, cmp_cross, floor_int, floor_log2, format_rational, int, integerize, parse_rational,
    pow2, sum, Rational,
};

/// A bid as seen by one bin: its value and the size it occupies there.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Item {
    pub agent: AgentId,
    pub value: Rational,
    pub size: Rational,
}

impl Item {
    pub fn new(agent: AgentId, value: Rational, size: Rational) -> Self {
        Item { agent, value, size }
    }

    pub fn from_bid(bid: &Bid, bin: BinId) -> Self {
        Item::new(bid.agent, bid.value.clone(), bid.size_in(bin).clone())
    }
}

/// Output of one oracle call.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleResult {
    pub selected: BTreeSet<AgentId>,
    /// The value the oracle compared on. For `half_greedy` this can be the
    /// fractional half-bin bound, which never exceeds the true value.
    pub reported_value: Rational,
}

impl OracleResult {
    fn empty() -> Self {
        OracleResult {
            selected: BTreeSet::new(),
            reported_value: Rational::zero(),
        }
    }

    /// True value of the selection with respect to `items`.
    pub fn value_in(&self, items: &[Item]) -> Rational {
        sum(items
            .iter()
            .filter(|it| self.selected.contains(&it.agent))
            .map(|it| &it.value))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("fptas epsilon must lie strictly between 0 and 1")]
pub struct EpsilonOutOfRange;

/// Accuracy parameter of [`monotone_fptas`], `0 < epsilon < 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FptasConfig {
    epsilon: Rational,
}

impl FptasConfig {
    pub fn new(epsilon: Rational) -> Result<Self, EpsilonOutOfRange> {
        if epsilon.is_positive() && epsilon < Rational::one() {
            Ok(FptasConfig { epsilon })
        } else {
            Err(EpsilonOutOfRange)
        }
    }

    pub fn epsilon(&self) -> &Rational {
        &self.epsilon
    }
}

// Value-descending, lowest agent first on ties.
fn by_value(a: &&Item, b: &&Item) -> Ordering {
    b.value.cmp(&a.value).then(a.agent.cmp(&b.agent))
}

// Density-descending, lowest agent first on ties.
fn by_density(a: &&Item, b: &&Item) -> Ordering {
    cmp_cross(&b.value, &b.size, &a.value, &a.size).then(a.agent.cmp(&b.agent))
}

fn greedy_fill(order: &[&Item], capacity: &Rational) -> (BTreeSet<AgentId>, Rational) {
    let mut load = Rational::zero();
    let mut value = Rational::zero();
    let mut chosen = BTreeSet::new();
    for item in order {
        let next = &load + &item.size;
        if next <= *capacity {
            load = next;
            value += &item.value;
            chosen.insert(item.agent);
        }
    }
    (chosen, value)
}

/// Better of the value-greedy and density-greedy fills; the value-greedy set
/// wins exact ties.
pub fn max_greedy(items: &[Item], capacity: &Rational) -> OracleResult {
    let mut order: Vec<&Item> = items.iter().collect();
    order.sort_by(by_value);
    let (s1, v1) = greedy_fill(&order, capacity);
    order.sort_by(by_density);
    let (s2, v2) = greedy_fill(&order, capacity);
    if v1 >= v2 {
        OracleResult {
            selected: s1,
            reported_value: v1,
        }
    } else {
        OracleResult {
            selected: s2,
            reported_value: v2,
        }
    }
}

/// Max-value singleton against a density-greedy fill of the first half of the
/// bin, the latter credited with the exact half-bin fractional value.
///
/// Items larger than the bin are ignored; only items of size at most half
/// the capacity take part in the greedy fill, which stops as soon as its
/// load reaches half the capacity and is returned whole when it wins.
pub fn half_greedy(items: &[Item], capacity: &Rational) -> OracleResult {
    let fitting: Vec<&Item> = items.iter().filter(|it| it.size <= *capacity).collect();
    let Some(top) = fitting.iter().copied().min_by(by_value) else {
        return OracleResult::empty();
    };
    let v1 = top.value.clone();

    let half = capacity / int(2);
    let mut small: Vec<&Item> = fitting
        .iter()
        .copied()
        .filter(|it| it.size <= half)
        .collect();
    small.sort_by(by_density);

    let mut s2 = BTreeSet::new();
    let mut load = Rational::zero();
    let mut v2 = Rational::zero();
    for item in small {
        if load >= half {
            break;
        }
        let room = &half - &load;
        v2 += if item.size <= room {
            item.value.clone()
        } else {
            &item.value * &room / &item.size
        };
        load += &item.size;
        s2.insert(item.agent);
    }

    if v1 >= v2 {
        OracleResult {
            selected: BTreeSet::from([top.agent]),
            reported_value: v1,
        }
    } else {
        OracleResult {
            selected: s2,
            reported_value: v2,
        }
    }
}

/// Exact 0/1 knapsack over nonnegative integer values, returned as positions
/// into the input.
///
/// Dynamic program over total value keeping the minimum size per achievable
/// value. Among all optimal subsets it returns the one that avoids the
/// highest positions, i.e. the smallest subset when subsets are read as binary
/// numbers with position `i` as bit `i`. That order does not depend on the
/// values or sizes, which is what keeps the FPTAS loser-independent.
pub fn pseudo_pack(values: &[usize], sizes: &[Rational], capacity: &Rational) -> BTreeSet<usize> {
    assert_eq!(values.len(), sizes.len());
    let mut refs: Vec<&Rational> = sizes.iter().collect();
    refs.push(capacity);
    match integerize(&refs) {
        Some(mut ints) => {
            let cap = ints.pop().expect("capacity present");
            min_weight_pack(values, &ints, &cap)
        }
        None => {
            // Huge denominators: fall back to exact big-integer weights.
            let den = crate::rational::common_denominator(refs.iter().copied());
            let scale = |r: &Rational| -> BigInt { r.numer() * (&den / r.denom()) };
            let ints: Vec<BigInt> = sizes.iter().map(scale).collect();
            min_weight_pack(values, &ints, &scale(capacity))
        }
    }
}

fn min_weight_pack<W>(values: &[usize], sizes: &[W], capacity: &W) -> BTreeSet<usize>
where
    W: Clone + Ord + Zero,
    for<'a> &'a W: Add<&'a W, Output = W> + Sub<&'a W, Output = W>,
{
    let n = values.len();
    let total: usize = values.iter().sum();
    // table[j][p]: least size reaching value exactly p with positions < j
    let mut table: Vec<Vec<Option<W>>> = Vec::with_capacity(n + 1);
    let mut row: Vec<Option<W>> = vec![None; total + 1];
    row[0] = Some(W::zero());
    table.push(row);
    for j in 0..n {
        let prev = &table[j];
        let mut next = prev.clone();
        if sizes[j] <= *capacity {
            let v = values[j];
            for p in v..=total {
                if let Some(base) = &prev[p - v] {
                    let cand = base + &sizes[j];
                    if cand <= *capacity && next[p].as_ref().is_none_or(|cur| cand < *cur) {
                        next[p] = Some(cand);
                    }
                }
            }
        }
        table.push(next);
    }

    let fits = |j: usize, p: usize, room: &W| table[j][p].as_ref().is_some_and(|w| w <= room);
    let Some(mut target) = (0..=total).rev().find(|&p| fits(n, p, capacity)) else {
        return BTreeSet::new();
    };
    let mut room = capacity.clone();
    let mut chosen = BTreeSet::new();
    for j in (0..n).rev() {
        if fits(j, target, &room) {
            continue;
        }
        chosen.insert(j);
        target -= values[j];
        room = &room - &sizes[j];
    }
    debug_assert_eq!(target, 0);
    chosen
}

/// Truncated and scaled values for one scaling index `k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Scaled {
    /// `alpha_k = n / (eps * 2^k)`.
    pub alpha: Rational,
    /// `floor(alpha_k * min(v, 2^k))`.
    pub scaled: Vec<usize>,
    /// `scaled / alpha_k`.
    pub descaled: Vec<Rational>,
}

/// Truncates each value at `2^k`, scales by `alpha_k = n / (eps 2^k)` and floors.
pub fn scale_k(values: &[Rational], k: i64, eps: &Rational) -> Scaled {
    let n = values.len() as i64;
    let cap = pow2(k);
    let alpha = int(n) / (eps * &cap);
    let mut scaled = Vec::with_capacity(values.len());
    let mut descaled = Vec::with_capacity(values.len());
    for v in values {
        let truncated = if *v < cap { v } else { &cap };
        let s = floor_int(&(&alpha * truncated));
        descaled.push(Rational::from_integer(s.clone()) / &alpha);
        scaled.push(
            s.to_usize()
                .expect("scaled value exceeds the addressable table size"),
        );
    }
    Scaled {
        alpha,
        scaled,
        descaled,
    }
}

/// Inclusive range of scaling indices, highest first:
/// `ceil(log2(nV/eps))` down to `floor(log2(V (1-eps) / n)) - 1`.
pub fn fptas_k_range(n: usize, max_value: &Rational, eps: &Rational) -> (i64, i64) {
    let n = int(n as i64);
    let top = ceil_log2(&(&n * max_value / eps));
    let bottom = floor_log2(&(max_value * (Rational::one() - eps) / &n)) - 1;
    (top, bottom)
}

/// Monotone FPTAS: run every scaling index from the top of the range down,
/// solve each scaled instance exactly and keep the first strictly best
/// de-scaled value.
///
/// `n` counts every item passed in; the range is anchored on the largest
/// value among items that fit the bin.
pub fn monotone_fptas(items: &[Item], capacity: &Rational, cfg: &FptasConfig) -> OracleResult {
    let Some(max_value) = items
        .iter()
        .filter(|it| it.size <= *capacity)
        .map(|it| &it.value)
        .max()
        .filter(|v| v.is_positive())
        .cloned()
    else {
        return OracleResult::empty();
    };
    let eps = cfg.epsilon();
    let values: Vec<Rational> = items.iter().map(|it| it.value.clone()).collect();
    let sizes: Vec<Rational> = items.iter().map(|it| it.size.clone()).collect();
    let (top, bottom) = fptas_k_range(items.len(), &max_value, eps);

    let mut best = Rational::zero();
    let mut best_set = BTreeSet::new();
    for k in (bottom..=top).rev() {
        let scaled = scale_k(&values, k, eps);
        let picked = pseudo_pack(&scaled.scaled, &sizes, capacity);
        let value = sum(picked.iter().map(|&p| &scaled.descaled[p]));
        if value > best {
            best = value;
            best_set = picked;
        }
    }
    OracleResult {
        selected: best_set.into_iter().map(|p| items[p].agent).collect(),
        reported_value: best,
    }
}

/// The single most valuable item that fits, lowest agent on ties.
pub fn max_value_oracle(items: &[Item], capacity: &Rational) -> OracleResult {
    match items
        .iter()
        .filter(|it| it.size <= *capacity)
        .min_by(by_value)
    {
        Some(top) => OracleResult {
            selected: BTreeSet::from([top.agent]),
            reported_value: top.value.clone(),
        },
        None => OracleResult::empty(),
    }
}

/// Exact optimum by exhaustive branch and bound; reference oracle for small
/// inputs. Ties resolve with the same subset order as [`pseudo_pack`].
pub fn exact_knapsack(items: &[Item], capacity: &Rational) -> OracleResult {
    struct Search<'a> {
        items: &'a [Item],
        suffix: Vec<Rational>,
        capacity: &'a Rational,
        taken: Vec<bool>,
        best_value: Rational,
        best: Vec<bool>,
    }

    // Lower in the subset order: the highest differing position is absent.
    fn precedes(a: &[bool], b: &[bool]) -> bool {
        for (x, y) in a.iter().zip(b).rev() {
            if x != y {
                return !x;
            }
        }
        false
    }

    impl Search<'_> {
        fn run(&mut self, at: usize, load: Rational, value: Rational) {
            if at == self.items.len() {
                if value > self.best_value
                    || (value == self.best_value && precedes(&self.taken, &self.best))
                {
                    self.best_value = value;
                    self.best.clone_from(&self.taken);
                }
                return;
            }
            if &value + &self.suffix[at] < self.best_value {
                return;
            }
            let item = &self.items[at];
            let next_load = &load + &item.size;
            if next_load <= *self.capacity {
                self.taken[at] = true;
                let next_value = &value + &item.value;
                self.run(at + 1, next_load, next_value);
                self.taken[at] = false;
            }
            self.run(at + 1, load, value);
        }
    }

    let mut suffix = vec![Rational::zero(); items.len() + 1];
    for i in (0..items.len()).rev() {
        suffix[i] = &suffix[i + 1] + &items[i].value;
    }
    let mut search = Search {
        items,
        suffix,
        capacity,
        taken: vec![false; items.len()],
        best_value: Rational::zero(),
        best: vec![false; items.len()],
    };
    search.run(0, Rational::zero(), Rational::zero());
    OracleResult {
        selected: search
            .best
            .iter()
            .enumerate()
            .filter(|(_, &t)| t)
            .map(|(i, _)| items[i].agent)
            .collect(),
        reported_value: search.best_value,
    }
}

/// Which single-bin oracle a packing uses.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum OracleKind {
    MaxGreedy,
    HalfGreedy,
    Fptas(FptasConfig),
    MaxValue,
    /// Exhaustive optimum; exponential, for small reference runs.
    Exact,
}

impl OracleKind {
    pub fn run(&self, items: &[Item], capacity: &Rational) -> OracleResult {
        match self {
            OracleKind::MaxGreedy => max_greedy(items, capacity),
            OracleKind::HalfGreedy => half_greedy(items, capacity),
            OracleKind::Fptas(cfg) => monotone_fptas(items, capacity, cfg),
            OracleKind::MaxValue => max_value_oracle(items, capacity),
            OracleKind::Exact => exact_knapsack(items, capacity),
        }
    }

    /// Whether the oracle is known to be both monotone and loser-independent,
    /// the condition under which its iterative composition stays monotone.
    pub fn is_loser_independent(&self) -> bool {
        !matches!(self, OracleKind::MaxGreedy)
    }

    /// Knapsack approximation factor `alpha` (value >= OPT / alpha), when the
    /// oracle has one.
    pub fn approximation_factor(&self) -> Option<Rational> {
        match self {
            OracleKind::MaxGreedy | OracleKind::HalfGreedy => Some(int(2)),
            OracleKind::Fptas(cfg) => Some(Rational::one() / (Rational::one() - cfg.epsilon())),
            OracleKind::Exact => Some(Rational::one()),
            OracleKind::MaxValue => None,
        }
    }
}

impl fmt::Display for OracleKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OracleKind::MaxGreedy => f.write_str("maxgreedy"),
            OracleKind::HalfGreedy => f.write_str("halfgreedy"),
            OracleKind::Fptas(cfg) => write!(f, "fptas:{}", format_rational(cfg.epsilon())),
            OracleKind::MaxValue => f.write_str("maxvalue"),
            OracleKind::Exact => f.write_str("exact"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ParseOracleError {
    #[error("unknown oracle {0:?} (expected maxgreedy, halfgreedy, fptas:EPS, maxvalue or exact)")]
    Unknown(alloc::string::String),
    #[error(transparent)]
    Epsilon(#[from] EpsilonOutOfRange),
    #[error(transparent)]
    Rational(#[from] crate::rational::ParseRationalError),
}

impl FromStr for OracleKind {
    type Err = ParseOracleError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "maxgreedy" => Ok(OracleKind::MaxGreedy),
            "halfgreedy" => Ok(OracleKind::HalfGreedy),
            "maxvalue" => Ok(OracleKind::MaxValue),
            "exact" => Ok(OracleKind::Exact),
            _ => match s.strip_prefix("fptas:") {
                Some(eps) => Ok(OracleKind::Fptas(FptasConfig::new(parse_rational(eps)?)?)),
                None => Err(ParseOracleError::Unknown(s.into())),
            },
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    fn items(pairs: &[(Rational, Rational)]) -> Vec<Item> {
        pairs
            .iter()
            .enumerate()
            .map(|(i, (w, v))| Item::new(i, v.clone(), w.clone()))
            .collect()
    }

    /// (size, value) pairs of the two-bin non-monotonicity instance at eps.
    fn witness_items(eps: Rational, raised: bool) -> Vec<Item> {
        let one = Rational::one();
        let fourth = if raised {
            rat(1, 2) + &eps
        } else {
            rat(1, 2)
        };
        items(&[
            (rat(1, 2), &one + &eps),
            (rat(1, 2), &one + &eps),
            (rat(3, 4), rat(3, 2)),
            (rat(1, 4), fourth),
            (one.clone(), int(2) - &eps),
            (one.clone(), int(2) - &eps),
        ])
    }

    fn set(ids: &[usize]) -> BTreeSet<usize> {
        ids.iter().copied().collect()
    }

    #[test]
    fn max_greedy_picks_density_pair() {
        let out = max_greedy(&witness_items(rat(1, 10), false), &int(1));
        assert_eq!(out.selected, set(&[0, 1]));
        assert_eq!(out.reported_value, rat(22, 10));
    }

    #[test]
    fn max_greedy_after_raise_prefers_heavy_item() {
        let its = witness_items(rat(1, 10), true);
        let out = max_greedy(&its, &int(1));
        assert_eq!(out.selected, set(&[4]));
        assert_eq!(out.value_in(&its), rat(19, 10));
    }

    #[test]
    fn max_greedy_single_item() {
        let out = max_greedy(&items(&[(int(1), int(5))]), &int(1));
        assert_eq!(out.selected, set(&[0]));
    }

    #[test]
    fn half_greedy_fractional_bound() {
        let its = items(&[(rat(4, 10), rat(8, 10)), (rat(3, 10), rat(3, 10))]);
        let out = half_greedy(&its, &int(1));
        assert_eq!(out.reported_value, rat(9, 10));
        assert_eq!(out.selected, set(&[0, 1]));
    }

    #[test]
    fn half_greedy_on_witness_takes_singleton() {
        let out = half_greedy(&witness_items(rat(1, 10), false), &int(1));
        assert_eq!(out.selected, set(&[4]));
        assert_eq!(out.reported_value, rat(19, 10));
    }

    #[test]
    fn half_greedy_exact_half_counts_whole_item() {
        // cumulative size lands exactly on W/2 with the second item
        let its = items(&[(rat(1, 4), int(1)), (rat(1, 4), int(1)), (int(1), rat(3, 2))]);
        let out = half_greedy(&its, &int(1));
        assert_eq!(out.reported_value, int(2));
        assert_eq!(out.selected, set(&[0, 1]));
    }

    #[test]
    fn half_greedy_lone_item_and_ties() {
        let its = items(&[(rat(3, 10), int(1))]);
        assert_eq!(half_greedy(&its, &int(1)).selected, set(&[0]));
        // V1 == V2: singleton wins
        let its = items(&[(rat(1, 2), int(1))]);
        let out = half_greedy(&its, &int(1));
        assert_eq!(out.selected, set(&[0]));
        assert!(half_greedy(&[], &int(1)).selected.is_empty());
        // oversized items are invisible
        let its = items(&[(int(2), int(100)), (rat(1, 2), int(1))]);
        assert_eq!(half_greedy(&its, &int(1)).selected, set(&[1]));
    }

    #[test]
    fn pseudo_pack_examples() {
        let sizes = [int(1), int(2), int(3)];
        assert_eq!(pseudo_pack(&[6, 10, 12], &sizes, &int(5)), set(&[1, 2]));
        assert!(pseudo_pack(&[], &[], &int(5)).is_empty());
        assert!(pseudo_pack(&[3], &[int(6)], &int(5)).is_empty());
    }

    #[test]
    fn pseudo_pack_prefers_low_positions_on_ties() {
        // {0,1} and {2} both reach 4; {0,1} avoids the highest position
        let sizes = [int(1), int(1), int(2)];
        assert_eq!(pseudo_pack(&[2, 2, 4], &sizes, &int(2)), set(&[0, 1]));
        // {0,2} and {1,2} both reach 6; {0,2} avoids position 1
        let sizes = [int(1), int(1), int(1)];
        assert_eq!(pseudo_pack(&[2, 2, 4], &sizes, &int(2)), set(&[0, 2]));
        // zero-valued positions never join
        assert_eq!(pseudo_pack(&[0, 5, 0], &sizes, &int(3)), set(&[1]));
    }

    #[test]
    fn scale_k_example() {
        let s = scale_k(&[int(6), int(10), int(12)], 3, &rat(1, 2));
        assert_eq!(s.alpha, rat(3, 4));
        assert_eq!(s.scaled, [4, 6, 6]);
        assert_eq!(s.descaled, [rat(16, 3), int(8), int(8)]);
        // value exactly 2^k is unchanged by truncation
        let s = scale_k(&[int(8)], 3, &rat(1, 2));
        assert_eq!(s.scaled, [2]);
        assert_eq!(s.descaled, [int(8)]);
        // alpha * V < 1 floors everything to zero
        let s = scale_k(&[int(1), int(2)], 10, &rat(1, 2));
        assert_eq!(s.scaled, [0, 0]);
    }

    #[test]
    fn fptas_meets_guarantee_on_small_example() {
        let its = items(&[(int(1), int(6)), (int(2), int(10)), (int(3), int(12))]);
        let cfg = FptasConfig::new(rat(1, 2)).unwrap();
        let out = monotone_fptas(&its, &int(5), &cfg);
        assert!(out.value_in(&its) >= int(11));
        assert!(out.reported_value <= out.value_in(&its));
    }

    #[test]
    fn fptas_trivial_cases() {
        let cfg = FptasConfig::new(rat(1, 4)).unwrap();
        let its = items(&[(rat(1, 2), rat(7, 3))]);
        assert_eq!(monotone_fptas(&its, &int(1), &cfg).selected, set(&[0]));
        let its = items(&[(rat(1, 4), int(3)), (rat(1, 4), int(3)), (rat(1, 4), int(3))]);
        assert_eq!(monotone_fptas(&its, &int(1), &cfg).selected, set(&[0, 1, 2]));
        let zeros = items(&[(rat(1, 4), int(0))]);
        assert!(monotone_fptas(&zeros, &int(1), &cfg).selected.is_empty());
        assert!(monotone_fptas(&[], &int(1), &cfg).selected.is_empty());
    }

    #[test]
    fn fptas_k_range_endpoints() {
        // n = 3, V = 12, eps = 1/2: top = ceil(log2 72) = 7,
        // bottom = floor(log2 2) - 1 = 0
        assert_eq!(fptas_k_range(3, &int(12), &rat(1, 2)), (7, 0));
    }

    #[test]
    fn max_value_examples() {
        let its = items(&[(int(1), int(5)), (int(1), int(3))]);
        assert_eq!(max_value_oracle(&its, &int(1)).selected, set(&[0]));
        let its = items(&[(int(1), int(4)), (int(1), int(4))]);
        assert_eq!(max_value_oracle(&its, &int(1)).selected, set(&[0]));
        assert!(max_value_oracle(&[], &int(1)).selected.is_empty());
    }

    #[test]
    fn exact_matches_pseudo_pack_order() {
        let its = items(&[(int(1), int(2)), (int(1), int(2)), (int(2), int(4))]);
        let out = exact_knapsack(&its, &int(2));
        assert_eq!(out.selected, set(&[0, 1]));
        assert_eq!(out.reported_value, int(4));
    }

    #[test]
    fn oracle_kind_text_round_trip() {
        for text in ["maxgreedy", "halfgreedy", "fptas:1/8", "maxvalue", "exact"] {
            let kind: OracleKind = text.parse().unwrap();
            assert_eq!(alloc::format!("{kind}"), text);
        }
        assert!("fptas:1".parse::<OracleKind>().is_err());
        assert!("fptas:0".parse::<OracleKind>().is_err());
        assert!("greedy".parse::<OracleKind>().is_err());
    }
}
