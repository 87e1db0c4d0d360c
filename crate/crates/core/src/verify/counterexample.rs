use num_traits::{One, Signed};

use super::{check_monotone, PerturbationGrid, PropertyReport, Target};
use crate::model::Instance;
use crate::oracles::OracleKind;
use crate::packing::Allocator;
use crate::rational::{int, rat, Rational};
use crate::Error;

/// Agent whose raise exposes the failure.
const RAISED_AGENT: usize = 3;

/// Two unit bins and six items (size, value):
/// `(1/2, 1+eps) x2, (3/4, 3/2), (1/4, 1/2), (1, 2-eps) x2`.
pub fn counterexample_instance(eps: &Rational) -> Result<Instance, Error> {
    if !eps.is_positive() || *eps >= rat(1, 6) {
        return Err(Error::EpsilonOutOfRange);
    }
    let one = Rational::one();
    Ok(Instance::offline(
        &[
            (&one + eps, rat(1, 2)),
            (&one + eps, rat(1, 2)),
            (rat(3, 2), rat(3, 4)),
            (rat(1, 2), rat(1, 4)),
            (int(2) - eps, one.clone()),
            (int(2) - eps, one.clone()),
        ],
        &[int(1), int(1)],
    ))
}

/// Iterative packing with max-greedy is not monotone: raising the
/// `(1/4, 1/2)` item's value by `eps` evicts it. Returns the instance and
/// the (failing) monotonicity report for that single raise.
pub fn max_greedy_counterexample(eps: &Rational) -> Result<(Instance, PropertyReport), Error> {
    let inst = counterexample_instance(eps)?;
    let old = &inst.bids[RAISED_AGENT].value;
    let grid = PerturbationGrid::single_value(RAISED_AGENT, old, &(old + eps));
    let target = Target::Allocator(Allocator::Iterative(OracleKind::MaxGreedy));
    let report = check_monotone(&target, &inst, &grid)?;
    Ok((inst, report))
}
