use alloc::vec::Vec;

use num_traits::{One, Zero};

use crate::model::Instance;
use crate::packing::Allocator;
use crate::rational::{exp_interval, Rational};
use crate::Error;

/// Guarantee `ALG >= f * OPT` where the real factor `f` is only known to lie
/// in `[lo, hi]`. An instance passes only when `ALG >= hi * OPT`, which
/// certifies the guarantee without knowing `f` exactly.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RatioBound {
    pub lo: Rational,
    pub hi: Rational,
}

impl RatioBound {
    pub fn exact(factor: Rational) -> Self {
        RatioBound {
            lo: factor.clone(),
            hi: factor,
        }
    }

    /// `f = 1 - e^(-1/alpha) = (e^(1/alpha) - 1) / e^(1/alpha)`, for `alpha >= 1`.
    pub fn one_minus_exp_neg_inv(alpha: &Rational) -> Self {
        let x = -(Rational::one() / alpha);
        let (lo, hi) = exp_interval(&x, 96);
        RatioBound {
            lo: Rational::one() - hi,
            hi: Rational::one() - lo,
        }
    }
}

/// Outcome of running an allocator over a corpus against an optimum.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RatioReport {
    pub instances: usize,
    /// Largest `OPT / ALG` seen; `None` if some instance had `ALG = 0 < OPT`.
    pub worst_ratio: Option<Rational>,
    pub worst_index: Option<usize>,
    /// Corpus indices where the guarantee was not certified.
    pub violations: Vec<usize>,
}

impl RatioReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Worst `OPT / ALG` over `corpus` and every instance breaking `bound`.
pub fn ratio_report<F>(
    corpus: &[Instance],
    allocator: &Allocator,
    opt: F,
    bound: &RatioBound,
) -> Result<RatioReport, Error>
where
    F: Fn(&Instance) -> Result<Rational, Error>,
{
    let mut report = RatioReport {
        instances: corpus.len(),
        worst_ratio: Some(Rational::one()),
        worst_index: None,
        violations: Vec::new(),
    };
    let mut unbounded = false;
    for (index, inst) in corpus.iter().enumerate() {
        let alg = allocator.allocate(inst)?.value(inst);
        let best = opt(inst)?;
        if alg < &bound.hi * &best {
            report.violations.push(index);
        }
        if best.is_zero() || unbounded {
            continue;
        }
        if alg.is_zero() {
            unbounded = true;
            report.worst_ratio = None;
            report.worst_index = Some(index);
            continue;
        }
        let ratio = &best / &alg;
        if report.worst_ratio.as_ref().is_some_and(|w| ratio > *w) {
            report.worst_ratio = Some(ratio);
            report.worst_index = Some(index);
        }
    }
    Ok(report)
}
