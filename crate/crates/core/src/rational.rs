//! Exact rational helpers.
//!
//! Every number that reaches an allocation decision is a [`Rational`]
//! (an arbitrary-precision, always-reduced fraction). Logarithms, floors and
//! the exponential bounds used by the ratio checks are computed with integer
//! arithmetic only.

use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt::Write as _;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Arbitrary-precision rational in canonical form (reduced, positive denominator).
pub type Rational = BigRational;

/// `num / den` as a rational. Panics if `den == 0`.
pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Integer `n` as a rational.
pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// `2^k` for any (possibly negative) exponent.
pub fn pow2(k: i64) -> Rational {
    let mag = BigInt::one() << k.unsigned_abs();
    if k >= 0 {
        Rational::from_integer(mag)
    } else {
        Rational::new(BigInt::one(), mag)
    }
}

/// Largest `k` with `2^k <= x`. Panics unless `x > 0`.
pub fn floor_log2(x: &Rational) -> i64 {
    assert!(x.is_positive(), "floor_log2 of a nonpositive rational");
    let num = x.numer();
    let den = x.denom();
    let guess = num.bits() as i64 - den.bits() as i64;
    // 2^(guess-1) < x < 2^(guess+1)
    let at_least = if guess >= 0 {
        *num >= den << guess as u64
    } else {
        num << (-guess) as u64 >= *den
    };
    if at_least {
        guess
    } else {
        guess - 1
    }
}

/// Smallest `k` with `x <= 2^k`. Panics unless `x > 0`.
pub fn ceil_log2(x: &Rational) -> i64 {
    let f = floor_log2(x);
    if pow2(f) == *x {
        f
    } else {
        f + 1
    }
}

/// `floor(x)` as an integer.
pub fn floor_int(x: &Rational) -> BigInt {
    x.floor().to_integer()
}

/// Sum of a sequence of rationals.
pub fn sum<'a>(values: impl IntoIterator<Item = &'a Rational>) -> Rational {
    values.into_iter().fold(Rational::zero(), |acc, v| acc + v)
}

/// Error returned by [`parse_rational`].
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("invalid rational literal {literal:?}: {reason}")]
pub struct ParseRationalError {
    pub literal: String,
    pub reason: &'static str,
}

/// Parses `"p/q"`, an integer `"p"`, or an exact decimal `"1.25"`.
pub fn parse_rational(text: &str) -> Result<Rational, ParseRationalError> {
    let err = |reason| ParseRationalError {
        literal: text.to_string(),
        reason,
    };
    let s = text.trim();
    if s.is_empty() {
        return Err(err("empty"));
    }
    if let Some((p, q)) = s.split_once('/') {
        let p = parse_int(p.trim()).ok_or_else(|| err("bad numerator"))?;
        let q = parse_int(q.trim()).ok_or_else(|| err("bad denominator"))?;
        if q.is_zero() {
            return Err(err("zero denominator"));
        }
        return Ok(Rational::new(p, q));
    }
    if let Some((whole, frac)) = s.split_once('.') {
        if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) {
            return Err(err("bad decimal fraction"));
        }
        let negative = whole.starts_with('-');
        let whole_digits = whole.trim_start_matches(['-', '+']);
        if !whole_digits.bytes().all(|b| b.is_ascii_digit()) {
            return Err(err("bad decimal"));
        }
        let mut digits = String::from(whole_digits);
        digits.push_str(frac);
        let mag = parse_int(&digits).ok_or_else(|| err("bad decimal"))?;
        let scale = num_traits::pow(BigInt::from(10), frac.len());
        let value = Rational::new(mag, scale);
        return Ok(if negative { -value } else { value });
    }
    parse_int(s)
        .map(Rational::from_integer)
        .ok_or_else(|| err("bad integer"))
}

fn parse_int(s: &str) -> Option<BigInt> {
    let digits = s.trim_start_matches(['-', '+']);
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    s.parse().ok()
}

/// Canonical text form: `"p"` for integers, `"p/q"` otherwise.
pub fn format_rational(x: &Rational) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        let mut out = String::new();
        let _ = write!(out, "{}/{}", x.numer(), x.denom());
        out
    }
}

/// Decimal rendering truncated toward zero after `digits` fractional digits.
/// Annotation only; never parsed back.
pub fn to_decimal(x: &Rational, digits: usize) -> String {
    let mut out = String::new();
    if x.is_negative() {
        out.push('-');
    }
    let num = x.numer().abs();
    let den = x.denom();
    let (whole, mut rem) = num.div_rem(den);
    let _ = write!(out, "{}", whole);
    if digits > 0 {
        out.push('.');
        let ten = BigInt::from(10);
        for _ in 0..digits {
            rem *= &ten;
            let (d, r) = rem.div_rem(den);
            rem = r;
            let _ = write!(out, "{}", d);
        }
    }
    out
}

/// Lossy conversion used only for human-facing summaries.
pub fn approx_f64(x: &Rational) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

/// Rational interval `[lo, hi]` containing `e^x`, for `|x| <= 1`.
///
/// Taylor partial sum with the Lagrange remainder bounded by
/// `3 |x|^(N+1) / (N+1)!`; the width is below `2^-precision_bits`.
pub fn exp_interval(x: &Rational, precision_bits: u32) -> (Rational, Rational) {
    assert!(x.abs() <= Rational::one(), "exp_interval needs |x| <= 1");
    let tolerance = pow2(-(precision_bits as i64) - 2);
    let mut partial = Rational::zero();
    let mut term = Rational::one();
    let mut n: i64 = 0;
    loop {
        partial += &term;
        n += 1;
        term = term * x / int(n);
        let remainder = term.abs() * int(3);
        if remainder < tolerance {
            return (&partial - &remainder, &partial + &remainder);
        }
    }
}

/// Sign of `a*d - b*c`, i.e. compares `a/b` against `c/d` for positive `b, d`
/// without building the quotients.
pub fn cmp_cross(a: &Rational, b: &Rational, c: &Rational, d: &Rational) -> core::cmp::Ordering {
    (a * d).cmp(&(c * b))
}

/// Least common multiple of the denominators.
pub fn common_denominator<'a>(values: impl IntoIterator<Item = &'a Rational>) -> BigInt {
    values
        .into_iter()
        .fold(BigInt::one(), |acc, v| acc.lcm(v.denom()))
}

/// Scales `values` by a common denominator into `u128` integers, when every
/// scaled value fits in 64 bits (so sums of up to 2^64 of them fit in 128).
pub fn integerize(values: &[&Rational]) -> Option<Vec<u128>> {
    let den = common_denominator(values.iter().copied());
    values
        .iter()
        .map(|v| {
            let scaled = v.numer() * (&den / v.denom());
            match scaled.sign() {
                Sign::Minus => None,
                _ => scaled.to_u64().map(u128::from),
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn log2_bounds_are_exact() {
        assert_eq!(floor_log2(&int(1)), 0);
        assert_eq!(ceil_log2(&int(1)), 0);
        assert_eq!(floor_log2(&int(8)), 3);
        assert_eq!(ceil_log2(&int(8)), 3);
        assert_eq!(floor_log2(&int(9)), 3);
        assert_eq!(ceil_log2(&int(9)), 4);
        assert_eq!(floor_log2(&rat(1, 3)), -2);
        assert_eq!(ceil_log2(&rat(1, 3)), -1);
        assert_eq!(floor_log2(&rat(1, 4)), -2);
        assert_eq!(ceil_log2(&rat(1, 4)), -2);
        assert_eq!(floor_log2(&rat(7, 2)), 1);
        assert_eq!(ceil_log2(&rat(7, 2)), 2);
    }

    #[test]
    fn parse_forms() {
        assert_eq!(parse_rational("3/6").unwrap(), rat(1, 2));
        assert_eq!(parse_rational("-4").unwrap(), int(-4));
        assert_eq!(parse_rational("1.1").unwrap(), rat(11, 10));
        assert_eq!(parse_rational("-0.25").unwrap(), rat(-1, 4));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("abc").is_err());
        assert!(parse_rational("").is_err());
        assert!(parse_rational("1.").is_err());
    }

    #[test]
    fn format_is_canonical() {
        assert_eq!(format_rational(&rat(4, 8)), "1/2");
        assert_eq!(format_rational(&rat(-6, 3)), "-2");
        assert_eq!(to_decimal(&rat(8, 5), 3), "1.600");
        assert_eq!(to_decimal(&rat(-1, 3), 2), "-0.33");
    }

    #[test]
    fn exp_interval_brackets_sqrt_e() {
        let (lo, hi) = exp_interval(&rat(1, 2), 80);
        assert!((approx_f64(&lo) - 1.648_721_270_700_128).abs() < 1e-15);
        assert!(lo < hi && &hi - &lo < pow2(-80));
        // the squared interval must overlap an independent interval for e
        let (e_lo, e_hi) = exp_interval(&int(1), 80);
        assert!(&lo * &lo <= e_hi && e_lo <= &hi * &hi);
        let (inv_lo, inv_hi) = exp_interval(&rat(-1, 2), 80);
        assert!(&lo * &inv_lo <= int(1) && int(1) <= &hi * &inv_hi);
    }

    #[test]
    fn integerize_uses_common_denominator() {
        let a = rat(1, 2);
        let b = rat(3, 4);
        let c = int(2);
        assert_eq!(integerize(&[&a, &b, &c]).unwrap(), [2, 3, 8]);
    }
}
