//! Decimal rendering of exact rationals.

use alloc::string::{String, ToString};

use num_bigint::{BigUint, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Pow, Zero};

/// Significant digits used for the decimal companions of exact values.
pub const SIGNIFICANT_DIGITS: u32 = 12;

fn pow10(e: u32) -> BigUint {
    Pow::pow(BigUint::from(10u32), e)
}

/// Is `num / den >= 10^e`?
fn at_least_pow10(num: &BigUint, den: &BigUint, e: i64) -> bool {
    if e >= 0 {
        *num >= den * pow10(e as u32)
    } else {
        num * pow10((-e) as u32) >= *den
    }
}

/// Rounds `x` to `digits` significant digits, ties to even.
///
/// Magnitudes in `[1e-6, 1e21)` are written positionally, others as
/// `d.ddde±x`. Trailing zeros are dropped.
pub fn to_significant(x: &BigRational, digits: u32) -> String {
    assert!(digits > 0);
    if x.is_zero() {
        return "0".to_string();
    }
    let negative = x.numer().sign() == Sign::Minus;
    let num = x.numer().magnitude().clone();
    let den = x.denom().magnitude().clone();

    let mut e = num.to_string().len() as i64 - den.to_string().len() as i64;
    while !at_least_pow10(&num, &den, e) {
        e -= 1;
    }
    while at_least_pow10(&num, &den, e + 1) {
        e += 1;
    }

    // scaled = |x| * 10^(digits - 1 - e), so floor(scaled) has `digits` digits.
    let shift = digits as i64 - 1 - e;
    let (snum, sden) = if shift >= 0 {
        (num * pow10(shift as u32), den)
    } else {
        (num, den * pow10((-shift) as u32))
    };
    let (mut q, r) = snum.div_rem(&sden);
    let twice = r * 2u32;
    if twice > sden || (twice == sden && q.is_odd()) {
        q += BigUint::one();
    }
    if q == pow10(digits) {
        q = pow10(digits - 1);
        e += 1;
    }

    let mantissa = q.to_string();
    let mut out = String::new();
    if negative {
        out.push('-');
    }
    if (-6..21).contains(&e) {
        if e >= digits as i64 - 1 {
            out.push_str(&mantissa);
            out.extend(core::iter::repeat('0').take((e - digits as i64 + 1) as usize));
        } else if e >= 0 {
            let (int, frac) = mantissa.split_at(e as usize + 1);
            out.push_str(int);
            push_fraction(&mut out, frac);
        } else {
            out.push('0');
            let mut frac: String = "0".repeat((-e - 1) as usize);
            frac.push_str(&mantissa);
            push_fraction(&mut out, &frac);
        }
    } else {
        let (lead, rest) = mantissa.split_at(1);
        out.push_str(lead);
        push_fraction(&mut out, rest);
        out.push('e');
        out.push_str(&e.to_string());
    }
    out
}

fn push_fraction(out: &mut String, frac: &str) {
    let frac = frac.trim_end_matches('0');
    if !frac.is_empty() {
        out.push('.');
        out.push_str(frac);
    }
}

/// [`to_significant`] with [`SIGNIFICANT_DIGITS`].
pub fn approx(x: &BigRational) -> String {
    to_significant(x, SIGNIFICANT_DIGITS)
}
