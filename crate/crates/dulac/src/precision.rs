//! High-precision decimal rendering for report output.
//!
//! All core comparisons in the crate are exact; real-valued quantities
//! (logarithms, square roots) appear only at the reporting boundary and are
//! computed here over `BigRational` to a configurable number of decimal
//! digits, deterministically.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

fn pow10(digits: usize) -> BigInt {
    BigInt::from(10u32).pow(digits as u32)
}

/// Natural logarithm of a positive rational, approximated by a rational with
/// absolute error below `10^-digits`.
///
/// Range-reduces `x = m * 2^e` with `m` in `[2/3, 4/3)`, then evaluates
/// `ln m = 2*atanh((m-1)/(m+1))` as a rational series; the tail after the
/// first dropped term is below that term divided by `1 - t^2`, which the
/// stopping tolerance absorbs.
pub fn ln_rational(x: &BigRational, digits: usize) -> Result<BigRational> {
    if !x.is_positive() {
        return Err(Error::precondition("ln requires a positive argument"));
    }
    let one = BigRational::one();
    let two = BigRational::from_integer(BigInt::from(2));
    let lower = BigRational::new(BigInt::from(2), BigInt::from(3));
    let upper = BigRational::new(BigInt::from(4), BigInt::from(3));

    let mut m = x.clone();
    let mut exponent: i64 = 0;
    while m >= upper {
        m /= &two;
        exponent += 1;
    }
    while m < lower {
        m *= &two;
        exponent -= 1;
    }

    let guard = digits + 10;
    let t = (&m - &one) / (&m + &one);
    let mut result = atanh_series(&t, guard) * &two;
    if exponent != 0 {
        let ln2_digits = guard + 2 + exponent.unsigned_abs().to_string().len();
        let third = BigRational::new(BigInt::from(1), BigInt::from(3));
        let ln2 = atanh_series(&third, ln2_digits) * &two;
        result += ln2 * BigRational::from_integer(BigInt::from(exponent));
    }
    Ok(result)
}

/// `atanh(t) = sum t^(2j+1)/(2j+1)` for `|t| <= 1/3`, truncated once the next
/// term drops below `10^-(digits+2)`.
fn atanh_series(t: &BigRational, digits: usize) -> BigRational {
    if t.is_zero() {
        return BigRational::zero();
    }
    let tol = BigRational::new(BigInt::one(), pow10(digits + 2));
    let t_sq = t * t;
    let mut power = t.clone();
    let mut sum = BigRational::zero();
    let mut odd = 1u64;
    loop {
        let term = &power / BigRational::from_integer(BigInt::from(odd));
        if term.abs() < tol {
            break;
        }
        sum += term;
        power *= &t_sq;
        odd += 2;
    }
    sum
}

/// Fixed-point decimal rendering with exactly `frac_digits` fractional digits,
/// rounding half away from zero. Deterministic for a given input.
pub fn decimal_fixed(x: &BigRational, frac_digits: usize) -> String {
    let scale = pow10(frac_digits);
    let scaled = x * BigRational::from_integer(scale);
    let double_den = scaled.denom() * BigInt::from(2);
    let rounded = if scaled.numer().is_negative() {
        // div_floor rounds toward -inf; rounding half away from zero needs
        // the mirrored computation on the negative side.
        let num = -(scaled.numer() * BigInt::from(2) - scaled.denom());
        -(num.div_floor(&double_den))
    } else {
        (scaled.numer() * BigInt::from(2) + scaled.denom()).div_floor(&double_den)
    };

    let negative = rounded.is_negative();
    let magnitude = rounded.magnitude().to_string();
    let padded = if magnitude.len() <= frac_digits {
        format!("{}{}", "0".repeat(frac_digits + 1 - magnitude.len()), magnitude)
    } else {
        magnitude
    };
    let split = padded.len() - frac_digits;
    let (int_part, frac_part) = padded.split_at(split);
    let sign = if negative && !rounded.is_zero() { "-" } else { "" };
    if frac_digits == 0 {
        format!("{sign}{int_part}")
    } else {
        format!("{sign}{int_part}.{frac_part}")
    }
}

/// Decimal rendering of `sqrt(x)` for `x >= 0`, truncated (floor) at
/// `frac_digits` fractional digits.
pub fn sqrt_decimal(x: &BigRational, frac_digits: usize) -> Result<String> {
    if x.is_negative() {
        return Err(Error::precondition("sqrt requires a nonnegative argument"));
    }
    let scale = pow10(2 * frac_digits);
    let scaled = (x * BigRational::from_integer(scale)).to_integer();
    let root = scaled.sqrt();
    let magnitude = root.magnitude().to_string();
    let padded = if magnitude.len() <= frac_digits {
        format!("{}{}", "0".repeat(frac_digits + 1 - magnitude.len()), magnitude)
    } else {
        magnitude
    };
    let split = padded.len() - frac_digits;
    let (int_part, frac_part) = padded.split_at(split);
    if frac_digits == 0 {
        Ok(int_part.to_string())
    } else {
        Ok(format!("{int_part}.{frac_part}"))
    }
}

/// Parse a plain decimal string (as produced by [`decimal_fixed`]) back into
/// an exact rational. Intended for tests and report consumers.
pub fn parse_decimal(s: &str) -> Result<BigRational> {
    let err = || Error::precondition(format!("bad decimal literal `{s}`"));
    let (negative, body) = match s.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, s),
    };
    let (int_part, frac_part) = match body.split_once('.') {
        Some((i, f)) => (i, f),
        None => (body, ""),
    };
    if int_part.is_empty() || !int_part.bytes().all(|b| b.is_ascii_digit()) {
        return Err(err());
    }
    if !frac_part.bytes().all(|b| b.is_ascii_digit()) {
        return Err(err());
    }
    let digits = format!("{int_part}{frac_part}");
    let numer: BigInt = digits.parse().map_err(|_| err())?;
    let value = BigRational::new(numer, pow10(frac_part.len()));
    Ok(if negative { -value } else { value })
}
