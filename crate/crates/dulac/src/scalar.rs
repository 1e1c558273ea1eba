//! Exact scalar arithmetic: the [`Scalar`] trait and the Gaussian rational
//! coefficient type used throughout the crate.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{ArithmeticError, ParseError};

/// An exact field scalar. Arithmetic must be exact and equality structural,
/// so that a zero coefficient is detected reliably; floating-point types do
/// not qualify.
pub trait Scalar:
    Clone
    + PartialEq
    + Eq
    + fmt::Debug
    + fmt::Display
    + Zero
    + One
    + Neg<Output = Self>
    + Sub<Output = Self>
    + Div<Output = Self>
    + Send
    + Sync
    + 'static
{
    /// Complex conjugate; identity on real scalar types.
    fn conjugate(&self) -> Self;

    /// Exact squared modulus as a nonnegative rational.
    fn abs_sq(&self) -> BigRational;

    /// Embed a signed integer.
    fn from_i64(n: i64) -> Self;

    /// Exact multiplicative inverse.
    fn checked_inv(&self) -> Result<Self, ArithmeticError>;

    /// Exact division with an explicit error on a zero divisor.
    fn checked_div(&self, rhs: &Self) -> Result<Self, ArithmeticError> {
        Ok(self.clone() * rhs.checked_inv()?)
    }
}

/// A complex number with rational real and imaginary parts, kept exactly.
///
/// Both parts are always in lowest terms with positive denominators
/// (maintained by `num_rational`), so structural equality coincides with
/// mathematical equality.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct GaussianRational {
    re: BigRational,
    im: BigRational,
}

impl GaussianRational {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        GaussianRational { re, im }
    }

    pub fn from_rational(re: BigRational) -> Self {
        GaussianRational {
            re,
            im: BigRational::zero(),
        }
    }

    pub fn integer(n: i64) -> Self {
        Self::from_rational(BigRational::from_integer(BigInt::from(n)))
    }

    /// `n/d` as a real Gaussian rational. `d` must be nonzero.
    pub fn ratio(n: i64, d: i64) -> Self {
        Self::from_rational(BigRational::new(BigInt::from(n), BigInt::from(d)))
    }

    /// The imaginary unit.
    pub fn i() -> Self {
        GaussianRational {
            re: BigRational::zero(),
            im: BigRational::one(),
        }
    }

    /// `(n/d)·i`. `d` must be nonzero.
    pub fn imaginary(n: i64, d: i64) -> Self {
        GaussianRational {
            re: BigRational::zero(),
            im: BigRational::new(BigInt::from(n), BigInt::from(d)),
        }
    }

    pub fn re(&self) -> &BigRational {
        &self.re
    }

    pub fn im(&self) -> &BigRational {
        &self.im
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }
}

impl Zero for GaussianRational {
    fn zero() -> Self {
        GaussianRational {
            re: BigRational::zero(),
            im: BigRational::zero(),
        }
    }

    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
}

impl One for GaussianRational {
    fn one() -> Self {
        GaussianRational {
            re: BigRational::one(),
            im: BigRational::zero(),
        }
    }

    fn is_one(&self) -> bool {
        self.re.is_one() && self.im.is_zero()
    }
}

macro_rules! forward_ref_binop {
    ($imp:ident, $method:ident) => {
        impl<'a> $imp<&'a GaussianRational> for &'a GaussianRational {
            type Output = GaussianRational;
            fn $method(self, rhs: &'a GaussianRational) -> GaussianRational {
                $imp::$method(self.clone(), rhs.clone())
            }
        }
        impl<'a> $imp<&'a GaussianRational> for GaussianRational {
            type Output = GaussianRational;
            fn $method(self, rhs: &'a GaussianRational) -> GaussianRational {
                $imp::$method(self, rhs.clone())
            }
        }
    };
}

impl Add for GaussianRational {
    type Output = GaussianRational;
    fn add(self, rhs: Self) -> Self {
        GaussianRational {
            re: self.re + rhs.re,
            im: self.im + rhs.im,
        }
    }
}

impl Sub for GaussianRational {
    type Output = GaussianRational;
    fn sub(self, rhs: Self) -> Self {
        GaussianRational {
            re: self.re - rhs.re,
            im: self.im - rhs.im,
        }
    }
}

impl Mul for GaussianRational {
    type Output = GaussianRational;
    fn mul(self, rhs: Self) -> Self {
        let re = &self.re * &rhs.re - &self.im * &rhs.im;
        let im = &self.re * &rhs.im + &self.im * &rhs.re;
        GaussianRational { re, im }
    }
}

/// Panics on a zero divisor; use [`Scalar::checked_div`] to get an error
/// value instead.
impl Div for GaussianRational {
    type Output = GaussianRational;
    fn div(self, rhs: Self) -> Self {
        self.checked_div(&rhs)
            .expect("GaussianRational division by zero")
    }
}

impl Neg for GaussianRational {
    type Output = GaussianRational;
    fn neg(self) -> Self {
        GaussianRational {
            re: -self.re,
            im: -self.im,
        }
    }
}

forward_ref_binop!(Add, add);
forward_ref_binop!(Sub, sub);
forward_ref_binop!(Mul, mul);
forward_ref_binop!(Div, div);

impl Scalar for GaussianRational {
    fn conjugate(&self) -> Self {
        GaussianRational {
            re: self.re.clone(),
            im: -self.im.clone(),
        }
    }

    fn abs_sq(&self) -> BigRational {
        &self.re * &self.re + &self.im * &self.im
    }

    fn from_i64(n: i64) -> Self {
        GaussianRational::integer(n)
    }

    fn checked_inv(&self) -> Result<Self, ArithmeticError> {
        if self.is_zero() {
            return Err(ArithmeticError::DivisionByZero);
        }
        let norm = self.abs_sq();
        Ok(GaussianRational {
            re: &self.re / &norm,
            im: -(&self.im / &norm),
        })
    }
}

impl Scalar for BigRational {
    fn conjugate(&self) -> Self {
        self.clone()
    }

    fn abs_sq(&self) -> BigRational {
        self * self
    }

    fn from_i64(n: i64) -> Self {
        BigRational::from_integer(BigInt::from(n))
    }

    fn checked_inv(&self) -> Result<Self, ArithmeticError> {
        if self.is_zero() {
            return Err(ArithmeticError::DivisionByZero);
        }
        Ok(self.recip())
    }
}

fn fmt_rational(r: &BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Canonical coefficient grammar: `a/b`, `a/b+c/d*i`, or `c/d*i`, denominators
/// omitted when 1, fractions in lowest terms. [`FromStr`] accepts the same
/// grammar (plus a bare `i`) and round-trips with this rendering.
impl fmt::Display for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut out = String::new();
        if !self.re.is_zero() {
            out.push_str(&fmt_rational(&self.re));
        }
        if !self.im.is_zero() {
            if self.im.is_negative() {
                out.push('-');
            } else if !self.re.is_zero() {
                out.push('+');
            }
            out.push_str(&fmt_rational(&self.im.abs()));
            out.push_str("*i");
        }
        write!(f, "{out}")
    }
}

fn parse_rational(s: &str) -> Result<BigRational, String> {
    let (num_str, den_str) = match s.split_once('/') {
        Some((n, d)) => (n, d),
        None => (s, "1"),
    };
    let numer = BigInt::from_str(num_str).map_err(|_| format!("bad integer `{num_str}`"))?;
    let denom = BigInt::from_str(den_str).map_err(|_| format!("bad integer `{den_str}`"))?;
    if denom.is_zero() {
        return Err("zero denominator".to_string());
    }
    Ok(BigRational::new(numer, denom))
}

impl FromStr for GaussianRational {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = |msg: String| ParseError::field(format!("coefficient `{s}`"), msg);
        if s.is_empty() {
            return Err(err("empty coefficient".to_string()));
        }
        // Split into at most two signed terms. Sign characters only occur at
        // the start of a term, so any '+'/'-' past position 0 is a separator.
        let bytes = s.as_bytes();
        let mut split = None;
        for (idx, &b) in bytes.iter().enumerate().skip(1) {
            if b == b'+' || b == b'-' {
                if split.is_some() {
                    return Err(err("more than two terms".to_string()));
                }
                split = Some(idx);
            }
        }
        let (first, second) = match split {
            Some(idx) => (&s[..idx], Some(&s[idx..])),
            None => (s, None),
        };

        let mut re: Option<BigRational> = None;
        let mut im: Option<BigRational> = None;
        for term in std::iter::once(first).chain(second) {
            let (negative, body) = match term.as_bytes()[0] {
                b'+' => (false, &term[1..]),
                b'-' => (true, &term[1..]),
                _ => (false, term),
            };
            if body.is_empty() {
                return Err(err("dangling sign".to_string()));
            }
            let (is_imaginary, magnitude) = if body == "i" {
                (true, BigRational::one())
            } else if let Some(stripped) = body.strip_suffix("*i") {
                (true, parse_rational(stripped).map_err(&err)?)
            } else {
                (false, parse_rational(body).map_err(&err)?)
            };
            let value = if negative { -magnitude } else { magnitude };
            let slot = if is_imaginary { &mut im } else { &mut re };
            if slot.is_some() {
                return Err(err("duplicate real or imaginary part".to_string()));
            }
            *slot = Some(value);
        }
        Ok(GaussianRational {
            re: re.unwrap_or_else(BigRational::zero),
            im: im.unwrap_or_else(BigRational::zero),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn g(re_n: i64, re_d: i64, im_n: i64, im_d: i64) -> GaussianRational {
        GaussianRational::new(
            BigRational::new(BigInt::from(re_n), BigInt::from(re_d)),
            BigRational::new(BigInt::from(im_n), BigInt::from(im_d)),
        )
    }

    #[test]
    fn rational_addition() {
        let sum = GaussianRational::ratio(1, 2) + GaussianRational::ratio(1, 3);
        assert_eq!(sum, GaussianRational::ratio(5, 6));
    }

    #[test]
    fn i_squared_is_minus_one() {
        assert_eq!(
            GaussianRational::i() * GaussianRational::i(),
            GaussianRational::integer(-1)
        );
    }

    #[test]
    fn inverse_of_one_plus_i() {
        let x = g(1, 1, 1, 1);
        let inv = x.checked_inv().unwrap();
        assert_eq!(inv, g(1, 2, -1, 2));
        assert_eq!(x * inv, GaussianRational::one());
    }

    #[test]
    fn division_by_zero_is_an_error() {
        assert_eq!(
            GaussianRational::one().checked_div(&GaussianRational::zero()),
            Err(ArithmeticError::DivisionByZero)
        );
    }

    #[test]
    fn abs_sq_is_nonnegative_rational() {
        let x = g(-3, 4, 1, 2);
        assert_eq!(
            x.abs_sq(),
            BigRational::new(BigInt::from(13), BigInt::from(16))
        );
        assert_eq!(x.conjugate(), g(-3, 4, -1, 2));
    }

    #[test]
    fn display_canonical_forms() {
        assert_eq!(GaussianRational::zero().to_string(), "0");
        assert_eq!(GaussianRational::ratio(-1, 2).to_string(), "-1/2");
        assert_eq!(GaussianRational::i().to_string(), "1*i");
        assert_eq!(g(1, 2, -3, 4).to_string(), "1/2-3/4*i");
        assert_eq!(GaussianRational::imaginary(-2, 1).to_string(), "-2*i");
    }

    #[test]
    fn parse_accepts_grammar() {
        assert_eq!("1/2+3/4*i".parse::<GaussianRational>().unwrap(), g(1, 2, 3, 4));
        assert_eq!("-i".parse::<GaussianRational>().unwrap(), -GaussianRational::i());
        assert_eq!("7".parse::<GaussianRational>().unwrap(), GaussianRational::integer(7));
        assert_eq!("2/4".parse::<GaussianRational>().unwrap(), GaussianRational::ratio(1, 2));
        assert_eq!(
            "-3/4*i+1/2".parse::<GaussianRational>().unwrap(),
            g(1, 2, -3, 4)
        );
    }

    #[test]
    fn parse_rejects_garbage() {
        for bad in ["", "1/0", "1+2", "i*i", "1/2+", "1 / 2", "2x"] {
            assert!(bad.parse::<GaussianRational>().is_err(), "accepted `{bad}`");
        }
    }

    fn small_gaussian() -> impl Strategy<Value = GaussianRational> {
        (
            -20i64..=20,
            1i64..=12,
            -20i64..=20,
            1i64..=12,
        )
            .prop_map(|(a, b, c, d)| g(a, b, c, d))
    }

    proptest! {
        #[test]
        fn display_parse_round_trip(x in small_gaussian()) {
            let back: GaussianRational = x.to_string().parse().unwrap();
            prop_assert_eq!(back, x);
        }

        #[test]
        fn nonzero_times_inverse_is_one(x in small_gaussian()) {
            prop_assume!(!x.is_zero());
            prop_assert_eq!(x.clone() * x.checked_inv().unwrap(), GaussianRational::one());
        }
    }
}
