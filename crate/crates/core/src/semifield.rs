//! Idempotent semifields and the max-plus instance.
//!
//! The algorithms in this crate are written against [`Semifield`]; the only
//! instance shipped is [`MaxPlus`], parameterised by the carrier [`Number`]
//! type: exact rationals ([`num_rational::BigRational`]) or `f64`/`f32`
//! compared with a process-wide tolerance.

use std::cmp::Ordering;
use std::fmt::{self, Debug, Display};
use std::ops::Neg;
use std::str::FromStr;
use std::sync::atomic::{AtomicU64, Ordering as AtomicOrdering};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{FromPrimitive, Num, Zero};

use crate::error::{Error, Result};

/// An idempotent semifield with a total order.
///
/// `Ord` must agree with `add`: `a <= b` iff `a.add(b) == b`, and the zero
/// element is the least element.
pub trait Semifield: Clone + Debug + Display + Ord + Send + Sync + 'static {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn inv(&self) -> Result<Self>;

    fn leq(&self, other: &Self) -> bool {
        self <= other
    }

    fn is_one(&self) -> bool {
        *self == Self::one()
    }

    /// Integer power; negative exponents go through the inverse.
    fn pow(&self, exp: i64) -> Result<Self> {
        let base = if exp < 0 { self.inv()? } else { self.clone() };
        let mut acc = Self::one();
        for _ in 0..exp.unsigned_abs() {
            acc = acc.mul(&base);
        }
        Ok(acc)
    }
}

/// Carrier of the finite max-plus values.
pub trait Number: Num + Neg<Output = Self> + FromPrimitive + Clone + Debug + Display + Send + Sync + 'static {
    /// Total comparison. Floating-point carriers treat values within the
    /// configured tolerance as equal.
    fn compare(&self, other: &Self) -> Ordering;

    /// Parses one finite token of the matrix text format.
    fn parse_token(token: &str) -> Option<Self>;

    /// Whether equality is exact for this carrier.
    const EXACT: bool;
}

static FLOAT_EPSILON_BITS: AtomicU64 = AtomicU64::new(1e-9f64.to_bits());

/// Tolerance used by the floating-point carriers.
pub fn float_epsilon() -> f64 {
    f64::from_bits(FLOAT_EPSILON_BITS.load(AtomicOrdering::Relaxed))
}

/// Sets the tolerance used by the floating-point carriers.
pub fn set_float_epsilon(eps: f64) {
    assert!(eps.is_finite() && eps >= 0.0, "epsilon must be finite and non-negative");
    FLOAT_EPSILON_BITS.store(eps.to_bits(), AtomicOrdering::Relaxed);
}

fn split_fraction(token: &str) -> Option<(&str, &str)> {
    let (num, den) = token.split_once('/')?;
    if num.is_empty() || den.is_empty() {
        return None;
    }
    Some((num, den))
}

fn parse_exact_decimal(token: &str) -> Option<BigRational> {
    let (negative, body) = match token.as_bytes().first()? {
        b'-' => (true, &token[1..]),
        b'+' => (false, &token[1..]),
        _ => (false, token),
    };
    let (int_part, frac_part) = match body.split_once('.') {
        Some((i, f)) => (i, f),
        None => (body, ""),
    };
    if int_part.is_empty() && frac_part.is_empty() {
        return None;
    }
    if !int_part.bytes().chain(frac_part.bytes()).all(|c| c.is_ascii_digit()) {
        return None;
    }
    let digits = format!("{int_part}{frac_part}");
    let numer = BigInt::from_str(&digits).ok()?;
    let denom = num_traits::pow(BigInt::from(10u32), frac_part.len());
    let value = BigRational::new(numer, denom);
    Some(if negative { -value } else { value })
}

impl Number for BigRational {
    const EXACT: bool = true;

    fn compare(&self, other: &Self) -> Ordering {
        self.cmp(other)
    }

    fn parse_token(token: &str) -> Option<Self> {
        match split_fraction(token) {
            Some((num, den)) => {
                let num = parse_exact_decimal(num)?;
                let den = parse_exact_decimal(den)?;
                if den.is_zero() {
                    None
                } else {
                    Some(num / den)
                }
            }
            None => parse_exact_decimal(token),
        }
    }
}

macro_rules! float_number {
    ($t:ty) => {
        impl Number for $t {
            const EXACT: bool = false;

            fn compare(&self, other: &Self) -> Ordering {
                let eps = float_epsilon() as $t;
                if (self - other).abs() <= eps {
                    Ordering::Equal
                } else if self < other {
                    Ordering::Less
                } else {
                    Ordering::Greater
                }
            }

            fn parse_token(token: &str) -> Option<Self> {
                let value = match split_fraction(token) {
                    Some((num, den)) => {
                        let den: $t = den.parse().ok()?;
                        if den == 0.0 {
                            return None;
                        }
                        num.parse::<$t>().ok()? / den
                    }
                    None => token.parse().ok()?,
                };
                value.is_finite().then_some(value)
            }
        }
    };
}

float_number!(f64);
float_number!(f32);

/// The max-plus semifield over a carrier `T`: `⊕ = max`, `⊗ = +`,
/// zero is the bottom element, one is the carrier's `0`.
#[derive(Clone, Debug)]
pub enum MaxPlus<T> {
    Bottom,
    Finite(T),
}

impl<T: Number> MaxPlus<T> {
    pub fn finite(value: T) -> Self {
        MaxPlus::Finite(value)
    }

    pub fn from_i64(value: i64) -> Self {
        MaxPlus::Finite(T::from_i64(value).expect("integer representable in carrier"))
    }

    pub fn value(&self) -> Option<&T> {
        match self {
            MaxPlus::Bottom => None,
            MaxPlus::Finite(v) => Some(v),
        }
    }
}

impl<T: Number> PartialEq for MaxPlus<T> {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl<T: Number> Eq for MaxPlus<T> {}

impl<T: Number> PartialOrd for MaxPlus<T> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl<T: Number> Ord for MaxPlus<T> {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (MaxPlus::Bottom, MaxPlus::Bottom) => Ordering::Equal,
            (MaxPlus::Bottom, MaxPlus::Finite(_)) => Ordering::Less,
            (MaxPlus::Finite(_), MaxPlus::Bottom) => Ordering::Greater,
            (MaxPlus::Finite(a), MaxPlus::Finite(b)) => a.compare(b),
        }
    }
}

impl<T: Number> Semifield for MaxPlus<T> {
    fn zero() -> Self {
        MaxPlus::Bottom
    }

    fn one() -> Self {
        MaxPlus::Finite(T::zero())
    }

    fn is_zero(&self) -> bool {
        matches!(self, MaxPlus::Bottom)
    }

    fn add(&self, other: &Self) -> Self {
        if self >= other {
            self.clone()
        } else {
            other.clone()
        }
    }

    fn mul(&self, other: &Self) -> Self {
        match (self, other) {
            (MaxPlus::Finite(a), MaxPlus::Finite(b)) => MaxPlus::Finite(a.clone() + b.clone()),
            _ => MaxPlus::Bottom,
        }
    }

    fn inv(&self) -> Result<Self> {
        match self {
            MaxPlus::Bottom => Err(Error::ZeroInverse),
            MaxPlus::Finite(v) => Ok(MaxPlus::Finite(-v.clone())),
        }
    }

    fn pow(&self, exp: i64) -> Result<Self> {
        match self {
            MaxPlus::Bottom if exp < 0 => Err(Error::ZeroInverse),
            MaxPlus::Bottom if exp == 0 => Ok(Self::one()),
            MaxPlus::Bottom => Ok(MaxPlus::Bottom),
            MaxPlus::Finite(v) => {
                let factor = T::from_i64(exp).expect("exponent representable in carrier");
                Ok(MaxPlus::Finite(v.clone() * factor))
            }
        }
    }
}

impl<T: Number> Display for MaxPlus<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MaxPlus::Bottom => f.pad("-inf"),
            MaxPlus::Finite(v) => f.pad(&v.to_string()),
        }
    }
}

/// Tokens accepted for the zero element.
pub const ZERO_ALIASES: [&str; 3] = ["-inf", ".", "@"];

impl<T: Number> FromStr for MaxPlus<T> {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let token = s.trim();
        if ZERO_ALIASES.contains(&token) {
            return Ok(MaxPlus::Bottom);
        }
        T::parse_token(token)
            .map(MaxPlus::Finite)
            .ok_or_else(|| Error::BadToken {
                token: token.to_string(),
                line: 0,
                column: 0,
            })
    }
}

impl<T: Number> From<T> for MaxPlus<T> {
    fn from(value: T) -> Self {
        MaxPlus::Finite(value)
    }
}

/// Convenience constructor for exact rationals `numer/denom`.
pub fn ratio(numer: i64, denom: i64) -> BigRational {
    BigRational::new(BigInt::from(numer), BigInt::from(denom))
}
