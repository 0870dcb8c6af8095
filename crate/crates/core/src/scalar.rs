//! Numeric backends.
//!
//! Every operator in this crate is generic over [`Scalar`], which has two
//! implementations: [`Rational`] (arbitrary-precision exact rationals) and
//! `f64`. The backend is chosen once per computation; the two never mix.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// Exact-mode scalar.
pub type Rational = BigRational;

/// Past this many factors a gamma ratio with integer argument gap is
/// evaluated transcendentally in float mode instead of as a product.
const MAX_PRODUCT_FACTORS: i64 = 4096;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum NumericMode {
    Exact,
    Float,
}

impl NumericMode {
    pub fn as_str(self) -> &'static str {
        match self {
            NumericMode::Exact => "exact",
            NumericMode::Float => "float",
        }
    }
}

impl fmt::Display for NumericMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for NumericMode {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s.trim().to_ascii_lowercase().as_str() {
            "exact" => Ok(NumericMode::Exact),
            "float" => Ok(NumericMode::Float),
            other => Err(format!("unknown numeric mode {other:?} (expected exact or float)")),
        }
    }
}

/// A real number in one of the two numeric modes.
///
/// `Display` is the canonical text form: `p/q` (or `p` for integers) in
/// exact mode and the shortest round-trip decimal in float mode. Parsing
/// that text back with [`Scalar::parse`] yields the identical value.
pub trait Scalar:
    Clone
    + fmt::Debug
    + fmt::Display
    + PartialEq
    + PartialOrd
    + Send
    + Sync
    + 'static
    + Zero
    + One
    + Neg<Output = Self>
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + for<'a> Add<&'a Self, Output = Self>
    + for<'a> Sub<&'a Self, Output = Self>
    + for<'a> Mul<&'a Self, Output = Self>
    + for<'a> Div<&'a Self, Output = Self>
{
    const MODE: NumericMode;

    fn from_i64(value: i64) -> Self;

    fn from_ratio(numer: i64, denom: i64) -> Result<Self>;

    /// Parses `p/q`, `p`, and (float mode only) decimal literals.
    fn parse(text: &str) -> Result<Self>;

    fn is_integer(&self) -> bool;

    fn is_finite(&self) -> bool;

    fn abs(&self) -> Self;

    fn to_f64(&self) -> f64;

    /// Exact binary value of a finite float; non-finite input maps to zero
    /// in exact mode.
    fn from_f64(value: f64) -> Self;

    /// `Γ(a) / Γ(b)`.
    ///
    /// Integer gaps `a - b` are evaluated as finite products in both modes.
    /// Exact mode rejects non-integer gaps with [`Error::Mode`].
    fn gamma_ratio(a: &Self, b: &Self) -> Result<Self>;

    /// Smallest detectable upward perturbation: one ulp in float mode,
    /// `1/10^6` in exact mode.
    fn nudge(&self) -> Self;

    fn serialize_value<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error>;

    fn is_non_positive_integer(&self) -> bool {
        self.is_integer() && *self <= Self::zero()
    }
}

fn check_poles<S: Scalar>(a: &S, b: &S) -> Result<()> {
    for arg in [a, b] {
        if arg.is_non_positive_integer() {
            return Err(Error::Pole {
                argument: arg.to_string(),
            });
        }
    }
    Ok(())
}

/// `Γ(a)/Γ(b)` for `a - b = gap` an integer: rising product from the
/// smaller argument.
fn integer_gap_ratio<S: Scalar>(a: &S, b: &S, gap: i64) -> S {
    let (start, factors, invert) = if gap >= 0 { (b, gap, false) } else { (a, -gap, true) };
    let mut acc = S::one();
    let mut x = start.clone();
    for _ in 0..factors {
        acc = acc * &x;
        x = x + S::one();
    }
    if invert {
        S::one() / acc
    } else {
        acc
    }
}

impl Scalar for Rational {
    const MODE: NumericMode = NumericMode::Exact;

    fn from_i64(value: i64) -> Self {
        BigRational::from_integer(BigInt::from(value))
    }

    fn from_ratio(numer: i64, denom: i64) -> Result<Self> {
        if denom == 0 {
            return Err(Error::Parse {
                input: format!("{numer}/{denom}"),
                mode: "exact",
            });
        }
        Ok(BigRational::new(BigInt::from(numer), BigInt::from(denom)))
    }

    fn parse(text: &str) -> Result<Self> {
        let err = || Error::Parse {
            input: text.to_string(),
            mode: "exact",
        };
        let text = text.trim();
        let (numer, denom) = match text.split_once('/') {
            Some((p, q)) => (p.trim(), Some(q.trim())),
            None => (text, None),
        };
        let numer = parse_bigint(numer).ok_or_else(err)?;
        let denom = match denom {
            // The sign lives on the numerator.
            Some(q) if q.starts_with(['-', '+']) => return Err(err()),
            Some(q) => parse_bigint(q).ok_or_else(err)?,
            None => BigInt::one(),
        };
        if denom.is_zero() {
            return Err(err());
        }
        Ok(BigRational::new(numer, denom))
    }

    fn is_integer(&self) -> bool {
        BigRational::is_integer(self)
    }

    fn is_finite(&self) -> bool {
        true
    }

    fn abs(&self) -> Self {
        Signed::abs(self)
    }

    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }

    fn from_f64(value: f64) -> Self {
        BigRational::from_float(value).unwrap_or_else(BigRational::zero)
    }

    fn gamma_ratio(a: &Self, b: &Self) -> Result<Self> {
        check_poles(a, b)?;
        let gap = a - b;
        match gap.is_integer().then(|| gap.to_integer().to_i64()).flatten() {
            Some(gap) => Ok(integer_gap_ratio(a, b, gap)),
            None => Err(Error::Mode {
                what: format!("Γ({a})/Γ({b})"),
            }),
        }
    }

    fn nudge(&self) -> Self {
        self + BigRational::new(BigInt::one(), BigInt::from(1_000_000))
    }

    fn serialize_value<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

fn parse_bigint(text: &str) -> Option<BigInt> {
    let digits = text.strip_prefix(['-', '+']).unwrap_or(text);
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    text.parse().ok()
}

impl Scalar for f64 {
    const MODE: NumericMode = NumericMode::Float;

    fn from_i64(value: i64) -> Self {
        value as f64
    }

    fn from_ratio(numer: i64, denom: i64) -> Result<Self> {
        if denom == 0 {
            return Err(Error::Parse {
                input: format!("{numer}/{denom}"),
                mode: "float",
            });
        }
        Ok(numer as f64 / denom as f64)
    }

    fn parse(text: &str) -> Result<Self> {
        let err = || Error::Parse {
            input: text.to_string(),
            mode: "float",
        };
        let trimmed = text.trim();
        let value = if trimmed.contains('/') {
            // Round the exact quotient once rather than dividing two floats.
            let exact = Rational::parse(trimmed).map_err(|_| err())?;
            Scalar::to_f64(&exact)
        } else {
            // Reject "inf", "nan" and friends up front.
            if !trimmed
                .bytes()
                .all(|b| b.is_ascii_digit() || matches!(b, b'.' | b'-' | b'+' | b'e' | b'E'))
            {
                return Err(err());
            }
            trimmed.parse::<f64>().map_err(|_| err())?
        };
        if value.is_finite() {
            Ok(value)
        } else {
            Err(err())
        }
    }

    fn is_integer(&self) -> bool {
        self.is_finite() && self.fract() == 0.0
    }

    fn is_finite(&self) -> bool {
        f64::is_finite(*self)
    }

    fn abs(&self) -> Self {
        f64::abs(*self)
    }

    fn to_f64(&self) -> f64 {
        *self
    }

    fn from_f64(value: f64) -> Self {
        value
    }

    fn gamma_ratio(a: &Self, b: &Self) -> Result<Self> {
        check_poles(a, b)?;
        let (a, b) = (*a, *b);
        let gap = a - b;
        let value = if gap.fract() == 0.0 && gap.abs() <= MAX_PRODUCT_FACTORS as f64 {
            integer_gap_ratio(&a, &b, gap as i64)
        } else if a.abs() < 170.0 && b.abs() < 170.0 {
            libm::tgamma(a) / libm::tgamma(b)
        } else {
            let (ln_a, sign_a) = libm::lgamma_r(a);
            let (ln_b, sign_b) = libm::lgamma_r(b);
            f64::from(sign_a * sign_b) * (ln_a - ln_b).exp()
        };
        if value.is_finite() {
            Ok(value)
        } else {
            Err(Error::NonFinite)
        }
    }

    fn nudge(&self) -> Self {
        self.next_up()
    }

    fn serialize_value<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_f64(*self)
    }
}

/// `serialize_with` adapter for scalar fields.
pub(crate) fn serialize_scalar<T: Scalar, S: Serializer>(
    value: &T,
    serializer: S,
) -> Result<S::Ok, S::Error> {
    value.serialize_value(serializer)
}

pub(crate) fn serialize_opt_scalar<T: Scalar, S: Serializer>(
    value: &Option<T>,
    serializer: S,
) -> Result<S::Ok, S::Error> {
    match value {
        Some(v) => v.serialize_value(serializer),
        None => serializer.serialize_none(),
    }
}
