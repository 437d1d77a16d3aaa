//! Scalar abstractions shared by every numeric module.
//!
//! Two families are used:
//!
//! * [`Real`]: IEEE floating point (`f32`, `f64`) for density-matrix work,
//!   where square roots and logarithms are unavoidable.
//! * [`Field`]: anything that supports exact or approximate field
//!   arithmetic with a notion of "is this zero". Implemented for the floats
//!   and for [`Rational`], which the quadratic-objective solver uses so that
//!   optima come out as exact fractions.

use std::fmt::{Debug, Display};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Float, FloatConst, FromPrimitive, Signed, ToPrimitive};

use crate::error::{Error, Result};

/// Arbitrary-precision reduced fraction.
pub type Rational = BigRational;

/// Floating-point scalar used throughout the density-matrix code.
pub trait Real:
    Float + FloatConst + FromPrimitive + Default + Debug + Display + Send + Sync + 'static
{
    /// Tolerance for Hermiticity, trace and normalisation checks.
    fn validation_tol() -> Self;

    /// Most negative eigenvalue still accepted as numerical noise.
    fn eigen_floor() -> Self;

    /// Converts an `f64` literal.
    #[inline]
    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("literal representable")
    }
}

impl Real for f64 {
    fn validation_tol() -> Self {
        1e-12
    }

    fn eigen_floor() -> Self {
        -1e-10
    }
}

impl Real for f32 {
    fn validation_tol() -> Self {
        1e-5
    }

    fn eigen_floor() -> Self {
        -1e-5
    }
}

/// Field arithmetic with a zero test, used by linear elimination and
/// principal-minor classification.
pub trait Field: Clone + PartialOrd + Signed + Debug {
    /// `true` when the value must be treated as zero: exact equality for
    /// rationals, a magnitude threshold relative to `scale` for floats.
    fn is_negligible(&self, scale: &Self) -> bool;

    fn from_i64(v: i64) -> Self;

    fn to_f64_lossy(&self) -> f64;
}

macro_rules! float_field {
    ($t:ty, $tol:expr) => {
        impl Field for $t {
            fn is_negligible(&self, scale: &Self) -> bool {
                self.abs() <= $tol * scale.abs().max(1.0)
            }

            fn from_i64(v: i64) -> Self {
                v as $t
            }

            fn to_f64_lossy(&self) -> f64 {
                *self as f64
            }
        }
    };
}

float_field!(f64, 1e-12);
float_field!(f32, 1e-5);

impl Field for Rational {
    fn is_negligible(&self, _scale: &Self) -> bool {
        num_traits::Zero::is_zero(self)
    }

    fn from_i64(v: i64) -> Self {
        Rational::from_integer(BigInt::from(v))
    }

    fn to_f64_lossy(&self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
}

/// Builds `num/den` as a [`Rational`].
pub fn ratio(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Formats a rational as `num/den`, always including the denominator.
pub fn format_rational(q: &Rational) -> String {
    format!("{}/{}", q.numer(), q.denom())
}

/// Parses `num/den`, an integer, or a finite decimal (`0.25`, `-1.5e-3`)
/// into an exact rational.
pub fn parse_rational(text: &str) -> Option<Rational> {
    let text = text.trim();
    if let Some((n, d)) = text.split_once('/') {
        let n: BigInt = n.trim().parse().ok()?;
        let d: BigInt = d.trim().parse().ok()?;
        if num_traits::Zero::is_zero(&d) {
            return None;
        }
        return Some(Rational::new(n, d));
    }

    let (mantissa, exponent) = match text.find(['e', 'E']) {
        Some(pos) => (&text[..pos], text[pos + 1..].parse::<i32>().ok()?),
        None => (text, 0),
    };
    let (negative, digits) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int_part, frac_part) = digits.split_once('.').unwrap_or((digits, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return None;
    }
    if !int_part
        .chars()
        .chain(frac_part.chars())
        .all(|c| c.is_ascii_digit())
    {
        return None;
    }
    let all_digits = format!("{int_part}{frac_part}");
    let mut value = Rational::from_integer(all_digits.parse::<BigInt>().ok()?);
    let scale = exponent - frac_part.len() as i32;
    let ten = Rational::from_integer(BigInt::from(10));
    let factor = num_traits::pow(ten, scale.unsigned_abs() as usize);
    if scale >= 0 {
        value *= factor;
    } else {
        value /= factor;
    }
    Some(if negative { -value } else { value })
}

/// `serde_with` adapter that writes a [`Rational`] as a `"num/den"` string
/// and reads anything [`parse_rational`] accepts.
pub struct RationalString;

impl serde_with::SerializeAs<Rational> for RationalString {
    fn serialize_as<S: serde::Serializer>(
        q: &Rational,
        s: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&format_rational(q))
    }
}

impl<'de> serde_with::DeserializeAs<'de, Rational> for RationalString {
    fn deserialize_as<D: serde::Deserializer<'de>>(
        d: D,
    ) -> std::result::Result<Rational, D::Error> {
        let text = <String as serde::Deserialize>::deserialize(d)?;
        parse_rational(&text)
            .ok_or_else(|| serde::de::Error::custom(format!("`{text}` is not a rational")))
    }
}

/// Lossy conversion of an exact rational to a floating-point scalar.
pub fn rational_to_real<T: Real>(q: &Rational) -> T {
    T::lit(q.to_f64().unwrap_or(f64::NAN))
}

/// `lo ≤ x ≤ hi` up to [`Real::validation_tol`].
pub(crate) fn in_range<T: Real>(x: T, lo: T, hi: T) -> bool {
    let tol = T::validation_tol();
    x >= lo - tol && x <= hi + tol
}

pub(crate) fn check_alpha<T: Real>(alpha: T) -> Result<()> {
    if !in_range(alpha, T::zero(), T::one()) {
        return Err(Error::ParameterDomain {
            name: "alpha",
            value: alpha.to_f64().unwrap_or(f64::NAN),
            reason: "must lie in [0, 1]",
        });
    }
    Ok(())
}

/// Square root that tolerates radicands down to `−validation_tol`.
pub(crate) fn checked_sqrt<T: Real>(radicand: T, quantity: &'static str) -> Result<T> {
    if radicand < -T::validation_tol() || radicand.is_nan() {
        return Err(Error::NegativeRadicand {
            quantity,
            radicand: radicand.to_f64().unwrap_or(f64::NAN),
        });
    }
    Ok(radicand.max(T::zero()).sqrt())
}
