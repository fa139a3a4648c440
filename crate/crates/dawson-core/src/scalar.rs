//! Scalar abstraction: the same algebra runs exactly over big rationals and
//! fast over IEEE floats.

use std::fmt::{Debug, Display};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Float, FromPrimitive, Num, One, Signed, ToPrimitive, Zero};

/// Arithmetic required by the series recursion and the triangular machinery.
///
/// Implemented for `f32` and `f64` (rounding arithmetic) and for
/// [`BigRational`] (exact arithmetic). Code written against this trait can be
/// cross-checked bit-for-bit in rational mode and then run in floating mode.
pub trait Scalar:
    Clone + Debug + Display + PartialEq + Num + Signed + FromPrimitive + ToPrimitive
{
    /// True when arithmetic never rounds.
    const EXACT: bool;

    /// Embed an arbitrary-precision integer (binomial coefficients,
    /// factorials). Floating scalars may round or overflow to infinity.
    fn from_bigint(n: &BigInt) -> Self;

    /// Parse the shared text grammar: a decimal literal or a fraction `p/q`.
    fn parse_scalar(text: &str) -> std::result::Result<Self, String>;

    /// False only for non-finite floats; exact scalars are always finite.
    fn is_finite_scalar(&self) -> bool;

    /// |self| as `f64`, for error estimates and diagnostics only.
    fn magnitude(&self) -> f64 {
        self.to_f64().map(f64::abs).unwrap_or(f64::INFINITY)
    }
}

/// Floating-point scalar for quadrature and ODE integration.
pub trait Real: Scalar + Float + Send + Sync + 'static {}

impl<T: Scalar + Float + Send + Sync + 'static> Real for T {}

macro_rules! impl_scalar_float {
    ($t:ty) => {
        impl Scalar for $t {
            const EXACT: bool = false;

            fn from_bigint(n: &BigInt) -> Self {
                n.to_f64().unwrap_or(f64::NAN) as $t
            }

            fn parse_scalar(text: &str) -> std::result::Result<Self, String> {
                let text = text.trim();
                if let Some((num, den)) = text.split_once('/') {
                    let n: $t = num
                        .trim()
                        .parse()
                        .map_err(|_| format!("bad numerator in `{text}`"))?;
                    let d: $t = den
                        .trim()
                        .parse()
                        .map_err(|_| format!("bad denominator in `{text}`"))?;
                    if d == 0.0 {
                        return Err(format!("zero denominator in `{text}`"));
                    }
                    Ok(n / d)
                } else {
                    text.parse().map_err(|_| format!("bad number `{text}`"))
                }
            }

            fn is_finite_scalar(&self) -> bool {
                self.is_finite()
            }
        }
    };
}

impl_scalar_float!(f32);
impl_scalar_float!(f64);

impl Scalar for BigRational {
    const EXACT: bool = true;

    fn from_bigint(n: &BigInt) -> Self {
        BigRational::from_integer(n.clone())
    }

    fn parse_scalar(text: &str) -> std::result::Result<Self, String> {
        let text = text.trim();
        if let Some((num, den)) = text.split_once('/') {
            let n: BigInt = num
                .trim()
                .parse()
                .map_err(|_| format!("bad numerator in `{text}`"))?;
            let d: BigInt = den
                .trim()
                .parse()
                .map_err(|_| format!("bad denominator in `{text}`"))?;
            if d.is_zero() {
                return Err(format!("zero denominator in `{text}`"));
            }
            Ok(BigRational::new(n, d))
        } else {
            parse_decimal_rational(text)
        }
    }

    fn is_finite_scalar(&self) -> bool {
        true
    }
}

/// Exact conversion of a decimal literal (optional sign, fraction digits and
/// power-of-ten exponent) into a rational.
fn parse_decimal_rational(text: &str) -> std::result::Result<BigRational, String> {
    let (mantissa, exponent) = match text.split_once(['e', 'E']) {
        Some((m, e)) => (
            m,
            e.parse::<i32>()
                .map_err(|_| format!("bad exponent in `{text}`"))?,
        ),
        None => (text, 0),
    };
    let (mantissa, negative) = match mantissa.strip_prefix('-') {
        Some(rest) => (rest, true),
        None => (mantissa.strip_prefix('+').unwrap_or(mantissa), false),
    };
    let (int_part, frac_part) = match mantissa.split_once('.') {
        Some((i, f)) => (i, f),
        None => (mantissa, ""),
    };
    let digits: String = [int_part, frac_part].concat();
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return Err(format!("bad number `{text}`"));
    }
    let mut numer: BigInt = digits.parse().expect("digits only");
    let mut denom = BigInt::one();
    let shift = exponent - frac_part.len() as i32;
    if shift >= 0 {
        numer *= BigInt::from(10).pow(shift as u32);
    } else {
        denom = BigInt::from(10).pow(shift.unsigned_abs());
    }
    if negative {
        numer = -numer;
    }
    Ok(BigRational::new(numer, denom))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn parses_fractions_and_decimals() {
        assert_eq!(BigRational::parse_scalar("2/3").unwrap(), rat(2, 3));
        assert_eq!(BigRational::parse_scalar("-0.25").unwrap(), rat(-1, 4));
        assert_eq!(BigRational::parse_scalar("1.5e-2").unwrap(), rat(3, 200));
        assert_eq!(BigRational::parse_scalar("12").unwrap(), rat(12, 1));
        assert_eq!(f64::parse_scalar("1/4").unwrap(), 0.25);
        assert_eq!(f64::parse_scalar("-3.5").unwrap(), -3.5);
    }

    #[test]
    fn rejects_malformed_scalars() {
        assert!(BigRational::parse_scalar("1/0").is_err());
        assert!(BigRational::parse_scalar("abc").is_err());
        assert!(BigRational::parse_scalar("1.2.3").is_err());
        assert!(f64::parse_scalar("2/0").is_err());
    }

    #[test]
    fn bigint_embedding() {
        let n = BigInt::from(720);
        assert_eq!(f64::from_bigint(&n), 720.0);
        assert_eq!(BigRational::from_bigint(&n), rat(720, 1));
    }

    #[test]
    fn display_is_fraction_or_shortest_decimal() {
        assert_eq!(rat(-4, 1).to_string(), "-4");
        assert_eq!(rat(2, 3).to_string(), "2/3");
        assert_eq!(0.1f64.to_string(), "0.1");
    }
}
