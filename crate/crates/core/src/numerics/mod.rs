//! Arbitrary-precision arithmetic facade and the extrapolation engine.
//!
//! [`BigReal`] wraps an MPFR floating-point number bound to an explicit
//! working precision. Every elementary operation (add, mul, div, ln, exp,
//! pow) is correctly rounded at the result precision, which for binary
//! operations is the larger of the two operand precisions.

mod extrapolate;
mod reference;

pub use extrapolate::{
    estimate_leading_power, richardson_extrapolate, ConstantEstimate, ExtrapolationConfig,
};
pub use reference::{const_pi, zeta3_reference};

use crate::error::{Error, Result};
use rug::float::Round;
use rug::ops::Pow;
use rug::{Float, Integer, Rational};
use std::cmp::Ordering;
use std::fmt;

/// Smallest precision accepted anywhere in the crate.
pub const MIN_PRECISION_BITS: u32 = 64;

/// An arbitrary-precision real number bound to an explicit working
/// precision in bits.
///
/// Invariants: precision is at least [`MIN_PRECISION_BITS`]; elementary
/// operations are correctly rounded (≤ 0.5 ulp) at the result precision.
#[derive(Clone, Debug)]
pub struct BigReal(Float);

pub(crate) fn check_precision(precision_bits: u32) -> Result<()> {
    if precision_bits < MIN_PRECISION_BITS {
        return Err(Error::invalid(format!(
            "precision must be at least {MIN_PRECISION_BITS} bits, got {precision_bits}"
        )));
    }
    Ok(())
}

impl BigReal {
    /// Zero at the given precision.
    pub fn zero(precision_bits: u32) -> Result<Self> {
        check_precision(precision_bits)?;
        Ok(BigReal(Float::new(precision_bits)))
    }

    pub fn from_u64(value: u64, precision_bits: u32) -> Result<Self> {
        check_precision(precision_bits)?;
        Ok(BigReal(Float::with_val(precision_bits, value)))
    }

    pub fn from_i64(value: i64, precision_bits: u32) -> Result<Self> {
        check_precision(precision_bits)?;
        Ok(BigReal(Float::with_val(precision_bits, value)))
    }

    pub fn from_integer(value: &Integer, precision_bits: u32) -> Result<Self> {
        check_precision(precision_bits)?;
        Ok(BigReal(Float::with_val(precision_bits, value)))
    }

    pub fn from_rational(value: &Rational, precision_bits: u32) -> Result<Self> {
        check_precision(precision_bits)?;
        Ok(BigReal(Float::with_val(precision_bits, value)))
    }

    /// Exact power of two `2^exp`, handy for tolerances such as `2^-240`.
    pub fn pow2(exp: i32, precision_bits: u32) -> Result<Self> {
        check_precision(precision_bits)?;
        Ok(BigReal(Float::with_val(precision_bits, 1u32) << exp))
    }

    /// Parses a decimal string (e.g. `"0.1"`, `"1e-12"`), correctly
    /// rounded to the requested precision.
    pub fn parse(text: &str, precision_bits: u32) -> Result<Self> {
        check_precision(precision_bits)?;
        let parsed = Float::parse(text)
            .map_err(|e| Error::invalid(format!("cannot parse {text:?} as a real: {e}")))?;
        Ok(BigReal(Float::with_val(precision_bits, parsed)))
    }

    pub fn precision_bits(&self) -> u32 {
        self.0.prec()
    }

    /// Rounds to a (possibly different) precision.
    pub fn with_precision(&self, precision_bits: u32) -> Result<Self> {
        check_precision(precision_bits)?;
        Ok(BigReal(Float::with_val(precision_bits, &self.0)))
    }

    pub fn is_finite(&self) -> bool {
        self.0.is_finite()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_positive(&self) -> bool {
        self.0.is_sign_positive() && !self.0.is_zero()
    }

    pub fn ln(&self) -> Self {
        BigReal(Float::with_val(self.0.prec(), self.0.ln_ref()))
    }

    /// `ln(1 + self)`, accurate for small `self`.
    pub fn ln_1p(&self) -> Self {
        BigReal(Float::with_val(self.0.prec(), self.0.ln_1p_ref()))
    }

    pub fn exp(&self) -> Self {
        BigReal(Float::with_val(self.0.prec(), self.0.exp_ref()))
    }

    pub fn sqrt(&self) -> Self {
        BigReal(Float::with_val(self.0.prec(), self.0.sqrt_ref()))
    }

    pub fn abs(&self) -> Self {
        BigReal(Float::with_val(self.0.prec(), self.0.abs_ref()))
    }

    pub fn recip(&self) -> Self {
        BigReal(Float::with_val(self.0.prec(), self.0.recip_ref()))
    }

    /// Integer power, correctly rounded as a single operation.
    pub fn pow_i64(&self, exponent: i64) -> Self {
        BigReal(Float::with_val(self.0.prec(), (&self.0).pow(exponent)))
    }

    /// Real power `self^exponent`.
    pub fn pow(&self, exponent: &BigReal) -> Self {
        let prec = self.0.prec().max(exponent.0.prec());
        BigReal(Float::with_val(prec, (&self.0).pow(&exponent.0)))
    }

    pub fn min(&self, other: &BigReal) -> BigReal {
        if self <= other {
            self.clone()
        } else {
            other.clone()
        }
    }

    pub fn max(&self, other: &BigReal) -> BigReal {
        if self >= other {
            self.clone()
        } else {
            other.clone()
        }
    }

    /// One unit in the last place of `self`: `2^(exponent - precision)`.
    /// For zero this degenerates to `2^-precision`.
    pub fn ulp(&self) -> BigReal {
        let prec = self.0.prec();
        let exp = self.0.get_exp().unwrap_or(0);
        BigReal(Float::with_val(prec, 1u32) << (exp - prec as i32))
    }

    pub fn to_f64(&self) -> f64 {
        self.0.to_f64()
    }

    /// Decimal string with `digits` significant digits, round-to-nearest.
    pub fn to_decimal_string(&self, digits: usize) -> String {
        let (sign, mantissa, exp) = self.0.to_sign_string_exp_round(10, Some(digits), Round::Nearest);
        if self.0.is_zero() {
            return "0".to_string();
        }
        if !self.0.is_finite() {
            return self.0.to_string();
        }
        let sign = if sign { "-" } else { "" };
        let exp = exp.unwrap_or(0);
        // to_sign_string_exp places the decimal point before the mantissa;
        // normalize to d.ddd e(exp-1).
        let (head, tail) = mantissa.split_at(1);
        if tail.is_empty() {
            format!("{sign}{head}e{}", exp - 1)
        } else {
            format!("{sign}{head}.{tail}e{}", exp - 1)
        }
    }

    pub(crate) fn as_float(&self) -> &Float {
        &self.0
    }

    pub(crate) fn from_float(f: Float) -> Self {
        debug_assert!(f.prec() >= MIN_PRECISION_BITS);
        BigReal(f)
    }
}

impl fmt::Display for BigReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

impl PartialEq for BigReal {
    fn eq(&self, other: &Self) -> bool {
        self.0 == other.0
    }
}

impl PartialOrd for BigReal {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        self.0.partial_cmp(&other.0)
    }
}

macro_rules! binary_op {
    ($trait:ident, $method:ident) => {
        impl std::ops::$trait<&BigReal> for &BigReal {
            type Output = BigReal;
            fn $method(self, rhs: &BigReal) -> BigReal {
                let prec = self.0.prec().max(rhs.0.prec());
                BigReal(Float::with_val(prec, std::ops::$trait::$method(&self.0, &rhs.0)))
            }
        }
        impl std::ops::$trait<BigReal> for &BigReal {
            type Output = BigReal;
            fn $method(self, rhs: BigReal) -> BigReal {
                std::ops::$trait::$method(self, &rhs)
            }
        }
        impl std::ops::$trait<&BigReal> for BigReal {
            type Output = BigReal;
            fn $method(self, rhs: &BigReal) -> BigReal {
                std::ops::$trait::$method(&self, rhs)
            }
        }
        impl std::ops::$trait<BigReal> for BigReal {
            type Output = BigReal;
            fn $method(self, rhs: BigReal) -> BigReal {
                std::ops::$trait::$method(&self, &rhs)
            }
        }
    };
}

binary_op!(Add, add);
binary_op!(Sub, sub);
binary_op!(Mul, mul);
binary_op!(Div, div);

impl std::ops::Neg for &BigReal {
    type Output = BigReal;
    fn neg(self) -> BigReal {
        BigReal(Float::with_val(self.0.prec(), -&self.0))
    }
}

impl std::ops::Neg for BigReal {
    type Output = BigReal;
    fn neg(mut self) -> BigReal {
        self.0 = -self.0;
        self
    }
}

/// Number of whole decimal digits on which `computed` matches `target`:
/// `floor(-log10 |computed - target|)` clamped at zero, and capped by the
/// working precision when the two values are bit-identical.
pub fn matched_digits(computed: &BigReal, target: &BigReal) -> u32 {
    let diff = (computed - target).abs();
    if diff.is_zero() {
        // Identical at working precision; report the digits the precision carries.
        return (computed.precision_bits() as f64 * std::f64::consts::LOG10_2) as u32;
    }
    let log10 = Float::with_val(64, diff.as_float().log10_ref());
    let d = (-log10).to_f64().floor();
    if d < 0.0 {
        0
    } else {
        d as u32
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn precision_below_minimum_is_rejected() {
        assert!(BigReal::from_u64(1, 63).is_err());
        assert!(BigReal::parse("1.5", 0).is_err());
        assert!(BigReal::from_u64(1, 64).is_ok());
    }

    #[test]
    fn binary_ops_promote_precision() {
        let a = BigReal::from_u64(3, 64).unwrap();
        let b = BigReal::from_u64(5, 192).unwrap();
        assert_eq!((&a + &b).precision_bits(), 192);
        assert_eq!((&a * &b).precision_bits(), 192);
    }

    #[test]
    fn parse_and_format_round_trip() {
        let x = BigReal::parse("0.125", 128).unwrap();
        assert_eq!(x.to_f64(), 0.125);
        let s = x.to_decimal_string(5);
        assert!(s.starts_with("1.2500"), "{s}");
    }

    #[test]
    fn ulp_scales_with_exponent() {
        let x = BigReal::from_u64(1, 64).unwrap();
        assert_eq!(x.ulp().to_f64(), 2f64.powi(-63));
        let y = BigReal::from_u64(1 << 20, 64).unwrap();
        assert_eq!(y.ulp().to_f64(), 2f64.powi(-43));
    }

    #[test]
    fn matched_digits_counts_decimal_agreement() {
        let a = BigReal::parse("1.00000000", 128).unwrap();
        let b = BigReal::parse("1.00000001", 128).unwrap();
        assert_eq!(matched_digits(&a, &b), 8);
        assert_eq!(matched_digits(&a, &a), 38);
        let far = BigReal::parse("7.5", 128).unwrap();
        assert_eq!(matched_digits(&a, &far), 0);
    }

    #[test]
    fn pow2_is_exact() {
        let t = BigReal::pow2(-240, 256).unwrap();
        let one = BigReal::from_u64(1, 256).unwrap();
        let back = t.pow_i64(-1);
        assert_eq!(&back * &t, one);
    }
}
