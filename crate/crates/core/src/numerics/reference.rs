//! Reference constants: π and ζ(3).

use super::{check_precision, BigReal};
use crate::error::Result;
use rug::float::Constant;
use rug::{Float, Integer};

/// π, correctly rounded at the requested precision (error ≤ 0.5 ulp).
pub fn const_pi(precision_bits: u32) -> Result<BigReal> {
    check_precision(precision_bits)?;
    Ok(BigReal::from_float(Float::with_val(
        precision_bits,
        Constant::Pi,
    )))
}

/// ζ(3) by the fast alternating central-binomial series
///
/// ```text
/// ζ(3) = (5/2) Σ_{k≥1} (-1)^(k-1) / (k³ C(2k,k))
/// ```
///
/// Terms shrink like 4^-k, so the truncation error is bounded by the first
/// omitted term. Summation runs with 64 guard bits; the returned value is
/// within 10 ulp of ζ(3) at the requested precision (in practice ≤ 1 ulp).
pub fn zeta3_reference(precision_bits: u32) -> Result<BigReal> {
    check_precision(precision_bits)?;
    let work = precision_bits + 64;
    let cutoff = Float::with_val(work, 1u32) << -((precision_bits as i32) + 32);

    let mut total = Float::new(work);
    let mut k = 1u32;
    loop {
        let binom = Integer::binomial_u(2 * k, k).complete();
        let denom = Float::with_val(work, Integer::from(k).pow(3) * binom);
        let term = Float::with_val(work, 5u32) / (2u32 * denom);
        if k % 2 == 1 {
            total += &term;
        } else {
            total -= &term;
        }
        if term < cutoff {
            break;
        }
        k += 1;
    }
    Ok(BigReal::from_float(Float::with_val(precision_bits, total)))
}

use rug::ops::Pow;
use rug::Complete;

#[cfg(test)]
mod tests {
    use super::*;
    use rug::Rational;

    // Machin-type oracle for π, independent of MPFR's Constant::Pi:
    // π = 16 arctan(1/5) - 4 arctan(1/239) with the arctangent series
    // summed in exact rationals. The truncation error is bounded by the
    // first omitted term (alternating series).
    fn machin_pi_oracle(terms: u32) -> (Rational, Rational) {
        fn arctan_inv(x: u32, terms: u32) -> (Rational, Rational) {
            let mut sum = Rational::new();
            let x2 = Integer::from(x).pow(2);
            let mut power = Integer::from(x);
            for i in 0..terms {
                let term = Rational::from((1u32, Integer::from(2 * i + 1) * &power));
                if i % 2 == 0 {
                    sum += term;
                } else {
                    sum -= term;
                }
                power *= &x2;
            }
            let bound = Rational::from((1u32, Integer::from(2 * terms + 1) * power));
            (sum, bound)
        }
        let (a5, b5) = arctan_inv(5, terms);
        let (a239, b239) = arctan_inv(239, terms);
        let value = Rational::from(16u32) * a5 - Rational::from(4u32) * a239;
        let bound = Rational::from(16u32) * b5 + Rational::from(4u32) * b239;
        (value, bound)
    }

    #[test]
    fn pi_matches_machin_oracle() {
        // 60 terms give far more than 77 decimal digits of the oracle.
        let (oracle, bound) = machin_pi_oracle(60);
        for bits in [64u32, 128, 256] {
            let pi = const_pi(bits).unwrap();
            let diff = (&pi - &BigReal::from_rational(&oracle, bits + 64).unwrap()).abs();
            let allowance =
                &BigReal::from_rational(&bound, 96).unwrap() + &pi.ulp();
            assert!(diff <= allowance, "pi at {bits} bits off by {diff}");
        }
    }

    #[test]
    fn pi_precision_monotonicity() {
        let lo = const_pi(64).unwrap();
        let hi = const_pi(256).unwrap();
        let diff = (&hi - &lo).abs();
        assert!(diff <= lo.ulp());
    }

    #[test]
    fn pi_rejects_low_precision() {
        assert!(const_pi(63).is_err());
    }

    #[test]
    fn zeta3_frozen_digits() {
        // Leading digits cross-checked against the direct-sum oracle in
        // tests/oracles.rs.
        let z = zeta3_reference(128).unwrap();
        let s = z.to_decimal_string(30);
        assert!(s.starts_with("1.2020569031595942853997381615"), "{s}");
    }

    #[test]
    fn zeta3_precision_monotonicity() {
        let lo = zeta3_reference(64).unwrap();
        let hi = zeta3_reference(128).unwrap();
        let diff = (&hi - &lo).abs();
        let ten_ulp = &BigReal::from_u64(10, 64).unwrap() * &lo.ulp();
        assert!(diff <= ten_ulp);
    }

    #[test]
    fn zeta3_rejects_zero_precision() {
        assert!(zeta3_reference(0).is_err());
    }
}
