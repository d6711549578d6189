//! Exact positive rationals as prime → exponent maps.
//!
//! The finite products under verification carry exponents that grow like
//! N³; materializing them as integers is hopeless, but the exponent
//! vectors stay tiny. Multiplication is exponent addition, equality is map
//! equality, and a high-precision logarithm is a short weighted sum of
//! prime logarithms.

use crate::error::{Error, Result};
use crate::numerics::BigReal;
use rug::ops::Pow;
use rug::{Float, Integer, Rational};
use std::collections::BTreeMap;

/// Exact positive rational represented as a map prime → signed exponent.
/// No zero exponents are stored; the empty map is 1.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FactoredRational {
    exponents: BTreeMap<u64, Integer>,
}

/// Trial-division factorization; bases here are small (≤ ~10⁵).
fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    debug_assert!(n >= 1);
    let mut factors = Vec::new();
    let mut p = 2u64;
    while p * p <= n {
        if n % p == 0 {
            let mut mult = 0u32;
            while n % p == 0 {
                n /= p;
                mult += 1;
            }
            factors.push((p, mult));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        factors.push((n, 1));
    }
    factors
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut p = 2u64;
    while p * p <= n {
        if n % p == 0 {
            return false;
        }
        p += if p == 2 { 1 } else { 2 };
    }
    true
}

impl FactoredRational {
    /// The rational 1 (empty exponent map).
    pub fn one() -> Self {
        FactoredRational::default()
    }

    pub fn is_one(&self) -> bool {
        self.exponents.is_empty()
    }

    pub fn exponents(&self) -> &BTreeMap<u64, Integer> {
        &self.exponents
    }

    fn add_prime_power(&mut self, prime: u64, exponent: Integer) {
        if exponent == 0 {
            return;
        }
        match self.exponents.entry(prime) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(exponent);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += exponent;
                if *o.get() == 0 {
                    o.remove();
                }
            }
        }
    }

    /// Multiplies by `base^exponent` with a (possibly huge) integer exponent.
    pub fn mul_base_pow_int(&mut self, base: u64, exponent: &Integer) -> Result<()> {
        if base == 0 {
            return Err(Error::invalid("base must be positive"));
        }
        if base == 1 || *exponent == 0 {
            return Ok(());
        }
        for (p, mult) in factorize(base) {
            self.add_prime_power(p, Integer::from(exponent * mult));
        }
        Ok(())
    }

    /// Multiplies by `base^exponent`.
    pub fn mul_base_pow(&mut self, base: u64, exponent: i64) -> Result<()> {
        self.mul_base_pow_int(base, &Integer::from(exponent))
    }

    pub fn from_u64(n: u64) -> Result<Self> {
        let mut fr = FactoredRational::one();
        fr.mul_base_pow(n, 1)?;
        Ok(fr)
    }

    /// Exact `num/den`.
    pub fn from_ratio(num: u64, den: u64) -> Result<Self> {
        let mut fr = FactoredRational::one();
        fr.mul_base_pow(num, 1)?;
        fr.mul_base_pow(den, -1)?;
        Ok(fr)
    }

    pub fn mul_assign(&mut self, other: &FactoredRational) {
        for (p, e) in &other.exponents {
            self.add_prime_power(*p, e.clone());
        }
    }

    pub fn div_assign(&mut self, other: &FactoredRational) {
        for (p, e) in &other.exponents {
            self.add_prime_power(*p, Integer::from(-e));
        }
    }

    /// `self^exponent` (exponent map scaled).
    pub fn pow(&self, exponent: i64) -> Self {
        if exponent == 0 {
            return FactoredRational::one();
        }
        let exponents = self
            .exponents
            .iter()
            .map(|(p, e)| (*p, Integer::from(e * exponent)))
            .collect();
        FactoredRational { exponents }
    }

    /// `lhs / rhs` as a new map; the identity element iff the two agree.
    pub fn ratio(lhs: &FactoredRational, rhs: &FactoredRational) -> Self {
        let mut out = lhs.clone();
        out.div_assign(rhs);
        out
    }

    /// `n!` via the prime-exponent formula `e_p = Σ_i floor(n / p^i)`.
    pub fn factorial(n: u64) -> Self {
        let mut fr = FactoredRational::one();
        let mut p = 2u64;
        while p <= n {
            if is_prime(p) {
                let mut e = 0u64;
                let mut q = p;
                loop {
                    e += n / q;
                    match q.checked_mul(p) {
                        Some(next) if next <= n => q = next,
                        _ => break,
                    }
                }
                fr.add_prime_power(p, Integer::from(e));
            }
            p += if p == 2 { 1 } else { 2 };
        }
        fr
    }

    /// Exact binomial coefficient `C(n, k)`.
    pub fn binomial(n: u64, k: u64) -> Result<Self> {
        if k > n {
            return Err(Error::invalid(format!("binomial C({n},{k}) with k > n")));
        }
        let mut fr = FactoredRational::factorial(n);
        fr.div_assign(&FactoredRational::factorial(k));
        fr.div_assign(&FactoredRational::factorial(n - k));
        Ok(fr)
    }

    /// Natural logarithm `Σ e_p ln p`, summed with 64 guard bits and
    /// rounded once to the requested precision.
    pub fn ln(&self, precision_bits: u32) -> Result<BigReal> {
        crate::numerics::check_precision(precision_bits)?;
        let work = precision_bits + 64;
        let mut total = Float::new(work);
        for (p, e) in &self.exponents {
            total += Float::with_val(work, e) * Float::with_val(work, *p).ln();
        }
        Ok(BigReal::from_float(Float::with_val(precision_bits, total)))
    }

    /// Materializes the exact rational when small enough (≈ 64k bits of
    /// numerator/denominator); `None` when it would be astronomically large.
    pub fn to_rational(&self) -> Option<Rational> {
        let mut size_bits = 0f64;
        for (p, e) in &self.exponents {
            size_bits += e.to_f64().abs() * (*p as f64).log2();
            if size_bits > 65536.0 {
                return None;
            }
        }
        let mut num = Integer::from(1);
        let mut den = Integer::from(1);
        for (p, e) in &self.exponents {
            let mag = Integer::from(e.abs_ref()).to_u32()?;
            let pw = Integer::from(*p).pow(mag);
            if *e > 0 {
                num *= pw;
            } else {
                den *= pw;
            }
        }
        Some(Rational::from((num, den)))
    }
}

impl std::fmt::Display for FactoredRational {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.is_one() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self
            .exponents
            .iter()
            .map(|(p, e)| format!("{p}^{e}"))
            .collect();
        write!(f, "{}", parts.join(" * "))
    }
}
