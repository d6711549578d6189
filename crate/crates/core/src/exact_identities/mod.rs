//! Exact verification, for concrete N, of the finite-product identities
//! used to derive the closed forms: Wallis-partial rearrangements,
//! hyperfactorial product forms, and the quadratic-exponent double
//! products. Everything runs on prime-exponent maps; a check passes iff
//! `lhs / rhs` reduces to the empty map.
//!
//! Only exact `=` steps are checked here. Asymptotic `∼` steps are covered
//! numerically in [`crate::limit_lemmas`] and [`crate::constants`].

mod factored;

pub use factored::FactoredRational;

use crate::constants::hyperfactorial_exact;
use crate::error::{Error, Result};
use rug::{Integer, Rational};

/// Outcome of one identity check at one N. `holds` iff `lhs_div_rhs` is
/// the identity element; a failing check carries the nontrivial witness.
#[derive(Clone, Debug)]
pub struct IdentityResult {
    pub identity_id: String,
    pub n: u64,
    pub holds: bool,
    pub lhs_div_rhs: FactoredRational,
}

impl IdentityResult {
    fn from_sides(id: &str, n: u64, lhs: &FactoredRational, rhs: &FactoredRational) -> Self {
        let witness = FactoredRational::ratio(lhs, rhs);
        IdentityResult {
            identity_id: id.to_string(),
            n,
            holds: witness.is_one(),
            lhs_div_rhs: witness,
        }
    }
}

/// Identity ids accepted by [`check_identity`].
pub const IDENTITY_IDS: &[&str] = &[
    "prop32_partial",
    "prop33_inner",
    "prop33_hyper",
    "prop34_double",
    "prop34_middle",
    "prop34_rightmost",
    "prop34_first",
];

/// Dispatches an identity check by id.
pub fn check_identity(id: &str, n: u64) -> Result<IdentityResult> {
    match id {
        "prop32_partial" => check_prop32_partial(n),
        "prop33_inner" => check_prop33_inner(n),
        "prop33_hyper" => check_prop33_hyper(n),
        "prop34_double" => check_prop34_double(n),
        "prop34_middle" => check_prop34_middle(n),
        "prop34_rightmost" => check_prop34_rightmost(n),
        "prop34_first" => check_prop34_first(n),
        other => Err(Error::invalid(format!("unknown identity id {other:?}"))),
    }
}

fn check_cap(id: &str, n: u64, lo: u64, hi: u64) -> Result<()> {
    if n < lo {
        return Err(Error::invalid(format!("{id}: N must be at least {lo}, got {n}")));
    }
    if n > hi {
        return Err(Error::resource(format!(
            "{id}: N = {n} exceeds the cap {hi} (exponent growth)"
        )));
    }
    Ok(())
}

/// Partial Wallis product `∏_{j=1}^{N} (2j)² / ((2j-1)(2j+1))`,
/// increasing toward π/2.
pub fn wallis_partial(n: u64) -> Result<FactoredRational> {
    check_cap("wallis_partial", n, 1, 100_000)?;
    let mut fr = FactoredRational::one();
    for j in 1..=n {
        fr.mul_base_pow(2 * j, 2)?;
        fr.mul_base_pow(2 * j - 1, -1)?;
        fr.mul_base_pow(2 * j + 1, -1)?;
    }
    Ok(fr)
}

/// `∏_{j=1}^{2N} (1 + 1/j)^{(-1)^{j+1}} = ∏_{j=1}^{N} (2j)²/((2j-1)(2j+1))`
/// — the alternating-elimination rearrangement behind the Wallis route.
pub fn check_prop32_partial(n: u64) -> Result<IdentityResult> {
    check_cap("prop32_partial", n, 1, 100_000)?;
    let mut lhs = FactoredRational::one();
    for j in 1..=2 * n {
        let sign = if j % 2 == 1 { 1 } else { -1 };
        lhs.mul_base_pow(j + 1, sign)?;
        lhs.mul_base_pow(j, -sign)?;
    }
    let rhs = wallis_partial(n)?;
    Ok(IdentityResult::from_sides("prop32_partial", n, &lhs, &rhs))
}

/// `(1/2^N) ∏_{j=0}^{N-1} ∏_{k=1}^{j} (2k-1)(2k+1)³/((2k)³(2k+2))
///   = ∏_{k=1}^{N} (2k/(2k-1))^{2k-2N-1} (2k/(2k+1))^{2k-2N}`.
pub fn check_prop33_inner(n: u64) -> Result<IdentityResult> {
    check_cap("prop33_inner", n, 1, 200)?;
    let mut lhs = FactoredRational::one();
    lhs.mul_base_pow(2, -(n as i64))?;
    let mut inner = FactoredRational::one();
    for j in 0..n {
        if j >= 1 {
            let k = j; // extend the running inner product to k = j
            inner.mul_base_pow(2 * k - 1, 1)?;
            inner.mul_base_pow(2 * k + 1, 3)?;
            inner.mul_base_pow(2 * k, -3)?;
            inner.mul_base_pow(2 * k + 2, -1)?;
        }
        lhs.mul_assign(&inner);
    }
    let mut rhs = FactoredRational::one();
    for k in 1..=n {
        let e1 = 2 * k as i64 - 2 * n as i64 - 1;
        let e2 = 2 * k as i64 - 2 * n as i64;
        rhs.mul_base_pow(2 * k, e1 + e2)?;
        rhs.mul_base_pow(2 * k - 1, -e1)?;
        rhs.mul_base_pow(2 * k + 1, -e2)?;
    }
    Ok(IdentityResult::from_sides("prop33_inner", n, &lhs, &rhs))
}

/// `∏_{k=1}^{N} (2k/(2k-1))^{2k-1} (2k/(2k+1))^{2k}
///   = 2^{4N²+4N+1} C(2N,N) (4N+2) H(N)⁶ H(N+1)² / (H(2N) H(2N+2))`.
pub fn check_prop33_hyper(n: u64) -> Result<IdentityResult> {
    check_cap("prop33_hyper", n, 1, 200)?;
    let mut lhs = FactoredRational::one();
    for k in 1..=n {
        let e1 = 2 * k as i64 - 1;
        let e2 = 2 * k as i64;
        lhs.mul_base_pow(2 * k, e1 + e2)?;
        lhs.mul_base_pow(2 * k - 1, -e1)?;
        lhs.mul_base_pow(2 * k + 1, -e2)?;
    }
    let mut rhs = FactoredRational::one();
    rhs.mul_base_pow_int(2, &Integer::from(4 * n * n + 4 * n + 1))?;
    rhs.mul_assign(&FactoredRational::binomial(2 * n, n)?);
    rhs.mul_base_pow(4 * n + 2, 1)?;
    mul_hyper(&mut rhs, 1, n, 6)?;
    mul_hyper(&mut rhs, 1, n + 1, 2)?;
    mul_hyper(&mut rhs, 1, 2 * n, -1)?;
    mul_hyper(&mut rhs, 1, 2 * n + 2, -1)?;
    Ok(IdentityResult::from_sides("prop33_hyper", n, &lhs, &rhs))
}

/// The induction step of the quadratic-exponent case:
/// `∏_{j=0}^{N-1} ∏_{k=1}^{j} (2k-1)^{2k-1-2j}(2k+1)^{6k-1-6j} /
///  ((2k)^{6k-2-6j}(2k+2)^{2k-2j})` equals the single product over
/// `k = 1..N-1` with quadratic exponents in k and N.
pub fn check_prop34_double(n: u64) -> Result<IdentityResult> {
    check_cap("prop34_double", n, 2, 120)?;
    let mut lhs = FactoredRational::one();
    for j in 0..n {
        for k in 1..=j {
            let (kk, jj) = (k as i64, j as i64);
            lhs.mul_base_pow(2 * k - 1, 2 * kk - 1 - 2 * jj)?;
            lhs.mul_base_pow(2 * k + 1, 6 * kk - 1 - 6 * jj)?;
            lhs.mul_base_pow(2 * k, -(6 * kk - 2 - 6 * jj))?;
            lhs.mul_base_pow(2 * k + 2, -(2 * kk - 2 * jj))?;
        }
    }
    let mut rhs = FactoredRational::one();
    let nn = n as i64;
    for k in 1..n {
        let kk = k as i64;
        rhs.mul_base_pow(2 * k, 3 * kk * kk - (6 * nn - 1) * kk + 3 * nn * nn - nn)?;
        rhs.mul_base_pow(2 * k + 2, kk * kk - (2 * nn - 1) * kk + nn * nn - nn)?;
        rhs.mul_base_pow(2 * k - 1, -(kk * kk - 2 * nn * kk + nn * nn))?;
        rhs.mul_base_pow(2 * k + 1, -(3 * kk * kk - (6 * nn - 2) * kk + 3 * nn * nn - 2 * nn))?;
    }
    Ok(IdentityResult::from_sides("prop34_double", n, &lhs, &rhs))
}

/// `∏_{k=1}^{N} (2k)³(2k+2)/((2k-1)(2k+1)³)
///   = 2 ((2N+1)/(2N+2)) (∏_{k=1}^{N} 2k(2k+2)/(2k+1)²)²`.
pub fn check_prop34_middle(n: u64) -> Result<IdentityResult> {
    check_cap("prop34_middle", n, 1, 10_000)?;
    let mut lhs = FactoredRational::one();
    for k in 1..=n {
        lhs.mul_base_pow(2 * k, 3)?;
        lhs.mul_base_pow(2 * k + 2, 1)?;
        lhs.mul_base_pow(2 * k - 1, -1)?;
        lhs.mul_base_pow(2 * k + 1, -3)?;
    }
    let mut inner = FactoredRational::one();
    for k in 1..=n {
        inner.mul_base_pow(2 * k, 1)?;
        inner.mul_base_pow(2 * k + 2, 1)?;
        inner.mul_base_pow(2 * k + 1, -2)?;
    }
    let mut rhs = inner.pow(2);
    rhs.mul_base_pow(2, 1)?;
    rhs.mul_base_pow(2 * n + 1, 1)?;
    rhs.mul_base_pow(2 * n + 2, -1)?;
    Ok(IdentityResult::from_sides("prop34_middle", n, &lhs, &rhs))
}

/// `∏_{k=1}^{N} (2k-1)^{2k}(2k+1)^{6k+2}/((2k)^{6k+1}(2k+2)^{2k+1})`
/// expressed through the odd-over-even Wallis companion, a power of two,
/// a central binomial coefficient, and hyperfactorials.
pub fn check_prop34_rightmost(n: u64) -> Result<IdentityResult> {
    check_cap("prop34_rightmost", n, 1, 120)?;
    let mut lhs = FactoredRational::one();
    for k in 1..=n {
        let kk = k as i64;
        lhs.mul_base_pow(2 * k - 1, 2 * kk)?;
        lhs.mul_base_pow(2 * k + 1, 6 * kk + 2)?;
        lhs.mul_base_pow(2 * k, -(6 * kk + 1))?;
        lhs.mul_base_pow(2 * k + 2, -(2 * kk + 1))?;
    }
    let mut rhs = FactoredRational::one();
    for k in 1..=n {
        rhs.mul_base_pow(2 * k + 1, 2)?;
        rhs.mul_base_pow(2 * k, -1)?;
        rhs.mul_base_pow(2 * k + 2, -1)?;
    }
    rhs.mul_base_pow_int(2, &(-Integer::from(8 * n * n + 12 * n + 3)))?;
    rhs.mul_base_pow(4 * n + 2, -1)?;
    rhs.mul_assign(&FactoredRational::binomial(2 * n + 2, n + 1)?.pow(-2));
    mul_hyper(&mut rhs, 1, 2 * n, 1)?;
    mul_hyper(&mut rhs, 1, 2 * n + 2, 3)?;
    mul_hyper(&mut rhs, 1, n, -8)?;
    mul_hyper(&mut rhs, 1, n + 1, -8)?;
    Ok(IdentityResult::from_sides("prop34_rightmost", n, &lhs, &rhs))
}

/// The cubic-exponent product
/// `∏_{k=1}^{N} (2k)^{3k²+k}(2k+2)^{k²+k}/((2k-1)^{k²}(2k+1)^{3k²+2k})`
/// against its hyperfactorial form with quarter-integer exponents; both
/// sides are raised to the 12th power so every exponent is an integer.
pub fn check_prop34_first(n: u64) -> Result<IdentityResult> {
    check_cap("prop34_first", n, 1, 60)?;
    let mut lhs = FactoredRational::one();
    for k in 1..=n {
        let kk = k as i64;
        lhs.mul_base_pow(2 * k, 12 * (3 * kk * kk + kk))?;
        lhs.mul_base_pow(2 * k + 2, 12 * (kk * kk + kk))?;
        lhs.mul_base_pow(2 * k - 1, -12 * kk * kk)?;
        lhs.mul_base_pow(2 * k + 1, -12 * (3 * kk * kk + 2 * kk))?;
    }

    // 12 · ((8/3)N³ + 8N² + (22/3)N + 7/4) must be an integer for every N.
    let nn = Integer::from(n);
    let aggregate = Rational::from((8u32, 3u32)) * nn.clone().pow(3)
        + Rational::from(8u32) * nn.clone().pow(2)
        + Rational::from((22u32, 3u32)) * nn.clone()
        + Rational::from((7u32, 4u32));
    let twelve_fold = aggregate * Rational::from(12u32);
    assert!(
        twelve_fold.is_integer(),
        "12x the power-of-two exponent must be integral; transcription broken at N = {n}"
    );

    let mut rhs = FactoredRational::one();
    rhs.mul_base_pow_int(2, twelve_fold.numer())?;
    rhs.mul_base_pow(4 * n + 2, 3)?;
    mul_hyper(&mut rhs, 1, n, 24)?;
    mul_hyper(&mut rhs, 1, 2 * n + 2, 6)?;
    mul_hyper(&mut rhs, 2, n, 48)?;
    mul_hyper(&mut rhs, 2, n + 1, 48)?;
    mul_hyper(&mut rhs, 1, n + 1, -24)?;
    mul_hyper(&mut rhs, 1, 2 * n, -6)?;
    mul_hyper(&mut rhs, 2, 2 * n, -3)?;
    mul_hyper(&mut rhs, 2, 2 * n + 2, -9)?;
    Ok(IdentityResult::from_sides("prop34_first", n, &lhs, &rhs))
}

/// Multiplies `H_p(n)^exponent` into the accumulator.
fn mul_hyper(acc: &mut FactoredRational, p: u32, n: u64, exponent: i64) -> Result<()> {
    let h = hyperfactorial_exact(p, n)?;
    acc.mul_assign(&h.pow(exponent));
    Ok(())
}

use rug::ops::Pow;
