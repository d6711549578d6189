//! Arbitrary-precision verification toolkit for a family of series limits
//! `e_{M,2s}`, their closed forms in terms of the Glaisher–Kinkelin constant
//! `A` and the Bendersky–Adamchik constant `B`, the exact finite-product
//! identities behind those closed forms, and the identity
//! `ζ(3) = 4π² ln(B)`.
//!
//! The crate is organized around small, pure modules:
//!
//! * [`numerics`] — the `BigReal` arbitrary-precision facade, reference
//!   constants (π, ζ(3)), and the generic Richardson extrapolation engine;
//! * [`series_limits`] — the defining series of `e_{M,2s}` with rigorous
//!   tail bounds and its termwise recursion;
//! * [`closed_forms`] — explicit expressions for `e_{M,2s}`, `M ≤ 3`;
//! * [`constants`] — generalized hyperfactorials and extraction of `A`
//!   and `B` from their defining asymptotic limits;
//! * [`limit_lemmas`] — numerical verification of the auxiliary limits;
//! * [`exact_identities`] — exact rational verification of the
//!   finite-product identities, on prime-exponent maps.
//!
//! Everything is deterministic: summation orders are fixed, and all
//! floating-point work happens in MPFR with explicit precisions.

pub mod closed_forms;
pub mod constants;
pub mod error;
pub mod exact_identities;
pub mod limit_lemmas;
pub mod numerics;
pub mod series_limits;

pub use error::{Error, Result};
pub use numerics::{BigReal, ConstantEstimate, ExtrapolationConfig, MIN_PRECISION_BITS};

/// Default working precision for verification runs, in bits.
pub const DEFAULT_PRECISION_BITS: u32 = 256;
