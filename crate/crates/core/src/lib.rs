//! Sign patterns of Rogers–Ramanujan type infinite products.
//!
//! The crate combines three independent layers:
//!
//! - [`qseries`]: exact truncated power series over GMP integers, used to
//!   expand products such as `1/R(q)^5` to tens of thousands of terms and
//!   read off coefficient signs.
//! - [`modular`]: exact rational bookkeeping of the modular transformation
//!   of ψ-products (Dedekind sums, λ, λ*, Ω, Δ, multiplier phases).
//! - [`analytic`]: outward-rounded interval arithmetic, the Bessel function
//!   `I_{-1}`, the closed-form main terms and error bounds, and certified
//!   dominance checks.
//!
//! [`circle`] cross-validates the transformation formulas numerically and
//! recovers coefficients from the circle method, and [`certifier`] assembles
//! exact finite checks and eventual dominance into JSON certificates.

pub mod analytic;
pub mod certifier;
pub mod circle;
pub mod cli;
mod error;
pub mod modular;
pub mod qseries;

pub use error::{Error, Result};
pub use rug::{Integer, Rational};
