//! Outward-rounded interval arithmetic and the analytic side of the sign
//! proofs: the Bessel function `I₋₁`, closed-form main terms and error
//! bounds of the coefficient families, and certified dominance.

mod audit;
mod bessel;
mod enclosure;
mod expr;
mod family;
mod majorant;

pub use audit::{chord_length, constant_audits, ConstantAudit};
pub use bessel::{bessel_im1, wang_bounds, wang_bounds_hold};
pub use enclosure::{Enclosure, Verdict};
pub use expr::Expr;
pub use family::{
    dominance, dominance_at, eventual_dominance_certificate, DominanceReport,
    EventualCertificate, FamilyModel, DEFAULT_PRECISION, PRECISION_CAP,
};
pub use majorant::{colored_partition_majorant, majorization_check};
