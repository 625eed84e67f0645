//! Numeric cross-validation: η, ϑ and ψ as complex balls, seeded checks of
//! their transformation laws and of the ψ-product transformation, the
//! Farey dissection, and coefficient recovery by arc integration.
//!
//! Nothing here feeds a certificate. The exact engine in [`crate::qseries`]
//! is ground truth; this module confirms the formulas that the analytic
//! bounds rely on.

mod complex;
mod farey;
mod functions;
mod identities;
mod quadrature;

pub use complex::ComplexHP;
pub use farey::{farey_arcs, FareyArc};
pub use functions::{eta, pochhammer_inf, psi, psi_via_theta, theta, theta_sum};
pub use identities::{
    check_eta, check_exact_transform_algebra, check_product_transform, check_psi, check_quasi,
    check_split, check_theta, check_theta_sum, run_identity, Identity, IdentityReport, DEFAULT_SEED,
};
pub use quadrature::{
    arc_spotcheck, numeric_coefficient, romberg, ArcSpotCheck, NumericEstimate,
    QUAD_TOLERANCE,
};
