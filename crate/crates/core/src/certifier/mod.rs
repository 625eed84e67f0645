//! Certificates for the three sign statements (exact check of a finite
//! range plus certified dominance beyond it), and exact desk-scale checks
//! of the proved and the eventual sign patterns.

mod certificate;
mod theorems;

pub use certificate::{
    certify, certify_with, recorded_omega, AsymptoticSection, Certificate, CertifyOptions,
    FiniteSection, MetaSection, SpecSection, Status, Target, SCHEMA_VERSION,
};
pub use theorems::{
    eventual_patterns, known_patterns, richmond_szekeres_scan, verify_known_theorems,
    ResidueVerdict, SignPattern, SignTable,
};
