//! The Ξ-operator on sections of the Legendre family: exact evaluation,
//! its polynomial normal form Υ, pole-multiplicity scans, sharpness
//! witnesses, and the two-section tower ℚ(λ)(μ, ν).

mod biquad;
mod error;
mod scan;
mod sharpness;
mod upsilon;
mod xi;

pub use biquad::{
    conic_parametrisation, lambda_of_s, two_section_beta, Biquad, TwoSectionReport,
};
pub use error::XiError;
pub use scan::{
    multiplicity_report, pole_multiplicity_scan, scan_within_bounds, FactorMultiplicity,
    MultiplicityReport,
};
pub use sharpness::{
    eisenstein_at, eisenstein_report, sharpness_witness, torsion_factor_gcds, witness_abscissa,
    EisensteinReport, SharpnessReport,
};
pub use upsilon::{upsilon_form, UpsilonForm};
pub use xi::{
    multiplicity_bound, xi_apply, xi_height_ratio, xi_oddness_check, XiHeightRatio, XiResult,
};
