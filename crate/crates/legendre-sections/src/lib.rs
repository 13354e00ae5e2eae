//! Elliptic curves over function fields: the Legendre family, its sections,
//! exact multiples Aₙ/Bₙ, and the height bookkeeping around them.

mod curve;
mod error;
mod fraction;
mod heights;
mod multm;
mod psi;

pub use curve::{sigma_section, tau_section, CurveFF, SectionPoint};
pub use error::SectionError;
pub use fraction::{
    abscissa_fraction, canonical_height_estimate, degree_profile, expected_degrees, integer_pair,
    sigma_sequence, AbscissaFraction, CanonicalHeightEstimate,
};
pub use heights::{
    curve_height, lift_to, naive_height_point, near_origin_shift_check, pole_valuation_pairs,
    zimmer_check, NearOriginReport, ZimmerReport,
};
pub use multm::{
    mult_by_m_abscissa, mult_map_matches_group_law, mult_map_report, FieldPoly, MultMapReport,
};
pub use psi::PsiSequence;
