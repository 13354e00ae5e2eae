//! Numerical side of the Legendre family: period frames, elliptic
//! logarithms, Betti coordinates, the Betti density measure, the
//! canonical-height integral, and torsion equidistribution counts.

mod betti;
mod carlson;
mod density;
mod error;
mod frame;
mod integral;
mod logmap;
mod multiplicity;
mod torsion;

pub use betti::{betti_coords, raw_coords, BettiCoords};
pub use carlson::{rd, rf};
pub use density::{
    betti_density, betti_density_guarded, sigma_log_derivative, DensityMethod, DensitySample,
    DEFAULT_EXCLUSION,
};
pub use error::BettiError;
pub use frame::{agm, periods, periods_agm, picard_fuchs_residual, PeriodFrame, SINGULAR_CUTOFF};
pub use integral::{height_integral, HeightIntegral, QuadParams, SectionChoice};
pub use logmap::{elliptic_log, lattice_distance, sigma_log};
pub use multiplicity::{betti_multiplicity, MultiplicityEstimate};
pub use torsion::{
    aberth_roots, disk_mass, max_root_residual, torsion_count, torsion_parameters, CountRegion,
    TorsionCount,
};
