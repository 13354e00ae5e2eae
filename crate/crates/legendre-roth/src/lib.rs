//! Diophantine approximation over function fields: Laurent expansions of
//! algebraic branches, continued fractions with exact approximation orders,
//! the effective Roth/Liouville bounds for a quartic example, Wang-style
//! instance checks, and the quasi-integrality survey of the section family.

mod cf;
mod coeff;
mod error;
mod expand;
mod gaps;
mod laurent;
mod liouville;
mod prop;
mod qi;
mod roth_example;
mod wang;

pub use cf::{approximation_order, cf_expand, Convergent, ORD_EXACT};
pub use coeff::{Coeff, Eisenstein};
pub use error::RothError;
pub use expand::{laurent_expand, quartic_minpoly, BivariatePoly};
pub use gaps::{zero_gap_stats, ZeroGapStats};
pub use laurent::{LaurentSeries, EXACT};
pub use liouville::{liouville_check, LiouvilleReport};
pub use prop::{roth_prop_check, RothAlternatives};
pub use qi::{quasi_integrality_report, QuasiIntegralityReport, QuasiIntegralityRow};
pub use roth_example::{alpha_series, roth_example_check, RothExampleReport};
pub use wang::{random_wang_instance, wang_lemma_check, WangInstance, WangOutcome};
