//! Exact arithmetic over ℚ for one-variable function fields.
//!
//! The crate provides the coefficient bedrock used everywhere else:
//! arbitrary-precision rational polynomials ([`ExactPoly`]), normalized
//! rational functions ([`RatFunc`]), elements of a quadratic extension
//! ℚ(λ)(μ) with μ² = f(λ) ([`FFElement`]), and places of those fields with
//! their valuations and heights ([`Place`], [`ord_at`], [`height`]).
//!
//! All arithmetic is exact; nothing in this crate ever rounds.

mod error;
mod factor;
mod fields;
mod modp;
mod place;
mod poly;
mod ratfunc;

pub use error::ExactError;
pub use factor::{coprime_refine, factor_rational, squarefree_decompose, squarefree_part};
pub use fields::{FFElement, QuadExt};
pub use modp::poly_gcd_is_trivial_hint;
pub use place::{
    curve_height_places, height, height_ratfunc, ord_at, ord_at_ratfunc, support_places,
    support_places_many, Place,
};
pub use poly::{big_to_f64, rat_to_f64, ExactPoly};
pub use ratfunc::RatFunc;

pub use num_bigint::{BigInt, BigUint};
pub use num_rational::BigRational;

/// Serde helpers for rational scalars, kept as human-readable "p/q" strings.
pub mod ser {
    use num_rational::BigRational;
    use num_traits::One;
    use serde::Serializer;

    pub fn rational_string(r: &BigRational) -> String {
        if r.denom().is_one() {
            r.numer().to_string()
        } else {
            format!("{}/{}", r.numer(), r.denom())
        }
    }

    pub fn serialize_rational<S: Serializer>(r: &BigRational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&rational_string(r))
    }
}

/// Convenience: the rational number `n/d`.
pub fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Convenience: the integer `n` as a rational.
pub fn rat_int(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}
