//! Local vanishing order of the Betti-map displacement at torsion
//! parameters, estimated from finite differences and cross-checked against
//! the exact pole orders.

use crate::betti::betti_coords;
use crate::error::BettiError;
use crate::frame::periods;
use crate::logmap::sigma_log;
use num_complex::Complex64;
use serde::Serialize;

#[derive(Clone, Copy, Debug, Serialize)]
pub struct MultiplicityEstimate {
    pub lambda0_re: f64,
    pub lambda0_im: f64,
    pub n: usize,
    pub order: usize,
    /// Fitted slope before rounding; how trustworthy the integer is.
    pub slope: f64,
    /// True when the displacement grows with a half-integer exponent in λ,
    /// i.e. the section's defining cover ramifies over λ₀ (the bad fiber at
    /// λ = 2); `order` is then stated in the cover parameter.
    pub ramified: bool,
}

/// Distance of n·β(σ(λ)) from ℤ², the displacement whose vanishing order at
/// λ₀ is the Betti multiplicity.
fn displacement(lambda: Complex64, n: usize) -> Result<f64, BettiError> {
    let frame = periods(lambda)?;
    let b = betti_coords(&frame, sigma_log(&frame))?;
    Ok(b.torsion_distance(n as u32) * n as f64)
}

/// Vanishing order via log-log slope over a geometric ladder of radii,
/// averaged over directions. Inconclusive ladders give an error, never a
/// wrong integer.
pub fn betti_multiplicity(
    lambda0: Complex64,
    n: usize,
) -> Result<MultiplicityEstimate, BettiError> {
    let radii = [1e-3, 5e-4, 2.5e-4, 1.25e-4];
    let dirs = [0.3f64, 1.9, 3.6, 5.1];
    let mut slopes = Vec::new();
    for pair in radii.windows(2) {
        let (h1, h2) = (pair[0], pair[1]);
        let mut d1 = 0.0;
        let mut d2 = 0.0;
        for &th in &dirs {
            let e = Complex64::from_polar(1.0, th);
            d1 += displacement(lambda0 + e * h1, n)?;
            d2 += displacement(lambda0 + e * h2, n)?;
        }
        if d1 <= 0.0 || d2 <= 0.0 {
            return Err(BettiError::IndeterminateOrder(
                "displacement vanished at a probe point",
            ));
        }
        slopes.push((d1 / d2).ln() / (h1 / h2).ln());
    }
    let mean = slopes.iter().sum::<f64>() / slopes.len() as f64;
    let twice = (2.0 * mean).round();
    if twice < 1.0 || slopes.iter().any(|s| (2.0 * s - twice).abs() > 0.4) {
        return Err(BettiError::IndeterminateOrder(
            "adjacent-scale slope ratios disagree",
        ));
    }
    let ramified = twice as i64 % 2 == 1;
    let order = if ramified {
        twice as usize
    } else {
        (twice / 2.0) as usize
    };
    Ok(MultiplicityEstimate {
        lambda0_re: lambda0.re,
        lambda0_im: lambda0.im,
        n,
        order,
        slope: mean,
        ramified,
    })
}
