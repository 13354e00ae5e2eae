//! Elliptic logarithm on the fiber y² = x(x−1)(x−λ), normalized so the
//! differential is dx/(2y) and ℘(z) = x − (1+λ)/3 on the canonical lattice.

use crate::carlson::rf;
use crate::error::BettiError;
use crate::frame::PeriodFrame;
use num_complex::Complex64;

fn cone() -> Complex64 {
    Complex64::new(1.0, 0.0)
}

/// The y-branch that the Carlson evaluation of ∫_∞^x dx/(2y) integrates
/// against: the product of principal square roots of the three linear factors.
fn principal_y(x: Complex64, lambda: Complex64) -> Complex64 {
    x.sqrt() * (x - cone()).sqrt() * (x - lambda).sqrt()
}

/// z = ∫_∞^(x,y) dx/(2y) for a finite point on the fiber; the sign of the
/// branch is fixed by matching y against the principal-root branch.
pub fn elliptic_log(
    frame: &PeriodFrame,
    x: Complex64,
    y: Complex64,
) -> Result<Complex64, BettiError> {
    if !x.is_finite() || !y.is_finite() {
        return Err(BettiError::PointAtInfinity);
    }
    let lambda = frame.lambda;
    let rhs = x * (x - cone()) * (x - lambda);
    let scale = rhs.norm().max(1.0);
    let residual = (y * y - rhs).norm() / scale;
    if residual > 1e-8 {
        return Err(BettiError::NotOnFiber(residual));
    }
    let z = -rf(x, x - cone(), x - lambda);
    let yp = principal_y(x, lambda);
    if yp.norm() < 1e-14 {
        // 2-torsion: both branches coincide, z is a half-period
        return Ok(z);
    }
    if (y - yp).norm() <= (y + yp).norm() {
        Ok(z)
    } else {
        Ok(-z)
    }
}

/// z of the section σ = (2, √(2(2−λ))) on the principal branch; this is the
/// branch whose Betti coordinates the density computations use.
pub fn sigma_log(frame: &PeriodFrame) -> Complex64 {
    -rf(
        Complex64::new(2.0, 0.0),
        cone(),
        Complex64::new(2.0, 0.0) - frame.lambda,
    )
}

/// Distance of z from the period lattice of the frame.
pub fn lattice_distance(frame: &PeriodFrame, z: Complex64) -> f64 {
    let det = frame.rho1 * frame.rho2.conj() - frame.rho2 * frame.rho1.conj();
    let a = ((z * frame.rho2.conj() - frame.rho2 * z.conj()) / det).re;
    let b = ((frame.rho1 * z.conj() - z * frame.rho1.conj()) / det).re;
    let reduced = (a - a.round()) * frame.rho1 + (b - b.round()) * frame.rho2;
    reduced.norm()
}
