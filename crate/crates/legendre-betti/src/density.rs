//! The density of dβ₁ ∧ dβ₂ against the Euclidean area element of the
//! λ-plane, for the section σ = (2, √(2(2−λ))).
//!
//! Writing ω = dz − β₁dρ₁ − β₂dρ₂ = w·dλ with w = z′ − β₁ρ₁′ − β₂ρ₂′, the
//! pullback form is ω∧ω̄/d, which against dx∧dy gives the frame-independent
//! expression |w|² / (|ρ₁|²·Im τ).

use crate::betti::raw_coords;
use crate::carlson::rd;
use crate::error::BettiError;
use crate::frame::{periods, PeriodFrame};
use crate::logmap::sigma_log;
use num_complex::Complex64;
use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum DensityMethod {
    ClosedForm,
    FiniteDifference,
}

#[derive(Clone, Copy, Debug, Serialize)]
pub struct DensitySample {
    pub lambda_re: f64,
    pub lambda_im: f64,
    pub density: f64,
    pub method: DensityMethod,
}

/// Default guard radius around the singular fibers λ ∈ {0, 1}.
pub const DEFAULT_EXCLUSION: f64 = 1e-7;

fn czero() -> Complex64 {
    Complex64::new(0.0, 0.0)
}

fn cone() -> Complex64 {
    Complex64::new(1.0, 0.0)
}

/// dz/dλ of the σ-logarithm, analytic via the R_D kernel.
pub fn sigma_log_derivative(lambda: Complex64) -> Complex64 {
    -rd(Complex64::new(2.0, 0.0), cone(), Complex64::new(2.0, 0.0) - lambda) / 6.0
}

pub(crate) fn density_from_frame(frame: &PeriodFrame) -> Result<f64, BettiError> {
    let z = sigma_log(frame);
    let (b1, b2) = raw_coords(frame, z)?;
    let w = sigma_log_derivative(frame.lambda) - b1 * frame.drho1 - b2 * frame.drho2;
    let denom = frame.rho1.norm_sqr() * frame.tau.im.abs();
    Ok(w.norm_sqr() / denom)
}

fn guard(lambda: Complex64, exclusion: f64) -> Result<(), BettiError> {
    if lambda.norm() < exclusion || (lambda - cone()).norm() < exclusion {
        return Err(BettiError::ExclusionRadius(exclusion));
    }
    Ok(())
}

pub fn betti_density(lambda: Complex64, method: DensityMethod) -> Result<DensitySample, BettiError> {
    betti_density_guarded(lambda, method, DEFAULT_EXCLUSION)
}

pub fn betti_density_guarded(
    lambda: Complex64,
    method: DensityMethod,
    exclusion: f64,
) -> Result<DensitySample, BettiError> {
    guard(lambda, exclusion)?;
    let density = match method {
        DensityMethod::ClosedForm => density_from_frame(&periods(lambda)?)?,
        DensityMethod::FiniteDifference => finite_difference_density(lambda)?,
    };
    if density < -1e-12 {
        return Err(BettiError::PrecisionLoss("negative density"));
    }
    Ok(DensitySample {
        lambda_re: lambda.re,
        lambda_im: lambda.im,
        density: density.max(0.0),
        method,
    })
}

/// |det ∂(β₁,β₂)/∂(Re λ, Im λ)| by central differences, with mod-1
/// unwrapping of the coordinate increments.
fn finite_difference_density(lambda: Complex64) -> Result<f64, BettiError> {
    let h = 1e-6 * lambda.norm().max(1.0);
    let beta = |l: Complex64| -> Result<(f64, f64), BettiError> {
        let f = periods(l)?;
        let (a, b) = raw_coords(&f, sigma_log(&f))?;
        Ok((a, b))
    };
    let wrap = |d: f64| d - d.round();
    let (xp, xm) = (
        beta(lambda + Complex64::new(h, 0.0))?,
        beta(lambda - Complex64::new(h, 0.0))?,
    );
    let (yp, ym) = (
        beta(lambda + Complex64::new(0.0, h))?,
        beta(lambda - Complex64::new(0.0, h))?,
    );
    let j11 = wrap(xp.0 - xm.0) / (2.0 * h);
    let j21 = wrap(xp.1 - xm.1) / (2.0 * h);
    let j12 = wrap(yp.0 - ym.0) / (2.0 * h);
    let j22 = wrap(yp.1 - ym.1) / (2.0 * h);
    Ok((j11 * j22 - j12 * j21).abs())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn reference_value() {
        let s = betti_density(c(0.3, 0.4), DensityMethod::ClosedForm).unwrap();
        assert!(
            (s.density - 0.003727240648711742).abs() < 1e-12,
            "{}",
            s.density
        );
    }

    #[test]
    fn methods_agree() {
        for lam in [c(0.3, 0.4), c(-1.2, 0.8), c(2.5, -1.3), c(0.5, 0.001)] {
            let a = betti_density(lam, DensityMethod::ClosedForm).unwrap().density;
            let b = betti_density(lam, DensityMethod::FiniteDifference)
                .unwrap()
                .density;
            assert!((a - b).abs() / a < 1e-4, "λ = {lam}: {a} vs {b}");
        }
    }

    #[test]
    fn exclusion_enforced() {
        assert!(matches!(
            betti_density(c(1e-9, 0.0), DensityMethod::ClosedForm),
            Err(BettiError::ExclusionRadius(_))
        ));
    }

    #[test]
    fn nonnegative_on_samples() {
        for k in 0..50 {
            let th = k as f64 * 0.7;
            let lam = c(0.5 + 3.0 * th.cos(), 2.0 * th.sin() + 0.01);
            if let Ok(s) = betti_density(lam, DensityMethod::ClosedForm) {
                assert!(s.density >= 0.0);
            }
        }
    }
}
