//! Period frames of the Legendre fiber y² = x(x−1)(x−λ).
//!
//! The frame uses the canonical lattice of the shifted Weierstrass model
//! (x ↦ x + (1+λ)/3), for which the abelian-log differential is dx/(2y).
//! Periods come from Carlson R_F, their λ-derivatives from R_D, and the
//! quasi-periods from the closed relation
//!
//!   ηᵢ = (1−2λ)/3 · ρᵢ + 2λ(1−λ) · ρᵢ′,
//!
//! which makes the Legendre relation ρ₂η₁ − ρ₁η₂ = ±2πi hold identically.

use crate::carlson::{rd, rf};
use crate::error::BettiError;
use num_complex::Complex64;
use std::f64::consts::PI;

/// Distance to λ ∈ {0, 1} below which the fiber is treated as singular.
pub const SINGULAR_CUTOFF: f64 = 1e-12;

#[derive(Clone, Copy, Debug)]
pub struct PeriodFrame {
    pub lambda: Complex64,
    pub rho1: Complex64,
    pub rho2: Complex64,
    pub eta1: Complex64,
    pub eta2: Complex64,
    /// dρᵢ/dλ, carried along because the density form needs them.
    pub drho1: Complex64,
    pub drho2: Complex64,
    /// Oriented fundamental-domain area: ρ₁ρ̄₂ − ρ₂ρ̄₁ = 2iV.
    pub v: f64,
    pub tau: Complex64,
}

fn czero() -> Complex64 {
    Complex64::new(0.0, 0.0)
}

fn cone() -> Complex64 {
    Complex64::new(1.0, 0.0)
}

pub fn periods(lambda: Complex64) -> Result<PeriodFrame, BettiError> {
    let d0 = lambda.norm();
    let d1 = (lambda - cone()).norm();
    if d0 < SINGULAR_CUTOFF || d1 < SINGULAR_CUTOFF {
        return Err(BettiError::SingularFiber(lambda, d0.min(d1)));
    }
    let mut rho1 = 2.0 * rf(czero(), cone(), cone() - lambda);
    let mut rho2 = Complex64::new(0.0, 2.0) * rf(czero(), cone(), lambda);
    let mut drho1 = rd(czero(), cone(), cone() - lambda) / 3.0;
    let mut drho2 = Complex64::new(0.0, -1.0) * rd(czero(), cone(), lambda) / 3.0;
    let mut tau = rho2 / rho1;
    if !tau.is_finite() || tau.im.abs() < 1e-14 {
        return Err(BettiError::DegenerateFrame);
    }
    if tau.im < 0.0 {
        rho2 = -rho2;
        drho2 = -drho2;
        tau = -tau;
    }
    let c1 = (cone() - 2.0 * lambda) / 3.0;
    let c2 = 2.0 * lambda * (cone() - lambda);
    let eta1 = c1 * rho1 + c2 * drho1;
    let eta2 = c1 * rho2 + c2 * drho2;
    // defining invariant of the frame; failure means the duplication loops
    // lost precision
    let legendre = rho2 * eta1 - rho1 * eta2;
    let residual = (legendre.norm() - 2.0 * PI).abs();
    if residual > 1e-9 {
        return Err(BettiError::PrecisionLoss("Legendre relation residual"));
    }
    let d = rho1 * rho2.conj() - rho2 * rho1.conj();
    Ok(PeriodFrame {
        lambda,
        rho1,
        rho2,
        eta1,
        eta2,
        drho1,
        drho2,
        v: d.im / 2.0,
        tau,
    })
}

impl PeriodFrame {
    pub fn legendre_residual(&self) -> f64 {
        let l = self.rho2 * self.eta1 - self.rho1 * self.eta2;
        (l - Complex64::new(0.0, 2.0 * PI))
            .norm()
            .min((l + Complex64::new(0.0, 2.0 * PI)).norm())
    }
}

/// Residual of the hypergeometric annihilator 4λ(1−λ)ρ″ + 4(1−2λ)ρ′ − ρ for
/// both periods. First derivatives are analytic (R_D kernels); the second
/// derivative uses a sixth-order seven-point stencil, which keeps both the
/// truncation and roundoff contributions below the 10⁻⁸ target at double
/// precision.
pub fn picard_fuchs_residual(lambda: Complex64, h: f64) -> Result<(f64, f64), BettiError> {
    let f0 = periods(lambda)?;
    // scale the step with the fiber so the 1/h² roundoff amplification does
    // not swamp the residual far from the origin
    let h = h * lambda.norm().max(1.0);
    let mut samples = Vec::with_capacity(6);
    for k in [-3.0, -2.0, -1.0, 1.0, 2.0, 3.0] {
        samples.push(periods(lambda + Complex64::new(k * h, 0.0))?);
    }
    let coeff1 = 4.0 * lambda * (cone() - lambda);
    let coeff2 = 4.0 * (cone() - 2.0 * lambda);
    let stencil = |vals: [Complex64; 7]| {
        (2.0 * vals[0] - 27.0 * vals[1] + 270.0 * vals[2] - 490.0 * vals[3] + 270.0 * vals[4]
            - 27.0 * vals[5]
            + 2.0 * vals[6])
            / (180.0 * h * h)
    };
    let res = |pick: &dyn Fn(&PeriodFrame) -> Complex64, d0: Complex64| {
        let second = stencil([
            pick(&samples[0]),
            pick(&samples[1]),
            pick(&samples[2]),
            pick(&f0),
            pick(&samples[3]),
            pick(&samples[4]),
            pick(&samples[5]),
        ]);
        (coeff1 * second + coeff2 * d0 - pick(&f0)).norm()
    };
    let r1 = res(&|f: &PeriodFrame| f.rho1, f0.drho1);
    let r2 = res(&|f: &PeriodFrame| f.rho2, f0.drho2);
    Ok((r1, r2))
}

/// Arithmetic-geometric mean of two positive reals.
pub fn agm(mut a: f64, mut b: f64) -> f64 {
    for _ in 0..64 {
        let (an, bn) = ((a + b) / 2.0, (a * b).sqrt());
        if (an - bn).abs() < 1e-17 * an.abs() {
            return an;
        }
        a = an;
        b = bn;
    }
    a
}

/// Periods of a real fiber 0 < λ < 1 through the AGM instead of Carlson
/// duplication; a cross-check path, not the workhorse.
pub fn periods_agm(lambda: f64) -> Result<(Complex64, Complex64), BettiError> {
    if !(lambda > 0.0 && lambda < 1.0) {
        return Err(BettiError::Precondition(
            "the AGM path needs a real fiber with 0 < λ < 1",
        ));
    }
    let rho1 = PI / agm(1.0, (1.0 - lambda).sqrt());
    let rho2 = PI / agm(1.0, lambda.sqrt());
    Ok((Complex64::new(rho1, 0.0), Complex64::new(0.0, rho2)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn agm_matches_carlson_periods() {
        for lam in [0.13, 0.3, 0.5, 0.82] {
            let f = periods(c(lam, 0.0)).unwrap();
            let (r1, r2) = periods_agm(lam).unwrap();
            assert!((f.rho1 - r1).norm() < 1e-12 * r1.norm());
            assert!((f.rho2 - r2).norm() < 1e-12 * r2.norm());
        }
        let (r1, r2) = periods_agm(0.5).unwrap();
        assert!((r2 / r1 - c(0.0, 1.0)).norm() < 1e-12);
    }

    #[test]
    fn reference_frame_real_lambda() {
        let f = periods(c(0.3, 0.0)).unwrap();
        assert!((f.rho1 - c(3.4277788963575821241, 0.0)).norm() < 1e-13);
        assert!((f.rho2 - c(0.0, 4.1507262705849382877)).norm() < 1e-13);
        assert!((f.eta1 - c(0.94831808755603398705, 0.0)).norm() < 1e-12);
        assert!((f.eta2 - c(0.0, -0.6846930853048389104)).norm() < 1e-12);
        assert!((f.drho1 - c(1.1697164318452929456, 0.0)).norm() < 1e-12);
        assert!(f.legendre_residual() < 1e-12);
        assert!(f.tau.im > 0.0);
    }

    #[test]
    fn reference_frame_complex_lambda() {
        let f = periods(c(0.4, 0.7)).unwrap();
        assert!((f.rho1 - c(3.1698364752514425564, 0.68667571216783097622)).norm() < 1e-12);
        assert!((f.eta1 - c(1.0569364920832100217, -0.24256891334894586321)).norm() < 1e-11);
        assert!(f.legendre_residual() < 1e-11);
    }

    #[test]
    fn square_lattice_at_one_half() {
        let f = periods(c(0.5, 0.0)).unwrap();
        assert!((f.tau - c(0.0, 1.0)).norm() < 1e-12);
    }

    #[test]
    fn singular_fibers_rejected() {
        assert!(matches!(
            periods(c(0.0, 0.0)),
            Err(BettiError::SingularFiber(_, _))
        ));
        assert!(matches!(
            periods(c(1.0, 1e-14)),
            Err(BettiError::SingularFiber(_, _))
        ));
    }

    #[test]
    fn picard_fuchs_small_residual() {
        for lam in [c(0.3, 0.0), c(0.4, 0.7), c(-1.0, 0.4), c(2.5, -1.3)] {
            let (r1, r2) = picard_fuchs_residual(lam, 2e-3).unwrap();
            assert!(r1 < 1e-8 && r2 < 1e-8, "λ = {lam}: {r1}, {r2}");
        }
    }

    #[test]
    fn derivative_matches_finite_difference() {
        let lam = c(-1.2, 0.8);
        let h = 1e-6;
        let f = periods(lam).unwrap();
        let fp = periods(lam + c(h, 0.0)).unwrap();
        let fm = periods(lam - c(h, 0.0)).unwrap();
        let fd = (fp.rho1 - fm.rho1) / (2.0 * h);
        assert!((fd - f.drho1).norm() < 1e-8);
    }
}
