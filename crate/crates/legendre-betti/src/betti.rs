//! Betti coordinates: the real solution of z = β₁ρ₁ + β₂ρ₂ together with its
//! conjugate equation, reduced to the unit square.

use crate::error::BettiError;
use crate::frame::PeriodFrame;
use num_complex::Complex64;
use serde::Serialize;

#[derive(Clone, Copy, Debug, Serialize)]
pub struct BettiCoords {
    pub beta1: f64,
    pub beta2: f64,
    /// The logarithm branch actually used.
    pub z_re: f64,
    pub z_im: f64,
    /// Lattice translation removed during reduction: z = (β₁+b₁)ρ₁ + (β₂+b₂)ρ₂.
    pub branch_id: (i64, i64),
}

/// Unreduced real coordinates: z = a·ρ₁ + b·ρ₂ exactly.
pub fn raw_coords(frame: &PeriodFrame, z: Complex64) -> Result<(f64, f64), BettiError> {
    let det = frame.rho1 * frame.rho2.conj() - frame.rho2 * frame.rho1.conj();
    if det.norm() < 1e-14 {
        return Err(BettiError::DegenerateFrame);
    }
    let a = (z * frame.rho2.conj() - frame.rho2 * z.conj()) / det;
    let b = (frame.rho1 * z.conj() - z * frame.rho1.conj()) / det;
    // imaginary parts vanish identically in exact arithmetic
    if a.im.abs() > 1e-8 || b.im.abs() > 1e-8 {
        return Err(BettiError::PrecisionLoss("conjugate system left residue"));
    }
    Ok((a.re, b.re))
}

pub fn betti_coords(frame: &PeriodFrame, z: Complex64) -> Result<BettiCoords, BettiError> {
    let (a, b) = raw_coords(frame, z)?;
    let k1 = a.floor();
    let k2 = b.floor();
    Ok(BettiCoords {
        beta1: a - k1,
        beta2: b - k2,
        z_re: z.re,
        z_im: z.im,
        branch_id: (k1 as i64, k2 as i64),
    })
}

impl BettiCoords {
    /// Distance of (β₁, β₂) from the subgroup (1/n)ℤ²/ℤ² of n-torsion values.
    pub fn torsion_distance(&self, n: u32) -> f64 {
        let n = n as f64;
        let d = |b: f64| {
            let s = b * n;
            (s - s.round()).abs() / n
        };
        d(self.beta1).max(d(self.beta2))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::frame::periods;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn half_period_and_origin() {
        let f = periods(c(0.3, 0.0)).unwrap();
        let h = betti_coords(&f, f.rho1 / 2.0).unwrap();
        assert!((h.beta1 - 0.5).abs() < 1e-12 && h.beta2.abs() < 1e-12);
        let o = betti_coords(&f, c(0.0, 0.0)).unwrap();
        assert!(o.beta1.abs() < 1e-12 && o.beta2.abs() < 1e-12);
    }

    #[test]
    fn roundtrip_identity() {
        let f = periods(c(-0.8, 1.1)).unwrap();
        for (b1, b2) in [(0.0, 0.0), (0.25, 0.75), (0.9, 0.1), (0.123, 0.987)] {
            let z = b1 * f.rho1 + b2 * f.rho2;
            let back = betti_coords(&f, z).unwrap();
            assert!(
                (back.beta1 - b1).abs() < 1e-10 && (back.beta2 - b2).abs() < 1e-10,
                "({b1}, {b2}) → ({}, {})",
                back.beta1,
                back.beta2
            );
        }
    }

    #[test]
    fn branch_bookkeeping() {
        let f = periods(c(0.3, 0.0)).unwrap();
        let z = 2.25 * f.rho1 - 0.5 * f.rho2;
        let b = betti_coords(&f, z).unwrap();
        assert_eq!(b.branch_id, (2, -1));
        assert!((b.beta1 - 0.25).abs() < 1e-10 && (b.beta2 - 0.5).abs() < 1e-10);
    }

    #[test]
    fn torsion_distance_measure() {
        let f = periods(c(0.3, 0.0)).unwrap();
        let b = betti_coords(&f, f.rho1 / 3.0 + f.rho2 * (2.0 / 3.0)).unwrap();
        assert!(b.torsion_distance(3) < 1e-12);
        assert!(b.torsion_distance(2) > 0.05);
    }
}
