//! Carlson symmetric elliptic integrals over ℂ, by the duplication method.
//!
//! All period and logarithm computations in this crate reduce to R_F and its
//! derivative kernel R_D; principal square roots throughout.

use num_complex::Complex64;

const MAX_ITER: usize = 64;
const SERIES_TOL: f64 = 1e-7; // quintic error term then lands below 1e-16

pub fn rf(mut x: Complex64, mut y: Complex64, mut z: Complex64) -> Complex64 {
    let mut mu;
    let mut iter = 0;
    loop {
        let (sx, sy, sz) = (x.sqrt(), y.sqrt(), z.sqrt());
        let lam = sx * sy + sy * sz + sz * sx;
        x = (x + lam) * 0.25;
        y = (y + lam) * 0.25;
        z = (z + lam) * 0.25;
        mu = (x + y + z) / 3.0;
        let eps = ((x - mu).norm().max((y - mu).norm()).max((z - mu).norm())) / mu.norm();
        iter += 1;
        if eps < SERIES_TOL || iter >= MAX_ITER {
            break;
        }
    }
    let xe = 1.0 - x / mu;
    let ye = 1.0 - y / mu;
    let ze = 1.0 - z / mu;
    let e2 = xe * ye + ye * ze + ze * xe;
    let e3 = xe * ye * ze;
    (Complex64::new(1.0, 0.0) - e2 / 10.0 + e3 / 14.0 + e2 * e2 / 24.0 - e2 * e3 * 3.0 / 44.0)
        / mu.sqrt()
}

pub fn rd(mut x: Complex64, mut y: Complex64, mut z: Complex64) -> Complex64 {
    let mut sum = Complex64::new(0.0, 0.0);
    let mut fac = 1.0;
    let mut mu;
    let mut iter = 0;
    loop {
        let (sx, sy, sz) = (x.sqrt(), y.sqrt(), z.sqrt());
        let lam = sx * sy + sy * sz + sz * sx;
        sum += fac / (sz * (z + lam));
        fac *= 0.25;
        x = (x + lam) * 0.25;
        y = (y + lam) * 0.25;
        z = (z + lam) * 0.25;
        mu = (x + y + z * 3.0) / 5.0;
        let eps = ((x - mu).norm().max((y - mu).norm()).max((z - mu).norm())) / mu.norm();
        iter += 1;
        if eps < SERIES_TOL || iter >= MAX_ITER {
            break;
        }
    }
    let xe = (mu - x) / mu;
    let ye = (mu - y) / mu;
    let ze = -(xe + ye) / 3.0;
    let ea = xe * ye - ze * ze * 6.0;
    let eb = (xe * ye * 3.0 - ze * ze * 8.0) * ze;
    let ec = (xe * ye - ze * ze) * ze * ze * 3.0;
    let ed = xe * ye * ze * ze * ze;
    let series = Complex64::new(1.0, 0.0) - ea * 3.0 / 14.0 + eb / 6.0 + ea * ea * 9.0 / 88.0
        - ec * 3.0 / 22.0
        - eb * ea * 9.0 / 52.0
        + ed * 3.0 / 26.0;
    sum * 3.0 + fac * series / (mu * mu.sqrt())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn rf_degenerate_log() {
        // R_F(x, x, x) = 1/√x
        let v = rf(c(4.0, 0.0), c(4.0, 0.0), c(4.0, 0.0));
        assert!((v - c(0.5, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn rf_complete_elliptic() {
        // 2 R_F(0, 1, 1−λ) at λ = 0.3
        let v = 2.0 * rf(c(0.0, 0.0), c(1.0, 0.0), c(0.7, 0.0));
        assert!((v.re - 3.4277788963575821241).abs() < 1e-14, "{v}");
        assert!(v.im.abs() < 1e-15);
    }

    #[test]
    fn rd_reference_value() {
        // (1/3) R_D(0, 1, 0.7) at λ = 0.3
        let v = rd(c(0.0, 0.0), c(1.0, 0.0), c(0.7, 0.0)) / 3.0;
        assert!((v.re - 1.1697164318452929456).abs() < 1e-13, "{v}");
    }

    #[test]
    fn rd_is_rf_derivative() {
        // ∂R_F/∂z = −R_D/6, checked by central differences
        let (x, y, z) = (c(2.0, 0.3), c(1.0, -0.1), c(1.4, 0.2));
        let h = 1e-6;
        let fd = (rf(x, y, z + c(h, 0.0)) - rf(x, y, z - c(h, 0.0))) / (2.0 * h);
        let cl = -rd(x, y, z) / 6.0;
        assert!((fd - cl).norm() < 1e-9, "{fd} vs {cl}");
    }

    #[test]
    fn complex_reference_values() {
        // λ = 0.4 + 0.7i frame entries
        let lam = c(0.4, 0.7);
        let one = c(1.0, 0.0);
        let rho1 = 2.0 * rf(c(0.0, 0.0), one, one - lam);
        assert!((rho1 - c(3.1698364752514425564, 0.68667571216783097622)).norm() < 1e-13);
        let z = -rf(c(2.0, 0.0), one, c(2.0, 0.0) - lam);
        assert!((z - c(-0.80559406645171654229, -0.058447085770922821579)).norm() < 1e-13);
    }
}
