//! Torsion-parameter counting: numeric isolation of the roots of Bₙ backed
//! by the exact squarefree decomposition, against the equidistribution
//! prediction n²·(density mass).

use crate::density::{betti_density_guarded, DensityMethod};
use crate::error::BettiError;
use legendre_exact::{big_to_f64, squarefree_part, BigInt, ExactPoly};
use legendre_sections::{abscissa_fraction, sigma_sequence};
use num_complex::Complex64;
use num_traits::Zero;
use rayon::prelude::*;
use serde::Serialize;

#[derive(Clone, Copy, Debug, Serialize)]
pub enum CountRegion {
    FullPlane,
    Disk { cx: f64, cy: f64, r: f64 },
}

#[derive(Clone, Debug, Serialize)]
pub struct TorsionCount {
    pub n: usize,
    pub count: usize,
    pub predicted: f64,
    /// Roots too close to the region boundary to classify; reported with the
    /// count both excluding (count) and including (count + ambiguous) them.
    pub ambiguous: usize,
}

/// f64 image of an integer polynomial, jointly scaled by a power of two so
/// the largest coefficient stays in range.
fn scaled_f64_coeffs(core: &[BigInt]) -> Vec<f64> {
    let max_bits = core.iter().map(|c| c.bits()).max().unwrap_or(0);
    let shift = max_bits.saturating_sub(900);
    core.iter()
        .map(|c| big_to_f64(&(c >> shift)))
        .collect()
}

/// p(z)/p′(z) with reversed-Horner evaluation when |z| > 1, so huge powers
/// never overflow.
fn newton_ratio(coeffs: &[f64], z: Complex64) -> Complex64 {
    let d = coeffs.len() - 1;
    if z.norm() <= 1.0 {
        let mut p = Complex64::new(0.0, 0.0);
        let mut dp = Complex64::new(0.0, 0.0);
        for &c in coeffs.iter().rev() {
            dp = dp * z + p;
            p = p * z + c;
        }
        p / dp
    } else {
        let u = 1.0 / z;
        let mut q = Complex64::new(0.0, 0.0);
        let mut dq = Complex64::new(0.0, 0.0);
        for &c in coeffs.iter() {
            dq = dq * u + q;
            q = q * u + c;
        }
        // p = z^d q(u), p′ = z^(d−1)(d·q − u·q′)
        z * q / ((d as f64) * q - u * dq)
    }
}

/// Initial guesses distributed over the annuli the Newton polygon of the
/// coefficient magnitudes predicts; a single circle fails badly here because
/// the root moduli span several orders of magnitude.
fn initial_guesses(coeffs: &[f64]) -> Vec<Complex64> {
    let d = coeffs.len() - 1;
    let logs: Vec<Option<f64>> = coeffs
        .iter()
        .map(|&c| if c == 0.0 { None } else { Some(c.abs().ln()) })
        .collect();
    let mut hull: Vec<usize> = Vec::new();
    for i in 0..=d {
        let Some(li) = logs[i] else { continue };
        while hull.len() >= 2 {
            let a = hull[hull.len() - 2];
            let b = hull[hull.len() - 1];
            let (la, lb) = (logs[a].unwrap(), logs[b].unwrap());
            if (lb - la) * (i - b) as f64 <= (li - lb) * (b - a) as f64 {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push(i);
    }
    let mut z = Vec::with_capacity(d);
    for seg in hull.windows(2) {
        let (a, b) = (seg[0], seg[1]);
        let k = b - a;
        let r = ((logs[a].unwrap() - logs[b].unwrap()) / k as f64).exp();
        for j in 0..k {
            let th = std::f64::consts::TAU * (j as f64 + 0.35) / k as f64 + 0.7 * a as f64;
            z.push(Complex64::from_polar(r, th));
        }
    }
    while z.len() < d {
        let k = z.len();
        z.push(Complex64::from_polar(1e-3, 1.1 * k as f64));
    }
    z
}

/// Aberth–Ehrlich iteration in f64, Gauss–Seidel sweeps. For polynomials
/// with far-out roots this can only reach the f64 evaluation noise floor,
/// so it serves as the warm start for the fixed-point refinement below.
pub fn aberth_roots(coeffs: &[f64]) -> Result<Vec<Complex64>, BettiError> {
    let d = coeffs.len() - 1;
    if d == 0 {
        return Ok(Vec::new());
    }
    let mut z = initial_guesses(coeffs);
    for _ in 0..200 {
        let mut moved = 0.0f64;
        for i in 0..d {
            let n = newton_ratio(coeffs, z[i]);
            if !n.is_finite() {
                continue;
            }
            let mut s = Complex64::new(0.0, 0.0);
            for j in 0..d {
                if j != i {
                    s += 1.0 / (z[i] - z[j]);
                }
            }
            let step = n / (1.0 - n * s);
            if !step.is_finite() {
                continue;
            }
            z[i] -= step;
            moved = moved.max(step.norm() / z[i].norm().max(1.0));
        }
        if moved < 1e-13 {
            break;
        }
    }
    for zi in &z {
        if !zi.is_finite() {
            return Err(BettiError::PrecisionLoss("root iteration diverged"));
        }
    }
    Ok(z)
}

/// Dyadic fixed-point complex number: value = (re + i·im)/2^SCALE. The
/// polynomial coefficients are exact integers, so evaluating through BigInt
/// sidesteps the f64 cancellation that caps the attainable root accuracy
/// near large-modulus roots.
const SCALE: u32 = 192;

#[derive(Clone)]
struct FixC {
    re: BigInt,
    im: BigInt,
}

impl FixC {
    fn from_c64(z: Complex64) -> FixC {
        let s = (1u64 << 53) as f64;
        let to_big = |x: f64| {
            // split into mantissa-scale chunks to stay exact
            let hi = (x * s).trunc();
            BigInt::from(hi as i128) << (SCALE - 53)
        };
        FixC {
            re: to_big(z.re),
            im: to_big(z.im),
        }
    }

    fn to_c64(&self) -> Complex64 {
        let f = |m: &BigInt| big_to_f64(m) / 2f64.powi(SCALE as i32);
        Complex64::new(f(&self.re), f(&self.im))
    }

    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    fn add(&self, o: &FixC) -> FixC {
        FixC {
            re: &self.re + &o.re,
            im: &self.im + &o.im,
        }
    }

    fn sub(&self, o: &FixC) -> FixC {
        FixC {
            re: &self.re - &o.re,
            im: &self.im - &o.im,
        }
    }

    fn mul(&self, o: &FixC) -> FixC {
        FixC {
            re: (&self.re * &o.re - &self.im * &o.im) >> SCALE,
            im: (&self.re * &o.im + &self.im * &o.re) >> SCALE,
        }
    }

    fn div(&self, o: &FixC) -> Option<FixC> {
        let n2 = &o.re * &o.re + &o.im * &o.im;
        if n2.is_zero() {
            return None;
        }
        Some(FixC {
            re: ((&self.re * &o.re + &self.im * &o.im) << SCALE) / &n2,
            im: ((&self.im * &o.re - &self.re * &o.im) << SCALE) / &n2,
        })
    }

    fn add_int(&self, c: &BigInt) -> FixC {
        FixC {
            re: &self.re + (c << SCALE),
            im: self.im.clone(),
        }
    }
}

/// p(z)/p′(z) with exact integer coefficients at a fixed-point argument.
fn newton_ratio_fix(core: &[BigInt], z: &FixC) -> Option<FixC> {
    let mut p = FixC::from_c64(Complex64::new(0.0, 0.0));
    let mut dp = p.clone();
    for c in core.iter().rev() {
        dp = dp.mul(z).add(&p);
        p = p.mul(z).add_int(c);
    }
    p.div(&dp)
}

/// Aberth refinement in fixed-point arithmetic, starting from the f64
/// approximations. The repulsion term keeps the approximants distinct, so
/// warm-start errors comparable to the root separation still sort out.
fn refine_roots(core: &[BigInt], seeds: &[Complex64]) -> Result<Vec<Complex64>, BettiError> {
    let d = seeds.len();
    let mut z: Vec<FixC> = seeds.iter().map(|&s| FixC::from_c64(s)).collect();
    let one = || FixC::from_c64(Complex64::new(1.0, 0.0));
    for _ in 0..120 {
        let mut moved = false;
        for i in 0..d {
            let Some(n) = newton_ratio_fix(core, &z[i]) else {
                continue;
            };
            let mut s = FixC::from_c64(Complex64::new(0.0, 0.0));
            for j in 0..d {
                if j != i {
                    let diff = z[i].sub(&z[j]);
                    if diff.is_zero() {
                        continue;
                    }
                    if let Some(inv) = one().div(&diff) {
                        s = FixC {
                            re: &s.re + &inv.re,
                            im: &s.im + &inv.im,
                        };
                    }
                }
            }
            let denom = one().sub(&n.mul(&s));
            let Some(step) = n.div(&denom) else { continue };
            z[i] = z[i].sub(&step);
            // relative step below 2^-80 means the f64 image stopped moving
            // long ago
            let unit = (BigInt::from(1) << SCALE).magnitude().clone();
            let scale_ref = z[i]
                .re
                .magnitude()
                .max(z[i].im.magnitude())
                .clone()
                .max(unit);
            let stepmag = step.re.magnitude().max(step.im.magnitude()).clone();
            if stepmag << 80u32 > scale_ref {
                moved = true;
            }
        }
        if !moved {
            break;
        }
    }
    Ok(z.iter().map(|f| f.to_c64()).collect())
}

/// Distinct roots of Bₙ as exact squarefree part + numeric positions.
pub fn torsion_parameters(n: usize) -> Result<(ExactPoly, Vec<Complex64>), BettiError> {
    let mut seq = sigma_sequence();
    let fr = abscissa_fraction(&mut seq, n)?;
    if fr.b.is_constant() {
        return Ok((ExactPoly::one(), Vec::new()));
    }
    let sf = squarefree_part(&fr.b)?;
    let (_, core) = sf.to_integer_primitive();
    let coeffs = scaled_f64_coeffs(&core);
    let seeds = aberth_roots(&coeffs)?;
    let roots = refine_roots(&core, &seeds)?;
    Ok((sf, roots))
}

/// Roots closer than this to the region boundary count as ambiguous. The
/// band matches the boundary resolution of the quadrature the count is
/// compared against; near the singular fiber the torsion parameters come in
/// pairs straddling |λ| = 1 far tighter than any quadrature can separate.
const BOUNDARY_TOL: f64 = 1e-3;

pub fn torsion_count(n: usize, region: CountRegion) -> Result<TorsionCount, BettiError> {
    if n < 2 {
        return Err(BettiError::Precondition("torsion counting needs n ≥ 2"));
    }
    let (sf, roots) = torsion_parameters(n)?;
    match region {
        CountRegion::FullPlane => {
            // exact: distinct roots = degree of the squarefree part
            let count = sf.degree_or_zero();
            Ok(TorsionCount {
                n,
                count,
                predicted: (n * n) as f64 / 4.0,
                ambiguous: 0,
            })
        }
        CountRegion::Disk { cx, cy, r } => {
            let c = Complex64::new(cx, cy);
            let mut count = 0;
            let mut ambiguous = 0;
            for root in &roots {
                let d = (root - c).norm();
                if (d - r).abs() < BOUNDARY_TOL {
                    ambiguous += 1;
                } else if d < r {
                    count += 1;
                }
            }
            let predicted = (n * n) as f64 * disk_mass(c, r);
            Ok(TorsionCount {
                n,
                count,
                predicted,
                ambiguous,
            })
        }
    }
}

/// Midpoint log-polar sum over one chart, keeping only cell centers the
/// `keep` predicate accepts.
fn chart_sum(
    origin: Complex64,
    r_min: f64,
    r_max: f64,
    nr: usize,
    nt: usize,
    keep: impl Fn(Complex64) -> bool + Sync,
) -> f64 {
    let lr0 = r_min.ln();
    let dlr = (r_max.ln() - lr0) / nr as f64;
    let dth = std::f64::consts::TAU / nt as f64;
    let rows: Vec<f64> = (0..nr)
        .into_par_iter()
        .map(|i| {
            let r = (lr0 + (i as f64 + 0.5) * dlr).exp();
            let cell = r * r * dlr * dth;
            let mut acc = 0.0;
            for j in 0..nt {
                let th = (j as f64 + 0.5) * dth;
                let lam = origin + Complex64::from_polar(r, th);
                if !keep(lam) {
                    continue;
                }
                if let Ok(s) = betti_density_guarded(lam, DensityMethod::ClosedForm, 1e-7) {
                    acc += s.density * cell;
                }
            }
            acc
        })
        .collect();
    rows.iter().sum()
}

/// ∫ over the disk of the Betti density. The density has an integrable
/// c/(ρ² log²ρ) spike at the fiber λ = 1 whose mass dies off only like
/// 1/|log ρ|, so a dedicated log-polar chart around 1 plus an envelope
/// extrapolation below its inner cutoff is what makes the value converge;
/// a plain grid loses a third of the mass to that corner.
pub fn disk_mass(center: Complex64, radius: f64) -> f64 {
    let one = Complex64::new(1.0, 0.0);
    let corner_outer = 0.05f64.min(radius * 0.5);
    let corner_eps = 1e-6;
    let in_disk = |lam: Complex64| (lam - center).norm() < radius;
    let corner_active = (center - one).norm() < radius + corner_outer;

    let keep_main = |lam: Complex64| !corner_active || (lam - one).norm() >= corner_outer;
    let mut mass = chart_sum(center, radius * 1e-5, radius, 280, 256, keep_main);
    if !corner_active {
        return mass;
    }
    mass += chart_sum(one, corner_eps, corner_outer, 280, 256, in_disk);

    // envelope mass below the inner cutoff: f·2πc/|log ε| over the angular
    // fraction f of the tiny circle that lies inside the disk
    let frac = {
        let nt = 256;
        let hits = (0..nt)
            .filter(|&k| {
                let th = (k as f64 + 0.5) * std::f64::consts::TAU / nt as f64;
                in_disk(one + Complex64::from_polar(corner_eps, th))
            })
            .count();
        hits as f64 / nt as f64
    };
    let c_env = {
        let rho = 1e-4;
        let mut samples: Vec<f64> = Vec::new();
        for k in 0..32 {
            let th = (k as f64 + 0.37) * std::f64::consts::TAU / 32.0;
            let lam = one + Complex64::from_polar(rho, th);
            if !in_disk(lam) {
                continue;
            }
            if let Ok(s) = betti_density_guarded(lam, DensityMethod::ClosedForm, 1e-7) {
                samples.push(s.density * rho * rho * rho.ln() * rho.ln());
            }
        }
        samples.sort_by(|a, b| a.total_cmp(b));
        if samples.is_empty() {
            0.0
        } else {
            samples[samples.len() / 2]
        }
    };
    mass + frac * std::f64::consts::TAU * c_env / corner_eps.ln().abs()
}

/// Worst relative Newton step |p/p′|/max(1,|z|) over the roots, evaluated
/// in exact integer arithmetic; test assertions use this.
pub fn max_root_residual(n: usize) -> Result<f64, BettiError> {
    let (sf, roots) = torsion_parameters(n)?;
    let (_, core) = sf.to_integer_primitive();
    let mut worst = 0.0f64;
    for &z in &roots {
        if let Some(ratio) = newton_ratio_fix(&core, &FixC::from_c64(z)) {
            let r = ratio.to_c64().norm() / z.norm().max(1.0);
            if r.is_finite() {
                worst = worst.max(r);
            }
        }
    }
    Ok(worst)
}
