//! Weierstrass curves y² = x³ + ax² + bx + c over a function field, their
//! sections, and the chord-tangent group law.

use crate::error::SectionError;
use legendre_exact::{rat_int, ExactPoly, FFElement, QuadExt, RatFunc};
use serde::Serialize;
use std::sync::Arc;

#[derive(Clone, Debug, Serialize)]
pub struct CurveFF {
    a: FFElement,
    b: FFElement,
    c: FFElement,
    discriminant: FFElement,
}

impl CurveFF {
    pub fn new(a: FFElement, b: FFElement, c: FFElement) -> Result<Self, SectionError> {
        // disc of x³ + ax² + bx + c: 18abc − 4a³c + a²b² − 4b³ − 27c²
        let a2 = &a * &a;
        let b2 = &b * &b;
        let abc = &(&a * &b) * &c;
        let a3c = &(&a2 * &a) * &c;
        let b3 = &b2 * &b;
        let c2 = &c * &c;
        let disc = &(&(&abc.scaled(18) - &a3c.scaled(4)) + &(&a2 * &b2))
            - &(&b3.scaled(4) + &c2.scaled(27));
        if disc.is_zero() {
            return Err(SectionError::SingularCurve);
        }
        Ok(CurveFF {
            a,
            b,
            c,
            discriminant: disc,
        })
    }

    /// y² = x(x−1)(x−λ) over ℚ(λ): a = −(1+λ), b = λ, c = 0.
    pub fn legendre() -> Self {
        let a = FFElement::from_base(RatFunc::from_poly(ExactPoly::from_int_coeffs(&[-1, -1])));
        let b = FFElement::from_base(RatFunc::var());
        CurveFF::new(a, b, FFElement::zero()).expect("Legendre curve is nonsingular")
    }

    /// The Legendre curve with coefficients viewed in the quadratic extension
    /// generated by μ² = f(λ).
    pub fn legendre_over(ext: Arc<QuadExt>) -> Self {
        let a = FFElement::from_base_in(
            RatFunc::from_poly(ExactPoly::from_int_coeffs(&[-1, -1])),
            ext.clone(),
        );
        let b = FFElement::from_base_in(RatFunc::var(), ext.clone());
        let c = FFElement::from_base_in(RatFunc::zero(), ext);
        CurveFF::new(a, b, c).expect("Legendre curve is nonsingular")
    }

    pub fn a(&self) -> &FFElement {
        &self.a
    }

    pub fn b(&self) -> &FFElement {
        &self.b
    }

    pub fn c(&self) -> &FFElement {
        &self.c
    }

    pub fn discriminant(&self) -> &FFElement {
        &self.discriminant
    }

    /// x³ + ax² + bx + c at the given abscissa.
    pub fn rhs(&self, x: &FFElement) -> FFElement {
        let x2 = x * x;
        &(&(&x2 * x) + &(&self.a * &x2)) + &(&(&self.b * x) + &self.c)
    }

    pub fn contains(&self, p: &SectionPoint) -> bool {
        match p {
            SectionPoint::Identity => true,
            SectionPoint::Affine { x, y } => &(y * y) == &self.rhs(x),
        }
    }

    pub fn point(&self, x: FFElement, y: FFElement) -> Result<SectionPoint, SectionError> {
        let p = SectionPoint::Affine { x, y };
        if self.contains(&p) {
            Ok(p)
        } else {
            Err(SectionError::NotOnCurve)
        }
    }

    pub fn add(&self, p: &SectionPoint, q: &SectionPoint) -> SectionPoint {
        let (x1, y1) = match p {
            SectionPoint::Identity => return q.clone(),
            SectionPoint::Affine { x, y } => (x, y),
        };
        let (x2, y2) = match q {
            SectionPoint::Identity => return p.clone(),
            SectionPoint::Affine { x, y } => (x, y),
        };
        let slope = if x1 == x2 {
            if &(y1 + y2) == &FFElement::zero() {
                return SectionPoint::Identity;
            }
            // tangent: (3x² + 2ax + b) / (2y)
            let num = &(&(x1 * x1).scaled(3) + &(&self.a * x1).scaled(2)) + &self.b;
            &num / &y1.scaled(2)
        } else {
            &(y2 - y1) / &(x2 - x1)
        };
        let x3 = &(&(&slope * &slope) - &self.a) - &(x1 + x2);
        let y3 = &(&slope * &(x1 - &x3)) - y1;
        SectionPoint::Affine { x: x3, y: y3 }
    }

    pub fn scalar_mul(&self, n: i64, p: &SectionPoint) -> SectionPoint {
        if n == 0 {
            return SectionPoint::Identity;
        }
        let (n, base) = if n < 0 { (-n, p.neg()) } else { (n, p.clone()) };
        let mut acc = SectionPoint::Identity;
        for bit in (0..64 - n.leading_zeros()).rev() {
            acc = self.add(&acc, &acc);
            if (n >> bit) & 1 == 1 {
                acc = self.add(&acc, &base);
            }
        }
        acc
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum SectionPoint {
    Identity,
    Affine { x: FFElement, y: FFElement },
}

impl SectionPoint {
    pub fn is_identity(&self) -> bool {
        matches!(self, SectionPoint::Identity)
    }

    pub fn neg(&self) -> SectionPoint {
        match self {
            SectionPoint::Identity => SectionPoint::Identity,
            SectionPoint::Affine { x, y } => SectionPoint::Affine {
                x: x.clone(),
                y: -y,
            },
        }
    }

    pub fn x(&self) -> Result<&FFElement, SectionError> {
        match self {
            SectionPoint::Identity => Err(SectionError::IdentityPoint),
            SectionPoint::Affine { x, .. } => Ok(x),
        }
    }

    pub fn y(&self) -> Result<&FFElement, SectionError> {
        match self {
            SectionPoint::Identity => Err(SectionError::IdentityPoint),
            SectionPoint::Affine { y, .. } => Ok(y),
        }
    }
}

pub(crate) trait Scaled {
    fn scaled(&self, k: i64) -> FFElement;
}

impl Scaled for FFElement {
    fn scaled(&self, k: i64) -> FFElement {
        self * &FFElement::constant(rat_int(k))
    }
}

/// The standard section σ = (2, μ) with μ² = 4 − 2λ, over the Legendre curve
/// base-changed to ℚ(λ, μ).
pub fn sigma_section() -> (CurveFF, SectionPoint) {
    let ext = QuadExt::from_poly(ExactPoly::from_int_coeffs(&[4, -2]));
    let curve = CurveFF::legendre_over(ext.clone());
    let x = FFElement::from_base_in(RatFunc::constant(rat_int(2)), ext.clone());
    let y = FFElement::mu(ext);
    let p = curve.point(x, y).expect("σ lies on the curve");
    (curve, p)
}

/// The second section τ = (3, ν) with ν² = 18 − 6λ.
pub fn tau_section() -> (CurveFF, SectionPoint) {
    let ext = QuadExt::from_poly(ExactPoly::from_int_coeffs(&[18, -6]));
    let curve = CurveFF::legendre_over(ext.clone());
    let x = FFElement::from_base_in(RatFunc::constant(rat_int(3)), ext.clone());
    let y = FFElement::mu(ext);
    let p = curve.point(x, y).expect("τ lies on the curve");
    (curve, p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use legendre_exact::rat;

    #[test]
    fn sigma_is_on_curve() {
        let (curve, p) = sigma_section();
        assert!(curve.contains(&p));
    }

    #[test]
    fn doubling_matches_table() {
        let (curve, p) = sigma_section();
        let two_p = curve.add(&p, &p);
        let x = two_p.x().unwrap();
        assert!(x.is_base());
        // −(λ−4)²/(8(λ−2))
        let expected = RatFunc::new(
            ExactPoly::from_int_coeffs(&[-16, 8, -1]),
            ExactPoly::from_int_coeffs(&[-16, 8]),
        )
        .unwrap();
        assert_eq!(x.base_part(), &expected);
    }

    #[test]
    fn add_negative_gives_identity() {
        let (curve, p) = sigma_section();
        assert_eq!(curve.add(&p, &p.neg()), SectionPoint::Identity);
        assert_eq!(curve.add(&p, &SectionPoint::Identity), p);
    }

    #[test]
    fn two_torsion_doubles_to_identity() {
        let curve = CurveFF::legendre();
        let t = curve
            .point(FFElement::zero(), FFElement::zero())
            .unwrap();
        assert_eq!(curve.add(&t, &t), SectionPoint::Identity);
    }

    #[test]
    fn scalar_mul_group_relation() {
        let (curve, p) = sigma_section();
        let lhs = curve.add(&curve.scalar_mul(2, &p), &curve.scalar_mul(3, &p));
        assert_eq!(lhs, curve.scalar_mul(5, &p));
        assert_eq!(curve.scalar_mul(-2, &p), curve.scalar_mul(2, &p).neg());
    }

    #[test]
    fn constant_curve_with_rational_point() {
        // y² = x³ − x over ℚ(λ) with the 2-torsion point (1, 0)
        let curve = CurveFF::new(
            FFElement::zero(),
            FFElement::constant(rat(-1, 1)),
            FFElement::zero(),
        )
        .unwrap();
        let p = curve.point(FFElement::one(), FFElement::zero()).unwrap();
        assert!(curve.contains(&p));
    }
}
