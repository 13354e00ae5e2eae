//! Polynomial normal form of the Ξ-operator.
//!
//! Clearing y³ from Ξ and eliminating Dy via the curve equation leaves a
//! differential form Υ with coefficients polynomial in x over ℚ(λ):
//!
//!   Υ(ξ) = f₀(ξ)·ξ″ + f(ξ)·(ξ′)² + f₁(ξ)·ξ′ + f₂(ξ),   Ξ = Υ(ξ)/y³.

use crate::error::XiError;
use legendre_exact::{ExactPoly, FFElement, RatFunc};
use legendre_sections::FieldPoly;

/// The four coefficient polynomials (f₀, f, f₁, f₂) of Υ, with
/// Y = x(x−1)(x−λ) the curve cubic:
/// f₀ = 4λ(1−λ)Y, f = −2λ(1−λ)Y_x, f₁ = 4λ(1−λ)x(x−1) + 4(1−2λ)Y,
/// f₂ = 2x²(x−1)².
pub struct UpsilonForm {
    pub f0: FieldPoly,
    pub f: FieldPoly,
    pub f1: FieldPoly,
    pub f2: FieldPoly,
}

fn base(cs: &[i64]) -> FFElement {
    FFElement::from_base(RatFunc::from_poly(ExactPoly::from_int_coeffs(cs)))
}

fn poly(cs: &[&[i64]]) -> FieldPoly {
    FieldPoly::new(cs.iter().map(|c| base(c)).collect())
}

pub fn upsilon_form() -> UpsilonForm {
    // Y = x³ − (1+λ)x² + λx,  Y_x = 3x² − 2(1+λ)x + λ
    let y_cubic = poly(&[&[0], &[0, 1], &[-1, -1], &[1]]);
    let y_x = poly(&[&[0, 1], &[-2, -2], &[3]]);
    let four_l_one_minus_l = FieldPoly::constant(base(&[0, 4, -4]));
    let f0 = four_l_one_minus_l.mul(&y_cubic);
    let f = y_x.scale(&base(&[0, -2, 2]));
    let x_x_minus_1 = poly(&[&[0], &[-1], &[1]]);
    let f1 = four_l_one_minus_l
        .mul(&x_x_minus_1)
        .add(&y_cubic.scale(&base(&[4, -8])));
    let f2 = x_x_minus_1.mul(&x_x_minus_1).scale(&base(&[2]));
    debug_assert_eq!(f0.degree(), Some(3));
    debug_assert_eq!(f.degree(), Some(2));
    debug_assert_eq!(f1.degree(), Some(3));
    debug_assert_eq!(f2.degree(), Some(4));
    UpsilonForm { f0, f, f1, f2 }
}

impl UpsilonForm {
    /// Υ applied to an abscissa ξ, entirely inside the coefficient field.
    pub fn apply(&self, xi: &FFElement) -> FFElement {
        let d1 = xi.derivative();
        let d2 = d1.derivative();
        let mut acc = &self.f0.eval(xi) * &d2;
        acc = &acc + &(&self.f.eval(xi) * &(&d1 * &d1));
        acc = &acc + &(&self.f1.eval(xi) * &d1);
        &acc + &self.f2.eval(xi)
    }

    /// Υ applied to a polynomial abscissa ξ(λ) ∈ ℚ[λ]; the result is again a
    /// polynomial in λ.
    pub fn apply_poly(&self, xi: &ExactPoly) -> Result<ExactPoly, XiError> {
        let value = self.apply(&FFElement::from_base(RatFunc::from_poly(xi.clone())));
        let rf = value.base_part();
        match rf.as_poly() {
            Some(p) => Ok(p.clone()),
            None => Err(XiError::Precondition(
                "Υ of a polynomial abscissa must be polynomial",
            )),
        }
    }
}
