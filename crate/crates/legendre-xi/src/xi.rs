//! The Manin Ξ-operator applied to explicit section coordinates, with its
//! per-place order table and height bookkeeping.

use crate::error::XiError;
use legendre_exact::{
    height, ord_at, rat_int, support_places, ExactPoly, FFElement, Place, RatFunc,
};
use serde::Serialize;

#[derive(Clone, Debug, Serialize)]
pub struct XiResult {
    pub value: FFElement,
    pub height: i64,
    pub per_place_orders: Vec<(Place, i64)>,
}

fn lam() -> FFElement {
    FFElement::from_base(RatFunc::var())
}

fn k(v: i64) -> FFElement {
    FFElement::constant(rat_int(v))
}

/// 4λ(1−λ)(D(Dx/y) + Dx/(2(x−λ)y)) + 4(1−2λ)Dx/y + 2x(x−1)/((x−λ)y),
/// evaluated exactly on a point (x, y) of the Legendre curve.
pub fn xi_apply(x: &FFElement, y: &FFElement) -> Result<XiResult, XiError> {
    if y.is_zero() {
        return Err(XiError::TwoTorsion);
    }
    let lambda = lam();
    let x_minus_lam = x - &lambda;
    if x_minus_lam.is_zero() {
        return Err(XiError::AbscissaEqualsLambda);
    }
    let dx = x.derivative();
    let dx_over_y = &dx / y;
    let outer = dx_over_y.derivative();
    let inner_corr = &dx / &(&(&x_minus_lam * y) * &k(2));
    // 4λ(1−λ) and 4(1−2λ)
    let four_l_one_minus_l = FFElement::from_base(RatFunc::from_poly(
        ExactPoly::from_int_coeffs(&[0, 4, -4]),
    ));
    let four_one_minus_2l =
        FFElement::from_base(RatFunc::from_poly(ExactPoly::from_int_coeffs(&[4, -8])));
    let t1 = &four_l_one_minus_l * &(&outer + &inner_corr);
    let t2 = &four_one_minus_2l * &dx_over_y;
    let t3 = {
        let num = &(&(x * &(x - &FFElement::one())) * &k(2));
        num / &(&x_minus_lam * y)
    };
    let value = &(&t1 + &t2) + &t3;
    let (h, orders) = describe(&value)?;
    Ok(XiResult {
        value,
        height: h,
        per_place_orders: orders,
    })
}

fn describe(value: &FFElement) -> Result<(i64, Vec<(Place, i64)>), XiError> {
    if value.is_zero() {
        return Err(XiError::TorsionSection);
    }
    let h = height(value)?;
    let mut orders = Vec::new();
    for v in support_places(value) {
        let w = ord_at(value, &v)?;
        if w != 0 {
            orders.push((v, w));
        }
    }
    Ok((h, orders))
}

/// Ξ(x, −y) = −Ξ(x, y), checked symbolically.
pub fn xi_oddness_check(x: &FFElement, y: &FFElement) -> Result<bool, XiError> {
    let plus = xi_apply(x, y)?;
    let minus = xi_apply(x, &-y)?;
    Ok(minus.value == -&plus.value)
}

/// The Theorem-2.6-style bound on the torsion multiplicity at a place:
/// 2 + max(0, ord_b Ξ(σ̃)).
pub fn multiplicity_bound(x: &FFElement, y: &FFElement, b: &Place) -> Result<i64, XiError> {
    let xi = xi_apply(x, y)?;
    let ord = ord_at(&xi.value, b)?;
    Ok(2 + ord.max(0))
}

#[derive(Clone, Debug, Serialize)]
pub struct XiHeightRatio {
    pub h_xi: i64,
    pub four_h_x: i64,
    pub excess: i64,
}

/// Reports h(Ξ) against 4h(ξ); the paper's additive constant is observed,
/// never asserted.
pub fn xi_height_ratio(x: &FFElement, y: &FFElement) -> Result<XiHeightRatio, XiError> {
    let xi = xi_apply(x, y)?;
    let h_x = height(x)?;
    Ok(XiHeightRatio {
        h_xi: xi.height,
        four_h_x: 4 * h_x,
        excess: xi.height - 4 * h_x,
    })
}
