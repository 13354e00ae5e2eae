//! Places of ℚ(λ) and of a quadratic extension ℚ(λ)(μ), μ² = f(λ), with the
//! valuation normalized to value group ℤ, plus the heights built from it.
//!
//! A finite place is represented by a polynomial over ℚ (normally irreducible;
//! coprime-refined squarefree factors are accepted because all our data is
//! ℚ-rational, so conjugate roots carry equal orders). On the extension a base
//! place is ramified exactly when f has odd order there; the local parameter
//! is then μ and orders of base elements double, keeping the value group ℤ.

use crate::error::ExactError;
use crate::factor::{coprime_refine, squarefree_decompose};
use crate::fields::FFElement;
use crate::poly::ExactPoly;
use crate::ratfunc::RatFunc;
use serde::{Serialize, Serializer};
use std::fmt;
use std::hash::{Hash, Hasher};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Place {
    /// Zero locus of a primitive polynomial over ℚ.
    Finite(ExactPoly),
    /// The place over λ = ∞.
    Infinity,
}

impl Place {
    pub fn at_root_of(p: ExactPoly) -> Self {
        assert!(!p.is_constant(), "finite place needs a nonconstant polynomial");
        Place::Finite(p.primitive_part())
    }

    /// The place λ = r for a rational number r (minimal polynomial λ − r).
    pub fn at_rational(r: crate::BigRational) -> Self {
        Place::Finite(
            ExactPoly::from_coeffs(vec![-r, crate::BigRational::from_integer(1.into())])
                .primitive_part(),
        )
    }

    pub fn at_integer(r: i64) -> Self {
        Place::Finite(ExactPoly::from_int_coeffs(&[-r, 1]))
    }

    /// Degree of the residue field over ℚ (number of conjugate base points).
    pub fn degree(&self) -> usize {
        match self {
            Place::Finite(p) => p.degree_or_zero(),
            Place::Infinity => 1,
        }
    }

    /// Order of a nonzero rational function at this place of ℚ(λ).
    fn ord_base(&self, f: &RatFunc) -> i64 {
        match self {
            Place::Finite(p) => {
                f.num().multiplicity_of(p) as i64 - f.den().multiplicity_of(p) as i64
            }
            Place::Infinity => f.den().degree_or_zero() as i64 - f.num().degree_or_zero() as i64,
        }
    }

    /// Order of the extension modulus at this place (the base valuation).
    fn modulus_ord(&self, elem: &FFElement) -> i64 {
        match elem.extension() {
            None => 0,
            Some(e) => self.ord_base(e.modulus()),
        }
    }

    /// Whether the place ramifies in the extension the element lives in.
    pub fn is_ramified_for(&self, elem: &FFElement) -> bool {
        self.modulus_ord(elem) % 2 != 0
    }

    /// Number of geometric points of the covering curve above one root of
    /// this place (2 if unramified, 1 if ramified; 1 on the trivial
    /// extension).
    fn points_above(&self, elem: &FFElement) -> i64 {
        if elem.extension().is_none() {
            1
        } else if self.is_ramified_for(elem) {
            1
        } else {
            2
        }
    }
}

impl fmt::Display for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Place::Finite(p) => write!(f, "{}", p.to_string_var("l")),
            Place::Infinity => write!(f, "inf"),
        }
    }
}

impl Hash for Place {
    fn hash<H: Hasher>(&self, state: &mut H) {
        match self {
            Place::Finite(p) => {
                1u8.hash(state);
                p.to_string_var("l").hash(state);
            }
            Place::Infinity => 0u8.hash(state),
        }
    }
}

impl Serialize for Place {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

/// Order of a nonzero rational function at a place of ℚ(λ).
pub fn ord_at_ratfunc(f: &RatFunc, v: &Place) -> Result<i64, ExactError> {
    if f.is_zero() {
        return Err(ExactError::ZeroValuation);
    }
    Ok(v.ord_base(f))
}

/// Order of a nonzero field element at a place, normalized to value group ℤ.
///
/// On the quadratic extension: at a ramified place orders of base elements
/// double and v(μ) is the (odd) order of f, so a + bμ always has a
/// well-defined order there. At an unramified place the order of a mixed
/// element with equal candidate orders would require factoring in the
/// extension and is reported as [`ExactError::AmbiguousOrder`].
pub fn ord_at(f: &FFElement, v: &Place) -> Result<i64, ExactError> {
    if f.is_zero() {
        return Err(ExactError::ZeroValuation);
    }
    if f.extension().is_none() {
        return ord_at_ratfunc(f.base_part(), v);
    }
    let k = v.modulus_ord(f);
    let a = f.base_part();
    let b = f.mu_part();
    if k % 2 != 0 {
        // ramified: value group stays ℤ with v(base) doubled, v(μ) = k
        let va = if a.is_zero() { None } else { Some(2 * v.ord_base(a)) };
        let vb = if b.is_zero() {
            None
        } else {
            Some(2 * v.ord_base(b) + k)
        };
        Ok(match (va, vb) {
            (Some(x), Some(y)) => x.min(y), // opposite parities: min is exact
            (Some(x), None) | (None, Some(x)) => x,
            (None, None) => unreachable!(),
        })
    } else {
        let va = if a.is_zero() { None } else { Some(v.ord_base(a)) };
        let vb = if b.is_zero() {
            None
        } else {
            Some(v.ord_base(b) + k / 2)
        };
        match (va, vb) {
            (Some(x), Some(y)) if x == y => Err(ExactError::AmbiguousOrder),
            (Some(x), Some(y)) => Ok(x.min(y)),
            (Some(x), None) | (None, Some(x)) => Ok(x),
            (None, None) => unreachable!(),
        }
    }
}

/// Pairwise-coprime squarefree basis refining the squarefree decompositions
/// of all given polynomials; orders at its elements are root-uniform.
fn uniform_basis(polys: &[&ExactPoly]) -> Vec<ExactPoly> {
    let mut factors = Vec::new();
    for p in polys {
        if p.is_zero() || p.is_constant() {
            continue;
        }
        for (f, _) in squarefree_decompose(p).expect("nonzero") {
            factors.push(f);
        }
    }
    coprime_refine(&factors)
}

/// All places where the element can have a zero or pole, as a coprime basis
/// plus infinity.
pub fn support_places(f: &FFElement) -> Vec<Place> {
    support_places_many(&[f])
}

/// Joint support basis for several elements of the same field: a place list
/// at which every given element has a root-uniform order.
pub fn support_places_many(elems: &[&FFElement]) -> Vec<Place> {
    let mut polys: Vec<&ExactPoly> = Vec::new();
    for f in elems {
        let (a, b) = (f.base_part(), f.mu_part());
        if !a.is_zero() {
            polys.push(a.num());
            polys.push(a.den());
        }
        if !b.is_zero() {
            polys.push(b.num());
            polys.push(b.den());
        }
        if let Some(e) = f.extension() {
            polys.push(e.modulus().num());
            polys.push(e.modulus().den());
        }
    }
    let mut places: Vec<Place> = uniform_basis(&polys).into_iter().map(Place::Finite).collect();
    places.push(Place::Infinity);
    places
}

/// Height of a rational function over ℚ(λ): max(deg num, deg den).
pub fn height_ratfunc(f: &RatFunc) -> i64 {
    f.height() as i64
}

/// Height h(f) = −Σ_v min{0, v(f)} over all places of the field f lives in,
/// places counted geometrically (a degree-d place below 2 unramified points
/// contributes with weight 2d).
pub fn height(f: &FFElement) -> Result<i64, ExactError> {
    if f.is_zero() || f.is_constant() {
        return Ok(0);
    }
    if f.extension().is_none() {
        return Ok(height_ratfunc(f.base_part()));
    }
    if f.is_base() {
        // base-field element viewed upstairs: every order doubles in total
        return Ok(2 * height_ratfunc(f.base_part()));
    }
    let mut h: i64 = 0;
    for v in support_places(f) {
        let w = ord_at(f, &v)?;
        if w < 0 {
            h += -w * v.degree() as i64 * v.points_above(f);
        }
    }
    Ok(h)
}

/// h(E) = Σ_v max{0, −6v(a), −3v(b), −2v(c)} with the per-place table.
pub fn curve_height_places(
    a: &FFElement,
    b: &FFElement,
    c: &FFElement,
) -> Result<(i64, Vec<(Place, i64)>), ExactError> {
    let mut polys: Vec<&ExactPoly> = Vec::new();
    let mut ext = None;
    for coeff in [a, b, c] {
        if !coeff.base_part().is_zero() {
            polys.push(coeff.base_part().num());
            polys.push(coeff.base_part().den());
        }
        if !coeff.mu_part().is_zero() {
            polys.push(coeff.mu_part().num());
            polys.push(coeff.mu_part().den());
        }
        if let Some(e) = coeff.extension() {
            ext = Some(e.clone());
        }
    }
    let probe = match &ext {
        Some(e) => {
            polys.push(e.modulus().num());
            polys.push(e.modulus().den());
            FFElement::from_base_in(RatFunc::one(), e.clone())
        }
        None => FFElement::one(),
    };
    let mut places: Vec<Place> = uniform_basis(&polys).into_iter().map(Place::Finite).collect();
    places.push(Place::Infinity);
    let weights = [6i64, 3, 2];
    let mut total = 0i64;
    let mut table = Vec::new();
    for v in places {
        let mut local = 0i64;
        for (coeff, wt) in [a, b, c].into_iter().zip(weights) {
            if coeff.is_zero() {
                continue;
            }
            let lifted = if coeff.extension().is_none() {
                match probe.extension() {
                    Some(e) => FFElement::new(
                        coeff.base_part().clone(),
                        coeff.mu_part().clone(),
                        e.clone(),
                    ),
                    None => coeff.clone(),
                }
            } else {
                coeff.clone()
            };
            let ord = ord_at(&lifted, &v)?;
            local = local.max(-wt * ord);
        }
        if local > 0 {
            let weight = v.degree() as i64 * v.points_above(&probe);
            total += local * weight;
            table.push((v, local * weight));
        }
    }
    Ok((total, table))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fields::QuadExt;
    use crate::rat_int;

    fn mu_ext() -> std::sync::Arc<QuadExt> {
        QuadExt::from_poly(ExactPoly::from_int_coeffs(&[4, -2]))
    }

    fn lam_minus(c: i64) -> ExactPoly {
        ExactPoly::from_int_coeffs(&[-c, 1])
    }

    #[test]
    fn ord_defining_property() {
        let f = RatFunc::from_poly(lam_minus(2));
        assert_eq!(ord_at_ratfunc(&f, &Place::at_integer(2)).unwrap(), 1);
    }

    #[test]
    fn ramified_pole_order_doubles() {
        // x(2σ) = −(λ−4)²/(8(λ−2)) over ℚ(λ,μ), μ² = 4−2λ: ord −2 at λ=2
        let num = ExactPoly::from_int_coeffs(&[-16, 8, -1]);
        let den = ExactPoly::from_int_coeffs(&[-16, 8]);
        let x2 = FFElement::from_base_in(RatFunc::new(num, den).unwrap(), mu_ext());
        assert_eq!(ord_at(&x2, &Place::at_integer(2)).unwrap(), -2);
    }

    #[test]
    fn xi_sigma_order_at_two() {
        // Ξ(σ) = 2μ/(2−λ)²: order −3 at the ramified place over λ = 2
        let e = mu_ext();
        let b = RatFunc::new(
            ExactPoly::constant_i64(2),
            &lam_minus(2) * &lam_minus(2),
        )
        .unwrap();
        let xi = FFElement::new(RatFunc::zero(), b, e);
        assert_eq!(ord_at(&xi, &Place::at_integer(2)).unwrap(), -3);
        // and its height is the total pole degree
        assert_eq!(height(&xi).unwrap(), 3);
    }

    #[test]
    fn height_doubles_on_cover() {
        let lam = FFElement::from_base(RatFunc::var());
        assert_eq!(height(&lam).unwrap(), 1);
        let lam_up = FFElement::from_base_in(RatFunc::var(), mu_ext());
        assert_eq!(height(&lam_up).unwrap(), 2);
    }

    #[test]
    fn legendre_curve_heights() {
        // y² = x(x−1)(x−λ): a = −(1+λ), b = λ, c = 0
        let a = FFElement::from_base(RatFunc::from_poly(ExactPoly::from_int_coeffs(&[-1, -1])));
        let b = FFElement::from_base(RatFunc::var());
        let c = FFElement::zero();
        let (h, _) = curve_height_places(&a, &b, &c).unwrap();
        assert_eq!(h, 6);
        let e = mu_ext();
        let a2 = FFElement::from_base_in(
            RatFunc::from_poly(ExactPoly::from_int_coeffs(&[-1, -1])),
            e.clone(),
        );
        let b2 = FFElement::from_base_in(RatFunc::var(), e.clone());
        let (h2, _) = curve_height_places(&a2, &b2, &c).unwrap();
        assert_eq!(h2, 12);
        let (h0, _) = curve_height_places(
            &FFElement::constant(rat_int(1)),
            &FFElement::constant(rat_int(-1)),
            &FFElement::constant(rat_int(3)),
        )
        .unwrap();
        assert_eq!(h0, 0);
    }

    #[test]
    fn product_formula_pure_elements() {
        // Σ_v v(f)·deg·points = 0 for b·μ over the cover
        let e = mu_ext();
        let b = RatFunc::new(
            ExactPoly::from_int_coeffs(&[3, 0, 1]),
            ExactPoly::from_int_coeffs(&[-1, 1, 2]),
        )
        .unwrap();
        let f = FFElement::new(RatFunc::zero(), b, e);
        let mut total = 0i64;
        for v in support_places(&f) {
            total += ord_at(&f, &v).unwrap() * v.degree() as i64 * v.points_above(&f);
        }
        assert_eq!(total, 0);
    }
}
