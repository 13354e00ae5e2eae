use crate::error::ExactError;
use crate::poly::ExactPoly;
use crate::ratfunc::RatFunc;
use num_rational::BigRational;
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::sync::Arc;

/// Descriptor of the quadratic extension ℚ(λ)(μ) with μ² = f(λ).
#[derive(Clone, PartialEq, Eq)]
pub struct QuadExt {
    modulus: RatFunc,
}

impl QuadExt {
    pub fn new(modulus: RatFunc) -> Arc<Self> {
        assert!(!modulus.is_zero(), "extension modulus must be nonzero");
        Arc::new(QuadExt { modulus })
    }

    pub fn from_poly(f: ExactPoly) -> Arc<Self> {
        QuadExt::new(RatFunc::from_poly(f))
    }

    /// μ² as a rational function of the base variable.
    pub fn modulus(&self) -> &RatFunc {
        &self.modulus
    }
}

impl fmt::Debug for QuadExt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "mu^2 = {}", self.modulus)
    }
}

/// Element a + b·μ of ℚ(λ) or of a quadratic extension ℚ(λ)(μ), μ² = f(λ).
/// `ext = None` encodes the trivial extension (b identically zero).
#[derive(Clone)]
pub struct FFElement {
    a: RatFunc,
    b: RatFunc,
    ext: Option<Arc<QuadExt>>,
}

impl FFElement {
    pub fn from_base(a: RatFunc) -> Self {
        FFElement {
            a,
            b: RatFunc::zero(),
            ext: None,
        }
    }

    pub fn from_base_in(a: RatFunc, ext: Arc<QuadExt>) -> Self {
        FFElement {
            a,
            b: RatFunc::zero(),
            ext: Some(ext),
        }
    }

    pub fn new(a: RatFunc, b: RatFunc, ext: Arc<QuadExt>) -> Self {
        FFElement { a, b, ext: Some(ext) }
    }

    pub fn constant(c: BigRational) -> Self {
        FFElement::from_base(RatFunc::constant(c))
    }

    pub fn zero() -> Self {
        FFElement::from_base(RatFunc::zero())
    }

    pub fn one() -> Self {
        FFElement::from_base(RatFunc::one())
    }

    /// The generator μ of the extension.
    pub fn mu(ext: Arc<QuadExt>) -> Self {
        FFElement {
            a: RatFunc::zero(),
            b: RatFunc::one(),
            ext: Some(ext),
        }
    }

    pub fn base_part(&self) -> &RatFunc {
        &self.a
    }

    pub fn mu_part(&self) -> &RatFunc {
        &self.b
    }

    pub fn extension(&self) -> Option<&Arc<QuadExt>> {
        self.ext.as_ref()
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    /// True when the element lies in the base field ℚ(λ).
    pub fn is_base(&self) -> bool {
        self.b.is_zero()
    }

    /// True when the element is b·μ with no base component.
    pub fn is_pure_mu(&self) -> bool {
        self.a.is_zero() && !self.b.is_zero()
    }

    pub fn is_constant(&self) -> bool {
        self.b.is_zero() && self.a.is_constant()
    }

    /// Galois conjugate a − b·μ.
    pub fn conj(&self) -> Self {
        FFElement {
            a: self.a.clone(),
            b: -&self.b,
            ext: self.ext.clone(),
        }
    }

    /// Field norm a² − b²·f ∈ ℚ(λ).
    pub fn norm(&self) -> RatFunc {
        match &self.ext {
            None => &self.a * &self.a,
            Some(e) => {
                let bb = &self.b * &self.b;
                &(&self.a * &self.a) - &(&bb * e.modulus())
            }
        }
    }

    pub fn inverse(&self) -> Result<FFElement, ExactError> {
        if self.is_zero() {
            return Err(ExactError::DivisionByZero("inverse of zero element"));
        }
        if self.b.is_zero() {
            return Ok(FFElement {
                a: self.a.inverse()?,
                b: RatFunc::zero(),
                ext: self.ext.clone(),
            });
        }
        let n = self.norm();
        if n.is_zero() {
            return Err(ExactError::Unsupported(
                "extension modulus is a square: zero divisor encountered",
            ));
        }
        let n_inv = n.inverse()?;
        Ok(FFElement {
            a: &self.a * &n_inv,
            b: &(-&self.b) * &n_inv,
            ext: self.ext.clone(),
        })
    }

    /// d/dλ, with D(μ) = f′(λ)/(2μ) so that b·μ differentiates to
    /// (b′ + b·f′/(2f))·μ.
    pub fn derivative(&self) -> FFElement {
        let da = self.a.derivative();
        match &self.ext {
            None => FFElement {
                a: da,
                b: RatFunc::zero(),
                ext: None,
            },
            Some(e) => {
                if self.b.is_zero() {
                    return FFElement {
                        a: da,
                        b: RatFunc::zero(),
                        ext: self.ext.clone(),
                    };
                }
                let f = e.modulus();
                let half = RatFunc::constant(crate::rat(1, 2));
                let correction = &(&self.b * &half) * &(&f.derivative() / f);
                FFElement {
                    a: da,
                    b: &self.b.derivative() + &correction,
                    ext: self.ext.clone(),
                }
            }
        }
    }

    pub fn pow(&self, e: i32) -> Result<FFElement, ExactError> {
        if e < 0 {
            return self.inverse()?.pow(-e);
        }
        let mut acc = FFElement::one();
        let mut base = self.clone();
        let mut k = e as u32;
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        Ok(acc)
    }

    fn unify(lhs: &FFElement, rhs: &FFElement) -> Option<Arc<QuadExt>> {
        match (&lhs.ext, &rhs.ext) {
            (None, None) => None,
            (Some(e), None) | (None, Some(e)) => Some(e.clone()),
            (Some(e1), Some(e2)) => {
                assert!(
                    Arc::ptr_eq(e1, e2) || e1.modulus() == e2.modulus(),
                    "elements live in different extensions"
                );
                Some(e1.clone())
            }
        }
    }

    pub fn to_string_var(&self, var: &str, gen: &str) -> String {
        if self.b.is_zero() {
            return self.a.to_string_var(var);
        }
        if self.a.is_zero() {
            return format!("({})*{}", self.b.to_string_var(var), gen);
        }
        format!(
            "({}) + ({})*{}",
            self.a.to_string_var(var),
            self.b.to_string_var(var),
            gen
        )
    }
}

impl PartialEq for FFElement {
    fn eq(&self, other: &Self) -> bool {
        self.a == other.a && self.b == other.b
    }
}

impl Eq for FFElement {}

impl fmt::Debug for FFElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_string_var("x", "mu"))
    }
}

impl Add for &FFElement {
    type Output = FFElement;
    fn add(self, rhs: &FFElement) -> FFElement {
        let ext = FFElement::unify(self, rhs);
        FFElement {
            a: &self.a + &rhs.a,
            b: &self.b + &rhs.b,
            ext,
        }
    }
}

impl Sub for &FFElement {
    type Output = FFElement;
    fn sub(self, rhs: &FFElement) -> FFElement {
        self + &(-rhs)
    }
}

impl Neg for &FFElement {
    type Output = FFElement;
    fn neg(self) -> FFElement {
        FFElement {
            a: -&self.a,
            b: -&self.b,
            ext: self.ext.clone(),
        }
    }
}

impl Mul for &FFElement {
    type Output = FFElement;
    fn mul(self, rhs: &FFElement) -> FFElement {
        let ext = FFElement::unify(self, rhs);
        let a1a2 = &self.a * &rhs.a;
        let cross = &(&self.a * &rhs.b) + &(&self.b * &rhs.a);
        let a = match &ext {
            Some(e) if !self.b.is_zero() && !rhs.b.is_zero() => {
                &a1a2 + &(&(&self.b * &rhs.b) * e.modulus())
            }
            _ => a1a2,
        };
        FFElement { a, b: cross, ext }
    }
}

impl Div for &FFElement {
    type Output = FFElement;
    fn div(self, rhs: &FFElement) -> FFElement {
        self * &rhs.inverse().expect("division by zero field element")
    }
}

impl Serialize for FFElement {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("FFElement", 3)?;
        s.serialize_field("a", &self.a)?;
        s.serialize_field("b", &self.b)?;
        let modulus = self.ext.as_ref().map(|e| e.modulus().clone());
        s.serialize_field("modulus", &modulus)?;
        s.end()
    }
}
