use crate::error::ExactError;
use crate::poly::ExactPoly;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

/// Quotient of two [`ExactPoly`], kept normalized: numerator and denominator
/// coprime, denominator primitive (integer coefficients, gcd 1) with positive
/// leading coefficient. All rational content lives in the numerator.
#[derive(Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RatFunc {
    num: ExactPoly,
    den: ExactPoly,
}

impl RatFunc {
    pub fn new(num: ExactPoly, den: ExactPoly) -> Result<Self, ExactError> {
        if den.is_zero() {
            return Err(ExactError::DivisionByZero("rational function"));
        }
        Ok(Self::normalized(num, den))
    }

    fn normalized(mut num: ExactPoly, mut den: ExactPoly) -> Self {
        if num.is_zero() {
            return RatFunc {
                num,
                den: ExactPoly::one(),
            };
        }
        let g = num.gcd(&den);
        if !g.is_constant() {
            num = num.exact_div(&g).expect("gcd divides numerator");
            den = den.exact_div(&g).expect("gcd divides denominator");
        }
        let (c, core) = den.to_integer_primitive();
        den = ExactPoly::from_bigint_coeffs(core);
        num = num.scale(&(BigRational::one() / c));
        RatFunc { num, den }
    }

    pub fn from_poly(p: ExactPoly) -> Self {
        RatFunc {
            num: p,
            den: ExactPoly::one(),
        }
    }

    pub fn constant(c: BigRational) -> Self {
        RatFunc::from_poly(ExactPoly::constant(c))
    }

    pub fn zero() -> Self {
        RatFunc::from_poly(ExactPoly::zero())
    }

    pub fn one() -> Self {
        RatFunc::from_poly(ExactPoly::one())
    }

    pub fn var() -> Self {
        RatFunc::from_poly(ExactPoly::var())
    }

    pub fn num(&self) -> &ExactPoly {
        &self.num
    }

    pub fn den(&self) -> &ExactPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_constant(&self) -> bool {
        self.num.is_constant() && self.den.is_constant()
    }

    pub fn as_poly(&self) -> Option<&ExactPoly> {
        if self.den.is_constant() && self.den.coeff(0).is_one() {
            Some(&self.num)
        } else {
            None
        }
    }

    pub fn inverse(&self) -> Result<RatFunc, ExactError> {
        if self.is_zero() {
            return Err(ExactError::DivisionByZero("inverse of zero"));
        }
        Ok(RatFunc::normalized(self.den.clone(), self.num.clone()))
    }

    pub fn derivative(&self) -> RatFunc {
        let n = &(&self.num.derivative() * &self.den) - &(&self.num * &self.den.derivative());
        RatFunc::normalized(n, &self.den * &self.den)
    }

    pub fn pow(&self, e: i32) -> Result<RatFunc, ExactError> {
        if e < 0 {
            return self.inverse()?.pow(-e);
        }
        Ok(RatFunc::normalized(
            self.num.pow(e as u32),
            self.den.pow(e as u32),
        ))
    }

    pub fn eval(&self, x: &BigRational) -> Option<BigRational> {
        let d = self.den.eval(x);
        if d.is_zero() {
            return None;
        }
        Some(self.num.eval(x) / d)
    }

    /// max(deg num, deg den): the height over the rational function field.
    pub fn height(&self) -> usize {
        if self.is_zero() {
            return 0;
        }
        self.num.degree_or_zero().max(self.den.degree_or_zero())
    }

    /// Substitute a rational function for the variable.
    pub fn compose(&self, inner: &RatFunc) -> RatFunc {
        let d = self.num.degree_or_zero().max(self.den.degree_or_zero());
        // Horner over num and den separately, then divide; clear inner.den
        // powers by homogenizing both to degree d.
        let eval_poly = |p: &ExactPoly| -> ExactPoly {
            let mut acc = ExactPoly::zero();
            for k in (0..=d).rev() {
                acc = &acc * inner.num();
                let c = p.coeff(k);
                if !c.is_zero() {
                    let t = inner.den().pow((d - k) as u32).scale(&c);
                    acc = &acc + &t;
                }
            }
            acc
        };
        RatFunc::normalized(eval_poly(&self.num), eval_poly(&self.den))
    }

    pub fn to_string_var(&self, var: &str) -> String {
        if self.den.is_constant() && self.den.coeff(0).is_one() {
            self.num.to_string_var(var)
        } else {
            format!(
                "({}) / ({})",
                self.num.to_string_var(var),
                self.den.to_string_var(var)
            )
        }
    }
}

impl fmt::Debug for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_string_var("x"))
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_string_var("x"))
    }
}

impl Add for &RatFunc {
    type Output = RatFunc;
    fn add(self, rhs: &RatFunc) -> RatFunc {
        let n = &(&self.num * &rhs.den) + &(&rhs.num * &self.den);
        RatFunc::normalized(n, &self.den * &rhs.den)
    }
}

impl Sub for &RatFunc {
    type Output = RatFunc;
    fn sub(self, rhs: &RatFunc) -> RatFunc {
        let n = &(&self.num * &rhs.den) - &(&rhs.num * &self.den);
        RatFunc::normalized(n, &self.den * &rhs.den)
    }
}

impl Neg for &RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        RatFunc {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl Mul for &RatFunc {
    type Output = RatFunc;
    fn mul(self, rhs: &RatFunc) -> RatFunc {
        // Cross-cancel before multiplying to keep the gcds small.
        let g1 = self.num.gcd(&rhs.den);
        let g2 = rhs.num.gcd(&self.den);
        let n1 = self.num.exact_div(&g1).unwrap();
        let d2 = rhs.den.exact_div(&g1).unwrap();
        let n2 = rhs.num.exact_div(&g2).unwrap();
        let d1 = self.den.exact_div(&g2).unwrap();
        RatFunc::normalized(&n1 * &n2, &d1 * &d2)
    }
}

impl Div for &RatFunc {
    type Output = RatFunc;
    fn div(self, rhs: &RatFunc) -> RatFunc {
        self * &rhs.inverse().expect("division by zero rational function")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{rat, rat_int};

    #[test]
    fn normalization_sign_in_numerator() {
        // (λ−4)² / (−8(λ−2)) must move the sign into the numerator
        let num = ExactPoly::from_int_coeffs(&[16, -8, 1]);
        let den = ExactPoly::from_int_coeffs(&[16, -8]);
        let f = RatFunc::new(num, den).unwrap();
        assert_eq!(f.den(), &ExactPoly::from_int_coeffs(&[-2, 1]));
        assert_eq!(f.num().leading_coeff(), rat(-1, 8));
    }

    #[test]
    fn arithmetic_keeps_gcd_one() {
        let x = RatFunc::var();
        let a = &(&x * &x) - &RatFunc::constant(rat_int(1)); // x²−1
        let b = &x - &RatFunc::one(); // x−1
        let q = &a / &b;
        assert_eq!(q.num(), &ExactPoly::from_int_coeffs(&[1, 1]));
        assert!(q.den().is_constant());
    }

    #[test]
    fn derivative_quotient_rule() {
        let x = RatFunc::var();
        let f = &RatFunc::one() / &x; // 1/x
        let d = f.derivative(); // −1/x²
        assert_eq!(d, RatFunc::new(ExactPoly::constant_i64(-1), &ExactPoly::var() * &ExactPoly::var()).unwrap());
    }
}
