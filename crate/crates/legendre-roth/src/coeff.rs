//! Coefficient fields for series expansions: ℚ itself, and the one
//! cyclotomic layer ℚ(ω), ω² = −ω − 1, that the non-real branches of the
//! quartic need.

use legendre_exact::BigRational;
use num_traits::{One, Zero};
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

/// What a series coefficient must support: exact field arithmetic plus a
/// canonical embedding of ℚ.
pub trait Coeff:
    Clone
    + PartialEq
    + fmt::Debug
    + fmt::Display
    + Zero
    + One
    + Neg<Output = Self>
    + Sub<Output = Self>
    + Div<Output = Self>
{
    fn from_rational(r: BigRational) -> Self;

    fn from_i64(n: i64) -> Self {
        Self::from_rational(BigRational::from_integer(n.into()))
    }
}

impl Coeff for BigRational {
    fn from_rational(r: BigRational) -> Self {
        r
    }
}

/// Element a + bω of ℚ(ω) with ω² = −ω − 1 (ω a primitive cube root of
/// unity).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Eisenstein {
    pub a: BigRational,
    pub b: BigRational,
}

impl Eisenstein {
    pub fn new(a: BigRational, b: BigRational) -> Self {
        Eisenstein { a, b }
    }

    pub fn omega() -> Self {
        Eisenstein::new(BigRational::zero(), BigRational::one())
    }

    /// ω² = −1 − ω.
    pub fn omega_squared() -> Self {
        let m1 = -BigRational::one();
        Eisenstein::new(m1.clone(), m1)
    }

    /// Field norm a² − ab + b², zero only at zero.
    pub fn norm(&self) -> BigRational {
        &self.a * &self.a - &self.a * &self.b + &self.b * &self.b
    }

    pub fn inverse(&self) -> Option<Eisenstein> {
        let n = self.norm();
        if n.is_zero() {
            return None;
        }
        // conjugate a + bω² = (a − b) − bω
        Some(Eisenstein::new(
            (&self.a - &self.b) / &n,
            -&self.b / &n,
        ))
    }
}

impl Add for Eisenstein {
    type Output = Eisenstein;
    fn add(self, rhs: Eisenstein) -> Eisenstein {
        Eisenstein::new(self.a + rhs.a, self.b + rhs.b)
    }
}

impl Sub for Eisenstein {
    type Output = Eisenstein;
    fn sub(self, rhs: Eisenstein) -> Eisenstein {
        Eisenstein::new(self.a - rhs.a, self.b - rhs.b)
    }
}

impl Neg for Eisenstein {
    type Output = Eisenstein;
    fn neg(self) -> Eisenstein {
        Eisenstein::new(-self.a, -self.b)
    }
}

impl Mul for Eisenstein {
    type Output = Eisenstein;
    fn mul(self, rhs: Eisenstein) -> Eisenstein {
        // (a + bω)(c + dω) = ac + (ad + bc)ω + bdω², ω² = −ω − 1
        let bd = &self.b * &rhs.b;
        Eisenstein::new(
            &self.a * &rhs.a - &bd,
            &self.a * &rhs.b + &self.b * &rhs.a - &bd,
        )
    }
}

impl Div for Eisenstein {
    type Output = Eisenstein;
    fn div(self, rhs: Eisenstein) -> Eisenstein {
        self * rhs.inverse().expect("division by zero in ℚ(ω)")
    }
}

impl Zero for Eisenstein {
    fn zero() -> Self {
        Eisenstein::new(BigRational::zero(), BigRational::zero())
    }
    fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }
}

impl One for Eisenstein {
    fn one() -> Self {
        Eisenstein::new(BigRational::one(), BigRational::zero())
    }
}

impl fmt::Display for Eisenstein {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() {
            return write!(f, "{}", self.a);
        }
        if self.a.is_zero() {
            return write!(f, "{}*w", self.b);
        }
        write!(f, "({} + {}*w)", self.a, self.b)
    }
}

impl Coeff for Eisenstein {
    fn from_rational(r: BigRational) -> Self {
        Eisenstein::new(r, BigRational::zero())
    }
}
