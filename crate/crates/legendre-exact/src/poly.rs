use crate::error::ExactError;
use crate::modp;
use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::de::Error as DeError;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// Univariate polynomial with arbitrary-precision rational coefficients,
/// stored in ascending degree with a nonzero leading coefficient.
#[derive(Clone, PartialEq, Eq)]
pub struct ExactPoly {
    coeffs: Vec<BigRational>,
}

impl ExactPoly {
    pub fn zero() -> Self {
        ExactPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        ExactPoly::constant(BigRational::one())
    }

    pub fn constant(c: BigRational) -> Self {
        ExactPoly::from_coeffs(vec![c])
    }

    pub fn constant_i64(c: i64) -> Self {
        ExactPoly::constant(BigRational::from_integer(BigInt::from(c)))
    }

    /// The variable itself (λ, t, x, ... depending on context).
    pub fn var() -> Self {
        ExactPoly::from_int_coeffs(&[0, 1])
    }

    /// `c · X^d`.
    pub fn monomial(d: usize, c: BigRational) -> Self {
        if c.is_zero() {
            return ExactPoly::zero();
        }
        let mut coeffs = vec![BigRational::zero(); d + 1];
        coeffs[d] = c;
        ExactPoly { coeffs }
    }

    pub fn from_coeffs(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().map_or(false, |c| c.is_zero()) {
            coeffs.pop();
        }
        ExactPoly { coeffs }
    }

    /// Ascending-degree integer coefficients.
    pub fn from_int_coeffs(cs: &[i64]) -> Self {
        ExactPoly::from_coeffs(
            cs.iter()
                .map(|&c| BigRational::from_integer(BigInt::from(c)))
                .collect(),
        )
    }

    pub fn from_bigint_coeffs(cs: Vec<BigInt>) -> Self {
        ExactPoly::from_coeffs(cs.into_iter().map(BigRational::from_integer).collect())
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn coeff(&self, d: usize) -> BigRational {
        self.coeffs.get(d).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Degree with deg 0 for constants and the zero polynomial alike.
    pub fn degree_or_zero(&self) -> usize {
        self.degree().unwrap_or(0)
    }

    pub fn leading_coeff(&self) -> BigRational {
        self.coeffs.last().cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return ExactPoly::zero();
        }
        ExactPoly {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    pub fn derivative(&self) -> Self {
        if self.coeffs.len() <= 1 {
            return ExactPoly::zero();
        }
        ExactPoly::from_coeffs(
            self.coeffs[1..]
                .iter()
                .enumerate()
                .map(|(i, c)| c * BigRational::from_integer(BigInt::from(i + 1)))
                .collect(),
        )
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        let mut acc = 0.0;
        for c in self.coeffs.iter().rev() {
            acc = acc * x + rat_to_f64(c);
        }
        acc
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = ExactPoly::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Substitute another polynomial for the variable.
    pub fn compose(&self, inner: &ExactPoly) -> Self {
        let mut acc = ExactPoly::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * inner) + &ExactPoly::constant(c.clone());
        }
        acc
    }

    /// Quotient and remainder of exact division over ℚ.
    pub fn div_rem(&self, d: &ExactPoly) -> Result<(ExactPoly, ExactPoly), ExactError> {
        if d.is_zero() {
            return Err(ExactError::DivisionByZero("polynomial division"));
        }
        let dd = d.degree().unwrap();
        let lc_inv = BigRational::one() / d.leading_coeff();
        let mut rem = self.coeffs.clone();
        if rem.len() < dd + 1 {
            return Ok((ExactPoly::zero(), self.clone()));
        }
        let qlen = rem.len() - dd;
        let mut quo = vec![BigRational::zero(); qlen];
        for i in (0..qlen).rev() {
            let c = &rem[i + dd] * &lc_inv;
            if !c.is_zero() {
                for (j, dc) in d.coeffs.iter().enumerate() {
                    let t = dc * &c;
                    rem[i + j] = &rem[i + j] - &t;
                }
            }
            quo[i] = c;
        }
        rem.truncate(dd);
        Ok((ExactPoly::from_coeffs(quo), ExactPoly::from_coeffs(rem)))
    }

    /// True exact divisor test; returns the quotient when the division is exact.
    pub fn exact_div(&self, d: &ExactPoly) -> Option<ExactPoly> {
        if d.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(ExactPoly::zero());
        }
        if self.degree_or_zero() < d.degree_or_zero() {
            return None;
        }
        // run the division on primitive integer cores: by Gauss's lemma an
        // exact quotient of primitives is an integer polynomial, so any
        // non-integer step aborts early instead of paying rational gcds
        let (cn, a) = self.to_integer_primitive();
        let (cd, b) = d.to_integer_primitive();
        let q = exact_div_int(&a, &b)?;
        let content = cn / cd;
        Some(ExactPoly::from_bigint_coeffs(q).scale(&content))
    }

    /// How many times `p` divides `self` (0 if not at all).
    pub fn multiplicity_of(&self, p: &ExactPoly) -> usize {
        assert!(!self.is_zero() && !p.is_constant());
        let mut m = 0;
        let mut cur = self.clone();
        while let Some(q) = cur.exact_div(p) {
            m += 1;
            cur = q;
        }
        m
    }

    /// Splits into rational content and a primitive integer-coefficient core,
    /// so that `self = content · core` with `gcd` of the core coefficients 1
    /// and positive leading coefficient.
    pub fn to_integer_primitive(&self) -> (BigRational, Vec<BigInt>) {
        if self.is_zero() {
            return (BigRational::zero(), Vec::new());
        }
        let mut den_lcm = BigInt::one();
        for c in &self.coeffs {
            den_lcm = den_lcm.lcm(c.denom());
        }
        let ints: Vec<BigInt> = self
            .coeffs
            .iter()
            .map(|c| c.numer() * (&den_lcm / c.denom()))
            .collect();
        let mut g = BigInt::zero();
        for c in &ints {
            g = g.gcd(c);
        }
        if ints.last().unwrap().sign() == Sign::Minus {
            g = -g;
        }
        let core: Vec<BigInt> = ints.iter().map(|c| c / &g).collect();
        (BigRational::new(g, den_lcm), core)
    }

    /// The primitive positive-leading-coefficient integer form.
    pub fn primitive_part(&self) -> ExactPoly {
        ExactPoly::from_bigint_coeffs(self.to_integer_primitive().1)
    }

    /// Monic form (unit normalization over ℚ).
    pub fn monic(&self) -> ExactPoly {
        if self.is_zero() {
            return ExactPoly::zero();
        }
        let lc = self.leading_coeff();
        self.scale(&(BigRational::one() / lc))
    }

    /// Greatest common divisor, returned primitive with positive leading
    /// coefficient. Uses a modular fast path (a single prime certifies
    /// coprimality; CRT reconstruction otherwise) with a rational-Euclid
    /// fallback.
    pub fn gcd(&self, other: &ExactPoly) -> ExactPoly {
        if self.is_zero() {
            return other.primitive_part();
        }
        if other.is_zero() {
            return self.primitive_part();
        }
        if self.is_constant() || other.is_constant() {
            return ExactPoly::one();
        }
        let (_, a) = self.to_integer_primitive();
        let (_, b) = other.to_integer_primitive();
        match modp::int_poly_gcd(&a, &b) {
            Some(g) => ExactPoly::from_bigint_coeffs(g),
            None => self.gcd_euclid(other),
        }
    }

    fn gcd_euclid(&self, other: &ExactPoly) -> ExactPoly {
        let mut a = self.monic();
        let mut b = other.monic();
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b).unwrap();
            a = b;
            b = if r.is_zero() { r } else { r.monic() };
        }
        a.primitive_part()
    }

    /// Renders with an explicit variable name, e.g. `"3*l^2 - 16*l + 16"`.
    pub fn to_string_var(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (d, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let mag = c.abs();
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else if neg {
                out.push_str(" - ");
            } else {
                out.push_str(" + ");
            }
            let coeff_str = if mag.is_integer() {
                mag.numer().to_string()
            } else {
                format!("{}/{}", mag.numer(), mag.denom())
            };
            if d == 0 {
                out.push_str(&coeff_str);
            } else {
                if !mag.is_one() {
                    out.push_str(&coeff_str);
                    out.push('*');
                }
                out.push_str(var);
                if d > 1 {
                    out.push_str(&format!("^{}", d));
                }
            }
        }
        out
    }
}

impl fmt::Debug for ExactPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_string_var("x"))
    }
}

impl fmt::Display for ExactPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_string_var("x"))
    }
}

impl Add for &ExactPoly {
    type Output = ExactPoly;
    fn add(self, rhs: &ExactPoly) -> ExactPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            let a = self.coeffs.get(i);
            let b = rhs.coeffs.get(i);
            out.push(match (a, b) {
                (Some(a), Some(b)) => a + b,
                (Some(a), None) => a.clone(),
                (None, Some(b)) => b.clone(),
                (None, None) => unreachable!(),
            });
        }
        ExactPoly::from_coeffs(out)
    }
}

impl Sub for &ExactPoly {
    type Output = ExactPoly;
    fn sub(self, rhs: &ExactPoly) -> ExactPoly {
        self + &(-rhs)
    }
}

impl Neg for &ExactPoly {
    type Output = ExactPoly;
    fn neg(self) -> ExactPoly {
        ExactPoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Mul for &ExactPoly {
    type Output = ExactPoly;
    fn mul(self, rhs: &ExactPoly) -> ExactPoly {
        if self.is_zero() || rhs.is_zero() {
            return ExactPoly::zero();
        }
        // Integer cores keep big-rational gcd churn out of the inner loop.
        let (ca, a) = self.to_integer_primitive();
        let (cb, b) = rhs.to_integer_primitive();
        let mut prod = vec![BigInt::zero(); a.len() + b.len() - 1];
        for (i, ai) in a.iter().enumerate() {
            if ai.is_zero() {
                continue;
            }
            for (j, bj) in b.iter().enumerate() {
                if bj.is_zero() {
                    continue;
                }
                prod[i + j] += ai * bj;
            }
        }
        let c = ca * cb;
        ExactPoly::from_coeffs(prod.into_iter().map(|p| BigRational::from_integer(p) * &c).collect())
    }
}

impl Serialize for ExactPoly {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let strings: Vec<String> = self
            .coeffs
            .iter()
            .map(|c| {
                if c.is_integer() {
                    c.numer().to_string()
                } else {
                    format!("{}/{}", c.numer(), c.denom())
                }
            })
            .collect();
        strings.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for ExactPoly {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let strings = Vec::<String>::deserialize(deserializer)?;
        let mut coeffs = Vec::with_capacity(strings.len());
        for s in &strings {
            let r: BigRational = s
                .parse()
                .map_err(|_| D::Error::custom(format!("bad rational coefficient {s:?}")))?;
            coeffs.push(r);
        }
        Ok(ExactPoly::from_coeffs(coeffs))
    }
}

/// Lossy conversion of a big integer to `f64`, correct to within rounding even
/// far outside the `i64` range.
/// Exact long division of integer polynomials, aborting as soon as a step
/// fails to divide. `None` means the division is not exact over ℤ.
pub(crate) fn exact_div_int(a: &[BigInt], b: &[BigInt]) -> Option<Vec<BigInt>> {
    use num_integer::Integer;
    let db = b.len() - 1;
    let lc = b.last().expect("nonzero divisor");
    let mut r: Vec<BigInt> = a.to_vec();
    let mut q = vec![BigInt::zero(); a.len() - b.len() + 1];
    for k in (0..q.len()).rev() {
        let top = std::mem::take(&mut r[k + db]);
        if top.is_zero() {
            continue;
        }
        let (c, rem) = top.div_rem(lc);
        if !rem.is_zero() {
            return None;
        }
        for (j, bc) in b.iter().enumerate().take(db) {
            r[k + j] -= &c * bc;
        }
        q[k] = c;
    }
    if r.iter().all(|c| c.is_zero()) {
        Some(q)
    } else {
        None
    }
}

pub fn big_to_f64(x: &BigInt) -> f64 {
    x.to_f64().unwrap_or(f64::INFINITY)
}

/// Lossy conversion of a big rational to `f64`, stable even when numerator and
/// denominator each overflow `f64` on their own.
pub fn rat_to_f64(r: &BigRational) -> f64 {
    if r.is_zero() {
        return 0.0;
    }
    let num = r.numer();
    let den = r.denom();
    let bn = num.bits() as i64;
    let bd = den.bits() as i64;
    let shift_n = (bn - 96).max(0) as u64;
    let shift_d = (bd - 96).max(0) as u64;
    let fn_ = big_to_f64(&(num >> shift_n));
    let fd = big_to_f64(&(den >> shift_d));
    let scale = shift_n as i64 - shift_d as i64;
    // 2^scale applied carefully to dodge intermediate overflow
    let mut v = fn_ / fd;
    let mut s = scale;
    while s > 0 {
        let step = s.min(512);
        v *= 2f64.powi(step as i32);
        s -= step;
        if v.is_infinite() {
            return v;
        }
    }
    while s < 0 {
        let step = (-s).min(512);
        v /= 2f64.powi(step as i32);
        s += step;
        if v == 0.0 {
            return v;
        }
    }
    v
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat_int;

    #[test]
    fn div_rem_roundtrip() {
        let a = ExactPoly::from_int_coeffs(&[2, 0, -3, 1, 4]);
        let b = ExactPoly::from_int_coeffs(&[1, 2, 1]);
        let (q, r) = a.div_rem(&b).unwrap();
        let back = &(&q * &b) + &r;
        assert_eq!(back, a);
    }

    #[test]
    fn gcd_of_products() {
        let p = ExactPoly::from_int_coeffs(&[-2, 1]); // x - 2
        let q = ExactPoly::from_int_coeffs(&[16, -16, 3]); // 3x^2 - 16x + 16
        let a = &p.pow(2) * &q;
        let b = &p * &q.pow(3);
        let g = a.gcd(&b);
        assert_eq!(g, &p * &q);
    }

    #[test]
    fn primitive_normalization() {
        let p = ExactPoly::from_coeffs(vec![rat_int(-4), rat_int(0), rat_int(-6)]);
        let (c, core) = p.to_integer_primitive();
        assert_eq!(c, rat_int(-2));
        assert_eq!(core, vec![BigInt::from(2), BigInt::from(0), BigInt::from(3)]);
    }

    #[test]
    fn f64_conversion_huge() {
        let big = BigInt::from(10).pow(400);
        let r = BigRational::new(big.clone() * 3, big);
        assert!((rat_to_f64(&r) - 3.0).abs() < 1e-12);
    }
}
