//! Laurent series in 1/t with explicit precision tracking.
//!
//! A series stores coefficients indexed by the exponent of 1/t (so the
//! algebraic function −1/t + 1/t⁴ − ⋯ has support {1, 4, …}); negative
//! exponents are honest powers of t. `prec` is the first exponent whose
//! coefficient is *not* trusted; every operation propagates it, and reading
//! at or beyond it is an error rather than a silent zero.

use crate::coeff::Coeff;
use crate::error::RothError;
use std::fmt;

/// Precision claim used for finite Laurent polynomials known exactly.
pub const EXACT: i64 = i64::MAX / 8;

#[derive(Clone, Debug)]
pub struct LaurentSeries<T> {
    /// Exponent (of 1/t) of the first stored coefficient.
    lead: i64,
    /// Coefficients at exponents lead, lead+1, …; exponents past the stored
    /// window but below `prec` are known to be zero.
    coeffs: Vec<T>,
    /// First untrusted exponent.
    prec: i64,
}

impl<T: Coeff> LaurentSeries<T> {
    fn normalized(mut self) -> Self {
        if self.lead >= self.prec {
            self.coeffs.clear();
        } else {
            let window = (self.prec - self.lead).min(self.coeffs.len() as i64) as usize;
            self.coeffs.truncate(window);
        }
        match self.coeffs.iter().position(|c| !c.is_zero()) {
            Some(0) => {}
            Some(k) => {
                self.coeffs.drain(..k);
                self.lead += k as i64;
            }
            None => self.coeffs.clear(),
        }
        while matches!(self.coeffs.last(), Some(c) if c.is_zero()) {
            self.coeffs.pop();
        }
        if self.coeffs.is_empty() {
            self.lead = self.prec;
        }
        self
    }

    pub fn zero(prec: i64) -> Self {
        LaurentSeries {
            lead: prec,
            coeffs: Vec::new(),
            prec,
        }
    }

    pub fn monomial(c: T, exp: i64, prec: i64) -> Self {
        assert!(exp < prec, "monomial exponent must sit below the precision");
        LaurentSeries {
            lead: exp,
            coeffs: vec![c],
            prec,
        }
        .normalized()
    }

    pub fn from_terms(terms: &[(i64, T)], prec: i64) -> Self {
        let mut out = Self::zero(prec);
        for (e, c) in terms {
            assert!(*e < prec, "term exponent must sit below the precision");
            out = out.add(&Self::monomial(c.clone(), *e, prec));
        }
        out
    }

    /// Finite Laurent polynomial, known exactly at every exponent.
    pub fn from_terms_exact(terms: &[(i64, T)]) -> Self {
        Self::from_terms(terms, EXACT)
    }

    pub fn prec(&self) -> i64 {
        self.prec
    }

    pub fn is_exact(&self) -> bool {
        self.prec >= EXACT
    }

    /// Exponent of the lowest nonzero trusted coefficient; `None` when the
    /// series is zero through its precision window.
    pub fn valuation(&self) -> Option<i64> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.lead)
        }
    }

    pub fn is_zero_to_prec(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Trusted coefficient at an exponent; reading at or beyond the
    /// precision bound is refused.
    pub fn coeff(&self, exp: i64) -> Result<T, RothError> {
        if exp >= self.prec {
            return Err(RothError::PrecisionExhausted {
                needed: exp + 1,
                have: self.prec,
            });
        }
        let i = exp - self.lead;
        if i < 0 || i >= self.coeffs.len() as i64 {
            Ok(T::zero())
        } else {
            Ok(self.coeffs[i as usize].clone())
        }
    }

    /// Stored window as (exponent, coefficient) pairs, zeros skipped.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &T)> {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(move |(i, c)| (self.lead + i as i64, c))
    }

    pub fn truncate(&self, prec: i64) -> Self {
        assert!(
            prec <= self.prec,
            "truncation cannot raise a precision claim"
        );
        let mut out = self.clone();
        out.prec = prec;
        out.normalized()
    }

    /// Raise the precision claim. Only for callers with an external argument
    /// (e.g. Newton contraction) that the hidden coefficients really vanish.
    pub(crate) fn with_prec_claim(&self, prec: i64) -> Self {
        let mut out = self.clone();
        out.prec = prec;
        out.normalized()
    }

    pub fn neg(&self) -> Self {
        let mut out = self.clone();
        for c in &mut out.coeffs {
            *c = -c.clone();
        }
        out
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let prec = self.prec.min(rhs.prec);
        if self.coeffs.is_empty() {
            return rhs.truncate(prec.min(rhs.prec));
        }
        if rhs.coeffs.is_empty() {
            return self.truncate(prec.min(self.prec));
        }
        let lead = self.lead.min(rhs.lead);
        let top = (self.lead + self.coeffs.len() as i64)
            .max(rhs.lead + rhs.coeffs.len() as i64)
            .min(prec);
        let mut coeffs = Vec::new();
        for e in lead..top {
            let a = self.coeff_in_window(e);
            let b = rhs.coeff_in_window(e);
            coeffs.push(a + b);
        }
        LaurentSeries { lead, coeffs, prec }.normalized()
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    fn coeff_in_window(&self, exp: i64) -> T {
        let i = exp - self.lead;
        if i < 0 || i >= self.coeffs.len() as i64 {
            T::zero()
        } else {
            self.coeffs[i as usize].clone()
        }
    }

    pub fn scale(&self, c: &T) -> Self {
        if c.is_zero() {
            return Self::zero(self.prec);
        }
        let mut out = self.clone();
        for x in &mut out.coeffs {
            *x = x.clone() * c.clone();
        }
        out.normalized()
    }

    /// Multiply by (1/t)^d.
    pub fn shift(&self, d: i64) -> Self {
        let mut out = self.clone();
        out.lead += d;
        out.prec = out.prec.saturating_add(d).min(EXACT);
        out
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        let va = self.valuation().unwrap_or(self.prec);
        let vb = rhs.valuation().unwrap_or(rhs.prec);
        let prec = if self.is_exact() && rhs.is_exact() {
            EXACT
        } else {
            (self.prec.saturating_add(vb))
                .min(rhs.prec.saturating_add(va))
                .min(EXACT)
        };
        if self.coeffs.is_empty() || rhs.coeffs.is_empty() {
            return Self::zero(prec);
        }
        let lead = self.lead + rhs.lead;
        let full = self.coeffs.len() + rhs.coeffs.len() - 1;
        let window = (prec - lead).clamp(0, full as i64) as usize;
        let mut coeffs = vec![T::zero(); window];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() || i >= window {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if i + j >= window {
                    break;
                }
                if !b.is_zero() {
                    coeffs[i + j] = coeffs[i + j].clone() + a.clone() * b.clone();
                }
            }
        }
        LaurentSeries { lead, coeffs, prec }.normalized()
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut out = Self::monomial(T::one(), 0, EXACT);
        for _ in 0..e {
            out = out.mul(self);
        }
        out
    }

    /// Reciprocal computed to `nterms` coefficients. The precision claim of
    /// the result is min(what the input precision supports, the computed
    /// window), so an exact input simply yields the requested window.
    pub fn inverse_terms(&self, nterms: usize) -> Result<Self, RothError> {
        let v = self
            .valuation()
            .ok_or(RothError::ZeroDivision("reciprocal of a zero series"))?;
        let avail = if self.is_exact() {
            nterms
        } else {
            (self.prec - v).clamp(0, nterms as i64) as usize
        };
        if avail == 0 {
            return Err(RothError::PrecisionExhausted {
                needed: v + 1,
                have: self.prec,
            });
        }
        let a0 = self.coeff_in_window(v);
        let mut inv = vec![T::one() / a0.clone()];
        for k in 1..avail {
            let mut s = T::zero();
            for j in 1..=k {
                let aj = self.coeff_in_window(v + j as i64);
                if !aj.is_zero() {
                    s = s + aj * inv[k - j].clone();
                }
            }
            inv.push(-(s / a0.clone()));
        }
        let prec = if self.is_exact() {
            -v + avail as i64
        } else {
            (self.prec - 2 * v).min(-v + avail as i64)
        };
        Ok(LaurentSeries {
            lead: -v,
            coeffs: inv,
            prec,
        }
        .normalized())
    }

    /// Full-precision reciprocal of a finitely-trusted series.
    pub fn inverse(&self) -> Result<Self, RothError> {
        if self.is_exact() {
            return Err(RothError::Precondition(
                "reciprocal of an exact series is generally infinite; truncate first or use inverse_terms",
            ));
        }
        let v = self
            .valuation()
            .ok_or(RothError::ZeroDivision("reciprocal of a zero series"))?;
        self.inverse_terms((self.prec - v).max(0) as usize)
    }

    pub fn div(&self, rhs: &Self) -> Result<Self, RothError> {
        let v = rhs
            .valuation()
            .ok_or(RothError::ZeroDivision("division by a zero series"))?;
        // enough reciprocal terms that the product's precision is limited by
        // the operands, not by the reciprocal window
        let va = self.valuation().unwrap_or(self.prec);
        let want = self
            .prec
            .min(rhs.prec.saturating_add(va - v))
            .saturating_sub(va - v)
            .saturating_add(1);
        let inv = rhs.inverse_terms(want.clamp(1, 1 << 22) as usize)?;
        Ok(self.mul(&inv))
    }
}

impl<T: Coeff> fmt::Display for LaurentSeries<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (e, c) in self.terms() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match e.cmp(&0) {
                std::cmp::Ordering::Greater => write!(f, "({})/t^{}", c, e)?,
                std::cmp::Ordering::Equal => write!(f, "({})", c)?,
                std::cmp::Ordering::Less => write!(f, "({})*t^{}", c, -e)?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        if !self.is_exact() {
            write!(f, " + O(1/t^{})", self.prec)?;
        }
        Ok(())
    }
}
