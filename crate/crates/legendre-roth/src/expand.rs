//! Branch expansion of algebraic functions: Newton iteration on a bivariate
//! minimal polynomial P(t, X), doubling the trusted window each round.

use crate::coeff::Coeff;
use crate::error::RothError;
use crate::laurent::{LaurentSeries, EXACT};

/// P(t, X) = Σ cᵢ(t) Xⁱ with the t-coefficients given as exact Laurent
/// polynomials in 1/t.
#[derive(Clone, Debug)]
pub struct BivariatePoly<T> {
    coeffs: Vec<LaurentSeries<T>>,
}

impl<T: Coeff> BivariatePoly<T> {
    pub fn from_x_coeffs(coeffs: Vec<LaurentSeries<T>>) -> Self {
        let mut out = BivariatePoly { coeffs };
        while matches!(out.coeffs.last(), Some(c) if c.is_zero_to_prec()) {
            out.coeffs.pop();
        }
        out
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn x_coeff(&self, i: usize) -> LaurentSeries<T> {
        self.coeffs
            .get(i)
            .cloned()
            .unwrap_or_else(|| LaurentSeries::zero(EXACT))
    }

    pub fn eval(&self, x: &LaurentSeries<T>) -> LaurentSeries<T> {
        let mut acc = LaurentSeries::zero(EXACT);
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(x).add(c);
        }
        acc
    }

    /// Horner evaluation that keeps intermediate precision capped near `cap`
    /// instead of carrying every exact high-order term; coefficients below
    /// the cap are identical to the full evaluation.
    pub fn eval_window(&self, x: &LaurentSeries<T>, cap: i64) -> LaurentSeries<T> {
        // a remaining multiplication by x can lower the reachable precision
        // by |v(x)| when the valuation is negative, so the cap backs off
        let vneg = x.valuation().unwrap_or(0).min(0);
        let n = self.coeffs.len();
        let mut acc = LaurentSeries::zero(EXACT);
        for (k, c) in self.coeffs.iter().rev().enumerate() {
            acc = acc.mul(x).add(c);
            let lim = cap - vneg * (n as i64 - 1 - k as i64);
            if acc.prec() > lim {
                acc = acc.truncate(lim);
            }
        }
        acc
    }

    /// ∂P/∂X.
    pub fn derivative(&self) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c.scale(&T::from_i64(i as i64)))
            .collect();
        BivariatePoly::from_x_coeffs(coeffs)
    }
}

/// X⁴ − X − 1/t, the degree-4 function whose approximation properties the
/// module's worked example is about.
pub fn quartic_minpoly<T: Coeff>() -> BivariatePoly<T> {
    BivariatePoly::from_x_coeffs(vec![
        LaurentSeries::from_terms_exact(&[(1, -T::one())]),
        LaurentSeries::from_terms_exact(&[(0, -T::one())]),
        LaurentSeries::zero(EXACT),
        LaurentSeries::zero(EXACT),
        LaurentSeries::from_terms_exact(&[(0, T::one())]),
    ])
}

/// Expand the branch of P(t, X) = 0 picked out by the seed (the leading
/// term, or any short trusted jet) to the requested precision.
///
/// Newton's iteration from a simple root of the leading-order equation; the
/// trusted window is measured from the residual valuation each round, so a
/// seed at a multiple root (no contraction) is rejected rather than looping.
/// The returned series is re-verified: substituting it into P leaves a
/// residual vanishing past the declared precision.
pub fn laurent_expand<T: Coeff>(
    p: &BivariatePoly<T>,
    seed: &LaurentSeries<T>,
    prec: i64,
) -> Result<LaurentSeries<T>, RothError> {
    if p.degree() == 0 {
        return Err(RothError::Precondition(
            "minimal polynomial must involve X",
        ));
    }
    if prec >= EXACT {
        return Err(RothError::Precondition(
            "requested precision must be finite",
        ));
    }
    let dp = p.derivative();
    let v0 = seed.valuation().unwrap_or(0);
    if prec <= v0 {
        return Err(RothError::Precondition(
            "requested precision must exceed the seed's leading exponent",
        ));
    }

    // the working approximation is always an exact Laurent polynomial; its
    // accuracy is measured each round from the residual, never guessed from
    // the contraction rate, and re-certified once more at the end
    let mut x = seed.is_exact().then(|| seed.clone()).unwrap_or_else(|| {
        seed.truncate(seed.prec()).with_prec_claim(EXACT)
    });
    let mut last_acc: Option<i64> = None;
    let mut final_dv = 0i64;
    for _ in 0..128 {
        let d = dp.eval_window(&x, prec + 2);
        let Some(dv) = d.valuation() else {
            return Err(RothError::DegenerateSeed);
        };
        final_dv = dv;
        let cap_e = prec + dv + 2;
        let e = p.eval_window(&x, cap_e);
        if e.is_zero_to_prec() {
            if e.prec() - dv >= prec {
                // residual vanishes through the whole certification window
                last_acc = Some(prec);
                break;
            }
            // residual invisible inside the coefficients' own precision
            return Err(RothError::PrecisionExhausted {
                needed: prec + dv,
                have: e.prec(),
            });
        }
        // x agrees with the branch at every exponent below acc
        let acc = e.valuation().expect("nonzero") - dv;
        if acc <= v0 || last_acc.is_some_and(|g| acc <= g) {
            return Err(RothError::DegenerateSeed);
        }
        last_acc = Some(acc);
        if acc >= prec {
            break;
        }
        // one Newton step, windows capped just past the target precision
        let target = (2 * acc - v0).min(prec + 2);
        let e = e.truncate((target + dv).min(e.prec()));
        let corr = e.div(&d.truncate((target + dv).min(d.prec())))?;
        x = x
            .sub(&corr)
            .truncate(target.min(corr.prec()))
            .with_prec_claim(EXACT);
    }
    if last_acc.is_none_or(|a| a < prec) {
        return Err(RothError::DegenerateSeed);
    }

    let out = x.truncate(prec.min(x.prec())).with_prec_claim(prec);
    let residual = p.eval_window(&out.with_prec_claim(EXACT), prec + final_dv + 1);
    if let Some(rv) = residual.valuation() {
        if rv < prec + final_dv {
            return Err(RothError::BoundViolated(format!(
                "Newton residual starts at exponent {rv}, inside the declared window {prec}"
            )));
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::Eisenstein;
    use legendre_exact::{rat, rat_int, BigRational};
    use num_traits::One;

    #[test]
    fn principal_branch_of_the_quartic() {
        let p = quartic_minpoly::<BigRational>();
        let seed = LaurentSeries::from_terms_exact(&[(1, rat_int(-1))]);
        let alpha = laurent_expand(&p, &seed, 40).unwrap();
        for (e, c) in [(1, -1), (4, 1), (7, -4), (10, 22), (13, -140)] {
            assert_eq!(alpha.coeff(e).unwrap(), rat_int(c), "exponent {e}");
        }
        // support is contained in exponents ≡ 1 mod 3
        for e in 1..40 {
            if e % 3 != 1 {
                assert_eq!(alpha.coeff(e).unwrap(), rat_int(0), "exponent {e}");
            }
        }
    }

    #[test]
    fn finite_branch_of_the_quartic() {
        let p = quartic_minpoly::<BigRational>();
        let seed = LaurentSeries::from_terms_exact(&[(0, rat_int(1))]);
        let b = laurent_expand(&p, &seed, 25).unwrap();
        assert_eq!(b.coeff(0).unwrap(), rat_int(1));
        assert_eq!(b.coeff(1).unwrap(), rat(1, 3));
        assert_eq!(b.coeff(2).unwrap(), rat(-2, 9));
    }

    #[test]
    fn omega_branch_expands_over_the_cyclotomic_field() {
        let p = quartic_minpoly::<Eisenstein>();
        let seed = LaurentSeries::from_terms_exact(&[(0, Eisenstein::omega())]);
        let b = laurent_expand(&p, &seed, 20).unwrap();
        assert_eq!(b.coeff(0).unwrap(), Eisenstein::omega());
        assert_eq!(
            b.coeff(1).unwrap(),
            Eisenstein::from_rational(rat(1, 3))
        );
        let residual = p.eval(&b);
        assert!(residual.valuation().map_or(true, |v| v >= 20));
    }

    #[test]
    fn trivial_minimal_polynomial_returns_the_exact_series() {
        // P = X − t
        let p = BivariatePoly::from_x_coeffs(vec![
            LaurentSeries::from_terms_exact(&[(-1, -BigRational::one())]),
            LaurentSeries::from_terms_exact(&[(0, BigRational::one())]),
        ]);
        let seed = LaurentSeries::from_terms_exact(&[(-1, BigRational::one())]);
        let s = laurent_expand(&p, &seed, 30).unwrap();
        assert_eq!(s.coeff(-1).unwrap(), rat_int(1));
        for e in 0..30 {
            assert_eq!(s.coeff(e).unwrap(), rat_int(0));
        }
    }

    #[test]
    fn multiple_root_seed_is_rejected() {
        // P = (X − 1)² − 1/t: the leading equation has a double root at 1
        let p = BivariatePoly::from_x_coeffs(vec![
            LaurentSeries::from_terms_exact(&[(0, rat_int(1)), (1, rat_int(-1))]),
            LaurentSeries::from_terms_exact(&[(0, rat_int(-2))]),
            LaurentSeries::from_terms_exact(&[(0, rat_int(1))]),
        ]);
        let seed = LaurentSeries::from_terms_exact(&[(0, rat_int(1))]);
        assert!(matches!(
            laurent_expand(&p, &seed, 20),
            Err(RothError::DegenerateSeed)
        ));
    }
}
