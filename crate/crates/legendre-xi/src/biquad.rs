//! The two-section tower ℚ(λ)(μ, ν) with μ² = 4 − 2λ, ν² = 18 − 6λ, and the
//! image of nσ + mτ under Ξ.
//!
//! The conic ν² = 3μ² + 6 has the rational point (1, 3), so the whole tower
//! is parametrised by a single variable s; heights of tower elements are
//! computed downstairs in ℚ(s).

use crate::error::XiError;
use legendre_exact::{rat_int, ExactPoly, RatFunc};
use serde::Serialize;

/// Element a + bμ + cν + dμν over ℚ(λ).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Biquad {
    pub coeffs: [RatFunc; 4],
}

fn mu_sq() -> RatFunc {
    RatFunc::from_poly(ExactPoly::from_int_coeffs(&[4, -2]))
}

fn nu_sq() -> RatFunc {
    RatFunc::from_poly(ExactPoly::from_int_coeffs(&[18, -6]))
}

impl Biquad {
    pub fn new(coeffs: [RatFunc; 4]) -> Self {
        Biquad { coeffs }
    }

    pub fn from_base(a: RatFunc) -> Self {
        Biquad::new([a, RatFunc::zero(), RatFunc::zero(), RatFunc::zero()])
    }

    pub fn zero() -> Self {
        Biquad::from_base(RatFunc::zero())
    }

    pub fn mu() -> Self {
        Biquad::new([
            RatFunc::zero(),
            RatFunc::one(),
            RatFunc::zero(),
            RatFunc::zero(),
        ])
    }

    pub fn nu() -> Self {
        Biquad::new([
            RatFunc::zero(),
            RatFunc::zero(),
            RatFunc::one(),
            RatFunc::zero(),
        ])
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(RatFunc::is_zero)
    }

    pub fn add(&self, rhs: &Biquad) -> Biquad {
        let mut out = self.coeffs.clone();
        for (o, r) in out.iter_mut().zip(rhs.coeffs.iter()) {
            *o = &*o + r;
        }
        Biquad::new(out)
    }

    pub fn scale(&self, k: &RatFunc) -> Biquad {
        let mut out = self.coeffs.clone();
        for o in out.iter_mut() {
            *o = &*o * k;
        }
        Biquad::new(out)
    }

    pub fn mul(&self, rhs: &Biquad) -> Biquad {
        let (m, n) = (mu_sq(), nu_sq());
        let [a1, b1, c1, d1] = &self.coeffs;
        let [a2, b2, c2, d2] = &rhs.coeffs;
        let mn = &m * &n;
        let one = &(&(a1 * a2) + &(&(b1 * b2) * &m)) + &(&(&(c1 * c2) * &n) + &(&(d1 * d2) * &mn));
        let mu = &(&(a1 * b2) + &(b1 * a2)) + &(&(&(c1 * d2) + &(d1 * c2)) * &n);
        let nu = &(&(a1 * c2) + &(c1 * a2)) + &(&(&(b1 * d2) + &(d1 * b2)) * &m);
        let munu = &(&(a1 * d2) + &(d1 * a2)) + &(&(b1 * c2) + &(c1 * b2));
        Biquad::new([one, mu, nu, munu])
    }

    /// Galois conjugation μ ↦ −μ.
    pub fn conj_mu(&self) -> Biquad {
        let [a, b, c, d] = &self.coeffs;
        Biquad::new([a.clone(), -b, c.clone(), -d])
    }

    /// Galois conjugation ν ↦ −ν.
    pub fn conj_nu(&self) -> Biquad {
        let [a, b, c, d] = &self.coeffs;
        Biquad::new([a.clone(), b.clone(), -c, -d])
    }

    pub fn inverse(&self) -> Result<Biquad, XiError> {
        if self.is_zero() {
            return Err(XiError::Precondition("inverse of zero tower element"));
        }
        // multiply through by the three nontrivial conjugates; the full
        // product is the norm down to ℚ(λ)
        let adj = self
            .conj_mu()
            .mul(&self.conj_nu())
            .mul(&self.conj_mu().conj_nu());
        let norm = self.mul(&adj);
        debug_assert!(norm.coeffs[1..].iter().all(RatFunc::is_zero));
        let inv = norm.coeffs[0]
            .inverse()
            .map_err(|_| XiError::Precondition("tower element has zero norm"))?;
        Ok(adj.scale(&inv))
    }
}

/// Rational parametrisation of the conic ν² = 3μ² + 6 through (1, 3):
/// μ(s) = (s² − 6s + 3)/(s² − 3), ν(s) = −3(s² − 2s + 3)/(s² − 3).
pub fn conic_parametrisation() -> (RatFunc, RatFunc) {
    let den = ExactPoly::from_int_coeffs(&[-3, 0, 1]);
    let mu = RatFunc::new(ExactPoly::from_int_coeffs(&[3, -6, 1]), den.clone()).unwrap();
    let nu = RatFunc::new(ExactPoly::from_int_coeffs(&[-9, 6, -3]), den).unwrap();
    (mu, nu)
}

/// λ as a function of the conic parameter, via 2 − λ = μ²/2.
pub fn lambda_of_s() -> RatFunc {
    let (mu, _) = conic_parametrisation();
    let half = RatFunc::constant(legendre_exact::rat(1, 2));
    &RatFunc::constant(rat_int(2)) - &(&(&mu * &mu) * &half)
}

#[derive(Clone, Debug, Serialize)]
pub struct TwoSectionReport {
    pub n: i64,
    pub m: i64,
    pub h_beta: i64,
    /// Torsion-order cutoff 2 + h(β) implied by the multiplicity machinery.
    pub max_order: i64,
}

/// β = Ξ(nσ̃ + mτ̃) = n·2μ/(2−λ)² + m·2ν/(3−λ)², both as a tower element and
/// specialised into ℚ(s).
pub fn two_section_beta(n: i64, m: i64) -> Result<(Biquad, RatFunc, TwoSectionReport), XiError> {
    if n == 0 && m == 0 {
        return Err(XiError::TorsionSection);
    }
    let two_minus = RatFunc::from_poly(ExactPoly::from_int_coeffs(&[2, -1]));
    let three_minus = RatFunc::from_poly(ExactPoly::from_int_coeffs(&[3, -1]));
    let coeff_mu = &RatFunc::constant(rat_int(2 * n)) / &(&two_minus * &two_minus);
    let coeff_nu = &RatFunc::constant(rat_int(2 * m)) / &(&three_minus * &three_minus);
    let beta = Biquad::new([
        RatFunc::zero(),
        coeff_mu.clone(),
        coeff_nu.clone(),
        RatFunc::zero(),
    ]);
    let (mu_s, nu_s) = conic_parametrisation();
    let lam_s = lambda_of_s();
    let beta_s = &(&coeff_mu.compose(&lam_s) * &mu_s) + &(&coeff_nu.compose(&lam_s) * &nu_s);
    let h_beta = beta_s.height() as i64;
    let report = TwoSectionReport {
        n,
        m,
        h_beta,
        max_order: h_beta + 2,
    };
    Ok((beta, beta_s, report))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generators_square_to_moduli() {
        let mu2 = Biquad::mu().mul(&Biquad::mu());
        assert_eq!(mu2, Biquad::from_base(mu_sq()));
        let nu2 = Biquad::nu().mul(&Biquad::nu());
        assert_eq!(nu2, Biquad::from_base(nu_sq()));
    }

    #[test]
    fn inverse_roundtrip() {
        let x = Biquad::new([
            RatFunc::one(),
            RatFunc::var(),
            RatFunc::from_poly(ExactPoly::from_int_coeffs(&[2, -1])),
            RatFunc::constant(rat_int(3)),
        ]);
        let prod = x.mul(&x.inverse().unwrap());
        assert_eq!(prod, Biquad::from_base(RatFunc::one()));
    }

    #[test]
    fn parametrisation_satisfies_conic() {
        let (mu, nu) = conic_parametrisation();
        let lhs = &nu * &nu;
        let rhs = &(&(&mu * &mu) * &RatFunc::constant(rat_int(3))) + &RatFunc::constant(rat_int(6));
        assert_eq!(lhs, rhs);
        // base point at s = 1
        assert_eq!(mu.eval(&rat_int(1)).unwrap(), rat_int(1));
        assert_eq!(nu.eval(&rat_int(1)).unwrap(), rat_int(3));
    }

    #[test]
    fn lambda_consistency() {
        // both defining relations must specialise correctly: μ² = 4 − 2λ(s)
        // and ν² = 18 − 6λ(s)
        let (mu, nu) = conic_parametrisation();
        let lam = lambda_of_s();
        let two = RatFunc::constant(rat_int(2));
        let six = RatFunc::constant(rat_int(6));
        assert_eq!(
            &mu * &mu,
            &RatFunc::constant(rat_int(4)) - &(&two * &lam)
        );
        assert_eq!(
            &nu * &nu,
            &RatFunc::constant(rat_int(18)) - &(&six * &lam)
        );
    }

    #[test]
    fn beta_specialisation_matches_closed_form() {
        // with 2−λ = μ²/2 and 3−λ = ν²/6, β collapses to 8n/μ³ + 72m/ν³
        let (_, beta_s, _) = two_section_beta(2, -3).unwrap();
        let (mu, nu) = conic_parametrisation();
        let closed = &(&RatFunc::constant(rat_int(16)) / &mu.pow(3).unwrap())
            + &(&RatFunc::constant(rat_int(-216)) / &nu.pow(3).unwrap());
        assert_eq!(beta_s, closed);
    }

    #[test]
    fn heights() {
        let (_, _, r11) = two_section_beta(1, 1).unwrap();
        assert_eq!(r11.h_beta, 12);
        assert_eq!(r11.max_order, 14);
        let (_, _, r10) = two_section_beta(1, 0).unwrap();
        assert_eq!(r10.h_beta, 6);
        let (_, _, r01) = two_section_beta(0, 1).unwrap();
        assert_eq!(r01.h_beta, 6);
    }

    #[test]
    fn zero_combination_rejected() {
        assert!(matches!(
            two_section_beta(0, 0),
            Err(XiError::TorsionSection)
        ));
    }
}
