//! Sharpness witnesses: the family ξ_d = λ^d + 6λ + 70 pushes the
//! Υ-machinery to its extremal degree growth while staying Eisenstein-tame.

use crate::error::XiError;
use crate::upsilon::upsilon_form;
use legendre_exact::{BigInt, ExactPoly};
use num_traits::{One, Signed, Zero};
use serde::Serialize;

pub fn witness_abscissa(d: usize) -> ExactPoly {
    let mut coeffs = vec![0i64; d + 1];
    coeffs[0] = 70;
    coeffs[1] += 6;
    coeffs[d] += 1;
    ExactPoly::from_int_coeffs(&coeffs)
}

#[derive(Clone, Debug, Serialize)]
pub struct SharpnessReport {
    pub d: usize,
    pub deg_p: usize,
    pub leading: String,
    pub leading_matches: bool,
}

/// P_d = Υ(ξ_d)², with expected leading term 4(d−1)⁴·λ^{8d}.
pub fn sharpness_witness(d: usize) -> Result<(ExactPoly, SharpnessReport), XiError> {
    if d < 2 {
        return Err(XiError::Precondition("witness family needs d ≥ 2"));
    }
    let u = upsilon_form();
    let ups = u.apply_poly(&witness_abscissa(d))?;
    let p = &ups * &ups;
    let deg = p.degree_or_zero();
    let lead = p.leading_coeff();
    let expected = {
        let e = BigInt::from(((d - 1) * (d - 1)) as i64);
        BigInt::from(4) * &e * &e
    };
    let matches = deg == 8 * d && lead.denom().is_one() && *lead.numer() == expected;
    let report = SharpnessReport {
        d,
        deg_p: deg,
        leading: lead.to_string(),
        leading_matches: matches,
    };
    Ok((p, report))
}

/// Eisenstein test at p for an integer-coefficient polynomial.
pub fn eisenstein_at(f: &ExactPoly, p: i64) -> bool {
    let (content, core) = f.to_integer_primitive();
    if !content.abs().is_one() {
        return false;
    }
    let p = BigInt::from(p);
    let Some(lead) = core.last() else { return false };
    if (lead % &p).is_zero() {
        return false;
    }
    if core.len() < 2 {
        return false;
    }
    if core[..core.len() - 1].iter().any(|c| !(c % &p).is_zero()) {
        return false;
    }
    !(&core[0] % (&p * &p)).is_zero()
}

#[derive(Clone, Debug, Serialize)]
pub struct EisensteinReport {
    pub d: usize,
    pub xi_at_2: bool,
    pub xi_minus_1_at_3: bool,
    pub xi_minus_lambda_at_5: bool,
}

/// ξ_d, ξ_d − 1 and ξ_d − λ are Eisenstein at 2, 3, 5 respectively, so all
/// three stay irreducible for every d.
pub fn eisenstein_report(d: usize) -> EisensteinReport {
    let xi = witness_abscissa(d);
    let xi_m1 = &xi - &ExactPoly::one();
    let xi_ml = &xi - &ExactPoly::var();
    EisensteinReport {
        d,
        xi_at_2: eisenstein_at(&xi, 2),
        xi_minus_1_at_3: eisenstein_at(&xi_m1, 3),
        xi_minus_lambda_at_5: eisenstein_at(&xi_ml, 5),
    }
}

/// Exact gcd check of P_d against the three two-torsion discriminant factors
/// ξ_d, ξ_d − 1, ξ_d − λ; all three must be trivial.
pub fn torsion_factor_gcds(d: usize) -> Result<[usize; 3], XiError> {
    let (p, _) = sharpness_witness(d)?;
    let xi = witness_abscissa(d);
    let fs = [xi.clone(), &xi - &ExactPoly::one(), &xi - &ExactPoly::var()];
    let mut degs = [0usize; 3];
    for (i, f) in fs.iter().enumerate() {
        degs[i] = p.gcd(f).degree_or_zero();
    }
    Ok(degs)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn leading_terms_d_2_to_6() {
        for d in 2..=6 {
            let (_, rep) = sharpness_witness(d).unwrap();
            assert!(rep.leading_matches, "d = {d}: {rep:?}");
            assert_eq!(rep.deg_p, 8 * d);
        }
    }

    #[test]
    fn eisenstein_all_three_primes() {
        for d in 2..=9 {
            let rep = eisenstein_report(d);
            assert!(rep.xi_at_2 && rep.xi_minus_1_at_3 && rep.xi_minus_lambda_at_5, "{rep:?}");
        }
    }

    #[test]
    fn eisenstein_rejects_non_examples() {
        // λ² + 4 has constant term divisible by 4 = 2²
        assert!(!eisenstein_at(&ExactPoly::from_int_coeffs(&[4, 0, 1]), 2));
        // λ + 1 is not Eisenstein at any p
        assert!(!eisenstein_at(&ExactPoly::from_int_coeffs(&[1, 1]), 3));
    }

    #[test]
    fn d9_gcds_trivial() {
        assert_eq!(torsion_factor_gcds(9).unwrap(), [0, 0, 0]);
    }

    #[test]
    fn small_d_rejected() {
        assert!(sharpness_witness(1).is_err());
    }
}
