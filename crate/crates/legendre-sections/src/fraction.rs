//! Abscissae of multiples of a section as coprime integer-polynomial
//! fractions Aₙ/Bₙ, their degree laws, and the canonical-height estimate
//! read off the degree growth.

use crate::curve::CurveFF;
use crate::error::SectionError;
use crate::psi::PsiSequence;
use legendre_exact::{rat_int, squarefree_decompose, BigRational, ExactPoly, RatFunc};
use num_traits::{Signed, Zero};
use serde::Serialize;

#[derive(Clone, Debug, Serialize)]
pub struct AbscissaFraction {
    pub n: usize,
    /// Numerator Aₙ ∈ ℤ[λ], carrying the sign.
    pub a: ExactPoly,
    /// Denominator Bₙ ∈ ℤ[λ], positive leading coefficient, gcd(Aₙ, Bₙ) = 1.
    pub b: ExactPoly,
    /// The constant bₙ of the square decomposition of Bₙ.
    #[serde(serialize_with = "legendre_exact::ser::serialize_rational")]
    pub b_n: BigRational,
    /// Bₙ = bₙ·Cₙ² for odd n, bₙ·(λ−2)·Cₙ² for even n.
    pub c: ExactPoly,
}

impl AbscissaFraction {
    pub fn deg_a(&self) -> usize {
        self.a.degree_or_zero()
    }

    pub fn deg_b(&self) -> usize {
        self.b.degree_or_zero()
    }

    pub fn as_ratfunc(&self) -> RatFunc {
        RatFunc::new(self.a.clone(), self.b.clone()).expect("Bₙ nonzero")
    }
}

/// Splits a normalized rational function into a jointly primitive integer
/// pair (A, B) with B's leading coefficient positive.
pub fn integer_pair(x: &RatFunc) -> (ExactPoly, ExactPoly) {
    let (content, core) = x.num().to_integer_primitive();
    let num = ExactPoly::from_bigint_coeffs(core);
    // content = p/q in lowest terms; A = p·N, B = q·D
    let p = content.numer().clone();
    let q = content.denom().clone();
    let a = num.scale(&BigRational::from_integer(p));
    let b = x.den().scale(&BigRational::from_integer(q));
    (a, b)
}

/// Computes Aₙ/Bₙ for the multiples of a section with ξ, η² ∈ ℚ(λ), plus the
/// square-decomposition data of Bₙ.
pub fn abscissa_fraction(seq: &mut PsiSequence, n: usize) -> Result<AbscissaFraction, SectionError> {
    if n == 0 {
        return Err(SectionError::IdentityPoint);
    }
    let x = seq.abscissa(n)?;
    let (a, b) = integer_pair(&x);
    let (b_n, c) = decompose_denominator(&b, n)?;
    Ok(AbscissaFraction { n, a, b, b_n, c })
}

/// Bₙ = bₙ·Cₙ² (odd n) or bₙ·(λ−2)·Cₙ² (even n): extracts (bₙ, Cₙ).
fn decompose_denominator(b: &ExactPoly, n: usize) -> Result<(BigRational, ExactPoly), SectionError> {
    if b.is_constant() {
        return Ok((b.coeff(0), ExactPoly::one()));
    }
    let lam_minus_2 = ExactPoly::from_int_coeffs(&[-2, 1]);
    let mut rest = b.clone();
    if n % 2 == 0 {
        match rest.exact_div(&lam_minus_2) {
            Some(q) => rest = q,
            None => {
                return Err(SectionError::DecompositionShape(format!(
                    "B_{n} for even n is not divisible by the bad-fiber factor"
                )))
            }
        }
        if rest.exact_div(&lam_minus_2).is_some() {
            return Err(SectionError::DecompositionShape(format!(
                "B_{n} has a higher-order bad-fiber factor"
            )));
        }
    }
    let mut c = ExactPoly::one();
    if !rest.is_constant() {
        for (f, m) in squarefree_decompose(&rest)? {
            if m % 2 != 0 {
                return Err(SectionError::DecompositionShape(format!(
                    "odd multiplicity {m} in the square part of B_{n}"
                )));
            }
            c = &c * &f.pow((m / 2) as u32);
        }
    }
    // fix the sign convention: Cₙ primitive with positive leading coefficient
    let c = {
        let (_, core) = c.to_integer_primitive();
        let p = ExactPoly::from_bigint_coeffs(core);
        if p.leading_coeff().is_negative() {
            -&p
        } else {
            p
        }
    };
    let c2 = &c * &c;
    let expected = if n % 2 == 0 { &c2 * &lam_minus_2 } else { c2 };
    let ratio_num = b.clone();
    let q = ratio_num.exact_div(&expected).ok_or_else(|| {
        SectionError::DecompositionShape(format!("B_{n} is not a constant times the square shape"))
    })?;
    if !q.is_constant() {
        return Err(SectionError::DecompositionShape(format!(
            "B_{n}/shape is nonconstant"
        )));
    }
    Ok((q.coeff(0), c))
}

/// Expected degrees from the closed-form laws: (n²−1)/2 for both parts when
/// n is odd; (n²/2, (n²−2)/2) when n is even.
pub fn expected_degrees(n: usize) -> (usize, usize) {
    if n % 2 == 1 {
        ((n * n - 1) / 2, (n * n - 1) / 2)
    } else {
        (n * n / 2, (n * n - 2) / 2)
    }
}

pub fn degree_profile(seq: &mut PsiSequence, n: usize) -> Result<(usize, usize), SectionError> {
    let fr = abscissa_fraction(seq, n)?;
    Ok((fr.deg_a(), fr.deg_b()))
}

#[derive(Clone, Debug, Serialize)]
pub struct CanonicalHeightEstimate {
    /// (n, max(deg Aₙ, deg Bₙ)/n²) for each n up to the cap.
    #[serde(serialize_with = "serialize_estimates")]
    pub estimates: Vec<(usize, BigRational)>,
    /// Richardson-style extrapolation from the last two entries.
    #[serde(serialize_with = "legendre_exact::ser::serialize_rational")]
    pub extrapolated: BigRational,
}

fn serialize_estimates<S: serde::Serializer>(
    estimates: &[(usize, BigRational)],
    s: S,
) -> Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = s.serialize_seq(Some(estimates.len()))?;
    for (n, e) in estimates {
        seq.serialize_element(&(n, legendre_exact::ser::rational_string(e)))?;
    }
    seq.end()
}

/// ĥ estimated from degree growth: max(deg Aₙ, deg Bₙ)/n², with a two-point
/// extrapolation eliminating the 1/n² correction. Torsion orders (nP = O)
/// contribute 0.
pub fn canonical_height_estimate(
    seq: &mut PsiSequence,
    n_max: usize,
) -> Result<CanonicalHeightEstimate, SectionError> {
    if n_max < 4 {
        return Err(SectionError::Precondition("n_max must be at least 4"));
    }
    let mut estimates = Vec::new();
    for n in 1..=n_max {
        let est = if seq.is_torsion_order(n) {
            BigRational::zero()
        } else {
            let fr = abscissa_fraction(seq, n)?;
            let h = fr.deg_a().max(fr.deg_b());
            rat_int(h as i64) / rat_int((n * n) as i64)
        };
        estimates.push((n, est));
    }
    // extrapolate along a fixed parity: the finite-n correction term differs
    // between odd and even multiples, so mixing parities biases the limit
    let extrapolated = {
        let (n1, e1) = &estimates[estimates.len() - 3];
        let (n2, e2) = &estimates[estimates.len() - 1];
        let w1 = rat_int((n1 * n1) as i64);
        let w2 = rat_int((n2 * n2) as i64);
        if w1 == w2 || (e1.is_zero() && e2.is_zero()) {
            e2.clone()
        } else {
            (&w2 * e2 - &w1 * e1) / (w2 - w1)
        }
    };
    Ok(CanonicalHeightEstimate {
        estimates,
        extrapolated,
    })
}

/// The σ = (2, μ) ψ-sequence over the Legendre curve: the workhorse input to
/// everything in this module.
pub fn sigma_sequence() -> PsiSequence {
    PsiSequence::new(&CurveFF::legendre(), RatFunc::constant(rat_int(2)))
        .expect("σ is not 2-torsion")
}

#[cfg(test)]
mod tests {
    use super::*;
    use legendre_exact::rat;

    #[test]
    fn n2_matches_table() {
        let mut s = sigma_sequence();
        let fr = abscissa_fraction(&mut s, 2).unwrap();
        assert_eq!(fr.a, ExactPoly::from_int_coeffs(&[-16, 8, -1]));
        assert_eq!(fr.b, ExactPoly::from_int_coeffs(&[-16, 8]));
        assert_eq!(fr.b_n, rat_int(8));
        assert_eq!(fr.c, ExactPoly::one());
    }

    #[test]
    fn n3_matches_table() {
        let mut s = sigma_sequence();
        let fr = abscissa_fraction(&mut s, 3).unwrap();
        // 2(5λ²−16λ+16)²
        let inner = ExactPoly::from_int_coeffs(&[16, -16, 5]);
        assert_eq!(fr.a, (&inner * &inner).scale(&rat_int(2)));
        let c3 = ExactPoly::from_int_coeffs(&[-16, 8, 1]);
        assert_eq!(fr.b, &c3 * &c3);
        assert_eq!(fr.b_n, rat_int(1));
        assert_eq!(fr.c, c3);
    }

    #[test]
    fn n4_matches_table() {
        let mut s = sigma_sequence();
        let fr = abscissa_fraction(&mut s, 4).unwrap();
        let quart = ExactPoly::from_int_coeffs(&[256, -512, 352, -80, 1]);
        assert_eq!(fr.a, -&(&quart * &quart));
        assert_eq!(fr.b_n, rat_int(32));
        // C₄ = λ(3λ²−16λ+16)
        let c4 = &ExactPoly::var() * &ExactPoly::from_int_coeffs(&[16, -16, 3]);
        assert_eq!(fr.c, c4);
    }

    #[test]
    fn degree_laws_hold() {
        let mut s = sigma_sequence();
        for n in 1..=10 {
            let (da, db) = degree_profile(&mut s, n).unwrap();
            assert_eq!((da, db), expected_degrees(n), "n = {n}");
        }
    }

    #[test]
    fn height_estimate_converges_to_half() {
        let mut s = sigma_sequence();
        let est = canonical_height_estimate(&mut s, 12).unwrap();
        assert_eq!(est.extrapolated, rat(1, 2));
        let last = est.estimates.last().unwrap().1.clone();
        assert!((last - rat(1, 2)).abs() < rat(1, 50));
    }

    #[test]
    fn torsion_section_estimates_zero() {
        // (1, 0) is 2-torsion: the constructor refuses it, which is the
        // documented contract for ψ along a section
        let curve = CurveFF::legendre();
        assert!(PsiSequence::new(&curve, RatFunc::one()).is_err());
    }
}
