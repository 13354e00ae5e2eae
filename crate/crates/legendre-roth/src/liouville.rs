//! The Liouville fallback for the quartic branch: multiplying out the four
//! conjugate distances gives |α − p/q| ≥ e⁻¹/|q|⁴, i.e. in valuation terms
//! ord(α − p/q) ≤ 1 + 4·deg q, directly from the norm form
//! (t·p⁴ − t·p·q³ − q⁴)/(t·q⁴).

use crate::error::RothError;
use legendre_exact::ExactPoly;
use serde::Serialize;

#[derive(Clone, Copy, Debug, Serialize)]
pub struct LiouvilleReport {
    /// Order at t = ∞ of the norm form; equals ord(α − p/q) whenever p/q is
    /// close enough to α that the three conjugate distances are exactly 1.
    pub ord: i64,
    /// 1 + 4·deg q.
    pub bound: i64,
}

pub fn liouville_check(p: &ExactPoly, q: &ExactPoly) -> Result<LiouvilleReport, RothError> {
    if q.is_zero() {
        return Err(RothError::Precondition("denominator must be nonzero"));
    }
    let t = ExactPoly::var();
    let p3 = &(p * p) * p;
    let q3 = &(q * q) * q;
    // t·p⁴ − t·p·q³ − q⁴ = t·p·(p³ − q³) − q⁴
    let numerator = &(&(&t * p) * &(&p3 - &q3)) - &(&q3 * q);
    if numerator.is_zero() {
        // would make α a root of a rational quartic with p/q a fixed point:
        // impossible, α is irrational over ℚ(t)
        return Err(RothError::BoundViolated(
            "norm form vanished identically; α would be rational".into(),
        ));
    }
    let deg_q = q.degree_or_zero() as i64;
    let bound = 1 + 4 * deg_q;
    let ord = bound - numerator.degree_or_zero() as i64;
    if ord > bound {
        return Err(RothError::BoundViolated(format!(
            "norm-form order {ord} exceeds the Liouville bound {bound}"
        )));
    }
    Ok(LiouvilleReport { ord, bound })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cf::approximation_order;
    use crate::roth_example::alpha_series;

    #[test]
    fn first_convergent() {
        // p = −1, q = t: the norm form is −t, so ord = (1 + 4) − 1 = 4,
        // matching the series distance
        let p = ExactPoly::from_int_coeffs(&[-1]);
        let q = ExactPoly::from_int_coeffs(&[0, 1]);
        let r = liouville_check(&p, &q).unwrap();
        assert_eq!(r.ord, 4);
        assert_eq!(r.bound, 5);
        let alpha = alpha_series(40).unwrap();
        assert_eq!(approximation_order(&alpha, &p, &q).unwrap(), 4);
    }

    #[test]
    fn zero_numerator_boundary_case() {
        // p = 0, q = 1: ord(α) = 1 ≤ 1
        let r = liouville_check(&ExactPoly::zero(), &ExactPoly::one()).unwrap();
        assert_eq!(r.ord, 1);
        assert_eq!(r.bound, 1);
    }

    #[test]
    fn random_small_fractions_respect_the_bound() {
        let alpha = alpha_series(60).unwrap();
        for pc in [-2i64, -1, 0, 1, 2] {
            for qc in [1i64, 2, -1] {
                for qd in 1..4usize {
                    let p = ExactPoly::from_int_coeffs(&[pc, 1]);
                    let mut qv = vec![0i64; qd + 1];
                    qv[qd] = qc;
                    qv[0] = 1;
                    let q = ExactPoly::from_int_coeffs(&qv);
                    let r = liouville_check(&p, &q).unwrap();
                    assert!(r.ord <= r.bound);
                    // when the fraction is actually near α the norm order
                    // equals the series distance
                    let direct = approximation_order(&alpha, &p, &q).unwrap();
                    if direct > 0 {
                        assert_eq!(direct, r.ord, "p base {pc}, q lead {qc}, deg {qd}");
                    }
                }
            }
        }
    }
}
