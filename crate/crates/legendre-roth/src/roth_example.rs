//! The effective approximation bound for the degree-4 function α with
//! α⁴ − α = 1/t: every convergent must respect
//! ord(α − p/q) ≤ 10⁹ + 2·deg q + 3·(deg q)^{4/5}.

use crate::cf::{cf_expand, Convergent};
use crate::error::RothError;
use crate::expand::{laurent_expand, quartic_minpoly};
use crate::laurent::LaurentSeries;
use legendre_exact::{rat_int, BigRational};
use serde::Serialize;

/// The principal branch −1/t + 1/t⁴ − 4/t⁷ + ⋯ to the given precision.
pub fn alpha_series(prec: i64) -> Result<LaurentSeries<BigRational>, RothError> {
    let seed = LaurentSeries::from_terms_exact(&[(1, rat_int(-1))]);
    laurent_expand(&quartic_minpoly(), &seed, prec)
}

#[derive(Clone, Debug, Serialize)]
pub struct RothExampleReport {
    pub max_deg_q: usize,
    /// Convergents examined (deg q ≥ 1; the constant-denominator case is
    /// the Liouville path's job).
    pub convergents_checked: usize,
    /// max over convergents of ord / deg q; tends to 2 from above.
    pub empirical_exponent: f64,
    /// min over convergents of bound − ord (how much room the inequality
    /// leaves; hugely positive because of the 10⁹ constant).
    pub min_margin: f64,
    /// max over convergents of (ord − 2·deg q) / (deg q)^{4/5}, the
    /// exponent-free shape of the inequality; must stay ≤ 3 + 10⁹-slack and
    /// is reported to show the actual envelope.
    pub shape_ratio: f64,
}

fn bound(deg_q: i64) -> f64 {
    1e9 + 2.0 * deg_q as f64 + 3.0 * (deg_q as f64).powf(0.8)
}

/// Verify the approximation bound over every convergent with
/// 1 ≤ deg q ≤ max_deg_q, and report the observed exponent.
pub fn roth_example_check(max_deg_q: usize) -> Result<RothExampleReport, RothError> {
    if max_deg_q < 1 {
        return Err(RothError::Precondition("max_deg_q must be at least 1"));
    }
    let alpha = alpha_series(2 * max_deg_q as i64 + 16)?;
    let convergents = cf_expand(&alpha, max_deg_q)?;
    let mut checked = 0usize;
    let mut emp: f64 = 0.0;
    let mut min_margin = f64::INFINITY;
    let mut shape: f64 = f64::NEG_INFINITY;
    for Convergent { q, ord, .. } in &convergents {
        let deg_q = q.degree_or_zero() as i64;
        if deg_q == 0 {
            continue;
        }
        checked += 1;
        let b = bound(deg_q);
        if (*ord as f64) > b {
            return Err(RothError::BoundViolated(format!(
                "convergent with deg q = {deg_q} has ord = {ord} > {b}"
            )));
        }
        emp = emp.max(*ord as f64 / deg_q as f64);
        min_margin = min_margin.min(b - *ord as f64);
        shape = shape.max((*ord as f64 - 2.0 * deg_q as f64) / (deg_q as f64).powf(0.8));
    }
    if checked == 0 {
        return Err(RothError::Precondition(
            "no convergent with nonconstant denominator in range",
        ));
    }
    Ok(RothExampleReport {
        max_deg_q,
        convergents_checked: checked,
        empirical_exponent: emp,
        min_margin,
        shape_ratio: shape,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_range_report() {
        let r = roth_example_check(10).unwrap();
        assert!(r.convergents_checked >= 3);
        // ord = deg q_k + deg q_{k+1} ≥ 2 deg q_k, and the first convergent
        // has ord/deg q = 4
        assert!(r.empirical_exponent >= 2.0 && r.empirical_exponent <= 4.0);
        assert!(r.min_margin > 9e8);
    }

    #[test]
    fn degenerate_range_rejected() {
        assert!(matches!(
            roth_example_check(0),
            Err(RothError::Precondition(_))
        ));
    }
}
