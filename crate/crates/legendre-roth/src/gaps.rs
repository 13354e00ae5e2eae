//! Runs of zero coefficients in a branch expansion: the several-valuation
//! bound predicts that the gap after a term c/t^d is O(d^{4/5}).

use crate::coeff::Coeff;
use crate::error::RothError;
use crate::laurent::LaurentSeries;
use serde::Serialize;

#[derive(Clone, Debug, Serialize)]
pub struct ZeroGapStats {
    /// (exponent of a nonzero coefficient, length of the zero run after it).
    pub gaps: Vec<(i64, i64)>,
    /// max over runs of gap / d^{4/5}; the multiplicative constant of the
    /// bound is not pinned, so this is reported, not asserted.
    pub envelope_ratio: f64,
}

pub fn zero_gap_stats<T: Coeff>(
    series: &LaurentSeries<T>,
    depth: i64,
) -> Result<ZeroGapStats, RothError> {
    if !series.is_exact() && series.prec() < depth {
        return Err(RothError::PrecisionExhausted {
            needed: depth,
            have: series.prec(),
        });
    }
    let Some(v) = series.valuation() else {
        return Ok(ZeroGapStats {
            gaps: Vec::new(),
            envelope_ratio: 0.0,
        });
    };
    let mut gaps = Vec::new();
    let mut ratio: f64 = 0.0;
    let mut e = v;
    while e < depth {
        if series.coeff(e)?.is_zero() {
            e += 1;
            continue;
        }
        let mut run = 0;
        while e + run + 1 < depth && series.coeff(e + run + 1)?.is_zero() {
            run += 1;
        }
        gaps.push((e, run));
        ratio = ratio.max(run as f64 / (e.max(1) as f64).powf(0.8));
        e += run + 1;
    }
    Ok(ZeroGapStats {
        gaps,
        envelope_ratio: ratio,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::roth_example::alpha_series;
    use legendre_exact::{rat_int, BigRational};

    #[test]
    fn quartic_branch_has_period_three_support() {
        let alpha = alpha_series(40).unwrap();
        let stats = zero_gap_stats(&alpha, 40).unwrap();
        assert_eq!(&stats.gaps[..3], &[(1, 2), (4, 2), (7, 2)]);
        assert!((stats.envelope_ratio - 2.0).abs() < 1e-12);
    }

    #[test]
    fn dense_series_has_no_gaps() {
        let terms: Vec<(i64, BigRational)> = (0..12).map(|e| (e, rat_int(1))).collect();
        let s = LaurentSeries::from_terms(&terms, 12);
        let stats = zero_gap_stats(&s, 12).unwrap();
        assert!(stats.gaps.iter().all(|&(_, g)| g == 0));
        assert_eq!(stats.envelope_ratio, 0.0);
    }

    #[test]
    fn shallow_series_is_rejected() {
        let s = alpha_series(20).unwrap();
        assert!(matches!(
            zero_gap_stats(&s, 1000),
            Err(RothError::PrecisionExhausted { .. })
        ));
    }
}
