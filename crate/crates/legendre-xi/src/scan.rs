//! Pole-multiplicity survey of the denominators Bₙ of x(nσ).
//!
//! For each n the scan records, per squarefree factor of Bₙ, the common
//! vanishing order w at its roots, and checks the two bounds that the
//! Ξ-machinery predicts: w ≤ 2 at the bad fibre λ = 2 and w ≤ 4 everywhere
//! else.

use crate::error::XiError;
use legendre_exact::{rat_int, squarefree_decompose, ExactPoly};
use legendre_sections::{abscissa_fraction, sigma_sequence};
use num_traits::Zero;
use rayon::prelude::*;
use serde::Serialize;

#[derive(Clone, Debug, Serialize)]
pub struct FactorMultiplicity {
    /// Squarefree factor of Bₙ, as a coefficient string in λ.
    pub factor: String,
    pub degree: usize,
    /// Common vanishing order of Bₙ at each root of the factor.
    pub w: usize,
    pub contains_bad_fibre: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct MultiplicityReport {
    pub n: usize,
    pub table: Vec<FactorMultiplicity>,
    pub w_at_2: usize,
    pub max_w_away_from_2: usize,
    /// Factors hitting the extremal order 4; empty for σ in the scanned range.
    pub w4_factors: Vec<String>,
}

fn factor_table(b: &ExactPoly) -> Result<Vec<FactorMultiplicity>, XiError> {
    let two = rat_int(2);
    let mut out = Vec::new();
    for (f, m) in squarefree_decompose(b)? {
        out.push(FactorMultiplicity {
            factor: f.to_string_var("l"),
            degree: f.degree_or_zero(),
            w: m,
            contains_bad_fibre: f.eval(&two).is_zero(),
        });
    }
    Ok(out)
}

pub fn multiplicity_report(n: usize) -> Result<MultiplicityReport, XiError> {
    let mut seq = sigma_sequence();
    let fr = abscissa_fraction(&mut seq, n)?;
    let table = factor_table(&fr.b)?;
    let mut w_at_2 = 0;
    let mut max_away = 0;
    let mut w4 = Vec::new();
    for row in &table {
        if row.contains_bad_fibre {
            // a squarefree factor with a root at λ = 2 is λ − 2 itself only
            // when it is linear; larger factors still contribute their order
            // away from 2 through the remaining roots
            w_at_2 = w_at_2.max(row.w);
            if row.degree > 1 {
                max_away = max_away.max(row.w);
            }
        } else {
            max_away = max_away.max(row.w);
        }
        if row.w >= 4 {
            w4.push(row.factor.clone());
        }
    }
    Ok(MultiplicityReport {
        n,
        table,
        w_at_2,
        max_w_away_from_2: max_away,
        w4_factors: w4,
    })
}

/// Reports for n = 1..=n_max, computed in parallel; each report is
/// independently recomputed from a fresh ψ-sequence so the scan
/// parallelises without shared mutable state.
pub fn pole_multiplicity_scan(n_max: usize) -> Result<Vec<MultiplicityReport>, XiError> {
    (1..=n_max)
        .into_par_iter()
        .map(multiplicity_report)
        .collect()
}

/// True when every report respects w ≤ 2 at λ = 2 and w ≤ 4 elsewhere.
pub fn scan_within_bounds(reports: &[MultiplicityReport]) -> bool {
    reports
        .iter()
        .all(|r| r.w_at_2 <= 2 && r.max_w_away_from_2 <= 4)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_n_profiles() {
        // B₁ = 1: no poles at all
        let r1 = multiplicity_report(1).unwrap();
        assert!(r1.table.is_empty());
        // B₂ = 8(λ−2): a simple pole at the bad fibre only
        let r2 = multiplicity_report(2).unwrap();
        assert_eq!(r2.w_at_2, 1);
        assert_eq!(r2.max_w_away_from_2, 0);
        // B₃ = (λ²+8λ−16)²: double roots away from 2
        let r3 = multiplicity_report(3).unwrap();
        assert_eq!(r3.w_at_2, 0);
        assert_eq!(r3.max_w_away_from_2, 2);
        assert!(r3.w4_factors.is_empty());
    }

    #[test]
    fn scan_to_twelve_is_bounded() {
        let reports = pole_multiplicity_scan(12).unwrap();
        assert_eq!(reports.len(), 12);
        assert!(scan_within_bounds(&reports));
        assert!(reports.iter().all(|r| r.w4_factors.is_empty()));
    }

    #[test]
    fn even_n_bad_fibre_is_simple() {
        for n in [2usize, 4, 6, 8] {
            let r = multiplicity_report(n).unwrap();
            assert_eq!(r.w_at_2, 1, "n = {n}");
        }
    }
}
