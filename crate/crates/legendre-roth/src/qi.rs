//! Quasi-integrality of the multiples of the golden section: the pole
//! multiplicity Mₙ of x(nσ), measured on the double cover where σ lives,
//! stays ≤ 4, and the naive heights track the canonical ones within the
//! Zimmer window. The effectivity constants of the general theorem are
//! reported symbolically; they are astronomically large by design.

use crate::error::RothError;
use legendre_sections::{
    curve_height, degree_profile, sigma_section, sigma_sequence, zimmer_check, CurveFF,
};
use legendre_xi::{pole_multiplicity_scan, MultiplicityReport};
use num_traits::Zero;
use legendre_exact::{rat, rat_int, BigRational};
use serde::Serialize;

#[derive(Clone, Debug, Serialize)]
pub struct QuasiIntegralityRow {
    pub n: usize,
    /// Worst pole multiplicity of x(nσ) on the cover: poles over λ = 2 and
    /// λ = ∞ are ramified and double, all others keep their base order.
    pub m_n: i64,
    pub deg_a: usize,
    pub deg_b: usize,
    pub w_at_2: usize,
    pub max_w_away_from_2: usize,
    /// (1/2)h(E) − |h(nσ) − (3/2)ĥ(nσ)| on the cover; present for
    /// n ≤ zimmer_max, nonnegative whenever Zimmer's inequality holds.
    #[serde(serialize_with = "ser_opt_rational")]
    pub zimmer_slack: Option<BigRational>,
}

fn ser_opt_rational<S: serde::Serializer>(
    r: &Option<BigRational>,
    s: S,
) -> Result<S::Ok, S::Error> {
    match r {
        Some(x) => s.serialize_some(&x.to_string()),
        None => s.serialize_none(),
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct QuasiIntegralityReport {
    pub rows: Vec<QuasiIntegralityRow>,
    /// h(E) of the Legendre curve over the double cover carrying σ.
    pub h_curve: i64,
    /// Number of decimal digits of ρ = 2^{10⁴/ε²}.
    pub rho_decimal_digits: u64,
    /// log C = ρ·(g + h(E)), kept symbolic: no float holds it.
    pub log_c: String,
}

fn pole_multiplicity(report: &MultiplicityReport, deg_a: usize, deg_b: usize) -> i64 {
    let at_infinity = 2 * (deg_a as i64 - deg_b as i64).max(0);
    at_infinity
        .max(2 * report.w_at_2 as i64)
        .max(report.max_w_away_from_2 as i64)
}

/// Scan Mₙ for n = 1..=n_max, asserting Mₙ ≤ 4 throughout, and attach the
/// Zimmer slack of nσ for n ≤ zimmer_max (scalar multiplication on the
/// curve itself, independent of the division-polynomial route).
pub fn quasi_integrality_report(
    n_max: usize,
    eps: &BigRational,
    zimmer_max: usize,
) -> Result<QuasiIntegralityReport, RothError> {
    if n_max == 0 {
        return Err(RothError::Precondition("n_max must be positive"));
    }
    if *eps <= BigRational::zero() || *eps > rat(1, 16) {
        return Err(RothError::Precondition("ε must lie in (0, 1/16]"));
    }
    let reports = pole_multiplicity_scan(n_max)?;
    let mut seq = sigma_sequence();
    let (curve, sigma) = sigma_section();
    let mut rows = Vec::with_capacity(n_max);
    for report in &reports {
        let n = report.n;
        let (deg_a, deg_b) = degree_profile(&mut seq, n)?;
        let m_n = pole_multiplicity(report, deg_a, deg_b);
        if m_n > 4 {
            return Err(RothError::BoundViolated(format!(
                "M_{n} = {m_n} exceeds the quasi-integrality bound 4"
            )));
        }
        let zimmer_slack = if n <= zimmer_max {
            let np = curve.scalar_mul(n as i64, &sigma);
            // ĥ(σ) = 1/2 on the base, doubled to n² on the ramified cover
            let hhat = rat_int((n * n) as i64);
            let rep = zimmer_check(&curve, &np, &hhat)?;
            if rep.slack < BigRational::zero() {
                return Err(RothError::BoundViolated(format!(
                    "Zimmer slack {} negative at n = {n}",
                    rep.slack
                )));
            }
            Some(rep.slack)
        } else {
            None
        };
        rows.push(QuasiIntegralityRow {
            n,
            m_n,
            deg_a,
            deg_b,
            w_at_2: report.w_at_2,
            max_w_away_from_2: report.max_w_away_from_2,
            zimmer_slack,
        });
    }

    // h(E) on the genus-0 double cover where σ lives
    let (h_curve, _) = curve_height(&curve)?;
    // ρ = 2^{10⁴/ε²}: only its size is representable
    let exponent = rat_int(10_000) / (eps * eps);
    let exponent_f = legendre_exact::rat_to_f64(&exponent);
    let rho_decimal_digits = (exponent_f * std::f64::consts::LOG10_2).floor() as u64 + 1;
    let log_c = format!("{h_curve}·2^{exponent}");

    Ok(QuasiIntegralityReport {
        rows,
        h_curve,
        rho_decimal_digits,
        log_c,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_scan_profile() {
        let rep = quasi_integrality_report(8, &rat(1, 16), 4).unwrap();
        assert_eq!(rep.rows.len(), 8);
        assert!(rep.rows.iter().all(|r| r.m_n <= 4));
        // B₄ = 32λ(3λ² − 16λ + 16) has only simple roots, none at λ = 2,
        // and deg A₄ − deg B₄ = 8 − 7 doubles over the ramified place at
        // infinity: M₄ = 2
        let r4 = &rep.rows[3];
        assert_eq!((r4.deg_a, r4.deg_b), (8, 7));
        assert_eq!(r4.m_n, 2);
        assert_eq!(rep.h_curve, 6);
    }

    #[test]
    fn zimmer_slack_attached_and_nonnegative() {
        let rep = quasi_integrality_report(6, &rat(1, 16), 6).unwrap();
        for r in &rep.rows {
            let slack = r.zimmer_slack.as_ref().expect("requested for all n");
            assert!(*slack >= BigRational::zero(), "n = {}", r.n);
        }
    }

    #[test]
    fn effectivity_constant_size() {
        let rep = quasi_integrality_report(2, &rat(1, 16), 0).unwrap();
        // 2^2560000 has ⌊2560000·log₁₀2⌋ + 1 digits
        assert_eq!(rep.rho_decimal_digits, 770_637);
        assert_eq!(rep.log_c, "7·2^2560000");
        assert!(rep.rows.iter().all(|r| r.zimmer_slack.is_none()));
    }
}
