//! Continued fractions of Laurent series over ℚ: partial quotients in t,
//! convergents p/q with their exact approximation orders, and the
//! best-approximation bookkeeping built on them.

use crate::error::RothError;
use crate::laurent::LaurentSeries;
use legendre_exact::{BigRational, ExactPoly, RatFunc};
use num_traits::Zero;
use serde::Serialize;

/// Sentinel order for a convergent that equals the series exactly (the
/// expansion of a rational function terminates).
pub const ORD_EXACT: i64 = i64::MAX;

#[derive(Clone, Debug, Serialize)]
pub struct Convergent {
    /// Numerator and denominator in t, coprime.
    #[serde(serialize_with = "ser_poly")]
    pub p: ExactPoly,
    #[serde(serialize_with = "ser_poly")]
    pub q: ExactPoly,
    #[serde(serialize_with = "ser_poly")]
    pub partial_quotient: ExactPoly,
    /// Order of vanishing of α − p/q at t = ∞ (v(1/t) = 1); [`ORD_EXACT`]
    /// when the convergent reproduces the series exactly.
    pub ord: i64,
}

fn ser_poly<S: serde::Serializer>(p: &ExactPoly, s: S) -> Result<S::Ok, S::Error> {
    s.collect_str(&p.to_string_var("t"))
}

/// Series for a polynomial in t: coefficient of t^j sits at exponent −j.
pub fn poly_to_series(p: &ExactPoly, prec: i64) -> LaurentSeries<BigRational> {
    let terms: Vec<(i64, BigRational)> = p
        .coeffs()
        .iter()
        .enumerate()
        .map(|(j, c)| (-(j as i64), c.clone()))
        .collect();
    LaurentSeries::from_terms(&terms, prec)
}

/// Exact order of vanishing of series − p/q at t = ∞, certified against the
/// series precision (an uncertifiable order is an error, not a guess).
pub fn approximation_order(
    series: &LaurentSeries<BigRational>,
    p: &ExactPoly,
    q: &ExactPoly,
) -> Result<i64, RothError> {
    if q.is_zero() {
        return Err(RothError::Precondition("denominator must be nonzero"));
    }
    let qs = poly_to_series(q, series.prec() - series.valuation().unwrap_or(0).min(0));
    let ps = poly_to_series(p, qs.prec());
    let diff = series.mul(&qs).sub(&ps);
    let degq = q.degree_or_zero() as i64;
    match diff.valuation() {
        Some(v) => Ok(v + degq),
        None => {
            if diff.is_exact() {
                Ok(ORD_EXACT)
            } else {
                Err(RothError::PrecisionExhausted {
                    needed: diff.prec() + 1,
                    have: series.prec(),
                })
            }
        }
    }
}

/// Continued-fraction expansion of a Laurent series, reported as the list of
/// convergents with deg q ≤ max_deg_q.
///
/// The required precision 2·max_deg_q + 16 is demanded up front; running out
/// of trusted coefficients mid-expansion is an explicit error, never a
/// silently truncated answer. Exactly-known (finite) series instead take the
/// terminating Euclidean path.
pub fn cf_expand(
    series: &LaurentSeries<BigRational>,
    max_deg_q: usize,
) -> Result<Vec<Convergent>, RothError> {
    let needed = 2 * max_deg_q as i64 + 16;
    let exact_input = series.is_exact();
    if !exact_input && series.prec() < needed {
        return Err(RothError::PrecisionExhausted {
            needed,
            have: series.prec(),
        });
    }
    if series.is_zero_to_prec() {
        return Ok(vec![Convergent {
            p: ExactPoly::zero(),
            q: ExactPoly::one(),
            partial_quotient: ExactPoly::zero(),
            ord: if exact_input { ORD_EXACT } else { series.prec() },
        }]);
    }

    // α as a fraction of polynomials in t: the trusted window times t^M
    // over t^M, with M the highest trusted power of 1/t
    let low = series.valuation().expect("nonzero");
    let m_top = if exact_input {
        series
            .terms()
            .map(|(e, _)| e)
            .max()
            .unwrap_or(low)
            .max(0)
    } else {
        needed - 1
    };
    let mut num = ExactPoly::zero();
    for (e, c) in series.terms() {
        if e > m_top {
            break;
        }
        num = &num + &ExactPoly::monomial((m_top - e) as usize, c.clone());
    }
    let mut den = ExactPoly::monomial(m_top as usize, BigRational::from_integer(1.into()));

    // Euclid with remainders rescaled by positive constants to keep the
    // rational coefficients from snowballing; the rescaling turns the
    // expansion into a generalized continued fraction x = a₀ + c₁/(a₁ + ⋯),
    // so the convergent recurrence carries the partial numerators c_k along.
    let mut p_m2 = ExactPoly::zero();
    let mut p_m1 = ExactPoly::one();
    let mut q_m2 = ExactPoly::one();
    let mut q_m1 = ExactPoly::zero();
    let mut scale_next = BigRational::from_integer(1.into());
    // (partial quotient, deg of the Euclidean remainder, p, q) per step
    let mut steps: Vec<(ExactPoly, Option<usize>, ExactPoly, ExactPoly)> = Vec::new();
    let mut terminated = false;
    loop {
        let (quo, rem) = num.div_rem(&den)?;
        let ck = ExactPoly::constant(scale_next.clone());
        let new_p = &(&quo * &p_m1) + &(&ck * &p_m2);
        let new_q = &(&quo * &q_m1) + &(&ck * &q_m2);
        p_m2 = p_m1;
        q_m2 = q_m1;
        p_m1 = new_p;
        q_m1 = new_q;
        steps.push((quo, rem.degree(), p_m1.clone(), q_m1.clone()));
        if rem.is_zero() {
            terminated = true;
            break;
        }
        if q_m1.degree_or_zero() > max_deg_q {
            break;
        }
        num = den;
        let (content, core) = rem.to_integer_primitive();
        let core = ExactPoly::from_bigint_coeffs(core);
        // keep the remainder's sign so the partial quotients stay classical
        // whenever the contents are 1 (the scalar factored out is positive)
        if content < BigRational::zero() {
            den = core.scale(&-BigRational::from_integer(1.into()));
            scale_next = -content;
        } else {
            den = core;
            scale_next = content;
        }
    }

    if !terminated && steps.last().map_or(true, |s| s.3.degree_or_zero() <= max_deg_q) {
        // ran out of window before overshooting the degree bound
        return Err(RothError::PrecisionExhausted {
            needed: needed + 2 * max_deg_q as i64,
            have: series.prec(),
        });
    }
    if !exact_input && terminated {
        // an inexact series looked rational: cannot certify termination
        return Err(RothError::PrecisionExhausted {
            needed: needed * 2,
            have: series.prec(),
        });
    }

    let mut out = Vec::new();
    for (k, (quo, rem_deg, p, q)) in steps.iter().enumerate() {
        let degq = q.degree_or_zero() as i64;
        if degq > max_deg_q as i64 {
            break;
        }
        let ord = if terminated && k + 1 == steps.len() {
            ORD_EXACT
        } else if k + 1 < steps.len() {
            let next_degq = steps[k + 1].3.degree_or_zero() as i64;
            // the defining identity, cross-checked against the Euclidean
            // remainder: v(α_window − p/q) = M − deg r + deg q
            let ord = degq + next_degq;
            if let Some(rd) = rem_deg {
                let direct = m_top - *rd as i64 + degq;
                if direct != ord {
                    return Err(RothError::BoundViolated(format!(
                        "approximation order {direct} disagrees with the continued-fraction identity {ord} at step {k}"
                    )));
                }
            }
            if !exact_input && ord >= series.prec() {
                // the window cannot tell this convergent apart from the tail
                return Err(RothError::PrecisionExhausted {
                    needed: ord + 1,
                    have: series.prec(),
                });
            }
            ord
        } else {
            // last computed step without a successor inside the bound
            break;
        };
        let reduced = RatFunc::new(p.clone(), q.clone())?;
        out.push(Convergent {
            p: reduced.num().clone(),
            q: reduced.den().clone(),
            partial_quotient: quo.clone(),
            ord,
        });
    }
    Ok(out)
}
