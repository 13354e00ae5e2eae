//! The two-alternative approximation bound: a rational function f that
//! approximates a finite target set A too well at the places of S must
//! itself have small height.

use crate::error::RothError;
use legendre_exact::{ord_at_ratfunc, rat, rat_int, BigRational, Place, RatFunc};
use num_traits::Zero;
use serde::Serialize;

#[derive(Clone, Debug, Serialize)]
pub struct RothAlternatives {
    /// First alternative: h(f) ≤ (6l/ε)·log(1/ε)·Σ h(a).
    pub small_height: bool,
    /// Second alternative: Σ_v max{0, v(f − a_v)} ≤ (2+ε)h(f) +
    /// 3(1/ε)^l(χ + 2Σ h(a)), available only when f ∉ A.
    pub approximation_bounded: bool,
    pub h_f: i64,
    pub height_threshold: f64,
    pub approx_sum: i64,
    #[serde(serialize_with = "legendre_exact::ser::serialize_rational")]
    pub approx_bound: BigRational,
}

/// Check that f satisfies one of the two alternatives for the target set
/// `a`, the place set `s`, and the per-place choices a_v ∈ A.
///
/// The first alternative is a floating comparison (its constant is generous
/// by orders of magnitude); the second is decided in exact rational
/// arithmetic. Neither holding falsifies the inequality and is an error.
pub fn roth_prop_check(
    f: &RatFunc,
    a: &[RatFunc],
    s: &[Place],
    eps: &BigRational,
    choices: &[RatFunc],
) -> Result<RothAlternatives, RothError> {
    if f.is_zero() {
        return Err(RothError::Precondition("f must be nonzero"));
    }
    if a.is_empty() {
        return Err(RothError::Precondition("target set must be nonempty"));
    }
    if *eps <= BigRational::zero() || *eps > rat(1, 16) {
        return Err(RothError::Precondition("ε must lie in (0, 1/16]"));
    }
    if choices.len() != s.len() {
        return Err(RothError::Precondition(
            "one choice of a_v per place of S is required",
        ));
    }
    for c in choices {
        if !a.contains(c) {
            return Err(RothError::Precondition(
                "every choice must be an element of A",
            ));
        }
    }

    let l = a.len();
    let h_f = f.height() as i64;
    let sum_h_a: i64 = a.iter().map(|x| x.height() as i64).sum();
    let eps_f = legendre_exact::rat_to_f64(eps);
    let height_threshold =
        (6.0 * l as f64 / eps_f) * (1.0 / eps_f).ln() * sum_h_a as f64;
    let small_height = (h_f as f64) <= height_threshold;

    let chi = s.iter().map(|v| v.degree() as i64).sum::<i64>() - 2;
    let mut approx_sum = 0i64;
    for (v, av) in s.iter().zip(choices) {
        let diff = f - av;
        if diff.is_zero() {
            continue; // f ∈ A: only the first alternative can apply
        }
        approx_sum += ord_at_ratfunc(&diff, v)?.max(0) * v.degree() as i64;
    }
    let inv_eps_l = (rat_int(1) / eps).pow(l as i32);
    let approx_bound = (rat_int(2) + eps) * rat_int(h_f)
        + rat_int(3) * &inv_eps_l * (rat_int(chi) + rat_int(2 * sum_h_a));
    let f_in_a = a.contains(f);
    let approximation_bounded = !f_in_a && rat_int(approx_sum) <= approx_bound;

    if !small_height && !approximation_bounded {
        return Err(RothError::BoundViolated(format!(
            "neither alternative holds: h(f) = {h_f} > {height_threshold} and \
             the approximation sum {approx_sum} exceeds {approx_bound}"
        )));
    }
    Ok(RothAlternatives {
        small_height,
        approximation_bounded,
        h_f,
        height_threshold,
        approx_sum,
        approx_bound,
    })
}
