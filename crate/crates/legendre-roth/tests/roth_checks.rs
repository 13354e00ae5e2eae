use legendre_exact::{rat, rat_int, BigInt, BigRational, ExactPoly, Place, RatFunc};
use legendre_roth::{
    alpha_series, approximation_order, cf_expand, laurent_expand, liouville_check,
    quartic_minpoly, quasi_integrality_report, roth_example_check, roth_prop_check,
    zero_gap_stats, LaurentSeries, RothError,
};
use num_traits::{One, Zero};
use proptest::prelude::*;
use std::time::Instant;

/// C(4k, k)/(3k + 1), the closed form the branch coefficients must match
/// (up to the alternating sign), computed by plain big-integer arithmetic.
fn fuss_catalan(k: u64) -> BigInt {
    let mut binom = BigInt::one();
    for j in 0..k {
        binom = binom * BigInt::from(4 * k - j) / BigInt::from(j + 1);
    }
    let (q, r) = num_integer::Integer::div_rem(&binom, &BigInt::from(3 * k + 1));
    assert!(r.is_zero(), "C(4k,k) is always divisible by 3k+1");
    q
}

#[test]
fn branch_coefficients_match_the_closed_form() {
    let depth = 100i64;
    let alpha = alpha_series(depth).unwrap();
    let mut k = 0u64;
    for e in 1..depth {
        let c = alpha.coeff(e).unwrap();
        if (e - 1) % 3 == 0 {
            let sign = if k % 2 == 0 { -1 } else { 1 };
            let expect = BigRational::from_integer(fuss_catalan(k) * BigInt::from(sign));
            assert_eq!(c, expect, "exponent {e}");
            k += 1;
        } else {
            assert!(c.is_zero(), "exponent {e} should be a gap");
        }
    }
    assert!(k >= 33);
}

#[test]
fn every_convergent_order_is_certified_against_the_series() {
    let alpha = alpha_series(120).unwrap();
    let convergents = cf_expand(&alpha, 40).unwrap();
    assert!(convergents.len() >= 8);
    for c in &convergents {
        let direct = approximation_order(&alpha, &c.p, &c.q).unwrap();
        assert_eq!(direct, c.ord, "deg q = {}", c.q.degree_or_zero());
        // the norm-form order agrees whenever the fraction is genuinely close
        let nf = liouville_check(&c.p, &c.q).unwrap();
        assert_eq!(nf.ord, c.ord);
        assert!(c.ord <= nf.bound);
    }
}

#[test]
fn convergents_are_best_approximations() {
    let alpha = alpha_series(80).unwrap();
    let convergents = cf_expand(&alpha, 12).unwrap();
    // competitor fractions over a small coefficient grid never beat the
    // bracketing convergent
    let coeffs = [-2i64, -1, 0, 1, 2];
    for qd in 1..=4usize {
        let best = convergents
            .iter()
            .filter(|c| c.q.degree_or_zero() <= qd)
            .map(|c| c.ord)
            .max()
            .unwrap();
        for a in coeffs {
            for b in coeffs {
                for c0 in coeffs {
                    if c0 == 0 {
                        continue;
                    }
                    let p = ExactPoly::from_int_coeffs(&[a, b]);
                    let mut qc = vec![0i64; qd + 1];
                    qc[0] = a + 2;
                    qc[1] = b;
                    qc[qd] = c0;
                    let q = ExactPoly::from_int_coeffs(&qc);
                    let ord = approximation_order(&alpha, &p, &q).unwrap();
                    assert!(
                        ord <= best,
                        "p = {}, q = {} beats the convergents: {ord} > {best}",
                        p.to_string_var("t"),
                        q.to_string_var("t")
                    );
                }
            }
        }
    }
}

#[test]
fn effective_bound_holds_through_degree_two_hundred() {
    let start = Instant::now();
    let report = roth_example_check(200).unwrap();
    let elapsed = start.elapsed();
    assert!(report.convergents_checked >= 60);
    assert!(report.empirical_exponent >= 2.0 && report.empirical_exponent < 4.5);
    assert!(report.min_margin > 9.0e8);
    assert!(
        elapsed.as_secs() < 60,
        "degree-200 sweep took {elapsed:?}, budget is one minute"
    );
}

#[test]
fn gap_envelope_stays_tame_at_depth() {
    let alpha = alpha_series(300).unwrap();
    let stats = zero_gap_stats(&alpha, 300).unwrap();
    // support is exactly {3k+1}: every gap is 2 (the last one is clipped by
    // the scan depth) and the envelope ratio is attained at the first term
    assert!(stats.gaps.iter().all(|&(e, _)| (e - 1) % 3 == 0));
    let (interior, last) = stats.gaps.split_at(stats.gaps.len() - 1);
    assert!(interior.iter().all(|&(_, g)| g == 2));
    assert!(last[0].1 <= 2);
    assert!((stats.envelope_ratio - 2.0).abs() < 1e-12);
}

#[test]
fn second_branch_liouville_style_bound() {
    // the finite branch at 1 has its own quartic distance bound; check its
    // series against the minimal polynomial residual instead of the norm form
    let p = quartic_minpoly::<BigRational>();
    let seed = LaurentSeries::from_terms_exact(&[(0, rat_int(1))]);
    let b = laurent_expand(&p, &seed, 60).unwrap();
    assert_eq!(b.coeff(0).unwrap(), rat_int(1));
    assert_eq!(b.coeff(1).unwrap(), rat(1, 3));
    assert_eq!(b.coeff(2).unwrap(), rat(-2, 9));
    // the two branch expansions differ already in their leading exponents
    let alpha = alpha_series(60).unwrap();
    let diff = b.sub(&alpha);
    assert_eq!(diff.valuation(), Some(0));
}

#[test]
fn quasi_integrality_to_twenty_with_zimmer_to_ten() {
    let report = quasi_integrality_report(20, &rat(1, 16), 10).unwrap();
    assert_eq!(report.rows.len(), 20);
    for row in &report.rows {
        assert!(row.m_n <= 4, "n = {}", row.n);
        if row.n <= 10 {
            let slack = row.zimmer_slack.as_ref().expect("n within zimmer range");
            assert!(*slack >= BigRational::zero(), "n = {}", row.n);
        } else {
            assert!(row.zimmer_slack.is_none());
        }
    }
    assert_eq!(report.rows[3].m_n, 2);
    assert_eq!(report.h_curve, 6);
}

#[test]
fn proposition_alternatives_on_a_convergent() {
    // a middling convergent of α is far from every low-height target, so it
    // lands in the second alternative with the sum computed exactly
    let alpha = alpha_series(60).unwrap();
    let cs = cf_expand(&alpha, 10).unwrap();
    let c = cs.iter().find(|c| c.q.degree_or_zero() >= 3).unwrap();
    let f = RatFunc::new(c.p.clone(), c.q.clone()).unwrap();
    let a = vec![RatFunc::zero(), RatFunc::one()];
    let s = vec![Place::at_integer(0), Place::at_integer(1), Place::Infinity];
    let choices = vec![RatFunc::zero(), RatFunc::zero(), RatFunc::zero()];
    let out = roth_prop_check(&f, &a, &s, &rat(1, 16), &choices).unwrap();
    assert!(out.small_height || out.approximation_bounded);
    assert!(out.h_f >= 3);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn truncation_never_invents_coefficients(
        exps in proptest::collection::vec((0i64..30, -5i64..5), 1..8),
        cut in 1i64..30,
    ) {
        let terms: Vec<(i64, BigRational)> =
            exps.iter().map(|&(e, c)| (e, rat_int(c))).collect();
        let s = LaurentSeries::from_terms(&terms, 30);
        let t = s.truncate(cut);
        for e in 0..cut {
            prop_assert_eq!(t.coeff(e).unwrap(), s.coeff(e).unwrap());
        }
        let overflow = matches!(t.coeff(cut), Err(RothError::PrecisionExhausted { .. }));
        prop_assert!(overflow);
    }

    #[test]
    fn product_precision_is_never_overstated(
        av in 0i64..6, ap in 8i64..20,
        bv in 0i64..6, bp in 8i64..20,
    ) {
        // a = t^{-av} + garbage up to prec, b likewise; the product's
        // precision must respect min(ap + bv, bp + av)
        let a = LaurentSeries::from_terms(&[(av, rat_int(1)), (ap - 1, rat_int(7))], ap);
        let b = LaurentSeries::from_terms(&[(bv, rat_int(1)), (bp - 1, rat_int(-3))], bp);
        let prod = a.mul(&b);
        prop_assert!(prod.prec() <= (ap + bv).min(bp + av));
        prop_assert_eq!(prod.coeff(av + bv).unwrap(), rat_int(1));
    }

    #[test]
    fn norm_form_bound_is_universal(
        pc in proptest::collection::vec(-4i64..=4, 1..4),
        qc in proptest::collection::vec(-4i64..=4, 1..5),
    ) {
        let p = ExactPoly::from_int_coeffs(&pc);
        let q = ExactPoly::from_int_coeffs(&qc);
        prop_assume!(!q.is_zero());
        let r = liouville_check(&p, &q).unwrap();
        prop_assert!(r.ord <= r.bound);
    }
}
