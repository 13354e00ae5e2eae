use legendre_exact::{ord_at, Place};
use legendre_sections::{abscissa_fraction, sigma_section, sigma_sequence};
use legendre_xi::{
    multiplicity_report, pole_multiplicity_scan, scan_within_bounds, two_section_beta,
    upsilon_form, xi_apply, xi_oddness_check,
};
use proptest::prelude::*;

#[test]
fn scan_to_twenty_is_bounded() {
    let reports = pole_multiplicity_scan(20).unwrap();
    assert!(scan_within_bounds(&reports));
    for r in &reports {
        assert!(r.w4_factors.is_empty(), "n = {}: {:?}", r.n, r.w4_factors);
    }
}

#[test]
fn multiplicities_away_from_bad_fibre_are_even() {
    // Bₙ = bₙ·Cₙ² up to one bad-fibre factor, so every pole order away from
    // λ = 2 is twice the contact order of nσ with the zero section
    for n in 2..=14 {
        let r = multiplicity_report(n).unwrap();
        for row in &r.table {
            if !row.contains_bad_fibre {
                assert_eq!(row.w % 2, 0, "n = {n}, factor {}", row.factor);
            }
        }
    }
}

#[test]
fn contact_order_bounded_by_xi_order() {
    // at every root b of Bₙ away from λ = 2 the contact order w/2 obeys the
    // operator bound 2 + max(0, ord_b Ξ(σ))
    let (_, p) = sigma_section();
    let xi_sigma = xi_apply(p.x().unwrap(), p.y().unwrap()).unwrap().value;
    let mut seq = sigma_sequence();
    for n in 2..=10usize {
        let fr = abscissa_fraction(&mut seq, n).unwrap();
        if fr.c.is_constant() {
            continue;
        }
        for (factor, mult) in legendre_exact::squarefree_decompose(&fr.c).unwrap() {
            let place = Place::at_root_of(factor);
            let bound = 2 + ord_at(&xi_sigma, &place).unwrap().max(0);
            assert!(
                (mult as i64) <= bound,
                "n = {n}: contact order {mult} exceeds bound {bound}"
            );
        }
    }
}

#[test]
fn oddness_on_multiples() {
    let (curve, p) = sigma_section();
    for n in 1..=4i64 {
        let np = curve.scalar_mul(n, &p);
        assert!(xi_oddness_check(np.x().unwrap(), np.y().unwrap()).unwrap());
    }
}

#[test]
fn upsilon_report_serialises() {
    let r = multiplicity_report(4).unwrap();
    let json = serde_json::to_string(&r).unwrap();
    assert!(json.contains("\"w_at_2\":1"), "{json}");
}

#[test]
fn upsilon_identity_random_points() {
    // Υ(ξ)/y³ must agree with the raw operator on points of the quadratic
    // twist curves y² = rhs(u) for assorted rational abscissae u
    use legendre_exact::{ExactPoly, FFElement, QuadExt, RatFunc};
    let u_form = upsilon_form();
    for xv in [3i64, 4, 5, -1, -2, 7, 10, -5, 6, 11] {
        // μ² = xv(xv−1)(xv−λ)
        let scale = xv * (xv - 1);
        let modulus = ExactPoly::from_int_coeffs(&[scale * xv, -scale]);
        let ext = QuadExt::from_poly(modulus);
        let x = FFElement::from_base_in(
            RatFunc::constant(legendre_exact::rat_int(xv)),
            ext.clone(),
        );
        let y = FFElement::mu(ext);
        let xi = xi_apply(&x, &y).unwrap().value;
        let y3 = &(&y * &y) * &y;
        assert_eq!(&u_form.apply(&x) / &y3, xi, "x = {xv}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn beta_height_never_exceeds_twelve(n in -6i64..=6, m in -6i64..=6) {
        prop_assume!(n != 0 || m != 0);
        let (beta, beta_s, report) = two_section_beta(n, m).unwrap();
        prop_assert!(!beta.is_zero());
        prop_assert!(!beta_s.is_zero());
        prop_assert!(report.h_beta <= 12, "h = {}", report.h_beta);
        prop_assert_eq!(report.max_order, report.h_beta + 2);
    }

    #[test]
    fn xi_linearity_random_multiple(n in 1i64..=6) {
        let (curve, p) = sigma_section();
        let np = curve.scalar_mul(n, &p);
        let base = xi_apply(p.x().unwrap(), p.y().unwrap()).unwrap().value;
        let xi_n = xi_apply(np.x().unwrap(), np.y().unwrap()).unwrap().value;
        let scaled = &base * &legendre_exact::FFElement::constant(legendre_exact::rat_int(n));
        prop_assert_eq!(xi_n, scaled);
    }
}
