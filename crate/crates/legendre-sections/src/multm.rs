//! The multiplication-by-m abscissa map φ_m(x) with x(mP) = φ_m(x(P)),
//! computed from division polynomials in x over the curve's coefficient
//! field.

use crate::curve::{CurveFF, SectionPoint};
use crate::error::SectionError;
use legendre_exact::{rat, rat_int, FFElement};
use serde::Serialize;

/// Univariate polynomial in x with coefficients in the curve's function
/// field, ascending degree.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FieldPoly {
    coeffs: Vec<FFElement>,
}

impl FieldPoly {
    pub fn new(mut coeffs: Vec<FFElement>) -> Self {
        while coeffs.last().map_or(false, |c| c.is_zero()) {
            coeffs.pop();
        }
        FieldPoly { coeffs }
    }

    pub fn zero() -> Self {
        FieldPoly { coeffs: Vec::new() }
    }

    pub fn constant(c: FFElement) -> Self {
        FieldPoly::new(vec![c])
    }

    pub fn one() -> Self {
        FieldPoly::constant(FFElement::one())
    }

    pub fn x() -> Self {
        FieldPoly::new(vec![FFElement::zero(), FFElement::one()])
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    pub fn coeffs(&self) -> &[FFElement] {
        &self.coeffs
    }

    pub fn leading(&self) -> FFElement {
        self.coeffs.last().cloned().unwrap_or_else(FFElement::zero)
    }

    pub fn add(&self, rhs: &FieldPoly) -> FieldPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            let a = self.coeffs.get(i).cloned().unwrap_or_else(FFElement::zero);
            let b = rhs.coeffs.get(i).cloned().unwrap_or_else(FFElement::zero);
            out.push(&a + &b);
        }
        FieldPoly::new(out)
    }

    pub fn sub(&self, rhs: &FieldPoly) -> FieldPoly {
        self.add(&rhs.scale(&FFElement::constant(rat_int(-1))))
    }

    pub fn mul(&self, rhs: &FieldPoly) -> FieldPoly {
        if self.is_zero() || rhs.is_zero() {
            return FieldPoly::zero();
        }
        let mut out = vec![FFElement::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = &out[i + j] + &(a * b);
            }
        }
        FieldPoly::new(out)
    }

    pub fn scale(&self, k: &FFElement) -> FieldPoly {
        FieldPoly::new(self.coeffs.iter().map(|c| c * k).collect())
    }

    pub fn eval(&self, x: &FFElement) -> FFElement {
        let mut acc = FFElement::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * x) + c;
        }
        acc
    }
}

/// φ_m = (x·ψ_m² − ψ_{m−1}ψ_{m+1})/ψ_m² as a pair (numerator, denominator)
/// of polynomials in x over the coefficient field.
pub fn mult_by_m_abscissa(
    curve: &CurveFF,
    m: usize,
) -> Result<(FieldPoly, FieldPoly), SectionError> {
    if m < 2 {
        return Err(SectionError::Precondition("m must be at least 2"));
    }
    let t = division_polys(curve, m + 1);
    let rhs = curve_rhs_poly(curve);
    // ψ_m² as a plain polynomial in x
    let psi_m_sq = {
        let sq = t[m].mul(&t[m]);
        if m % 2 == 0 {
            sq.mul(&rhs)
        } else {
            sq
        }
    };
    // ψ_{m−1}ψ_{m+1}: indices share parity, opposite to m
    let cross = {
        let pr = t[m - 1].mul(&t[m + 1]);
        if m % 2 == 1 {
            pr.mul(&rhs)
        } else {
            pr
        }
    };
    let num = FieldPoly::x().mul(&psi_m_sq).sub(&cross);
    Ok((num, psi_m_sq))
}

fn curve_rhs_poly(curve: &CurveFF) -> FieldPoly {
    FieldPoly::new(vec![
        curve.c().clone(),
        curve.b().clone(),
        curve.a().clone(),
        FFElement::one(),
    ])
}

/// tₙ for n ≤ n_max with ψₙ = tₙ(x)·y^(n+1 mod 2).
fn division_polys(curve: &CurveFF, n_max: usize) -> Vec<FieldPoly> {
    let k = |v: i64| FFElement::constant(rat_int(v));
    let a = curve.a().clone();
    let b = curve.b().clone();
    let c = curve.c().clone();
    let rhs = curve_rhs_poly(curve);
    let b2 = &a * &k(4);
    let b4 = &b * &k(2);
    let b6 = &c * &k(4);
    let b8 = &(&(&a * &c) * &k(4)) - &(&b * &b);
    let t3 = FieldPoly::new(vec![
        b8.clone(),
        &b6 * &k(3),
        &b4 * &k(3),
        b2.clone(),
        k(3),
    ]);
    let t4 = FieldPoly::new(vec![
        &(&b4 * &b8) - &(&b6 * &b6),
        &(&b2 * &b8) - &(&b4 * &b6),
        &b8 * &k(10),
        &b6 * &k(10),
        &b4 * &k(5),
        b2,
        k(2),
    ])
    .scale(&k(2));
    let mut t: Vec<FieldPoly> = vec![
        FieldPoly::zero(),
        FieldPoly::one(),
        FieldPoly::constant(k(2)),
        t3,
        t4,
    ];
    let rhs_sq = rhs.mul(&rhs);
    while t.len() <= n_max {
        let n = t.len();
        let m = n / 2;
        let next = if n % 2 == 1 {
            // ψ_{2m+1} = ψ_{m+2}ψ_m³ − ψ_{m−1}ψ_{m+1}³
            let t1 = t[m + 2].mul(&t[m].mul(&t[m]).mul(&t[m]));
            let t2 = t[m - 1].mul(&t[m + 1].mul(&t[m + 1]).mul(&t[m + 1]));
            if m % 2 == 0 {
                t1.mul(&rhs_sq).sub(&t2)
            } else {
                t1.sub(&t2.mul(&rhs_sq))
            }
        } else {
            // ψ_{2m} = ψ_m(ψ_{m+2}ψ_{m−1}² − ψ_{m−2}ψ_{m+1}²)/(2y)
            let t1 = t[m + 2].mul(&t[m - 1].mul(&t[m - 1]));
            let t2 = t[m - 2].mul(&t[m + 1].mul(&t[m + 1]));
            t[m].mul(&t1.sub(&t2))
                .scale(&FFElement::constant(rat(1, 2)))
        };
        t.push(next);
    }
    t
}

/// Postcondition check data for φ_m.
#[derive(Clone, Debug, Serialize)]
pub struct MultMapReport {
    pub m: usize,
    pub num_degree: usize,
    pub num_monic: bool,
    pub den_degree: usize,
    pub den_leading_is_m_squared: bool,
}

pub fn mult_map_report(curve: &CurveFF, m: usize) -> Result<MultMapReport, SectionError> {
    let (num, den) = mult_by_m_abscissa(curve, m)?;
    let m2 = FFElement::constant(rat_int((m * m) as i64));
    Ok(MultMapReport {
        m,
        num_degree: num.degree().unwrap_or(0),
        num_monic: num.leading() == FFElement::one(),
        den_degree: den.degree().unwrap_or(0),
        den_leading_is_m_squared: den.leading() == m2,
    })
}

/// Cross-check φ_m(x(P)) against the abscissa of mP from the group law.
pub fn mult_map_matches_group_law(
    curve: &CurveFF,
    p: &SectionPoint,
    m: usize,
) -> Result<bool, SectionError> {
    let (num, den) = mult_by_m_abscissa(curve, m)?;
    let x = p.x()?;
    let mp = curve.scalar_mul(m as i64, p);
    let expected = mp.x()?;
    let d = den.eval(x);
    if d.is_zero() {
        return Err(SectionError::TorsionSection("mP = O"));
    }
    Ok(&num.eval(x) / &d == *expected)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curve::sigma_section;

    #[test]
    fn duplication_formula_shape() {
        let curve = CurveFF::legendre();
        let (num, den) = mult_by_m_abscissa(&curve, 2).unwrap();
        // φ₂ = (x⁴ − 2bx² − 8cx + b² − 4ac)/(4(x³ + ax² + bx + c))
        assert_eq!(num.degree(), Some(4));
        assert_eq!(num.leading(), FFElement::one());
        assert_eq!(den.degree(), Some(3));
        let b = curve.b().clone();
        let four = FFElement::constant(rat_int(4));
        assert_eq!(den.coeffs()[3], four);
        // x² coefficient of the numerator is −2b
        let minus_two_b = &b * &FFElement::constant(rat_int(-2));
        assert_eq!(num.coeffs()[2], minus_two_b);
    }

    #[test]
    fn degree_and_leading_laws() {
        let curve = CurveFF::legendre();
        for m in 2..=5 {
            let rep = mult_map_report(&curve, m).unwrap();
            assert_eq!(rep.num_degree, m * m, "m = {m}");
            assert!(rep.num_monic, "m = {m}");
            assert_eq!(rep.den_degree, m * m - 1, "m = {m}");
            assert!(rep.den_leading_is_m_squared, "m = {m}");
        }
    }

    #[test]
    fn matches_group_law_on_sigma() {
        let (curve, p) = sigma_section();
        for m in 2..=5 {
            assert!(mult_map_matches_group_law(&curve, &p, m).unwrap(), "m = {m}");
        }
    }
}
