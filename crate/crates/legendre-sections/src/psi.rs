//! Division-polynomial recursion evaluated along a fixed section.
//!
//! For a section P = (ξ, η) with ξ ∈ ℚ(λ) and F = η² ∈ ℚ(λ), the value of
//! the n-th division polynomial at P is gₙ·η^(n+1 mod 2) with gₙ ∈ ℚ(λ), so
//! the whole recursion runs in the base field; η itself never appears. The
//! abscissa of nP is then ξ − ψₙ₋₁ψₙ₊₁/ψₙ², with the η² ↦ F substitution
//! resolved by the parity of n.

use crate::curve::CurveFF;
use crate::error::SectionError;
use legendre_exact::{rat_int, RatFunc};

/// Precomputed gₙ values for one section, gₙ = ψₙ(P)/η^(n+1 mod 2).
pub struct PsiSequence {
    xi: RatFunc,
    f: RatFunc,
    g: Vec<RatFunc>,
}

impl PsiSequence {
    /// Builds the sequence for a section with base-field abscissa ξ and
    /// base-field η². Curve coefficients must also lie in the base field.
    pub fn new(curve: &CurveFF, xi: RatFunc) -> Result<Self, SectionError> {
        let take_base = |e: &legendre_exact::FFElement| -> Result<RatFunc, SectionError> {
            if e.is_base() {
                Ok(e.base_part().clone())
            } else {
                Err(SectionError::Precondition(
                    "curve coefficients must lie in the base field",
                ))
            }
        };
        let a = take_base(curve.a())?;
        let b = take_base(curve.b())?;
        let c = take_base(curve.c())?;
        // F = ξ³ + aξ² + bξ + c
        let xi2 = &xi * &xi;
        let f = &(&(&xi2 * &xi) + &(&a * &xi2)) + &(&(&b * &xi) + &c);
        if f.is_zero() {
            return Err(SectionError::TorsionSection("η = 0: 2-torsion section"));
        }
        // b-invariants of y² = x³ + ax² + bx + c
        let b2 = (&a).scale_int(4);
        let b4 = (&b).scale_int(2);
        let b6 = (&c).scale_int(4);
        let b8 = &(&(&a * &c)).scale_int(4) - &(&b * &b);
        let g3 = {
            // 3ξ⁴ + b2ξ³ + 3b4ξ² + 3b6ξ + b8
            let xi3 = &xi2 * &xi;
            let xi4 = &xi2 * &xi2;
            &(&xi4.scale_int(3) + &(&b2 * &xi3))
                + &(&(&(&b4 * &xi2)).scale_int(3) + &(&(&(&b6 * &xi)).scale_int(3) + &b8))
        };
        let g4 = {
            // 2(2ξ⁶ + b2ξ⁵ + 5b4ξ⁴ + 10b6ξ³ + 10b8ξ² + (b2b8−b4b6)ξ + b4b8−b6²)
            let xi3 = &xi2 * &xi;
            let xi4 = &xi2 * &xi2;
            let xi5 = &xi4 * &xi;
            let xi6 = &xi4 * &xi2;
            let t = &(&(&xi6.scale_int(2) + &(&b2 * &xi5)) + &(&(&b4 * &xi4)).scale_int(5))
                + &(&(&(&b6 * &xi3)).scale_int(10) + &(&(&b8 * &xi2)).scale_int(10));
            let lin = &(&(&b2 * &b8) - &(&b4 * &b6)) * &xi;
            let cst = &(&b4 * &b8) - &(&b6 * &b6);
            (&(&t + &lin) + &cst).scale_int(2)
        };
        let g = vec![
            RatFunc::zero(),
            RatFunc::one(),
            RatFunc::constant(rat_int(2)),
            g3,
            g4,
        ];
        Ok(PsiSequence { xi, f, g })
    }

    pub fn xi(&self) -> &RatFunc {
        &self.xi
    }

    /// η² of the section as a base-field element.
    pub fn eta_squared(&self) -> &RatFunc {
        &self.f
    }

    fn extend_to(&mut self, n: usize) {
        let f2 = &self.f * &self.f;
        while self.g.len() <= n {
            let k = self.g.len();
            let g = &self.g;
            let next = if k % 2 == 1 {
                // k = 2m+1: ψ_{m+2}ψ_m³ − ψ_{m−1}ψ_{m+1}³ with η⁴ ↦ F² on the
                // even-index product
                let m = k / 2;
                let t1 = &g[m + 2] * &(&(&g[m] * &g[m]) * &g[m]);
                let t2 = &g[m - 1] * &(&(&g[m + 1] * &g[m + 1]) * &g[m + 1]);
                if m % 2 == 0 {
                    &(&t1 * &f2) - &t2
                } else {
                    &t1 - &(&t2 * &f2)
                }
            } else {
                // k = 2m: g_m(g_{m+2}g_{m−1}² − g_{m−2}g_{m+1}²)/2
                let m = k / 2;
                let t1 = &g[m + 2] * &(&g[m - 1] * &g[m - 1]);
                let t2 = &g[m - 2] * &(&g[m + 1] * &g[m + 1]);
                (&g[m] * &(&t1 - &t2)).scale_half()
            };
            self.g.push(next);
        }
    }

    /// gₙ (the division-polynomial value with the η factor stripped).
    pub fn g(&mut self, n: usize) -> &RatFunc {
        self.extend_to(n);
        &self.g[n]
    }

    /// True iff nP = O, i.e. ψₙ(P) = 0.
    pub fn is_torsion_order(&mut self, n: usize) -> bool {
        self.extend_to(n);
        self.g[n].is_zero()
    }

    /// x(nP) ∈ ℚ(λ) for n ≥ 1.
    pub fn abscissa(&mut self, n: usize) -> Result<RatFunc, SectionError> {
        if n == 0 {
            return Err(SectionError::IdentityPoint);
        }
        if n == 1 {
            return Ok(self.xi.clone());
        }
        self.extend_to(n + 1);
        if self.g[n].is_zero() {
            return Err(SectionError::TorsionSection("nP = O"));
        }
        let prod = &self.g[n - 1] * &self.g[n + 1];
        let sq = &self.g[n] * &self.g[n];
        let frac = if n % 2 == 1 {
            &(&prod * &self.f) / &sq
        } else {
            &prod / &(&sq * &self.f)
        };
        Ok(&self.xi - &frac)
    }

    /// y(nP)/η ∈ ℚ(λ) for n ≥ 1, via y(nP) = ψ₂ₙ(P)/(2ψₙ(P)⁴).
    pub fn ordinate_over_eta(&mut self, n: usize) -> Result<RatFunc, SectionError> {
        if n == 0 {
            return Err(SectionError::IdentityPoint);
        }
        self.extend_to(2 * n);
        if self.g[n].is_zero() {
            return Err(SectionError::TorsionSection("nP = O"));
        }
        let g2 = &self.g[n] * &self.g[n];
        let mut den = (&g2 * &g2).scale_int(2);
        if n % 2 == 0 {
            den = &den * &(&self.f * &self.f);
        }
        Ok(&self.g[2 * n] / &den)
    }
}

pub(crate) trait ScaleRat {
    fn scale_int(&self, k: i64) -> RatFunc;
    fn scale_half(&self) -> RatFunc;
}

impl ScaleRat for RatFunc {
    fn scale_int(&self, k: i64) -> RatFunc {
        self * &RatFunc::constant(rat_int(k))
    }

    fn scale_half(&self) -> RatFunc {
        self * &RatFunc::constant(legendre_exact::rat(1, 2))
    }
}

impl ScaleRat for &RatFunc {
    fn scale_int(&self, k: i64) -> RatFunc {
        (*self).scale_int(k)
    }

    fn scale_half(&self) -> RatFunc {
        (*self).scale_half()
    }
}
