//! Instance checks for the several-valuation approximation lemma over ℚ(t):
//! build the monomial spans L(r), L(r+1) from a set of S-units, test the
//! transversality hypothesis f·L(r) ∩ L(r+1) = {0} by exact linear algebra,
//! and verify the resulting valuation inequality.

use crate::error::RothError;
use legendre_exact::{
    ord_at_ratfunc, squarefree_decompose, BigRational, ExactPoly, Place, RatFunc,
};
use num_traits::Zero;
use rand::Rng;
use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct WangInstance {
    /// Finite set of places, each counted with its residue degree.
    #[serde(with = "place_list")]
    pub s: Vec<Place>,
    /// The nonzero elements of A*; 0 is always implied.
    #[serde(with = "ratfunc_list")]
    pub a_star: Vec<RatFunc>,
    pub r: usize,
    #[serde(with = "ratfunc_str")]
    pub f: RatFunc,
    /// Chosen target a*_v per place of S, aligned with `s`; entries must be
    /// 0 or an element of A*.
    #[serde(with = "ratfunc_list")]
    pub choices: Vec<RatFunc>,
}

#[derive(Clone, Debug, Serialize)]
pub struct WangOutcome {
    pub hypothesis_held: bool,
    /// Linear dependency description when the hypothesis fails.
    pub witness: Option<String>,
    pub n: usize,
    pub m: usize,
    pub lhs: i64,
    #[serde(serialize_with = "legendre_exact::ser::serialize_rational")]
    pub rhs: BigRational,
    pub h_f: i64,
    pub chi: i64,
}

/// h(f) = max(deg num, deg den) = −Σ_v min{0, v(f)}, places counted
/// geometrically.
fn height(f: &RatFunc) -> i64 {
    f.height() as i64
}

/// All zeros and poles of f lie inside S.
fn is_s_unit(f: &RatFunc, s: &[Place]) -> Result<bool, RothError> {
    if f.is_zero() {
        return Ok(false);
    }
    if f.is_constant() {
        return Ok(true);
    }
    let h = height(f);
    let mut zeros = 0i64;
    let mut poles = 0i64;
    for v in s {
        let ord = ord_at_ratfunc(f, v)?;
        zeros += ord.max(0) * v.degree() as i64;
        poles += (-ord).max(0) * v.degree() as i64;
    }
    Ok(zeros == h && poles == h)
}

/// Dense coefficient vectors of a family of rational functions over a
/// common denominator, for exact rank computations.
fn coefficient_matrix(fns: &[RatFunc]) -> Vec<Vec<BigRational>> {
    let mut common_den = ExactPoly::one();
    for f in fns {
        let g = common_den.gcd(f.den());
        common_den = &common_den * &f.den().exact_div(&g).expect("gcd divides");
    }
    let mut width = 0;
    let rows: Vec<ExactPoly> = fns
        .iter()
        .map(|f| {
            let extra = common_den.exact_div(f.den()).expect("lcm construction");
            let row = f.num() * &extra;
            width = width.max(row.coeffs().len());
            row
        })
        .collect();
    rows.iter()
        .map(|p| {
            let mut v = p.coeffs().to_vec();
            v.resize(width, BigRational::zero());
            v
        })
        .collect()
}

/// Row-reduce in place; returns the indices of rows that were independent of
/// all earlier ones.
fn independent_rows(mut mat: Vec<Vec<BigRational>>) -> Vec<usize> {
    let mut pivots: Vec<(usize, Vec<BigRational>)> = Vec::new();
    let mut kept = Vec::new();
    for (i, row) in mat.iter_mut().enumerate() {
        for (col, prow) in &pivots {
            if !row[*col].is_zero() {
                let factor = row[*col].clone() / prow[*col].clone();
                for (x, px) in row.iter_mut().zip(prow.iter()) {
                    *x = &*x - &(&factor * px);
                }
            }
        }
        if let Some(col) = row.iter().position(|x| !x.is_zero()) {
            pivots.push((col, row.clone()));
            kept.push(i);
        }
    }
    kept
}

/// Monomials of total degree exactly r in the given generators, as reduced
/// rational functions (duplicates removed later by the rank computation).
fn degree_monomials(gens: &[RatFunc], r: usize) -> Vec<RatFunc> {
    let mut out = vec![RatFunc::one()];
    for _ in 0..r {
        let mut next = Vec::new();
        for (i, g) in gens.iter().enumerate() {
            for m in &out {
                // combinations with repetition: multiply by generators in
                // nondecreasing index order
                next.push((m * g, i));
            }
        }
        // keep one representative per multiset by tracking the last index
        let mut seen = Vec::new();
        let mut dedup = Vec::new();
        for (f, i) in next {
            let key = (i, f.to_string_var("t"));
            if !seen.contains(&key) {
                seen.push(key);
                dedup.push((f, i));
            }
        }
        out = dedup.iter().map(|(f, _)| f.clone()).collect();
    }
    out
}

fn span_basis(gens: &[RatFunc], r: usize) -> Vec<RatFunc> {
    let monomials = degree_monomials(gens, r);
    let mat = coefficient_matrix(&monomials);
    independent_rows(mat)
        .into_iter()
        .map(|i| monomials[i].clone())
        .collect()
}

pub fn wang_lemma_check(inst: &WangInstance) -> Result<WangOutcome, RothError> {
    if inst.f.is_zero() {
        return Err(RothError::Precondition("f must be nonzero"));
    }
    if inst.choices.len() != inst.s.len() {
        return Err(RothError::Precondition(
            "one choice of a*_v per place of S is required",
        ));
    }
    if inst.a_star.is_empty() {
        return Err(RothError::Precondition(
            "A* needs at least one nonzero element",
        ));
    }
    for a in &inst.a_star {
        if !is_s_unit(a, &inst.s)? {
            return Err(RothError::NotSUnit(a.to_string_var("t")));
        }
    }
    for c in &inst.choices {
        if !c.is_zero() && !inst.a_star.contains(c) {
            return Err(RothError::Precondition(
                "every choice must be 0 or an element of A*",
            ));
        }
    }

    let basis_r = span_basis(&inst.a_star, inst.r);
    let basis_r1 = span_basis(&inst.a_star, inst.r + 1);
    let n = basis_r.len();
    let m = basis_r1.len();

    // hypothesis: f·L(r) and L(r+1) intersect trivially, i.e. the joined
    // family stays independent
    let mut joined: Vec<RatFunc> = basis_r.iter().map(|b| b * &inst.f).collect();
    joined.extend(basis_r1.iter().cloned());
    let rank = independent_rows(coefficient_matrix(&joined)).len();
    let hypothesis_held = rank == n + m;
    let chi = inst.s.iter().map(|v| v.degree() as i64).sum::<i64>() - 2;
    let h_f = height(&inst.f);
    if !hypothesis_held {
        let witness = if inst.a_star.contains(&inst.f) {
            "f lies in A*, so f·L(r) ⊆ L(r+1)".to_string()
        } else {
            format!(
                "f·L(r) + L(r+1) has rank {rank} < {n} + {m}: the spans intersect"
            )
        };
        return Ok(WangOutcome {
            hypothesis_held: false,
            witness: Some(witness),
            n,
            m,
            lhs: 0,
            rhs: BigRational::zero(),
            h_f,
            chi,
        });
    }

    // left side: approximation quality at the chosen targets inside S, plus
    // the deep-ramification excess outside S
    let cutoff = (m + n - 1) as i64;
    let mut lhs = 0i64;
    for (v, a) in inst.s.iter().zip(&inst.choices) {
        let diff = &inst.f - a;
        if diff.is_zero() {
            // f ∈ A*: excluded by the hypothesis, handled above
            return Err(RothError::Precondition("choice equals f"));
        }
        lhs += ord_at_ratfunc(&diff, v)?.max(0) * v.degree() as i64;
    }
    let mut targets = inst.a_star.clone();
    targets.push(RatFunc::zero());
    // outside S only zeros of f − a* matter; group them by a common coprime
    // basis so the max over a* is taken place by place
    let mut factors: Vec<ExactPoly> = Vec::new();
    for a in &targets {
        let diff = &inst.f - a;
        if diff.is_zero() {
            return Err(RothError::Precondition("choice equals f"));
        }
        for (g, _) in squarefree_decompose(diff.num())? {
            factors.push(g);
        }
    }
    let basis = legendre_exact::coprime_refine(&factors);
    for g in basis {
        let place = Place::at_root_of(g.clone());
        if inst.s.contains(&place) {
            continue;
        }
        let mut best = 0i64;
        for a in &targets {
            let diff = &inst.f - a;
            let ord = ord_at_ratfunc(&diff, &place)?;
            best = best.max(ord - cutoff);
        }
        lhs += best * place.degree() as i64;
    }
    if !inst.s.contains(&Place::Infinity) {
        let mut best = 0i64;
        for a in &targets {
            let diff = &inst.f - a;
            let ord = ord_at_ratfunc(&diff, &Place::Infinity)?;
            best = best.max(ord - cutoff);
        }
        lhs += best;
    }

    let mn = BigRational::from_integer(((m + n) as i64).into());
    let nn = BigRational::from_integer((n as i64).into());
    let rhs = &(&mn / &nn) * &BigRational::from_integer(h_f.into())
        + &(&mn * &BigRational::from_integer(((m + n - 1) as i64).into())
            / &(&nn * &BigRational::from_integer(2.into())))
            * &BigRational::from_integer(chi.into());
    if BigRational::from_integer(lhs.into()) > rhs {
        return Err(RothError::BoundViolated(format!(
            "approximation inequality failed: lhs = {lhs}, rhs = {rhs}"
        )));
    }
    Ok(WangOutcome {
        hypothesis_held: true,
        witness: None,
        n,
        m,
        lhs,
        rhs,
        h_f,
        chi,
    })
}

/// Random valid instance over ℚ(t): S always contains ∞ plus up to three
/// small rational points, A* is built from S-supported linear factors, f is
/// a small random rational function.
pub fn random_wang_instance<R: Rng>(rng: &mut R) -> WangInstance {
    loop {
        let n_finite = rng.gen_range(1..=3usize);
        let mut roots: Vec<i64> = Vec::new();
        while roots.len() < n_finite {
            let c = rng.gen_range(-2..=3i64);
            if !roots.contains(&c) {
                roots.push(c);
            }
        }
        let mut s: Vec<Place> = roots.iter().map(|&c| Place::at_integer(c)).collect();
        s.push(Place::Infinity);

        let n_units = rng.gen_range(1..=3usize);
        let mut a_star = Vec::new();
        for _ in 0..n_units {
            let mut u = RatFunc::constant(BigRational::from_integer(
                rng.gen_range(1..=3i64).into(),
            ));
            for &c in &roots {
                let e = rng.gen_range(-1..=2i32);
                let lin = RatFunc::from_poly(ExactPoly::from_int_coeffs(&[-c, 1]));
                u = &u * &lin.pow(e).expect("linear factor nonzero");
            }
            if !a_star.contains(&u) {
                a_star.push(u);
            }
        }

        let num = ExactPoly::from_int_coeffs(&[
            rng.gen_range(-3..=3),
            rng.gen_range(-3..=3),
            rng.gen_range(0..=2),
        ]);
        let den = ExactPoly::from_int_coeffs(&[rng.gen_range(1..=3), rng.gen_range(0..=2), 1]);
        let Ok(f) = RatFunc::new(num, den) else {
            continue;
        };
        if f.is_zero() || a_star.contains(&f) {
            continue;
        }
        let r = rng.gen_range(0..=2usize);
        let choices: Vec<RatFunc> = (0..s.len())
            .map(|_| {
                let k = rng.gen_range(0..=a_star.len());
                if k == 0 {
                    RatFunc::zero()
                } else {
                    a_star[k - 1].clone()
                }
            })
            .collect();
        return WangInstance {
            s,
            a_star,
            r,
            f,
            choices,
        };
    }
}

mod ratfunc_str {
    use super::*;
    use serde::{Deserializer, Serializer};

    pub fn serialize<S: Serializer>(f: &RatFunc, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(&f.to_string_var("t"))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<RatFunc, D::Error> {
        let s = String::deserialize(d)?;
        crate::wang::parse_ratfunc(&s).map_err(serde::de::Error::custom)
    }

    use serde::Deserialize;
}

mod ratfunc_list {
    use super::*;
    use serde::ser::SerializeSeq;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(fs: &[RatFunc], s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(fs.len()))?;
        for f in fs {
            seq.serialize_element(&f.to_string_var("t"))?;
        }
        seq.end()
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<RatFunc>, D::Error> {
        let raw = Vec::<String>::deserialize(d)?;
        raw.iter()
            .map(|s| crate::wang::parse_ratfunc(s).map_err(serde::de::Error::custom))
            .collect()
    }
}

mod place_list {
    use super::*;
    use serde::ser::SerializeSeq;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(ps: &[Place], s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(ps.len()))?;
        for p in ps {
            match p {
                Place::Infinity => seq.serialize_element("inf")?,
                Place::Finite(g) => seq.serialize_element(&g.to_string_var("t"))?,
            }
        }
        seq.end()
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Place>, D::Error> {
        let raw = Vec::<String>::deserialize(d)?;
        raw.iter()
            .map(|s| {
                if s == "inf" {
                    Ok(Place::Infinity)
                } else {
                    crate::wang::parse_ratfunc(s)
                        .map_err(serde::de::Error::custom)
                        .and_then(|f| {
                            f.as_poly().cloned().ok_or_else(|| {
                                serde::de::Error::custom("place must be a polynomial")
                            })
                        })
                        .map(Place::at_root_of)
                }
            })
            .collect()
    }
}

/// Small parser for rational functions in t: integer or rational
/// coefficients, `+ - * / ^ ( )`, and the variable `t`.
pub fn parse_ratfunc(input: &str) -> Result<RatFunc, String> {
    Parser {
        chars: input.chars().collect(),
        pos: 0,
    }
    .parse()
}

struct Parser {
    chars: Vec<char>,
    pos: usize,
}

impl Parser {
    fn parse(mut self) -> Result<RatFunc, String> {
        let e = self.expr()?;
        self.skip_ws();
        if self.pos != self.chars.len() {
            return Err(format!("trailing input at position {}", self.pos));
        }
        Ok(e)
    }

    fn skip_ws(&mut self) {
        while self.pos < self.chars.len() && self.chars[self.pos].is_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<RatFunc, String> {
        let mut acc = self.term()?;
        while let Some(c) = self.peek() {
            match c {
                '+' => {
                    self.pos += 1;
                    acc = &acc + &self.term()?;
                }
                '-' => {
                    self.pos += 1;
                    acc = &acc - &self.term()?;
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<RatFunc, String> {
        let mut acc = self.factor()?;
        while let Some(c) = self.peek() {
            match c {
                '*' => {
                    self.pos += 1;
                    acc = &acc * &self.factor()?;
                }
                '/' => {
                    self.pos += 1;
                    let d = self.factor()?;
                    acc = (&acc * &d.inverse().map_err(|e| e.to_string())?).clone();
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<RatFunc, String> {
        let base = match self.peek() {
            Some('-') => {
                self.pos += 1;
                let f = self.factor()?;
                return Ok(-&f);
            }
            Some('(') => {
                self.pos += 1;
                let e = self.expr()?;
                if self.peek() != Some(')') {
                    return Err("expected )".into());
                }
                self.pos += 1;
                e
            }
            Some('t') => {
                self.pos += 1;
                RatFunc::var()
            }
            Some(c) if c.is_ascii_digit() => {
                let start = self.pos;
                while self
                    .chars
                    .get(self.pos)
                    .is_some_and(|c| c.is_ascii_digit())
                {
                    self.pos += 1;
                }
                let n: i64 = self.chars[start..self.pos]
                    .iter()
                    .collect::<String>()
                    .parse()
                    .map_err(|_| "bad integer")?;
                RatFunc::constant(BigRational::from_integer(n.into()))
            }
            other => return Err(format!("unexpected token {other:?}")),
        };
        if self.peek() == Some('^') {
            self.pos += 1;
            let neg = if self.peek() == Some('-') {
                self.pos += 1;
                true
            } else {
                false
            };
            let start = self.pos;
            while self
                .chars
                .get(self.pos)
                .is_some_and(|c| c.is_ascii_digit())
            {
                self.pos += 1;
            }
            let e: i32 = self.chars[start..self.pos]
                .iter()
                .collect::<String>()
                .parse()
                .map_err(|_| "bad exponent")?;
            let e = if neg { -e } else { e };
            return base.pow(e).map_err(|e| e.to_string());
        }
        Ok(base)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn reference_instance() -> WangInstance {
        WangInstance {
            s: vec![Place::at_integer(0), Place::Infinity],
            a_star: vec![RatFunc::var()],
            r: 0,
            f: parse_ratfunc("t + 1").unwrap(),
            choices: vec![RatFunc::zero(), RatFunc::var()],
        }
    }

    #[test]
    fn reference_instance_verifies() {
        let out = wang_lemma_check(&reference_instance()).unwrap();
        assert!(out.hypothesis_held);
        assert_eq!((out.n, out.m), (1, 1));
        assert_eq!(out.chi, 0);
        // v_∞(f − t) = v_∞(1) = 0 and v_0(f) = 0, so the left side is 0
        assert_eq!(out.lhs, 0);
        assert_eq!(out.rhs, BigRational::from_integer(2.into()));
    }

    #[test]
    fn f_in_a_star_fails_the_hypothesis() {
        let mut inst = reference_instance();
        inst.f = RatFunc::var();
        let out = wang_lemma_check(&inst).unwrap();
        assert!(!out.hypothesis_held);
        assert!(out.witness.unwrap().contains("A*"));
    }

    #[test]
    fn non_s_unit_rejected() {
        let mut inst = reference_instance();
        inst.a_star = vec![parse_ratfunc("t - 1").unwrap()];
        assert!(matches!(
            wang_lemma_check(&inst),
            Err(RothError::NotSUnit(_))
        ));
    }

    #[test]
    fn random_instances_never_violate_the_inequality() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let mut held = 0;
        for _ in 0..50 {
            let inst = random_wang_instance(&mut rng);
            let out = wang_lemma_check(&inst).unwrap();
            if out.hypothesis_held {
                held += 1;
                assert!(BigRational::from_integer(out.lhs.into()) <= out.rhs);
            }
        }
        assert!(held >= 25, "only {held} of 50 instances were transversal");
    }

    #[test]
    fn instance_roundtrips_through_json() {
        let inst = reference_instance();
        let json = serde_json::to_string(&inst).unwrap();
        let back: WangInstance = serde_json::from_str(&json).unwrap();
        assert_eq!(back.f, inst.f);
        assert_eq!(back.s, inst.s);
        let out = wang_lemma_check(&back).unwrap();
        assert!(out.hypothesis_held);
    }
}
