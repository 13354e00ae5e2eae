//! Squarefree decomposition (Yun), limited irreducible factorization over ℚ
//! (big-prime Cantor–Zassenhaus with subset recombination), and coprime
//! refinement of factor lists.

use crate::error::ExactError;
use crate::poly::ExactPoly;
use num_bigint::{BigInt, BigUint, RandBigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::rngs::StdRng;
use rand::SeedableRng;

/// Largest squarefree divisor, primitive with positive leading coefficient.
pub fn squarefree_part(p: &ExactPoly) -> Result<ExactPoly, ExactError> {
    if p.is_zero() {
        return Err(ExactError::ZeroPolynomial("squarefree part"));
    }
    if p.is_constant() {
        return Ok(ExactPoly::one());
    }
    let g = p.gcd(&p.derivative());
    Ok(p.exact_div(&g)
        .expect("gcd divides")
        .primitive_part())
}

/// Roots whose linear factors are split off from squarefree factors, so that
/// the named fixed factors of the abscissa tables (λ, λ−1, λ−2, ...) always
/// appear on their own.
const TRIAL_ROOTS: [i64; 3] = [0, 1, 2];

/// Yun's squarefree decomposition over ℚ: returns pairwise-coprime squarefree
/// `(factor, multiplicity)` pairs whose weighted product is the input up to a
/// rational constant. Factors are primitive with positive leading coefficient;
/// linear factors at the small trial roots are split off individually.
pub fn squarefree_decompose(p: &ExactPoly) -> Result<Vec<(ExactPoly, usize)>, ExactError> {
    if p.is_zero() {
        return Err(ExactError::ZeroPolynomial("squarefree decomposition"));
    }
    let mut raw: Vec<(ExactPoly, usize)> = Vec::new();
    let pp = p.primitive_part();
    if pp.is_constant() {
        return Ok(raw);
    }
    let g = pp.gcd(&pp.derivative());
    if g.is_constant() {
        raw.push((pp, 1));
    } else {
        let mut b = pp.exact_div(&g).unwrap();
        let mut c = pp.derivative().exact_div(&g).unwrap();
        let mut d = &c - &b.derivative();
        let mut i = 1usize;
        while !b.is_constant() {
            let a = b.gcd(&d);
            if !a.is_constant() {
                raw.push((a.clone(), i));
            }
            b = b.exact_div(&a).unwrap();
            c = d.exact_div(&a).unwrap();
            d = &c - &b.derivative();
            i += 1;
        }
    }
    // Split off the named linear factors.
    let mut out: Vec<(ExactPoly, usize)> = Vec::new();
    for (f, m) in raw {
        let mut rest = f.primitive_part();
        for &r in &TRIAL_ROOTS {
            let root = BigRational::from_integer(BigInt::from(r));
            if !rest.is_constant() && rest.eval(&root).is_zero() {
                let lin = ExactPoly::from_int_coeffs(&[-r, 1]);
                rest = rest.exact_div(&lin).unwrap().primitive_part();
                out.push((lin, m));
            }
        }
        if !rest.is_constant() {
            out.push((rest, m));
        }
    }
    out.sort_by_key(|(f, m)| (*m, f.degree_or_zero()));
    Ok(out)
}

/// Refines a set of polynomials into a pairwise-coprime squarefree basis:
/// every input is, up to a constant, a product of powers of basis elements.
pub fn coprime_refine(polys: &[ExactPoly]) -> Vec<ExactPoly> {
    let mut basis: Vec<ExactPoly> = Vec::new();
    for p in polys {
        if p.is_zero() || p.is_constant() {
            continue;
        }
        let mut queue = vec![squarefree_part(p).unwrap()];
        while let Some(mut q) = queue.pop() {
            if q.is_constant() {
                continue;
            }
            let mut split = false;
            let mut i = 0;
            while i < basis.len() {
                let g = q.gcd(&basis[i]);
                if !g.is_constant() {
                    if g.degree() < basis[i].degree() {
                        let rest = basis[i].exact_div(&g).unwrap().primitive_part();
                        basis[i] = g.clone();
                        basis.push(rest);
                    }
                    q = q.exact_div(&g).unwrap().primitive_part();
                    if q.is_constant() {
                        split = true;
                        break;
                    }
                }
                i += 1;
            }
            if !split && !q.is_constant() {
                basis.push(q);
            }
        }
    }
    basis.sort_by_key(|f| (f.degree_or_zero(), f.to_string_var("x")));
    basis
}

/// Full irreducible factorization over ℚ (content dropped). Intended for the
/// moderate degrees arising from the abscissa tables; cost grows quickly with
/// both degree and coefficient size.
pub fn factor_rational(p: &ExactPoly) -> Result<Vec<(ExactPoly, usize)>, ExactError> {
    let sqf = squarefree_decompose(p)?;
    let mut out = Vec::new();
    for (f, m) in sqf {
        for irr in factor_squarefree(&f) {
            out.push((irr, m));
        }
    }
    out.sort_by_key(|(f, m)| (*m, f.degree_or_zero(), f.to_string_var("x")));
    Ok(out)
}

fn factor_squarefree(f: &ExactPoly) -> Vec<ExactPoly> {
    let (_, core) = f.to_integer_primitive();
    if core.len() <= 2 {
        return vec![f.primitive_part()];
    }
    big_prime_zassenhaus(&core)
}

// ---- GF(P) arithmetic with a big prime P ----

type GfPoly = Vec<BigInt>;

fn gf_trim(v: &mut GfPoly) {
    while v.last().map_or(false, |c| c.is_zero()) {
        v.pop();
    }
}

fn gf_reduce(v: &[BigInt], p: &BigInt) -> GfPoly {
    let mut out: Vec<BigInt> = v.iter().map(|c| c.mod_floor(p)).collect();
    gf_trim(&mut out);
    out
}

fn gf_mul(a: &GfPoly, b: &GfPoly, p: &BigInt) -> GfPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, ai) in a.iter().enumerate() {
        if ai.is_zero() {
            continue;
        }
        for (j, bj) in b.iter().enumerate() {
            out[i + j] += ai * bj;
        }
    }
    for c in out.iter_mut() {
        *c = c.mod_floor(p);
    }
    gf_trim(&mut out);
    out
}

fn gf_inv_scalar(a: &BigInt, p: &BigInt) -> BigInt {
    a.modpow(&(p - 2), p)
}

fn gf_rem(a: &GfPoly, b: &GfPoly, p: &BigInt) -> GfPoly {
    let mut r = a.to_vec();
    let db = b.len() - 1;
    let lc_inv = gf_inv_scalar(b.last().unwrap(), p);
    while r.len() > db {
        let c = (r.last().unwrap() * &lc_inv).mod_floor(p);
        let shift = r.len() - 1 - db;
        if !c.is_zero() {
            for (j, bc) in b.iter().enumerate() {
                let v = (&r[shift + j] - &c * bc).mod_floor(p);
                r[shift + j] = v;
            }
        }
        r.pop();
        gf_trim(&mut r);
        if r.is_empty() {
            break;
        }
    }
    r
}

fn gf_monic(mut a: GfPoly, p: &BigInt) -> GfPoly {
    if a.is_empty() {
        return a;
    }
    let inv = gf_inv_scalar(a.last().unwrap(), p);
    for c in a.iter_mut() {
        *c = (&*c * &inv).mod_floor(p);
    }
    a
}

fn gf_gcd(a: &GfPoly, b: &GfPoly, p: &BigInt) -> GfPoly {
    let mut x = a.to_vec();
    let mut y = b.to_vec();
    while !y.is_empty() {
        let r = gf_rem(&x, &y, p);
        x = y;
        y = r;
    }
    gf_monic(x, p)
}

fn gf_powmod(base: &GfPoly, e: &BigUint, modulus: &GfPoly, p: &BigInt) -> GfPoly {
    let mut acc: GfPoly = vec![BigInt::one()];
    let mut b = gf_rem(base, modulus, p);
    for i in (0..e.bits()).rev() {
        acc = gf_rem(&gf_mul(&acc, &acc, p), modulus, p);
        if e.bit(i) {
            acc = gf_rem(&gf_mul(&acc, &b, p), modulus, p);
        }
    }
    let _ = &mut b;
    acc
}

fn is_probable_prime(n: &BigUint, rng: &mut StdRng) -> bool {
    if n < &BigUint::from(2u32) {
        return false;
    }
    for &sp in &[2u32, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let spb = BigUint::from(sp);
        if n % &spb == BigUint::zero() {
            return *n == spb;
        }
    }
    let one = BigUint::one();
    let n1 = n - &one;
    let s = n1.trailing_zeros().unwrap_or(0);
    let d = &n1 >> s;
    'outer: for _ in 0..32 {
        let a = rng.gen_biguint_range(&BigUint::from(2u32), &n1);
        let mut x = a.modpow(&d, n);
        if x == one || x == n1 {
            continue;
        }
        for _ in 0..s - 1 {
            x = (&x * &x) % n;
            if x == n1 {
                continue 'outer;
            }
        }
        return false;
    }
    true
}

fn next_prime_above(start: BigUint, rng: &mut StdRng) -> BigUint {
    let mut c = if &start % 2u32 == BigUint::zero() {
        start + 1u32
    } else {
        start
    };
    loop {
        if is_probable_prime(&c, rng) {
            return c;
        }
        c += 2u32;
    }
}

fn symmetric(x: &BigInt, p: &BigInt) -> BigInt {
    let m = x.mod_floor(p);
    if &m * 2 > *p {
        m - p
    } else {
        m
    }
}

/// Distinct-degree + equal-degree (Cantor–Zassenhaus) split of a monic
/// squarefree polynomial mod P into monic irreducibles.
fn gf_factor(fm: &GfPoly, p: &BigInt, rng: &mut StdRng) -> Vec<GfPoly> {
    let n = fm.len() - 1;
    if n <= 1 {
        return vec![fm.clone()];
    }
    let p_big = p.to_biguint().unwrap();
    let mut out = Vec::new();
    let mut rest = fm.clone();
    let x: GfPoly = vec![BigInt::zero(), BigInt::one()];
    let mut frob = gf_powmod(&x, &p_big, &rest, p); // x^P mod rest
    let mut d = 1usize;
    while rest.len() - 1 >= 2 * d {
        // gcd with x^{P^d} − x picks out the product of degree-d irreducibles
        let mut diff = frob.clone();
        while diff.len() < 2 {
            diff.push(BigInt::zero());
        }
        diff[1] = (&diff[1] - BigInt::one()).mod_floor(p);
        gf_trim(&mut diff);
        let g = gf_gcd(&rest, &diff, p);
        if g.len() > 1 {
            for piece in gf_split_equal_degree(&g, d, p, rng) {
                out.push(piece);
            }
            rest = gf_monic(gf_div_exact(&rest, &g, p), p);
            if rest.len() - 1 >= 1 {
                frob = gf_rem(&frob, &rest, p);
            }
        }
        if rest.len() <= 1 {
            break;
        }
        d += 1;
        if rest.len() - 1 < 2 * d {
            break;
        }
        frob = gf_powmod(&frob, &p_big, &rest, p);
    }
    if rest.len() > 1 {
        out.push(rest);
    }
    out
}

fn gf_div_exact(a: &GfPoly, b: &GfPoly, p: &BigInt) -> GfPoly {
    // long division known to be exact
    let mut r = a.to_vec();
    let db = b.len() - 1;
    let lc_inv = gf_inv_scalar(b.last().unwrap(), p);
    let mut q = vec![BigInt::zero(); r.len() - db];
    while r.len() > db {
        let c = (r.last().unwrap() * &lc_inv).mod_floor(p);
        let shift = r.len() - 1 - db;
        q[shift] = c.clone();
        for (j, bc) in b.iter().enumerate() {
            let v = (&r[shift + j] - &c * bc).mod_floor(p);
            r[shift + j] = v;
        }
        r.pop();
        gf_trim(&mut r);
        if r.is_empty() {
            break;
        }
    }
    gf_trim(&mut q);
    q
}

fn gf_split_equal_degree(h: &GfPoly, d: usize, p: &BigInt, rng: &mut StdRng) -> Vec<GfPoly> {
    let k = h.len() - 1;
    if k == d {
        return vec![h.clone()];
    }
    let p_big = p.to_biguint().unwrap();
    let e = (p_big.pow(d as u32) - BigUint::one()) / BigUint::from(2u32);
    loop {
        let a: GfPoly = {
            let mut v: Vec<BigInt> = (0..k)
                .map(|_| rng.gen_bigint_range(&BigInt::zero(), p))
                .collect();
            gf_trim(&mut v);
            if v.is_empty() {
                continue;
            }
            v
        };
        let mut b = gf_powmod(&a, &e, h, p);
        if b.is_empty() {
            continue;
        }
        b[0] = (&b[0] - BigInt::one()).mod_floor(p);
        gf_trim(&mut b);
        let g = gf_gcd(h, &b, p);
        if g.len() > 1 && g.len() < h.len() {
            let rest = gf_monic(gf_div_exact(h, &g, p), p);
            let mut out = gf_split_equal_degree(&g, d, p, rng);
            out.extend(gf_split_equal_degree(&rest, d, p, rng));
            return out;
        }
    }
}

/// Big-prime Zassenhaus: factor mod a single prime exceeding twice the
/// Mignotte bound, then recombine subsets by trial division over ℤ.
fn big_prime_zassenhaus(core: &[BigInt]) -> Vec<ExactPoly> {
    let n = core.len() - 1;
    let height: BigUint = core
        .iter()
        .map(|c| c.magnitude().clone())
        .max()
        .unwrap();
    let lc = core.last().unwrap().clone();
    // Mignotte-style bound on factor coefficients, doubled for the symmetric
    // range and scaled by the leading coefficient.
    let bound: BigUint =
        (BigUint::one() << (n + 2)) * height * BigUint::from(n as u64 + 1) * lc.magnitude();
    let mut rng = StdRng::seed_from_u64(0x5eed_fac7);
    let mut p_uint = next_prime_above(bound * 2u32 + 1u32, &mut rng);
    let (p, fm) = loop {
        let p = BigInt::from_biguint(Sign::Plus, p_uint.clone());
        let reduced = gf_reduce(core, &p);
        if reduced.len() == core.len() {
            let monic = gf_monic(reduced.clone(), &p);
            let deriv: GfPoly = {
                let mut d: Vec<BigInt> = monic
                    .iter()
                    .enumerate()
                    .skip(1)
                    .map(|(i, c)| (c * BigInt::from(i)).mod_floor(&p))
                    .collect();
                gf_trim(&mut d);
                d
            };
            if gf_gcd(&monic, &deriv, &p).len() == 1 {
                break (p, monic);
            }
        }
        p_uint = next_prime_above(p_uint + 2u32, &mut rng);
    };
    let modular = gf_factor(&fm, &p, &mut rng);
    // Subset recombination. Each true factor over ℤ is lc·(product of some
    // modular factors) lifted symmetrically, up to content.
    let mut remaining: Vec<GfPoly> = modular;
    let mut target = ExactPoly::from_bigint_coeffs(core.to_vec());
    let mut found = Vec::new();
    let mut subset_size = 1usize;
    while 2 * subset_size <= remaining.len() {
        let mut advanced = false;
        let idxs: Vec<usize> = (0..remaining.len()).collect();
        for combo in combinations(&idxs, subset_size) {
            let mut prod: GfPoly = vec![lc.mod_floor(&p)];
            for &i in &combo {
                prod = gf_mul(&prod, &remaining[i], &p);
            }
            let lifted: Vec<BigInt> = prod.iter().map(|c| symmetric(c, &p)).collect();
            let cand = ExactPoly::from_bigint_coeffs(lifted).primitive_part();
            if cand.is_constant() {
                continue;
            }
            if let Some(q) = target.exact_div(&cand) {
                found.push(cand);
                target = q.primitive_part();
                let mut keep = Vec::new();
                for (i, f) in remaining.into_iter().enumerate() {
                    if !combo.contains(&i) {
                        keep.push(f);
                    }
                }
                remaining = keep;
                advanced = true;
                break;
            }
        }
        if !advanced {
            subset_size += 1;
        }
    }
    if !target.is_constant() {
        found.push(target.primitive_part());
    }
    found
}

fn combinations(items: &[usize], k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let n = items.len();
    if k > n {
        return out;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        out.push(idx.iter().map(|&i| items[i]).collect());
        let mut i = k;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if idx[i] != i + n - k {
                break;
            }
            if i == 0 {
                return out;
            }
        }
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}
