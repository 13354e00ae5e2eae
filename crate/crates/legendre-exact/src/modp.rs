//! Small-prime modular polynomial arithmetic: the fast path behind integer
//! polynomial gcd (single-prime coprimality certificates, CRT reconstruction).

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub(crate) fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

pub(crate) fn powmod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = mulmod(acc, a, p);
        }
        a = mulmod(a, a, p);
        e >>= 1;
    }
    acc
}

pub(crate) fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for &p in &[2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n % p == 0 {
            return n == p;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for &a in &[2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = powmod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 0..s - 1 {
            x = mulmod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Iterator over word-size primes descending from just below 2^62.
pub(crate) struct PrimeStream {
    next: u64,
}

impl PrimeStream {
    pub fn new() -> Self {
        PrimeStream { next: (1u64 << 62) - 1 }
    }
}

impl Iterator for PrimeStream {
    type Item = u64;
    fn next(&mut self) -> Option<u64> {
        loop {
            let c = self.next;
            self.next -= 2;
            if is_prime_u64(c) {
                return Some(c);
            }
        }
    }
}

fn modinv(a: u64, p: u64) -> u64 {
    powmod(a, p - 2, p)
}

pub(crate) fn bigint_mod_u64(x: &BigInt, p: u64) -> u64 {
    let m = x.mod_floor(&BigInt::from(p));
    m.to_u64().expect("mod_floor result fits in u64")
}

fn reduce_poly(a: &[BigInt], p: u64) -> Vec<u64> {
    let mut out: Vec<u64> = a.iter().map(|c| bigint_mod_u64(c, p)).collect();
    while out.last().map_or(false, |&c| c == 0) {
        out.pop();
    }
    out
}

fn trim(v: &mut Vec<u64>) {
    while v.last().map_or(false, |&c| c == 0) {
        v.pop();
    }
}

fn make_monic(a: &mut [u64], p: u64) {
    let lc = *a.last().unwrap();
    if lc != 1 {
        let inv = modinv(lc, p);
        for c in a.iter_mut() {
            *c = mulmod(*c, inv, p);
        }
    }
}

fn rem_mod(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut r = a.to_vec();
    let db = b.len() - 1;
    let lc_inv = modinv(*b.last().unwrap(), p);
    while r.len() > db {
        let c = mulmod(*r.last().unwrap(), lc_inv, p);
        let shift = r.len() - 1 - db;
        if c != 0 {
            for (j, &bc) in b.iter().enumerate() {
                let idx = shift + j;
                let sub = mulmod(c, bc, p);
                r[idx] = (r[idx] + p - sub) % p;
            }
        }
        r.pop();
        trim(&mut r);
        if r.is_empty() {
            break;
        }
    }
    r
}

/// Monic gcd of the two reductions mod p; `None` if either leading
/// coefficient vanishes mod p (unusable prime).
fn gcd_mod(a: &[BigInt], b: &[BigInt], p: u64) -> Option<Vec<u64>> {
    if bigint_mod_u64(a.last().unwrap(), p) == 0 || bigint_mod_u64(b.last().unwrap(), p) == 0 {
        return None;
    }
    let mut x = reduce_poly(a, p);
    let mut y = reduce_poly(b, p);
    while !y.is_empty() {
        let r = rem_mod(&x, &y, p);
        x = y;
        y = r;
    }
    make_monic(&mut x, p);
    Some(x)
}

/// Cheap one-prime certificate that two integer polynomials are coprime
/// over ℚ. A `true` answer is rigorous; `false` just means "couldn't tell".
pub fn poly_gcd_is_trivial_hint(a: &[BigInt], b: &[BigInt]) -> bool {
    if a.is_empty() || b.is_empty() {
        return false;
    }
    for p in PrimeStream::new().take(4) {
        if let Some(g) = gcd_mod(a, b, p) {
            return g.len() == 1;
        }
    }
    false
}

fn symmetric_lift(x: &BigInt, modulus: &BigInt) -> BigInt {
    let m = x.mod_floor(modulus);
    if &m * 2 > *modulus {
        m - modulus
    } else {
        m
    }
}

fn primitive_int(mut v: Vec<BigInt>) -> Vec<BigInt> {
    let mut g = BigInt::zero();
    for c in &v {
        g = g.gcd(c);
    }
    if g.is_zero() {
        return v;
    }
    if v.last().unwrap().is_negative() {
        g = -g;
    }
    for c in v.iter_mut() {
        *c = &*c / &g;
    }
    v
}

fn divides_int(candidate: &[BigInt], target: &[BigInt]) -> bool {
    crate::poly::exact_div_int(target, candidate).is_some()
}

/// Gcd of two nonzero primitive integer polynomials via modular images and
/// CRT, verified by trial division. Returns `None` only if an internal prime
/// budget is exhausted (caller falls back to rational Euclid).
pub(crate) fn int_poly_gcd(a: &[BigInt], b: &[BigInt]) -> Option<Vec<BigInt>> {
    let lc_g = a.last().unwrap().gcd(b.last().unwrap());
    let mut best_deg = usize::MAX;
    let mut acc: Vec<BigInt> = Vec::new();
    let mut modulus = BigInt::one();
    let mut prev_candidate: Option<Vec<BigInt>> = None;
    for p in PrimeStream::new().take(512) {
        let gp = match gcd_mod(a, b, p) {
            Some(g) => g,
            None => continue,
        };
        let deg = gp.len() - 1;
        if deg == 0 {
            return Some(vec![BigInt::one()]);
        }
        if deg > best_deg {
            continue; // unlucky prime
        }
        if deg < best_deg {
            best_deg = deg;
            acc.clear();
            modulus = BigInt::one();
            prev_candidate = None;
        }
        // image scaled so the leading coefficient is lc_g mod p
        let scale = bigint_mod_u64(&lc_g, p);
        let image: Vec<u64> = gp.iter().map(|&c| mulmod(c, scale, p)).collect();
        if modulus.is_one() {
            acc = image.iter().map(|&c| BigInt::from(c)).collect();
            modulus = BigInt::from(p);
        } else {
            let m_mod_p = bigint_mod_u64(&modulus, p);
            let m_inv = modinv(m_mod_p, p);
            for (c, &r) in acc.iter_mut().zip(image.iter()) {
                let c_mod_p = bigint_mod_u64(c, p);
                let delta = mulmod((r + p - c_mod_p) % p, m_inv, p);
                *c += &modulus * BigInt::from(delta);
            }
            modulus *= BigInt::from(p);
        }
        let lifted: Vec<BigInt> = acc.iter().map(|c| symmetric_lift(c, &modulus)).collect();
        let candidate = primitive_int(lifted);
        // trial division is expensive at large degrees, so only verify once
        // the reconstructed coefficients have stopped changing
        let stable = prev_candidate.as_deref() == Some(candidate.as_slice());
        if stable
            && candidate.len() == best_deg + 1
            && divides_int(&candidate, a)
            && divides_int(&candidate, b)
        {
            return Some(candidate);
        }
        prev_candidate = Some(candidate);
    }
    None
}
