//! Integer and rational helpers: valuations, primality, square tests,
//! logarithms of big integers.

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub type Rat = BigRational;

pub fn rat(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

pub fn big(n: i64) -> BigInt {
    BigInt::from(n)
}

/// p-adic valuation of a nonzero integer. Returns `None` for zero.
pub fn valuation(n: &BigInt, p: u64) -> Option<u32> {
    if n.is_zero() {
        return None;
    }
    let p = BigInt::from(p);
    let mut n = n.clone();
    let mut k = 0;
    loop {
        let (q, r) = n.div_rem(&p);
        if !r.is_zero() {
            return Some(k);
        }
        n = q;
        k += 1;
    }
}

/// Splits `n = p^k * u` with `p ∤ u`.
pub fn split_valuation(n: &BigInt, p: u64) -> (u32, BigInt) {
    let pb = BigInt::from(p);
    let mut n = n.clone();
    let mut k = 0;
    while !n.is_zero() {
        let (q, r) = n.div_rem(&pb);
        if !r.is_zero() {
            break;
        }
        n = q;
        k += 1;
    }
    (k, n)
}

/// p-adic valuation of a nonzero rational.
pub fn rat_valuation(r: &Rat, p: u64) -> Option<i64> {
    let vn = valuation(r.numer(), p)? as i64;
    let vd = valuation(r.denom(), p)? as i64;
    Some(vn - vd)
}

pub fn mod_pow(base: u64, mut exp: u64, m: u64) -> u64 {
    let m128 = m as u128;
    let mut acc: u128 = 1 % m128;
    let mut b = (base % m) as u128;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * b % m128;
        }
        b = b * b % m128;
        exp >>= 1;
    }
    acc as u64
}

/// Deterministic Miller-Rabin for 64-bit inputs.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = mod_pow(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = ((x as u128 * x as u128) % n as u128) as u64;
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn pollard_rho(n: u64) -> u64 {
    if n.is_multiple_of(2) {
        return 2;
    }
    let mulmod = |a: u64, b: u64| ((a as u128 * b as u128) % n as u128) as u64;
    let mut c = 1u64;
    loop {
        let f = |x: u64| (mulmod(x, x) + c) % n;
        let (mut x, mut y, mut d) = (2u64, 2u64, 1u64);
        while d == 1 {
            x = f(x);
            y = f(f(y));
            d = x.abs_diff(y).gcd(&n);
        }
        if d != n {
            return d;
        }
        c += 1;
    }
}

fn factor_u64_into(n: u64, out: &mut Vec<u64>) {
    if n == 1 {
        return;
    }
    if is_prime(n) {
        out.push(n);
        return;
    }
    let d = pollard_rho(n);
    factor_u64_into(d, out);
    factor_u64_into(n / d, out);
}

/// Distinct prime divisors of a nonzero integer. Inputs that do not fit in
/// 64 bits after removing primes below 10^6 are rejected.
pub fn prime_divisors(n: &BigInt) -> Option<Vec<u64>> {
    let mut m = n.abs();
    if m.is_zero() {
        return None;
    }
    let mut primes = Vec::new();
    let mut p = 2u64;
    while p < 1_000_000 {
        let pb = BigInt::from(p);
        if (&pb * &pb) > m {
            break;
        }
        if (&m % &pb).is_zero() {
            primes.push(p);
            while (&m % &pb).is_zero() {
                m /= &pb;
            }
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if m.is_one() {
        return Some(primes);
    }
    let rest = m.to_u64()?;
    let mut fs = Vec::new();
    factor_u64_into(rest, &mut fs);
    primes.extend(fs);
    primes.sort_unstable();
    primes.dedup();
    Some(primes)
}

/// Exact integer square root when `n` is a perfect square.
pub fn exact_sqrt(n: &BigInt) -> Option<BigInt> {
    if n.is_negative() {
        return None;
    }
    let r = n.sqrt();
    if &r * &r == *n {
        Some(r)
    } else {
        None
    }
}

pub fn is_rational_square(r: &Rat) -> bool {
    exact_sqrt(r.numer()).is_some() && exact_sqrt(r.denom()).is_some()
}

/// Squarefree kernel: the unique squarefree integer `d` with `n = d * m^2`.
/// Returns `(d, m)`. Needs the prime factors of `n`.
pub fn squarefree_part(n: &BigInt) -> Option<(BigInt, BigInt)> {
    if n.is_zero() {
        return None;
    }
    let mut d = if n.is_negative() {
        -BigInt::one()
    } else {
        BigInt::one()
    };
    let mut m = BigInt::one();
    for p in prime_divisors(n)? {
        let (k, _) = split_valuation(n, p);
        let pb = BigInt::from(p);
        if k % 2 == 1 {
            d *= &pb;
        }
        m *= pb.pow(k / 2);
    }
    Some((d, m))
}

/// Natural logarithm of a positive big integer, accurate to f64 precision.
pub fn ln_biguint(n: &BigUint) -> f64 {
    let bits = n.bits();
    if bits <= 1000 {
        if let Some(f) = n.to_f64() {
            return f.ln();
        }
    }
    let shift = bits - 64;
    let top = (n >> shift).to_f64().unwrap_or(f64::MAX);
    top.ln() + shift as f64 * std::f64::consts::LN_2
}

pub fn ln_bigint(n: &BigInt) -> f64 {
    ln_biguint(n.magnitude())
}

/// ln |r| for a nonzero rational.
pub fn ln_abs_rat(r: &Rat) -> f64 {
    ln_bigint(r.numer()) - ln_bigint(r.denom())
}

pub fn rat_to_f64(r: &Rat) -> f64 {
    let sign = if r.numer().sign() == Sign::Minus {
        -1.0
    } else {
        1.0
    };
    if r.is_zero() {
        return 0.0;
    }
    sign * ln_abs_rat(r).exp()
}

/// Gcd of a slice of integers (non-negative; zero for an all-zero slice).
pub fn gcd_all<'a>(xs: impl IntoIterator<Item = &'a BigInt>) -> BigInt {
    xs.into_iter().fold(BigInt::zero(), |g, x| g.gcd(x))
}

/// Lcm of the denominators of a list of rationals.
pub fn denom_lcm<'a>(xs: impl IntoIterator<Item = &'a Rat>) -> BigInt {
    xs.into_iter().fold(BigInt::one(), |l, x| l.lcm(x.denom()))
}

/// Clears denominators and divides by the content so the result is a
/// primitive integer vector with first nonzero entry positive.
pub fn primitive_integer_vector(v: &[Rat]) -> Vec<BigInt> {
    let l = denom_lcm(v);
    let ints: Vec<BigInt> = v
        .iter()
        .map(|x| (x * Rat::from_integer(l.clone())).to_integer())
        .collect();
    let g = gcd_all(&ints);
    if g.is_zero() {
        return ints;
    }
    let sign = ints
        .iter()
        .find(|x| !x.is_zero())
        .map(|x| x.is_negative())
        .unwrap_or(false);
    ints.into_iter()
        .map(|x| {
            let q = x / &g;
            if sign {
                -q
            } else {
                q
            }
        })
        .collect()
}

/// Legendre symbol (a/p) for odd prime p: 1, -1, or 0.
pub fn legendre(a: &BigInt, p: u64) -> i32 {
    let r = a.mod_floor(&BigInt::from(p)).to_u64().unwrap_or(0);
    if r == 0 {
        return 0;
    }
    if mod_pow(r, (p - 1) / 2, p) == 1 {
        1
    } else {
        -1
    }
}

pub fn mod_inverse(a: &BigInt, m: &BigInt) -> Option<BigInt> {
    let e = a.mod_floor(m).extended_gcd(m);
    if !e.gcd.is_one() {
        return None;
    }
    Some(e.x.mod_floor(m))
}

/// Serde adapter writing a rational as its decimal text, e.g. `"-3/2"`.
pub mod rat_text {
    use super::Rat;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(r: &Rat, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&r.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rat, D::Error> {
        String::deserialize(d)?
            .parse()
            .map_err(serde::de::Error::custom)
    }
}
