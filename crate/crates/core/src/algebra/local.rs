//! Places of Q and local tests: squares, Hilbert symbols, isotropy of
//! quadratic forms, and existence of roots of polynomials in Q_v.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::arith::{
    is_prime, legendre, mod_inverse, prime_divisors, rat_valuation, split_valuation, valuation, Rat,
};
use super::form::HomForm;
use super::poly::UniPoly;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Place {
    Real,
    Padic(u64),
}

impl Place {
    pub fn padic(p: u64) -> Result<Place> {
        if is_prime(p) {
            Ok(Place::Padic(p))
        } else {
            Err(Error::Invalid(format!("{p} is not prime")))
        }
    }
}

impl fmt::Display for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Place::Real => write!(f, "real"),
            Place::Padic(p) => write!(f, "p={p}"),
        }
    }
}

impl FromStr for Place {
    type Err = Error;

    fn from_str(s: &str) -> Result<Place> {
        let t = s.trim();
        if t.eq_ignore_ascii_case("real") {
            return Ok(Place::Real);
        }
        if let Some(rest) = t.strip_prefix("p=") {
            let p: u64 = rest
                .trim()
                .parse()
                .map_err(|_| Error::parse(1, 3, format!("bad prime in place '{t}'")))?;
            return Place::padic(p);
        }
        Err(Error::parse(
            1,
            1,
            format!("unknown place '{t}' (use 'real' or 'p=<prime>')"),
        ))
    }
}

impl Serialize for Place {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Place {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LocalSquareVerdict {
    pub place: Place,
    #[serde(with = "crate::algebra::arith::rat_text")]
    pub value: Rat,
    pub is_square: bool,
}

/// Decides whether a nonzero rational is a square in Q_v.
pub fn is_square_local(value: &Rat, place: Place) -> Result<LocalSquareVerdict> {
    if value.is_zero() {
        return Err(Error::ZeroInput);
    }
    let is_square = match place {
        Place::Real => value.is_positive(),
        Place::Padic(p) => {
            let v = rat_valuation(value, p).expect("nonzero");
            if v.rem_euclid(2) == 1 {
                false
            } else {
                let (_, un) = split_valuation(value.numer(), p);
                let (_, ud) = split_valuation(value.denom(), p);
                // u = un/ud has the square class of un*ud
                let u = un * ud;
                if p == 2 {
                    u.mod_floor(&BigInt::from(8)) == BigInt::one()
                } else {
                    legendre(&u, p) == 1
                }
            }
        }
    };
    Ok(LocalSquareVerdict {
        place,
        value: value.clone(),
        is_square,
    })
}

/// Integer with the same square class as a nonzero rational.
fn square_class_int(r: &Rat) -> BigInt {
    r.numer() * r.denom()
}

/// Hilbert symbol (a, b)_v for nonzero rationals; returns 1 or -1.
pub fn hilbert_symbol(a: &Rat, b: &Rat, place: Place) -> i32 {
    let a = square_class_int(a);
    let b = square_class_int(b);
    match place {
        Place::Real => {
            if a.is_negative() && b.is_negative() {
                -1
            } else {
                1
            }
        }
        Place::Padic(p) => {
            let (alpha, u) = split_valuation(&a, p);
            let (beta, v) = split_valuation(&b, p);
            if p == 2 {
                let eps = |x: &BigInt| -> u32 {
                    // (x - 1)/2 mod 2 for odd x
                    let r = x.mod_floor(&BigInt::from(4)).to_u32().unwrap();
                    if r == 1 {
                        0
                    } else {
                        1
                    }
                };
                let omega = |x: &BigInt| -> u32 {
                    // (x^2 - 1)/8 mod 2
                    let r = x.mod_floor(&BigInt::from(8)).to_u32().unwrap();
                    if r == 1 || r == 7 {
                        0
                    } else {
                        1
                    }
                };
                let e = eps(&u) * eps(&v) + alpha * omega(&v) + beta * omega(&u);
                if e % 2 == 0 {
                    1
                } else {
                    -1
                }
            } else {
                let eps_p = ((p - 1) / 2) % 2 == 1;
                let mut s = if eps_p && (alpha * beta) % 2 == 1 {
                    -1
                } else {
                    1
                };
                if beta % 2 == 1 {
                    s *= legendre(&u, p);
                }
                if alpha % 2 == 1 {
                    s *= legendre(&v, p);
                }
                s
            }
        }
    }
}

/// Diagonal entries of a congruence-diagonalization of a quadratic form.
/// Zeros mark the radical.
#[allow(clippy::needless_range_loop)]
pub fn diagonalize_quadratic(q: &HomForm) -> Vec<Rat> {
    assert_eq!(q.degree(), 2, "quadratic form expected");
    let n = q.n_vars();
    let two = Rat::from_integer(2.into());
    let mut g = vec![vec![Rat::zero(); n]; n];
    for (e, c) in q.terms() {
        let idx: Vec<usize> = e
            .iter()
            .enumerate()
            .flat_map(|(i, &k)| std::iter::repeat_n(i, k as usize))
            .collect();
        let (i, j) = (idx[0], idx[1]);
        if i == j {
            g[i][i] = c.clone();
        } else {
            g[i][j] = c / &two;
            g[j][i] = c / &two;
        }
    }
    let mut diag = Vec::with_capacity(n);
    for k in 0..n {
        if g[k][k].is_zero() {
            if let Some(j) = (k + 1..n).find(|&j| !g[j][j].is_zero()) {
                g.swap(k, j);
                for row in g.iter_mut() {
                    row.swap(k, j);
                }
            } else if let Some(j) = (k + 1..n).find(|&j| !g[k][j].is_zero()) {
                // e_k := e_k + e_j
                for c in 0..n {
                    let v = g[j][c].clone();
                    g[k][c] += v;
                }
                for r in 0..n {
                    let v = g[r][j].clone();
                    g[r][k] += v;
                }
            }
        }
        let pivot = g[k][k].clone();
        if pivot.is_zero() {
            diag.push(Rat::zero());
            continue;
        }
        for i in k + 1..n {
            if g[i][k].is_zero() {
                continue;
            }
            let f = &g[i][k] / &pivot;
            for c in 0..n {
                let v = &f * &g[k][c];
                g[i][c] -= v;
            }
            for r in 0..n {
                let v = &f * &g[r][k];
                g[r][i] -= v;
            }
        }
        diag.push(pivot);
    }
    diag
}

/// Isotropy of a nondegenerate diagonal form over Q_v.
pub fn diagonal_isotropic(diag: &[Rat], place: Place) -> bool {
    let r = diag.len();
    if r == 0 {
        return false;
    }
    if let Place::Real = place {
        return diag.iter().any(Signed::is_positive) && diag.iter().any(Signed::is_negative);
    }
    let d: Rat = diag.iter().product();
    let mut eps = 1;
    for i in 0..r {
        for j in i + 1..r {
            eps *= hilbert_symbol(&diag[i], &diag[j], place);
        }
    }
    let minus_one = -Rat::one();
    match r {
        1 => false,
        2 => is_square_local(&-d, place).expect("nonzero").is_square,
        3 => hilbert_symbol(&minus_one, &-d, place) == eps,
        4 => {
            !is_square_local(&d, place).expect("nonzero").is_square
                || eps == hilbert_symbol(&minus_one, &minus_one, place)
        }
        _ => true,
    }
}

/// True if the quadric `q = 0` has a point over Q_v (zero form included).
pub fn quadric_has_local_point(q: &HomForm, place: Place) -> bool {
    let diag = diagonalize_quadratic(q);
    if diag.iter().any(Zero::is_zero) {
        return true;
    }
    diagonal_isotropic(&diag, place)
}

/// Hasse-Minkowski: the quadric has a rational point iff it has one over R
/// and over Q_p for every p dividing 2 * (product of diagonal entries).
pub fn quadric_has_rational_point(q: &HomForm) -> Result<bool> {
    let diag = diagonalize_quadratic(q);
    if diag.iter().any(Zero::is_zero) {
        return Ok(true);
    }
    if !diagonal_isotropic(&diag, Place::Real) {
        return Ok(false);
    }
    let mut primes = vec![2u64];
    for a in &diag {
        let m = square_class_int(a);
        primes.extend(
            prime_divisors(&m)
                .ok_or_else(|| Error::Unsupported("coefficient too large to factor".into()))?,
        );
    }
    primes.sort_unstable();
    primes.dedup();
    Ok(primes
        .into_iter()
        .all(|p| diagonal_isotropic(&diag, Place::Padic(p))))
}

/// Places at which the quadric fails to have points (real listed first).
pub fn quadric_obstructions(q: &HomForm) -> Result<Vec<Place>> {
    let diag = diagonalize_quadratic(q);
    if diag.iter().any(Zero::is_zero) {
        return Ok(vec![]);
    }
    let mut out = Vec::new();
    if !diagonal_isotropic(&diag, Place::Real) {
        out.push(Place::Real);
    }
    let mut primes = vec![2u64];
    for a in &diag {
        primes.extend(
            prime_divisors(&square_class_int(a))
                .ok_or_else(|| Error::Unsupported("coefficient too large to factor".into()))?,
        );
    }
    primes.sort_unstable();
    primes.dedup();
    out.extend(
        primes
            .into_iter()
            .filter(|&p| !diagonal_isotropic(&diag, Place::Padic(p)))
            .map(Place::Padic),
    );
    Ok(out)
}

fn eval_int_poly(c: &[BigInt], x: &BigInt) -> BigInt {
    let mut acc = BigInt::zero();
    for a in c.iter().rev() {
        acc = acc * x + a;
    }
    acc
}

fn vp(n: &BigInt, p: u64) -> u32 {
    valuation(n, p).unwrap_or(u32::MAX)
}

/// Root in Z_p of a square-free integer polynomial (optionally restricted
/// to p Z_p). Digit-by-digit search with a Hensel stopping test: once
/// `v(h(a)) > 2 v(h'(a))` a root exists near `a`, and `a` is returned.
fn zp_root_seed(c: &[BigInt], p: u64, only_multiples_of_p: bool, kmax: u32) -> Option<BigInt> {
    let dc = int_derivative(c);
    let pb = BigInt::from(p);
    let mut cands = vec![BigInt::zero()];
    let mut pk = BigInt::one();
    for k in 1..=kmax {
        let next_pk = &pk * &pb;
        let mut next = Vec::new();
        for a in &cands {
            let digits: Box<dyn Iterator<Item = u64>> = if k == 1 && only_multiples_of_p {
                Box::new(std::iter::once(0))
            } else {
                Box::new(0..p)
            };
            for d in digits {
                let x = a + &pk * BigInt::from(d);
                let hx = eval_int_poly(c, &x);
                if hx.is_zero() {
                    return Some(x);
                }
                if !(&hx % &next_pk).is_zero() {
                    continue;
                }
                let dx = eval_int_poly(&dc, &x);
                if !dx.is_zero() && vp(&hx, p) > 2 * vp(&dx, p) {
                    return Some(x);
                }
                next.push(x);
            }
        }
        if next.is_empty() {
            return None;
        }
        cands = next;
        pk = next_pk;
    }
    None
}

fn int_derivative(c: &[BigInt]) -> Vec<BigInt> {
    c.iter()
        .enumerate()
        .skip(1)
        .map(|(i, a)| a * BigInt::from(i))
        .collect()
}

/// An integer approximation of a p-adic root. When `inverted` is false,
/// `approx` is congruent to a root `x` in Z_p modulo `p^precision`; when
/// true it approximates a root `y` in p Z_p of the reversed polynomial,
/// i.e. the root `1/y` of the original.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PadicRoot {
    pub approx: BigInt,
    pub precision: u32,
    pub inverted: bool,
}

/// Approximates some root in P^1(Q_p) of a nonzero polynomial to the given
/// p-adic precision, or `None` if there is no such root.
pub fn padic_root(poly: &UniPoly, p: u64, precision: u32) -> Option<PadicRoot> {
    if poly.degree().unwrap_or(0) == 0 {
        return None;
    }
    let sf = poly.div_rem(&poly.gcd(&poly.derivative())).0;
    let c = sf.integer_coeffs();
    let kmax = {
        let disc = sf.primitive().discriminant();
        2 * rat_valuation(&disc, p).unwrap_or(0).max(0) as u32 + 2
    };
    let mut rc = c.clone();
    rc.reverse();
    let (coeffs, seed, inverted) = if let Some(x) = zp_root_seed(&c, p, false, kmax) {
        (c, x, false)
    } else {
        let y = zp_root_seed(&rc, p, true, kmax)?;
        (rc, y, true)
    };
    let dc = int_derivative(&coeffs);
    let pb = BigInt::from(p);
    let mut x = seed;
    loop {
        let hx = eval_int_poly(&coeffs, &x);
        if hx.is_zero() {
            break;
        }
        let dx = eval_int_poly(&dc, &x);
        let e = vp(&dx, p);
        let vh = vp(&hx, p);
        if vh >= precision + e {
            break;
        }
        // Newton step modulo a comfortable power of p
        let modulus = pb.pow(2 * precision + 2 * e + 2);
        let pe = pb.pow(e);
        let unit = (&dx / &pe).mod_floor(&modulus);
        let inv = mod_inverse(&unit, &modulus).expect("unit modulo p^k");
        let step = (&hx / &pe) * inv;
        x = (x - step).mod_floor(&modulus);
    }
    let pk = pb.pow(precision);
    Some(PadicRoot {
        approx: x.mod_floor(&pk),
        precision,
        inverted,
    })
}

/// Does a nonzero polynomial have a root in Q_v?
pub fn has_root_local(poly: &UniPoly, place: Place) -> bool {
    if poly.degree().unwrap_or(0) == 0 {
        return false;
    }
    let sf = poly.div_rem(&poly.gcd(&poly.derivative())).0;
    if sf.degree() == Some(1) {
        return true;
    }
    match place {
        Place::Real => sf.count_real_roots() > 0,
        Place::Padic(p) => {
            let disc = sf.primitive().discriminant();
            let vd = rat_valuation(&disc, p).unwrap_or(0).max(0) as u32;
            let kmax = 2 * vd + 2;
            let c = sf.integer_coeffs();
            if zp_root_seed(&c, p, false, kmax).is_some() {
                return true;
            }
            let mut rc = c.clone();
            rc.reverse();
            zp_root_seed(&rc, p, true, kmax).is_some()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::arith::{rat, ratio};

    #[test]
    fn padic_root_lifts_of_sqrt2_mod_7() {
        let f = UniPoly::from_ints(&[-2, 0, 1]);
        let lifts: Vec<BigInt> = (1..=3)
            .map(|k| padic_root(&f, 7, k).unwrap().approx)
            .collect();
        assert_eq!(
            lifts,
            vec![BigInt::from(3), BigInt::from(10), BigInt::from(108)]
        );
        assert!(padic_root(&f, 5, 4).is_none());
        let r = padic_root(&f, 7, 30).unwrap();
        let m = BigInt::from(7).pow(30);
        assert!(((&r.approx * &r.approx - BigInt::from(2)) % m).is_zero());
    }

    #[test]
    fn padic_root_at_infinity_and_ramified() {
        // 7 x^2 - 1 has roots of valuation -1/2: none; 49 x^2 - 2 has 1/(7 sqrt 2)
        assert!(padic_root(&UniPoly::from_ints(&[-1, 0, 7]), 7, 5).is_none());
        let r = padic_root(&UniPoly::from_ints(&[-2, 0, 49]), 7, 6).unwrap();
        assert!(r.inverted);
        // reversed: -2 y^2 + 49 = 0 with y in 7 Z_7
        let y = &r.approx;
        let v = -BigInt::from(2) * y * y + 49;
        assert!(valuation(&v, 7).is_none_or(|k| k >= 6));
        // x^2 - 8 over Q_2: sqrt 8 not in Q_2; x^2 - 17 is
        assert!(padic_root(&UniPoly::from_ints(&[-8, 0, 1]), 2, 5).is_none());
        let r = padic_root(&UniPoly::from_ints(&[-17, 0, 1]), 2, 20).unwrap();
        let m = BigInt::from(2).pow(20);
        assert!(((&r.approx * &r.approx - BigInt::from(17)) % m).is_zero());
    }

    #[test]
    fn place_text_format() {
        assert_eq!("real".parse::<Place>().unwrap(), Place::Real);
        assert_eq!("p=5".parse::<Place>().unwrap(), Place::Padic(5));
        assert!("p=6".parse::<Place>().is_err());
        assert!("complex".parse::<Place>().is_err());
        assert_eq!(Place::Padic(7).to_string(), "p=7");
    }

    #[test]
    fn local_squares() {
        assert!(!is_square_local(&rat(-1), Place::Real).unwrap().is_square);
        // 3^2 = 9 = 2 mod 7
        assert!(is_square_local(&rat(2), Place::Padic(7)).unwrap().is_square);
        assert!(!is_square_local(&rat(5), Place::Padic(5)).unwrap().is_square);
        assert!(!is_square_local(&rat(2), Place::Padic(5)).unwrap().is_square);
        assert!(
            is_square_local(&rat(-1), Place::Padic(5))
                .unwrap()
                .is_square
        );
        assert!(
            is_square_local(&rat(17), Place::Padic(2))
                .unwrap()
                .is_square
        );
        assert!(!is_square_local(&rat(5), Place::Padic(2)).unwrap().is_square);
        assert!(
            is_square_local(&ratio(4, 25), Place::Padic(5))
                .unwrap()
                .is_square
        );
        assert_eq!(is_square_local(&rat(0), Place::Real), Err(Error::ZeroInput));
    }

    #[test]
    fn hilbert_symbol_values() {
        // (-1,-1) is -1 exactly at 2 and infinity
        let m1 = rat(-1);
        assert_eq!(hilbert_symbol(&m1, &m1, Place::Real), -1);
        assert_eq!(hilbert_symbol(&m1, &m1, Place::Padic(2)), -1);
        assert_eq!(hilbert_symbol(&m1, &m1, Place::Padic(3)), 1);
        // (2, 3)_3 = (2/3) = -1 ; (3, 3)_3 = (-1/3) = -1
        assert_eq!(hilbert_symbol(&rat(2), &rat(3), Place::Padic(3)), -1);
        assert_eq!(hilbert_symbol(&rat(3), &rat(3), Place::Padic(3)), -1);
        assert_eq!(hilbert_symbol(&rat(5), &rat(7), Place::Padic(11)), 1);
    }

    #[test]
    fn product_formula_holds() {
        let vals = [-3i64, -1, 2, 3, 5, 6, 7, 10, -14];
        for &a in &vals {
            for &b in &vals {
                let (ra, rb) = (rat(a), rat(b));
                let mut prod = hilbert_symbol(&ra, &rb, Place::Real);
                for p in [2u64, 3, 5, 7] {
                    prod *= hilbert_symbol(&ra, &rb, Place::Padic(p));
                }
                assert_eq!(prod, 1, "product formula for ({a},{b})");
            }
        }
    }

    #[test]
    fn quadric_points() {
        let f = |s: &str| HomForm::parse(s).unwrap();
        // x^2 + y^2 - 3 z^2 : real points, no rational points (obstruction at 3)
        let q = f("x0^2 + x1^2 - 3*x2^2");
        assert!(quadric_has_local_point(&q, Place::Real));
        assert!(!quadric_has_local_point(&q, Place::Padic(3)));
        assert!(!quadric_has_rational_point(&q).unwrap());
        assert_eq!(
            quadric_obstructions(&q).unwrap(),
            vec![Place::Padic(2), Place::Padic(3)]
        );
        // definite
        let d = f("x0^2 + x1^2 + x2^2");
        assert!(!quadric_has_local_point(&d, Place::Real));
        assert!(quadric_has_local_point(&d, Place::Padic(3)));
        // x^2 + y^2 - 2 z^2 has [1:1:1]
        assert!(quadric_has_rational_point(&f("x0^2 + x1^2 - 2*x2^2")).unwrap());
        // degenerate forms always have points
        assert!(quadric_has_local_point(&f("x0*x1 + 0*x2^2"), Place::Real));
        assert!(quadric_has_local_point(
            &f("x0^2 + x1^2 + 0*x2^2"),
            Place::Real
        ));
        // cross terms only
        assert!(quadric_has_rational_point(&f("x0*x1 + x1*x2 + x0*x2")).unwrap());
    }

    #[test]
    fn diagonalization_preserves_discriminant_class() {
        let q = HomForm::parse("x0*x1 + x2^2").unwrap();
        let d = diagonalize_quadratic(&q);
        assert_eq!(d.len(), 3);
        let det: Rat = d.iter().product();
        // Gram determinant of x0 x1 + x2^2 is -1/4
        assert!(
            is_square_local(&(det / ratio(-1, 4)), Place::Real)
                .unwrap()
                .is_square
        );
    }

    #[test]
    fn local_roots() {
        let cube2 = UniPoly::from_ints(&[-2, 0, 0, 1]);
        assert!(has_root_local(&cube2, Place::Real));
        // 2 is a cube mod 5 (3^3 = 27 = 2)
        assert!(has_root_local(&cube2, Place::Padic(5)));
        // cubes mod 7 are 0, 1, 6
        assert!(!has_root_local(&cube2, Place::Padic(7)));
        let sumsq = UniPoly::from_ints(&[1, 0, 1]);
        assert!(!has_root_local(&sumsq, Place::Real));
        assert!(has_root_local(&sumsq, Place::Padic(5)));
        assert!(!has_root_local(&sumsq, Place::Padic(7)));
        // x^2 - 1/7: root 1/sqrt(7) not in Q_7 (odd valuation)
        let p = UniPoly::from_ints(&[-1, 0, 7]);
        assert!(!has_root_local(&p, Place::Padic(7)));
        // 7 x^2 - 2 * 49: x^2 = 14 -> odd valuation at 7
        // x^3 - 7: root has valuation 1/3, not in Q_7
        assert!(!has_root_local(
            &UniPoly::from_ints(&[-7, 0, 0, 1]),
            Place::Padic(7)
        ));
        // x^3 - 1/8 over Q_2: root 1/2
        assert!(has_root_local(
            &UniPoly::new(vec![ratio(-1, 8), rat(0), rat(0), rat(1)]),
            Place::Padic(2)
        ));
    }
}
