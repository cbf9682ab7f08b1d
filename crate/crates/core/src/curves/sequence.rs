use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::algebra::arith::Rat;
use crate::algebra::local::padic_root;
use crate::algebra::poly::dehomogenize;
use crate::algebra::{Place, RootData, UniPoly};
use crate::error::{Error, Result};
use crate::heights::{dist, DistValue, ProjPoint};

use super::{BranchDatum, ParamCurve};

/// Rational points converging to `target` at `place`, with strictly
/// decreasing distance.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ApproxSequence {
    pub points: Vec<ProjPoint>,
    pub distances: Vec<DistValue>,
    pub target: ProjPoint,
    pub place: Place,
    pub provenance: String,
}

impl ApproxSequence {
    /// `log H(x) / -log dist(target, x)` for each point.
    pub fn deltas(&self) -> Vec<f64> {
        self.points
            .iter()
            .zip(&self.distances)
            .map(|(x, d)| crate::heights::delta_exponent(x, d))
            .collect()
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }
}

/// Generates up to `n` parameter approximants of the branch `b` and maps
/// them through `c`. Points that fail to get strictly closer are dropped.
pub fn sequence_on_curve(
    c: &ParamCurve,
    b: &BranchDatum,
    target: &ProjPoint,
    v: Place,
    n: usize,
) -> Result<ApproxSequence> {
    if !b.in_kv {
        return Err(Error::BranchNotInKv);
    }
    let (params, schedule) = parameter_schedule(b, v, n)?;
    let mut points = Vec::new();
    let mut distances: Vec<DistValue> = Vec::new();
    for (s, t) in params {
        let Ok(x) = c.eval(&s, &t) else { continue };
        if &x == target {
            continue;
        }
        let d = dist(&x, target, v)?;
        if distances.last().is_some_and(|last| &d >= last) {
            continue;
        }
        points.push(x);
        distances.push(d);
    }
    Ok(ApproxSequence {
        points,
        distances,
        target: target.clone(),
        place: v,
        provenance: format!("curve {c}; branch {}; {schedule}", b.factor),
    })
}

/// Integer parameters `[s:t]` tending to the branch point.
pub fn parameter_schedule(
    b: &BranchDatum,
    v: Place,
    n: usize,
) -> Result<(Vec<(BigInt, BigInt)>, String)> {
    match (&b.q, v) {
        (RootData::Rational { s, t }, Place::Real) => {
            let (rs, rt) = complement(s, t);
            let params = (1..=n)
                .map(|i| {
                    let big_n = BigInt::one() << i;
                    (&big_n * s + &rs, &big_n * t + &rt)
                })
                .collect();
            Ok((params, "parameters 2^i q + r".into()))
        }
        (RootData::Rational { s, t }, Place::Padic(p)) => {
            let (rs, rt) = complement(s, t);
            let pb = BigInt::from(p);
            let params = (1..=n as u32)
                .map(|i| {
                    let pi = pb.pow(i);
                    (s + &pi * &rs, t + &pi * &rt)
                })
                .collect();
            Ok((params, format!("parameters q + {p}^i r")))
        }
        (_, Place::Real) => {
            let poly = branch_poly(b)?;
            let conv = real_root_convergents(&poly, n)?;
            Ok((
                conv,
                "continued fraction convergents of the largest real root".into(),
            ))
        }
        (_, Place::Padic(p)) => {
            let poly = branch_poly(b)?;
            let root = padic_root(&poly, p, n as u32).ok_or(Error::BranchNotInKv)?;
            let pb = BigInt::from(p);
            let params = (1..=n as u32)
                .map(|k| {
                    let pk = pb.pow(k);
                    let xk = root.approx.mod_floor(&pk);
                    let (a, bb) = if root.inverted {
                        ((BigInt::one(), xk), (BigInt::zero(), pk))
                    } else {
                        ((xk, BigInt::one()), (pk, BigInt::zero()))
                    };
                    shortest_vector(a, bb)
                })
                .collect();
            Ok((params, format!("reduced lattices of {p}-adic root lifts")))
        }
    }
}

fn branch_poly(b: &BranchDatum) -> Result<UniPoly> {
    let f = b.factor_form()?;
    let (poly, tm) = dehomogenize(&f);
    if tm > 0 {
        return Err(Error::Invalid(
            "irrational branch with a root at infinity".into(),
        ));
    }
    Ok(poly)
}

/// A vector independent of `(s, t)`.
fn complement(_s: &BigInt, t: &BigInt) -> (BigInt, BigInt) {
    if t.is_zero() {
        (BigInt::zero(), BigInt::one())
    } else {
        (BigInt::one(), BigInt::zero())
    }
}

/// Gauss reduction of a rank-two lattice; returns a shortest nonzero vector.
pub fn shortest_vector(mut u: (BigInt, BigInt), mut w: (BigInt, BigInt)) -> (BigInt, BigInt) {
    let dot = |a: &(BigInt, BigInt), b: &(BigInt, BigInt)| &a.0 * &b.0 + &a.1 * &b.1;
    loop {
        if dot(&u, &u) > dot(&w, &w) {
            std::mem::swap(&mut u, &mut w);
        }
        let uu = dot(&u, &u);
        if uu.is_zero() {
            return w;
        }
        let uw = dot(&u, &w);
        // nearest integer to uw / uu
        let m = (BigInt::from(2) * &uw + &uu).div_floor(&(BigInt::from(2) * &uu));
        if m.is_zero() {
            return u;
        }
        w = (&w.0 - &m * &u.0, &w.1 - &m * &u.1);
    }
}

/// Continued fraction partial quotients of a rational number.
pub fn continued_fraction(x: &Rat) -> Vec<BigInt> {
    let mut out = Vec::new();
    let (mut a, mut b) = (x.numer().clone(), x.denom().clone());
    while !b.is_zero() {
        let (q, r) = a.div_mod_floor(&b);
        out.push(q);
        a = b;
        b = r;
    }
    out
}

/// Convergents `h_k / k_k` of a list of partial quotients.
pub fn convergents(quotients: &[BigInt]) -> Vec<(BigInt, BigInt)> {
    let (mut h0, mut h1) = (BigInt::zero(), BigInt::one());
    let (mut k0, mut k1) = (BigInt::one(), BigInt::zero());
    let mut out = Vec::with_capacity(quotients.len());
    for a in quotients {
        let h2 = a * &h1 + &h0;
        let k2 = a * &k1 + &k0;
        out.push((h2.clone(), k2.clone()));
        h0 = std::mem::replace(&mut h1, h2);
        k0 = std::mem::replace(&mut k1, k2);
    }
    out
}

/// The first `n` continued fraction convergents of the largest real root
/// of an irreducible polynomial of degree at least two.
pub fn real_root_convergents(poly: &UniPoly, n: usize) -> Result<Vec<(BigInt, BigInt)>> {
    let intervals = poly.real_root_intervals();
    let Some((a0, b0)) = intervals.last().cloned() else {
        return Err(Error::BranchNotInKv);
    };
    if a0 == b0 {
        return Err(Error::Invalid(
            "branch polynomial has a rational root".into(),
        ));
    }
    let mut bits = 64u32;
    loop {
        let width = Rat::new(BigInt::one(), BigInt::one() << bits);
        let (a, b) = poly.refine_root(&a0, &b0, &width);
        if a == b {
            return Err(Error::Invalid(
                "branch polynomial has a rational root".into(),
            ));
        }
        let ca = continued_fraction(&a);
        let cb = continued_fraction(&b);
        let common = ca.iter().zip(&cb).take_while(|(x, y)| x == y).count();
        // the last shared quotient may still be incomplete for the root
        let usable = common.saturating_sub(1);
        if usable >= n || bits >= 1 << 16 {
            let conv = convergents(&ca[..usable.min(n)]);
            return Ok(conv);
        }
        bits *= 2;
    }
}

/// Raw Hensel lifts `x mod p^i`, `i = 1..=n`, of a root in Z_p.
pub fn hensel_lifts(poly: &UniPoly, p: u64, n: u32) -> Option<Vec<BigInt>> {
    let root = padic_root(poly, p, n)?;
    if root.inverted {
        return None;
    }
    let pb = BigInt::from(p);
    Some((1..=n).map(|i| root.approx.mod_floor(&pb.pow(i))).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::arith::{big, ratio};
    use crate::curves::{branch_data, curve_alpha};
    use crate::heights::height;
    use num_traits::Signed;

    #[test]
    fn sqrt2_convergents() {
        let f = UniPoly::from_ints(&[-2, 0, 1]);
        let c = real_root_convergents(&f, 4).unwrap();
        let want: Vec<(BigInt, BigInt)> = [(1, 1), (3, 2), (7, 5), (17, 12)]
            .iter()
            .map(|&(a, b)| (big(a), big(b)))
            .collect();
        assert_eq!(c, want);
        assert_eq!(
            continued_fraction(&ratio(17, 12)),
            vec![big(1), big(2), big(2), big(2)]
        );
    }

    #[test]
    fn sqrt2_lifts_mod_7() {
        let f = UniPoly::from_ints(&[-2, 0, 1]);
        assert_eq!(
            hensel_lifts(&f, 7, 3).unwrap(),
            vec![big(3), big(10), big(108)]
        );
    }

    #[test]
    fn lattice_reduction_finds_short_vector() {
        let (s, t) = shortest_vector((big(108), big(1)), (big(343), big(0)));
        assert!(s.abs().max(t.abs()) <= big(19));
        assert!(((&s - &t * big(108)) % big(343)).is_zero());
    }

    fn check_sequence(curve: &str, target: &str, v: Place, n: usize) {
        let c: ParamCurve = curve.parse().unwrap();
        let p: ProjPoint = target.parse().unwrap();
        let alpha = curve_alpha(&c, &p, v).unwrap().to_f64();
        let b = branch_data(&c, &p, v).unwrap();
        let best = b
            .iter()
            .filter(|x| x.in_kv)
            .min_by_key(|x| x.contribution(c.degree_l()))
            .unwrap();
        let seq = sequence_on_curve(&c, best, &p, v, n).unwrap();
        assert!(seq.len() > 5);
        assert!(seq.distances.windows(2).all(|w| w[1] < w[0]));
        let last = *seq.deltas().last().unwrap();
        assert!(
            (last - alpha).abs() < 0.1,
            "{curve} at {v}: delta {last} vs alpha {alpha}"
        );
        assert!(height(seq.points.last().unwrap()) > big(1_000_000));
    }

    #[test]
    fn sequences_converge_to_curve_alpha() {
        check_sequence("s; -s; t; -t", "1:-1:1:-1", Place::Real, 60);
        check_sequence(
            "s^3 - 2*s*t^2; s^2*t - 2*t^3; s^3 + t^3",
            "0:0:1",
            Place::Real,
            60,
        );
        check_sequence(
            "s^3 - 2*s*t^2; s^2*t - 2*t^3; s^3 + t^3",
            "0:0:1",
            Place::Padic(7),
            40,
        );
        check_sequence("s^3; s^2*t; t^3", "0:0:1", Place::Real, 60);
    }
}
