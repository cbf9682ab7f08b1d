//! Projective points over Q, the Weil height of the hyperplane class and
//! the normalized v-adic projective distance.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::algebra::arith::{
    gcd_all, ln_abs_rat, ln_bigint, primitive_integer_vector, rat_to_f64, valuation, Rat,
};
use crate::algebra::Place;
use crate::error::{Error, Result};

/// A point of projective space with primitive integer coordinates whose
/// first nonzero entry is positive.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ProjPoint {
    coords: Vec<BigInt>,
}

impl ProjPoint {
    /// Canonicalizes any nonzero integer vector.
    pub fn new(coords: Vec<BigInt>) -> Result<Self> {
        let g = gcd_all(&coords);
        if g.is_zero() {
            return Err(Error::ZeroInput);
        }
        let neg = coords
            .iter()
            .find(|c| !c.is_zero())
            .is_some_and(Signed::is_negative);
        let coords = coords
            .into_iter()
            .map(|c| {
                let q = c / &g;
                if neg {
                    -q
                } else {
                    q
                }
            })
            .collect();
        Ok(ProjPoint { coords })
    }

    pub fn from_i64(coords: &[i64]) -> Result<Self> {
        Self::new(coords.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn from_rationals(coords: &[Rat]) -> Result<Self> {
        Self::new(primitive_integer_vector(coords))
    }

    /// Wraps coordinates already known to be canonical.
    pub(crate) fn from_canonical(coords: Vec<BigInt>) -> Self {
        debug_assert!(Self::new(coords.clone())
            .map(|p| p.coords == coords)
            .unwrap_or(false));
        ProjPoint { coords }
    }

    pub fn coords(&self) -> &[BigInt] {
        &self.coords
    }

    pub fn to_rationals(&self) -> Vec<Rat> {
        self.coords
            .iter()
            .map(|c| Rat::from_integer(c.clone()))
            .collect()
    }

    /// Number of coordinates (n + 1 for a point of P^n).
    pub fn len(&self) -> usize {
        self.coords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }
}

impl fmt::Display for ProjPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coords.iter().map(ToString::to_string).collect();
        write!(f, "{}", parts.join(":"))
    }
}

impl FromStr for ProjPoint {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut coords = Vec::new();
        let mut col = 1;
        for part in s.split(':') {
            let t = part.trim();
            let c: BigInt = t.parse().map_err(|_| {
                Error::parse(
                    1,
                    col + part.len() - part.trim_start().len(),
                    format!("bad coordinate '{t}'"),
                )
            })?;
            coords.push(c);
            col += part.len() + 1;
        }
        if coords.len() < 2 {
            return Err(Error::parse(
                1,
                1,
                "a projective point needs at least two coordinates",
            ));
        }
        ProjPoint::new(coords)
    }
}

impl Serialize for ProjPoint {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for ProjPoint {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        String::deserialize(d)?
            .parse()
            .map_err(serde::de::Error::custom)
    }
}

/// Multiplicative Weil height of the hyperplane class: max |x_i| for a
/// primitive integer representative.
pub fn height(x: &ProjPoint) -> BigInt {
    x.coords
        .iter()
        .map(|c| c.abs())
        .max()
        .unwrap_or_else(BigInt::zero)
}

/// Normalized projective distance, kept exact. At a p-adic place the value
/// is `p^-k` (or zero); at the real place it is the rational
/// `min(1, max |x_i y_j - x_j y_i| / (max|x_i| max|y_j|))`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DistValue(Rat);

impl DistValue {
    pub fn new(value: Rat) -> Result<Self> {
        if value.is_negative() || value > Rat::one() {
            return Err(Error::Invalid(format!("distance {value} outside [0, 1]")));
        }
        Ok(DistValue(value))
    }

    pub fn zero() -> Self {
        DistValue(Rat::zero())
    }

    /// `2^-j`, the default epsilon schedule.
    pub fn pow2_neg(j: u32) -> Self {
        DistValue(Rat::new(BigInt::one(), BigInt::one() << j))
    }

    pub fn value(&self) -> &Rat {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    /// `-ln(dist)`; infinite for zero.
    pub fn neg_ln(&self) -> f64 {
        if self.0.is_zero() {
            f64::INFINITY
        } else {
            -ln_abs_rat(&self.0)
        }
    }

    pub fn to_f64(&self) -> f64 {
        rat_to_f64(&self.0)
    }
}

impl fmt::Display for DistValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[derive(Serialize, Deserialize)]
struct DistRepr {
    exact: String,
    approx: f64,
}

impl Serialize for DistValue {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        DistRepr {
            exact: self.0.to_string(),
            approx: self.to_f64(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for DistValue {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let r = DistRepr::deserialize(d)?;
        let v: Rat = r.exact.parse().map_err(serde::de::Error::custom)?;
        DistValue::new(v).map_err(serde::de::Error::custom)
    }
}

/// The v-adic projective distance between two points of the same space.
pub fn dist(x: &ProjPoint, y: &ProjPoint, v: Place) -> Result<DistValue> {
    if x.len() != y.len() {
        return Err(Error::DimensionMismatch {
            expected: x.len(),
            got: y.len(),
        });
    }
    let n = x.len();
    match v {
        Place::Real => {
            let mut best = BigInt::zero();
            for i in 0..n {
                for j in i + 1..n {
                    let m = (&x.coords[i] * &y.coords[j] - &x.coords[j] * &y.coords[i]).abs();
                    if m > best {
                        best = m;
                    }
                }
            }
            // the raw ratio can reach 2; capping keeps it within a bounded
            // factor of the Fubini-Study distance
            let r = Rat::new(best, height(x) * height(y));
            Ok(DistValue(r.min(Rat::one())))
        }
        Place::Padic(p) => {
            // primitive vectors have sup-norm 1 at every prime
            let mut min_v: Option<u32> = None;
            for i in 0..n {
                for j in i + 1..n {
                    let m = &x.coords[i] * &y.coords[j] - &x.coords[j] * &y.coords[i];
                    if let Some(k) = valuation(&m, p) {
                        min_v = Some(min_v.map_or(k, |c| c.min(k)));
                    }
                }
            }
            Ok(match min_v {
                None => DistValue::zero(),
                Some(k) => DistValue(Rat::new(BigInt::one(), BigInt::from(p).pow(k))),
            })
        }
    }
}

/// Approximation exponent `log H(x) / (-log dist(target, x))`.
pub fn delta_exponent(x: &ProjPoint, d: &DistValue) -> f64 {
    let h = height(x);
    let nl = d.neg_ln();
    if nl == 0.0 {
        return f64::INFINITY;
    }
    ln_bigint(&h) / nl
}

impl PartialOrd<Rat> for DistValue {
    fn partial_cmp(&self, other: &Rat) -> Option<Ordering> {
        self.0.partial_cmp(other)
    }
}

impl PartialEq<Rat> for DistValue {
    fn eq(&self, other: &Rat) -> bool {
        &self.0 == other
    }
}

/// Reduces `a mod m` for display or filtering helpers.
pub fn mod_floor(a: &BigInt, m: &BigInt) -> BigInt {
    a.mod_floor(m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::arith::big;
    use proptest::prelude::*;

    fn pt(s: &str) -> ProjPoint {
        s.parse().unwrap()
    }

    #[test]
    fn heights_of_examples() {
        assert_eq!(height(&pt("1:0:0")), big(1));
        assert_eq!(height(&pt("3:4:5:-6")), big(6));
        let p = pt("2:4:6");
        assert_eq!(p.to_string(), "1:2:3");
        assert_eq!(height(&p), big(3));
        assert_eq!(pt("-2:4:0").to_string(), "1:-2:0");
        assert!("0:0".parse::<ProjPoint>().is_err());
        assert!("1:x".parse::<ProjPoint>().is_err());
    }

    #[test]
    fn distances_of_examples() {
        let x = pt("3:4:5:-6");
        assert!(dist(&x, &x, Place::Real).unwrap().is_zero());
        assert!(dist(&x, &x, Place::Padic(5)).unwrap().is_zero());
        assert_eq!(
            dist(&pt("1:0"), &pt("0:1"), Place::Real).unwrap(),
            Rat::one()
        );
        // cross term 1*(1+125) - 1*1 = 125, units elsewhere
        let d = dist(&pt("1:1"), &pt("1:126"), Place::Padic(5)).unwrap();
        assert_eq!(d.value(), &Rat::new(big(1), big(125)));
        assert!(dist(&pt("1:1"), &pt("1:1:1"), Place::Real).is_err());
    }

    fn arb_point(n: usize) -> impl Strategy<Value = ProjPoint> {
        proptest::collection::vec(-40i64..40, n)
            .prop_filter("nonzero", |v| v.iter().any(|&c| c != 0))
            .prop_map(|v| ProjPoint::from_i64(&v).unwrap())
    }

    fn arb_place() -> impl Strategy<Value = Place> {
        prop_oneof![
            Just(Place::Real),
            Just(Place::Padic(2)),
            Just(Place::Padic(3)),
            Just(Place::Padic(5))
        ]
    }

    proptest! {
        #[test]
        fn dist_is_symmetric(x in arb_point(4), y in arb_point(4), v in arb_place()) {
            prop_assert_eq!(dist(&x, &y, v).unwrap(), dist(&y, &x, v).unwrap());
        }

        #[test]
        fn dist_zero_iff_equal(x in arb_point(3), y in arb_point(3), v in arb_place()) {
            prop_assert_eq!(dist(&x, &y, v).unwrap().is_zero(), x == y);
        }

        #[test]
        fn padic_dist_is_ultrametric(x in arb_point(3), y in arb_point(3), z in arb_point(3),
                                     p in prop_oneof![Just(2u64), Just(3), Just(5)]) {
            let v = Place::Padic(p);
            let xz = dist(&x, &z, v).unwrap();
            let m = dist(&x, &y, v).unwrap().max(dist(&y, &z, v).unwrap());
            prop_assert!(xz <= m);
        }

        #[test]
        fn dist_is_projectively_invariant(x in arb_point(4), y in arb_point(4), k in 1i64..9, v in arb_place()) {
            let scaled = ProjPoint::new(x.coords().iter().map(|c| c * BigInt::from(-k)).collect()).unwrap();
            prop_assert_eq!(&scaled, &x);
            prop_assert_eq!(dist(&scaled, &y, v).unwrap(), dist(&x, &y, v).unwrap());
        }

        #[test]
        fn dist_lies_in_unit_interval(x in arb_point(4), y in arb_point(4), v in arb_place()) {
            let d = dist(&x, &y, v).unwrap();
            prop_assert!(d.value() >= &Rat::zero() && d.value() <= &Rat::one());
        }
    }
}
