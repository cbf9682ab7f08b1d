//! Elements `a + b*sqrt(delta)` of a quadratic field Q(sqrt(delta)).

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::arith::{squarefree_part, Rat};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuadExt {
    delta: BigInt,
    pub a: Rat,
    pub b: Rat,
}

impl QuadExt {
    /// `delta` must be squarefree and different from 0 and 1.
    pub fn new(delta: BigInt, a: Rat, b: Rat) -> Result<Self> {
        if delta.is_zero() || delta.is_one() {
            return Err(Error::Invalid("delta must differ from 0 and 1".into()));
        }
        match squarefree_part(&delta) {
            Some((d, m)) if m.is_one() && d == delta => Ok(QuadExt { delta, a, b }),
            _ => Err(Error::Invalid(format!("{delta} is not squarefree"))),
        }
    }

    pub fn rational(delta: BigInt, a: Rat) -> Result<Self> {
        Self::new(delta, a, Rat::zero())
    }

    pub fn delta(&self) -> &BigInt {
        &self.delta
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    pub fn conj(&self) -> Self {
        QuadExt {
            delta: self.delta.clone(),
            a: self.a.clone(),
            b: -self.b.clone(),
        }
    }

    pub fn norm(&self) -> Rat {
        &self.a * &self.a - &self.b * &self.b * Rat::from_integer(self.delta.clone())
    }

    pub fn trace(&self) -> Rat {
        &self.a + &self.a
    }

    fn same_field(&self, o: &Self) {
        assert_eq!(
            self.delta, o.delta,
            "elements of different quadratic fields"
        );
    }

    pub fn add(&self, o: &Self) -> Self {
        self.same_field(o);
        QuadExt {
            delta: self.delta.clone(),
            a: &self.a + &o.a,
            b: &self.b + &o.b,
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.same_field(o);
        QuadExt {
            delta: self.delta.clone(),
            a: &self.a - &o.a,
            b: &self.b - &o.b,
        }
    }

    pub fn mul(&self, o: &Self) -> Self {
        self.same_field(o);
        let d = Rat::from_integer(self.delta.clone());
        QuadExt {
            delta: self.delta.clone(),
            a: &self.a * &o.a + &self.b * &o.b * d,
            b: &self.a * &o.b + &self.b * &o.a,
        }
    }

    pub fn scale(&self, k: &Rat) -> Self {
        QuadExt {
            delta: self.delta.clone(),
            a: &self.a * k,
            b: &self.b * k,
        }
    }

    pub fn inv(&self) -> Option<Self> {
        let n = self.norm();
        if n.is_zero() {
            return None;
        }
        Some(self.conj().scale(&(Rat::one() / n)))
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    /// The two roots `s/t` of `a s^2 + b s t + c t^2` with `a != 0` and
    /// non-square discriminant, as elements of Q(sqrt(disc)).
    pub fn roots_of_quadratic(a: &BigInt, b: &BigInt, c: &BigInt) -> Result<(Self, Self)> {
        let disc = b * b - BigInt::from(4) * a * c;
        let (d, m) = squarefree_part(&disc).ok_or(Error::ZeroInput)?;
        if d.is_one() {
            return Err(Error::Invalid("quadratic splits over Q".into()));
        }
        let two_a = Rat::from_integer(BigInt::from(2) * a);
        let re = Rat::from_integer(-b.clone()) / &two_a;
        let im = Rat::from_integer(m) / &two_a;
        let r1 = QuadExt::new(d.clone(), re.clone(), im.clone())?;
        let r2 = QuadExt::new(d, re, -im)?;
        Ok((r1, r2))
    }
}

impl fmt::Display for QuadExt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sign = if self.b.is_negative() { "-" } else { "+" };
        write!(
            f,
            "{} {} {}*sqrt({})",
            self.a,
            sign,
            self.b.abs(),
            self.delta
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::arith::{big, rat};

    #[test]
    fn arithmetic_in_q_sqrt2() {
        let x = QuadExt::new(big(2), rat(1), rat(1)).unwrap();
        assert_eq!(x.norm(), rat(-1));
        let y = x.mul(&x.conj());
        assert!(y.is_rational());
        assert_eq!(y.a, rat(-1));
        let inv = x.inv().unwrap();
        assert_eq!(x.mul(&inv), QuadExt::rational(big(2), rat(1)).unwrap());
        assert!(QuadExt::new(big(8), rat(0), rat(1)).is_err());
        assert!(QuadExt::new(big(1), rat(0), rat(1)).is_err());
    }

    #[test]
    fn roots_satisfy_the_quadratic() {
        let (r1, r2) = QuadExt::roots_of_quadratic(&big(1), &big(0), &big(-2)).unwrap();
        assert_eq!(r1.mul(&r1).a, rat(2));
        assert_eq!(r1.add(&r2), QuadExt::rational(big(2), rat(0)).unwrap());
        let (z, _) = QuadExt::roots_of_quadratic(&big(2), &big(3), &big(5)).unwrap();
        // 2 z^2 + 3 z + 5 = 0
        let two = QuadExt::rational(z.delta().clone(), rat(2)).unwrap();
        let three = QuadExt::rational(z.delta().clone(), rat(3)).unwrap();
        let five = QuadExt::rational(z.delta().clone(), rat(5)).unwrap();
        assert!(two.mul(&z).mul(&z).add(&three.mul(&z)).add(&five).is_zero());
    }
}
