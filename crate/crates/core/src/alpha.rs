use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::algebra::arith::{rat_to_f64, Rat};
use crate::error::{Error, Result};

/// An approximation constant: a positive rational or infinity.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Alpha {
    Finite(Rat),
    Infinite,
}

impl Alpha {
    pub fn int(n: i64) -> Self {
        Alpha::Finite(Rat::from_integer(n.into()))
    }

    pub fn ratio(n: i64, d: i64) -> Self {
        Alpha::Finite(Rat::new(n.into(), d.into()))
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, Alpha::Finite(_))
    }

    pub fn as_rat(&self) -> Option<&Rat> {
        match self {
            Alpha::Finite(r) => Some(r),
            Alpha::Infinite => None,
        }
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            Alpha::Finite(r) => rat_to_f64(r),
            Alpha::Infinite => f64::INFINITY,
        }
    }
}

impl PartialOrd for Alpha {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Alpha {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Alpha::Finite(a), Alpha::Finite(b)) => a.cmp(b),
            (Alpha::Finite(_), Alpha::Infinite) => Ordering::Less,
            (Alpha::Infinite, Alpha::Finite(_)) => Ordering::Greater,
            (Alpha::Infinite, Alpha::Infinite) => Ordering::Equal,
        }
    }
}

impl fmt::Display for Alpha {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Alpha::Finite(r) => write!(f, "{r}"),
            Alpha::Infinite => write!(f, "inf"),
        }
    }
}

impl FromStr for Alpha {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        if t == "inf" || t == "infinity" {
            return Ok(Alpha::Infinite);
        }
        t.parse::<Rat>()
            .map(Alpha::Finite)
            .map_err(|_| Error::parse(1, 1, format!("bad alpha '{t}'")))
    }
}

impl Serialize for Alpha {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Alpha {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        String::deserialize(d)?
            .parse()
            .map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ordering_and_text() {
        assert!(Alpha::int(1) < Alpha::ratio(3, 2));
        assert!(Alpha::int(3) < Alpha::Infinite);
        assert_eq!(Alpha::ratio(3, 2).to_string(), "3/2");
        assert_eq!("inf".parse::<Alpha>().unwrap(), Alpha::Infinite);
        assert_eq!("2".parse::<Alpha>().unwrap(), Alpha::int(2));
        let j = serde_json::to_string(&Alpha::ratio(3, 2)).unwrap();
        assert_eq!(j, "\"3/2\"");
    }
}
