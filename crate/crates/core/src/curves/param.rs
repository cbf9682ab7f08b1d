use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::algebra::arith::Rat;
use crate::algebra::poly::binary_gcd;
use crate::algebra::{HomForm, Vars};
use crate::error::{Error, Result};
use crate::heights::ProjPoint;

/// A rational curve `[s:t] -> [C_0(s,t) : ... : C_n(s,t)]` given by binary
/// forms of a common degree without common factor.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParamCurve {
    components: Vec<HomForm>,
    degree: u32,
}

impl ParamCurve {
    pub fn new(components: Vec<HomForm>) -> Result<Self> {
        if components.len() < 2 {
            return Err(Error::Invalid(
                "a curve needs at least two coordinates".into(),
            ));
        }
        if let Some(bad) = components.iter().find(|c| c.n_vars() != 2) {
            return Err(Error::DimensionMismatch {
                expected: 2,
                got: bad.n_vars(),
            });
        }
        let Some(d) = components
            .iter()
            .find(|c| !c.is_zero())
            .map(HomForm::degree)
        else {
            return Err(Error::ZeroInput);
        };
        if d == 0 {
            return Err(Error::Invalid("constant parametrization".into()));
        }
        if components.iter().any(|c| !c.is_zero() && c.degree() != d) {
            return Err(Error::Invalid("components of unequal degree".into()));
        }
        let components: Vec<HomForm> = components
            .into_iter()
            .map(|c| if c.is_zero() { HomForm::zero(2, d) } else { c })
            .collect();
        let g = components
            .iter()
            .fold(HomForm::zero(2, 0), |acc, c| binary_gcd(&acc, c));
        if g.degree() > 0 {
            return Err(Error::Invalid(format!(
                "components share the factor {}",
                g.to_text(&Vars::binary())
            )));
        }
        Ok(ParamCurve {
            components,
            degree: d,
        })
    }

    /// The line `[s:t] -> s*a + t*b` through two distinct points.
    pub fn line_through(a: &ProjPoint, b: &ProjPoint) -> Result<Self> {
        if a.len() != b.len() {
            return Err(Error::DimensionMismatch {
                expected: a.len(),
                got: b.len(),
            });
        }
        if a == b {
            return Err(Error::Invalid("a line needs two distinct points".into()));
        }
        let comps = a
            .coords()
            .iter()
            .zip(b.coords())
            .map(|(x, y)| {
                HomForm::linear(&[Rat::from_integer(x.clone()), Rat::from_integer(y.clone())])
            })
            .collect();
        Self::new(comps)
    }

    pub fn components(&self) -> &[HomForm] {
        &self.components
    }

    /// Degree of the pull-back of the hyperplane class.
    pub fn degree_l(&self) -> u32 {
        self.degree
    }

    /// Number of ambient coordinates.
    pub fn ambient_len(&self) -> usize {
        self.components.len()
    }

    /// The point with parameter `[s:t]`.
    pub fn eval(&self, s: &BigInt, t: &BigInt) -> Result<ProjPoint> {
        let vals: Vec<Rat> = self
            .components
            .iter()
            .map(|c| c.eval_int(&[s.clone(), t.clone()]))
            .collect();
        if vals.iter().all(Zero::is_zero) {
            return Err(Error::ZeroInput);
        }
        ProjPoint::from_rationals(&vals)
    }

    /// `F(C(s,t))`, a binary form of degree `deg F * d`.
    pub fn pull_back(&self, form: &HomForm) -> Result<HomForm> {
        form.compose(&self.components)
    }

    /// True when the image lies on `form = 0`.
    pub fn lies_on(&self, form: &HomForm) -> Result<bool> {
        Ok(self.pull_back(form)?.is_zero())
    }

    /// Applies `x = M y` coordinates: returns the curve `M * C`.
    pub fn transform(&self, m: &crate::algebra::Matrix) -> Result<Self> {
        if m.cols() != self.components.len() {
            return Err(Error::DimensionMismatch {
                expected: m.cols(),
                got: self.components.len(),
            });
        }
        let mut out = Vec::with_capacity(m.rows());
        for i in 0..m.rows() {
            let mut acc = HomForm::zero(2, self.degree);
            for (j, c) in self.components.iter().enumerate() {
                if !m[(i, j)].is_zero() {
                    acc = acc.add(&c.scale(&m[(i, j)]))?;
                }
            }
            out.push(acc);
        }
        Self::new(out)
    }

    pub fn to_text(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for ParamCurve {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let vars = Vars::binary();
        let parts: Vec<String> = self.components.iter().map(|c| c.to_text(&vars)).collect();
        write!(f, "{}", parts.join(";"))
    }
}

impl FromStr for ParamCurve {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let vars = Vars::binary();
        let mut comps = Vec::new();
        let mut offset = 0;
        for part in s.split(';') {
            let f = HomForm::parse_vars(part, &vars).map_err(|e| match e {
                Error::Parse {
                    line,
                    column,
                    message,
                } => Error::Parse {
                    line,
                    column: column + offset,
                    message,
                },
                other => other,
            })?;
            comps.push(f);
            offset += part.chars().count() + 1;
        }
        ParamCurve::new(comps)
    }
}

#[derive(Serialize, Deserialize)]
struct CurveRepr {
    text: String,
    degree: u32,
}

impl Serialize for ParamCurve {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        CurveRepr {
            text: self.to_string(),
            degree: self.degree,
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for ParamCurve {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let r = CurveRepr::deserialize(d)?;
        r.text.parse().map_err(serde::de::Error::custom)
    }
}
