use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::algebra::arith::Rat;
use crate::algebra::poly::binary_rational_roots;
use crate::algebra::HomForm;
use crate::error::{Error, Result};
use crate::heights::ProjPoint;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "detail", rename_all = "snake_case")]
pub enum SmoothnessStatus {
    Verified,
    AssumedSmooth,
    SingularAlong(String),
}

/// An irreducible cubic form in at least four variables.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CubicHypersurface {
    form: HomForm,
    pub smoothness_status: SmoothnessStatus,
}

impl CubicHypersurface {
    /// Validates degree, dimension and irreducibility over Q.
    pub fn new(form: HomForm) -> Result<Self> {
        if form.degree() != 3 || form.is_zero() {
            return Err(Error::Invalid(format!(
                "expected a nonzero cubic, got degree {}",
                form.degree()
            )));
        }
        if form.n_vars() < 4 {
            return Err(Error::DimensionMismatch {
                expected: 4,
                got: form.n_vars(),
            });
        }
        if let Some(l) = rational_linear_factor(&form) {
            return Err(Error::Reducible(format!("linear factor {l}")));
        }
        Ok(CubicHypersurface {
            form,
            smoothness_status: SmoothnessStatus::AssumedSmooth,
        })
    }

    /// Parses a form in `x0, ..., xn`; `min_vars` guards against variables
    /// that happen not to occur.
    pub fn parse(text: &str, min_vars: usize) -> Result<Self> {
        Self::new(HomForm::parse_with_min_vars(text, min_vars)?)
    }

    pub fn form(&self) -> &HomForm {
        &self.form
    }

    /// Dimension `n` of the ambient projective space.
    pub fn ambient_dim(&self) -> usize {
        self.form.n_vars() - 1
    }

    pub fn contains(&self, p: &ProjPoint) -> bool {
        p.len() == self.form.n_vars() && self.form.eval_int(p.coords()).is_zero()
    }

    pub fn gradient_at(&self, p: &ProjPoint) -> Vec<Rat> {
        self.form.gradient_at(&p.to_rationals())
    }

    /// Checks `P in X` and that `P` is a smooth point.
    pub fn check_smooth_point(&self, p: &ProjPoint) -> Result<()> {
        if p.len() != self.form.n_vars() {
            return Err(Error::DimensionMismatch {
                expected: self.form.n_vars(),
                got: p.len(),
            });
        }
        if !self.contains(p) {
            return Err(Error::PointNotOnX);
        }
        if self.gradient_at(p).iter().all(Zero::is_zero) {
            return Err(Error::SingularAtP);
        }
        Ok(())
    }
}

impl fmt::Display for CubicHypersurface {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.form)
    }
}

/// A rational linear form dividing `f`, if any.
///
/// With `w` chosen so that `f(w) != 0`, a linear factor `L` can be scaled to
/// `L(w) = 1`; then for each basis vector `e_i` the value `-L(e_i)` is a root
/// of `u -> f(e_i + u w)`, leaving finitely many candidates.
pub fn rational_linear_factor(f: &HomForm) -> Option<HomForm> {
    let n = f.n_vars();
    let w = nonvanishing_vector(f)?;
    let j = w.iter().position(|c| !c.is_zero())?;
    let wr: Vec<Rat> = w.iter().map(|c| Rat::from_integer(c.clone())).collect();
    let mut candidates: Vec<Vec<Rat>> = Vec::new();
    for i in (0..n).filter(|&i| i != j) {
        // binary form in (s, t) for the point s e_i + t w
        let subs: Vec<HomForm> = (0..n)
            .map(|k| {
                let ei = if k == i {
                    Rat::from_integer(1.into())
                } else {
                    Rat::zero()
                };
                HomForm::linear(&[ei, wr[k].clone()])
            })
            .collect();
        let b = f.compose(&subs).ok()?;
        let roots: Vec<Rat> = binary_rational_roots(&b)
            .into_iter()
            .filter(|(s, _)| !s.is_zero())
            .map(|(s, t)| -Rat::new(t, s))
            .collect();
        if roots.is_empty() {
            return None;
        }
        candidates.push(roots);
    }
    let others: Vec<usize> = (0..n).filter(|&i| i != j).collect();
    let mut idx = vec![0usize; candidates.len()];
    loop {
        let mut l = vec![Rat::zero(); n];
        let mut acc = Rat::zero();
        for (pos, &i) in others.iter().enumerate() {
            let c = candidates[pos][idx[pos]].clone();
            acc += &c * &wr[i];
            l[i] = c;
        }
        l[j] = (Rat::from_integer(1.into()) - acc) / &wr[j];
        let lf = HomForm::linear(&l);
        if f.divide(&lf).is_some() {
            return Some(lf.primitive().1);
        }
        // odometer over candidate choices
        let mut k = 0;
        loop {
            if k == idx.len() {
                return None;
            }
            idx[k] += 1;
            if idx[k] < candidates[k].len() {
                break;
            }
            idx[k] = 0;
            k += 1;
        }
    }
}

pub(crate) fn nonvanishing_vector(f: &HomForm) -> Option<Vec<BigInt>> {
    let n = f.n_vars();
    for i in 0..n {
        let mut e = vec![BigInt::zero(); n];
        e[i] = 1.into();
        if !f.eval_int(&e).is_zero() {
            return Some(e);
        }
    }
    // small vectors with entries in {0, 1, 2, -1}
    let digits = [0i64, 1, -1, 2];
    let total = digits.len().pow(n as u32);
    for code in 1..total {
        let mut c = code;
        let v: Vec<BigInt> = (0..n)
            .map(|_| {
                let d = digits[c % digits.len()];
                c /= digits.len();
                BigInt::from(d)
            })
            .collect();
        if !f.eval_int(&v).is_zero() {
            return Some(v);
        }
    }
    None
}
