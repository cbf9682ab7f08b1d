use serde::{Deserialize, Serialize};

use crate::algebra::arith::Rat;
use crate::algebra::local::has_root_local;
use crate::algebra::poly::{binary_gcd, dehomogenize};
use crate::algebra::{factor_binary_form, is_square_local, HomForm, Place, RootData, Vars};
use crate::alpha::Alpha;
use crate::error::{Error, Result};
use crate::heights::ProjPoint;

use super::ParamCurve;

/// One closed point `q` of the parameter line lying over the target.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BranchDatum {
    /// Irreducible binary form vanishing at `q` (primitive integral).
    pub factor: String,
    pub q: RootData,
    pub kappa_degree: u32,
    pub in_kv: bool,
    pub m_q: u32,
    pub r_q: u32,
}

impl BranchDatum {
    /// `d / (r_q m_q)`, infinite when `r_q = 0`.
    pub fn contribution(&self, degree_l: u32) -> Alpha {
        if self.r_q == 0 {
            Alpha::Infinite
        } else {
            Alpha::Finite(Rat::new(degree_l.into(), (self.r_q * self.m_q).into()))
        }
    }

    pub(crate) fn factor_form(&self) -> Result<HomForm> {
        HomForm::parse_vars(&self.factor, &Vars::binary())
    }
}

/// The binary form whose zeros are the parameters mapping to `p`: the gcd
/// of all minors `C_i p_j - C_j p_i`.
pub fn preimage_form(c: &ParamCurve, p: &ProjPoint) -> Result<HomForm> {
    if c.ambient_len() != p.len() {
        return Err(Error::DimensionMismatch {
            expected: c.ambient_len(),
            got: p.len(),
        });
    }
    let pr = p.to_rationals();
    let comps = c.components();
    let mut g = HomForm::zero(2, 0);
    for i in 0..comps.len() {
        for j in i + 1..comps.len() {
            let m = comps[i].scale(&pr[j]).sub(&comps[j].scale(&pr[i]))?;
            g = binary_gcd(&g, &m);
        }
    }
    if g.is_zero() || g.degree() == 0 {
        return Err(Error::PointNotOnCurve);
    }
    Ok(g)
}

/// Branch data of `c` over `p` at the place `v`.
pub fn branch_data(c: &ParamCurve, p: &ProjPoint, v: Place) -> Result<Vec<BranchDatum>> {
    let g = preimage_form(c, p)?;
    let mut out = Vec::new();
    for f in factor_binary_form(&g)? {
        let kappa = f.degree();
        let in_kv = match &f.root {
            RootData::Rational { .. } => true,
            RootData::Quadratic { disc, .. } => {
                is_square_local(&Rat::from_integer(disc.clone()), v)?.is_square
            }
            RootData::Higher { .. } => {
                let (poly, tm) = dehomogenize(&f.form);
                tm > 0 || has_root_local(&poly, v)
            }
        };
        let r_q = match (in_kv, kappa) {
            (false, _) => 0,
            (true, 1) => 1,
            (true, _) => 2,
        };
        out.push(BranchDatum {
            factor: f.form.to_text(&Vars::binary()),
            q: f.root,
            kappa_degree: kappa,
            in_kv,
            m_q: f.multiplicity,
            r_q,
        });
    }
    Ok(out)
}

/// `min_q d / (r_q m_q)` over the branches of `c` at `p`.
pub fn curve_alpha(c: &ParamCurve, p: &ProjPoint, v: Place) -> Result<Alpha> {
    let branches = branch_data(c, p, v)?;
    Ok(alpha_from_branches(c.degree_l(), &branches))
}

pub fn alpha_from_branches(degree_l: u32, branches: &[BranchDatum]) -> Alpha {
    branches
        .iter()
        .map(|b| b.contribution(degree_l))
        .min()
        .unwrap_or(Alpha::Infinite)
}

/// Sum of `kappa * m` over the branches; equals the degree of the
/// preimage form.
pub fn intersection_multiplicity(branches: &[BranchDatum]) -> u32 {
    branches.iter().map(|b| b.kappa_degree * b.m_q).sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::arith::big;

    fn curve(s: &str) -> ParamCurve {
        s.parse().unwrap()
    }

    fn pt(s: &str) -> ProjPoint {
        s.parse().unwrap()
    }

    #[test]
    fn line_branch() {
        let c = curve("s; -s; t; -t");
        let b = branch_data(&c, &pt("1:-1:1:-1"), Place::Real).unwrap();
        assert_eq!(b.len(), 1);
        assert_eq!(
            b[0].q,
            RootData::Rational {
                s: big(1),
                t: big(1)
            }
        );
        assert_eq!((b[0].kappa_degree, b[0].m_q, b[0].r_q), (1, 1, 1));
        assert_eq!(
            curve_alpha(&c, &pt("1:-1:1:-1"), Place::Real).unwrap(),
            Alpha::int(1)
        );
        assert!(matches!(
            branch_data(&c, &pt("1:0:0:0"), Place::Real),
            Err(Error::PointNotOnCurve)
        ));
    }

    #[test]
    fn nodal_cubic_with_quadratic_tangents() {
        // [s h : t h : s^3 + t^3] with h = s^2 - 2 t^2: node at [0:0:1]
        let c = curve("s^3 - 2*s*t^2; s^2*t - 2*t^3; s^3 + t^3");
        let p = pt("0:0:1");
        let real = branch_data(&c, &p, Place::Real).unwrap();
        assert_eq!(real.len(), 1);
        assert_eq!(
            (
                real[0].kappa_degree,
                real[0].in_kv,
                real[0].r_q,
                real[0].m_q
            ),
            (2, true, 2, 1)
        );
        assert_eq!(
            curve_alpha(&c, &p, Place::Real).unwrap(),
            Alpha::ratio(3, 2)
        );
        let p5 = branch_data(&c, &p, Place::Padic(5)).unwrap();
        assert_eq!((p5[0].in_kv, p5[0].r_q), (false, 0));
        assert_eq!(
            curve_alpha(&c, &p, Place::Padic(5)).unwrap(),
            Alpha::Infinite
        );
        assert_eq!(
            curve_alpha(&c, &p, Place::Padic(7)).unwrap(),
            Alpha::ratio(3, 2)
        );
        assert_eq!(intersection_multiplicity(&real), 2);
    }

    #[test]
    fn rational_node_and_cusp() {
        let node = curve("s^2*t; s*t^2; s^3 + t^3");
        assert_eq!(
            curve_alpha(&node, &pt("0:0:1"), Place::Real).unwrap(),
            Alpha::int(3)
        );
        let cusp = curve("s^3; s^2*t; t^3");
        let b = branch_data(&cusp, &pt("0:0:1"), Place::Real).unwrap();
        assert_eq!((b.len(), b[0].m_q), (1, 2));
        assert_eq!(
            curve_alpha(&cusp, &pt("0:0:1"), Place::Real).unwrap(),
            Alpha::ratio(3, 2)
        );
    }
}
