use serde::{Deserialize, Serialize};

use crate::algebra::arith::Rat;
use crate::algebra::{factor_binary_form, is_square_local, Place, RootData, Vars};
use crate::error::{Error, Result};

use super::TangentSection;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ConeShape {
    SplitRational,
    SplitQuadraticInKv,
    NonSplitOverKv,
    DoubleLine,
}

/// Tangent directions of a surface section at its double point.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TangentConeReport {
    pub shape: ConeShape,
    pub place: Place,
    /// The binary quadric `g` in the variables `s, t`.
    pub quadric: String,
    pub discriminant: String,
    pub factors: Vec<String>,
}

/// Classifies the tangent cone `g = 0` of a surface section.
pub fn tangent_cone_analysis(s: &TangentSection, v: Place) -> Result<TangentConeReport> {
    if s.proj_vars() != 2 {
        return Err(Error::Unsupported(
            "tangent cone analysis is for surfaces".into(),
        ));
    }
    if s.g.is_zero() {
        return Err(Error::WorseThanNode);
    }
    let g = &s.g;
    let a = g.coeff(&[2, 0]);
    let b = g.coeff(&[1, 1]);
    let c = g.coeff(&[0, 2]);
    let disc: Rat = &b * &b - Rat::from_integer(4.into()) * &a * &c;
    let factors = factor_binary_form(g)?;
    let shape = match factors.as_slice() {
        [one] if one.multiplicity == 2 => ConeShape::DoubleLine,
        [one] => match &one.root {
            RootData::Quadratic { disc, .. } => {
                if is_square_local(&Rat::from_integer(disc.clone()), v)?.is_square {
                    ConeShape::SplitQuadraticInKv
                } else {
                    ConeShape::NonSplitOverKv
                }
            }
            _ => {
                return Err(Error::Invalid(
                    "unexpected factorization of a binary quadric".into(),
                ))
            }
        },
        _ => ConeShape::SplitRational,
    };
    let vars = Vars::binary();
    Ok(TangentConeReport {
        shape,
        place: v,
        quadric: g.to_text(&vars),
        discriminant: disc.to_string(),
        factors: factors
            .iter()
            .map(|f| {
                if f.multiplicity > 1 {
                    format!("({})^{}", f.form.to_text(&vars), f.multiplicity)
                } else {
                    f.form.to_text(&vars)
                }
            })
            .collect(),
    })
}
