use num_bigint::BigInt;
use num_traits::Zero;
use serde::Serialize;

use crate::algebra::arith::{primitive_integer_vector, Rat};
use crate::algebra::{HomForm, Matrix};
use crate::error::{Error, Result};
use crate::heights::ProjPoint;

use super::CubicHypersurface;

/// The tangent hyperplane section at `P` in normalized coordinates.
///
/// With `x = M y`, the point `P` is `y = e_n`, the tangent hyperplane is
/// `y_0 = 0`, and on it the form reads `f3(y_1..y_{n-1}) + y_n g(y_1..y_{n-1})`.
#[derive(Debug, Clone, Serialize)]
pub struct TangentSection {
    pub point: ProjPoint,
    /// Primitive integer coefficients of the tangent hyperplane.
    pub tangent_hyperplane: Vec<BigInt>,
    pub ambient_change: Matrix,
    #[serde(skip)]
    inverse_change: Matrix,
    pub f3: HomForm,
    pub g: HomForm,
}

/// Normalizes the tangent section of `x` at `p`.
pub fn tangent_section(x: &CubicHypersurface, p: &ProjPoint) -> Result<TangentSection> {
    x.check_smooth_point(p)?;
    let n1 = p.len();
    let a = primitive_integer_vector(&x.gradient_at(p));
    let j = a
        .iter()
        .position(|c| !c.is_zero())
        .ok_or(Error::SingularAtP)?;
    let ar: Vec<Rat> = a.iter().map(|c| Rat::from_integer(c.clone())).collect();
    let pr = p.to_rationals();

    // kernel vectors a_j e_i - a_i e_j, kept while independent of P
    let mut chosen: Vec<Vec<Rat>> = vec![pr.clone()];
    for i in (0..n1).filter(|&i| i != j) {
        if chosen.len() == n1 - 1 {
            break;
        }
        let mut w = vec![Rat::zero(); n1];
        w[i] = ar[j].clone();
        w[j] = -ar[i].clone();
        let mut trial = chosen.clone();
        trial.push(w.clone());
        if Matrix::from_rows(trial).rank() == chosen.len() + 1 {
            chosen.push(w);
        }
    }
    let mut e_j = vec![Rat::zero(); n1];
    e_j[j] = Rat::from_integer(1.into());
    let mut columns = vec![e_j];
    columns.extend(chosen[1..].iter().cloned());
    columns.push(pr);
    let m = Matrix::from_columns(&columns);
    let inv = m.inverse().ok_or(Error::SingularChange)?;

    let g_full = x.form().substitute_linear(&m)?;
    let on_plane = g_full.set_zero(0).remove_var(0)?;
    let last = n1 - 2;
    let coeffs = on_plane.coefficients_in(last);
    if coeffs.iter().skip(2).any(|c| !c.is_zero()) {
        return Err(Error::Invalid(
            "tangent section not of the expected shape".into(),
        ));
    }
    let f3 = coeffs[0].remove_var(last)?;
    let g = match coeffs.get(1) {
        Some(c) => c.remove_var(last)?,
        None => HomForm::zero(n1 - 2, 2),
    };
    Ok(TangentSection {
        point: p.clone(),
        tangent_hyperplane: a,
        ambient_change: m,
        inverse_change: inv,
        f3,
        g,
    })
}

impl TangentSection {
    /// Number of variables of `f3` and `g`.
    pub fn proj_vars(&self) -> usize {
        self.f3.n_vars()
    }

    /// True when `S_P` is a cone with vertex `P`.
    pub fn is_cone(&self) -> bool {
        self.g.is_zero()
    }

    /// `f3 + y_n g` as a form in `y_1, ..., y_n`.
    pub fn section_form(&self) -> HomForm {
        let m = self.proj_vars();
        let idx: Vec<usize> = (0..m).collect();
        let f = self.f3.embed(m + 1, &idx);
        let g = self.g.embed(m + 1, &idx);
        let yn = HomForm::var(m + 1, m);
        f.add(&g.mul(&yn).expect("same arity"))
            .expect("same degree")
    }

    /// Ambient point with normalized coordinates `(0, y', y_n)`.
    pub fn ambient_point(&self, y_prime: &[Rat], y_n: &Rat) -> Result<ProjPoint> {
        let mut y = vec![Rat::zero()];
        y.extend(y_prime.iter().cloned());
        y.push(y_n.clone());
        ProjPoint::from_rationals(&self.ambient_change.mul_vec(&y))
    }

    /// Normalized coordinates `y = M^{-1} x`.
    pub fn normalized(&self, x: &ProjPoint) -> Vec<Rat> {
        self.inverse_change.mul_vec(&x.to_rationals())
    }

    /// Projection from `P`: the coordinates `y'` of a point of the tangent
    /// hyperplane other than `P`.
    pub fn phi(&self, x: &ProjPoint) -> Result<Vec<Rat>> {
        let y = self.normalized(x);
        if !y[0].is_zero() {
            return Err(Error::Invalid(
                "point is not on the tangent hyperplane".into(),
            ));
        }
        let yp = y[1..y.len() - 1].to_vec();
        if yp.iter().all(Zero::is_zero) {
            return Err(Error::Invalid("projection undefined at P".into()));
        }
        Ok(yp)
    }

    /// The inverse of the projection: `y' -> [y' g(y') : -f3(y')]`.
    pub fn psi(&self, y_prime: &[Rat]) -> Result<ProjPoint> {
        let g = self.g.eval(y_prime);
        let f = self.f3.eval(y_prime);
        let scaled: Vec<Rat> = y_prime.iter().map(|c| c * &g).collect();
        self.ambient_point(&scaled, &-f)
    }

    /// The ambient point in direction `y'` from `P` (on the tangent
    /// hyperplane, `y_n = 0`).
    pub fn direction_point(&self, y_prime: &[Rat]) -> Result<ProjPoint> {
        self.ambient_point(y_prime, &Rat::zero())
    }
}
