use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::algebra::arith::{is_rational_square, Rat};
use crate::algebra::local::quadric_has_local_point;
use crate::algebra::poly::{binary_gcd, binary_rational_roots};
use crate::algebra::{is_square_local, HomForm, Place, Vars};
use crate::alpha::Alpha;
use crate::classifier::{verify_line, CubicHypersurface, TangentSection};
use crate::error::{Error, Result};
use crate::heights::ProjPoint;

use super::{branch_data, curve_alpha, preimage_form, BranchDatum, ParamCurve};

/// Plane section through a point and a line on the hypersurface.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PlaneSection {
    /// `P, A, B`: the plane is `u P + s A + t B`.
    pub basis: Vec<ProjPoint>,
    /// The hypersurface restricted to the plane, in `u, s, t`.
    pub restriction: String,
    /// The residual conic `restriction / u`.
    pub conic_form: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ResidualConic {
    /// An irreducible conic through `P`, parametrized from `P`.
    Conic {
        section: PlaneSection,
        curve: ParamCurve,
        alpha: Alpha,
    },
    /// The conic splits into rational lines; those through `P` are returned.
    SplitRational {
        section: PlaneSection,
        lines: Vec<ParamCurve>,
    },
    /// The conic is two conjugate lines meeting at `P`.
    DegenerateSplit {
        section: PlaneSection,
        description: String,
    },
    /// The whole plane lies on the hypersurface.
    Contained { basis: Vec<ProjPoint> },
}

fn plane_vars() -> Vars {
    Vars::Named(vec!["u".into(), "s".into(), "t".into()])
}

/// Embeds plane coordinates into the ambient space: `x = u P + s A + t B`.
fn plane_map(basis: &[ProjPoint]) -> Vec<HomForm> {
    let n1 = basis[0].len();
    (0..n1)
        .map(|i| {
            let c: Vec<Rat> = basis
                .iter()
                .map(|p| Rat::from_integer(p.coords()[i].clone()))
                .collect();
            HomForm::linear(&c)
        })
        .collect()
}

/// The conic left over when the plane through `p` and `ell` meets `x`.
pub fn residual_conic(
    x: &CubicHypersurface,
    p: &ProjPoint,
    ell: &ParamCurve,
) -> Result<ResidualConic> {
    if !verify_line(x, ell) {
        return Err(Error::NotALineOnX);
    }
    if !x.contains(p) {
        return Err(Error::PointNotOnX);
    }
    if preimage_form(ell, p).is_ok() {
        return Err(Error::PointOnLine);
    }
    let a = ell.eval(&BigInt::one(), &BigInt::zero())?;
    let b = ell.eval(&BigInt::zero(), &BigInt::one())?;
    let basis = vec![p.clone(), a, b];
    let restriction = x.form().compose(&plane_map(&basis))?;
    if restriction.is_zero() {
        return Ok(ResidualConic::Contained { basis });
    }
    let u = HomForm::var(3, 0);
    let conic = restriction
        .divide(&u)
        .ok_or_else(|| Error::Invalid("plane section does not contain the line".into()))?;
    let vars = plane_vars();
    let section = PlaneSection {
        basis: basis.clone(),
        restriction: restriction.to_text(&vars),
        conic_form: conic.to_text(&vars),
    };
    // conic(l, s, t) = l * lin(s, t) + quad(s, t) since conic(1, 0, 0) = 0
    let coeffs = conic.coefficients_in(0);
    let quad = coeffs[0].remove_var(0)?;
    let lin = match coeffs.get(1) {
        Some(c) => c.remove_var(0)?,
        None => HomForm::zero(2, 1),
    };
    let to_ambient = |plane_curve: &[HomForm]| -> Result<ParamCurve> {
        let map = plane_map(&basis);
        let comps = map
            .iter()
            .map(|m| m.compose(plane_curve))
            .collect::<Result<Vec<_>>>()?;
        ParamCurve::new(comps)
    };
    let line_through_p = |dir: &(BigInt, BigInt)| -> Result<ParamCurve> {
        let (ds, dt) = (
            Rat::from_integer(dir.0.clone()),
            Rat::from_integer(dir.1.clone()),
        );
        let z = Rat::zero();
        let o = Rat::one();
        to_ambient(&[
            HomForm::linear(&[o, z.clone()]),
            HomForm::linear(&[z.clone(), ds]),
            HomForm::linear(&[z, dt]),
        ])
    };
    if lin.is_zero() {
        // P is singular on the conic: two lines through P
        let roots = binary_rational_roots(&quad);
        if roots.is_empty() {
            return Ok(ResidualConic::DegenerateSplit {
                section,
                description: format!(
                    "conjugate lines through P with directions {} = 0",
                    quad.to_text(&Vars::binary())
                ),
            });
        }
        let lines = roots
            .iter()
            .map(line_through_p)
            .collect::<Result<Vec<_>>>()?;
        return Ok(ResidualConic::SplitRational { section, lines });
    }
    // the point of the line through P in direction (s, t) other than P
    let s = HomForm::var(2, 0);
    let t = HomForm::var(2, 1);
    let comps = [quad.neg(), s.mul(&lin)?, t.mul(&lin)?];
    let common = comps
        .iter()
        .fold(HomForm::zero(2, 0), |acc, c| binary_gcd(&acc, c));
    if common.degree() > 0 {
        // lin and quad share a root: the conic contains a rational line through P
        let roots = binary_rational_roots(&common);
        let lines = roots
            .iter()
            .map(line_through_p)
            .collect::<Result<Vec<_>>>()?;
        return Ok(ResidualConic::SplitRational { section, lines });
    }
    let curve = to_ambient(&comps)?;
    if !curve.lies_on(x.form())? {
        return Err(Error::Invalid(
            "residual conic does not lie on the hypersurface".into(),
        ));
    }
    let alpha = curve_alpha(&curve, p, Place::Real)?;
    Ok(ResidualConic::Conic {
        section,
        curve,
        alpha,
    })
}

/// The nodal cubic obtained from a line through a conjugate pair on `g = 0`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ProjectionCurve {
    pub curve: ParamCurve,
    pub place: Place,
    /// The line `T` as two points of the projection space.
    pub line: [Vec<BigInt>; 2],
    /// `g` restricted to `T`; its roots are the conjugate pair.
    pub node_factor: String,
    #[serde(with = "crate::algebra::arith::rat_text")]
    pub discriminant: Rat,
    pub branches: Vec<BranchDatum>,
    pub alpha: Alpha,
    pub attempts_used: u32,
    pub seed: u64,
}

/// Coefficient bound for the random line of the given attempt.
fn attempt_bound(attempt: u32) -> i64 {
    1i64 << attempt.min(20)
}

fn random_vector(rng: &mut ChaCha8Rng, m: usize, h: i64) -> Vec<BigInt> {
    (0..m)
        .map(|_| BigInt::from(rng.gen_range(-h..=h)))
        .collect()
}

/// Constructs `T'`, the closure of `psi(T)` for a rational line `T` through
/// a conjugate pair `Q, Q'` on `g = 0` defined over `k_v` but not `k`.
/// For a surface whose tangent quadric is a double line, `T'` is the
/// cuspidal section itself.
pub fn projection_curve(
    s: &TangentSection,
    v: Place,
    attempts: u32,
    seed: u64,
) -> Result<ProjectionCurve> {
    if s.g.is_zero() {
        return Err(Error::WorseThanNode);
    }
    if !quadric_has_local_point(&s.g, v) {
        return Err(Error::EmptyLocalQuadric);
    }
    let m = s.proj_vars();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for attempt in 0..attempts {
        let h = attempt_bound(attempt);
        let a = random_vector(&mut rng, m, h);
        let b = random_vector(&mut rng, m, h);
        if let Some(found) = try_line(s, v, &a, &b)? {
            return Ok(ProjectionCurve {
                attempts_used: attempt + 1,
                seed,
                ..found
            });
        }
    }
    Err(Error::NoQuadraticPointFound { attempts })
}

fn try_line(
    s: &TangentSection,
    v: Place,
    a: &[BigInt],
    b: &[BigInt],
) -> Result<Option<ProjectionCurve>> {
    let m = a.len();
    // the line sigma a + tau b in the projection space
    let ys: Vec<HomForm> = (0..m)
        .map(|i| {
            HomForm::linear(&[
                Rat::from_integer(a[i].clone()),
                Rat::from_integer(b[i].clone()),
            ])
        })
        .collect();
    if ys
        .iter()
        .fold(HomForm::zero(2, 0), |acc, c| binary_gcd(&acc, c))
        .degree()
        > 0
        || ys.iter().all(HomForm::is_zero)
    {
        return Ok(None);
    }
    let q = s.g.compose(&ys)?;
    if q.is_zero() {
        return Ok(None);
    }
    let (qa, qb, qc) = (q.coeff(&[2, 0]), q.coeff(&[1, 1]), q.coeff(&[0, 2]));
    let disc: Rat = &qb * &qb - Rat::from_integer(4.into()) * &qa * &qc;
    // on a surface T is the whole projection line, and a double root of g
    // yields the cuspidal section itself
    let cusp = disc.is_zero() && m == 2;
    if !cusp
        && (disc.is_zero() || is_rational_square(&disc) || !is_square_local(&disc, v)?.is_square)
    {
        return Ok(None);
    }
    let f = s.f3.compose(&ys)?;
    if binary_gcd(&f, &q).degree() > 0 {
        return Ok(None);
    }
    // psi on the line, in normalized coordinates (y0, y', y_n)
    let mut normalized = vec![HomForm::zero(2, 3)];
    for y in &ys {
        normalized.push(y.mul(&q)?);
    }
    normalized.push(f.neg());
    let comps: Vec<HomForm> = (0..s.ambient_change.rows())
        .map(|i| {
            normalized
                .iter()
                .enumerate()
                .try_fold(HomForm::zero(2, 3), |acc, (j, c)| {
                    let mij = &s.ambient_change[(i, j)];
                    if mij.is_zero() {
                        Ok(acc)
                    } else {
                        acc.add(&c.scale(mij))
                    }
                })
        })
        .collect::<Result<_>>()?;
    let curve = ParamCurve::new(comps)?;
    let branches = branch_data(&curve, &s.point, v)?;
    let alpha = super::alpha_from_branches(curve.degree_l(), &branches);
    if alpha != Alpha::ratio(3, 2) {
        return Ok(None);
    }
    Ok(Some(ProjectionCurve {
        curve,
        place: v,
        line: [a.to_vec(), b.to_vec()],
        node_factor: q.to_text(&Vars::binary()),
        discriminant: disc,
        branches,
        alpha,
        attempts_used: 0,
        seed: 0,
    }))
}

/// Checks `psi(phi(x)) = x` on `samples` random points `x = psi(y')` of the
/// section; returns the number of points checked.
pub fn check_psi_phi(s: &TangentSection, samples: usize, seed: u64) -> Result<usize> {
    let m = s.proj_vars();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut checked = 0;
    let mut tries = 0;
    while checked < samples {
        tries += 1;
        if tries > 100 * samples + 100 {
            return Err(Error::Invalid(
                "could not sample points of the section".into(),
            ));
        }
        let y: Vec<Rat> = (0..m)
            .map(|_| Rat::from_integer(rng.gen_range(-50i64..=50).into()))
            .collect();
        if y.iter().all(Zero::is_zero) || s.g.eval(&y).is_zero() {
            continue;
        }
        let x = s.psi(&y)?;
        let back = s.psi(&s.phi(&x)?)?;
        if back != x {
            return Err(Error::Invalid(format!("psi(phi({x})) = {back}")));
        }
        checked += 1;
    }
    Ok(checked)
}
