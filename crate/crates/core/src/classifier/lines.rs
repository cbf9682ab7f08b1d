use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::algebra::arith::{exact_sqrt, Rat};
use crate::algebra::local::quadric_has_rational_point;
use crate::algebra::poly::{binary_gcd, binary_rational_roots};
use crate::algebra::{HomForm, UniPoly};
use crate::curves::ParamCurve;
use crate::error::{Error, Result};
use crate::heights::ProjPoint;

use super::{tangent_section, CubicHypersurface, TangentSection};

/// Lines through a point found by [`lines_through_point`].
#[derive(Debug, Clone, Serialize)]
pub struct LineSearch {
    pub lines: Vec<ParamCurve>,
    /// True when no further rational line through the point exists.
    pub exhaustive: bool,
    /// Height bound actually searched (0 when the answer is exact).
    pub bound_used: u64,
}

/// Cap on the number of prefixes visited by [`small_zeros`].
const PREFIX_BUDGET: u64 = 2_000_000;

/// Rational zeros of `form` whose first `m - 1` coordinates are integers of
/// absolute value at most `bound`, as canonical points. The bound is
/// lowered so that at most a fixed number of prefixes is visited; the bound
/// used is returned alongside.
pub fn small_zeros(form: &HomForm, bound: u64) -> (Vec<ProjPoint>, u64) {
    let m = form.n_vars();
    let mut b = bound.max(1);
    while m >= 2 && (2 * b + 1).saturating_pow(m as u32 - 1) > PREFIX_BUDGET && b > 1 {
        b -= 1;
    }
    let last = m - 1;
    let coeffs: Vec<HomForm> = form
        .coefficients_in(last)
        .into_iter()
        .map(|c| c.remove_var(last).expect("variable removed"))
        .collect();
    let mut out = BTreeSet::new();
    let mut e = vec![BigInt::zero(); m];
    e[last] = 1.into();
    if form.eval_int(&e).is_zero() {
        out.insert(ProjPoint::new(e).expect("nonzero"));
    }
    let bi = b as i64;
    let mut prefix = vec![-bi; m - 1];
    loop {
        let first_nonzero = prefix.iter().find(|&&c| c != 0);
        if first_nonzero.is_some_and(|&c| c > 0) {
            let pb: Vec<BigInt> = prefix.iter().map(|&c| BigInt::from(c)).collect();
            let u = UniPoly::new(coeffs.iter().map(|c| c.eval_int(&pb)).collect());
            let mut push = |y: Rat| {
                let mut v: Vec<Rat> = pb.iter().map(|c| Rat::from_integer(c.clone())).collect();
                v.push(y);
                if let Ok(p) = ProjPoint::from_rationals(&v) {
                    out.insert(p);
                }
            };
            if u.is_zero() {
                push(Rat::zero());
            } else {
                for r in roots_of(&u) {
                    push(r);
                }
            }
        }
        // odometer
        let mut k = 0;
        loop {
            if k == prefix.len() {
                return (out.into_iter().collect(), b);
            }
            prefix[k] += 1;
            if prefix[k] <= bi {
                break;
            }
            prefix[k] = -bi;
            k += 1;
        }
    }
}

fn roots_of(u: &UniPoly) -> Vec<Rat> {
    match u.degree() {
        Some(1) => vec![-&u.coeffs()[0] / &u.coeffs()[1]],
        Some(2) => {
            let (c, b, a) = (&u.coeffs()[0], &u.coeffs()[1], &u.coeffs()[2]);
            let disc = b * b - Rat::from_integer(4.into()) * a * c;
            if disc.is_negative() {
                return vec![];
            }
            let (Some(sn), Some(sd)) = (exact_sqrt(disc.numer()), exact_sqrt(disc.denom())) else {
                return vec![];
            };
            let s = Rat::new(sn, sd);
            let two_a = Rat::from_integer(2.into()) * a;
            let mut r = vec![(-b + &s) / &two_a, (-b - &s) / &two_a];
            r.dedup();
            r
        }
        Some(0) | None => vec![],
        _ => u.rational_roots(),
    }
}

/// Rational lines through `p` inside `x`.
pub fn lines_through_point(
    x: &CubicHypersurface,
    p: &ProjPoint,
    search_bound: u64,
) -> Result<LineSearch> {
    let s = tangent_section(x, p)?;
    lines_in_section(&s, search_bound)
}

/// As [`lines_through_point`] for an already computed section.
pub fn lines_in_section(s: &TangentSection, search_bound: u64) -> Result<LineSearch> {
    if s.f3.is_zero() && s.g.is_zero() {
        return Err(Error::Reducible("the tangent hyperplane lies in X".into()));
    }
    let (directions, exhaustive, bound_used) = if s.proj_vars() == 2 {
        let common = binary_gcd(&s.f3, &s.g);
        let dirs = if common.degree() == 0 {
            vec![]
        } else {
            binary_rational_roots(&common)
                .into_iter()
                .map(|(a, b)| ProjPoint::new(vec![a, b]).expect("nonzero root"))
                .collect()
        };
        (dirs, true, 0)
    } else if !s.g.is_zero() && !quadric_has_rational_point(&s.g).unwrap_or(true) {
        (vec![], true, 0)
    } else {
        let (base, other) = if s.g.is_zero() {
            (&s.f3, &s.g)
        } else {
            (&s.g, &s.f3)
        };
        let (zeros, used) = small_zeros(base, search_bound);
        let dirs = zeros
            .into_iter()
            .filter(|z| other.eval_int(z.coords()).is_zero())
            .collect();
        (dirs, false, used)
    };
    let mut lines: Vec<ParamCurve> = Vec::new();
    for d in directions {
        let q = s.direction_point(&d.to_rationals())?;
        lines.push(ParamCurve::line_through(&s.point, &q)?);
    }
    lines.sort_by_key(|l| l.to_string());
    lines.dedup();
    Ok(LineSearch {
        lines,
        exhaustive,
        bound_used,
    })
}

/// True when `line` is a degree-one curve contained in `x`.
pub fn verify_line(x: &CubicHypersurface, line: &ParamCurve) -> bool {
    line.degree_l() == 1
        && line.ambient_len() == x.form().n_vars()
        && line.lies_on(x.form()).unwrap_or(false)
}

/// Searches for a rational line on `x` through a rational point of height at
/// most `height_bound`.
pub fn find_line_on_x(
    x: &CubicHypersurface,
    height_bound: u64,
    search_bound: u64,
) -> Option<ParamCurve> {
    let pts = crate::search::enumerate(x, height_bound, None).ok()?;
    for q in pts.points() {
        if x.check_smooth_point(q).is_err() {
            continue;
        }
        if let Ok(found) = lines_through_point(x, q, search_bound) {
            if let Some(l) = found.lines.into_iter().next() {
                return Some(l);
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fermat() -> CubicHypersurface {
        CubicHypersurface::parse("x0^3 + x1^3 + x2^3 + x3^3", 4).unwrap()
    }

    #[test]
    fn line_through_fermat_eckardt_point() {
        let p: ProjPoint = "1:-1:0:0".parse().unwrap();
        let found = lines_through_point(&fermat(), &p, 10).unwrap();
        assert!(found.exhaustive);
        let texts: Vec<String> = found.lines.iter().map(ToString::to_string).collect();
        assert!(texts.contains(&"s;-s;t;-t".to_string()), "{texts:?}");
        assert!(found.lines.iter().all(|l| verify_line(&fermat(), l)));
    }

    /// The three rational lines of the Fermat surface are
    /// `x_a + x_b = x_c + x_d = 0` for the three pairings.
    fn on_rational_fermat_line(p: &ProjPoint) -> bool {
        let c = p.coords();
        [(0, 1, 2, 3), (0, 2, 1, 3), (0, 3, 1, 2)]
            .iter()
            .any(|&(a, b, cc, d)| (&c[a] + &c[b]).is_zero() && (&c[cc] + &c[d]).is_zero())
    }

    #[test]
    fn no_line_through_generic_fermat_point() {
        let p: ProjPoint = "3:4:5:-6".parse().unwrap();
        assert!(!on_rational_fermat_line(&p));
        let found = lines_through_point(&fermat(), &p, 10).unwrap();
        assert!(found.exhaustive);
        assert!(found.lines.is_empty());
    }

    #[test]
    fn small_zeros_of_a_quadric() {
        let q = HomForm::parse("x0^2 + x1^2 - x2^2").unwrap();
        let (z, used) = small_zeros(&q, 5);
        assert_eq!(used, 5);
        let texts: Vec<String> = z.iter().map(ToString::to_string).collect();
        assert!(texts.contains(&"3:4:5".to_string()));
        assert!(texts.contains(&"3:4:-5".to_string()));
        assert!(z.iter().all(|p| q.eval_int(p.coords()).is_zero()));
        let (none, _) = small_zeros(&HomForm::parse("x0^2 + x1^2 - 3*x2^2").unwrap(), 8);
        assert!(none.is_empty());
    }

    #[test]
    fn threefold_line_search() {
        let x = CubicHypersurface::parse("x0^3 + x1^3 + x2^3 + x3^3 + x4^3", 5).unwrap();
        let p: ProjPoint = "1:-1:0:0:0".parse().unwrap();
        let found = lines_through_point(&x, &p, 5).unwrap();
        assert!(!found.lines.is_empty());
        assert!(found.lines.iter().all(|l| verify_line(&x, l)));
    }
}
