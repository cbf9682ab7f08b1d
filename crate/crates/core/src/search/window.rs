use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;
use rayon::prelude::*;

use crate::algebra::arith::Rat;
use crate::algebra::Matrix;
use crate::classifier::CubicHypersurface;
use crate::error::{Error, Result};
use crate::heights::ProjPoint;

use super::enumerate::{
    eval_poly, has_root_mod, integer_roots, overflow, plan, Roots, DEFAULT_MODULI,
};

/// A neighbourhood of a target point `p`, stated through a pivot coordinate
/// `k`: each `y_j` is confined by `y_k` to a residue class or an interval.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Window {
    /// `|p_k y_j - p_j y_k| <= width` for every `j`, with `|p_k|` largest.
    Band { width: u64 },
    /// `p_k y_j = p_j y_k` modulo `modulus` for every `j`, with `p_k` a unit.
    Congruence { modulus: u64 },
}

impl Window {
    fn pivot(&self, p: &[i128]) -> Result<usize> {
        let candidates = (0..p.len()).filter(|&k| match self {
            Window::Band { .. } => true,
            Window::Congruence { modulus } => p[k].gcd(&(*modulus as i128)) == 1,
        });
        // first index of largest absolute value
        candidates
            .max_by_key(|&k| (p[k].abs(), std::cmp::Reverse(k)))
            .filter(|&k| p[k] != 0)
            .ok_or_else(|| {
                Error::Invalid("no coordinate of the target is a unit for the window".into())
            })
    }

    /// Number of prefixes [`enumerate_window`] visits around `p` in `n1`
    /// coordinates up to height `b`.
    pub fn prefix_count(&self, p: &ProjPoint, n1: usize, b: u64) -> Result<u128> {
        let pv = to_i128s(p)?;
        let k = self.pivot(&pv)?;
        let per = match *self {
            Window::Band { width } => {
                (2 * width as u128 / pv[k].unsigned_abs() + 1).min(2 * b as u128 + 1)
            }
            Window::Congruence { modulus } => {
                (2 * b as u128 / modulus as u128 + 1).min(2 * b as u128 + 1)
            }
        };
        Ok((2 * b as u128 + 1) * per.pow(n1.saturating_sub(2) as u32))
    }

    /// Values of `y_j` allowed by the window when the pivot is `y_k = z`,
    /// as `(first, step, last)`.
    fn range(&self, pk: i128, pj: i128, inv: i128, z: i64, b: i64) -> (i64, i64, i64) {
        let z = z as i128;
        let b = b as i128;
        match *self {
            Window::Band { width } => {
                let w = width as i128;
                let lo = Integer::div_ceil(&(pj * z - w), &pk).max(-b);
                let hi = Integer::div_floor(&(pj * z + w), &pk).min(b);
                (lo as i64, 1, hi as i64)
            }
            Window::Congruence { modulus } => {
                let q = modulus as i128;
                let r = (pj.rem_euclid(q) * inv % q * z.rem_euclid(q)) % q;
                let lo = -b + (r + b).rem_euclid(q);
                (lo as i64, q.min(i64::MAX as i128) as i64, b as i64)
            }
        }
    }

    fn admits(&self, pk: i128, pj: i128, yk: i64, yj: i64) -> bool {
        let c = pk * yj as i128 - pj * yk as i128;
        match *self {
            Window::Band { width } => c.unsigned_abs() <= width as u128,
            Window::Congruence { modulus } => c.rem_euclid(modulus as i128) == 0,
        }
    }
}

fn to_i128s(p: &ProjPoint) -> Result<Vec<i128>> {
    p.coords()
        .iter()
        .map(|c: &BigInt| {
            c.to_i128()
                .ok_or_else(|| Error::Overflow(format!("coordinate {c} exceeds 128 bits")))
        })
        .collect()
}

/// All canonical points of `x` of height at most `b` inside window `w`
/// around `p`, in lexicographic order.
pub fn enumerate_window(
    x: &CubicHypersurface,
    b: u64,
    p: &ProjPoint,
    w: Window,
) -> Result<Vec<ProjPoint>> {
    let bi = b as i64;
    if b == 0 || b > super::MAX_HEIGHT_BOUND {
        return Err(Error::Invalid(format!("height bound {b} out of range")));
    }
    let n1 = x.form().n_vars();
    if p.len() != n1 {
        return Err(Error::DimensionMismatch {
            expected: n1,
            got: p.len(),
        });
    }
    let mut pv = to_i128s(p)?;
    let k = w.pivot(&pv)?;
    if pv[k] < 0 {
        pv.iter_mut().for_each(|c| *c = -*c);
    }
    let pk = pv[k];
    let inv = match w {
        Window::Congruence { modulus } => {
            let q = modulus as i128;
            pk.rem_euclid(q).extended_gcd(&q).x.rem_euclid(q)
        }
        Window::Band { .. } => 0,
    };
    // pivot first, then the other coordinates in order; the last is solved
    let order: Vec<usize> = std::iter::once(k)
        .chain((0..n1).filter(|&j| j != k))
        .collect();
    let perm = Matrix::from_rows(
        (0..n1)
            .map(|i| {
                (0..n1)
                    .map(|c| Rat::from_integer(((order[c] == i) as i64).into()))
                    .collect()
            })
            .collect(),
    );
    let plan = plan(&x.form().substitute_rows(&perm)?, &[])?;
    let np = n1 - 1;
    let last = order[np];
    let scan = |z: i64| -> Result<Vec<Vec<i64>>> {
        let ranges: Vec<(i64, i64, i64)> = order[1..np]
            .iter()
            .map(|&j| w.range(pk, pv[j], inv, z, bi))
            .collect();
        let mut out = Vec::new();
        if ranges.iter().any(|r| r.0 > r.2) {
            return Ok(out);
        }
        let mut u: Vec<i64> = std::iter::once(z)
            .chain(ranges.iter().map(|r| r.0))
            .collect();
        loop {
            let mut c = [0i128; 4];
            for (d, poly) in plan.coeffs.iter().enumerate() {
                c[d] = eval_poly(poly, &u).ok_or_else(overflow)?;
            }
            if DEFAULT_MODULI.iter().all(|&m| has_root_mod(&c, m)) {
                let ys: Vec<i64> = match integer_roots(&c, bi)? {
                    Roots::All => (-bi..=bi).collect(),
                    Roots::Some(v) => v,
                };
                for y in ys {
                    if !w.admits(pk, pv[last], z, y) {
                        continue;
                    }
                    let mut pt = vec![0i64; n1];
                    for (i, &j) in order.iter().enumerate() {
                        pt[j] = if i == np { y } else { u[i] };
                    }
                    let g = pt.iter().fold(0i64, |acc, &c| acc.gcd(&c));
                    if g != 1 {
                        continue;
                    }
                    if pt.iter().find(|&&c| c != 0).is_some_and(|&c| c < 0) {
                        pt.iter_mut().for_each(|c| *c = -*c);
                    }
                    out.push(pt);
                }
            }
            let mut i = 1;
            loop {
                if i > ranges.len() {
                    return Ok(out);
                }
                let (lo, step, hi) = ranges[i - 1];
                if u[i] <= hi - step {
                    u[i] += step;
                    break;
                }
                u[i] = lo;
                i += 1;
            }
        }
    };
    let chunks: Vec<Vec<Vec<i64>>> = (-bi..=bi)
        .into_par_iter()
        .map(scan)
        .collect::<Result<_>>()?;
    let mut pts: Vec<Vec<i64>> = chunks.into_iter().flatten().collect();
    pts.sort_unstable();
    pts.dedup();
    Ok(pts
        .into_iter()
        .map(|v| ProjPoint::from_canonical(v.into_iter().map(BigInt::from).collect()))
        .collect())
}
