use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::algebra::arith::Rat;
use crate::algebra::{HomForm, Matrix};
use crate::classifier::CubicHypersurface;
use crate::error::{Error, Result};
use crate::heights::{height, ProjPoint};

/// Default moduli for the prefilter; cubes are sparse modulo each.
pub const DEFAULT_MODULI: [u64; 3] = [7, 9, 13];

/// Largest height bound accepted by the fixed-width enumerator.
pub const MAX_HEIGHT_BOUND: u64 = 100_000;

/// Rational points of a hypersurface up to a height bound, in lexicographic
/// order of their canonical coordinates.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PointStream {
    pub hypersurface: String,
    pub height_bound: u64,
    /// Linear forms cutting out the searched subspace (empty: all of X).
    pub filter: Vec<String>,
    pub points: Vec<ProjPoint>,
}

impl PointStream {
    pub fn points(&self) -> &[ProjPoint] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Points of height at most `b`.
    pub fn up_to(&self, b: u64) -> impl Iterator<Item = &ProjPoint> {
        let b = BigInt::from(b);
        self.points.iter().filter(move |p| height(p) <= b)
    }
}

#[derive(Debug, Clone)]
pub struct EnumerateOptions {
    pub moduli: Vec<u64>,
}

impl Default for EnumerateOptions {
    fn default() -> Self {
        EnumerateOptions {
            moduli: DEFAULT_MODULI.to_vec(),
        }
    }
}

/// Number of prefixes the enumerator visits for `vars` free coordinates.
pub fn prefix_count(free_vars: usize, b: u64) -> u128 {
    (2 * b as u128 + 1).pow(free_vars.saturating_sub(1) as u32)
}

/// All canonical points of `x` of height at most `b` on which every form of
/// `filter` (linear) vanishes.
pub fn enumerate(x: &CubicHypersurface, b: u64, filter: Option<&[HomForm]>) -> Result<PointStream> {
    enumerate_with(x, b, filter, &EnumerateOptions::default())
}

/// Integer polynomial in several variables, as (exponents, coefficient).
pub(super) type IntPoly = Vec<(Vec<u32>, i128)>;

pub(super) struct Plan {
    /// Cubic coefficients (constant term first) in the last free variable,
    /// as polynomials in the other free variables.
    pub(super) coeffs: [IntPoly; 4],
    /// `x_i = (row . u) / den` for each ambient coordinate.
    rows: Vec<(Vec<i128>, i128)>,
    pub(super) free: usize,
}

fn to_i128(c: &BigInt) -> Result<i128> {
    c.to_i128()
        .ok_or_else(|| Error::Overflow(format!("coefficient {c} exceeds 128 bits")))
}

pub(super) fn plan(form: &HomForm, filter: &[HomForm]) -> Result<Plan> {
    let n1 = form.n_vars();
    let basis: Vec<Vec<Rat>> = if filter.is_empty() {
        (0..n1)
            .map(|i| {
                (0..n1)
                    .map(|j| Rat::from_integer(((i == j) as i64).into()))
                    .collect()
            })
            .collect()
    } else {
        for f in filter {
            if f.degree() != 1 || f.n_vars() != n1 {
                return Err(Error::Invalid(format!(
                    "filter form '{f}' is not linear in {n1} variables"
                )));
            }
        }
        let a = Matrix::from_rows(
            filter
                .iter()
                .map(|f| {
                    (0..n1)
                        .map(|i| {
                            let mut e = vec![0u32; n1];
                            e[i] = 1;
                            f.coeff(&e)
                        })
                        .collect()
                })
                .collect(),
        );
        a.kernel()
    };
    let free = basis.len();
    if free == 0 {
        return Err(Error::Invalid("filter cuts out the empty set".into()));
    }
    let k = Matrix::from_columns(&basis);
    let g = form.substitute_rows(&k)?;
    let (_, g) = g.primitive();
    let last = free - 1;
    let mut coeffs: [IntPoly; 4] = Default::default();
    for (d, c) in g.coefficients_in(last).into_iter().enumerate().take(4) {
        // each c_k keeps the common scale of the primitive form
        coeffs[d] = c
            .terms()
            .map(|(e, v)| Ok((e[..last].to_vec(), to_i128(&v.to_integer())?)))
            .collect::<Result<_>>()?;
    }
    let rows = (0..n1)
        .map(|i| {
            let r = k.row(i);
            let den = r.iter().fold(BigInt::from(1), |acc, c| acc.lcm(c.denom()));
            let ints = r
                .iter()
                .map(|c| to_i128(&(c.numer() * (&den / c.denom()))))
                .collect::<Result<Vec<_>>>()?;
            Ok((ints, to_i128(&den)?))
        })
        .collect::<Result<_>>()?;
    Ok(Plan { coeffs, rows, free })
}

pub(super) fn eval_poly(p: &IntPoly, u: &[i64]) -> Option<i128> {
    let mut acc: i128 = 0;
    for (e, c) in p {
        let mut t = *c;
        for (&ui, &k) in u.iter().zip(e) {
            for _ in 0..k {
                t = t.checked_mul(ui as i128)?;
            }
        }
        acc = acc.checked_add(t)?;
    }
    Some(acc)
}

/// Horner evaluation of `c0 + c1 y + c2 y^2 + c3 y^3`.
fn eval_cubic(c: &[i128; 4], y: i64) -> Option<i128> {
    let y = y as i128;
    let mut acc = c[3];
    for k in (0..3).rev() {
        acc = acc.checked_mul(y)?.checked_add(c[k])?;
    }
    Some(acc)
}

pub(super) fn has_root_mod(c: &[i128; 4], m: u64) -> bool {
    let m = m as i128;
    let r: Vec<i128> = c.iter().map(|v| v.rem_euclid(m)).collect();
    (0..m).any(|y| (((r[3] * y + r[2]) % m * y + r[1]) % m * y + r[0]) % m == 0)
}

pub(super) enum Roots {
    All,
    Some(Vec<i64>),
}

pub(super) fn overflow() -> Error {
    Error::Overflow("cubic evaluation exceeds 128 bits".into())
}

/// Integer roots in `[-b, b]`, located by bisection on monotone pieces.
pub(super) fn integer_roots(c: &[i128; 4], b: i64) -> Result<Roots> {
    let deg = (0..4).rev().find(|&k| c[k] != 0);
    let Some(deg) = deg else {
        return Ok(Roots::All);
    };
    if deg == 0 {
        return Ok(Roots::Some(vec![]));
    }
    if deg == 1 {
        return Ok(Roots::Some(if c[0] % c[1] == 0 {
            let y = -c[0] / c[1];
            if y.abs() <= b as i128 {
                vec![y as i64]
            } else {
                vec![]
            }
        } else {
            vec![]
        }));
    }
    // critical points, padded so float error cannot hide a turning point
    let mut crit: Vec<f64> = Vec::new();
    if deg == 3 {
        let (a, bb, cc) = (3.0 * c[3] as f64, 2.0 * c[2] as f64, c[1] as f64);
        let disc = bb * bb - 4.0 * a * cc;
        // the inflection point covers nearly coincident turning points
        crit.push(-bb / (2.0 * a));
        if disc >= 0.0 {
            let s = disc.sqrt();
            crit.push((-bb + s) / (2.0 * a));
            crit.push((-bb - s) / (2.0 * a));
        }
    } else {
        crit.push(-(c[1] as f64) / (2.0 * c[2] as f64));
    }
    let mut breaks = vec![-b, b];
    for z in crit {
        if !z.is_finite() || z < -(b as f64) - 2.0 || z > b as f64 + 2.0 {
            continue;
        }
        let f = z.floor() as i64;
        for d in -1..=2 {
            breaks.push((f + d).clamp(-b, b));
        }
    }
    breaks.sort_unstable();
    breaks.dedup();
    let mut out = Vec::new();
    let mut prev: Option<(i64, i128)> = None;
    for &y in &breaks {
        let v = eval_cubic(c, y).ok_or_else(overflow)?;
        if v == 0 {
            out.push(y);
        }
        if let Some((py, pv)) = prev {
            if pv != 0 && v != 0 && (pv < 0) != (v < 0) {
                let (mut lo, mut hi) = (py, y);
                while hi - lo > 1 {
                    let mid = lo + (hi - lo) / 2;
                    let mv = eval_cubic(c, mid).ok_or_else(overflow)?;
                    if mv == 0 {
                        out.push(mid);
                        break;
                    }
                    if (mv < 0) == (pv < 0) {
                        lo = mid;
                    } else {
                        hi = mid;
                    }
                }
            }
        }
        prev = Some((y, v));
    }
    out.sort_unstable();
    out.dedup();
    Ok(Roots::Some(out))
}

/// Accepts `u` if it gives a canonical integer point of height at most `b`.
fn ambient(plan: &Plan, u: &[i64], b: i64) -> Option<Vec<i64>> {
    let mut x = Vec::with_capacity(plan.rows.len());
    for (row, den) in &plan.rows {
        let mut s: i128 = 0;
        for (&r, &ui) in row.iter().zip(u) {
            s += r * ui as i128;
        }
        if s % den != 0 {
            return None;
        }
        let v = s / den;
        if v.abs() > b as i128 {
            return None;
        }
        x.push(v as i64);
    }
    let first = x.iter().find(|&&c| c != 0)?;
    if *first < 0 {
        return None;
    }
    let g = x.iter().fold(0i64, |acc, &c| acc.gcd(&c));
    (g == 1).then_some(x)
}

fn scan_chunk(plan: &Plan, head: Option<i64>, b: i64, moduli: &[u64]) -> Result<Vec<Vec<i64>>> {
    let np = plan.free - 1;
    let mut out = Vec::new();
    let mut prefix = vec![-b; np];
    if let Some(h) = head {
        prefix[0] = h;
    }
    let start = usize::from(head.is_some());
    loop {
        let mut c = [0i128; 4];
        for (k, poly) in plan.coeffs.iter().enumerate() {
            c[k] = eval_poly(poly, &prefix).ok_or_else(overflow)?;
        }
        if moduli.iter().all(|&m| has_root_mod(&c, m)) {
            let ys: Vec<i64> = match integer_roots(&c, b)? {
                Roots::All => (-b..=b).collect(),
                Roots::Some(v) => v,
            };
            let mut u = prefix.clone();
            u.push(0);
            for y in ys {
                u[np] = y;
                if let Some(x) = ambient(plan, &u, b) {
                    out.push(x);
                }
            }
        }
        let mut k = start;
        loop {
            if k >= np {
                return Ok(out);
            }
            prefix[k] += 1;
            if prefix[k] <= b {
                break;
            }
            prefix[k] = -b;
            k += 1;
        }
    }
}

fn finish(
    x: &CubicHypersurface,
    b: u64,
    filter: &[HomForm],
    mut pts: Vec<Vec<i64>>,
) -> PointStream {
    pts.sort_unstable();
    pts.dedup();
    PointStream {
        hypersurface: x.form().to_string(),
        height_bound: b,
        filter: filter.iter().map(ToString::to_string).collect(),
        points: pts
            .into_iter()
            .map(|v| ProjPoint::from_canonical(v.into_iter().map(BigInt::from).collect()))
            .collect(),
    }
}

fn check_bound(b: u64) -> Result<i64> {
    if b == 0 {
        return Err(Error::Invalid("height bound must be at least 1".into()));
    }
    if b > MAX_HEIGHT_BOUND {
        return Err(Error::Overflow(format!(
            "height bound {b} exceeds {MAX_HEIGHT_BOUND}"
        )));
    }
    Ok(b as i64)
}

/// As [`enumerate`] with explicit prefilter moduli. The prefix space is
/// split on its first coordinate; chunks run in parallel and are merged in
/// order, so the output does not depend on the thread count.
pub fn enumerate_with(
    x: &CubicHypersurface,
    b: u64,
    filter: Option<&[HomForm]>,
    opts: &EnumerateOptions,
) -> Result<PointStream> {
    let bi = check_bound(b)?;
    let filter = filter.unwrap_or(&[]);
    let plan = plan(x.form(), filter)?;
    let chunks: Vec<Vec<Vec<i64>>> = if plan.free >= 2 {
        (-bi..=bi)
            .into_par_iter()
            .map(|h| scan_chunk(&plan, Some(h), bi, &opts.moduli))
            .collect::<Result<_>>()?
    } else {
        vec![scan_chunk(&plan, None, bi, &opts.moduli)?]
    };
    Ok(finish(x, b, filter, chunks.into_iter().flatten().collect()))
}

/// Reference enumerator: every integer vector in the box, no prefilter.
pub fn enumerate_naive(
    x: &CubicHypersurface,
    b: u64,
    filter: Option<&[HomForm]>,
) -> Result<PointStream> {
    let bi = check_bound(b)?;
    let filter = filter.unwrap_or(&[]);
    let n1 = x.form().n_vars();
    let chunks: Vec<Vec<Vec<i64>>> = (0..=bi)
        .into_par_iter()
        .map(|h| {
            let mut out = Vec::new();
            let mut v = vec![-bi; n1];
            v[0] = h;
            loop {
                let big: Vec<BigInt> = v.iter().map(|&c| BigInt::from(c)).collect();
                if let Ok(p) = ProjPoint::new(big.clone()) {
                    if p.coords() == big.as_slice()
                        && x.form().eval_int(&big).is_zero()
                        && filter.iter().all(|f| f.eval_int(&big).is_zero())
                    {
                        out.push(v.clone());
                    }
                }
                let mut k = 1;
                loop {
                    if k == n1 {
                        return out;
                    }
                    v[k] += 1;
                    if v[k] <= bi {
                        break;
                    }
                    v[k] = -bi;
                    k += 1;
                }
            }
        })
        .collect();
    Ok(finish(x, b, filter, chunks.into_iter().flatten().collect()))
}
