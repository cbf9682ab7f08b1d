use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::algebra::arith::{ln_bigint, rat_to_f64, Rat};
use crate::algebra::{HomForm, Place};
use crate::classifier::CubicHypersurface;
use crate::error::{Error, Result};
use crate::heights::{dist, height, ProjPoint};

use super::window::{enumerate_window, Window};
use super::{enumerate, prefix_count, PointStream};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LiouvilleRow {
    pub height_bound: u64,
    /// Points examined: all of height at most the exhaustive bound, plus
    /// those found in the windows beyond it.
    pub points: usize,
    /// `min H(y) dist(P, y)^gamma` over points off the excluded locus.
    pub min_product: f64,
    pub witness: Option<ProjPoint>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LiouvilleReport {
    pub target: ProjPoint,
    pub place: Place,
    #[serde(with = "crate::algebra::arith::rat_text")]
    pub gamma: Rat,
    pub excluded_locus: Vec<String>,
    /// Height up to which every point was examined.
    pub exhaustive_bound: u64,
    pub rows: Vec<LiouvilleRow>,
    /// Minimum over the largest height bound.
    pub min_product: f64,
    /// Least-squares slope of `log min_product` against `log B`.
    pub trend: f64,
    pub flags: Vec<String>,
}

/// Exponent up to which the lower bound is certified on cubic hypersurfaces.
pub const CERTIFIED_GAMMA: i64 = 2;

/// Slope below which the trend is reported as decaying.
pub const TREND_TOLERANCE: f64 = -0.1;

/// Empirical check of `H(y) dist(P, y)^gamma >= M` for points `y` of `x` off
/// the common zeros of `excluded`, at each height bound in `bounds`.
pub fn liouville_check(
    x: &CubicHypersurface,
    p: &ProjPoint,
    v: Place,
    gamma: &Rat,
    bounds: &[u64],
    excluded: &[HomForm],
) -> Result<LiouvilleReport> {
    let bmax = *bounds
        .iter()
        .max()
        .ok_or_else(|| Error::Invalid("at least one height bound is required".into()))?;
    let stream = enumerate(x, bmax, None)?;
    liouville_from_stream(&stream, p, v, gamma, bounds, excluded)
}

/// As [`liouville_check`] on an already enumerated stream.
pub fn liouville_from_stream(
    stream: &PointStream,
    p: &ProjPoint,
    v: Place,
    gamma: &Rat,
    bounds: &[u64],
    excluded: &[HomForm],
) -> Result<LiouvilleReport> {
    let bounds = sorted_bounds(bounds, gamma)?;
    if bounds.last().is_some_and(|&b| b > stream.height_bound) {
        return Err(Error::Invalid(
            "height bound exceeds the enumerated range".into(),
        ));
    }
    let samples = samples(stream.points(), p, v, gamma, excluded)?;
    let bmax = *bounds.last().expect("bounds are nonempty");
    Ok(report(samples, p, v, gamma, &bounds, excluded, bmax))
}

/// As [`liouville_from_stream`] for bounds beyond the stream. Only a point
/// closer to `p` than the stream's floor allows can lower that floor, so
/// beyond the stream the search is confined to windows around `p`: a band
/// at the real place, congruences modulo `p^e` at a p-adic one. Fails when
/// the windows would take more than `budget` prefixes.
#[allow(clippy::too_many_arguments)]
pub fn liouville_windowed(
    x: &CubicHypersurface,
    stream: &PointStream,
    p: &ProjPoint,
    v: Place,
    gamma: &Rat,
    bounds: &[u64],
    excluded: &[HomForm],
    budget: u128,
) -> Result<LiouvilleReport> {
    let bounds = sorted_bounds(bounds, gamma)?;
    let bmax = *bounds.last().expect("bounds are nonempty");
    if bmax <= stream.height_bound {
        return liouville_from_stream(stream, p, v, gamma, &bounds, excluded);
    }
    let mut samples = samples(stream.points(), p, v, gamma, excluded)?;
    let floor = samples
        .iter()
        .map(|s| s.1)
        .fold(f64::INFINITY, f64::min)
        .exp();
    let n1 = x.form().n_vars();
    let windows = windows(p, v, rat_to_f64(gamma), floor, bmax, stream.height_bound);
    let cost = match &windows {
        Some(ws) => ws
            .iter()
            .map(|(b, w)| w.prefix_count(p, n1, *b))
            .sum::<Result<u128>>()?,
        None => prefix_count(n1, bmax),
    };
    if cost > budget {
        return Err(Error::Invalid(format!(
            "the check to height {bmax} needs {cost} prefixes, over the budget of {budget}; lower the height bounds"
        )));
    }
    let extra: Vec<ProjPoint> = match windows {
        Some(ws) => {
            let mut pts = Vec::new();
            for (b, w) in ws {
                pts.extend(enumerate_window(x, b, p, w)?);
            }
            pts.sort_unstable();
            pts.dedup();
            pts
        }
        None => enumerate(x, bmax, None)?.points,
    };
    let reach = BigInt::from(stream.height_bound);
    let beyond: Vec<ProjPoint> = extra.into_iter().filter(|y| height(y) > reach).collect();
    samples.extend(self::samples(&beyond, p, v, gamma, excluded)?);
    Ok(report(
        samples,
        p,
        v,
        gamma,
        &bounds,
        excluded,
        stream.height_bound,
    ))
}

/// Windows holding every point of height at most `bmax` beyond `reach` whose
/// product is below `floor`; `None` when no window is small enough to help.
fn windows(
    p: &ProjPoint,
    v: Place,
    g: f64,
    floor: f64,
    bmax: u64,
    reach: u64,
) -> Option<Vec<(u64, Window)>> {
    // a point beyond `reach` at distance 1 has product at least `reach`
    if !(g > 0.0 && floor <= reach as f64) {
        return None;
    }
    let hp = p.coords().iter().map(|c| c.abs()).max()?.to_f64()?;
    // margin against rounding in the float bounds
    let slack = 1.0 + 1e-9;
    match v {
        Place::Real => {
            // H dist^g < floor forces |p_k y_j - p_j y_k| < H(p) floor^(1/g) H(y)^(1 - 1/g)
            let w = hp * floor.powf(1.0 / g) * (bmax as f64).powf(1.0 - 1.0 / g).max(1.0) * slack;
            Some(vec![(
                bmax,
                Window::Band {
                    width: w.ceil() as u64,
                },
            )])
        }
        Place::Padic(q) => {
            // dist = q^-e with H < floor q^(e g); beyond 2 H(p) bmax no cross term has valuation e
            let mut out = Vec::new();
            let mut qe: u128 = q as u128;
            while (qe as f64) <= 2.0 * hp * bmax as f64 {
                let b = (floor * (qe as f64).powf(g) * slack).floor() as u64;
                let b = b.min(bmax);
                if b > reach {
                    out.push((
                        b,
                        Window::Congruence {
                            modulus: u64::try_from(qe).ok()?,
                        },
                    ));
                }
                qe = qe.checked_mul(q as u128)?;
            }
            Some(out)
        }
    }
}

fn sorted_bounds(bounds: &[u64], gamma: &Rat) -> Result<Vec<u64>> {
    if gamma < &Rat::from_integer(0.into()) {
        return Err(Error::Invalid("gamma must be non-negative".into()));
    }
    let mut bounds = bounds.to_vec();
    bounds.sort_unstable();
    bounds.dedup();
    if bounds.is_empty() {
        return Err(Error::Invalid(
            "at least one height bound is required".into(),
        ));
    }
    Ok(bounds)
}

/// (height, log product, point) for every point off the excluded locus.
fn samples<'a>(
    points: impl IntoIterator<Item = &'a ProjPoint>,
    p: &ProjPoint,
    v: Place,
    gamma: &Rat,
    excluded: &[HomForm],
) -> Result<Vec<(BigInt, f64, ProjPoint)>> {
    let g = rat_to_f64(gamma);
    let mut out = Vec::new();
    for y in points {
        if !excluded.is_empty() && excluded.iter().all(|f| f.eval_int(y.coords()).is_zero()) {
            continue;
        }
        let d = dist(p, y, v)?;
        if d.is_zero() {
            continue;
        }
        let h = height(y);
        let lp = ln_bigint(&h) - g * d.neg_ln();
        out.push((h, lp, y.clone()));
    }
    Ok(out)
}

fn report(
    samples: Vec<(BigInt, f64, ProjPoint)>,
    p: &ProjPoint,
    v: Place,
    gamma: &Rat,
    bounds: &[u64],
    excluded: &[HomForm],
    exhaustive_bound: u64,
) -> LiouvilleReport {
    let mut rows = Vec::new();
    for &b in bounds {
        let bb = BigInt::from(b);
        let mut best: Option<(f64, &ProjPoint)> = None;
        let mut count = 0;
        for (h, lp, y) in &samples {
            if h > &bb {
                continue;
            }
            count += 1;
            if best.is_none_or(|(m, _)| *lp < m) {
                best = Some((*lp, y));
            }
        }
        rows.push(LiouvilleRow {
            height_bound: b,
            points: count,
            min_product: best.map_or(f64::INFINITY, |b| b.0.exp()),
            witness: best.map(|b| b.1.clone()),
        });
    }
    let fit: Vec<(f64, f64)> = rows
        .iter()
        .filter(|r| r.min_product.is_finite() && r.min_product > 0.0)
        .map(|r| ((r.height_bound as f64).ln(), r.min_product.ln()))
        .collect();
    let trend = slope(&fit);
    let mut flags = Vec::new();
    if gamma > &Rat::from_integer(CERTIFIED_GAMMA.into()) {
        flags.push("gamma beyond certified range".to_string());
    }
    if trend < TREND_TOLERANCE {
        flags.push(format!("decaying trend {trend:.3}"));
    }
    let min_product = rows.last().map_or(f64::INFINITY, |r| r.min_product);
    LiouvilleReport {
        target: p.clone(),
        place: v,
        gamma: gamma.clone(),
        excluded_locus: excluded.iter().map(ToString::to_string).collect(),
        exhaustive_bound: exhaustive_bound.min(bounds.last().copied().unwrap_or(0)),
        rows,
        min_product,
        trend,
        flags,
    }
}

/// Least-squares slope; zero for fewer than two distinct abscissae.
pub fn slope(pts: &[(f64, f64)]) -> f64 {
    let n = pts.len() as f64;
    if pts.len() < 2 {
        return 0.0;
    }
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    if sxx == 0.0 {
        return 0.0;
    }
    pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum::<f64>() / sxx
}
