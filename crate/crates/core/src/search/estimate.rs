use serde::Serialize;

use crate::algebra::Place;
use crate::error::{Error, Result};
use crate::heights::{delta_exponent, dist, DistValue, ProjPoint};

use super::PointStream;

/// One radius of the estimate envelope.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EnvelopeRow {
    pub epsilon: DistValue,
    /// Points with `0 < dist <= epsilon`.
    pub count: usize,
    /// Minimum of `log H(x) / -log dist(P, x)` over those points.
    pub alpha_hat: Option<f64>,
    pub witness: Option<ProjPoint>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AlphaEstimate {
    pub target: ProjPoint,
    pub place: Place,
    pub rows: Vec<EnvelopeRow>,
    /// `alpha_hat` at the smallest radius with at least three witnesses
    /// (or the smallest nonempty one when no radius has three).
    pub extrapolated: f64,
    pub extrapolated_epsilon: DistValue,
    pub height_bound_used: u64,
    pub points_considered: usize,
}

/// Minimum number of witnesses for the extrapolated row.
pub const MIN_WITNESSES: usize = 3;

/// Geometric radii `2^-1, ..., 2^-j`.
pub fn geometric_epsilons(j: u32) -> Vec<DistValue> {
    (1..=j).map(DistValue::pow2_neg).collect()
}

/// Empirical approximation constant of `p` from the points of `stream`.
pub fn empirical_alpha(
    stream: &PointStream,
    p: &ProjPoint,
    v: Place,
    epsilons: Option<&[DistValue]>,
) -> Result<AlphaEstimate> {
    estimate_from_points(stream.points(), stream.height_bound, p, v, epsilons)
}

/// As [`empirical_alpha`] for any list of points; the default radii run
/// down to the smallest power of two that still has a witness.
pub fn estimate_from_points(
    points: &[ProjPoint],
    height_bound: u64,
    p: &ProjPoint,
    v: Place,
    epsilons: Option<&[DistValue]>,
) -> Result<AlphaEstimate> {
    let mut near: Vec<(DistValue, f64, &ProjPoint)> = Vec::new();
    for x in points {
        let d = dist(p, x, v)?;
        if d.is_zero() {
            continue;
        }
        let delta = delta_exponent(x, &d);
        near.push((d, delta, x));
    }
    let eps: Vec<DistValue> = match epsilons {
        Some(e) => {
            if e.windows(2).any(|w| w[1] >= w[0]) || e.iter().any(DistValue::is_zero) {
                return Err(Error::Invalid(
                    "epsilons must be positive and strictly decreasing".into(),
                ));
            }
            e.to_vec()
        }
        None => {
            let smallest = near.iter().map(|n| &n.0).min();
            let j = smallest.map_or(1, |d| {
                (d.neg_ln() / std::f64::consts::LN_2).floor().max(1.0) as u32
            });
            geometric_epsilons(j)
        }
    };
    let mut rows = Vec::with_capacity(eps.len());
    for e in &eps {
        let mut best: Option<(f64, &ProjPoint)> = None;
        let mut count = 0;
        for (d, delta, x) in &near {
            if d > e {
                continue;
            }
            count += 1;
            if best.is_none_or(|(b, _)| *delta < b) {
                best = Some((*delta, x));
            }
        }
        rows.push(EnvelopeRow {
            epsilon: e.clone(),
            count,
            alpha_hat: best.map(|b| b.0),
            witness: best.map(|b| b.1.clone()),
        });
    }
    if rows.first().is_none_or(|r| r.count == 0) {
        return Err(Error::NoApproximants);
    }
    let pick = rows
        .iter()
        .rev()
        .find(|r| r.count >= MIN_WITNESSES)
        .or_else(|| rows.iter().rev().find(|r| r.count > 0))
        .expect("first row is nonempty");
    Ok(AlphaEstimate {
        target: p.clone(),
        place: v,
        extrapolated: pick.alpha_hat.expect("nonempty row"),
        extrapolated_epsilon: pick.epsilon.clone(),
        rows,
        height_bound_used: height_bound,
        points_considered: near.len(),
    })
}
