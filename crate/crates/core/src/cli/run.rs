use serde::Serialize;

use crate::algebra::arith::Rat;
use crate::algebra::{HomForm, Place};
use crate::alpha::Alpha;
use crate::classifier::{
    classify_with, tangent_section, Case, ClassificationResult, ClassifyOptions,
};
use crate::curves::{
    branch_data, curve_alpha, projection_curve, residual_conic, sequence_on_curve, ParamCurve,
    ResidualConic,
};
use crate::error::{Error, Result};
use crate::heights::{DistValue, ProjPoint};
use crate::search::{
    enumerate, estimate_from_points, liouville_windowed, prefix_count, AlphaEstimate,
    LiouvilleReport, PointStream,
};

use super::spec::{Problem, ProblemSpec};

/// Prefixes the full enumeration of X may visit.
pub const FULL_PREFIX_BUDGET: u128 = 8_120_601;

/// Prefixes the enumeration of the tangent section may visit.
pub const SECTION_PREFIX_BUDGET: u128 = 25_000_000;

/// Terms generated for each approximating sequence.
pub const SEQUENCE_TERMS: usize = 30;

/// Slack allowed between the predicted and the empirical constant.
pub const VERDICT_TOLERANCE: f64 = 0.25;

/// Largest bound not above `want` whose enumeration fits in `budget`.
pub fn capped_bound(free_vars: usize, want: u64, budget: u128) -> u64 {
    let mut b = want;
    while b > 1 && prefix_count(free_vars, b) > budget {
        b = b * 9 / 10;
    }
    b.max(1)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SequenceSummary {
    pub points: usize,
    pub last_point: Option<ProjPoint>,
    pub last_delta: Option<f64>,
    pub provenance: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConstructedCurve {
    /// `line_through_point`, `residual_conic` or `projection_curve`.
    pub kind: String,
    pub curve: ParamCurve,
    pub alpha: Alpha,
    pub sequence: Option<SequenceSummary>,
    pub detail: serde_json::Value,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConstructionReport {
    pub curves: Vec<ConstructedCurve>,
    pub notes: Vec<String>,
}

impl ConstructionReport {
    /// Smallest constant among the constructed curves.
    pub fn best_alpha(&self) -> Option<&Alpha> {
        self.curves.iter().map(|c| &c.alpha).min()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum EstimateOutcome {
    Estimated {
        estimate: AlphaEstimate,
    },
    /// No enumerated point within the largest radius: empirically isolated.
    NoApproximants {
        largest_epsilon: Option<DistValue>,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EstimateReport {
    /// All points of X up to this height were searched.
    pub full_height_bound: u64,
    /// Points on the tangent hyperplane were searched up to this height.
    pub section_height_bound: u64,
    pub points: usize,
    pub outcome: EstimateOutcome,
}

impl EstimateReport {
    /// The extrapolated constant; infinite when nothing approximates.
    pub fn extrapolated(&self) -> f64 {
        match &self.outcome {
            EstimateOutcome::Estimated { estimate } => estimate.extrapolated,
            EstimateOutcome::NoApproximants { .. } => f64::INFINITY,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "kind", content = "details", rename_all = "snake_case")]
pub enum Verdict {
    Consistent,
    Tension(Vec<String>),
}

/// Everything a run produced. Serialized as `report.json`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunReport {
    pub command: String,
    pub version: String,
    pub spec: ProblemSpec,
    pub classification: Option<ClassificationResult>,
    pub construction: Option<ConstructionReport>,
    pub estimate: Option<EstimateReport>,
    pub liouville: Option<LiouvilleReport>,
    pub verdict: Option<Verdict>,
}

/// A report together with the enumerated points behind its estimate.
#[derive(Debug, Clone)]
pub struct RunOutput {
    pub report: RunReport,
    pub points: Vec<ProjPoint>,
}

impl RunReport {
    fn new(command: &str, spec: &ProblemSpec) -> Self {
        RunReport {
            command: command.into(),
            version: env!("CARGO_PKG_VERSION").into(),
            spec: spec.clone(),
            classification: None,
            construction: None,
            estimate: None,
            liouville: None,
            verdict: None,
        }
    }
}

fn options(spec: &ProblemSpec, problem: &Problem) -> ClassifyOptions {
    ClassifyOptions {
        search_bound: spec.search_bound,
        known_line: problem.line.clone(),
        ..ClassifyOptions::default()
    }
}

fn summarize_sequence(c: &ParamCurve, p: &ProjPoint, v: Place) -> Option<SequenceSummary> {
    let branches = branch_data(c, p, v).ok()?;
    let best = branches.iter().filter(|b| b.in_kv).min_by(|a, b| {
        a.contribution(c.degree_l())
            .cmp(&b.contribution(c.degree_l()))
    })?;
    let seq = sequence_on_curve(c, best, p, v, SEQUENCE_TERMS).ok()?;
    let deltas = seq.deltas();
    Some(SequenceSummary {
        points: seq.len(),
        last_point: seq.points.last().cloned(),
        last_delta: deltas.last().copied(),
        provenance: seq.provenance,
    })
}

fn constructed(
    kind: &str,
    curve: ParamCurve,
    alpha: Alpha,
    p: &ProjPoint,
    v: Place,
    detail: serde_json::Value,
) -> ConstructedCurve {
    let sequence = summarize_sequence(&curve, p, v);
    ConstructedCurve {
        kind: kind.into(),
        curve,
        alpha,
        sequence,
        detail,
    }
}

/// Builds the curves matching the classified case.
pub fn construct_for(
    problem: &Problem,
    result: &ClassificationResult,
    attempts: u32,
    seed: u64,
) -> Result<ConstructionReport> {
    let (x, p, v) = (&problem.x, &problem.point, problem.place);
    let mut curves = Vec::new();
    let mut notes = Vec::new();
    match result.case {
        Case::OnRationalLine => {
            if let Some(line) = result.line_certificate() {
                let alpha = curve_alpha(line, p, v)?;
                curves.push(constructed(
                    "line_through_point",
                    line.clone(),
                    alpha,
                    p,
                    v,
                    serde_json::Value::Null,
                ));
            }
        }
        Case::IsolatedInSection | Case::RationalTangentLines | Case::Generic => {
            match result.line_on_x() {
                Some(ell) => match residual_conic(x, p, ell) {
                    Ok(ResidualConic::Conic { section, curve, .. }) => {
                        let alpha = curve_alpha(&curve, p, v)?;
                        let detail =
                            serde_json::to_value(&section).expect("plane section serializes");
                        curves.push(constructed("residual_conic", curve, alpha, p, v, detail));
                    }
                    Ok(ResidualConic::SplitRational { lines, .. }) => {
                        for line in lines {
                            let alpha = curve_alpha(&line, p, v)?;
                            curves.push(constructed(
                                "line_through_point",
                                line,
                                alpha,
                                p,
                                v,
                                serde_json::Value::Null,
                            ));
                        }
                    }
                    Ok(other) => notes.push(format!(
                        "residual conic: {}",
                        serde_json::to_value(&other).expect("serializes")["kind"]
                    )),
                    Err(e) => notes.push(format!("residual conic: {e}")),
                },
                None => notes.push("no rational line on X known; residual conic skipped".into()),
            }
            if result.case == Case::Generic {
                let s = tangent_section(x, p)?;
                match projection_curve(&s, v, attempts, seed) {
                    Ok(pc) => {
                        let detail = serde_json::json!({
                            "line": pc.line,
                            "node_factor": pc.node_factor,
                            "discriminant": pc.discriminant.to_string(),
                            "branches": pc.branches,
                            "attempts_used": pc.attempts_used,
                            "seed": pc.seed,
                        });
                        curves.push(constructed(
                            "projection_curve",
                            pc.curve,
                            pc.alpha,
                            p,
                            v,
                            detail,
                        ));
                    }
                    Err(e) => notes.push(format!("projection curve: {e}")),
                }
            }
        }
    }
    Ok(ConstructionReport { curves, notes })
}

/// Classification followed by the construction for its case.
pub fn run_classify(spec: &ProblemSpec) -> Result<RunReport> {
    let problem = spec.resolve()?;
    let mut report = RunReport::new("classify", spec);
    let result = classify_with(
        &problem.x,
        &problem.point,
        problem.place,
        &options(spec, &problem),
    )?;
    report.construction = Some(construct_for(&problem, &result, spec.attempts, spec.seed)?);
    report.classification = Some(result);
    Ok(report)
}

/// Only the constructions, with the classification that selected them.
pub fn run_construct(spec: &ProblemSpec) -> Result<RunReport> {
    let mut report = run_classify(spec)?;
    report.command = "construct".into();
    Ok(report)
}

/// Enumerates X up to the capped full bound, and the tangent hyperplane
/// section up to the capped requested bound, then estimates.
pub fn estimate_problem(
    problem: &Problem,
    height_bound: u64,
) -> Result<(EstimateReport, Vec<ProjPoint>)> {
    let n1 = problem.x.ambient_dim() + 1;
    let full = enumerate(
        &problem.x,
        capped_bound(n1, height_bound, FULL_PREFIX_BUDGET),
        None,
    )?;
    estimate_with_stream(problem, height_bound, &full)
}

/// As [`estimate_problem`] with the full enumeration already done.
pub fn estimate_with_stream(
    problem: &Problem,
    height_bound: u64,
    full: &PointStream,
) -> Result<(EstimateReport, Vec<ProjPoint>)> {
    let n1 = problem.x.ambient_dim() + 1;
    let full_bound = full.height_bound;
    let s = tangent_section(&problem.x, &problem.point)?;
    let plane = HomForm::linear(
        &s.tangent_hyperplane
            .iter()
            .map(|c| Rat::from_integer(c.clone()))
            .collect::<Vec<_>>(),
    );
    let section_bound = capped_bound(n1 - 1, height_bound, SECTION_PREFIX_BUDGET);
    let section = enumerate(
        &problem.x,
        section_bound,
        Some(std::slice::from_ref(&plane)),
    )?;
    let mut points: Vec<ProjPoint> = full.points.iter().cloned().chain(section.points).collect();
    points.sort_by(|a, b| a.coords().cmp(b.coords()));
    points.dedup();
    let outcome = match estimate_from_points(
        &points,
        section_bound.max(full_bound),
        &problem.point,
        problem.place,
        problem.epsilons.as_deref(),
    ) {
        Ok(estimate) => EstimateOutcome::Estimated { estimate },
        Err(Error::NoApproximants) => EstimateOutcome::NoApproximants {
            largest_epsilon: problem
                .epsilons
                .as_ref()
                .and_then(|e| e.first().cloned())
                .or_else(|| Some(DistValue::pow2_neg(1))),
        },
        Err(e) => return Err(e),
    };
    Ok((
        EstimateReport {
            full_height_bound: full_bound,
            section_height_bound: section_bound,
            points: points.len(),
            outcome,
        },
        points,
    ))
}

pub fn run_estimate(spec: &ProblemSpec) -> Result<RunOutput> {
    let problem = spec.resolve()?;
    let mut report = RunReport::new("estimate", spec);
    let (est, points) = estimate_problem(&problem, spec.height_bound)?;
    report.estimate = Some(est);
    Ok(RunOutput { report, points })
}

/// The Liouville-type check off the tangent hyperplane section.
pub fn liouville_problem(problem: &Problem) -> Result<LiouvilleReport> {
    liouville_with_stream(problem, None)
}

/// As [`liouville_problem`], reusing `full` as the exhaustive part. Beyond
/// the full search budget only windows around the point are searched.
pub fn liouville_with_stream(
    problem: &Problem,
    full: Option<&PointStream>,
) -> Result<LiouvilleReport> {
    let n1 = problem.x.ambient_dim() + 1;
    let bmax = problem.liouville_bounds.iter().copied().max().unwrap_or(1);
    let reach = capped_bound(n1, bmax, FULL_PREFIX_BUDGET);
    let owned;
    let stream = match full {
        Some(s) if s.height_bound >= reach => s,
        _ => {
            owned = enumerate(&problem.x, reach, None)?;
            &owned
        }
    };
    let s = tangent_section(&problem.x, &problem.point)?;
    let plane = HomForm::linear(
        &s.tangent_hyperplane
            .iter()
            .map(|c| Rat::from_integer(c.clone()))
            .collect::<Vec<_>>(),
    );
    liouville_windowed(
        &problem.x,
        stream,
        &problem.point,
        problem.place,
        &problem.gamma,
        &problem.liouville_bounds,
        &[plane],
        SECTION_PREFIX_BUDGET,
    )
}

pub fn run_liouville(spec: &ProblemSpec) -> Result<RunReport> {
    let problem = spec.resolve()?;
    let mut report = RunReport::new("liouville", spec);
    report.liouville = Some(liouville_problem(&problem)?);
    Ok(report)
}

/// Compares the prediction with the constructions and the estimate.
pub fn verdict(
    result: &ClassificationResult,
    construction: &ConstructionReport,
    estimate: &EstimateReport,
    liouville: Option<&LiouvilleReport>,
) -> Verdict {
    let mut issues = Vec::new();
    let predicted = result.predicted_alpha.to_f64();
    let empirical = estimate.extrapolated();
    if empirical < predicted - VERDICT_TOLERANCE {
        issues.push(format!(
            "empirical constant {empirical:.3} is below the predicted {} by more than {VERDICT_TOLERANCE}",
            result.predicted_alpha
        ));
    }
    match construction.best_alpha() {
        None => issues.push(format!(
            "no constructed curve certifies {}",
            result.predicted_alpha
        )),
        Some(best) if best < &result.predicted_alpha => issues.push(format!(
            "constructed curve attains {best}, below the predicted {}",
            result.predicted_alpha
        )),
        Some(best) if best > &result.predicted_alpha => issues.push(format!(
            "constructed curves only certify {best}, above the predicted {}",
            result.predicted_alpha
        )),
        Some(_) => {}
    }
    if let Some(l) = liouville {
        for f in &l.flags {
            issues.push(format!("liouville check: {f}"));
        }
    }
    if issues.is_empty() {
        Verdict::Consistent
    } else {
        Verdict::Tension(issues)
    }
}

/// The full pipeline: classify, construct, estimate, and for predicted
/// constant 2 the Liouville-type check.
pub fn run_report(spec: &ProblemSpec) -> Result<RunOutput> {
    let problem = spec.resolve()?;
    let mut report = RunReport::new("report", spec);
    let result = classify_with(
        &problem.x,
        &problem.point,
        problem.place,
        &options(spec, &problem),
    )?;
    let construction = construct_for(&problem, &result, spec.attempts, spec.seed)?;
    let n1 = problem.x.ambient_dim() + 1;
    let full = enumerate(
        &problem.x,
        capped_bound(n1, spec.height_bound, FULL_PREFIX_BUDGET),
        None,
    )?;
    let (est, points) = estimate_with_stream(&problem, spec.height_bound, &full)?;
    let liouville = if result.predicted_alpha == Alpha::int(2) {
        Some(liouville_with_stream(&problem, Some(&full))?)
    } else {
        None
    };
    report.verdict = Some(verdict(&result, &construction, &est, liouville.as_ref()));
    report.classification = Some(result);
    report.construction = Some(construction);
    report.estimate = Some(est);
    report.liouville = liouville;
    Ok(RunOutput { report, points })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bounds_respect_budget() {
        assert_eq!(capped_bound(4, 100, FULL_PREFIX_BUDGET), 100);
        let b = capped_bound(5, 100, FULL_PREFIX_BUDGET);
        assert!(prefix_count(5, b) <= FULL_PREFIX_BUDGET && b < 100);
    }

    #[test]
    fn classify_on_eckardt_point() {
        let spec = ProblemSpec {
            form: "x0^3 + x1^3 + x2^3 + x3^3".into(),
            point: "1:-1:0:0".into(),
            ..ProblemSpec::default()
        };
        let r = run_classify(&spec).unwrap();
        let c = r.classification.unwrap();
        assert_eq!(c.case, Case::OnRationalLine);
        let cons = r.construction.unwrap();
        assert_eq!(cons.best_alpha(), Some(&Alpha::int(1)));
        let seq = cons.curves[0].sequence.as_ref().unwrap();
        assert!((seq.last_delta.unwrap() - 1.0).abs() < 0.1);
    }
}
