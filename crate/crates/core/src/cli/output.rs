use std::fs;
use std::path::Path;

use crate::error::{Error, Result};
use crate::heights::{delta_exponent, dist, height, ProjPoint};

use super::run::{EstimateOutcome, RunReport};

fn csv_err(e: csv::Error) -> Error {
    Error::Io(e.to_string())
}

/// Pretty JSON with a trailing newline; identical inputs give identical bytes.
pub fn report_json(report: &RunReport) -> String {
    let mut s = serde_json::to_string_pretty(report).expect("report serializes");
    s.push('\n');
    s
}

/// Points within the largest radius of the estimate, with their distance
/// and exponent.
pub fn points_csv(report: &RunReport, points: &[ProjPoint]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["point", "height", "dist", "delta"])
        .map_err(csv_err)?;
    if let Some(EstimateOutcome::Estimated { estimate }) =
        report.estimate.as_ref().map(|e| &e.outcome)
    {
        let largest = &estimate.rows[0].epsilon;
        for y in points {
            let d = dist(&estimate.target, y, estimate.place)?;
            if d.is_zero() || &d > largest {
                continue;
            }
            w.write_record([
                y.to_string(),
                height(y).to_string(),
                d.to_string(),
                format!("{:.6}", delta_exponent(y, &d)),
            ])
            .map_err(csv_err)?;
        }
    }
    String::from_utf8(w.into_inner().map_err(|e| Error::Io(e.to_string()))?)
        .map_err(|e| Error::Io(e.to_string()))
}

/// One line per radius: `epsilon count alpha_hat witness`.
pub fn envelope_tsv(report: &RunReport) -> String {
    let mut s = String::from("epsilon\tcount\talpha_hat\twitness\n");
    if let Some(EstimateOutcome::Estimated { estimate }) =
        report.estimate.as_ref().map(|e| &e.outcome)
    {
        for r in &estimate.rows {
            let a = r.alpha_hat.map_or("-".to_string(), |a| format!("{a:.6}"));
            let w = r
                .witness
                .as_ref()
                .map_or("-".to_string(), ToString::to_string);
            s.push_str(&format!("{}\t{}\t{a}\t{w}\n", r.epsilon, r.count));
        }
    }
    s
}

/// Writes `report.json`, and when an estimate is present `points.csv` and
/// `envelope.tsv`, into `dir`.
pub fn write_outputs(dir: &Path, report: &RunReport, points: &[ProjPoint]) -> Result<()> {
    fs::create_dir_all(dir)?;
    fs::write(dir.join("report.json"), report_json(report))?;
    if report.estimate.is_some() {
        fs::write(dir.join("points.csv"), points_csv(report, points)?)?;
        fs::write(dir.join("envelope.tsv"), envelope_tsv(report))?;
    }
    Ok(())
}
