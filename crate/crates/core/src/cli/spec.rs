use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::algebra::arith::Rat;
use crate::algebra::{HomForm, Place};
use crate::classifier::CubicHypersurface;
use crate::curves::ParamCurve;
use crate::error::{Error, Result};
use crate::heights::{DistValue, ProjPoint};

/// A problem as read from a key=value file and command-line flags, with
/// defaults filled in.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProblemSpec {
    pub form: String,
    pub point: String,
    pub place: String,
    pub height_bound: u64,
    pub seed: u64,
    /// Comma-separated radii; empty for the geometric schedule.
    pub epsilons: String,
    pub attempts: u32,
    pub search_bound: u64,
    /// A rational line on X (ParamCurve text); searched for when empty.
    pub line: String,
    pub gamma: String,
    /// Comma-separated height bounds for the Liouville check.
    pub liouville_bounds: String,
}

impl Default for ProblemSpec {
    fn default() -> Self {
        ProblemSpec {
            form: String::new(),
            point: String::new(),
            place: "real".into(),
            height_bound: 1000,
            seed: 0,
            epsilons: String::new(),
            attempts: 64,
            search_bound: 100,
            line: String::new(),
            gamma: "2".into(),
            liouville_bounds: "25,50,100".into(),
        }
    }
}

/// Keys accepted in problem files and as flags.
pub const KEYS: [&str; 11] = [
    "form",
    "point",
    "place",
    "height_bound",
    "seed",
    "epsilons",
    "attempts",
    "search_bound",
    "line",
    "gamma",
    "liouville_bounds",
];

/// Shifts a parse error reported for a single value to its place in a file.
fn locate(e: Error, line: usize, offset: usize) -> Error {
    match e {
        Error::Parse {
            column, message, ..
        } => Error::Parse {
            line,
            column: column + offset,
            message,
        },
        other => other,
    }
}

fn parse_num<T: std::str::FromStr>(
    key: &str,
    value: &str,
    line: usize,
    column: usize,
) -> Result<T> {
    value.trim().parse().map_err(|_| {
        Error::parse(
            line,
            column,
            format!(
                "'{key}' expects a non-negative integer, got '{}'",
                value.trim()
            ),
        )
    })
}

impl ProblemSpec {
    /// Parses UTF-8 `key=value` lines; `#` starts a comment.
    pub fn parse(text: &str) -> Result<Self> {
        let mut spec = ProblemSpec::default();
        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            let content = raw.split('#').next().unwrap_or("");
            if content.trim().is_empty() {
                continue;
            }
            let Some(eq) = content.find('=') else {
                let col = content.len() - content.trim_start().len() + 1;
                return Err(Error::parse(line, col, "expected key=value"));
            };
            let key = content[..eq].trim();
            let value = &content[eq + 1..];
            spec.set_at(key, value, line, eq + 2)
                .map_err(|e| locate(e, line, 0))?;
        }
        Ok(spec)
    }

    pub fn read(path: &Path) -> Result<Self> {
        Self::parse(&std::fs::read_to_string(path)?)
    }

    /// Sets one key, as a flag would.
    pub fn set(&mut self, key: &str, value: &str) -> Result<()> {
        self.set_at(key, value, 1, 1)
    }

    fn set_at(&mut self, key: &str, value: &str, line: usize, column: usize) -> Result<()> {
        let v = value.trim().to_string();
        match key {
            "form" => self.form = v,
            "point" => self.point = v,
            "place" => self.place = v,
            "height_bound" => self.height_bound = parse_num(key, value, line, column)?,
            "seed" => self.seed = parse_num(key, value, line, column)?,
            "epsilons" => self.epsilons = v,
            "attempts" => self.attempts = parse_num(key, value, line, column)?,
            "search_bound" => self.search_bound = parse_num(key, value, line, column)?,
            "line" => self.line = v,
            "gamma" => self.gamma = v,
            "liouville_bounds" => self.liouville_bounds = v,
            _ => return Err(Error::parse(line, 1, format!("unknown key '{key}'"))),
        }
        Ok(())
    }

    /// Parses every field into typed values.
    pub fn resolve(&self) -> Result<Problem> {
        if self.form.is_empty() {
            return Err(Error::Invalid("missing 'form'".into()));
        }
        if self.point.is_empty() {
            return Err(Error::Invalid("missing 'point'".into()));
        }
        let point: ProjPoint = self.point.parse()?;
        let form = HomForm::parse_with_min_vars(&self.form, point.len())?;
        let x = CubicHypersurface::new(form)?;
        let place: Place = self.place.parse()?;
        x.check_smooth_point(&point)?;
        let line = if self.line.is_empty() {
            None
        } else {
            Some(self.line.parse::<ParamCurve>()?)
        };
        let epsilons = if self.epsilons.is_empty() {
            None
        } else {
            let mut out = Vec::new();
            for part in self.epsilons.split(',') {
                let r: Rat = part
                    .trim()
                    .parse()
                    .map_err(|_| Error::parse(1, 1, format!("bad epsilon '{}'", part.trim())))?;
                out.push(DistValue::new(r)?);
            }
            Some(out)
        };
        let gamma: Rat = self
            .gamma
            .trim()
            .parse()
            .map_err(|_| Error::parse(1, 1, format!("bad gamma '{}'", self.gamma)))?;
        let liouville_bounds = self
            .liouville_bounds
            .split(',')
            .map(|b| parse_num::<u64>("liouville_bounds", b, 1, 1))
            .collect::<Result<Vec<_>>>()?;
        if self.height_bound == 0 || liouville_bounds.contains(&0) {
            return Err(Error::Invalid("height bounds must be positive".into()));
        }
        Ok(Problem {
            x,
            point,
            place,
            line,
            epsilons,
            gamma,
            liouville_bounds,
        })
    }
}

/// A resolved problem.
#[derive(Debug, Clone)]
pub struct Problem {
    pub x: CubicHypersurface,
    pub point: ProjPoint,
    pub place: Place,
    pub line: Option<ParamCurve>,
    pub epsilons: Option<Vec<DistValue>>,
    pub gamma: Rat,
    pub liouville_bounds: Vec<u64>,
}
