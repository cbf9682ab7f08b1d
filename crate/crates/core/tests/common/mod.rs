//! Shared catalog of hypersurfaces, points and curves for integration tests.
#![allow(dead_code)]

use cubic_approx::algebra::Place;
use cubic_approx::classifier::Case;
use cubic_approx::cli::ProblemSpec;
use cubic_approx::Alpha;

/// Surface with a smooth point at `[0:0:0:1]`, tangent plane `x0 = 0` and
/// tangent section `f(x1, x2) + x3 g(x1, x2)`.
pub fn template(f: &str, g: &str) -> String {
    format!("x0*(x3^2 + x1*x2 + x0*x3) + {f} + x3*({g})")
}

pub const FERMAT: &str = "x0^3 + x1^3 + x2^3 + x3^3";
pub const FERMAT_THREEFOLD: &str = "x0^3 + x1^3 + x2^3 + x3^3 + x4^3";
pub const THREEFOLD: &str =
    "x0*(x4^2 + x1*x2 + x0*x4) + x1*(x1^2 + x2^2 + x3^2) + x4*(x1^2 + x2^2 - 3*x3^2)";

#[derive(Debug, Clone)]
pub struct Entry {
    pub name: &'static str,
    pub form: String,
    pub point: &'static str,
    pub place: Place,
    /// A rational line on X, when one is handed to the classifier.
    pub line: Option<&'static str>,
    pub case: Case,
    pub alpha: Alpha,
}

impl Entry {
    fn new(
        name: &'static str,
        form: String,
        point: &'static str,
        place: Place,
        case: Case,
        alpha: Alpha,
    ) -> Self {
        Entry {
            name,
            form,
            point,
            place,
            line: None,
            case,
            alpha,
        }
    }

    fn with_line(mut self, line: &'static str) -> Self {
        self.line = Some(line);
        self
    }

    pub fn n_coords(&self) -> usize {
        self.point.split(':').count()
    }

    pub fn spec(&self) -> ProblemSpec {
        ProblemSpec {
            form: self.form.clone(),
            point: self.point.into(),
            place: self.place.to_string(),
            line: self.line.unwrap_or("").into(),
            ..ProblemSpec::default()
        }
    }
}

/// Surfaces covering each case, plus threefolds.
pub fn catalog() -> Vec<Entry> {
    use Case::*;
    let e3 = "0:0:0:1";
    vec![
        Entry::new(
            "fermat-eckardt",
            FERMAT.into(),
            "1:-1:0:0",
            Place::Real,
            OnRationalLine,
            Alpha::int(1),
        ),
        Entry::new(
            "reducible-section",
            template("x1^3 + x1*x2^2", "x1*x2"),
            e3,
            Place::Real,
            OnRationalLine,
            Alpha::int(1),
        ),
        Entry::new(
            "rational-tangents",
            template("x1^3 + x1^2*x2 + x1*x2^2", "x2*(x1 - x2)"),
            e3,
            Place::Real,
            RationalTangentLines,
            Alpha::int(2),
        )
        .with_line("s; 0; t; 0"),
        Entry::new(
            "sqrt2-real",
            template("x1^3 + x1*x2^2", "x1^2 - 2*x2^2"),
            e3,
            Place::Real,
            Generic,
            Alpha::ratio(3, 2),
        )
        .with_line("s; 0; t; 0"),
        Entry::new(
            "sqrt2-p7",
            template("x1^3 + x1*x2^2", "x1^2 - 2*x2^2"),
            e3,
            Place::Padic(7),
            Generic,
            Alpha::ratio(3, 2),
        ),
        Entry::new(
            "sqrt2-p5",
            template("x1^3 + x1*x2^2", "x1^2 - 2*x2^2"),
            e3,
            Place::Padic(5),
            IsolatedInSection,
            Alpha::int(2),
        ),
        Entry::new(
            "imaginary-real",
            template("x1^3 + x1^2*x2 + 2*x1*x2^2", "x1^2 + x2^2"),
            e3,
            Place::Real,
            IsolatedInSection,
            Alpha::int(2),
        ),
        Entry::new(
            "cuspidal-section",
            template("x1^3 + x1*x2^2", "(x1 - x2)^2"),
            e3,
            Place::Real,
            Generic,
            Alpha::ratio(3, 2),
        ),
        Entry::new(
            "fermat-3456",
            FERMAT.into(),
            "3:4:5:-6",
            Place::Real,
            IsolatedInSection,
            Alpha::int(2),
        )
        .with_line("s; -s; t; -t"),
        Entry::new(
            "threefold-real",
            THREEFOLD.into(),
            "0:0:0:0:1",
            Place::Real,
            Generic,
            Alpha::ratio(3, 2),
        )
        .with_line("s; 0; t; 0; 0"),
        Entry::new(
            "threefold-p3",
            THREEFOLD.into(),
            "0:0:0:0:1",
            Place::Padic(3),
            IsolatedInSection,
            Alpha::int(2),
        )
        .with_line("s; 0; t; 0; 0"),
        Entry::new(
            "fermat-threefold",
            FERMAT_THREEFOLD.into(),
            "1:-1:0:0:0",
            Place::Real,
            OnRationalLine,
            Alpha::int(1),
        ),
    ]
}

/// A parametrized curve, a point on it and its constant at the real place,
/// `p = 5` and `p = 7`, derived by hand from `min d / (r_q m_q)`.
#[derive(Debug, Clone)]
pub struct CurveCase {
    pub name: &'static str,
    pub curve: &'static str,
    pub point: &'static str,
    pub alpha: [&'static str; 3],
}

pub const CURVE_PLACES: [Place; 3] = [Place::Real, Place::Padic(5), Place::Padic(7)];

pub fn curve_corpus() -> Vec<CurveCase> {
    let c = |name, curve, point, alpha| CurveCase {
        name,
        curve,
        point,
        alpha,
    };
    vec![
        c("plane-line", "s; t; s + t", "1:0:1", ["1", "1", "1"]),
        c("space-line", "s; -s; t; -t", "1:-1:1:-1", ["1", "1", "1"]),
        c(
            "conic-at-infinity",
            "s^2; s*t; t^2",
            "1:0:0",
            ["2", "2", "2"],
        ),
        c("conic-at-origin", "s^2; s*t; t^2", "0:0:1", ["2", "2", "2"]),
        c(
            "circle",
            "s^2 + t^2; 2*s*t; s^2 - t^2",
            "1:0:1",
            ["2", "2", "2"],
        ),
        c(
            "twisted-cubic",
            "s^3; s^2*t; s*t^2; t^3",
            "1:0:0:0",
            ["3", "3", "3"],
        ),
        // y^2 = x^2 (x + 1): node with tangents of slope +-1
        c(
            "node-rational",
            "(s^2 - t^2)*t; s*(s^2 - t^2); t^3",
            "0:0:1",
            ["3", "3", "3"],
        ),
        // a smooth point of the same curve
        c(
            "node-smooth-point",
            "(s^2 - t^2)*t; s*(s^2 - t^2); t^3",
            "-1:0:1",
            ["3", "3", "3"],
        ),
        // tangents over Q(sqrt 2): split at the reals and at 7, not at 5
        c(
            "node-sqrt2",
            "(s^2 - 2*t^2)*t; s*(s^2 - 2*t^2); t^3",
            "0:0:1",
            ["3/2", "inf", "3/2"],
        ),
        // tangents over Q(i): split at 5 only
        c(
            "node-imaginary",
            "(s^2 + t^2)*t; s*(s^2 + t^2); t^3",
            "0:0:1",
            ["inf", "3/2", "inf"],
        ),
        // Q(sqrt 3): split at the reals only
        c(
            "node-sqrt3",
            "(s^2 - 3*t^2)*t; s*(s^2 - 3*t^2); t^3",
            "0:0:1",
            ["3/2", "inf", "inf"],
        ),
        // Q(sqrt -3): split at 7 only
        c(
            "node-sqrt-3",
            "(s^2 + 3*t^2)*t; s*(s^2 + 3*t^2); t^3",
            "0:0:1",
            ["inf", "inf", "3/2"],
        ),
        c("cusp", "s^2*t; s^3; t^3", "0:0:1", ["3/2", "3/2", "3/2"]),
    ]
}
