use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::algebra::arith::Rat;
use crate::algebra::local::{
    diagonal_isotropic, diagonalize_quadratic, quadric_has_local_point, quadric_has_rational_point,
};
use crate::algebra::poly::binary_gcd;
use crate::algebra::{HomForm, Matrix, Place, Vars};
use crate::alpha::Alpha;
use crate::curves::{preimage_form, ParamCurve};
use crate::error::{Error, Result};
use crate::heights::ProjPoint;

use super::lines::{find_line_on_x, lines_in_section, verify_line};
use super::nonvanishing_vector;
use super::{
    tangent_cone_analysis, tangent_section, ConeShape, CubicHypersurface, TangentConeReport,
    TangentSection,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Case {
    OnRationalLine,
    IsolatedInSection,
    RationalTangentLines,
    Generic,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "bound", rename_all = "snake_case")]
pub enum Confidence {
    Proved,
    HeuristicUpTo(u64),
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Certificate {
    /// A rational line through the point, contained in X.
    LineThroughPoint {
        curve: ParamCurve,
    },
    /// The rational line on X required by the hypotheses.
    LineOnX {
        curve: ParamCurve,
    },
    TangentSection {
        hyperplane: String,
        f3: String,
        g: String,
    },
    TangentCone(TangentConeReport),
    LocalSolvability {
        object: String,
        place: Place,
        solvable: bool,
    },
    LineSearch {
        bound_used: u64,
        exhaustive: bool,
        found: usize,
    },
    SectionStructure {
        description: String,
    },
    NonIsolation {
        description: String,
        witness: Option<String>,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ClassificationResult {
    pub case: Case,
    pub predicted_alpha: Alpha,
    pub place: Place,
    pub certificates: Vec<Certificate>,
    pub confidence: Confidence,
}

impl ClassificationResult {
    pub fn line_certificate(&self) -> Option<&ParamCurve> {
        self.certificates.iter().find_map(|c| match c {
            Certificate::LineThroughPoint { curve } => Some(curve),
            _ => None,
        })
    }

    pub fn line_on_x(&self) -> Option<&ParamCurve> {
        self.certificates.iter().find_map(|c| match c {
            Certificate::LineOnX { curve } => Some(curve),
            _ => None,
        })
    }
}

#[derive(Debug, Clone)]
pub struct ClassifyOptions {
    pub search_bound: u64,
    /// A rational line on X; searched for when absent.
    pub known_line: Option<ParamCurve>,
    /// Height bound for points tried when searching for a line on X.
    pub line_search_height: u64,
}

impl Default for ClassifyOptions {
    fn default() -> Self {
        ClassifyOptions {
            search_bound: 100,
            known_line: None,
            line_search_height: 6,
        }
    }
}

/// Predicted approximation constant of `p` on `x` at `v`.
pub fn classify(
    x: &CubicHypersurface,
    p: &ProjPoint,
    v: Place,
    search_bound: u64,
) -> Result<ClassificationResult> {
    classify_with(
        x,
        p,
        v,
        &ClassifyOptions {
            search_bound,
            ..ClassifyOptions::default()
        },
    )
}

pub fn classify_with(
    x: &CubicHypersurface,
    p: &ProjPoint,
    v: Place,
    opts: &ClassifyOptions,
) -> Result<ClassificationResult> {
    let s = tangent_section(x, p)?;
    let m = s.proj_vars();
    let yvars = Vars::Named((1..=m).map(|i| format!("y{i}")).collect());
    let mut certs = vec![Certificate::TangentSection {
        hyperplane: HomForm::linear(
            &s.tangent_hyperplane
                .iter()
                .map(|c| Rat::from_integer(c.clone()))
                .collect::<Vec<_>>(),
        )
        .to_string(),
        f3: s.f3.to_text(&yvars),
        g: s.g.to_text(&yvars),
    }];
    let search = lines_in_section(&s, opts.search_bound)?;
    certs.push(Certificate::LineSearch {
        bound_used: search.bound_used,
        exhaustive: search.exhaustive,
        found: search.lines.len(),
    });
    let result = |case, alpha, certificates, confidence| ClassificationResult {
        case,
        predicted_alpha: alpha,
        place: v,
        certificates,
        confidence,
    };
    if let Some(line) = search.lines.first() {
        certs.push(Certificate::LineThroughPoint {
            curve: line.clone(),
        });
        return Ok(result(
            Case::OnRationalLine,
            Alpha::int(1),
            certs,
            Confidence::Proved,
        ));
    }

    let line = match &opts.known_line {
        Some(l) if verify_line(x, l) => l.clone(),
        Some(_) => return Err(Error::NotALineOnX),
        None => find_line_on_x(x, opts.line_search_height, opts.search_bound)
            .ok_or(Error::NoRationalLineKnown)?,
    };
    certs.push(Certificate::LineOnX { curve: line });

    let lines_confidence = if search.exhaustive {
        Confidence::Proved
    } else {
        Confidence::HeuristicUpTo(search.bound_used)
    };

    if m == 2 {
        let (case, alpha) = surface_case(&s, v, &mut certs)?;
        return Ok(result(case, alpha, certs, Confidence::Proved));
    }

    if s.g.is_zero() {
        certs.push(Certificate::SectionStructure {
            description: "S_P is a cone with vertex P; no rational ruling found, so P is its only rational point".into(),
        });
        return Ok(result(
            Case::IsolatedInSection,
            Alpha::int(2),
            certs,
            lines_confidence,
        ));
    }
    let g_kv = quadric_has_local_point(&s.g, v);
    certs.push(Certificate::LocalSolvability {
        object: format!("g = {}", s.g.to_text(&yvars)),
        place: v,
        solvable: g_kv,
    });
    if !g_kv {
        return Ok(result(
            Case::IsolatedInSection,
            Alpha::int(2),
            certs,
            Confidence::Proved,
        ));
    }
    match isolation(&s, v, &yvars)? {
        Isolation::NotIsolated {
            description,
            witness,
        } => {
            certs.push(Certificate::NonIsolation {
                description,
                witness,
            });
            Ok(result(
                Case::Generic,
                Alpha::ratio(3, 2),
                certs,
                lines_confidence,
            ))
        }
        Isolation::Isolated(description) => {
            certs.push(Certificate::SectionStructure { description });
            Ok(result(
                Case::IsolatedInSection,
                Alpha::int(2),
                certs,
                Confidence::Proved,
            ))
        }
    }
}

fn surface_case(
    s: &TangentSection,
    v: Place,
    certs: &mut Vec<Certificate>,
) -> Result<(Case, Alpha)> {
    if s.g.is_zero() {
        certs.push(Certificate::SectionStructure {
            description: "S_P is three concurrent lines through P, none rational".into(),
        });
        return Ok((Case::IsolatedInSection, Alpha::int(2)));
    }
    if binary_gcd(&s.f3, &s.g).degree() == 2 {
        certs.push(Certificate::SectionStructure {
            description: "S_P is two conjugate lines through P and a line missing P".into(),
        });
        return Ok((Case::IsolatedInSection, Alpha::int(2)));
    }
    let cone = tangent_cone_analysis(s, v)?;
    let shape = cone.shape;
    certs.push(Certificate::TangentCone(cone));
    Ok(match shape {
        ConeShape::SplitRational => (Case::RationalTangentLines, Alpha::int(2)),
        ConeShape::NonSplitOverKv => (Case::IsolatedInSection, Alpha::int(2)),
        ConeShape::SplitQuadraticInKv | ConeShape::DoubleLine => {
            (Case::Generic, Alpha::ratio(3, 2))
        }
    })
}

enum Isolation {
    NotIsolated {
        description: String,
        witness: Option<String>,
    },
    Isolated(String),
}

fn gram_matrix(g: &HomForm) -> Matrix {
    let m = g.n_vars();
    let mut gm = Matrix::zeros(m, m);
    let half = Rat::new(1.into(), 2.into());
    for i in 0..m {
        for j in 0..m {
            let mut e = vec![0u32; m];
            e[i] += 1;
            e[j] += 1;
            let c = g.coeff(&e);
            gm[(i, j)] = if i == j { c } else { c * &half };
        }
    }
    gm
}

/// Decides whether `P` is isolated in `S_P(k)` for `n >= 4`, given that
/// `g` has points over `k_v` and no rational line through `P` was found.
///
/// `P` is not isolated as soon as some `k_v`-point `z` of `g = 0` has
/// `f(z) != 0`: rational `y'` tending to `z` give `psi(y')` tending to `P`.
fn isolation(s: &TangentSection, v: Place, yvars: &Vars) -> Result<Isolation> {
    let gm = gram_matrix(&s.g);
    let radical = gm.kernel();
    if !radical.is_empty() {
        let basis = Matrix::from_columns(&radical);
        let f_on_radical = s.f3.substitute_rows(&basis)?;
        if !f_on_radical.is_zero() {
            let c = nonvanishing_vector(&f_on_radical).expect("nonzero form");
            let cr: Vec<Rat> = c.iter().map(|x| Rat::from_integer(x.clone())).collect();
            let z = ProjPoint::from_rationals(&basis.mul_vec(&cr))?;
            return Ok(Isolation::NotIsolated {
                description: "rational point of the radical of g off f = 0".into(),
                witness: Some(z.to_string()),
            });
        }
    }
    let diag: Vec<Rat> = diagonalize_quadratic(&s.g)
        .into_iter()
        .filter(|d| !d.is_zero())
        .collect();
    let rank = diag.len();
    let gtext = s.g.to_text(yvars);
    if rank == 1 {
        // g = c l^2 with l read off a nonzero row of the Gram matrix
        let row = (0..gm.rows())
            .map(|i| gm.row(i).to_vec())
            .find(|r| r.iter().any(|c| !c.is_zero()))
            .expect("rank one");
        let l = HomForm::linear(&row);
        if s.f3.divide(&l).is_none() {
            return Ok(Isolation::NotIsolated {
                description: format!("g = c*l^2 and l does not divide f (g = {gtext})"),
                witness: None,
            });
        }
        return Err(Error::Undecided(
            "rational lines through P exist (g = c*l^2 with l | f) but none was found; raise search_bound".into(),
        ));
    }
    if !diagonal_isotropic(&diag, v) {
        return Err(Error::Undecided(format!(
            "the k_v-points of g = 0 form its radical, on which f vanishes (g = {gtext})"
        )));
    }
    if s.f3.divide(&s.g).is_none() {
        return Ok(Isolation::NotIsolated {
            description: format!("g = {gtext} is isotropic over {v} and does not divide f"),
            witness: None,
        });
    }
    if quadric_has_rational_point(&s.g).unwrap_or(true) {
        return Err(Error::Undecided(
            "g divides f and has rational points, so lines through P exist, but none was found; raise search_bound"
                .into(),
        ));
    }
    Ok(Isolation::Isolated(format!(
        "S_P is the cone g = 0 (no rational points) plus a component missing P (g = {gtext})"
    )))
}

/// Re-checks every certificate that carries a curve.
pub fn verify_certificates(
    x: &CubicHypersurface,
    p: &ProjPoint,
    result: &ClassificationResult,
) -> bool {
    result.certificates.iter().all(|c| match c {
        Certificate::LineThroughPoint { curve } => {
            verify_line(x, curve) && preimage_form(curve, p).is_ok()
        }
        Certificate::LineOnX { curve } => verify_line(x, curve),
        _ => true,
    }) && (result.case != Case::OnRationalLine || result.line_certificate().is_some())
}
