//! Decision procedure for the approximation constant of a rational point on
//! a cubic hypersurface, via the tangent hyperplane section.

mod classify;
mod cone;
mod hypersurface;
mod lines;
mod section;

pub use classify::{
    classify, classify_with, verify_certificates, Case, Certificate, ClassificationResult,
    ClassifyOptions, Confidence,
};
pub use cone::{tangent_cone_analysis, ConeShape, TangentConeReport};
pub(crate) use hypersurface::nonvanishing_vector;
pub use hypersurface::{rational_linear_factor, CubicHypersurface, SmoothnessStatus};
pub use lines::{
    find_line_on_x, lines_in_section, lines_through_point, small_zeros, verify_line, LineSearch,
};
pub use section::{tangent_section, TangentSection};
