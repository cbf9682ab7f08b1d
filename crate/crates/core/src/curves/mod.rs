//! Parametrized rational curves: exact approximation constants from branch
//! data, explicit constructions on cubic hypersurfaces, and approximating
//! sequences.

mod branch;
mod construct;
mod param;
mod sequence;

pub use branch::{
    alpha_from_branches, branch_data, curve_alpha, intersection_multiplicity, preimage_form,
    BranchDatum,
};
pub use construct::{
    check_psi_phi, projection_curve, residual_conic, PlaneSection, ProjectionCurve, ResidualConic,
};
pub use param::ParamCurve;
pub use sequence::{
    continued_fraction, convergents, hensel_lifts, parameter_schedule, real_root_convergents,
    sequence_on_curve, shortest_vector, ApproxSequence,
};
