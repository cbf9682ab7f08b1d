//! Bounded-height point enumeration, empirical approximation constants and
//! the empirical Liouville-type lower bound.

mod enumerate;
mod estimate;
mod liouville;
mod window;

pub use enumerate::{
    enumerate, enumerate_naive, enumerate_with, prefix_count, EnumerateOptions, PointStream,
    DEFAULT_MODULI, MAX_HEIGHT_BOUND,
};
pub use estimate::{
    empirical_alpha, estimate_from_points, geometric_epsilons, AlphaEstimate, EnvelopeRow,
    MIN_WITNESSES,
};
pub use liouville::{
    liouville_check, liouville_from_stream, liouville_windowed, slope, LiouvilleReport,
    LiouvilleRow, CERTIFIED_GAMMA, TREND_TOLERANCE,
};
pub use window::{enumerate_window, Window};
