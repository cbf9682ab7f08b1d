//! Approximation constants of rational points on cubic hypersurfaces.

pub mod algebra;
pub mod alpha;
pub mod classifier;
pub mod cli;
pub mod curves;
pub mod error;
pub mod heights;
pub mod search;

pub use alpha::Alpha;
pub use error::{Error, Result};
