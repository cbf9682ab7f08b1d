//! Exact arithmetic: rationals, homogeneous forms, binary-form factorization,
//! quadratic extensions and local (real / p-adic) tests.

pub mod arith;
pub mod form;
pub mod linalg;
pub mod local;
pub mod poly;
pub mod quadext;

pub use arith::Rat;
pub use form::{HomForm, Vars};
pub use linalg::Matrix;
pub use local::{is_square_local, LocalSquareVerdict, Place};
pub use poly::{factor_binary_form, BinaryFactor, RootData, UniPoly};
pub use quadext::QuadExt;
