//! Exact eigenmatrices of the classical distance-regular graphs and tools
//! for locating and certifying their extremal eigenvalues.
//!
//! All arithmetic is done with arbitrary-precision integers and rationals.

pub mod error;
pub mod exact;
pub mod extremal;
pub mod families;
pub mod par;
pub mod report;
pub mod scanner;
pub mod schemes;

pub use error::{Error, Result};
pub use exact::{BigRat, HalfInt};
pub use schemes::{ClassicalParams, EigenMatrix, Family, SchemeId};
