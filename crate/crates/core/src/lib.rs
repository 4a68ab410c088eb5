pub mod bounds;
pub mod cli;
pub mod error;
pub mod family;
pub mod growth;
pub mod linear;
pub mod matrix;
pub mod minors;
pub(crate) mod ring;
pub mod scalar;
pub mod sweep;

pub use error::{Error, Result};
pub use family::{tight_equation_coeffs, ElementSet, FamilySpec};
pub use matrix::{CharPolyKey, MatrixInstance};
pub use scalar::{FastScalar, Field, Scalar};
pub use sweep::{SweepHistogram, SweepLimits, SweepOptions};
