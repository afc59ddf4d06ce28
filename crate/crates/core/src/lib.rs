//! Exact computations for quadratic algebras on three generators.

pub mod curves;
pub mod error;
pub mod families;
pub mod field;
pub mod freealg;
pub mod geometry;
pub mod groebner;
pub mod linalg;
pub mod poly;
pub mod sklyanin;
pub mod ttp;
pub mod verify;

pub use error::{Error, Result};
pub use field::{FieldSpec, ProjPoint, Scalar};
