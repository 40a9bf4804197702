//! Exact decision procedures, witnesses and table representatives for
//! symplectic (p,q)-differences.

pub mod atlas;
pub mod cases;
pub mod error;
pub mod field;
pub mod json;
pub mod linalg;
pub mod parse;
pub mod poly;
pub mod quadext;
pub mod selftest;
pub mod symplectic;
pub mod witness;

pub use error::{Error, Result};
pub use field::{Field, Scalar};
pub use linalg::Mat;
pub use poly::Poly;
