//! Exact structure-constant toolkit for quadratic and symplectic Lie
//! superalgebras over Q(√2).

pub mod catalog;
pub mod derivations;
pub mod error;
pub mod extensions;
pub mod forms;
pub mod io;
pub mod linalg;
pub mod poly;
pub mod regression;
pub mod report;
pub mod scalar;
pub mod structure;
pub mod subspace;
pub mod superalg;

pub use error::{Error, Result};
pub use linalg::{Matrix, Vector};
pub use poly::Poly;
pub use scalar::Scalar;
