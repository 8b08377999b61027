//! Finite models of non-abelian gerbes.
//!
//! Groups are Cayley tables with the unit at index 0, groupoids are
//! explicit arrow sets with partial composition written left to right,
//! and all arithmetic is exact.

pub mod algebra;
pub mod coefficients;
pub mod cohomology;
pub mod config;
pub mod error;
pub mod extension;
pub mod groupoid;
pub mod io;
pub mod linalg;
pub mod morita;

pub use coefficients::{Coefficients, CohomologyValue};
pub use config::Limits;
pub use error::{AlgebraError, CohomologyError, ExtensionError, GroupoidError, MoritaError, SizeBound};
