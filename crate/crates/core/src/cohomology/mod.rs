//! Čech cohomology of nerves, central gerbe classification and the
//! cohomology of groupoid modules.

pub mod cech;
pub mod gerbes;
pub mod groupoid_module;

pub use cech::{cech_cohomology, cech_complex, complex_cohomology, IntComplex};
pub use gerbes::{
    central_class_representative, classify_bound_gerbes, is_central_cocycle, CentralCoboundaries, GerbeClassification,
};
pub use groupoid_module::{
    groupoid_cohomology, groupoid_differential, groupoid_differential_left, groupoid_differential_right,
    GroupoidModule, Side,
};
