//! Finite groupoids, Čech groupoids of covers, nerves and pullbacks.

pub mod cover;
#[allow(clippy::module_inception)]
pub mod groupoid;
pub mod nerve;
pub mod pullback;

pub use cover::{CechGroupoid, CoverMode, CoverModel, Nerve, MAX_NERVE_DIM};
pub use groupoid::{FiniteGroupoid, GroupoidMorphism, GroupoidViolation};
pub use nerve::{check_simplicial_identities, face, nerve_tuples, NerveLevel, MAX_TUPLE_DEGREE};
pub use pullback::{is_morita_morphism, is_weak_equivalence, pullback_groupoid, MoritaWitness, PullbackGroupoid};
