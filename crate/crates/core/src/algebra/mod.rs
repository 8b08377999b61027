//! Finite groups, automorphisms and low-degree group cohomology.

pub mod aut;
pub mod cohomology;
pub mod group;
pub mod module;

pub use aut::{automorphism_structure, AutStructure};
pub use cohomology::{
    b1_coboundaries, bar_differential, group_cohomology, to_right_cocycle, z1_cocycles, CochainFamily,
};
pub use group::{Automorphism, FiniteGroup, GroupViolation};
pub use module::GroupModule;
