//! Pullbacks and refinements of extensions, bitorsors, and Morita
//! invariance checks for the band and for groupoid cohomology.

pub mod bitorsor;
pub mod invariance;
pub mod pullback;
pub mod refinement;

pub use bitorsor::{
    compose_bitorsors, find_isomorphism, left_kernel_orbits, right_kernel_orbits, Bitorsor, ExtensionBitorsor,
    MAX_ISOMORPHISM_CARRIER,
};
pub use invariance::{
    check_band_morita, check_cohomology_morita, compare_bands, compare_cohomology, BandComparison,
    CohomologyComparison, MoritaData,
};
pub use pullback::{pullback_extension, PulledBackExtension};
pub use refinement::{refine_cocycle, refinement_extension, RefinedExtension, RefinementMap};
