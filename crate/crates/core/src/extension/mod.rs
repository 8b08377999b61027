//! Groupoid `G`-extensions and their non-abelian cocycle data.

pub mod band;
pub mod central;
pub mod cocycle;
#[allow(clippy::module_inception)]
pub mod extension;

pub use band::{band, band_class, band_is_trivial, outer_action, BandClass, BandCocycle, HolonomyWitness, Sites};
pub use central::{
    first_lift_section, induced_from_central, is_central, normalize_central, CentralityCertificate, NormalizedCentral,
};
pub use cocycle::{
    complete_cocycle, fill_sorted, gauge_by_automorphisms, inverse_cochain, twist_by_cochain, validate_cocycle,
    CocycleReport, CocycleTag, CocycleViolation, NonAbelianCocycle, SortedCocycleData,
};
pub use extension::{
    canonical_section, canonical_trivialization, check_extension_isomorphism, cocycle_from_extension,
    extension_from_cocycle, gauge_isomorphism, twist_isomorphism, GroupoidExtension, KernelTrivialization,
};
