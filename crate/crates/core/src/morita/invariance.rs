//! Executable Morita invariance of the band and of groupoid cohomology.

use serde::{Deserialize, Serialize};

use super::refinement::RefinementMap;
use crate::algebra::{AutStructure, FiniteGroup};
use crate::coefficients::CohomologyValue;
use crate::cohomology::{groupoid_cohomology, GroupoidModule, Side};
use crate::config::Limits;
use crate::error::{CohomologyError, MoritaError};
use crate::extension::{outer_action, BandCocycle, GroupoidExtension, KernelTrivialization};
use crate::groupoid::{is_morita_morphism, is_weak_equivalence, FiniteGroupoid, GroupoidMorphism};

/// How the base of `E'` maps to the base of `E`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum MoritaData {
    /// A Morita morphism of base groupoids `Y' → Y`.
    Morphism(GroupoidMorphism),
    /// A refinement of the cover of `E` by the cover of `E'`; both bases
    /// must be Čech groupoids.
    Refinement(RefinementMap),
}

impl MoritaData {
    /// The base functor `Y' → Y`, checked to be Morita (for a refinement:
    /// fully faithful and essentially surjective).
    pub fn base_functor(&self, e: &GroupoidExtension, e2: &GroupoidExtension) -> Result<GroupoidMorphism, MoritaError> {
        let not = |m: String| MoritaError::NotMorita(m);
        match self {
            MoritaData::Morphism(f) => {
                is_morita_morphism(&e2.base, &e.base, f).map_err(|w| not(format!("{w:?}")))?;
                Ok(f.clone())
            }
            MoritaData::Refinement(r) => {
                let (Some(c), Some(c2)) = (&e.cech, &e2.cech) else {
                    return Err(not("refinement data needs Čech bases".into()));
                };
                r.validate(&c2.cover, &c.cover)?;
                let f = r.base_morphism(c2, c);
                is_weak_equivalence(&e2.base, &e.base, &f).map_err(|w| not(format!("{w:?}")))?;
                Ok(f)
            }
        }
    }
}

/// Outcome of a comparison, with the first base arrow of `E'` where it
/// fails.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BandComparison {
    pub holds: bool,
    pub witness: Option<usize>,
}

/// Whether `b2` is the pullback of `b` along `f`.
pub fn compare_bands(b: &BandCocycle, b2: &BandCocycle, f: &GroupoidMorphism) -> BandComparison {
    let witness = (0..b2.values.len()).find(|&x| b2.values[x] != b.values[f.arrows[x]]);
    BandComparison { holds: witness.is_none(), witness }
}

/// Computes both outer actions and compares them along the base functor.
/// The trivializations are expected to correspond (`χ' = f^*χ`), as those
/// produced by pullbacks and refinements do.
#[allow(clippy::too_many_arguments)]
pub fn check_band_morita(
    e: &GroupoidExtension,
    chi: &KernelTrivialization,
    e2: &GroupoidExtension,
    chi2: &KernelTrivialization,
    data: &MoritaData,
    group: &FiniteGroup,
    aut: &AutStructure,
) -> Result<BandComparison, MoritaError> {
    let f = data.base_functor(e, e2)?;
    let b = outer_action(e, group, chi, aut)?;
    let b2 = outer_action(e2, group, chi2, aut)?;
    Ok(compare_bands(&b, &b2, &f))
}

/// Cohomology of `Y` with `module` and of `Y'` with its pullback, degrees
/// 0 through 2, computed with the right differential.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CohomologyComparison {
    pub holds: bool,
    pub degrees: Vec<(CohomologyValue, CohomologyValue)>,
}

pub fn check_cohomology_morita(
    e: &GroupoidExtension,
    e2: &GroupoidExtension,
    data: &MoritaData,
    module: &GroupoidModule,
    limits: &Limits,
) -> Result<CohomologyComparison, MoritaError> {
    let f = data.base_functor(e, e2)?;
    compare_cohomology(&e.base, &e2.base, &f, module, limits)
}

/// Same comparison for bare groupoids and a functor `from → to` that is
/// already known to be an equivalence.
pub fn compare_cohomology(
    to: &FiniteGroupoid,
    from: &FiniteGroupoid,
    f: &GroupoidMorphism,
    module: &GroupoidModule,
    limits: &Limits,
) -> Result<CohomologyComparison, MoritaError> {
    if module.base != *to {
        return Err(CohomologyError::InvalidModule("module is not over the base of E".into()).into());
    }
    let pulled = module.pullback(from, f)?;
    let mut degrees = Vec::new();
    for n in 0..=2 {
        degrees.push((
            groupoid_cohomology(module, n, Side::Right, limits)?,
            groupoid_cohomology(&pulled, n, Side::Right, limits)?,
        ));
    }
    Ok(CohomologyComparison { holds: degrees.iter().all(|(a, b)| a == b), degrees })
}
