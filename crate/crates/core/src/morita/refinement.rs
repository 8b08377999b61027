//! Refinements of covers and the refined cocycle data.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::MoritaError;
use crate::extension::{extension_from_cocycle, GroupoidExtension, KernelTrivialization, NonAbelianCocycle};
use crate::groupoid::{CechGroupoid, CoverModel, GroupoidMorphism};

/// `r: C' → C` on set indices, with `U'_a ⊆ U_{r(a)}` after mapping points
/// by `points` (the identity when absent).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RefinementMap {
    pub sets: Vec<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub points: Option<Vec<usize>>,
}

impl RefinementMap {
    pub fn identity(cover: &CoverModel) -> Self {
        Self { sets: (0..cover.n_sets()).collect(), points: None }
    }

    pub fn point(&self, p: usize) -> usize {
        self.points.as_ref().map_or(p, |m| m[p])
    }

    /// Checks sizes and the inclusions `π(U'_a) ⊆ U_{r(a)}`.
    pub fn validate(&self, fine: &CoverModel, coarse: &CoverModel) -> Result<(), MoritaError> {
        let shape = |m: String| Err(MoritaError::NotMorita(m));
        if self.sets.len() != fine.n_sets() || self.sets.iter().any(|&i| i >= coarse.n_sets()) {
            return shape("set map does not match the covers".into());
        }
        match &self.points {
            Some(m) if m.len() != fine.points || m.iter().any(|&p| p >= coarse.points) => {
                return shape("point map does not match the covers".into())
            }
            None if fine.points > coarse.points => {
                return shape("fine cover has more points than the coarse one".into())
            }
            _ => {}
        }
        for (a, set) in fine.sets.iter().enumerate() {
            for &p in set {
                if !coarse.contains(self.sets[a], self.point(p)) {
                    return Err(MoritaError::NotARefinement { set: a, point: p });
                }
            }
        }
        Ok(())
    }

    /// `(p, a) ↦ (π p, r a)` and `(p, a, b) ↦ (π p, r a, r b)`.
    pub fn base_morphism(&self, fine: &CechGroupoid, coarse: &CechGroupoid) -> GroupoidMorphism {
        GroupoidMorphism {
            objects: fine
                .objects
                .iter()
                .map(|&(p, a)| coarse.object(self.point(p), self.sets[a]).expect("refinement"))
                .collect(),
            arrows: fine
                .arrows
                .iter()
                .map(|&(p, a, b)| coarse.arrow(self.point(p), self.sets[a], self.sets[b]).expect("refinement"))
                .collect(),
        }
    }
}

/// `λ'_ab(p) = λ_{r(a) r(b)}(π p)`, `g'_abc(p) = g_{r(a) r(b) r(c)}(π p)`.
pub fn refine_cocycle(
    d: &NonAbelianCocycle,
    fine: &CoverModel,
    r: &RefinementMap,
) -> Result<NonAbelianCocycle, MoritaError> {
    r.validate(fine, &d.cech.cover)?;
    let cech = Arc::new(CechGroupoid::new(fine)?);
    let s = &r.sets;
    Ok(NonAbelianCocycle::from_fns(
        d.group.clone(),
        cech,
        |p, a, b| d.lambda(r.point(p), s[a], s[b]).clone(),
        |p, a, b, c| d.g(r.point(p), s[a], s[b], s[c]),
    )?)
}

/// Refined data together with its extension and the map of base groupoids.
#[derive(Clone, Debug)]
pub struct RefinedExtension {
    pub cocycle: NonAbelianCocycle,
    pub extension: GroupoidExtension,
    pub trivialization: KernelTrivialization,
    pub base_map: GroupoidMorphism,
}

pub fn refinement_extension(
    d: &NonAbelianCocycle,
    fine: &CoverModel,
    r: &RefinementMap,
) -> Result<RefinedExtension, MoritaError> {
    let cocycle = refine_cocycle(d, fine, r)?;
    let (extension, trivialization) = extension_from_cocycle(&cocycle)?;
    let base_map = r.base_morphism(&cocycle.cech, &d.cech);
    Ok(RefinedExtension { cocycle, extension, trivialization, base_map })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::FiniteGroup;
    use crate::groupoid::CoverMode;

    #[test]
    fn identity_refinement_keeps_data() {
        let g = Arc::new(FiniteGroup::symmetric3());
        let c = Arc::new(CechGroupoid::new(&CoverModel::star(3)).unwrap());
        let d = NonAbelianCocycle::trivial(g, c.clone());
        let refined = refine_cocycle(&d, &c.cover, &RefinementMap::identity(&c.cover)).unwrap();
        assert_eq!(refined, d);
    }

    #[test]
    fn bad_inclusion_has_a_witness() {
        let coarse = CoverModel::circle();
        let fine = CoverModel::new(3, vec![vec![0, 1, 2]], CoverMode::NerveConstant).unwrap();
        let r = RefinementMap { sets: vec![0], points: None };
        assert_eq!(r.validate(&fine, &coarse), Err(MoritaError::NotARefinement { set: 0, point: 2 }));
    }
}
