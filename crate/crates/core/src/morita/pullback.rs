//! Pullback of an extension along a surjective object map.

use crate::error::{GroupoidError, MoritaError};
use crate::extension::{GroupoidExtension, KernelTrivialization};
use crate::groupoid::{pullback_groupoid, GroupoidMorphism, PullbackGroupoid};

/// `J^*E`: total and base pulled back along the same object map, with the
/// induced projection `(p, x, q) ↦ (p, φ(x), q)`.
#[derive(Clone, Debug)]
pub struct PulledBackExtension {
    pub extension: GroupoidExtension,
    pub total: PullbackGroupoid,
    pub base: PullbackGroupoid,
}

impl PulledBackExtension {
    /// The Morita morphism on base groupoids, `J^*Y → Y`.
    pub fn base_map(&self) -> &GroupoidMorphism {
        &self.base.projection
    }

    /// `χ'_p(g) = (p, χ_{J(p)}(g), p)`, identifying each kernel fiber of the
    /// pullback with the kernel fiber it came from.
    pub fn trivialization(&self, chi: &KernelTrivialization) -> KernelTrivialization {
        let j = &self.total.projection.objects;
        KernelTrivialization {
            chi: j
                .iter()
                .enumerate()
                .map(|(p, &m)| chi.chi[m].iter().map(|&k| self.total.arrow(p, k, p).expect("kernel arrow")).collect())
                .collect(),
        }
    }
}

pub fn pullback_extension(e: &GroupoidExtension, object_map: &[usize]) -> Result<PulledBackExtension, MoritaError> {
    let lift = |r: Result<PullbackGroupoid, GroupoidError>| {
        r.map_err(|err| match err {
            GroupoidError::NotSurjective(_) => MoritaError::NotSurjective,
            other => other.into(),
        })
    };
    let total = lift(pullback_groupoid(&e.total, object_map))?;
    let base = lift(pullback_groupoid(&e.base, object_map))?;
    let phi =
        total.arrows.iter().map(|&(p, x, q)| base.arrow(p, e.phi[x], q).expect("base arrow of the pullback")).collect();
    let extension = GroupoidExtension::new(total.groupoid.clone(), base.groupoid.clone(), phi, None)?;
    Ok(PulledBackExtension { extension, total, base })
}
