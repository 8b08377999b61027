//! Pullback groupoids and Morita morphisms.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use super::groupoid::{FiniteGroupoid, GroupoidMorphism};
use crate::error::GroupoidError;

/// `J^*Γ`: objects are the domain of `J`, arrows are triples `(p, x, q)`
/// with `J(p) = src(x)` and `J(q) = tgt(x)`, in lexicographic order.
#[derive(Clone, Debug)]
pub struct PullbackGroupoid {
    pub groupoid: FiniteGroupoid,
    pub arrows: Vec<(usize, usize, usize)>,
    /// `(p, x, q) ↦ x`, `p ↦ J(p)`.
    pub projection: GroupoidMorphism,
    index: HashMap<(usize, usize, usize), usize>,
}

impl PullbackGroupoid {
    pub fn arrow(&self, p: usize, x: usize, q: usize) -> Option<usize> {
        self.index.get(&(p, x, q)).copied()
    }
}

pub fn pullback_groupoid(base: &FiniteGroupoid, object_map: &[usize]) -> Result<PullbackGroupoid, GroupoidError> {
    let mut hit = vec![false; base.n_objects()];
    for &o in object_map {
        if o >= base.n_objects() {
            return Err(GroupoidError::NotMorphism(format!("object {o} out of range")));
        }
        hit[o] = true;
    }
    if let Some(o) = hit.iter().position(|h| !h) {
        return Err(GroupoidError::NotSurjective(o));
    }
    let mut over: Vec<Vec<usize>> = vec![Vec::new(); base.n_objects()];
    for (p, &o) in object_map.iter().enumerate() {
        over[o].push(p);
    }
    let mut arrows = Vec::new();
    for (p, &o) in object_map.iter().enumerate() {
        for &x in base.out_arrows(o) {
            for &q in &over[base.tgt(x)] {
                arrows.push((p, x, q));
            }
        }
    }
    arrows.sort_unstable();
    let index: HashMap<_, _> = arrows.iter().enumerate().map(|(k, &a)| (a, k)).collect();
    let src = arrows.iter().map(|a| a.0).collect();
    let tgt = arrows.iter().map(|a| a.2).collect();
    let unit = object_map.iter().enumerate().map(|(p, &o)| index[&(p, base.unit(o), p)]).collect();
    let groupoid = FiniteGroupoid::new(object_map.len(), src, tgt, unit, |a, b| {
        let (p, x, _) = arrows[a];
        let (_, y, r) = arrows[b];
        index[&(p, base.mul(x, y), r)]
    })?;
    let projection = GroupoidMorphism { objects: object_map.to_vec(), arrows: arrows.iter().map(|a| a.1).collect() };
    Ok(PullbackGroupoid { groupoid, arrows, projection, index })
}

/// Why a morphism is not Morita.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum MoritaWitness {
    NotMorphism(String),
    /// Object of the target with no preimage.
    NotSurjective(usize),
    /// Object of the target not isomorphic to any image object.
    NotEssentiallySurjective(usize),
    /// Two arrows `p → q` with the same image.
    NotFaithful {
        first: usize,
        second: usize,
    },
    /// Target arrow between the images of `p` and `q` that is not hit by
    /// an arrow `p → q`.
    NotFull {
        from: usize,
        to: usize,
        arrow: usize,
    },
}

/// A morphism is Morita iff it is surjective on objects and the canonical
/// comparison with the pullback along its object map is an isomorphism,
/// i.e. it is bijective on every hom-set.
pub fn is_morita_morphism(
    from: &FiniteGroupoid,
    to: &FiniteGroupoid,
    f: &GroupoidMorphism,
) -> Result<(), MoritaWitness> {
    f.check(from, to).map_err(|e| MoritaWitness::NotMorphism(e.to_string()))?;
    f.is_surjective_on_objects(to.n_objects()).map_err(MoritaWitness::NotSurjective)?;
    fully_faithful(from, to, f)
}

/// Fully faithful and essentially surjective: every object of `to` is
/// the target of an arrow from some image object. Such a functor yields a
/// bitorsor even when it misses objects, as refinements of covers do.
pub fn is_weak_equivalence(
    from: &FiniteGroupoid,
    to: &FiniteGroupoid,
    f: &GroupoidMorphism,
) -> Result<(), MoritaWitness> {
    f.check(from, to).map_err(|e| MoritaWitness::NotMorphism(e.to_string()))?;
    let mut reached = vec![false; to.n_objects()];
    for &o in &f.objects {
        for &x in to.out_arrows(o) {
            reached[to.tgt(x)] = true;
        }
    }
    if let Some(o) = reached.iter().position(|r| !r) {
        return Err(MoritaWitness::NotEssentiallySurjective(o));
    }
    fully_faithful(from, to, f)
}

fn fully_faithful(from: &FiniteGroupoid, to: &FiniteGroupoid, f: &GroupoidMorphism) -> Result<(), MoritaWitness> {
    for p in 0..from.n_objects() {
        for q in 0..from.n_objects() {
            let mut seen: HashMap<usize, usize> = HashMap::new();
            for a in from.hom(p, q) {
                if let Some(&b) = seen.get(&f.arrows[a]) {
                    return Err(MoritaWitness::NotFaithful { first: b, second: a });
                }
                seen.insert(f.arrows[a], a);
            }
            for x in to.hom(f.objects[p], f.objects[q]) {
                if !seen.contains_key(&x) {
                    return Err(MoritaWitness::NotFull { from: p, to: q, arrow: x });
                }
            }
        }
    }
    Ok(())
}
