//! Automorphism group, inner automorphisms and the outer quotient.

use std::collections::{BTreeSet, HashMap, VecDeque};

use super::group::{Automorphism, FiniteGroup};
use crate::config::Limits;
use crate::error::AlgebraError;

/// `Aut(G)` with its elements listed as permutations, together with
/// `Inn(G)` and `Out(G) = Aut(G)/Inn(G)`.
///
/// `reps` is sorted lexicographically, so index 0 is the identity; the
/// table of `aut` is `reps[a] ∘ reps[b]`. Out elements are indexed by the
/// smallest aut index in their coset.
#[derive(Clone, Debug)]
pub struct AutStructure {
    pub aut: FiniteGroup,
    pub reps: Vec<Automorphism>,
    pub inn: Vec<usize>,
    pub out: FiniteGroup,
    pub proj: Vec<usize>,
    index: HashMap<Automorphism, usize>,
    lifts: Vec<usize>,
}

impl AutStructure {
    pub fn index_of(&self, f: &Automorphism) -> Option<usize> {
        self.index.get(f).copied()
    }

    pub fn project(&self, f: &Automorphism) -> Option<usize> {
        self.index_of(f).map(|a| self.proj[a])
    }

    /// Smallest aut index mapping to the given Out element.
    pub fn lift(&self, out: usize) -> Option<usize> {
        self.lifts.get(out).copied()
    }

    pub fn lift_automorphism(&self, out: usize) -> Option<&Automorphism> {
        self.lift(out).map(|a| &self.reps[a])
    }

    pub fn is_inner(&self, f: &Automorphism) -> bool {
        self.project(f) == Some(0)
    }

    /// Some `g` with `AD_g = f`, if `f` is inner.
    pub fn inner_witness(&self, group: &FiniteGroup, f: &Automorphism) -> Option<usize> {
        group.elements().find(|&g| group.conjugation(g) == *f)
    }
}

/// Enumerates all automorphisms by choosing images of a generating set
/// and extending along words.
pub fn automorphism_structure(g: &FiniteGroup, limits: &Limits) -> Result<AutStructure, AlgebraError> {
    if g.order() > limits.max_order {
        return Err(AlgebraError::OrderBound { order: g.order(), limit: limits.max_order });
    }
    let gens = g.generating_set();
    let orders: Vec<usize> = g.elements().map(|x| g.element_order(x)).collect();
    let mut found = BTreeSet::new();
    let mut images = Vec::with_capacity(gens.len());
    search(g, &gens, &orders, &mut images, &mut found);
    let reps: Vec<Automorphism> = found.into_iter().collect();
    let index: HashMap<Automorphism, usize> = reps.iter().cloned().enumerate().map(|(i, f)| (f, i)).collect();
    let table: Vec<Vec<usize>> = reps.iter().map(|a| reps.iter().map(|b| index[&a.compose(b)]).collect()).collect();
    let aut = FiniteGroup::validate(&table)?.with_name("Aut");

    let inn: BTreeSet<usize> = g.elements().map(|x| index[&g.conjugation(x)]).collect();
    let inn: Vec<usize> = inn.into_iter().collect();

    // cosets a·Inn, numbered by their smallest member
    let mut proj = vec![usize::MAX; reps.len()];
    let mut lifts = Vec::new();
    for a in 0..reps.len() {
        if proj[a] != usize::MAX {
            continue;
        }
        let id = lifts.len();
        lifts.push(a);
        for &i in &inn {
            proj[aut.mul(a, i)] = id;
        }
    }
    let out_table: Vec<Vec<usize>> =
        lifts.iter().map(|&a| lifts.iter().map(|&b| proj[aut.mul(a, b)]).collect()).collect();
    let out = FiniteGroup::validate(&out_table)?.with_name("Out");
    Ok(AutStructure { aut, reps, inn, out, proj, index, lifts })
}

fn search(
    g: &FiniteGroup,
    gens: &[usize],
    orders: &[usize],
    images: &mut Vec<usize>,
    found: &mut BTreeSet<Automorphism>,
) {
    if images.len() == gens.len() {
        if let Some(f) = extend(g, gens, images) {
            found.insert(f);
        }
        return;
    }
    let s = gens[images.len()];
    for t in g.elements() {
        if orders[t] != orders[s] || images.contains(&t) {
            continue;
        }
        images.push(t);
        search(g, gens, orders, images, found);
        images.pop();
    }
}

/// Extends generator images to a map on all of `g`; returns it if it is a
/// bijective homomorphism.
fn extend(g: &FiniteGroup, gens: &[usize], images: &[usize]) -> Option<Automorphism> {
    let n = g.order();
    let mut perm = vec![usize::MAX; n];
    perm[0] = 0;
    let mut queue = VecDeque::from([0]);
    while let Some(x) = queue.pop_front() {
        for (&s, &t) in gens.iter().zip(images) {
            let y = g.mul(x, s);
            let fy = g.mul(perm[x], t);
            if perm[y] == usize::MAX {
                perm[y] = fy;
                queue.push_back(y);
            } else if perm[y] != fy {
                return None;
            }
        }
    }
    // f(xs) = f(x)f(s) for all x and generators s makes f a homomorphism
    let f = Automorphism { perm };
    let distinct: BTreeSet<usize> = f.perm.iter().copied().collect();
    (distinct.len() == n).then_some(f)
}
