//! Random covers and cocycles from a seed.

#![allow(dead_code)]

use std::sync::Arc;

use gerbe_core::algebra::{automorphism_structure, AutStructure, Automorphism, FiniteGroup};
use gerbe_core::extension::{gauge_by_automorphisms, twist_by_cochain, NonAbelianCocycle};
use gerbe_core::groupoid::{CechGroupoid, CoverMode, CoverModel};
use gerbe_core::Limits;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn small_groups() -> Vec<FiniteGroup> {
    vec![
        FiniteGroup::cyclic(1),
        FiniteGroup::cyclic(2),
        FiniteGroup::cyclic(3),
        FiniteGroup::cyclic(4),
        FiniteGroup::cyclic(6),
        FiniteGroup::direct_product(&FiniteGroup::cyclic(2), &FiniteGroup::cyclic(2)),
        FiniteGroup::direct_product(&FiniteGroup::cyclic(2), &FiniteGroup::cyclic(4)),
        FiniteGroup::symmetric3(),
        FiniteGroup::dihedral(4),
        FiniteGroup::quaternion(),
    ]
}

pub fn aut(g: &FiniteGroup) -> AutStructure {
    automorphism_structure(g, &Limits::default()).unwrap()
}

/// At most `max_points` points and `max_sets` nonempty sets covering them.
pub fn cover(r: &mut ChaCha8Rng, max_points: usize, max_sets: usize, mode: CoverMode) -> CoverModel {
    let points = r.gen_range(1..=max_points);
    let n = r.gen_range(1..=max_sets);
    let mut sets: Vec<Vec<usize>> = (0..n).map(|_| vec![r.gen_range(0..points)]).collect();
    for s in sets.iter_mut() {
        s.extend((0..points).filter(|_| r.gen_bool(0.5)));
    }
    for p in 0..points {
        let i = r.gen_range(0..n);
        if r.gen_bool(0.3) || !sets.iter().any(|s| s.contains(&p)) {
            sets[i].push(p);
        }
    }
    CoverModel::new(points, sets, mode).unwrap()
}

/// The trivial cocycle twisted by a random cochain and gauged by random
/// automorphisms; values are constant over points in nerve-constant mode.
pub fn valid_cocycle(
    r: &mut ChaCha8Rng,
    group: &FiniteGroup,
    aut: &AutStructure,
    cover: &CoverModel,
) -> NonAbelianCocycle {
    let cech = Arc::new(CechGroupoid::new(cover).unwrap());
    let n = group.order();
    let sets = cover.n_sets();
    let pointwise = cover.mode == CoverMode::Pointwise;
    let edge: Vec<usize> = (0..sets * sets).map(|_| r.gen_range(0..n)).collect();
    let h: Vec<usize> = cech
        .arrows
        .iter()
        .map(|&(_, i, j)| match (i == j, pointwise) {
            (true, _) => 0,
            (false, true) => r.gen_range(0..n),
            (false, false) => edge[i * sets + j],
        })
        .collect();
    let per_set: Vec<Automorphism> = (0..sets).map(|_| aut.reps.choose(r).unwrap().clone()).collect();
    let alpha: Vec<Automorphism> = cech
        .objects
        .iter()
        .map(|&(_, i)| if pointwise { aut.reps.choose(r).unwrap().clone() } else { per_set[i].clone() })
        .collect();
    let d = NonAbelianCocycle::trivial(Arc::new(group.clone()), cech);
    gauge_by_automorphisms(&twist_by_cochain(&d, &h).unwrap(), &alpha).unwrap()
}
