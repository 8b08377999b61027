//! Seeded random instances: groups, covers, cocycles, groupoids, modules.

use std::sync::Arc;

use gerbe_core::algebra::{automorphism_structure, AutStructure, Automorphism, FiniteGroup};
use gerbe_core::cohomology::GroupoidModule;
use gerbe_core::extension::{gauge_by_automorphisms, twist_by_cochain, NonAbelianCocycle};
use gerbe_core::groupoid::{pullback_groupoid, CechGroupoid, CoverMode, CoverModel, FiniteGroupoid};
use gerbe_core::linalg::{q, QMatrix};
use gerbe_core::{Coefficients, Limits};
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub type Rng8 = ChaCha8Rng;

pub struct Group {
    pub group: Arc<FiniteGroup>,
    pub aut: AutStructure,
}

pub fn group(g: FiniteGroup) -> Group {
    let aut = automorphism_structure(&g, &Limits::default()).expect("small group");
    Group { group: Arc::new(g), aut }
}

/// A random nonempty subset of `0..n`, sorted.
fn subset(rng: &mut Rng8, n: usize) -> Vec<usize> {
    loop {
        let s: Vec<usize> = (0..n).filter(|_| rng.gen_bool(0.5)).collect();
        if !s.is_empty() {
            return s;
        }
    }
}

/// A cover of `1..=max_points` points by `1..=max_sets` sets; every point
/// is covered.
pub fn cover(rng: &mut Rng8, max_points: usize, max_sets: usize, mode: CoverMode) -> CoverModel {
    let points = rng.gen_range(1..=max_points);
    let n_sets = rng.gen_range(1..=max_sets);
    let mut sets: Vec<Vec<usize>> = (0..n_sets).map(|_| subset(rng, points)).collect();
    for p in 0..points {
        if !sets.iter().any(|s| s.contains(&p)) {
            let i = rng.gen_range(0..n_sets);
            sets[i].push(p);
        }
    }
    CoverModel::new(points, sets, mode).expect("valid cover")
}

pub fn random_mode(rng: &mut Rng8) -> CoverMode {
    if rng.gen_bool(0.5) {
        CoverMode::Pointwise
    } else {
        CoverMode::NerveConstant
    }
}

/// `h` per Čech arrow with `h_ii = 1`; in nerve-constant mode `h` depends
/// only on `(i, j)`.
fn cochain(rng: &mut Rng8, cech: &CechGroupoid, n: usize) -> Vec<usize> {
    let per_edge: Vec<Vec<usize>> =
        (0..cech.cover.n_sets()).map(|_| (0..cech.cover.n_sets()).map(|_| rng.gen_range(0..n)).collect()).collect();
    cech.arrows
        .iter()
        .map(|&(_, i, j)| match (i == j, cech.cover.mode) {
            (true, _) => 0,
            (false, CoverMode::NerveConstant) => per_edge[i][j],
            (false, CoverMode::Pointwise) => rng.gen_range(0..n),
        })
        .collect()
}

/// A valid cocycle: the trivial one, twisted by a random cochain and gauged
/// by random automorphisms (outer ones included), so the band can be
/// nontrivial only through the gauge.
pub fn valid_cocycle(rng: &mut Rng8, g: &Group, cech: Arc<CechGroupoid>) -> NonAbelianCocycle {
    let n = g.group.order();
    let d = NonAbelianCocycle::trivial(g.group.clone(), cech.clone());
    let h = cochain(rng, &cech, n);
    let d = twist_by_cochain(&d, &h).expect("twist");
    let per_set: Vec<Automorphism> =
        (0..cech.cover.n_sets()).map(|_| g.aut.reps.choose(rng).unwrap().clone()).collect();
    let alpha: Vec<Automorphism> = cech
        .objects
        .iter()
        .map(|&(_, i)| match cech.cover.mode {
            CoverMode::NerveConstant => per_set[i].clone(),
            CoverMode::Pointwise => g.aut.reps.choose(rng).unwrap().clone(),
        })
        .collect();
    gauge_by_automorphisms(&d, &alpha).expect("gauge")
}

/// Random values everywhere except the unit conventions on repeated
/// indices, which hold with probability one half.
pub fn noisy_cocycle(rng: &mut Rng8, g: &Group, cech: Arc<CechGroupoid>) -> NonAbelianCocycle {
    let n = g.group.order();
    let keep_units = rng.gen_bool(0.5);
    let reps = &g.aut.reps;
    let lambda: Vec<Automorphism> = cech
        .arrows
        .iter()
        .map(
            |&(_, i, j)| {
                if i == j && keep_units {
                    Automorphism::identity(n)
                } else {
                    reps.choose(rng).unwrap().clone()
                }
            },
        )
        .collect();
    let trivial = NonAbelianCocycle::trivial(g.group.clone(), cech.clone());
    let gv: Vec<usize> = trivial
        .triples()
        .map(|(_, i, j, k)| if (i == j || j == k) && keep_units { 0 } else { rng.gen_range(0..n) })
        .collect();
    NonAbelianCocycle::from_parts(g.group.clone(), cech, lambda, gv).expect("shape")
}

/// A surjective map `0..size → 0..n` with `size ≥ n`.
pub fn surjection(rng: &mut Rng8, n: usize, extra: usize) -> Vec<usize> {
    let mut m: Vec<usize> = (0..n).collect();
    m.extend((0..extra).map(|_| rng.gen_range(0..n)));
    m.shuffle(rng);
    m
}

/// A refinement of `coarse`: each set split into one or two pieces, plus
/// optionally single points. Returns the fine cover and the set map.
pub fn refinement(rng: &mut Rng8, coarse: &CoverModel) -> (CoverModel, Vec<usize>) {
    let mut sets = Vec::new();
    let mut map = Vec::new();
    for (i, s) in coarse.sets.iter().enumerate() {
        let a: Vec<usize> = s.iter().copied().filter(|_| rng.gen_bool(0.5)).collect();
        let b: Vec<usize> = s.iter().copied().filter(|p| !a.contains(p)).collect();
        for piece in [a, b] {
            if !piece.is_empty() {
                sets.push(piece);
                map.push(i);
            }
        }
        if rng.gen_bool(0.3) {
            sets.push(vec![*s.choose(rng).unwrap()]);
            map.push(i);
        }
    }
    let fine = CoverModel::new(coarse.points, sets, coarse.mode).expect("fine cover");
    (fine, map)
}

pub fn coefficients(rng: &mut Rng8) -> Coefficients {
    *[Coefficients::Rational, Coefficients::Mod(2), Coefficients::Mod(3), Coefficients::Mod(4)].choose(rng).unwrap()
}

/// A unimodular integer matrix: a product of random elementary matrices.
pub fn unimodular(rng: &mut Rng8, r: usize) -> QMatrix {
    let mut m = QMatrix::identity(r);
    for _ in 0..3 * r {
        if r < 2 {
            break;
        }
        let i = rng.gen_range(0..r);
        let j = (i + rng.gen_range(1..r)) % r;
        let c = rng.gen_range(-2i64..=2);
        let mut e = QMatrix::identity(r);
        e.set(i, j, q(c));
        m = m.mul(&e);
    }
    if rng.gen_bool(0.5) {
        let mut s = QMatrix::identity(r);
        s.set(0, 0, q(-1));
        m = m.mul(&s);
    }
    m
}

pub fn small_groups() -> Vec<FiniteGroup> {
    vec![
        FiniteGroup::cyclic(2),
        FiniteGroup::cyclic(3),
        FiniteGroup::cyclic(4),
        FiniteGroup::symmetric3(),
        FiniteGroup::quaternion(),
        FiniteGroup::dihedral(4),
    ]
}

/// A random groupoid with a module over it: a Čech groupoid with a gauge
/// module, a group with a sign or scalar module, their pullbacks, or a
/// disjoint union of two such.
pub fn groupoid_module(rng: &mut Rng8, depth: usize) -> GroupoidModule {
    let coeff = coefficients(rng);
    match rng.gen_range(0..4) {
        0 => {
            let c = cover(rng, 3, 3, CoverMode::Pointwise);
            let base = CechGroupoid::new(&c).unwrap().groupoid;
            let r = rng.gen_range(1..=2);
            let gauge: Vec<QMatrix> = (0..base.n_objects()).map(|_| unimodular(rng, r)).collect();
            GroupoidModule::from_gauge(base, coeff, &gauge).unwrap()
        }
        1 | 2 => {
            let g = small_groups().choose(rng).unwrap().clone();
            let chars = g.sign_characters();
            let sign = chars.choose(rng).unwrap();
            let gm = gerbe_core::algebra::GroupModule::from_sign(sign, coeff);
            let m = GroupoidModule::from_group_module(&g, &gm);
            if rng.gen_bool(0.5) {
                m
            } else {
                let base = FiniteGroupoid::from_group(&g);
                let pb = pullback_groupoid(&base, &surjection(rng, 1, 1)).unwrap();
                m.pullback(&pb.groupoid, &pb.projection).unwrap()
            }
        }
        _ if depth > 0 => {
            let a = groupoid_module(rng, depth - 1);
            let b = groupoid_module(rng, depth - 1);
            if a.coeff != b.coeff {
                return a;
            }
            disjoint(&a, &b)
        }
        _ => {
            let n = rng.gen_range(1..=3);
            GroupoidModule::trivial(FiniteGroupoid::pair(n), 1, coeff)
        }
    }
}

fn disjoint(a: &GroupoidModule, b: &GroupoidModule) -> GroupoidModule {
    let base = FiniteGroupoid::disjoint_union(&a.base, &b.base);
    let ranks: Vec<usize> = a.ranks.iter().chain(&b.ranks).copied().collect();
    let act: Vec<QMatrix> = a.act.iter().chain(&b.act).cloned().collect();
    GroupoidModule::new(base, a.coeff, ranks, act).unwrap()
}
