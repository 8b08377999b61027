//! Acceptance suite: one line per criterion, nonzero exit on any failure.

mod gen;
mod oracle;
#[path = "../support/mod.rs"]
mod support;

use std::collections::BTreeSet;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::sync::Arc;
use std::time::{Duration, Instant};

use gerbe_core::algebra::{group_cohomology, Automorphism, FiniteGroup, GroupModule};
use gerbe_core::cohomology::{
    cech_cohomology, central_class_representative, classify_bound_gerbes, groupoid_cohomology, groupoid_differential,
    GroupoidModule, Side,
};
use gerbe_core::extension::{
    band, band_class, complete_cocycle, extension_from_cocycle, induced_from_central, is_central, validate_cocycle,
    BandClass, NonAbelianCocycle, Sites, SortedCocycleData,
};
use gerbe_core::groupoid::{check_simplicial_identities, nerve_tuples, CechGroupoid, CoverMode, CoverModel, Nerve};
use gerbe_core::linalg::QMatrix;
use gerbe_core::morita::{
    check_band_morita, check_cohomology_morita, pullback_extension, refinement_extension, MoritaData, RefinementMap,
};
use gerbe_core::{Coefficients, CohomologyValue, Limits};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};

use gen::{Group, Rng8};

type Outcome = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

struct Criterion {
    name: &'static str,
    budget: Option<Duration>,
    run: fn() -> Outcome,
}

fn main() {
    let secs = |s| Some(Duration::from_secs(s));
    let criteria = [
        Criterion { name: "cocycle relations iff associative product", budget: secs(10), run: associativity },
        Criterion { name: "bound gerbe counts over the tetrahedron boundary", budget: secs(5), run: giraud_counts },
        Criterion { name: "band detection", budget: secs(1), run: band_detection },
        Criterion { name: "central cocycle roundtrip", budget: secs(10), run: central_roundtrip },
        Criterion { name: "differentials square to zero, simplicial identities", budget: secs(10), run: differentials },
        Criterion { name: "one-object groupoid cohomology equals group cohomology", budget: None, run: one_object },
        Criterion { name: "Morita invariance of band and cohomology", budget: secs(20), run: morita },
        Criterion { name: "automorphism and center facts", budget: secs(5), run: aut_facts },
        Criterion { name: "Čech cohomology against cochain enumeration", budget: None, run: cech_oracle },
        Criterion { name: "deterministic CLI reports", budget: None, run: determinism },
    ];
    // failures are reported per criterion below
    std::panic::set_hook(Box::new(|_| {}));
    let mut failed = 0;
    for (k, c) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = catch_unwind(AssertUnwindSafe(c.run)).unwrap_or_else(|e| {
            let msg = e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        let elapsed = start.elapsed();
        let result = match (result, c.budget) {
            (Ok(_), Some(b)) if elapsed > b => Err(format!("took longer than {:.0} s", b.as_secs_f64())),
            (r, _) => r,
        };
        let (tag, detail) = match &result {
            Ok(d) => ("PASS", d.clone()),
            Err(d) => {
                failed += 1;
                ("FAIL", d.clone())
            }
        };
        println!("criterion {:>2} [{tag}] {}: {detail} ({:.2} s)", k + 1, c.name, elapsed.as_secs_f64());
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}

fn rng(seed: u64) -> Rng8 {
    Rng8::seed_from_u64(seed)
}

fn extension_ok(d: &NonAbelianCocycle) -> bool {
    extension_from_cocycle(d).is_ok()
}

/// A copy of `d` with one λ or one g value replaced by a different one.
fn mutate(rng: &mut Rng8, d: &NonAbelianCocycle, g: &Group) -> NonAbelianCocycle {
    let mut m = d.clone();
    let change_lambda = g.aut.reps.len() > 1 && rng.gen_bool(0.5);
    if change_lambda {
        let &(p, i, j) = d.cech.arrows.choose(rng).unwrap();
        let old = d.lambda(p, i, j);
        let f = g.aut.reps.iter().filter(|f| *f != old).collect::<Vec<_>>();
        m.set_lambda(p, i, j, (*f.choose(rng).unwrap()).clone());
    } else {
        let triples: Vec<_> = d.triples().collect();
        let &(p, i, j, k) = triples.choose(rng).unwrap();
        let old = d.g(p, i, j, k);
        let x = (old + rng.gen_range(1..g.group.order())) % g.group.order();
        m.set_g(p, i, j, k, x);
    }
    m
}

fn associativity() -> Outcome {
    let mut r = rng(1);
    let groups: Vec<Group> =
        [FiniteGroup::cyclic(2), FiniteGroup::cyclic(4), FiniteGroup::symmetric3(), FiniteGroup::quaternion()]
            .into_iter()
            .map(gen::group)
            .collect();
    let (mut valid, mut mutations) = (0, 0);
    for case in 0..200 {
        let g = &groups[case % groups.len()];
        let mode = gen::random_mode(&mut r);
        let cover = gen::cover(&mut r, 4, 5, mode);
        let cech = Arc::new(CechGroupoid::new(&cover).unwrap());
        let d = if r.gen_bool(0.6) { gen::valid_cocycle(&mut r, g, cech) } else { gen::noisy_cocycle(&mut r, g, cech) };
        let expected = oracle::twisted_product_is_groupoid(&d);
        ensure!(validate_cocycle(&d).is_valid() == expected, "case {case}: validator disagrees with the oracle");
        ensure!(extension_ok(&d) == expected, "case {case}: extension_from_cocycle disagrees with the oracle");
        if !expected {
            continue;
        }
        valid += 1;
        for _ in 0..2 {
            let m = mutate(&mut r, &d, g);
            ensure!(!oracle::twisted_product_is_groupoid(&m), "case {case}: oracle accepts a mutation");
            ensure!(!validate_cocycle(&m).is_valid(), "case {case}: validator accepts a mutation");
            ensure!(!extension_ok(&m), "case {case}: extension accepts a mutation");
            mutations += 1;
        }
    }
    Ok(format!("200 instances, {valid} valid, {mutations} mutations rejected"))
}

fn giraud_counts() -> Outcome {
    let nerve = CoverModel::tetrahedron_boundary().nerve();
    let limits = Limits::default();
    let mut counts = Vec::new();
    for (g, expected) in [(FiniteGroup::symmetric3(), 1), (FiniteGroup::quaternion(), 2), (FiniteGroup::cyclic(4), 4)] {
        let c = classify_bound_gerbes(&nerve, &g, &limits).map_err(|e| e.to_string())?;
        let mut factors = c.center_structure.torsion.clone();
        if factors.is_empty() {
            factors.push(1);
        }
        let snf = cech_cohomology(&nerve, &factors, 2).map_err(|e| e.to_string())?.order();
        let oracle = oracle::central_h2_order(&nerve, &g);
        let reps = c.representatives.as_ref().map(Vec::len);
        ensure!(
            c.count == expected && c.h2.order() == Some(expected) && snf == Some(expected) && oracle == expected,
            "expected {expected}: count {}, |H²| {:?}, SNF {snf:?}, oracle {oracle}",
            c.count,
            c.h2.order()
        );
        ensure!(reps == Some(expected as usize), "expected {expected} representatives, got {reps:?}");
        counts.push(c.count.to_string());
    }
    Ok(format!("S3, Q8, Z4 give {}", counts.join(", ")))
}

fn z3_outer_edge() -> (Group, NonAbelianCocycle) {
    let g = gen::group(FiniteGroup::cyclic(3));
    let cech = Arc::new(CechGroupoid::new(&CoverModel::circle()).unwrap());
    let mut sorted = SortedCocycleData::default();
    for &(p, i, j) in cech.arrows.iter().filter(|a| a.1 < a.2) {
        let f = if (i, j) == (0, 1) { vec![0, 2, 1] } else { vec![0, 1, 2] };
        sorted.lambda.insert((p, i, j), Automorphism { perm: f });
    }
    let d = complete_cocycle(g.group.clone(), cech, &sorted).expect("no triangles to violate");
    (g, d)
}

fn band_detection() -> Outcome {
    let (g, d) = z3_outer_edge();
    let b = band(&d, &g.aut);
    // holonomy around the circle, from the band values on its three edges
    let edge = |i, j| b.values[d.cech.arrow(d.cech.cover.intersection(&[i, j])[0], i, j).unwrap()];
    let hol = g.aut.out.product(&[edge(0, 1), edge(1, 2), edge(2, 0)]);
    ensure!(hol != 0, "oracle holonomy is trivial");
    match band_class(&b, &d.cech.groupoid, &Sites::for_cocycle(&d), &g.aut.out) {
        BandClass::Nontrivial { loops } if !loops.is_empty() && loops.iter().all(|w| w.holonomy != 0) => {}
        other => return Err(format!("outer edge cocycle: {other:?}")),
    }
    let mut r = rng(3);
    let covers = [CoverModel::circle(), CoverModel::tetrahedron_boundary(), CoverModel::star(4)];
    let groups = [gen::group(FiniteGroup::symmetric3()), gen::group(FiniteGroup::quaternion())];
    let mut checked = 0;
    for _ in 0..10 {
        for c in &covers {
            for g in &groups {
                let c = c.clone().with_mode(gen::random_mode(&mut r));
                let d = gen::valid_cocycle(&mut r, g, Arc::new(CechGroupoid::new(&c).unwrap()));
                let b = band(&d, &g.aut);
                if let BandClass::Nontrivial { .. } =
                    band_class(&b, &d.cech.groupoid, &Sites::for_cocycle(&d), &g.aut.out)
                {
                    return Err("twisted and gauged cocycle has a nontrivial band".into());
                }
                checked += 1;
            }
        }
    }
    Ok(format!("outer edge holonomy {hol}, {checked} twisted cocycles trivial"))
}

fn central_roundtrip() -> Outcome {
    let mut r = rng(4);
    let g = gen::group(FiniteGroup::quaternion());
    let grp = &g.group;
    let center = oracle::center(grp);
    let limits = Limits::default();
    let mut classes = BTreeSet::new();
    for case in 0..50 {
        let cover = if case % 3 == 0 {
            CoverModel::tetrahedron_boundary()
        } else {
            gen::cover(&mut r, 4, 5, CoverMode::NerveConstant)
        };
        let nerve = cover.nerve();
        let tris = nerve.dim(2).to_vec();
        let mut values: Vec<usize> = tris.iter().map(|_| *center.choose(&mut r).unwrap()).collect();
        if !gerbe_core::cohomology::is_central_cocycle(&nerve, grp, &values) {
            values = coboundary(&nerve, grp, &center, &mut r);
        }
        let cech = Arc::new(CechGroupoid::new(&cover).unwrap());
        let mut sorted = SortedCocycleData::default();
        for &(p, i, j) in cech.arrows.iter().filter(|a| a.1 < a.2) {
            sorted.lambda.insert((p, i, j), Automorphism::identity(grp.order()));
        }
        for (t, s) in tris.iter().enumerate() {
            for p in cover.intersection(s) {
                sorted.g.insert((p, s[0], s[1], s[2]), values[t]);
            }
        }
        let d = complete_cocycle(grp.clone(), cech, &sorted).map_err(|e| format!("case {case}: {e}"))?;
        let (e, chi) = induced_from_central(&d, &center).map_err(|e| format!("case {case}: {e}"))?;
        let cert = is_central(&e, grp.clone(), &chi, &g.aut).map_err(|e| format!("case {case}: {e}"))?;
        let n = match (cert.central, cert.normalized) {
            (true, Some(n)) => n,
            _ => return Err(format!("case {case}: induced extension is not central")),
        };
        ensure!(n.lambda_by_arrow().iter().all(Automorphism::is_identity), "case {case}: normalized λ is not trivial");
        let mut recovered = Vec::with_capacity(tris.len());
        for s in &tris {
            let at: BTreeSet<usize> = cover.intersection(s).into_iter().map(|p| n.g(p, s[0], s[1], s[2])).collect();
            ensure!(at.len() == 1, "case {case}: normalized g varies over the points of {s:?}");
            let v = *at.first().unwrap();
            ensure!(center.contains(&v), "case {case}: normalized g is not central");
            recovered.push(v);
        }
        let a = central_class_representative(&nerve, grp, &values, &limits).map_err(|e| e.to_string())?;
        let b = central_class_representative(&nerve, grp, &recovered, &limits).map_err(|e| e.to_string())?;
        ensure!(a == b, "case {case}: representatives differ");
        ensure!(
            oracle::central_cohomologous(&nerve, grp, &values, &recovered),
            "case {case}: oracle finds no coboundary"
        );
        classes.insert((case % 3 == 0, a));
    }
    Ok(format!("50 cocycles recovered up to coboundary, {} distinct classes", classes.len()))
}

fn coboundary(nerve: &Nerve, g: &FiniteGroup, center: &[usize], r: &mut Rng8) -> Vec<usize> {
    let edges = nerve.dim(1);
    let h: Vec<usize> = edges.iter().map(|_| *center.choose(r).unwrap()).collect();
    let at = |a: usize, b: usize| h[edges.iter().position(|e| e[0] == a && e[1] == b).unwrap()];
    nerve.dim(2).iter().map(|t| g.product(&[at(t[1], t[2]), g.inv(at(t[0], t[2])), at(t[0], t[1])])).collect()
}

fn is_zero_in(coeff: Coefficients, m: &QMatrix) -> bool {
    coeff.matrices_equal(m, &QMatrix::zeros(m.rows(), m.cols()))
}

fn differentials() -> Outcome {
    let mut r = rng(5);
    let mut tuples = 0;
    for case in 0..100 {
        let module = gen::groupoid_module(&mut r, 1);
        for side in [Side::Left, Side::Right] {
            let d = |n| groupoid_differential(&module, n, side).map_err(|e| format!("case {case}: {e}"));
            let (d1, d2, d3) = (d(1)?, d(2)?, d(3)?);
            ensure!(is_zero_in(module.coeff, &d2.mul(&d1).to_dense()), "case {case}: {side:?} d2·d1 ≠ 0");
            ensure!(is_zero_in(module.coeff, &d3.mul(&d2).to_dense()), "case {case}: {side:?} d3·d2 ≠ 0");
        }
        let base = &module.base;
        let levels: Vec<_> = (0..=3).map(|n| nerve_tuples(base, n).unwrap()).collect();
        for n in 1..=3 {
            ensure!(
                check_simplicial_identities(&levels[n], &levels[n - 1]).is_ok(),
                "case {case}: simplicial identity fails on X_{n}"
            );
            for (t, x) in levels[n].tuples.iter().enumerate() {
                for i in 0..=n {
                    ensure!(
                        levels[n - 1].tuples[levels[n].faces[i][t]] == oracle::face(base, x, i),
                        "case {case}: face {i} of {x:?} differs from the oracle"
                    );
                }
            }
        }
        for x in &levels[3].tuples {
            for j in 0..=3 {
                for i in 0..j {
                    let a = oracle::face(base, &oracle::face(base, x, j), i);
                    let b = oracle::face(base, &oracle::face(base, x, i), j - 1);
                    ensure!(a == b, "case {case}: ε_{i}ε_{j} ≠ ε_{}ε_{i} on {x:?}", j - 1);
                }
            }
        }
        tuples += levels[3].len();
    }
    Ok(format!("100 modules, both sides, {tuples} tuples in X_3"))
}

fn one_object() -> Outcome {
    let limits = Limits::default();
    let mut checks = 0;
    for g in [FiniteGroup::cyclic(2), FiniteGroup::cyclic(3), FiniteGroup::symmetric3()] {
        for sign in g.sign_characters() {
            for coeff in [Coefficients::Rational, Coefficients::Mod(2), Coefficients::Mod(3)] {
                let m = GroupModule::from_sign(&sign, coeff);
                let gm = GroupoidModule::from_group_module(&g, &m);
                for n in 0..=2 {
                    let expected = group_cohomology(&g, &m, n, &limits).map_err(|e| e.to_string())?;
                    for side in [Side::Left, Side::Right] {
                        let got = groupoid_cohomology(&gm, n, side, &limits).map_err(|e| e.to_string())?;
                        ensure!(
                            got == expected,
                            "|G| = {}, {coeff}, degree {n}, {side:?}: {got:?} ≠ {expected:?}",
                            g.order()
                        );
                        checks += 1;
                    }
                }
            }
        }
    }
    Ok(format!("{checks} comparisons"))
}

fn trivial_module(r: &mut Rng8, base: &gerbe_core::groupoid::FiniteGroupoid) -> GroupoidModule {
    let coeff = gen::coefficients(r);
    GroupoidModule::trivial(base.clone(), r.gen_range(1..=2), coeff)
}

fn morita() -> Outcome {
    let mut r = rng(7);
    let limits = Limits::default();
    let groups: Vec<Group> = [FiniteGroup::cyclic(3), FiniteGroup::symmetric3(), FiniteGroup::quaternion()]
        .into_iter()
        .map(gen::group)
        .collect();
    let mut nontrivial = 0;
    for case in 0..50 {
        let (g, d) = if case % 5 == 0 {
            z3_outer_edge()
        } else {
            let g = gen::group(groups.choose(&mut r).unwrap().group.as_ref().clone());
            let mode = gen::random_mode(&mut r);
            let cover = gen::cover(&mut r, 3, 3, mode);
            let d = gen::valid_cocycle(&mut r, &g, Arc::new(CechGroupoid::new(&cover).unwrap()));
            (g, d)
        };
        let b = band(&d, &g.aut);
        if let BandClass::Nontrivial { .. } = band_class(&b, &d.cech.groupoid, &Sites::for_cocycle(&d), &g.aut.out) {
            nontrivial += 1;
        }
        let (e, chi) = extension_from_cocycle(&d).map_err(|e| format!("case {case}: {e}"))?;
        let module = trivial_module(&mut r, &e.base);
        let (e2, chi2, data) = if case % 2 == 0 {
            let extra = r.gen_range(0..=2);
            let j = gen::surjection(&mut r, e.base.n_objects(), extra);
            let pb = pullback_extension(&e, &j).map_err(|e| format!("case {case}: {e}"))?;
            let chi2 = pb.trivialization(&chi);
            (pb.extension.clone(), chi2, MoritaData::Morphism(pb.base_map().clone()))
        } else {
            let (fine, sets) = gen::refinement(&mut r, &d.cech.cover);
            let map = RefinementMap { sets, points: None };
            let re = refinement_extension(&d, &fine, &map).map_err(|e| format!("case {case}: {e}"))?;
            (re.extension, re.trivialization, MoritaData::Refinement(map))
        };
        let bands = check_band_morita(&e, &chi, &e2, &chi2, &data, &g.group, &g.aut)
            .map_err(|e| format!("case {case}: {e}"))?;
        ensure!(bands.holds, "case {case}: band comparison fails at {:?}", bands.witness);
        let coh = check_cohomology_morita(&e, &e2, &data, &module, &limits).map_err(|e| format!("case {case}: {e}"))?;
        ensure!(coh.holds, "case {case}: cohomology differs: {:?}", coh.degrees);
        ensure!(
            coh.degrees.iter().all(|(a, _)| matches!(
                (a, module.coeff),
                (CohomologyValue::Rational { .. }, Coefficients::Rational)
                    | (CohomologyValue::Finite(_), Coefficients::Mod(_))
            )),
            "case {case}: cohomology of the wrong kind"
        );
    }
    Ok(format!("25 pullbacks, 25 refinements, {nontrivial} with nontrivial band"))
}

fn aut_facts() -> Outcome {
    let limits = Limits::default();
    let s3 = FiniteGroup::symmetric3();
    let q8 = FiniteGroup::quaternion();
    let mut facts = Vec::new();
    for (name, g, aut_order, out_order, center_order) in [("S3", &s3, 6, 1, 1), ("Q8", &q8, 24, 6, 2)] {
        let auts = oracle::automorphisms(g);
        let inn = oracle::inner_automorphisms(g);
        let z = oracle::center(g);
        ensure!(
            auts.len() == aut_order && auts.len() / inn.len() == out_order && z.len() == center_order,
            "{name}: oracle gives |Aut| {}, |Out| {}, |Z| {}",
            auts.len(),
            auts.len() / inn.len(),
            z.len()
        );
        let s = gerbe_core::algebra::automorphism_structure(g, &limits).map_err(|e| e.to_string())?;
        let reps: BTreeSet<Vec<usize>> = s.reps.iter().map(|f| f.perm.clone()).collect();
        ensure!(reps == auts, "{name}: automorphism sets differ");
        ensure!(s.out.order() == out_order && s.inn.len() == inn.len(), "{name}: Out or Inn differs");
        ensure!(g.center() == z, "{name}: centers differ");
        facts.push(format!("{name}: |Aut| {aut_order}, |Out| {out_order}, |Z| {center_order}"));
    }
    Ok(facts.join("; "))
}

/// Faces-closed families of simplices on `n` vertices with every vertex
/// present.
fn all_complexes(n: usize) -> Vec<Vec<Vec<usize>>> {
    let higher: Vec<Vec<usize>> =
        (1u32..1 << n).filter(|m| m.count_ones() >= 2).map(|m| (0..n).filter(|&v| m >> v & 1 == 1).collect()).collect();
    let mut out = Vec::new();
    for mask in 0u64..1 << higher.len() {
        let chosen: BTreeSet<Vec<usize>> =
            (0..higher.len()).filter(|&k| mask >> k & 1 == 1).map(|k| higher[k].clone()).collect();
        let closed = chosen.iter().all(|s| {
            s.len() == 2
                || (0..s.len()).all(|i| {
                    let mut f = s.clone();
                    f.remove(i);
                    chosen.contains(&f)
                })
        });
        if closed {
            let mut all: Vec<Vec<usize>> = (0..n).map(|v| vec![v]).collect();
            all.extend(chosen);
            out.push(all);
        }
    }
    out
}

fn closure(n: usize, seeds: &[Vec<usize>]) -> Vec<Vec<usize>> {
    let mut all: BTreeSet<Vec<usize>> = (0..n).map(|v| vec![v]).collect();
    for s in seeds {
        for m in 1u32..1 << s.len() {
            all.insert((0..s.len()).filter(|&k| m >> k & 1 == 1).map(|k| s[k]).collect());
        }
    }
    all.into_iter().collect()
}

/// The cover whose points are the maximal simplices; its nerve is the
/// complex.
fn realize(n: usize, simplices: &[Vec<usize>]) -> CoverModel {
    let maximal: Vec<&Vec<usize>> = simplices
        .iter()
        .filter(|s| !simplices.iter().any(|t| t.len() > s.len() && s.iter().all(|v| t.contains(v))))
        .collect();
    let sets = (0..n).map(|v| (0..maximal.len()).filter(|&p| maximal[p].contains(&v)).collect()).collect();
    CoverModel::new(maximal.len(), sets, CoverMode::NerveConstant).unwrap()
}

fn by_dimension(simplices: &[Vec<usize>]) -> Vec<Vec<Vec<usize>>> {
    let top = simplices.iter().map(Vec::len).max().unwrap_or(1);
    (1..=top)
        .map(|k| {
            let mut level: Vec<Vec<usize>> = simplices.iter().filter(|s| s.len() == k).cloned().collect();
            level.sort();
            level
        })
        .collect()
}

fn cech_oracle() -> Outcome {
    let mut complexes: Vec<(usize, Vec<Vec<usize>>)> = Vec::new();
    for n in 1..=4 {
        complexes.extend(all_complexes(n).into_iter().map(|c| (n, c)));
    }
    let exhaustive = complexes.len();
    let mut r = rng(9);
    while complexes.len() < exhaustive + 60 {
        let n = r.gen_range(5..=6);
        let seeds: Vec<Vec<usize>> = (0..r.gen_range(1..=4))
            .map(|_| {
                let mut s: Vec<usize> = (0..n).collect();
                s.shuffle(&mut r);
                s.truncate(r.gen_range(2..=4));
                s.sort();
                s
            })
            .collect();
        let c = closure(n, &seeds);
        if by_dimension(&c).iter().all(|l| l.len() <= 6) {
            complexes.push((n, c));
        }
    }
    let mut checks = 0;
    for (n, c) in &complexes {
        let levels = by_dimension(c);
        let nerve = realize(*n, c).nerve();
        for (k, level) in levels.iter().enumerate() {
            ensure!(nerve.dim(k) == level.as_slice(), "realized nerve differs from {c:?}");
        }
        for m in [2u64, 3, 4] {
            for k in 0..=3 {
                let h = cech_cohomology(&nerve, &[m], k).map_err(|e| e.to_string())?;
                ensure!(h.free_rank == 0, "free part with finite coefficients");
                for d in (1..=m).filter(|d| m % d == 0) {
                    let got: u64 = h.torsion.iter().map(|&t| gerbe_core::linalg::abelian::gcd(t, d)).product();
                    let want = oracle::cech_torsion_count(&levels, m as usize, k, d as usize);
                    ensure!(got == want, "{c:?}: H^{k}(Z/{m})[{d}] is {want}, library gives {h}");
                    checks += 1;
                }
            }
        }
    }
    Ok(format!("{} complexes ({exhaustive} exhaustive), {checks} torsion counts", complexes.len()))
}

fn determinism() -> Outcome {
    for (name, args, code) in support::CASES {
        let first = support::run_gerbe(args);
        let second = support::run_gerbe(args);
        ensure!(first == second, "{name}: two runs differ");
        ensure!(first.0 == *code, "{name}: exit code {} instead of {code}", first.0);
        let golden = std::fs::read(support::golden_path(name)).map_err(|e| format!("{name}: {e}"))?;
        ensure!(first.1 == golden, "{name}: report differs from the golden file");
    }
    Ok(format!("{} cases byte-identical across runs and to the golden files", support::CASES.len()))
}
