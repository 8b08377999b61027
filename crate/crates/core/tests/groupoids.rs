mod common;

use gerbe_core::cohomology::{groupoid_cohomology, GroupoidModule, Side};
use gerbe_core::groupoid::{
    check_simplicial_identities, is_morita_morphism, nerve_tuples, pullback_groupoid, CechGroupoid, CoverMode,
    FiniteGroupoid,
};
use gerbe_core::{Coefficients, CohomologyValue, Limits};
use proptest::prelude::*;
use rand::Rng;

fn random_groupoid(seed: u64) -> FiniteGroupoid {
    let mut r = common::rng(seed);
    let cover = common::cover(&mut r, 3, 3, CoverMode::Pointwise);
    let cech = CechGroupoid::new(&cover).unwrap().groupoid;
    let g = FiniteGroupoid::from_group(&common::small_groups()[[1, 2, 3, 5, 7][r.gen_range(0..5)]]);
    match r.gen_range(0..3) {
        0 => cech,
        1 => FiniteGroupoid::disjoint_union(&cech, &g),
        _ => pullback_groupoid(&g, &[0, 0]).unwrap().groupoid,
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn nerve_faces_satisfy_simplicial_identities(seed in any::<u64>()) {
        let g = random_groupoid(seed);
        let levels: Vec<_> = (0..=3).map(|n| nerve_tuples(&g, n).unwrap()).collect();
        for n in 1..=3 {
            prop_assert!(check_simplicial_identities(&levels[n], &levels[n - 1]).is_ok());
        }
        // X_1 is the arrow set and X_2 the composable pairs
        prop_assert_eq!(levels[1].len(), g.n_arrows());
        prop_assert_eq!(levels[2].len(), g.n_pairs());
    }

    #[test]
    fn trivial_coefficients_see_components_and_agree_on_both_sides(seed in any::<u64>(), p in prop::sample::select(vec![0u64, 2, 3])) {
        let g = random_groupoid(seed);
        let coeff = if p == 0 { Coefficients::Rational } else { Coefficients::Mod(p) };
        let m = GroupoidModule::trivial(g.clone(), 1, coeff);
        let limits = Limits::default();
        let h0 = groupoid_cohomology(&m, 0, Side::Right, &limits).unwrap();
        let comps = g.connected_components().len();
        match h0 {
            CohomologyValue::Rational { dim } => prop_assert_eq!(dim, comps),
            CohomologyValue::Finite(a) => prop_assert_eq!(a.order(), Some(p.pow(comps as u32))),
        }
        for n in 0..=2 {
            prop_assert_eq!(
                groupoid_cohomology(&m, n, Side::Left, &limits).unwrap(),
                groupoid_cohomology(&m, n, Side::Right, &limits).unwrap()
            );
        }
    }

    #[test]
    fn pullback_projection_is_morita(seed in any::<u64>()) {
        let mut r = common::rng(seed);
        let g = random_groupoid(seed);
        let mut j: Vec<usize> = (0..g.n_objects()).collect();
        j.extend((0..r.gen_range(0..3)).map(|_| r.gen_range(0..g.n_objects())));
        let pb = pullback_groupoid(&g, &j).unwrap();
        prop_assert!(is_morita_morphism(&pb.groupoid, &g, &pb.projection).is_ok());
    }
}
