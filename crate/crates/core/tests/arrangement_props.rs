use fatpoints::arrangements::{
    check_lemma, lemma_bound, make_pencil_star_retrying, singular_points, transform, transform_point, Arrangement,
    PlanePoint, ProjLine,
};
use fatpoints::verify::random_arrangement;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn choose2(n: usize) -> usize {
    n * n.saturating_sub(1) / 2
}

/// Product of random elementary integer matrices: determinant +-1.
fn unimodular(seed: u64) -> [[i64; 3]; 3] {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut g = [[1, 0, 0], [0, 1, 0], [0, 0, 1]];
    for _ in 0..6 {
        let (i, j) = (rng.gen_range(0..3), rng.gen_range(0..3));
        if i == j {
            g[i] = g[i].map(|x: i64| -x);
            continue;
        }
        let k = rng.gen_range(-3..=3);
        let row = g[j];
        for c in 0..3 {
            g[i][c] += k * row[c];
        }
    }
    g
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn multiplicities_account_for_every_pair(d in 2usize..9, m in 0usize..9, seed in any::<u64>()) {
        let arr = random_arrangement(d, m.min(d), seed);
        let total: usize = singular_points(&arr).iter().map(|s| choose2(s.multiplicity)).sum();
        prop_assert_eq!(total, choose2(d));
    }

    #[test]
    fn bound_holds_with_equality_only_when_extremal(d in 2usize..9, m in 2usize..9, seed in any::<u64>()) {
        let arr = random_arrangement(d, m.min(d), seed);
        prop_assume!(arr.multiplicity_at_q() >= 2);
        let rep = check_lemma(&arr).unwrap();
        prop_assert!(rep.within_bound());
        prop_assert_eq!(rep.attains_bound(), rep.extremal_structure);
    }

    #[test]
    fn singular_points_follow_substitutions(d in 2usize..8, m in 0usize..8, seed in any::<u64>(), gseed in any::<u64>()) {
        let arr = random_arrangement(d, m.min(d), seed);
        let g = unimodular(gseed);
        let moved = transform(&arr, &g).unwrap();
        let before = singular_points(&arr);
        let after = singular_points(&moved);
        prop_assert_eq!(before.len(), after.len());
        for s in &before {
            let image = transform_point(&s.point, &g);
            prop_assert_eq!(moved.multiplicity_at(&image), s.multiplicity);
        }
        prop_assert_eq!(moved.multiplicity_at_q(), arr.multiplicity_at_q());
    }
}

#[test]
fn generated_pencil_star_attains_bound() {
    for (d, m) in [(4, 2), (5, 2), (6, 3), (8, 4), (9, 3)] {
        for seed in 0..5 {
            let arr = make_pencil_star_retrying(d, m, seed * 1000, 100).unwrap();
            let rep = check_lemma(&arr).unwrap();
            assert_eq!(rep.singular_away, lemma_bound(d, m).unwrap(), "d={d} m={m}");
            assert!(rep.extremal_structure, "{:?}", rep.violations);
        }
    }
}

#[test]
fn small_bound_values() {
    assert_eq!(lemma_bound(5, 2).unwrap(), 9);
    assert_eq!(lemma_bound(6, 3).unwrap(), 12);
    assert!(lemma_bound(3, 4).is_err());
}

#[test]
fn node_moved_onto_pencil_line_loses_a_point() {
    let arr = make_pencil_star_retrying(6, 3, 3, 100).unwrap();
    let lines = arr.lines();
    let node = lines[3].meet(&lines[4]).unwrap();
    let mut bent = lines.to_vec();
    bent[0] = ProjLine::through(&node, &PlanePoint::center()).unwrap();
    let Ok(bent) = Arrangement::new(bent, PlanePoint::center()) else { panic!("still distinct") };
    let rep = check_lemma(&bent).unwrap();
    assert!(rep.singular_away < lemma_bound(6, 3).unwrap());
    assert!(!rep.extremal_structure);
}
