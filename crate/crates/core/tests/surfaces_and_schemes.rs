use fatpoints::configs::{random_scheme, SchemeConstraints};
use fatpoints::exactalg::{rank_exact, BigRational};
use fatpoints::fatpoints::{
    alpha, conditions_matrix_in_charts, initial_sequence, verify_certificate, FatPointScheme, SearchOptions,
};
use fatpoints::toric::{DivisorClass, HirzebruchSurface, SurfacePoint};
use proptest::prelude::*;

fn brute_force_count(r: u32, a: i64, b: i64) -> usize {
    let mut n = 0;
    for e4 in 0..=b {
        let e2 = b - e4;
        let rest = a - i64::from(r) * e4;
        if e2 >= 0 && rest >= 0 {
            n += (rest + 1) as usize;
        }
    }
    n
}

fn constraints(kind: u8, n: usize) -> SchemeConstraints {
    match kind % 3 {
        0 => SchemeConstraints::default(),
        1 => SchemeConstraints { on_negative_curve: 1.min(n), shared_fiber: false },
        _ => SchemeConstraints { on_negative_curve: 0, shared_fiber: true },
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn basis_size_matches_formula_and_lattice_count(r in 1u32..9, d in 0u32..11) {
        let s = HirzebruchSurface::new(r).unwrap();
        let (rr, dd) = (u64::from(r), u64::from(d));
        let formula = rr * dd * (dd + 1) / 2 + (dd + 1) * (dd + 1);
        prop_assert_eq!(s.polarization_basis(d).len() as u64, formula);
        prop_assert_eq!(s.h0(d), formula);
        let class = s.minimal_polarization().scale(i64::from(d));
        prop_assert_eq!(brute_force_count(r, class.a, class.b) as u64, formula);
    }

    #[test]
    fn intersection_form(r in 1u32..9, a1 in -9i64..10, b1 in -9i64..10, a2 in -9i64..10, b2 in -9i64..10) {
        let s = HirzebruchSurface::new(r).unwrap();
        let (x, y) = (DivisorClass::new(a1, b1), DivisorClass::new(a2, b2));
        prop_assert_eq!(s.intersect(x, y), a1 * b2 + a2 * b1 - i64::from(r) * b1 * b2);
        prop_assert_eq!(s.intersect(x, y), s.intersect(y, x));
        let l = s.minimal_polarization();
        prop_assert_eq!(s.intersect(l, l), i64::from(r) + 2);
    }

    #[test]
    fn chart_normalization_represents_the_point(r in 1u32..5, x in prop::array::uniform4(-6i64..7)) {
        let s = HirzebruchSurface::new(r).unwrap();
        let Ok(p) = SurfacePoint::from_integers(x) else { return Ok(()) };
        let charts = p.valid_charts();
        prop_assert!(!charts.is_empty());
        for chart in charts {
            let (u, v) = s.normalize_to_chart(&p, chart).unwrap();
            let image = chart.point(u.clone(), v.clone());
            prop_assert!(s.same_point(&p, &image));
            for mono in s.polarization_basis(2) {
                let (a, b) = mono.localize(chart);
                let local = num_traits::pow(u.clone(), a as usize) * num_traits::pow(v.clone(), b as usize);
                prop_assert_eq!(mono.evaluate(&image), local);
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn sequences_are_monotone_and_certified(r in 1u32..4, n in 1usize..6, kind in any::<u8>(), seed in any::<u64>()) {
        let s = HirzebruchSurface::new(r).unwrap();
        let pts = random_scheme(r, n, seed, constraints(kind, n)).unwrap();
        let rep = initial_sequence(s, &pts, 4, &SearchOptions::default()).unwrap();
        prop_assert!(rep.alphas.windows(2).all(|w| w[0] <= w[1]));
        prop_assert!(rep.chudnovsky_lower <= rep.waldschmidt_upper);
        prop_assert!(rep.waldschmidt_lower() <= &rep.waldschmidt_upper);
        for (m, cert) in (1u32..).zip(&rep.certificates) {
            prop_assert_eq!(cert.multiplicity, m);
            prop_assert!(verify_certificate(s, &pts, cert));
        }
    }

    #[test]
    fn dropping_points_never_raises_alpha(r in 1u32..4, n in 2usize..6, m in 1u32..4, seed in any::<u64>()) {
        let s = HirzebruchSurface::new(r).unwrap();
        let pts = random_scheme(r, n, seed, SchemeConstraints::default()).unwrap();
        let opts = SearchOptions::default();
        let full = alpha(s, &pts, m, &opts).unwrap().alpha;
        let sub = alpha(s, &pts[1..], m, &opts).unwrap().alpha;
        prop_assert!(sub <= full);
    }

    #[test]
    fn rank_does_not_depend_on_charts(r in 1u32..4, n in 1usize..4, m in 1u32..4, d in 1u32..5, seed in any::<u64>(), pick in any::<u64>()) {
        let s = HirzebruchSurface::new(r).unwrap();
        let pts = random_scheme(r, n, seed, constraints(seed as u8, n)).unwrap();
        let scheme = FatPointScheme::new(s, pts.clone(), m).unwrap();
        let mut ranks = Vec::new();
        for shift in 0..3u64 {
            let charts: Vec<_> = pts
                .iter()
                .enumerate()
                .map(|(i, p)| {
                    let valid = p.valid_charts();
                    valid[((pick >> (2 * i)) as usize + shift as usize) % valid.len()]
                })
                .collect();
            ranks.push(rank_exact(&conditions_matrix_in_charts(&scheme, d, &charts).unwrap().matrix));
        }
        prop_assert!(ranks.windows(2).all(|w| w[0] == w[1]));
    }
}

#[test]
fn conditions_matrix_shape() {
    let s = HirzebruchSurface::new(2).unwrap();
    let pts = random_scheme(2, 3, 1, SchemeConstraints::default()).unwrap();
    let scheme = FatPointScheme::new(s, pts.clone(), 3).unwrap();
    let charts: Vec<_> = pts.iter().map(SurfacePoint::preferred_chart).collect();
    let cm = conditions_matrix_in_charts(&scheme, 4, &charts).unwrap();
    assert_eq!(cm.matrix.rows(), 3 * 6);
    assert_eq!(cm.matrix.cols() as u64, s.h0(4));
    assert_eq!(cm.basis.len(), cm.matrix.cols());
}

#[test]
fn two_points_on_one_fiber_of_f3() {
    let s = HirzebruchSurface::new(3).unwrap();
    let pts = random_scheme(3, 2, 9, SchemeConstraints { on_negative_curve: 0, shared_fiber: true }).unwrap();
    let rep = initial_sequence(s, &pts, 6, &SearchOptions::default()).unwrap();
    assert_eq!(rep.plateau_length, 4);
    assert_eq!(rep.alphas[0], 1);
    let quarter = BigRational::new(1.into(), 4.into());
    assert!(rep.waldschmidt_upper >= quarter);
}
