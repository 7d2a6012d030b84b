//! Initial degrees on `F_1` against plane interpolation through the blow-up:
//! a section of `d L_1` vanishing on `mZ` is a plane curve of degree `2d`
//! with multiplicity at least `d` at `Q = (0:0:1)` vanishing to order `m`
//! at the plane points.

use fatpoints::arrangements::PlanePoint;
use fatpoints::configs::{blowup_point, pencil_star_config_retrying};
use fatpoints::exactalg::{rank_exact, BigRational, RatMatrix};
use fatpoints::fatpoints::{initial_sequence, SearchOptions};
use fatpoints::toric::HirzebruchSurface;
use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Monomials `x^i y^j z^k` of degree `2d` with `i + j >= d`.
fn plane_basis(d: u32) -> Vec<[u32; 3]> {
    let n = 2 * d;
    let mut out = Vec::new();
    for i in 0..=n {
        for j in 0..=n - i {
            if i + j >= d {
                out.push([i, j, n - i - j]);
            }
        }
    }
    out
}

fn falling(n: u32, k: u32) -> BigInt {
    (0..k).fold(BigInt::one(), |acc, t| acc * BigInt::from(n - t))
}

fn power(x: &BigRational, e: u32) -> BigRational {
    (0..e).fold(BigRational::one(), |acc, _| acc * x)
}

/// A homogeneous form vanishes to order `m` at `p` exactly when all its
/// partials of order `m - 1` vanish there.
fn plane_conditions(points: &[PlanePoint], m: u32, d: u32) -> RatMatrix {
    let basis = plane_basis(d);
    let mut mat = RatMatrix::with_cols(basis.len());
    for p in points {
        let c = p.coords();
        for a in 0..m {
            for b in 0..m - a {
                let e = [a, b, m - 1 - a - b];
                let row = basis
                    .iter()
                    .map(|mono| {
                        if (0..3).any(|t| mono[t] < e[t]) {
                            return BigRational::zero();
                        }
                        (0..3).fold(BigRational::one(), |acc, t| {
                            acc * BigRational::from_integer(falling(mono[t], e[t])) * power(&c[t], mono[t] - e[t])
                        })
                    })
                    .collect();
                mat.push_row(row);
            }
        }
    }
    mat
}

fn plane_alpha(points: &[PlanePoint], m: u32, ceiling: u32) -> Option<u32> {
    (1..=ceiling).find(|&d| {
        let mat = plane_conditions(points, m, d);
        rank_exact(&mat) < mat.cols()
    })
}

fn compare(points: &[PlanePoint], m_max: u32) {
    let lifted: Vec<_> = points.iter().map(|p| blowup_point(p).unwrap()).collect();
    let rep = initial_sequence(HirzebruchSurface::new(1).unwrap(), &lifted, m_max, &SearchOptions::default()).unwrap();
    for m in 1..=m_max {
        let oracle = plane_alpha(points, m, 6).expect("found below the ceiling");
        assert_eq!(rep.alphas[m as usize - 1], oracle, "m = {m}");
    }
}

#[test]
fn pencil_star_schemes_match_plane_curves() {
    for a in [2, 3] {
        let cfg = pencil_star_config_retrying(a, 7, 100).unwrap();
        compare(&cfg.plane_points, 2);
    }
}

#[test]
fn random_plane_points_match_plane_curves() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for n in 1..=5 {
        let points: Vec<PlanePoint> = (0..n)
            .map(|_| {
                let c = [rng.gen_range(-20..=20), rng.gen_range(-20..=20), rng.gen_range(1..=20)];
                PlanePoint::from_integers(c).unwrap()
            })
            .collect();
        compare(&points, 2);
    }
}
