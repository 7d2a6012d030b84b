//! Generators for the configurations the classification singles out, plus a
//! seeded random generator for search.
//!
//! On `F_1` the surface is the blow-up of the plane at `Q = (0:0:1)`. The map
//! used here sends a plane point `(x : y : z) != Q` to the Cox point
//! `(x, 1, y, z)`. A monomial of class `d L_1` then evaluates to the plane
//! monomial `x^e1 y^e3 z^e4` of degree `2d` whose `(x, y)`-degree is at least
//! `d`, so sections of `d L_1` are exactly plane curves of degree `2d` with
//! multiplicity at least `d` at `Q`.

use itertools::Itertools;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::arrangements::{
    check_lemma, make_pencil_star_retrying, singular_points, Arrangement, PlanePoint, ProjLine,
};
use crate::error::{Error, Result};
use crate::exactalg::BigRational;
use crate::toric::{is_on_negative_curve, same_fiber, CoxMonomial, HirzebruchSurface, SurfacePoint};

/// Half-width of the integer box random coordinates are drawn from.
pub const COORD_RANGE: i64 = 1000;

/// The single point `(1, 0, 0, 1)` of `E_r`.
pub fn point_on_negative_curve(_r: u32) -> Vec<SurfacePoint> {
    vec![SurfacePoint::from_integers([1, 0, 0, 1]).expect("valid point")]
}

/// `k` distinct points on the fiber `(x1 : x3) = (1 : 2)`, none on `E_r`.
pub fn fiber_points(_r: u32, k: usize) -> Vec<SurfacePoint> {
    (1..=k as i64)
        .map(|j| SurfacePoint::from_integers([1, 1, 2, j]).expect("valid point"))
        .collect()
}

/// The blow-up `F_1 -> P^2` at `Q = (0:0:1)`, seen from the plane side.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct BlowupMap;

impl BlowupMap {
    /// `(x : y : z) -> (x, 1, y, z)`.
    pub fn lift(self, p: &PlanePoint) -> Result<SurfacePoint> {
        if p.is_center() {
            return Err(Error::CenterPoint);
        }
        let [x, y, z] = p.coords().clone();
        SurfacePoint::new([x, BigRational::one(), y, z])
    }

    /// Image in the plane of a point off the exceptional curve `E_1`.
    pub fn project(self, p: &SurfacePoint) -> Option<PlanePoint> {
        if is_on_negative_curve(p) {
            return None;
        }
        let [x1, x2, x3, x4] = p.coords();
        PlanePoint::new([x1.clone(), x3.clone(), x4 / x2]).ok()
    }

    /// Exponents `(i, j, k)` of the plane monomial `x^i y^j z^k` matching a
    /// Cox monomial of `F_1`.
    pub fn plane_exponents(self, m: CoxMonomial) -> [u32; 3] {
        let [e1, _, e3, e4] = m.exponents;
        [e1, e3, e4]
    }
}

pub fn blowup_point(p: &PlanePoint) -> Result<SurfacePoint> {
    BlowupMap.lift(p)
}

/// A pencil+star scheme on `F_1` together with the plane data it came from.
#[derive(Debug, Clone)]
pub struct PencilStarConfig {
    pub a: usize,
    pub arrangement: Arrangement,
    pub plane_points: Vec<PlanePoint>,
    pub points: Vec<SurfacePoint>,
}

/// `a` lines through `Q` and `a` general lines; the scheme is every singular
/// point of the arrangement except `Q`, lifted to `F_1`. There are
/// `C(2a,2) - C(a,2)` of them: `a^2` on the pencil and `C(a,2)` among the
/// general lines.
pub fn pencil_star_config(a: usize, seed: u64) -> Result<PencilStarConfig> {
    if a < 2 {
        return Err(Error::InvalidInput("a pencil+star configuration needs a >= 2".into()));
    }
    let arrangement = crate::arrangements::make_pencil_star(2 * a, a, seed)?;
    Ok(lift_arrangement(a, arrangement))
}

/// As [`pencil_star_config`], retrying consecutive seeds on degenerate draws.
pub fn pencil_star_config_retrying(a: usize, seed: u64, tries: usize) -> Result<PencilStarConfig> {
    if a < 2 {
        return Err(Error::InvalidInput("a pencil+star configuration needs a >= 2".into()));
    }
    let arrangement = make_pencil_star_retrying(2 * a, a, seed, tries)?;
    Ok(lift_arrangement(a, arrangement))
}

fn lift_arrangement(a: usize, arrangement: Arrangement) -> PencilStarConfig {
    let plane_points: Vec<PlanePoint> = singular_points(&arrangement)
        .into_iter()
        .map(|s| s.point)
        .filter(|p| !p.is_center())
        .collect();
    let points = plane_points
        .iter()
        .map(|p| blowup_point(p).expect("Q was removed"))
        .collect();
    PencilStarConfig { a, arrangement, plane_points, points }
}

/// Recognizes the lift of a pencil+star configuration with `a` lines in each
/// part and returns its plane arrangement.
///
/// The pencil lines are the fibers holding `a` points (a fiber that is not a
/// pencil line meets each general line once, so it holds at most `a/2`
/// points). The general lines pair the points of the first two pencil lines;
/// every pairing is tried.
pub fn recognize_pencil_star(points: &[SurfacePoint], a: u32) -> Option<Arrangement> {
    let a = a as usize;
    if a < 2 || points.len() != a * (2 * a - 1) - a * (a - 1) / 2 {
        return None;
    }
    let plane: Vec<PlanePoint> = points.iter().map(|p| BlowupMap.project(p)).collect::<Option<_>>()?;
    let q = PlanePoint::center();

    let mut fibers: Vec<(ProjLine, Vec<usize>)> = Vec::new();
    for (i, p) in plane.iter().enumerate() {
        let l = ProjLine::through(&q, p)?;
        match fibers.iter_mut().find(|(f, _)| *f == l) {
            Some((_, members)) => members.push(i),
            None => fibers.push((l, vec![i])),
        }
    }
    let pencil: Vec<&(ProjLine, Vec<usize>)> = fibers.iter().filter(|(_, m)| m.len() == a).collect();
    if pencil.len() != a || fibers.iter().any(|(_, m)| m.len() > a) {
        return None;
    }
    let (first, second) = (&pencil[0].1, &pencil[1].1);
    for perm in (0..a).permutations(a) {
        let star: Option<Vec<ProjLine>> = (0..a)
            .map(|i| ProjLine::through(&plane[first[i]], &plane[second[perm[i]]]))
            .collect();
        let Some(star) = star else { continue };
        let lines: Vec<ProjLine> = pencil.iter().map(|(l, _)| l.clone()).chain(star).collect();
        let Ok(arr) = Arrangement::new(lines, q.clone()) else { continue };
        let sing: Vec<PlanePoint> = singular_points(&arr)
            .into_iter()
            .map(|s| s.point)
            .filter(|p| !p.is_center())
            .collect();
        let same_set = sing.len() == plane.len() && plane.iter().all(|p| sing.contains(p));
        if same_set && check_lemma(&arr).is_ok_and(|rep| rep.attains_bound() && rep.extremal_structure) {
            return Some(arr);
        }
    }
    None
}

/// Constraints for [`random_scheme`].
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct SchemeConstraints {
    /// How many of the points lie on `E_r`; the rest avoid it.
    pub on_negative_curve: usize,
    /// All points on one fiber. Otherwise no two points share a fiber.
    pub shared_fiber: bool,
}

/// `n` distinct random points with Cox coordinates in `[-1000, 1000]`,
/// resampling coincidences. Deterministic in `(r, n, seed, constraints)`.
pub fn random_scheme(r: u32, n: usize, seed: u64, constraints: SchemeConstraints) -> Result<Vec<SurfacePoint>> {
    if n == 0 {
        return Err(Error::InvalidInput("need at least one point".into()));
    }
    if constraints.on_negative_curve > n {
        return Err(Error::InvalidInput("more points on E_r than points".into()));
    }
    if constraints.shared_fiber && constraints.on_negative_curve > 1 {
        return Err(Error::InvalidInput("a fiber meets E_r in a single point".into()));
    }
    let surface = HirzebruchSurface::new(r)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ (u64::from(r) << 48) ^ ((n as u64) << 40));
    let mut coord = |nonzero: bool| loop {
        let c = rng.gen_range(-COORD_RANGE..=COORD_RANGE);
        if !nonzero || c != 0 {
            break c;
        }
    };
    let fiber = (coord(false), coord(true));
    let mut points: Vec<SurfacePoint> = Vec::with_capacity(n);
    while points.len() < n {
        let on_e = points.len() < constraints.on_negative_curve;
        let (x1, x3) = if constraints.shared_fiber { fiber } else { (coord(false), coord(false)) };
        let (x2, x4) = if on_e { (0, coord(true)) } else { (coord(true), coord(false)) };
        let Ok(p) = SurfacePoint::from_integers([x1, x2, x3, x4]) else { continue };
        let clash = points
            .iter()
            .any(|q| surface.same_point(&p, q) || (!constraints.shared_fiber && same_fiber(&p, q)));
        if !clash {
            points.push(p);
        }
    }
    Ok(points)
}

/// A copy of `points` with point `index` moved to another fiber by adding
/// `shift` to `x3`, keeping the point off `E_r`.
pub fn move_off_fiber(points: &[SurfacePoint], index: usize, shift: i64) -> Result<Vec<SurfacePoint>> {
    let mut out = points.to_vec();
    let mut x = out[index].coords().clone();
    x[2] += BigRational::from_integer(shift.into());
    if x[1].is_zero() {
        x[1] = BigRational::one();
    }
    out[index] = SurfacePoint::new(x)?;
    Ok(out)
}
