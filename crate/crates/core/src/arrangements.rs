//! Exact analysis of plane line arrangements.
//!
//! For a reduced plane curve of degree `d` with a point `Q` of multiplicity
//! `m >= 2`, at most `C(d,2) - C(m,2)` singular points lie away from `Q`, and
//! the bound is attained only by `m` lines through `Q` together with `d - m`
//! lines in general position whose pairwise intersections avoid the lines
//! through `Q`. Only line arrangements are handled here. Everything is exact:
//! incidence is a vanishing dot product, and two points are equal when their
//! cross product vanishes.

use std::fmt;

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::exactalg::{format_rational, BigRational};

/// A point `(x : y : z)` of the projective plane.
#[derive(Debug, Clone)]
pub struct PlanePoint {
    c: [BigRational; 3],
}

/// A line `A x + B y + C z = 0`.
#[derive(Debug, Clone)]
pub struct ProjLine {
    c: [BigRational; 3],
}

fn cross(a: &[BigRational; 3], b: &[BigRational; 3]) -> [BigRational; 3] {
    [
        &a[1] * &b[2] - &a[2] * &b[1],
        &a[2] * &b[0] - &a[0] * &b[2],
        &a[0] * &b[1] - &a[1] * &b[0],
    ]
}

fn dot(a: &[BigRational; 3], b: &[BigRational; 3]) -> BigRational {
    &a[0] * &b[0] + &a[1] * &b[1] + &a[2] * &b[2]
}

fn is_null(v: &[BigRational; 3]) -> bool {
    v.iter().all(Zero::is_zero)
}

fn from_ints(v: [i64; 3]) -> [BigRational; 3] {
    v.map(|x| BigRational::from_integer(x.into()))
}

impl PlanePoint {
    pub fn new(c: [BigRational; 3]) -> Result<Self> {
        if is_null(&c) {
            return Err(Error::InvalidInput("plane point with all coordinates zero".into()));
        }
        Ok(PlanePoint { c })
    }

    pub fn from_integers(c: [i64; 3]) -> Result<Self> {
        Self::new(from_ints(c))
    }

    /// The blow-up center `Q = (0 : 0 : 1)`.
    pub fn center() -> Self {
        PlanePoint { c: from_ints([0, 0, 1]) }
    }

    pub fn coords(&self) -> &[BigRational; 3] {
        &self.c
    }

    pub fn is_center(&self) -> bool {
        self.c[0].is_zero() && self.c[1].is_zero()
    }

    /// Scaled so that the last nonzero coordinate is one.
    pub fn normalized(&self) -> [BigRational; 3] {
        let k = self.c.iter().rposition(|x| !x.is_zero()).expect("nonzero point");
        let s = self.c[k].recip();
        self.c.clone().map(|x| x * &s)
    }
}

impl PartialEq for PlanePoint {
    fn eq(&self, other: &Self) -> bool {
        is_null(&cross(&self.c, &other.c))
    }
}

impl Eq for PlanePoint {}

impl fmt::Display for PlanePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [x, y, z] = self.normalized();
        write!(f, "({} : {} : {})", format_rational(&x), format_rational(&y), format_rational(&z))
    }
}

impl ProjLine {
    pub fn new(c: [BigRational; 3]) -> Result<Self> {
        if is_null(&c) {
            return Err(Error::InvalidInput("line with all coefficients zero".into()));
        }
        Ok(ProjLine { c })
    }

    pub fn from_integers(c: [i64; 3]) -> Result<Self> {
        Self::new(from_ints(c))
    }

    pub fn coefficients(&self) -> &[BigRational; 3] {
        &self.c
    }

    pub fn through(p: &PlanePoint, q: &PlanePoint) -> Option<Self> {
        let c = cross(&p.c, &q.c);
        (!is_null(&c)).then_some(ProjLine { c })
    }

    pub fn contains(&self, p: &PlanePoint) -> bool {
        dot(&self.c, &p.c).is_zero()
    }

    /// Intersection point, `None` for equal lines.
    pub fn meet(&self, other: &ProjLine) -> Option<PlanePoint> {
        let c = cross(&self.c, &other.c);
        (!is_null(&c)).then_some(PlanePoint { c })
    }

    /// Meets the line `z = 0` of the affine picture's points at infinity.
    pub fn is_parallel_to(&self, other: &ProjLine) -> bool {
        (&self.c[0] * &other.c[1] - &self.c[1] * &other.c[0]).is_zero()
    }
}

impl PartialEq for ProjLine {
    fn eq(&self, other: &Self) -> bool {
        is_null(&cross(&self.c, &other.c))
    }
}

impl Eq for ProjLine {}

impl fmt::Display for ProjLine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c] = &self.c;
        write!(f, "[{} : {} : {}]", format_rational(a), format_rational(b), format_rational(c))
    }
}

/// Pairwise distinct lines with a distinguished point `Q`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Arrangement {
    lines: Vec<ProjLine>,
    q: PlanePoint,
}

impl Arrangement {
    pub fn new(lines: Vec<ProjLine>, q: PlanePoint) -> Result<Self> {
        for (i, l) in lines.iter().enumerate() {
            if lines[..i].contains(l) {
                return Err(Error::InvalidInput(format!("line {} repeats an earlier line", i + 1)));
            }
        }
        Ok(Arrangement { lines, q })
    }

    pub fn lines(&self) -> &[ProjLine] {
        &self.lines
    }

    pub fn distinguished_point(&self) -> &PlanePoint {
        &self.q
    }

    pub fn degree(&self) -> usize {
        self.lines.len()
    }

    /// Number of lines through `Q`.
    pub fn multiplicity_at_q(&self) -> usize {
        self.multiplicity_at(&self.q)
    }

    pub fn multiplicity_at(&self, p: &PlanePoint) -> usize {
        self.lines.iter().filter(|l| l.contains(p)).count()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SingularPoint {
    pub point: PlanePoint,
    pub multiplicity: usize,
}

/// All points where two or more lines meet, each once, in order of first
/// discovery over line pairs `(i, j)`, `i < j`.
pub fn singular_points(arr: &Arrangement) -> Vec<SingularPoint> {
    let mut out: Vec<SingularPoint> = Vec::new();
    for (i, l) in arr.lines.iter().enumerate() {
        for k in &arr.lines[i + 1..] {
            let p = l.meet(k).expect("lines are distinct");
            if out.iter().any(|s| s.point == p) {
                continue;
            }
            let multiplicity = arr.multiplicity_at(&p);
            out.push(SingularPoint { point: p, multiplicity });
        }
    }
    out
}

fn choose2(n: usize) -> usize {
    n * n.saturating_sub(1) / 2
}

/// `C(d,2) - C(m,2)`, the most singular points a degree `d` curve with an
/// `m`-fold point `Q` can have away from `Q`.
pub fn lemma_bound(d: usize, m: usize) -> Result<usize> {
    if m < 2 || m > d {
        return Err(Error::InvalidInput(format!("need 2 <= m <= d, got d = {d}, m = {m}")));
    }
    Ok(choose2(d) - choose2(m))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LemmaReport {
    pub d: usize,
    pub m: usize,
    /// Singular points other than `Q`.
    pub singular_away: usize,
    pub bound: usize,
    /// Pencil lines through `Q`, every other singular point a node, no node
    /// of two non-pencil lines on a pencil line.
    pub extremal_structure: bool,
    /// Ways the arrangement departs from the extremal structure.
    pub violations: Vec<String>,
}

impl LemmaReport {
    pub fn within_bound(&self) -> bool {
        self.singular_away <= self.bound
    }

    pub fn attains_bound(&self) -> bool {
        self.singular_away == self.bound
    }

    /// Bound respected, and equality exactly when the structure is extremal.
    pub fn consistent(&self) -> bool {
        self.within_bound() && self.attains_bound() == self.extremal_structure
    }
}

/// Counts singular points away from `Q` against [`lemma_bound`] and checks
/// the extremal structure.
pub fn check_lemma(arr: &Arrangement) -> Result<LemmaReport> {
    let d = arr.degree();
    let m = arr.multiplicity_at_q();
    let bound = lemma_bound(d, m)?;
    let sing = singular_points(arr);
    let away: Vec<&SingularPoint> = sing.iter().filter(|s| s.point != arr.q).collect();

    let (pencil, star): (Vec<&ProjLine>, Vec<&ProjLine>) = arr.lines.iter().partition(|l| l.contains(&arr.q));
    let mut violations = Vec::new();
    for s in &away {
        if s.multiplicity > 2 {
            violations.push(format!("{} lines meet at {}", s.multiplicity, s.point));
        }
    }
    for (i, a) in star.iter().enumerate() {
        for b in &star[i + 1..] {
            let p = a.meet(b).expect("distinct");
            if pencil.iter().any(|l| l.contains(&p)) {
                violations.push(format!("general lines {a} and {b} meet on a line through Q at {p}"));
            }
        }
    }
    violations.dedup();
    Ok(LemmaReport {
        d,
        m,
        singular_away: away.len(),
        bound,
        extremal_structure: violations.is_empty(),
        violations,
    })
}

const LINE_COEFF_RANGE: i64 = 30;

/// `m` random lines through `Q = (0:0:1)` and `d - m` random lines in general
/// position: none through `Q`, no two parallel, no three concurrent, and no
/// intersection of two of them on a line through `Q`.
pub fn make_pencil_star(d: usize, m: usize, seed: u64) -> Result<Arrangement> {
    lemma_bound(d, m)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut coeff = || rng.gen_range(-LINE_COEFF_RANGE..=LINE_COEFF_RANGE);
    let mut lines = Vec::with_capacity(d);
    for _ in 0..m {
        let (a, b) = (coeff(), coeff());
        let l = ProjLine::from_integers([a, b, 0])
            .map_err(|_| Error::DegenerateSeed("zero pencil line".into()))?;
        lines.push(l);
    }
    for _ in m..d {
        let (a, b, c) = (coeff(), coeff(), coeff());
        if c == 0 || (a == 0 && b == 0) {
            return Err(Error::DegenerateSeed("general line through Q or at infinity".into()));
        }
        lines.push(ProjLine::from_integers([a, b, c])?);
    }
    let arr = Arrangement::new(lines, PlanePoint::center())
        .map_err(|_| Error::DegenerateSeed("repeated line".into()))?;
    validate_general_position(&arr, m)?;
    Ok(arr)
}

/// Retries [`make_pencil_star`] on consecutive seeds.
pub fn make_pencil_star_retrying(d: usize, m: usize, seed: u64, tries: usize) -> Result<Arrangement> {
    let mut last = Error::DegenerateSeed("no attempts".into());
    for k in 0..tries as u64 {
        match make_pencil_star(d, m, seed.wrapping_add(k)) {
            Ok(arr) => return Ok(arr),
            Err(e @ Error::DegenerateSeed(_)) => last = e,
            Err(e) => return Err(e),
        }
    }
    Err(last)
}

fn validate_general_position(arr: &Arrangement, m: usize) -> Result<()> {
    let (pencil, star) = arr.lines.split_at(m);
    let degenerate = |msg: &str| Err(Error::DegenerateSeed(msg.into()));
    if arr.multiplicity_at_q() != m {
        return degenerate("general line through Q");
    }
    for (i, a) in star.iter().enumerate() {
        for b in &star[i + 1..] {
            if a.is_parallel_to(b) {
                return degenerate("parallel general lines");
            }
            let p = a.meet(b).expect("distinct");
            if pencil.iter().any(|l| l.contains(&p)) {
                return degenerate("general lines meet on a pencil line");
            }
            if star.iter().filter(|l| l.contains(&p)).count() > 2 {
                return degenerate("three concurrent general lines");
            }
        }
    }
    Ok(())
}

/// Applies an invertible 3x3 matrix `g` to points; lines move by the inverse
/// transpose so incidence is preserved.
pub fn transform(arr: &Arrangement, g: &[[i64; 3]; 3]) -> Result<Arrangement> {
    let gm: [[BigRational; 3]; 3] = g.map(|row| row.map(|x| BigRational::from_integer(x.into())));
    let inv_t = inverse_transpose(&gm)?;
    let apply = |m: &[[BigRational; 3]; 3], v: &[BigRational; 3]| -> [BigRational; 3] {
        std::array::from_fn(|i| dot(&m[i], v))
    };
    let lines = arr.lines.iter().map(|l| ProjLine { c: apply(&inv_t, &l.c) }).collect();
    let q = PlanePoint { c: apply(&gm, &arr.q.c) };
    Arrangement::new(lines, q)
}

/// Image of a point under the same substitution as [`transform`].
pub fn transform_point(p: &PlanePoint, g: &[[i64; 3]; 3]) -> PlanePoint {
    let gm: [[BigRational; 3]; 3] = g.map(|row| row.map(|x| BigRational::from_integer(x.into())));
    PlanePoint { c: std::array::from_fn(|i| dot(&gm[i], &p.c)) }
}

fn inverse_transpose(m: &[[BigRational; 3]; 3]) -> Result<[[BigRational; 3]; 3]> {
    // cofactor matrix divided by the determinant is the inverse transpose
    let cof = [cross(&m[1], &m[2]), cross(&m[2], &m[0]), cross(&m[0], &m[1])];
    let det = dot(&m[0], &cof[0]);
    if det.is_zero() {
        return Err(Error::InvalidInput("singular substitution".into()));
    }
    let inv_det = BigRational::one() / det;
    Ok(cof.map(|row| row.map(|x| x * &inv_det)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn line(c: [i64; 3]) -> ProjLine {
        ProjLine::from_integers(c).unwrap()
    }

    fn arr(lines: &[[i64; 3]]) -> Arrangement {
        Arrangement::new(lines.iter().map(|&c| line(c)).collect(), PlanePoint::center()).unwrap()
    }

    #[test]
    fn two_lines_one_node() {
        let s = singular_points(&arr(&[[1, 0, 0], [0, 1, -1]]));
        assert_eq!(s.len(), 1);
        assert_eq!(s[0].multiplicity, 2);
    }

    #[test]
    fn concurrent_triple() {
        let s = singular_points(&arr(&[[1, 0, 0], [0, 1, 0], [1, 1, 0]]));
        assert_eq!(s.len(), 1);
        assert_eq!(s[0].multiplicity, 3);
        assert!(s[0].point.is_center());
    }

    #[test]
    fn bound_values() {
        assert_eq!(lemma_bound(6, 3).unwrap(), 12);
        assert_eq!(lemma_bound(4, 4).unwrap(), 0);
        assert_eq!(lemma_bound(4, 2).unwrap(), 5);
        assert!(lemma_bound(4, 1).is_err());
        assert!(lemma_bound(3, 4).is_err());
    }

    /// The pictured configuration: three lines through Q and three general
    /// lines give Q as a triple point plus twelve nodes.
    #[test]
    fn figure_arrangement() {
        let a = arr(&[[0, 1, 0], [1, -2, 0], [1, 3, 0], [1, 1, -3], [2, -1, -4], [1, -4, 6]]);
        let s = singular_points(&a);
        let q: Vec<_> = s.iter().filter(|p| p.point.is_center()).collect();
        assert_eq!(q.len(), 1);
        assert_eq!(q[0].multiplicity, 3);
        assert_eq!(s.iter().filter(|p| !p.point.is_center() && p.multiplicity == 2).count(), 12);
        let rep = check_lemma(&a).unwrap();
        assert!(rep.attains_bound() && rep.extremal_structure && rep.consistent());
    }

    #[test]
    fn concurrent_star_lines_lose_points() {
        // three general lines through (1 : 1 : 1)
        let a = arr(&[[0, 1, 0], [1, -2, 0], [1, 3, 0], [1, 0, -1], [0, 1, -1], [1, 1, -2]]);
        let rep = check_lemma(&a).unwrap();
        assert!(rep.singular_away < 12);
        assert!(!rep.extremal_structure);
        assert!(rep.consistent());
    }

    #[test]
    fn generated_pencil_star_is_extremal() {
        for (d, m) in [(6, 3), (5, 2), (4, 2), (8, 4)] {
            let a = make_pencil_star_retrying(d, m, 11, 50).unwrap();
            let rep = check_lemma(&a).unwrap();
            assert_eq!(rep.singular_away, lemma_bound(d, m).unwrap());
            assert!(rep.extremal_structure, "{:?}", rep.violations);
        }
        let a = make_pencil_star(3, 3, 1).unwrap();
        assert_eq!(check_lemma(&a).unwrap().singular_away, 0);
    }

    #[test]
    fn generation_is_deterministic() {
        let a = make_pencil_star_retrying(6, 3, 99, 50).unwrap();
        let b = make_pencil_star_retrying(6, 3, 99, 50).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn duplicate_lines_rejected() {
        let lines = vec![line([1, 2, 3]), line([2, 4, 6])];
        assert!(Arrangement::new(lines, PlanePoint::center()).is_err());
    }

    #[test]
    fn substitution_moves_singular_points() {
        let a = make_pencil_star_retrying(6, 3, 5, 50).unwrap();
        let g = [[1, 2, 0], [0, 1, 3], [1, 1, 1]];
        let b = transform(&a, &g).unwrap();
        let sa = singular_points(&a);
        let sb = singular_points(&b);
        assert_eq!(sa.len(), sb.len());
        for s in &sa {
            let image = transform_point(&s.point, &g);
            let t = sb.iter().find(|t| t.point == image).expect("image is singular");
            assert_eq!(t.multiplicity, s.multiplicity);
        }
    }
}
