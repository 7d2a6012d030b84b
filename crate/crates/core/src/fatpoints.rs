//! Initial degrees of fat point schemes with respect to `L_r`.
//!
//! A section of `d L_r` is a combination of the Cox monomials of that class.
//! It vanishes to order `m` at a point exactly when, in an affine chart
//! around the point, all partial derivatives `∂^(i+j) / ∂u^i ∂v^j` with
//! `i + j < m` vanish there. Each such derivative is one linear condition on
//! the coefficient vector, so `H^0(d L_r ⊗ I_Z^m)` is the right kernel of the
//! matrix built by [`conditions_matrix`], and `α(mZ)` is the least `d` for
//! which that kernel is nonzero.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::configs;
use crate::error::{Error, Result};
use crate::exactalg::{kernel_vector_with_attempts, random_prime, rank_mod_p, BigRational, RatMatrix};
use crate::toric::{
    is_on_negative_curve, same_fiber, Chart, CoxMonomial, HirzebruchSurface, SurfacePoint,
};

/// Default hard ceiling on the degree search.
pub const DEFAULT_DEGREE_CEILING: u32 = 64;

/// A reduced point set fattened uniformly to multiplicity `m`.
#[derive(Debug, Clone, PartialEq)]
pub struct FatPointScheme {
    surface: HirzebruchSurface,
    points: Vec<SurfacePoint>,
    multiplicity: u32,
}

impl FatPointScheme {
    /// Rejects empty point sets, `m = 0`, and torus-equivalent duplicates.
    pub fn new(surface: HirzebruchSurface, points: Vec<SurfacePoint>, multiplicity: u32) -> Result<Self> {
        if multiplicity == 0 {
            return Err(Error::InvalidInput("multiplicity must be at least 1".into()));
        }
        check_points(surface, &points)?;
        Ok(FatPointScheme { surface, points, multiplicity })
    }

    pub fn surface(&self) -> HirzebruchSurface {
        self.surface
    }

    pub fn points(&self) -> &[SurfacePoint] {
        &self.points
    }

    pub fn multiplicity(&self) -> u32 {
        self.multiplicity
    }

    /// Number of linear conditions imposed on sections: `|Z| m (m + 1) / 2`.
    pub fn condition_count(&self) -> usize {
        let m = self.multiplicity as usize;
        self.points.len() * m * (m + 1) / 2
    }
}

/// Nonempty and pairwise distinct up to the torus action.
pub fn check_points(surface: HirzebruchSurface, points: &[SurfacePoint]) -> Result<()> {
    if points.is_empty() {
        return Err(Error::InvalidInput("the point set is empty".into()));
    }
    for (i, p) in points.iter().enumerate() {
        if points[..i].iter().any(|q| surface.same_point(p, q)) {
            return Err(Error::DuplicatePoint { line: i + 1 });
        }
    }
    Ok(())
}

/// Vanishing conditions of a fat point scheme on the sections of `d L_r`.
#[derive(Debug, Clone)]
pub struct ConditionsMatrix {
    pub matrix: RatMatrix,
    pub degree: u32,
    pub basis: Vec<CoxMonomial>,
    pub charts: Vec<Chart>,
}

fn falling(n: u32, k: u32) -> BigInt {
    (0..k).fold(BigInt::one(), |acc, t| acc * BigInt::from(n - t))
}

fn binomial(n: u32, k: u32) -> BigInt {
    falling(n, k) / falling(k, k)
}

fn powers(x: &BigRational, top: u32) -> Vec<BigRational> {
    let mut out = Vec::with_capacity(top as usize + 1);
    out.push(BigRational::one());
    for k in 1..=top as usize {
        let next = &out[k - 1] * x;
        out.push(next);
    }
    out
}

/// Conditions matrix using each point's preferred chart.
pub fn conditions_matrix(scheme: &FatPointScheme, degree: u32) -> ConditionsMatrix {
    let charts: Vec<Chart> = scheme.points.iter().map(SurfacePoint::preferred_chart).collect();
    conditions_matrix_in_charts(scheme, degree, &charts).expect("preferred charts are valid")
}

/// Conditions matrix with an explicit chart per point. Rows for each point
/// are ordered by `(i, j)` for the derivative `∂u^i ∂v^j`, `i + j < m`;
/// columns follow [`HirzebruchSurface::polarization_basis`].
pub fn conditions_matrix_in_charts(
    scheme: &FatPointScheme,
    degree: u32,
    charts: &[Chart],
) -> Result<ConditionsMatrix> {
    assert_eq!(charts.len(), scheme.points.len(), "one chart per point");
    let surface = scheme.surface;
    let basis = surface.polarization_basis(degree);
    let m = scheme.multiplicity;
    let mut matrix = RatMatrix::with_cols(basis.len());
    for (p, &chart) in scheme.points.iter().zip(charts) {
        let (u, v) = surface.normalize_to_chart(p, chart)?;
        let local: Vec<(u32, u32)> = basis.iter().map(|mono| mono.localize(chart)).collect();
        let top_u = local.iter().map(|e| e.0).max().unwrap_or(0);
        let top_v = local.iter().map(|e| e.1).max().unwrap_or(0);
        let (pu, pv) = (powers(&u, top_u), powers(&v, top_v));
        for i in 0..m {
            for j in 0..m - i {
                let row = local
                    .iter()
                    .map(|&(a, b)| {
                        if a < i || b < j {
                            return BigRational::zero();
                        }
                        let c = falling(a, i) * falling(b, j);
                        BigRational::from_integer(c) * &pu[(a - i) as usize] * &pv[(b - j) as usize]
                    })
                    .collect();
                matrix.push_row(row);
            }
        }
    }
    Ok(ConditionsMatrix { matrix, degree, basis, charts: charts.to_vec() })
}

/// Options for the degree search.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchOptions {
    /// No degree above this is tried.
    pub degree_ceiling: u32,
    /// Seeds the random primes. Answers do not depend on it.
    pub seed: u64,
    /// Random primes tried per kernel before exact rational elimination.
    pub prime_attempts: usize,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions { degree_ceiling: DEFAULT_DEGREE_CEILING, seed: 0x5eed, prime_attempts: 3 }
    }
}

/// A section of `d L_r` vanishing on `mZ`, in the monomial basis of `d L_r`.
#[derive(Debug, Clone, PartialEq)]
pub struct Certificate {
    pub degree: u32,
    pub multiplicity: u32,
    pub basis: Vec<CoxMonomial>,
    pub coefficients: Vec<BigRational>,
}

impl Certificate {
    /// Nonzero terms as `(coefficient, monomial)`.
    pub fn terms(&self) -> impl Iterator<Item = (&BigRational, &CoxMonomial)> {
        self.coefficients.iter().zip(&self.basis).filter(|(c, _)| !c.is_zero())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct AlphaResult {
    pub alpha: u32,
    pub certificate: Certificate,
}

/// `α(mZ)`: the least `d >= 1` with `H^0(d L_r ⊗ I_Z^m) != 0`.
pub fn alpha(
    surface: HirzebruchSurface,
    points: &[SurfacePoint],
    m: u32,
    options: &SearchOptions,
) -> Result<AlphaResult> {
    alpha_from(surface, points, m, 1, options)
}

/// As [`alpha`], starting the search at `start` (any known lower bound,
/// e.g. `α((m-1)Z)`).
pub fn alpha_from(
    surface: HirzebruchSurface,
    points: &[SurfacePoint],
    m: u32,
    start: u32,
    options: &SearchOptions,
) -> Result<AlphaResult> {
    let scheme = FatPointScheme::new(surface, points.to_vec(), m)?;
    let conditions = scheme.condition_count() as u64;
    let ceiling = options.degree_ceiling;
    for d in start.max(1)..=ceiling {
        let mut rng = ChaCha8Rng::seed_from_u64(
            options.seed ^ (u64::from(m) << 32) ^ u64::from(d).wrapping_mul(0x9e37_79b9_7f4a_7c15),
        );
        let cm = conditions_matrix(&scheme, d);
        let cols = surface.h0(d);
        if cols <= conditions {
            // one modular rank decides "no kernel" with certainty
            let p = random_prime(&mut rng);
            if let Ok(rank) = rank_mod_p(&cm.matrix, p) {
                if rank as u64 == cols {
                    continue;
                }
            }
        }
        if let Some(coefficients) = kernel_vector_with_attempts(&cm.matrix, options.prime_attempts, &mut rng) {
            let certificate = Certificate { degree: d, multiplicity: m, basis: cm.basis, coefficients };
            return Ok(AlphaResult { alpha: d, certificate });
        }
    }
    Err(Error::DegreeCeiling { m, ceiling })
}

/// Independent check of a certificate: for every point and every chart valid
/// at it, the Taylor expansion of the section about the point has no term of
/// total degree below `m`.
pub fn verify_certificate(surface: HirzebruchSurface, points: &[SurfacePoint], cert: &Certificate) -> bool {
    if cert.coefficients.len() != cert.basis.len() || cert.coefficients.iter().all(Zero::is_zero) {
        return false;
    }
    let class = surface.minimal_polarization().scale(i64::from(cert.degree));
    if cert.basis.iter().any(|mono| mono.class(surface.r()) != class) {
        return false;
    }
    // integer coefficients: the zero test is unchanged by a common scale
    let scale = cert.coefficients.iter().fold(BigInt::one(), |l, c| l.lcm(c.denom()));
    let ints: Vec<BigInt> = cert.coefficients.iter().map(|c| (c * &scale).to_integer()).collect();
    let m = cert.multiplicity;
    points.iter().all(|p| {
        p.valid_charts().into_iter().all(|chart| {
            let (u, v) = surface.normalize_to_chart(p, chart).expect("valid chart");
            let local: Vec<(u32, u32)> = cert.basis.iter().map(|mono| mono.localize(chart)).collect();
            let top_u = local.iter().map(|e| e.0).max().unwrap_or(0);
            let top_v = local.iter().map(|e| e.1).max().unwrap_or(0);
            // u^k = un^k / ud^k; multiply every coefficient through by ud^top_u vd^top_v
            let (un, ud) = (int_powers(u.numer(), top_u), int_powers(u.denom(), top_u));
            let (vn, vd) = (int_powers(v.numer(), top_v), int_powers(v.denom(), top_v));
            (0..m).all(|i| {
                (0..m - i).all(|j| {
                    let mut coeff = BigInt::zero();
                    for (c, &(a, b)) in ints.iter().zip(&local) {
                        if a < i || b < j || c.is_zero() {
                            continue;
                        }
                        let (ea, eb) = ((a - i) as usize, (b - j) as usize);
                        coeff += c
                            * binomial(a, i)
                            * binomial(b, j)
                            * &un[ea]
                            * &ud[top_u as usize - ea]
                            * &vn[eb]
                            * &vd[top_v as usize - eb];
                    }
                    coeff.is_zero()
                })
            })
        })
    })
}

fn int_powers(x: &BigInt, top: u32) -> Vec<BigInt> {
    let mut out = vec![BigInt::one()];
    for k in 1..=top as usize {
        let next = &out[k - 1] * x;
        out.push(next);
    }
    out
}

/// `α(Z), α(2Z), ..., α(m_max Z)` with bounds on the Waldschmidt constant.
#[derive(Debug, Clone, PartialEq)]
pub struct InitialSequenceReport {
    pub r: u32,
    pub alphas: Vec<u32>,
    pub certificates: Vec<Certificate>,
    /// Number of leading terms equal to `α(Z)`.
    pub plateau_length: usize,
    /// `α(Z) / (r + 2)`.
    pub chudnovsky_lower: BigRational,
    /// `(r (a - 1) / 2 + a) / (r + 2)` for `a = α(Z) >= 2`.
    pub refined_lower: Option<BigRational>,
    /// `min_m α(mZ) / m` over the computed terms.
    pub waldschmidt_upper: BigRational,
}

impl InitialSequenceReport {
    /// The best available lower bound on the Waldschmidt constant.
    pub fn waldschmidt_lower(&self) -> &BigRational {
        self.refined_lower.as_ref().unwrap_or(&self.chudnovsky_lower)
    }
}

pub fn plateau_length(alphas: &[u32]) -> usize {
    alphas.first().map_or(0, |&a0| alphas.iter().take_while(|&&a| a == a0).count())
}

pub fn initial_sequence(
    surface: HirzebruchSurface,
    points: &[SurfacePoint],
    m_max: u32,
    options: &SearchOptions,
) -> Result<InitialSequenceReport> {
    if m_max == 0 {
        return Err(Error::InvalidInput("m_max must be at least 1".into()));
    }
    check_points(surface, points)?;
    let mut alphas = Vec::with_capacity(m_max as usize);
    let mut certificates = Vec::with_capacity(m_max as usize);
    let mut start = 1;
    for m in 1..=m_max {
        let res = alpha_from(surface, points, m, start, options)?;
        start = res.alpha;
        alphas.push(res.alpha);
        certificates.push(res.certificate);
    }
    let r = surface.r();
    let upper = alphas
        .iter()
        .zip(1i64..)
        .map(|(&a, m)| BigRational::new(a.into(), m.into()))
        .min()
        .expect("m_max >= 1");
    Ok(InitialSequenceReport {
        r,
        plateau_length: plateau_length(&alphas),
        chudnovsky_lower: chudnovsky_lower(r, alphas[0]),
        refined_lower: refined_lower(r, alphas[0]).ok(),
        waldschmidt_upper: upper,
        alphas,
        certificates,
    })
}

/// `α(mZ)/m >= α(Z)/(r + 2)` for every `m`.
pub fn chudnovsky_lower(r: u32, alpha1: u32) -> BigRational {
    BigRational::new(alpha1.into(), (r + 2).into())
}

/// `α(mZ)/m >= (r(a - 1)/2 + a)/(r + 2)` when `a = α(Z) >= 2`.
pub fn refined_lower(r: u32, a: u32) -> Result<BigRational> {
    if a < 2 {
        return Err(Error::InvalidInput("the refined bound needs α(Z) >= 2".into()));
    }
    let (r, a) = (i64::from(r), i64::from(a));
    Ok(BigRational::new((r * (a - 1) + 2 * a).into(), (2 * (r + 2)).into()))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WaldschmidtBounds {
    pub lower: BigRational,
    pub upper: BigRational,
}

pub fn waldschmidt_bounds(
    surface: HirzebruchSurface,
    points: &[SurfacePoint],
    m_max: u32,
    options: &SearchOptions,
) -> Result<WaldschmidtBounds> {
    let report = initial_sequence(surface, points, m_max, options)?;
    Ok(WaldschmidtBounds {
        lower: report.waldschmidt_lower().clone(),
        upper: report.waldschmidt_upper,
    })
}

/// Which clause of the classification explains the plateau.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
pub enum PlateauClass {
    /// A plateau of length `r + 2` or more that no clause allows. Never
    /// expected; any occurrence is a counterexample.
    ImpossibleWitness,
    /// Plateau `r + 2`: a single point on `E_r`, `α = 1`.
    NegativeCurvePoint,
    /// Plateau `r + 1` with every point on one fiber and `α = 1`.
    SingleFiber,
    /// Plateau `r + 1 = 2` on `F_1`: the singular points of `a` lines through
    /// the blow-up center plus `a` general lines, `α = a`.
    F1PencilStar,
    /// Plateau at most `r`.
    NoPlateauStructure,
}

impl PlateauClass {
    pub fn name(self) -> &'static str {
        match self {
            PlateauClass::ImpossibleWitness => "ImpossibleWitness",
            PlateauClass::NegativeCurvePoint => "NegativeCurvePoint",
            PlateauClass::SingleFiber => "SingleFiber",
            PlateauClass::F1PencilStar => "F1PencilStar",
            PlateauClass::NoPlateauStructure => "NoPlateauStructure",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PlateauReport {
    pub class: PlateauClass,
    pub plateau_length: usize,
    pub sequence: InitialSequenceReport,
    /// Set when the plateau and the geometry disagree.
    pub anomaly: Option<String>,
}

/// Computes the first `r + 3` terms of the initial sequence and matches the
/// plateau against the geometric characterizations.
pub fn classify_plateau(
    surface: HirzebruchSurface,
    points: &[SurfacePoint],
    options: &SearchOptions,
) -> Result<PlateauReport> {
    let r = surface.r() as usize;
    let sequence = initial_sequence(surface, points, surface.r() + 3, options)?;
    let plateau = sequence.plateau_length;
    let a = sequence.alphas[0];
    let all_one_fiber = points.iter().all(|p| same_fiber(p, &points[0]));
    let mut anomaly = None;
    let mut flag = |msg: String| {
        anomaly = Some(msg);
        PlateauClass::ImpossibleWitness
    };
    let class = match plateau.cmp(&(r + 1)) {
        Ordering::Less => PlateauClass::NoPlateauStructure,
        _ if plateau >= r + 3 => flag(format!("plateau of length {plateau} >= r + 3")),
        Ordering::Greater => {
            if points.len() == 1 && is_on_negative_curve(&points[0]) && a == 1 {
                PlateauClass::NegativeCurvePoint
            } else {
                flag("plateau r + 2 without a single point on E_r".into())
            }
        }
        Ordering::Equal => {
            if a == 1 && all_one_fiber {
                PlateauClass::SingleFiber
            } else if r == 1 && configs::recognize_pencil_star(points, a).is_some() {
                PlateauClass::F1PencilStar
            } else {
                flag(format!("plateau r + 1 with α = {a} and no recognized configuration"))
            }
        }
    };
    Ok(PlateauReport { class, plateau_length: plateau, sequence, anomaly })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::parse_rational;
    use crate::exactalg::{kernel_basis, rank_exact};

    fn s(r: u32) -> HirzebruchSurface {
        HirzebruchSurface::new(r).unwrap()
    }

    fn pt(x: [i64; 4]) -> SurfacePoint {
        SurfacePoint::from_integers(x).unwrap()
    }

    fn opts() -> SearchOptions {
        SearchOptions::default()
    }

    #[test]
    fn scheme_validation() {
        assert!(FatPointScheme::new(s(1), vec![], 1).is_err());
        assert!(FatPointScheme::new(s(1), vec![pt([1, 1, 1, 1])], 0).is_err());
        let dup = vec![pt([1, 2, 3, 4]), pt([2, 2, 6, 8])];
        assert_eq!(FatPointScheme::new(s(1), dup, 1), Err(Error::DuplicatePoint { line: 2 }));
    }

    #[test]
    fn single_condition_rows() {
        let surf = s(2);
        let z = FatPointScheme::new(surf, vec![pt([1, 3, 2, 5])], 1).unwrap();
        for d in 1..4 {
            let cm = conditions_matrix(&z, d);
            assert_eq!(cm.matrix.rows(), 1);
            assert_eq!(cm.matrix.cols() as u64, surf.h0(d));
            assert_eq!(kernel_basis(&cm.matrix).len() as u64, surf.h0(d) - 1);
        }
        let z2 = FatPointScheme::new(surf, vec![pt([1, 3, 2, 5])], 2).unwrap();
        assert_eq!(conditions_matrix(&z2, 1).matrix.rows(), 3);
    }

    /// `(r+1) F_P + E_r = x3^3 x2` at P = (1, 0, 0, 1) on F_2 vanishes to order 4.
    #[test]
    fn negative_curve_point_kernel_contains_fiber_divisor() {
        let surf = s(2);
        let z = FatPointScheme::new(surf, vec![pt([1, 0, 0, 1])], 4).unwrap();
        let cm = conditions_matrix(&z, 1);
        let target = CoxMonomial::new([0, 1, 3, 0]);
        let idx = cm.basis.iter().position(|&mono| mono == target).unwrap();
        let mut v = vec![BigRational::zero(); cm.basis.len()];
        v[idx] = BigRational::one();
        assert!(cm.matrix.mul_vec(&v).iter().all(Zero::is_zero));
        let ker = kernel_basis(&cm.matrix);
        assert_eq!(ker.len(), 1);
        assert_eq!(ker[0], v);
    }

    #[test]
    fn negative_curve_point_alphas() {
        for r in 1..=3 {
            let surf = s(r);
            let p = [pt([1, 0, 0, 1])];
            for m in 1..=r + 2 {
                assert_eq!(alpha(surf, &p, m, &opts()).unwrap().alpha, 1, "r={r} m={m}");
            }
            assert_eq!(alpha(surf, &p, r + 3, &opts()).unwrap().alpha, 2);
        }
    }

    #[test]
    fn general_point_alphas() {
        for r in 1..=3 {
            let surf = s(r);
            let p = [pt([3, -2, 5, 7])];
            assert_eq!(alpha(surf, &p, r + 1, &opts()).unwrap().alpha, 1);
            assert_eq!(alpha(surf, &p, r + 2, &opts()).unwrap().alpha, 2);
        }
    }

    #[test]
    fn certificates_verify() {
        let surf = s(2);
        let pts = [pt([1, 1, 2, 3]), pt([2, -1, 1, 4]), pt([1, 2, -3, 1])];
        let res = alpha(surf, &pts, 2, &opts()).unwrap();
        assert!(verify_certificate(surf, &pts, &res.certificate));
        let mut bad = res.certificate.clone();
        let k = bad.coefficients.iter().position(|c| !c.is_zero()).unwrap();
        bad.coefficients[k] += BigRational::one();
        assert!(!verify_certificate(surf, &pts, &bad));
        // a certificate for 2Z is generally not one for 3Z
        let mut higher = res.certificate.clone();
        higher.multiplicity = 3;
        assert!(!verify_certificate(surf, &pts, &higher));
        let mut scaled = res.certificate.clone();
        for c in &mut scaled.coefficients {
            *c /= BigRational::from_integer(7.into());
        }
        assert!(verify_certificate(surf, &pts, &scaled));
    }

    #[test]
    fn certificate_at_fractional_point() {
        let surf = s(1);
        let q = SurfacePoint::new([
            parse_rational("2/3").unwrap(),
            parse_rational("-5/7").unwrap(),
            parse_rational("1").unwrap(),
            parse_rational("3/11").unwrap(),
        ])
        .unwrap();
        let pts = [q, pt([1, 1, 1, 1])];
        let res = alpha(surf, &pts, 2, &opts()).unwrap();
        assert!(verify_certificate(surf, &pts, &res.certificate));
        let mut bad = res.certificate.clone();
        let k = bad.coefficients.iter().rposition(|c| !c.is_zero()).unwrap();
        bad.coefficients[k] *= BigRational::from_integer(2.into());
        assert!(!verify_certificate(surf, &pts, &bad));
    }

    #[test]
    fn chart_choice_does_not_change_rank() {
        let surf = s(1);
        let pts = vec![pt([2, 3, 5, -7]), pt([1, -4, 3, 2])];
        let z = FatPointScheme::new(surf, pts.clone(), 2).unwrap();
        let base = rank_exact(&conditions_matrix(&z, 2).matrix);
        for c0 in Chart::ALL {
            for c1 in Chart::ALL {
                let cm = conditions_matrix_in_charts(&z, 2, &[c0, c1]).unwrap();
                assert_eq!(rank_exact(&cm.matrix), base);
            }
        }
    }

    #[test]
    fn bounds_formulas() {
        assert_eq!(chudnovsky_lower(1, 2), BigRational::new(2.into(), 3.into()));
        assert_eq!(chudnovsky_lower(2, 1), BigRational::new(1.into(), 4.into()));
        assert_eq!(refined_lower(1, 2).unwrap(), BigRational::new(5.into(), 6.into()));
        assert_eq!(refined_lower(2, 2).unwrap(), BigRational::new(3.into(), 4.into()));
        assert!(refined_lower(3, 1).is_err());
        for r in 1..8 {
            for a in 2..20 {
                assert!(refined_lower(r, a).unwrap() > chudnovsky_lower(r, a));
            }
        }
    }

    #[test]
    fn sequence_of_negative_curve_point() {
        let surf = s(1);
        let rep = initial_sequence(surf, &[pt([1, 0, 0, 1])], 4, &opts()).unwrap();
        assert_eq!(rep.alphas, vec![1, 1, 1, 2]);
        assert_eq!(rep.plateau_length, 3);
        assert_eq!(rep.waldschmidt_upper, BigRational::new(1.into(), 3.into()));
        assert_eq!(rep.chudnovsky_lower, rep.waldschmidt_upper);
        assert!(rep.refined_lower.is_none());
    }

    #[test]
    fn fiber_points_sequence() {
        let surf = s(2);
        let pts = [pt([1, 1, 2, 3]), pt([1, 2, 2, -1]), pt([1, 5, 2, 7])];
        let rep = initial_sequence(surf, &pts, 4, &opts()).unwrap();
        assert_eq!(rep.alphas, vec![1, 1, 1, 2]);
    }

    #[test]
    fn general_point_upper_bound() {
        let b = waldschmidt_bounds(s(1), &[pt([3, -2, 5, 7])], 4, &opts()).unwrap();
        assert!(b.upper <= BigRational::new(1.into(), 2.into()));
        assert!(b.lower <= b.upper);
    }

    #[test]
    fn ceiling_is_enforced() {
        let o = SearchOptions { degree_ceiling: 1, ..opts() };
        let err = alpha(s(1), &[pt([1, 0, 0, 1])], 4, &o).unwrap_err();
        assert_eq!(err, Error::DegreeCeiling { m: 4, ceiling: 1 });
    }

    #[test]
    fn classification_examples() {
        let rep = classify_plateau(s(2), &[pt([1, 0, 0, 1])], &opts()).unwrap();
        assert_eq!(rep.class, PlateauClass::NegativeCurvePoint);
        assert_eq!(rep.plateau_length, 4);
        let fiber = [pt([1, 1, 2, 3]), pt([1, 2, 2, -1])];
        let rep = classify_plateau(s(2), &fiber, &opts()).unwrap();
        assert_eq!(rep.class, PlateauClass::SingleFiber);
        assert_eq!(rep.plateau_length, 3);
        assert!(rep.anomaly.is_none());
    }

    #[test]
    fn plateau_length_counts_leading_run() {
        assert_eq!(plateau_length(&[]), 0);
        assert_eq!(plateau_length(&[2, 2, 3, 3]), 2);
        assert_eq!(plateau_length(&[1, 1, 1]), 3);
    }
}
