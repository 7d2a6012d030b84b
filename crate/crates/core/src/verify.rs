//! Verification suite for the classification of initial sequences.
//!
//! Each `check_*` function runs one family of exact computations and returns
//! a [`CheckOutcome`]. Every initial sequence computed along the way is kept
//! in a [`Ledger`], so the inequality and certificate checks at the end cover
//! all of them.

use std::sync::Mutex;
use std::time::{Duration, Instant};

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::arrangements::{
    check_lemma, lemma_bound, make_pencil_star_retrying, singular_points, Arrangement, PlanePoint, ProjLine,
};
use crate::configs::{
    fiber_points, move_off_fiber, pencil_star_config_retrying, point_on_negative_curve, random_scheme,
    SchemeConstraints,
};
use crate::error::Result;
use crate::exactalg::{rank_exact, BigRational};
use crate::fatpoints::{
    classify_plateau, conditions_matrix_in_charts, initial_sequence, verify_certificate, FatPointScheme,
    InitialSequenceReport, PlateauClass, SearchOptions,
};
use crate::toric::{is_on_negative_curve, HirzebruchSurface, SurfacePoint};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckOutcome {
    pub id: u32,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
    pub elapsed: Duration,
}

impl CheckOutcome {
    /// One line: `[PASS] 3 no plateau of length r+3: ...`.
    pub fn line(&self) -> String {
        let tag = if self.passed { "PASS" } else { "FAIL" };
        format!("[{tag}] {:>2} {}: {} ({:.2?})", self.id, self.name, self.detail, self.elapsed)
    }
}

/// One computed initial sequence, kept for the cross-cutting checks.
#[derive(Debug, Clone)]
pub struct RecordedSequence {
    pub label: String,
    pub surface: HirzebruchSurface,
    pub points: Vec<SurfacePoint>,
    pub report: InitialSequenceReport,
}

#[derive(Debug, Default)]
pub struct Ledger {
    entries: Mutex<Vec<RecordedSequence>>,
}

impl Ledger {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn record(&self, label: String, surface: HirzebruchSurface, points: &[SurfacePoint], report: &InitialSequenceReport) {
        self.entries.lock().expect("ledger lock").push(RecordedSequence {
            label,
            surface,
            points: points.to_vec(),
            report: report.clone(),
        });
    }

    pub fn snapshot(&self) -> Vec<RecordedSequence> {
        self.entries.lock().expect("ledger lock").clone()
    }

    pub fn len(&self) -> usize {
        self.entries.lock().expect("ledger lock").len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SuiteConfig {
    /// Surfaces covered by the randomized plateau search.
    pub search_r: Vec<u32>,
    /// Random configurations per surface in that search.
    pub seeds: usize,
    pub base_seed: u64,
    pub options: SearchOptions,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig { search_r: vec![1, 2, 3], seeds: 100, base_seed: 2014, options: SearchOptions::default() }
    }
}

fn timed(id: u32, name: &'static str, f: impl FnOnce() -> Result<(bool, String)>) -> CheckOutcome {
    let start = Instant::now();
    let (passed, detail) = f().unwrap_or_else(|e| (false, format!("error: {e}")));
    CheckOutcome { id, name, passed, detail, elapsed: start.elapsed() }
}

fn surface(r: u32) -> HirzebruchSurface {
    HirzebruchSurface::new(r).expect("r >= 1")
}

fn sequence(
    ledger: &Ledger,
    label: String,
    s: HirzebruchSurface,
    points: &[SurfacePoint],
    m_max: u32,
    options: &SearchOptions,
) -> Result<InitialSequenceReport> {
    let report = initial_sequence(s, points, m_max, options)?;
    ledger.record(label, s, points, &report);
    Ok(report)
}

/// Enumerated basis sizes of `d L_r` against `r d (d+1)/2 + (d+1)^2`,
/// `r = 1..=5`, `d = 0..=6`.
pub fn check_dimension_formula() -> CheckOutcome {
    timed(1, "dimension formula", || {
        let mut bad = Vec::new();
        for r in 1..=5 {
            for d in 0..=6u32 {
                let s = surface(r);
                let n = s.polarization_basis(d).len() as u64;
                let (rr, dd) = (u64::from(r), u64::from(d));
                let formula = rr * dd * (dd + 1) / 2 + (dd + 1) * (dd + 1);
                if n != formula || s.h0(d) != formula {
                    bad.push(format!("r={r} d={d}: {n} vs {formula}"));
                }
            }
        }
        Ok((bad.is_empty(), if bad.is_empty() { "35 classes agree".into() } else { bad.join("; ") }))
    })
}

/// A point of `E_r`, `r = 1..=4`: the first `r + 2` terms are one and the
/// next is larger.
pub fn check_negative_curve_example(ledger: &Ledger, options: &SearchOptions) -> CheckOutcome {
    timed(2, "single point on E_r", || {
        let mut bad = Vec::new();
        let mut shown = Vec::new();
        for r in 1..=4 {
            let pts = point_on_negative_curve(r);
            let rep = sequence(ledger, format!("E-point r={r}"), surface(r), &pts, r + 3, options)?;
            let k = r as usize + 2;
            if !(rep.alphas[..k].iter().all(|&a| a == 1) && rep.alphas[k] > 1) {
                bad.push(format!("r={r}: {:?}", rep.alphas));
            }
            shown.push(format!("r={r} {:?}", rep.alphas));
        }
        Ok((bad.is_empty(), if bad.is_empty() { shown.join(", ") } else { bad.join("; ") }))
    })
}

/// Configuration `idx` of the randomized search: sizes cycle through 1..=6
/// and constraints through free / one point on E_r / one fiber / one fiber
/// with a point on E_r / all on E_r.
pub fn search_configuration(r: u32, idx: usize, base_seed: u64) -> Result<(String, Vec<SurfacePoint>)> {
    let n = 1 + idx % 6;
    let (kind, c) = match idx % 5 {
        0 => ("free", SchemeConstraints::default()),
        1 => ("one-on-E", SchemeConstraints { on_negative_curve: 1, shared_fiber: false }),
        2 => ("fiber", SchemeConstraints { on_negative_curve: 0, shared_fiber: true }),
        3 => ("fiber+E", SchemeConstraints { on_negative_curve: 1, shared_fiber: true }),
        _ => ("all-on-E", SchemeConstraints { on_negative_curve: n, shared_fiber: false }),
    };
    let seed = base_seed.wrapping_add(idx as u64);
    let pts = random_scheme(r, n, seed, c)?;
    Ok((format!("search r={r} n={n} {kind} seed={seed}"), pts))
}

/// Randomized search for a plateau of length `r + 3`. Returns the outcome and
/// the per-configuration sequences, which the classification check reuses.
pub fn check_no_long_plateau(ledger: &Ledger, config: &SuiteConfig) -> CheckOutcome {
    timed(3, "no plateau of length r+3", || {
        let jobs: Vec<(u32, usize)> =
            config.search_r.iter().flat_map(|&r| (0..config.seeds).map(move |i| (r, i))).collect();
        let results: Vec<Result<(u32, bool)>> = jobs
            .par_iter()
            .map(|&(r, idx)| {
                let (label, pts) = search_configuration(r, idx, config.base_seed)?;
                let rep = sequence(ledger, label, surface(r), &pts, r + 3, &config.options)?;
                Ok((r, rep.alphas[0] == rep.alphas[r as usize + 2]))
            })
            .collect();
        let mut witnesses = 0;
        for res in results {
            let (_, witness) = res?;
            witnesses += usize::from(witness);
        }
        Ok((
            witnesses == 0,
            format!("{} configurations over r in {:?}, {witnesses} witnesses", jobs.len(), config.search_r),
        ))
    })
}

/// Plateau `r + 2` forces a single point of `E_r` with `α = 1`; a single
/// point off `E_r` has plateau at most `r + 1`.
pub fn check_negative_curve_classification(ledger: &Ledger, config: &SuiteConfig) -> CheckOutcome {
    timed(4, "plateau r+2 classification", || {
        let mut bad = Vec::new();
        let mut long_plateaus = 0;
        let mut off_e = 0;
        // everything computed so far with r + 3 terms
        for rec in ledger.snapshot() {
            let r = rec.surface.r() as usize;
            if rec.report.alphas.len() < r + 3 {
                continue;
            }
            if rec.report.plateau_length == r + 2 {
                long_plateaus += 1;
                if !(rec.points.len() == 1 && is_on_negative_curve(&rec.points[0]) && rec.report.alphas[0] == 1) {
                    bad.push(format!("{}: plateau r+2 off the expected geometry", rec.label));
                }
            }
        }
        let r_values: Vec<u32> = (1..=config.search_r.iter().copied().max().unwrap_or(3).max(4)).collect();
        for &r in &r_values {
            let s = surface(r);
            for k in 0..8u64 {
                let seed = config.base_seed.wrapping_add(10_000 + k);
                let on = random_scheme(r, 1, seed, SchemeConstraints { on_negative_curve: 1, shared_fiber: false })?;
                let off = random_scheme(r, 1, seed, SchemeConstraints::default())?;
                for (pts, expect_e) in [(on, true), (off, false)] {
                    let rep = classify_plateau(s, &pts, &config.options)?;
                    ledger.record(format!("classify r={r} seed={seed} on_E={expect_e}"), s, &pts, &rep.sequence);
                    if expect_e {
                        long_plateaus += 1;
                        if rep.class != PlateauClass::NegativeCurvePoint || rep.plateau_length != r as usize + 2 {
                            bad.push(format!("r={r} seed={seed}: point on E_r gave {:?}", rep.class));
                        }
                    } else {
                        off_e += 1;
                        if rep.plateau_length > r as usize + 1 {
                            bad.push(format!("r={r} seed={seed}: point off E_r has plateau {}", rep.plateau_length));
                        }
                    }
                }
            }
        }
        Ok((
            bad.is_empty(),
            if bad.is_empty() {
                format!("{long_plateaus} plateaus of length r+2 all NegativeCurvePoint; {off_e} points off E_r within r+1")
            } else {
                bad.join("; ")
            },
        ))
    })
}

/// Points on one fiber of `F_2`, `F_3` have plateau exactly `r + 1` with
/// `α = 1`; moving one point off the fiber shortens it.
pub fn check_single_fiber(ledger: &Ledger, options: &SearchOptions) -> CheckOutcome {
    timed(5, "single fiber plateau r+1", || {
        let mut bad = Vec::new();
        let mut n = 0;
        for r in [2u32, 3] {
            let s = surface(r);
            for k in [2usize, 3, 4] {
                let pts = fiber_points(r, k);
                let rep = classify_plateau(s, &pts, options)?;
                ledger.record(format!("fiber r={r} k={k}"), s, &pts, &rep.sequence);
                if rep.class != PlateauClass::SingleFiber
                    || rep.plateau_length != r as usize + 1
                    || rep.sequence.alphas[0] != 1
                {
                    bad.push(format!("r={r} k={k}: {:?} {:?}", rep.class, rep.sequence.alphas));
                }
                let moved = move_off_fiber(&pts, k - 1, 1)?;
                let rep2 = sequence(ledger, format!("fiber r={r} k={k} moved"), s, &moved, r + 2, options)?;
                if rep2.plateau_length > r as usize {
                    bad.push(format!("r={r} k={k} moved: plateau {}", rep2.plateau_length));
                }
                n += 1;
            }
        }
        Ok((bad.is_empty(), if bad.is_empty() { format!("{n} fiber schemes and perturbations") } else { bad.join("; ") }))
    })
}

/// Lifted pencil+star configurations on `F_1` with `a = 2, 3` have
/// `α(Z) = α(2Z) = a` and classify as such.
pub fn check_pencil_star(ledger: &Ledger, options: &SearchOptions, seed: u64) -> CheckOutcome {
    timed(6, "F_1 pencil+star plateau", || {
        let s = surface(1);
        let mut bad = Vec::new();
        let mut shown = Vec::new();
        for a in [2usize, 3] {
            let cfg = pencil_star_config_retrying(a, seed, 100)?;
            let expected = a * (2 * a - 1) - a * (a - 1) / 2;
            let rep = classify_plateau(s, &cfg.points, options)?;
            ledger.record(format!("pencil-star a={a}"), s, &cfg.points, &rep.sequence);
            let al = &rep.sequence.alphas;
            if cfg.points.len() != expected || al[0] != a as u32 || al[1] != a as u32 || al[2] <= a as u32 {
                bad.push(format!("a={a}: {} points, {:?}", cfg.points.len(), al));
            }
            if rep.class != PlateauClass::F1PencilStar {
                bad.push(format!("a={a}: classified {:?}", rep.class));
            }
            shown.push(format!("a={a} ({} points) {:?}", cfg.points.len(), al));
        }
        Ok((bad.is_empty(), if bad.is_empty() { shown.join(", ") } else { bad.join("; ") }))
    })
}

/// `α(mZ) (r + 2) >= m α(Z)` for every recorded term, strictly when
/// `α(Z) >= 2`; also the sharper bound used for the Waldschmidt lower bound.
pub fn check_chudnovsky(ledger: &Ledger) -> CheckOutcome {
    timed(7, "Chudnovsky-type inequality", || {
        let mut bad = Vec::new();
        let mut terms = 0;
        let mut strict = 0;
        for rec in ledger.snapshot() {
            let r = u64::from(rec.surface.r());
            let a1 = u64::from(rec.report.alphas[0]);
            for (m, &am) in (1u64..).zip(&rec.report.alphas) {
                let (lhs, rhs) = (u64::from(am) * (r + 2), m * a1);
                terms += 1;
                let ok = if a1 >= 2 { lhs > rhs } else { lhs >= rhs };
                strict += usize::from(a1 >= 2);
                if !ok {
                    bad.push(format!("{}: α({m}Z) = {am}, α(Z) = {a1}", rec.label));
                }
                if let Some(refined) = &rec.report.refined_lower {
                    if &BigRational::new(am.into(), m.into()) < refined {
                        bad.push(format!("{}: α({m}Z)/{m} below the refined bound", rec.label));
                    }
                }
            }
            if rec.report.waldschmidt_lower() > &rec.report.waldschmidt_upper {
                bad.push(format!("{}: lower bound above upper bound", rec.label));
            }
        }
        Ok((
            bad.is_empty() && terms > 0,
            if bad.is_empty() {
                format!("{terms} terms from {} sequences ({strict} strict)", ledger.len())
            } else {
                bad.join("; ")
            },
        ))
    })
}

/// For a point of `E_r`, `r = 1..=3`, `min_{m <= r+3} α(mZ)/m = 1/(r+2)`.
pub fn check_waldschmidt_attainment(ledger: &Ledger, options: &SearchOptions) -> CheckOutcome {
    timed(8, "Waldschmidt bound attained", || {
        let mut bad = Vec::new();
        for r in 1..=3 {
            let pts = point_on_negative_curve(r);
            let rep = sequence(ledger, format!("E-point bounds r={r}"), surface(r), &pts, r + 3, options)?;
            let target = BigRational::new(1.into(), (r + 2).into());
            if rep.waldschmidt_upper != target || rep.chudnovsky_lower != target {
                bad.push(format!("r={r}: upper {} lower {}", rep.waldschmidt_upper, rep.chudnovsky_lower));
            }
        }
        Ok((bad.is_empty(), if bad.is_empty() { "upper = lower = 1/(r+2) for r = 1, 2, 3".into() } else { bad.join("; ") }))
    })
}

fn random_line<R: Rng>(rng: &mut R, range: i64, through_q: bool) -> Option<ProjLine> {
    let a = rng.gen_range(-range..=range);
    let b = rng.gen_range(-range..=range);
    let c = if through_q { 0 } else { rng.gen_range(-range..=range) };
    ProjLine::from_integers([a, b, c]).ok()
}

/// Random arrangement of `d` distinct lines with small coefficients, so that
/// concurrences are common; the first `m` pass through `Q`.
pub fn random_arrangement(d: usize, m: usize, seed: u64) -> Arrangement {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut lines: Vec<ProjLine> = Vec::with_capacity(d);
    while lines.len() < d {
        let Some(l) = random_line(&mut rng, 3, lines.len() < m) else { continue };
        if !lines.contains(&l) {
            lines.push(l);
        }
    }
    Arrangement::new(lines, PlanePoint::center()).expect("distinct lines")
}

fn choose2(n: usize) -> usize {
    n * n.saturating_sub(1) / 2
}

/// The singular-point bound for line arrangements and its equality case.
pub fn check_arrangements(seed: u64) -> CheckOutcome {
    timed(9, "singular point bound", || {
        let mut bad = Vec::new();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut lemma_cases = 0;
        for k in 0..200u64 {
            let d = rng.gen_range(2..=8);
            let m = rng.gen_range(0..=d);
            let arr = random_arrangement(d, m, seed.wrapping_add(k));
            let total: usize = singular_points(&arr).iter().map(|s| choose2(s.multiplicity)).sum();
            if total != choose2(d) {
                bad.push(format!("seed {k}: multiplicity sum {total} != C({d},2)"));
            }
            if arr.multiplicity_at_q() >= 2 {
                lemma_cases += 1;
                let rep = check_lemma(&arr)?;
                if !rep.consistent() {
                    bad.push(format!("seed {k}: {} singular points, bound {}", rep.singular_away, rep.bound));
                }
            }
        }
        for (d, m) in [(4usize, 2usize), (6, 3), (8, 4)] {
            let arr = make_pencil_star_retrying(d, m, seed, 100)?;
            let rep = check_lemma(&arr)?;
            if !(rep.singular_away == lemma_bound(d, m)? && rep.extremal_structure) {
                bad.push(format!("pencil+star d={d} m={m}: {} of {}", rep.singular_away, rep.bound));
            }
            // force three general lines through one point
            let lines = arr.lines();
            let p = lines[m].meet(&lines[m + 1]).expect("distinct");
            let mut degenerate: Vec<ProjLine> = lines[..d - 1].to_vec();
            let other = PlanePoint::from_integers([1, 7, 13])?;
            let Some(through) = ProjLine::through(&p, &other) else { continue };
            if d - m < 3 {
                // only two general lines; tilt one pencil line onto the node instead
                let to_q = ProjLine::through(&p, &PlanePoint::center()).expect("p is not Q");
                degenerate = lines.to_vec();
                degenerate[0] = to_q;
            } else {
                degenerate.push(through);
            }
            let Ok(deg) = Arrangement::new(degenerate, PlanePoint::center()) else { continue };
            let rep2 = check_lemma(&deg)?;
            if rep2.singular_away >= rep.singular_away || !rep2.consistent() {
                bad.push(format!("degenerated d={d} m={m}: {} not below {}", rep2.singular_away, rep.singular_away));
            }
        }
        Ok((
            bad.is_empty(),
            if bad.is_empty() {
                format!("200 random arrangements ({lemma_cases} with m >= 2), 3 extremal families, 3 degenerations")
            } else {
                bad.join("; ")
            },
        ))
    })
}

/// Every recorded certificate re-verifies, and conditions-matrix ranks do not
/// depend on chart choices (50 random point sets and degrees).
pub fn check_certificates(ledger: &Ledger, seed: u64) -> CheckOutcome {
    timed(10, "certificates and chart independence", || {
        let records = ledger.snapshot();
        let failures: Vec<String> = records
            .par_iter()
            .flat_map_iter(|rec| {
                rec.report
                    .certificates
                    .iter()
                    .filter(|c| !verify_certificate(rec.surface, &rec.points, c))
                    .map(|c| format!("{}: certificate for m={} fails", rec.label, c.multiplicity))
                    .collect::<Vec<_>>()
            })
            .collect();
        let certs: usize = records.iter().map(|r| r.report.certificates.len()).sum();
        let mut bad = failures;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for k in 0..50u64 {
            let r = rng.gen_range(1..=3);
            let n = rng.gen_range(1..=3);
            let m = rng.gen_range(1..=3);
            let d = rng.gen_range(1..=4);
            let pts = random_scheme(r, n, seed.wrapping_add(k), SchemeConstraints::default())?;
            let scheme = FatPointScheme::new(surface(r), pts.clone(), m)?;
            let base: Vec<_> = pts.iter().map(SurfacePoint::preferred_chart).collect();
            let alt: Vec<_> = pts
                .iter()
                .map(|p| {
                    let charts = p.valid_charts();
                    charts[rng.gen_range(0..charts.len())]
                })
                .collect();
            let r0 = rank_exact(&conditions_matrix_in_charts(&scheme, d, &base)?.matrix);
            let r1 = rank_exact(&conditions_matrix_in_charts(&scheme, d, &alt)?.matrix);
            if r0 != r1 {
                bad.push(format!("pair {k}: rank {r0} vs {r1}"));
            }
        }
        let nonzero = records
            .iter()
            .flat_map(|r| &r.report.certificates)
            .all(|c| c.coefficients.iter().any(|x| !x.is_zero()));
        Ok((
            bad.is_empty() && nonzero && certs > 0,
            if bad.is_empty() {
                format!("{certs} certificates re-verified; 50 chart pairs agree")
            } else {
                bad.join("; ")
            },
        ))
    })
}

#[derive(Debug, Clone)]
pub struct SuiteReport {
    pub outcomes: Vec<CheckOutcome>,
    pub sequences: usize,
}

impl SuiteReport {
    pub fn all_passed(&self) -> bool {
        self.outcomes.iter().all(|o| o.passed)
    }
}

/// Runs every check in order; the last two consume everything computed by
/// the others.
pub fn run_suite(config: &SuiteConfig) -> SuiteReport {
    let ledger = Ledger::new();
    let o = &config.options;
    let mut outcomes = vec![
        check_dimension_formula(),
        check_negative_curve_example(&ledger, o),
        check_no_long_plateau(&ledger, config),
    ];
    outcomes.push(check_negative_curve_classification(&ledger, config));
    outcomes.push(check_single_fiber(&ledger, o));
    outcomes.push(check_pencil_star(&ledger, o, config.base_seed));
    outcomes.push(check_waldschmidt_attainment(&ledger, o));
    outcomes.push(check_arrangements(config.base_seed));
    outcomes.push(check_chudnovsky(&ledger));
    outcomes.push(check_certificates(&ledger, config.base_seed));
    outcomes.sort_by_key(|o| o.id);
    SuiteReport { outcomes, sequences: ledger.len() }
}
