use std::collections::BTreeMap;
use std::io::Read;

use rayon::prelude::*;

use fatpoints::arrangements::{
    check_lemma, make_pencil_star_retrying, singular_points, Arrangement, PlanePoint,
};
use fatpoints::configs::{
    fiber_points, pencil_star_config_retrying, point_on_negative_curve, random_scheme, SchemeConstraints,
};
use fatpoints::exactalg::{format_rational, BigRational};
use fatpoints::fatpoints::{
    alpha, classify_plateau, initial_sequence, verify_certificate, Certificate, PlateauClass, SearchOptions,
};
use fatpoints::toric::{HirzebruchSurface, SurfacePoint};
use fatpoints::verify::{run_suite, search_configuration, SuiteConfig};
use fatpoints::{Error, Result};

use crate::job::{ArrangementSource, Command, JobSpec, PointSource};
use crate::points::{parse_lines, parse_plane_points, parse_points, point_strings};
use crate::report::{BoundsDoc, CertificateDoc, CheckDoc, ReportDocument, Results, SearchRow, SingularDoc};

/// Attempts allowed to a seeded generator before it reports a degenerate draw.
const GENERATOR_TRIES: usize = 100;

fn read_source(path: &str, stdin: &mut dyn Read) -> Result<String> {
    let mut text = String::new();
    if path == "-" {
        stdin.read_to_string(&mut text).map_err(|e| Error::InvalidInput(format!("reading stdin: {e}")))?;
    } else {
        text = std::fs::read_to_string(path).map_err(|e| Error::InvalidInput(format!("reading {path}: {e}")))?;
    }
    Ok(text)
}

/// The points a job runs on.
pub fn resolve_points(spec: &JobSpec, stdin: &mut dyn Read) -> Result<(HirzebruchSurface, Vec<SurfacePoint>)> {
    let r = spec.r[0];
    let surface = HirzebruchSurface::new(r)?;
    let source = spec.points.as_ref().ok_or_else(|| Error::InvalidInput("no point source".into()))?;
    let points = match source {
        PointSource::NegcurvePoint => point_on_negative_curve(r),
        PointSource::Fiber { k } => {
            if *k == 0 {
                return Err(Error::InvalidInput("k must be at least 1".into()));
            }
            fiber_points(r, *k)
        }
        PointSource::PencilStar { a } => pencil_star_config_retrying(*a, spec.seed, GENERATOR_TRIES)?.points,
        PointSource::Random { n, on_negative_curve, shared_fiber } => random_scheme(
            r,
            *n,
            spec.seed,
            SchemeConstraints { on_negative_curve: *on_negative_curve, shared_fiber: *shared_fiber },
        )?,
        PointSource::File { path, plane } => {
            let text = read_source(path, stdin)?;
            if *plane {
                parse_plane_points(&text)?
            } else {
                parse_points(&text, surface)?
            }
        }
    };
    Ok((surface, points))
}

fn options(spec: &JobSpec) -> SearchOptions {
    SearchOptions { degree_ceiling: spec.d_ceiling, seed: spec.seed, prime_attempts: spec.primes }
}

fn certificate_check(surface: HirzebruchSurface, points: &[SurfacePoint], certs: &[Certificate]) -> CheckDoc {
    let bad: Vec<u32> =
        certs.iter().filter(|c| !verify_certificate(surface, points, c)).map(|c| c.multiplicity).collect();
    CheckDoc {
        name: "certificates".into(),
        passed: bad.is_empty(),
        detail: if bad.is_empty() {
            format!("{} certificates vanish to the required order", certs.len())
        } else {
            format!("certificates for m = {bad:?} fail")
        },
    }
}

fn chudnovsky_check(r: u32, alphas: &[u32]) -> CheckDoc {
    let a1 = u64::from(alphas[0]);
    let bad: Vec<u64> = (1u64..)
        .zip(alphas)
        .filter(|&(m, &am)| {
            let (lhs, rhs) = (u64::from(am) * u64::from(r + 2), m * a1);
            if a1 >= 2 { lhs <= rhs } else { lhs < rhs }
        })
        .map(|(m, _)| m)
        .collect();
    CheckDoc {
        name: "chudnovsky".into(),
        passed: bad.is_empty(),
        detail: if bad.is_empty() {
            format!("alpha(mZ)(r+2) >= m alpha(Z) for m = 1..{}", alphas.len())
        } else {
            format!("fails for m = {bad:?}")
        },
    }
}

fn certs(list: &[Certificate]) -> Vec<CertificateDoc> {
    list.iter().map(CertificateDoc::from).collect()
}

/// Runs a validated job. Input errors come back as `Err`; failed checks are
/// recorded in the document.
pub fn run(spec: &JobSpec, stdin: &mut dyn Read) -> Result<ReportDocument> {
    spec.validate()?;
    let opts = options(spec);
    let (results, verification) = match spec.command {
        Command::Alpha => {
            let (surface, points) = resolve_points(spec, stdin)?;
            let m = spec.m.unwrap_or(1);
            let res = alpha(surface, &points, m, &opts)?;
            let check = certificate_check(surface, &points, std::slice::from_ref(&res.certificate));
            let results = Results::Alpha {
                r: surface.r(),
                points: points.iter().map(point_strings).collect(),
                m,
                alpha: res.alpha,
                certificate: CertificateDoc::from(&res.certificate),
            };
            (results, vec![check])
        }
        Command::Sequence | Command::Waldschmidt => {
            let (surface, points) = resolve_points(spec, stdin)?;
            let r = surface.r();
            let m_max = spec.m_max.unwrap_or(r + 3);
            let rep = initial_sequence(surface, &points, m_max, &opts)?;
            let checks = vec![
                certificate_check(surface, &points, &rep.certificates),
                chudnovsky_check(r, &rep.alphas),
            ];
            let points = points.iter().map(point_strings).collect();
            let results = if spec.command == Command::Sequence {
                Results::Sequence {
                    r,
                    points,
                    alphas: rep.alphas.clone(),
                    plateau_length: rep.plateau_length,
                    bounds: BoundsDoc::from(&rep),
                    certificates: certs(&rep.certificates),
                }
            } else {
                Results::Waldschmidt {
                    r,
                    points,
                    alphas: rep.alphas.clone(),
                    ratios: (1u32..)
                        .zip(&rep.alphas)
                        .map(|(m, &a)| format_rational(&BigRational::new(a.into(), m.into())))
                        .collect(),
                    bounds: BoundsDoc::from(&rep),
                    certificates: certs(&rep.certificates),
                }
            };
            (results, checks)
        }
        Command::Classify => {
            let (surface, points) = resolve_points(spec, stdin)?;
            let rep = classify_plateau(surface, &points, &opts)?;
            let checks = vec![
                certificate_check(surface, &points, &rep.sequence.certificates),
                chudnovsky_check(surface.r(), &rep.sequence.alphas),
                CheckDoc {
                    name: "classification".into(),
                    passed: rep.class != PlateauClass::ImpossibleWitness,
                    detail: rep.anomaly.clone().unwrap_or_else(|| rep.class.name().to_string()),
                },
            ];
            let results = Results::Classify {
                r: surface.r(),
                points: points.iter().map(point_strings).collect(),
                class: rep.class,
                plateau_length: rep.plateau_length,
                alphas: rep.sequence.alphas.clone(),
                anomaly: rep.anomaly.clone(),
                certificates: certs(&rep.sequence.certificates),
            };
            (results, checks)
        }
        Command::Verify => {
            let config = SuiteConfig {
                search_r: spec.r.clone(),
                seeds: spec.seeds.unwrap_or(100),
                base_seed: spec.seed,
                options: opts,
            };
            let suite = run_suite(&config);
            let checks: Vec<CheckDoc> = suite
                .outcomes
                .iter()
                .map(|o| CheckDoc { name: format!("{} {}", o.id, o.name), passed: o.passed, detail: o.detail.clone() })
                .collect();
            (Results::Verify { sequences: suite.sequences, checks: checks.clone() }, checks)
        }
        Command::Arrangement => {
            let arr = match spec.arrangement.as_ref().expect("validated") {
                ArrangementSource::PencilStar { d, m } => make_pencil_star_retrying(*d, *m, spec.seed, GENERATOR_TRIES)?,
                ArrangementSource::File { path } => {
                    let lines = parse_lines(&read_source(path, stdin)?)?;
                    Arrangement::new(lines, PlanePoint::center())?
                }
            };
            let rep = check_lemma(&arr)?;
            let check = CheckDoc {
                name: "singular point bound".into(),
                passed: rep.consistent(),
                detail: format!(
                    "{} singular points away from Q, bound {}, extremal structure {}",
                    rep.singular_away, rep.bound, rep.extremal_structure
                ),
            };
            let results = Results::Arrangement {
                d: rep.d,
                m: rep.m,
                lines: arr.lines().iter().map(|l| l.coefficients().clone().map(|x| format_rational(&x))).collect(),
                singular_points: singular_points(&arr)
                    .into_iter()
                    .map(|s| SingularDoc {
                        point: s.point.normalized().map(|x| format_rational(&x)),
                        multiplicity: s.multiplicity,
                    })
                    .collect(),
                singular_away: rep.singular_away,
                bound: rep.bound,
                extremal: rep.extremal_structure,
                violations: rep.violations.clone(),
            };
            (results, vec![check])
        }
        Command::Search => search(spec, &opts)?,
    };
    let passed = verification.iter().all(|c| c.passed);
    Ok(ReportDocument { job: spec.clone(), results, verification, passed, seconds: None })
}

fn search(spec: &JobSpec, opts: &SearchOptions) -> Result<(Results, Vec<CheckDoc>)> {
    let seeds = spec.seeds.unwrap_or(100);
    let jobs: Vec<(u32, usize)> = spec.r.iter().flat_map(|&r| (0..seeds).map(move |i| (r, i))).collect();
    let rows = jobs
        .par_iter()
        .map(|&(r, idx)| {
            let (label, points) = search_configuration(r, idx, spec.seed)?;
            let surface = HirzebruchSurface::new(r)?;
            let rep = initial_sequence(surface, &points, r + 3, opts)?;
            let certified = rep.certificates.iter().all(|c| verify_certificate(surface, &points, c));
            Ok((SearchRow { label, r, alphas: rep.alphas, plateau_length: rep.plateau_length }, certified))
        })
        .collect::<Result<Vec<_>>>()?;
    let mut counts = BTreeMap::new();
    let mut witnesses = Vec::new();
    let mut uncertified = 0;
    for (row, certified) in &rows {
        *counts.entry(format!("{}/{}", row.r, row.plateau_length)).or_insert(0) += 1;
        if row.plateau_length >= row.r as usize + 3 {
            witnesses.push(row.label.clone());
        }
        uncertified += usize::from(!certified);
    }
    let checks = vec![
        CheckDoc {
            name: "no plateau of length r+3".into(),
            passed: witnesses.is_empty(),
            detail: format!("{} configurations, {} witnesses", rows.len(), witnesses.len()),
        },
        CheckDoc {
            name: "certificates".into(),
            passed: uncertified == 0,
            detail: format!("{uncertified} configurations with a failing certificate"),
        },
    ];
    let configurations = rows.into_iter().map(|(row, _)| row).collect();
    Ok((Results::Search { configurations, plateau_counts: counts, witnesses }, checks))
}

/// Process exit status: 0 when every check passed, 1 otherwise.
pub fn exit_code(doc: &ReportDocument) -> i32 {
    if doc.passed {
        0
    } else {
        1
    }
}
