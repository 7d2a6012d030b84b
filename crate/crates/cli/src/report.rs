use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use fatpoints::exactalg::{format_rational, parse_rational, BigRational};
use fatpoints::fatpoints::{verify_certificate, Certificate, InitialSequenceReport, PlateauClass};
use fatpoints::toric::{CoxMonomial, HirzebruchSurface, SurfacePoint};
use fatpoints::{Error, Result};

use crate::job::{Format, JobSpec};

/// One nonzero term `coefficient * monomial` of a certificate.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermDoc {
    pub coefficient: String,
    pub monomial: String,
    pub exponents: [u32; 4],
}

/// A section of `degree * L_r` vanishing to order `multiplicity` on the
/// points, as its nonzero terms.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateDoc {
    pub degree: u32,
    pub multiplicity: u32,
    pub terms: Vec<TermDoc>,
}

impl From<&Certificate> for CertificateDoc {
    fn from(c: &Certificate) -> Self {
        let terms = c
            .terms()
            .map(|(coef, mono)| TermDoc {
                coefficient: format_rational(coef),
                monomial: mono.to_string(),
                exponents: mono.exponents,
            })
            .collect();
        CertificateDoc { degree: c.degree, multiplicity: c.multiplicity, terms }
    }
}

impl CertificateDoc {
    pub fn to_certificate(&self) -> Result<Certificate> {
        let coefficients =
            self.terms.iter().map(|t| parse_rational(&t.coefficient)).collect::<Result<Vec<_>>>()?;
        let basis = self.terms.iter().map(|t| CoxMonomial::new(t.exponents)).collect();
        Ok(Certificate { degree: self.degree, multiplicity: self.multiplicity, basis, coefficients })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundsDoc {
    /// `α(Z) / (r + 2)`.
    pub chudnovsky_lower: String,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub refined_lower: Option<String>,
    pub lower: String,
    /// `min α(mZ) / m` over the computed terms.
    pub upper: String,
}

impl From<&InitialSequenceReport> for BoundsDoc {
    fn from(rep: &InitialSequenceReport) -> Self {
        BoundsDoc {
            chudnovsky_lower: format_rational(&rep.chudnovsky_lower),
            refined_lower: rep.refined_lower.as_ref().map(format_rational),
            lower: format_rational(rep.waldschmidt_lower()),
            upper: format_rational(&rep.waldschmidt_upper),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckDoc {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SingularDoc {
    pub point: [String; 3],
    pub multiplicity: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchRow {
    pub label: String,
    pub r: u32,
    pub alphas: Vec<u32>,
    pub plateau_length: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Results {
    Alpha {
        r: u32,
        points: Vec<[String; 4]>,
        m: u32,
        alpha: u32,
        certificate: CertificateDoc,
    },
    Sequence {
        r: u32,
        points: Vec<[String; 4]>,
        alphas: Vec<u32>,
        plateau_length: usize,
        bounds: BoundsDoc,
        certificates: Vec<CertificateDoc>,
    },
    Waldschmidt {
        r: u32,
        points: Vec<[String; 4]>,
        alphas: Vec<u32>,
        /// `α(mZ) / m` for each computed `m`.
        ratios: Vec<String>,
        bounds: BoundsDoc,
        certificates: Vec<CertificateDoc>,
    },
    Classify {
        r: u32,
        points: Vec<[String; 4]>,
        class: PlateauClass,
        plateau_length: usize,
        alphas: Vec<u32>,
        #[serde(skip_serializing_if = "Option::is_none", default)]
        anomaly: Option<String>,
        certificates: Vec<CertificateDoc>,
    },
    Verify {
        sequences: usize,
        checks: Vec<CheckDoc>,
    },
    Arrangement {
        d: usize,
        m: usize,
        lines: Vec<[String; 3]>,
        singular_points: Vec<SingularDoc>,
        singular_away: usize,
        bound: usize,
        extremal: bool,
        violations: Vec<String>,
    },
    Search {
        configurations: Vec<SearchRow>,
        /// Count of configurations by `r` and plateau length, as `"r/len"`.
        plateau_counts: BTreeMap<String, usize>,
        witnesses: Vec<String>,
    },
}

/// The output of one job.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportDocument {
    pub job: JobSpec,
    pub results: Results,
    pub verification: Vec<CheckDoc>,
    pub passed: bool,
    /// Wall-clock seconds; present only when requested, since it breaks
    /// byte-identical output.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub seconds: Option<f64>,
}

impl ReportDocument {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes") + "\n"
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse { line: e.line(), message: e.to_string() })
    }

    /// The results table flattened to CSV.
    pub fn to_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        let mut put = |rec: &[String]| w.write_record(rec).expect("in-memory write");
        let s = |x: &dyn ToString| x.to_string();
        match &self.results {
            Results::Alpha { m, alpha, certificate, .. } => {
                put(&["m", "alpha", "terms"].map(String::from));
                put(&[s(m), s(alpha), s(&certificate.terms.len())]);
            }
            Results::Sequence { alphas, .. }
            | Results::Waldschmidt { alphas, .. }
            | Results::Classify { alphas, .. } => {
                put(&["m", "alpha", "alpha_over_m"].map(String::from));
                for (m, a) in (1u32..).zip(alphas) {
                    put(&[s(&m), s(a), format_rational(&BigRational::new((*a).into(), m.into()))]);
                }
            }
            Results::Verify { checks, .. } => {
                put(&["name", "passed", "detail"].map(String::from));
                for c in checks {
                    put(&[c.name.clone(), s(&c.passed), c.detail.clone()]);
                }
            }
            Results::Arrangement { singular_points, .. } => {
                put(&["x", "y", "z", "multiplicity"].map(String::from));
                for p in singular_points {
                    let [x, y, z] = p.point.clone();
                    put(&[x, y, z, s(&p.multiplicity)]);
                }
            }
            Results::Search { configurations, .. } => {
                put(&["label", "r", "alphas", "plateau_length"].map(String::from));
                for c in configurations {
                    let alphas = c.alphas.iter().map(u32::to_string).collect::<Vec<_>>().join(" ");
                    put(&[c.label.clone(), s(&c.r), alphas, s(&c.plateau_length)]);
                }
            }
        }
        String::from_utf8(w.into_inner().expect("flush")).expect("utf-8")
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => self.to_json(),
            Format::Csv => self.to_csv(),
        }
    }

    /// Re-verifies every certificate in the document against its points.
    /// `Ok(true)` when there are none to check.
    pub fn recheck_certificates(&self) -> Result<bool> {
        let (r, points, certs): (u32, &Vec<[String; 4]>, Vec<&CertificateDoc>) = match &self.results {
            Results::Alpha { r, points, certificate, .. } => (*r, points, vec![certificate]),
            Results::Sequence { r, points, certificates, .. }
            | Results::Waldschmidt { r, points, certificates, .. }
            | Results::Classify { r, points, certificates, .. } => (*r, points, certificates.iter().collect()),
            _ => return Ok(true),
        };
        let surface = HirzebruchSurface::new(r)?;
        let pts = points
            .iter()
            .map(|c| {
                let x = c.iter().map(|t| parse_rational(t)).collect::<Result<Vec<_>>>()?;
                SurfacePoint::new(x.try_into().expect("four coordinates"))
            })
            .collect::<Result<Vec<_>>>()?;
        for c in certs {
            if !verify_certificate(surface, &pts, &c.to_certificate()?) {
                return Ok(false);
            }
        }
        Ok(true)
    }
}
