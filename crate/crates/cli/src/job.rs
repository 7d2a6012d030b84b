use serde::{Deserialize, Serialize};

use fatpoints::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    Alpha,
    Sequence,
    Waldschmidt,
    Classify,
    Verify,
    Arrangement,
    Search,
}

/// Where the reduced point set comes from.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum PointSource {
    /// The point `(1, 0, 0, 1)` of `E_r`.
    NegcurvePoint,
    /// `k` points on the fiber `(1 : 2)`.
    Fiber { k: usize },
    /// The lifted pencil+star configuration with `a` lines in each part.
    PencilStar { a: usize },
    /// Random points in general position, optionally constrained.
    Random { n: usize, on_negative_curve: usize, shared_fiber: bool },
    /// A point file (`-` for standard input); `plane` for three-coordinate
    /// points lifted to `F_1`.
    File { path: String, plane: bool },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum ArrangementSource {
    PencilStar { d: usize, m: usize },
    File { path: String },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum Format {
    Json,
    Csv,
}

/// Everything that determines a report. Two equal specs produce
/// byte-identical output.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct JobSpec {
    pub command: Command,
    /// Surfaces: one for point computations, a range for `verify`/`search`.
    pub r: Vec<u32>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub points: Option<PointSource>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub arrangement: Option<ArrangementSource>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub m: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub m_max: Option<u32>,
    pub d_ceiling: u32,
    pub seed: u64,
    /// Random primes per kernel before exact rational elimination.
    pub primes: usize,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub seeds: Option<usize>,
    pub format: Format,
}

impl JobSpec {
    pub fn validate(&self) -> Result<()> {
        let bad = |msg: &str| Err(Error::InvalidInput(msg.into()));
        if self.r.contains(&0) {
            return bad("r must be at least 1");
        }
        if self.m == Some(0) {
            return bad("m must be at least 1");
        }
        if self.m_max == Some(0) {
            return bad("m_max must be at least 1");
        }
        if self.d_ceiling == 0 {
            return bad("the degree ceiling must be at least 1");
        }
        if self.seeds == Some(0) {
            return bad("seeds must be at least 1");
        }
        let needs_points = matches!(
            self.command,
            Command::Alpha | Command::Sequence | Command::Waldschmidt | Command::Classify
        );
        if needs_points {
            if self.r.len() != 1 {
                return bad("this command takes a single r");
            }
            let on_f1 = matches!(
                self.points,
                Some(PointSource::PencilStar { .. }) | Some(PointSource::File { plane: true, .. })
            );
            if on_f1 && self.r[0] != 1 {
                return bad("plane points and pencil+star configurations live on F_1");
            }
            if self.points.is_none() {
                return bad("no point source");
            }
        }
        if matches!(self.command, Command::Verify | Command::Search) && self.r.is_empty() {
            return bad("empty range of r");
        }
        if self.command == Command::Arrangement && self.arrangement.is_none() {
            return bad("give --pencil-star with --d and --m, or --lines");
        }
        Ok(())
    }
}
