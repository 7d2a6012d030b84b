use clap::{Args, Parser, Subcommand, ValueEnum};

use fatpoints::fatpoints::DEFAULT_DEGREE_CEILING;

use crate::job::{ArrangementSource, Command, Format, JobSpec, PointSource};

#[derive(Debug, Parser)]
#[command(name = "fatpoints", version, about = "Initial sequences of fat points on Hirzebruch surfaces")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Sub,

    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Seed for generators and random primes.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Highest degree tried in the search for alpha.
    #[arg(long = "d-ceiling", global = true, env = "FATPOINTS_DCEIL", default_value_t = DEFAULT_DEGREE_CEILING)]
    pub d_ceiling: u32,
    /// Random primes tried per kernel before exact rational elimination.
    #[arg(long, global = true, default_value_t = 3)]
    pub primes: usize,
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    pub jobs: Option<usize>,
    /// Add wall-clock seconds to the report.
    #[arg(long, global = true)]
    pub timing: bool,
}

#[derive(Debug, Subcommand)]
pub enum Sub {
    /// alpha(mZ) with a certificate.
    Alpha {
        #[command(flatten)]
        points: PointArgs,
        #[arg(long, default_value_t = 1)]
        m: u32,
    },
    /// alpha(Z), ..., alpha(m_max Z) with bounds on the Waldschmidt constant.
    Sequence {
        #[command(flatten)]
        points: PointArgs,
        /// Number of terms (default r + 3).
        #[arg(long)]
        mmax: Option<u32>,
    },
    /// Waldschmidt constant bounds from the first terms of the sequence.
    Waldschmidt {
        #[command(flatten)]
        points: PointArgs,
        #[arg(long)]
        mmax: Option<u32>,
    },
    /// Plateau length and its geometric class.
    Classify {
        #[command(flatten)]
        points: PointArgs,
    },
    /// The full verification suite.
    Verify {
        /// Surfaces for the randomized search: `2`, `1..3` (inclusive) or `1,3`.
        #[arg(long, value_parser = parse_r_range, default_value = "1..3")]
        r: RRange,
        /// Random configurations per surface.
        #[arg(long, default_value_t = 100)]
        seeds: usize,
    },
    /// Singular points of a line arrangement against the bound for `m` lines
    /// through `Q = (0:0:1)`.
    Arrangement {
        /// Generate `m` lines through `Q` and `d - m` general lines.
        #[arg(long, requires_all = ["d", "m"], conflicts_with = "lines")]
        pencil_star: bool,
        #[arg(long)]
        d: Option<usize>,
        #[arg(long)]
        m: Option<usize>,
        /// File of line coefficients `a b c`, one line per row (`-` for stdin).
        #[arg(long)]
        lines: Option<String>,
    },
    /// Randomized search for long plateaus.
    Search {
        #[arg(long, value_parser = parse_r_range, default_value = "1..3")]
        r: RRange,
        #[arg(long, default_value_t = 100)]
        seeds: usize,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ConfigKind {
    /// One point of the negative curve.
    NegcurvePoint,
    /// `k` points on one fiber.
    Fiber,
    /// The lifted pencil+star configuration on F_1.
    PencilStar,
    /// Random points.
    Random,
}

#[derive(Debug, Args)]
pub struct PointArgs {
    /// The surface F_r (1 with --plane or pencil-star).
    #[arg(long)]
    pub r: Option<u32>,
    /// A named configuration instead of a point file.
    #[arg(long, value_enum, conflicts_with = "points")]
    pub config: Option<ConfigKind>,
    /// Points on the fiber (fiber).
    #[arg(long, default_value_t = 2)]
    pub k: usize,
    /// Lines in each part (pencil-star).
    #[arg(long, default_value_t = 2)]
    pub a: usize,
    /// Number of points (random).
    #[arg(long, default_value_t = 4)]
    pub n: usize,
    /// How many random points lie on E_r (random).
    #[arg(long = "on-e", default_value_t = 0)]
    pub on_e: usize,
    /// Put all random points on one fiber (random).
    #[arg(long)]
    pub shared_fiber: bool,
    /// Point file; `-` or no source at all reads stdin.
    #[arg(long)]
    pub points: Option<String>,
    /// Points are plane points `x y z`, lifted to F_1.
    #[arg(long)]
    pub plane: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RRange(pub Vec<u32>);

/// `a`, `a..b`, `a..=b` (both inclusive) or a comma list.
pub fn parse_r_range(s: &str) -> Result<RRange, String> {
    let num = |t: &str| t.trim().parse::<u32>().map_err(|_| format!("not a surface index: {t:?}"));
    let values = if let Some((a, b)) = s.split_once("..") {
        let (a, b) = (num(a)?, num(b.trim_start_matches('='))?);
        if a > b {
            return Err(format!("empty range {s}"));
        }
        (a..=b).collect()
    } else {
        s.split(',').map(num).collect::<Result<Vec<_>, _>>()?
    };
    if values.contains(&0) {
        return Err("r must be at least 1".into());
    }
    Ok(RRange(values))
}

impl PointArgs {
    fn r(&self) -> u32 {
        let on_f1 = self.plane || self.config == Some(ConfigKind::PencilStar);
        self.r.unwrap_or(if on_f1 { 1 } else { 0 })
    }

    fn source(&self) -> PointSource {
        match self.config {
            Some(ConfigKind::NegcurvePoint) => PointSource::NegcurvePoint,
            Some(ConfigKind::Fiber) => PointSource::Fiber { k: self.k },
            Some(ConfigKind::PencilStar) => PointSource::PencilStar { a: self.a },
            Some(ConfigKind::Random) => PointSource::Random {
                n: self.n,
                on_negative_curve: self.on_e,
                shared_fiber: self.shared_fiber,
            },
            None => PointSource::File { path: self.points.clone().unwrap_or_else(|| "-".into()), plane: self.plane },
        }
    }
}

impl Cli {
    pub fn job(&self) -> JobSpec {
        let mut spec = JobSpec {
            command: Command::Alpha,
            r: Vec::new(),
            points: None,
            arrangement: None,
            m: None,
            m_max: None,
            d_ceiling: self.d_ceiling,
            seed: self.seed,
            primes: self.primes,
            seeds: None,
            format: self.format,
        };
        let with_points = |spec: &mut JobSpec, p: &PointArgs| {
            spec.r = vec![p.r()];
            spec.points = Some(p.source());
        };
        match &self.command {
            Sub::Alpha { points, m } => {
                with_points(&mut spec, points);
                spec.m = Some(*m);
            }
            Sub::Sequence { points, mmax } | Sub::Waldschmidt { points, mmax } => {
                spec.command =
                    if matches!(self.command, Sub::Sequence { .. }) { Command::Sequence } else { Command::Waldschmidt };
                with_points(&mut spec, points);
                spec.m_max = Some(mmax.unwrap_or(spec.r[0] + 3));
            }
            Sub::Classify { points } => {
                spec.command = Command::Classify;
                with_points(&mut spec, points);
            }
            Sub::Verify { r, seeds } | Sub::Search { r, seeds } => {
                spec.command = if matches!(self.command, Sub::Verify { .. }) { Command::Verify } else { Command::Search };
                spec.r = r.0.clone();
                spec.seeds = Some(*seeds);
            }
            Sub::Arrangement { pencil_star, d, m, lines } => {
                spec.command = Command::Arrangement;
                spec.arrangement = match (pencil_star, d, m, lines) {
                    (true, Some(d), Some(m), _) => Some(ArrangementSource::PencilStar { d: *d, m: *m }),
                    (false, _, _, Some(path)) => Some(ArrangementSource::File { path: path.clone() }),
                    _ => None,
                };
            }
        }
        spec
    }
}
