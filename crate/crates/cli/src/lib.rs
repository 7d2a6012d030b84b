//! Command-line front end: job specifications, the point-file format, and
//! deterministic JSON/CSV reports.

pub mod args;
pub mod job;
pub mod points;
pub mod report;
pub mod run;

pub use job::{Command, Format, JobSpec, PointSource};
pub use points::{parse_lines, parse_plane_points, parse_points};
pub use report::ReportDocument;
pub use run::{exit_code, run};
