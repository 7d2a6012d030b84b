use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("prime {0} divides a denominator of the matrix")]
    BadPrime(u64),
    #[error("divisor class {a}F + {b}E is not effective")]
    NotEffective { a: i64, b: i64 },
    #[error("chart pivot coordinate vanishes at the point")]
    ChartInvalid,
    #[error("the blow-up center has no image on the surface")]
    CenterPoint,
    #[error("degenerate random configuration: {0}")]
    DegenerateSeed(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("line {line}: point repeats an earlier point")]
    DuplicatePoint { line: usize },
    #[error("no section found for multiplicity {m} up to degree {ceiling}")]
    DegreeCeiling { m: u32, ceiling: u32 },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
