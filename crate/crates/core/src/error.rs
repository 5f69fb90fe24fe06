use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("syntax error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("the zero polynomial is not allowed here")]
    ZeroPolynomial,
    #[error("polynomial is not homogeneous")]
    NotHomogeneous,
    #[error("input has a square factor over ℚ")]
    SquareFactor,
    #[error("polynomial is not primitive (content {0})")]
    NotPrimitive(String),
    #[error("{0} is not prime")]
    NotPrime(String),
    #[error("declared degree {declared} is below the true degree {actual} in the eliminated variable")]
    DegreeBound { declared: u32, actual: u32 },
    #[error("both declared degrees are zero")]
    EmptySylvester,
    #[error("variable T{0} does not occur")]
    AbsentVariable(usize),
    #[error("malformed point line {line}: {msg}")]
    PointSyntax { line: usize, msg: String },
    #[error("cycle is not reduced (some multiplicity exceeds 1)")]
    NonReducedCycle,
    #[error("parameter out of range: {0}")]
    Range(String),
    #[error("certification could not find a squarefree coefficient to recurse on")]
    RecursionStuck,
}

pub type Result<T> = std::result::Result<T, Error>;
