use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("elliptic parameter {0} outside [0, 1)")]
    EllipticDomain(f64),
    #[error("characteristic {0} must be below 1")]
    CharacteristicDomain(f64),
    #[error("not an exact total derivative: {0}")]
    NotExactDerivative(String),
    #[error("inverse Euler operator failed: {0}")]
    NotVariational(String),
    #[error("jet has {got} entries but {needed} are required")]
    JetArity { needed: usize, got: usize },
    #[error("parse error: {0}")]
    Parse(String),
    #[error("hierarchy depth {0} outside 1..=8")]
    HierarchyDepth(usize),
    #[error("speed {0:e} below the regularity threshold")]
    DegenerateSpeed(f64),
    #[error("sample {index} within {distance:e} of the Heisenberg pole")]
    Pole { index: usize, distance: f64 },
    #[error("{m} and {n} are not coprime")]
    NotCoprime { m: u32, n: u32 },
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("total curvature / 2pi = {value} is not an integer (residual {residual:e})")]
    NonIntegral { value: f64, residual: f64 },
    #[error("near-tangential crossing, angle {0:e} rad")]
    Tangency(f64),
    #[error("degenerate segment at index {0}")]
    DegenerateSegment(usize),
    #[error("no period of the projected curve matches within tolerance")]
    PeriodDetection,
    #[error("curve does not close: {0}")]
    NotClosed(String),
    #[error("blow-up guard: max|k| = {max:e} exceeds {limit:e}")]
    BlowUp { max: f64, limit: f64 },
    #[error("run needs {needed:e} time steps, budget is {limit}")]
    StepBudget { needed: f64, limit: usize },
    #[error("compatibility residual {0:e} exceeds tolerance")]
    Compatibility(f64),
    #[error("invalid modulus: {0}")]
    InvalidModulus(String),
    #[error("exceptional modulus (|e| = 4)")]
    ExceptionalModulus,
    #[error("eigenvector degeneracy, norm {0:e}")]
    EigenvectorDegeneracy(f64),
    #[error("consistency check failed: {0}")]
    Consistency(String),
    #[error("continuation stalled near ({e1}, {e3})")]
    ContinuationStall { e1: f64, e3: f64 },
    #[error("non-finite value encountered")]
    NonFinite,
    #[error("io: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
