use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid field parameters: {0}")]
    InvalidField(String),
    #[error("invalid field element: {0}")]
    InvalidElement(String),
    #[error("the norm of a unit is a unit; no preimage of 0")]
    ZeroNorm,
    #[error("twist vector {e:?} is not coprime to r = {r}")]
    TwistNotCoprime { e: Vec<i64>, r: u32 },
    #[error("no adapted basis: {0}")]
    NoAdaptedBasis(String),
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("not a basis of the lattice: {0}")]
    NotLatticeBasis(String),
    #[error("Ehrhart interpolation failed: {0}")]
    Ehrhart(String),
    #[error("operands live in different Ore rings")]
    RingMismatch,
    #[error("polynomial has negative exponent {0:?}; total degree is undefined")]
    NegativeExponent(Vec<i64>),
    #[error("expected a nonzero polynomial")]
    ZeroPolynomial,
    #[error("not a central element: {0}")]
    NotCentral(String),
    #[error("degree {d} outside the admissible range 0..={max}")]
    DegreeOutOfRange { d: u32, max: u32 },
    #[error("exhaustive search needs {required} codewords, budget is {budget}")]
    BudgetExceeded { required: u128, budget: u128 },
    #[error("bound violated: {0}")]
    BoundViolation(String),
    #[error("invariant violated: {0}")]
    Invariant(String),
    #[error("invalid cocycle: {0}")]
    InvalidCocycle(String),
    #[error("invalid LAG parameters: {0}")]
    InvalidLag(String),
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("evaluation point rejected: {0}")]
    BadPoint(String),
    #[error("serialization error: {0}")]
    Serde(#[from] serde_json::Error),
}

impl Error {
    /// True for failures that mean a proven bound or identity did not hold.
    pub fn is_mathematical(&self) -> bool {
        matches!(self, Error::BoundViolation(_) | Error::Invariant(_))
    }
}
