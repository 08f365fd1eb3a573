use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("syntax error at byte {position}: {message}")]
    Syntax { position: usize, message: String },
    #[error("polynomial degree {actual} exceeds declared bound {bound}")]
    DegreeOverflow { actual: u32, bound: u32 },
    #[error("matrix is singular")]
    SingularMatrix,
    #[error("gcd of two zero polynomials is undefined")]
    BothZero,
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("pencil determinant vanishes identically")]
    SingularPencil,
    #[error("infinite fiber: F1 and F2 share the factor {0}")]
    InfiniteFiber(String),
    #[error("degree drop: deg F1 < n1 and deg F2 < n2")]
    DegreeDrop,
    #[error("no general line among the candidate sequence")]
    NoGeneralLine,
    #[error("line {0} = 0 is not general for this system")]
    NotGeneral(String),
    #[error("H' must be a nonzero homogeneous linear form, got {0}")]
    InvalidLine(String),
    #[error("the section s vanishes at a")]
    DegenerateSection,
    #[error("direction vector must be nonzero")]
    ZeroVector,
    #[error("pencil determinant is not divisible by {0}")]
    NotDivisible(String),
    #[error("eliminant vanishes identically (positive-dimensional intersection)")]
    IdenticallyZero,
    #[error("interpolation system is singular")]
    InterpolationSingular,
    #[error("operation undefined on the zero polynomial")]
    ZeroPolynomial,
    #[error("ill-conditioned root tracking: {0}")]
    IllConditioned(String),
    #[error("composition degree fit diverged: {0}")]
    FitDiverged(String),
    #[error("Zeuthen sum {0} is not a nonnegative integer")]
    NonIntegerSum(String),
    #[error("mapping is not dominant: J(F) vanishes identically")]
    NonDominant,
    #[error("numeric root finding unstable: {0}")]
    NumericUnstable(String),
    #[error("invalid generator spec: {0}")]
    InvalidSpec(String),
    #[error("internal error: {0}")]
    Internal(String),
}

impl Error {
    /// True for failures of the floating-point branch machinery, which callers
    /// may retry with a larger radius or tighter tolerance.
    pub fn is_numeric(&self) -> bool {
        matches!(
            self,
            Error::IllConditioned(_)
                | Error::FitDiverged(_)
                | Error::NonIntegerSum(_)
                | Error::NumericUnstable(_)
        )
    }

    /// True when the input system itself is rejected (not a tool failure).
    pub fn is_invalid_system(&self) -> bool {
        matches!(
            self,
            Error::InfiniteFiber(_)
                | Error::DegreeDrop
                | Error::Syntax { .. }
                | Error::DegreeOverflow { .. }
                | Error::InvalidLine(_)
                | Error::IdenticallyZero
        )
    }
}
