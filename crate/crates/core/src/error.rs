use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RingError {
    #[error("characteristic {0} is not a prime below 2^31")]
    NotPrime(u32),
    #[error("a ring needs at least one grading component")]
    NoBlocks,
    #[error("factor dimension {0} is negative")]
    NegativeDimension(i64),
    #[error("{0} variables requested, at most {max} are supported", max = crate::ring::MAX_VARS)]
    TooManyVariables(usize),
    #[error("operands live in different rings")]
    RingMismatch,
    #[error("multidegree has {got} coordinates, ring has {expected} grading components")]
    DegreeLength { expected: usize, got: usize },
    #[error("variable x({block},{index}) does not exist in this ring")]
    NoSuchVariable { block: usize, index: usize },
}

/// A syntax error in a polynomial string; positions are 1-based.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{line}:{column}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error(transparent)]
    Ring(#[from] RingError),
    #[error("inhomogeneous input: {0}")]
    Inhomogeneous(String),
    #[error("vector of rank {got} does not live in a free module of rank {expected}")]
    AmbientMismatch { expected: usize, got: usize },
    #[error("maps {0} and {1} do not compose to zero")]
    NotAComplex(usize, usize),
    #[error("maps {0} and {1} are not composable")]
    NotComposable(usize, usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RegionError {
    #[error("regions live in Z^{0} and Z^{1}")]
    DimensionMismatch(usize, usize),
    #[error("box corner {lo:?} is not below {hi:?}")]
    EmptyBox { lo: Vec<i64>, hi: Vec<i64> },
    #[error("seed {0:?} lies outside the search box")]
    SeedOutsideBox(Vec<i64>),
    #[error("the bigraded criterion needs r = 2, ring has r = {0}")]
    NotBigraded(usize),
}
