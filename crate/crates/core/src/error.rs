use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch in {context}: expected {expected}, found {found}")]
    DimensionMismatch {
        context: &'static str,
        expected: usize,
        found: usize,
    },

    #[error("jet is not invertible: constant term is zero")]
    NotInvertible,

    #[error("jets live over different base points or orders")]
    JetMismatch,

    #[error("index {index} out of range 0..={max}")]
    IndexOutOfRange { index: usize, max: usize },

    #[error("function provides derivatives up to order {available}, {needed} required")]
    InsufficientDerivatives { needed: usize, available: usize },

    #[error("exact integration requires a polynomial function")]
    ExactRequiresPolynomial,

    #[error("simplex quadrature did not reach tolerance {tol:e} (last change {change:e})")]
    QuadratureNotConverged { tol: f64, change: f64 },

    #[error("invalid weighted spectrum: {0}")]
    InvalidSpectrum(String),

    #[error("subspace is not transverse: rank {rank}, required {required}")]
    NotTransverse { rank: usize, required: usize },

    #[error("configuration outside the chart: {0}")]
    OutsideChart(String),

    #[error("not in the image of the ideal space: {0}")]
    NotInImage(String),

    #[error("subspaces live in different ambient spaces or have different dimensions")]
    AmbientMismatch,

    #[error("wrong codimension: expected {expected}, found {found}")]
    WrongCodimension { expected: usize, found: usize },

    #[error("not an ideal: {0}")]
    NotAnIdeal(String),

    #[error("zero direction vector")]
    ZeroDirection,

    #[error("path endpoints do not match at junction {0}")]
    EndpointMismatch(usize),

    #[error("invalid breakpoints: {0}")]
    InvalidBreakpoints(String),

    #[error("cocycle condition fails on 2-cell {0}")]
    CocycleViolation(usize),

    #[error("invalid cell complex: {0}")]
    InvalidComplex(String),

    #[error("filtration is not preserved by the differential in degree {0}")]
    FiltrationViolation(usize),

    #[error("differential does not square to zero in degree {0}")]
    NotAComplex(usize),

    #[error("invalid input: {0}")]
    InvalidInput(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
