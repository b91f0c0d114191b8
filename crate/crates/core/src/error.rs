use thiserror::Error;

/// Errors surfaced by the exact-arithmetic engines.
///
/// `IdentityViolation` is special: it is not a usage error but a structured
/// diagnostic reporting that a finite-ring identity failed empirically on a
/// backend with zero divisors. Callers running stress pipelines are expected
/// to catch and classify it rather than abort.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("root order must be a positive integer")]
    InvalidOrder,

    #[error("incompatible cyclotomic rings: m = {0} vs m = {1}")]
    IncompatibleRing(u32, u32),

    #[error("F_{q} has no element of multiplicative order {m} (need {m} | {q} - 1)")]
    NoPrimitiveRoot { m: u32, q: u64 },

    #[error("hyperplane coefficient vector is zero in Q(zeta_m)")]
    ZeroCoefficientVector,

    #[error("duplicate hyperplane at index {0} (same affine set up to scalar)")]
    DuplicateHyperplane(usize),

    #[error("hyperplane shape does not match arrangement (expected m = {m}, n = {n})")]
    ShapeMismatch { m: u32, n: usize },

    #[error("region count requires real coefficients (m <= 2), got m = {0}")]
    NotReal(u32),

    #[error("invalid family parameters: {0}")]
    InvalidFamily(String),

    #[error("arrangement does not reduce correctly over {ring}")]
    IncorrectReduction { ring: String },

    #[error("inexact division: {0}")]
    InexactDivision(String),

    #[error("finite-ring identity violated over {ring}: {detail}")]
    IdentityViolation { ring: String, detail: String },

    #[error("interpolation needs {needed} distinct evaluation points, got {got}")]
    InsufficientPoints { needed: usize, got: usize },

    #[error("interpolated coefficient is not an integer: {0}")]
    NonIntegerInterpolation(String),

    #[error("degenerate representative equation: all coefficients vanish in the ring")]
    DegenerateEquation,

    #[error(
        "orbit of {element} has size {found}, expected {expected}; fixed by zeta^{fixing_power}"
    )]
    FreenessViolation {
        element: String,
        found: usize,
        expected: usize,
        fixing_power: u32,
    },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("arrangement is not symmetric: {0}")]
    NotSymmetric(String),

    #[error("internal inconsistency: {0}")]
    Inconsistency(String),
}

pub type Result<T> = std::result::Result<T, Error>;
