//! Crate-wide error type.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid recurrence system: {0}")]
    InvalidSystem(String),

    #[error("coefficient sequence `{name}` has length {got}, expected {expected}")]
    LengthMismatch {
        name: &'static str,
        got: usize,
        expected: usize,
    },

    #[error("running product overflowed at index {index}")]
    ProductOverflow { index: usize },

    #[error("index {value} out of range [{min}, {max}]")]
    OutOfRange { value: usize, min: usize, max: usize },

    #[error("point sequence must be strictly increasing and in range")]
    BadPointSet,

    #[error("quadrature of {requested} nodes needs recurrence data past degree {available}")]
    InsufficientRecurrenceData { requested: usize, available: usize },

    #[error("eigenvalue residual {worst:e} exceeds tolerance {bound:e}")]
    EigenResidual { worst: f64, bound: f64 },

    #[error("subset sweep needs {needed} determinants, budget is {budget}; use sampling (refutation only)")]
    SubsetBudget { needed: usize, budget: usize },

    #[error("linear system is singular")]
    Singular,

    #[error("system table rows are linearly dependent (rank {rank} < {n})")]
    DependentRows { rank: usize, n: usize },

    #[error("dual functional is degenerate: all cofactors vanish")]
    DegenerateDual,

    #[error("basis is not a T_Z system; exchange refused (use the oracle), witness points {witness:?}")]
    NotChebyshev { witness: Option<Vec<usize>> },

    #[error("levelled reference system is singular at points {points:?} (non-T_Z witness)")]
    SingularReference { points: Vec<usize> },

    #[error("exchange failed to improve the reference level (stalled at {level:e})")]
    ExchangeStalled { level: f64 },

    #[error("coefficient vector must not be identically zero")]
    TrivialCoefficients,

    #[error("function needs at least one value")]
    EmptyFunction,

    #[error("sign tolerance must be non-negative")]
    NegativeTolerance,

    #[error("too many zero entries for exhaustive search: {zeros} > {max}")]
    TooManyZeros { zeros: usize, max: usize },

    #[error("evaluation point {b} is not strictly right of the zeros of P_q (largest zero {zero})")]
    PointInsideZeroRange { b: f64, zero: f64 },

    #[error("the two gap-expansion routes disagree: relative gap {gap:e} exceeds {bound:e}")]
    RouteDisagreement { gap: f64, bound: f64 },

    #[error("gap expansion fails to reconstruct the perturbed polynomial: residual {residual:e}")]
    ReconstructionFailed { residual: f64 },

    #[error("bordered determinant vanishes at nu = {nu}")]
    VanishingDeterminant { nu: usize },

    #[error("grid size q = {q} is too small, need q >= {min}")]
    GridTooSmall { q: usize, min: usize },

    #[error("family is not normalized at t = 1")]
    NotNormalized,

    #[error("Krein property unverified (worst coefficient {worst:e} at ({m},{n},{k})); pass an override to proceed")]
    KreinUnverified { worst: f64, m: usize, n: usize, k: usize },

    #[error("kernel family construction failed: non-positive pivot at index {index}")]
    KernelPivot { index: usize },

    #[error("malformed input: {0}")]
    Input(String),

    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
