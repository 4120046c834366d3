use thiserror::Error;

/// Errors shared by all modules of this crate.
///
/// Offending values are reported as `f64` regardless of the scalar type the
/// computation ran at; they are diagnostics, not data.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("displacement coordinates must be finite, got ({x}, {p})")]
    NonFiniteDisplacement { x: f64, p: f64 },

    #[error("Fock truncation dimension must be at least 1")]
    ZeroDimension,

    #[error("displacement too large for this precision: |alpha|^2 = {norm_sqr} underflows the vacuum amplitude")]
    DisplacementTooLarge { norm_sqr: f64 },

    #[error("ensemble must have at least one component")]
    EmptyEnsemble,

    #[error("ensemble weight {weight} at component {index} is not strictly positive")]
    NonPositiveWeight { index: usize, weight: f64 },

    #[error("ensemble weights sum to {sum}, expected 1 within {tol}")]
    WeightSumNotOne { sum: f64, tol: f64 },

    #[error("tail tolerance {tol} outside the open interval (0, 1)")]
    TailToleranceOutOfRange { tol: f64 },

    #[error("tail tolerance {tol} unreachable: truncation error bottoms out at {floor} in this precision")]
    TailToleranceUnreachable { tol: f64, floor: f64 },

    #[error("matrix entry lengths do not match dimension {dim}: got {len} entries")]
    EntryCountMismatch { dim: usize, len: usize },

    #[error("matrix dimensions differ: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("matrix is not Hermitian: |a[{row}][{col}] - conj(a[{col}][{row}])| = {deviation}")]
    NotHermitian {
        row: usize,
        col: usize,
        deviation: f64,
    },

    #[error("tolerance {tol} must be strictly positive")]
    NonPositiveTolerance { tol: f64 },

    #[error("eigensolver did not converge after {sweeps} sweeps; off-diagonal residual {residual}")]
    NoConvergence { sweeps: usize, residual: f64 },

    #[error("truncation unsound at dim {dim}: max norm deficit {deficit} exceeds {limit}")]
    TruncationUnsound {
        dim: usize,
        deficit: f64,
        limit: f64,
    },

    #[error("too many ensemble components for the Gram oracle: {count} > {max}")]
    TooManyComponents { count: usize, max: usize },

    #[error("Gram matrix ill-conditioned: smallest eigenvalue {min_eigenvalue} <= {limit} (nearly coincident components)")]
    GramIllConditioned { min_eigenvalue: f64, limit: f64 },

    #[error("probability of error {pe} outside [0, 1/2]")]
    ProbabilityOutOfRange { pe: f64 },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
