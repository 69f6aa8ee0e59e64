use thiserror::Error;

/// Errors shared by all modules of the crate.
#[derive(Debug, Clone, Error)]
pub enum Error {
    /// A matrix expected to be unitary failed the residual check.
    #[error("matrix is not unitary: residual {residual:.3e} exceeds {limit:.0e}")]
    NotUnitary { residual: f64, limit: f64 },

    /// A state vector norm was too far from one to renormalize.
    #[error("state is not normalized: |norm - 1| = {deviation:.3e} exceeds {limit:.0e}")]
    NotNormalized { deviation: f64, limit: f64 },

    /// Two operands carry different basis tags.
    #[error("basis mismatch: {left:?} vs {right:?}")]
    BasisMismatch {
        left: crate::basis::BasisKind,
        right: crate::basis::BasisKind,
    },

    /// Radial profiles defined on different grids were combined.
    #[error("radial grid mismatch: {0}")]
    GridMismatch(String),

    /// Parameter outside its documented domain.
    #[error("invalid parameter: {0}")]
    InvalidParam(String),

    /// A synthesis result failed its recomposition tolerance.
    #[error("recomposition error {error:.3e} exceeds tolerance {tolerance:.0e}")]
    ToleranceFailure { error: f64, tolerance: f64 },

    /// Preset name not in the library.
    #[error("unknown preset {0:?}")]
    UnknownPreset(String),

    /// Malformed input file or JSON payload.
    #[error("parse error: {0}")]
    Parse(String),
}
