//! Crate-wide error type.

use thiserror::Error;

/// Errors produced by grid construction, transforms, and file I/O.
#[derive(Debug, Error)]
pub enum Error {
    /// Grid construction with a point count that is not a power of two (or < 8).
    #[error("grid size must be a power of two >= 8, got {n}")]
    BadGridSize { n: usize },

    /// A scale parameter (spacing, hbar, width) that must be positive and finite.
    #[error("{name} must be positive and finite, got {value}")]
    NonPositive { name: &'static str, value: f64 },

    /// Two operands live on different grids or lattices.
    #[error("grid mismatch: {context}")]
    GridMismatch { context: &'static str },

    /// A state or field value that is not finite.
    #[error("non-finite value in {what} at index {index}")]
    NonFinite { what: &'static str, index: usize },

    /// Normalizing (or dividing by the norm of) the zero state.
    #[error("cannot normalize a state with zero norm")]
    ZeroNorm,

    /// A coordinate that is required to sit on the lattice does not.
    #[error("{name} = {value} does not lie on the {lattice} lattice")]
    OffLattice {
        name: &'static str,
        value: f64,
        lattice: &'static str,
    },

    /// An index outside `0..n`.
    #[error("{name} index {index} out of range for n = {n}")]
    IndexOutOfRange {
        name: &'static str,
        index: usize,
        n: usize,
    },

    /// Pre/post-selected pair too close to orthogonal for a weak-value quotient.
    #[error("pre/post-selected pair is numerically orthogonal: |<phi|psi>| = {overlap:.3e} <= {tolerance:.3e}")]
    NearOrthogonal { overlap: f64, tolerance: f64 },

    /// The direct operator route is not defined for this observable symbol.
    #[error("observable symbol {symbol} has no direct operator route")]
    UnsupportedSymbol { symbol: &'static str },

    /// Array shape does not match the expected lattice.
    #[error("shape mismatch: {context} (expected {expected}, got {got})")]
    ShapeMismatch {
        context: &'static str,
        expected: usize,
        got: usize,
    },

    /// A file declares a schema version this build does not understand.
    #[error("unsupported schema_version {found:?} (expected \"1\")")]
    UnsupportedSchema { found: String },

    /// A structurally valid file with inconsistent or invalid contents.
    #[error("invalid file {path}: {message}")]
    InvalidFile { path: String, message: String },

    #[error("I/O error on {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },

    #[error("JSON parse error in {path}: {source}")]
    Json {
        path: String,
        #[source]
        source: serde_json::Error,
    },
}

pub type Result<T> = std::result::Result<T, Error>;
