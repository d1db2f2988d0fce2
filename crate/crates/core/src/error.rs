use thiserror::Error;

/// Errors raised across the crate.
#[derive(Debug, Error)]
pub enum Error {
    /// Family only defined for the exceptional subset.
    #[error("family {family} is not defined for algebra {algebra}")]
    UnsupportedFamily { algebra: String, family: String },

    /// Operation scoped to a subset of the catalog.
    #[error("operation not supported for algebra {algebra}: {reason}")]
    UnsupportedAlgebra { algebra: String, reason: String },

    /// Requested data for a family of dimension zero.
    #[error("family {family} is empty for algebra {algebra}")]
    EmptyFamily { algebra: String, family: String },

    /// Trace power or similar argument outside the supported range.
    #[error("argument out of range: {0}")]
    OutOfRange(String),

    /// Killing-form Gram matrix failed positive-definiteness.
    #[error("structure-constant construction failed: {0}")]
    ConstructionFailure(String),

    /// Projector trace deviated from its exact integer.
    #[error("spectral mismatch: {0}")]
    SpectralMismatch(String),

    /// Orthonormalization found the wrong numerical rank.
    #[error("rank deficiency: expected rank {expected}, found {found}")]
    RankDeficiency { expected: usize, found: usize },

    /// Basis cardinality failed the closure count.
    #[error("basis count mismatch: {0}")]
    CountMismatch(String),

    /// Moment system degenerate and inconsistent.
    #[error("degenerate trace-equation system: {0}")]
    DegenerateSystem(String),

    /// Commutant dimension differs from the expected isotypic count.
    #[error("commutant dimension error: expected {expected}, found {found}")]
    CommutantDimension { expected: usize, found: usize },

    /// Spectral clusters of the commutant element too close to separate.
    #[error("eigenvalue gap too small: {0}")]
    Eigengap(String),

    /// No index placement of a contraction yields a proportional relation.
    #[error("index resolution failure: {0}")]
    IndexResolution(String),

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),

    /// Tensor file version/schema mismatch.
    #[error("format error: {0}")]
    Format(String),

    /// Tensor file integrity check failed.
    #[error("checksum mismatch: expected {expected}, computed {computed}")]
    Checksum { expected: String, computed: String },

    /// Bad CLI/suite configuration.
    #[error("configuration error: {0}")]
    Config(String),
}
