//! Error type shared by all simulator modules.

use alloc::string::String;
use thiserror::Error;

/// Everything that can go wrong while building registers, operators, or
/// running an experiment.
#[derive(Error, Debug, Clone, PartialEq)]
pub enum Error {
    /// A register-spec invariant was violated; names the offending field.
    #[error("invalid register spec: field `{field}`: {reason}")]
    InvalidSpec { field: &'static str, reason: String },

    /// Dense backend requested beyond its hard size cap.
    #[error("dense backend limited to N <= {max} qubits, requested N = {requested}")]
    BackendLimit { requested: usize, max: usize },

    /// Operands built for different registers or backends.
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),

    /// Operation would break ancilla permutation symmetry in the symmetric backend.
    #[error("operation breaks ancilla permutation symmetry: {0}")]
    SymmetryViolation(String),

    /// Expectation value requested for a non-Hermitian operator.
    #[error("observable is not Hermitian (residual {residual:.3e})")]
    NonHermitianObservable { residual: f64 },

    /// Subspace index h outside 0..=N-1.
    #[error("subspace index h = {h} out of range for N = {n}")]
    IndexOutOfRange { h: usize, n: usize },

    /// Requested coherence order does not exist for this register size.
    #[error("no coherence order q = {q} for N = {n}")]
    NoSuchOrder { q: i64, n: usize },

    /// Probability distribution does not sum to one.
    #[error("distribution not normalized: sum = {sum}")]
    UnnormalizedDistribution { sum: f64 },

    /// Pairwise noise correlation outside the representable range.
    #[error("cross-correlation {value} outside [{min}, 1]")]
    InvalidCorrelation { value: f64, min: f64 },

    /// Noise spectroscopy needs at least three distinct filter frequencies.
    #[error("need >= 3 distinct filter frequencies, got {got}")]
    InsufficientFilters { got: usize },

    /// HBAC requires both relaxation times on the register.
    #[error("register `{label}` lacks t1_c/t1_a relaxation times")]
    MissingRelaxationTimes { label: String },

    /// Observable eigendecomposition failed its accuracy tolerance.
    #[error("observable eigendecomposition failed (residual {residual:.3e})")]
    DegenerateObservable { residual: f64 },

    /// Every measurement outcome fell below the probability floor.
    #[error("all outcome probabilities below floor {floor:.3e}")]
    AllZeroProbabilities { floor: f64 },

    /// Cramer-Rao bound needs a strictly positive Fisher information.
    #[error("Fisher information must be positive, got {value}")]
    NonpositiveFisher { value: f64 },

    /// Stroboscopic series too short for spectral analysis.
    #[error("series of length {len} too short, need >= {min}")]
    SeriesTooShort { len: usize, min: usize },

    /// Two-dimensional RFI map is ill-posed for this coherence order.
    #[error("rfi map ill-posed for q = {q}: ancilla phase weight q-1 vanishes")]
    DegenerateEncoding { q: i64 },

    /// Generic parameter validation failure.
    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParam { name: &'static str, reason: String },
}

pub type Result<T> = core::result::Result<T, Error>;
