//! One record of numeric tolerances used across the crate.

/// Numeric tolerances for state validation and decompositions.
///
/// All simulator checks pull their thresholds from here so that a single
/// record controls the numerics end to end.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerances {
    /// Max allowed |A - A†| entry for Hermiticity checks.
    pub hermiticity: f64,
    /// Max allowed |tr(rho) - 1|.
    pub trace: f64,
    /// Eigenvalue floor for positive semidefiniteness (negative number).
    pub psd_floor: f64,
    /// Commutator residual for operator-algebra checks.
    pub commutator: f64,
    /// Outcome probabilities below this floor are dropped from Fisher sums.
    pub probability_floor: f64,
    /// Off-diagonal magnitude under which a coherence pair counts as empty.
    pub coherence_floor: f64,
    /// Density-matrix eigenvalues below this contribute zero entropy.
    pub entropy_floor: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            hermiticity: 1e-10,
            trace: 1e-10,
            psd_floor: -1e-10,
            commutator: 1e-12,
            probability_floor: 1e-12,
            coherence_floor: 1e-12,
            entropy_floor: 1e-14,
        }
    }
}
