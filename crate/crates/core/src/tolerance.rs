use serde::{Deserialize, Serialize};

/// Thresholds used by every "is this zero" decision in the crate.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Tolerances {
    /// Coefficient equality for series identities.
    pub coef: f64,
    /// Root clustering radius and critical-value matching.
    pub root: f64,
    /// Acceptance threshold for Moebius orbit witnesses.
    pub matching: f64,
    /// Minimum |Im| for a root to be classified as non-real.
    pub real: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            coef: 1e-10,
            root: 1e-8,
            matching: 1e-8,
            real: 1e-6,
        }
    }
}
