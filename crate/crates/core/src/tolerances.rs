/// Numerical thresholds shared by the spectral routines.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerances {
    /// Allowed deviation of `|z|` from 1 for inputs claimed to be on the circle.
    pub circle: f64,
    /// Eigenvalues closer than this are merged into one with multiplicity.
    pub cluster: f64,
    /// Gaps shorter than this (arc length) are flagged as collapsed.
    pub gap: f64,
    /// Slack for arc membership when pairing Dirichlet points with gaps.
    pub pairing: f64,
    /// Pass threshold for residual reports.
    pub pass: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            circle: 1e-9,
            cluster: 1e-7,
            gap: 1e-7,
            pairing: 1e-6,
            pass: 1e-8,
        }
    }
}
