use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("coefficient word is empty")]
    EmptyWord,
    #[error("period {0} is odd; an even period is required")]
    OddPeriod(usize),
    #[error("coefficient {index} has modulus {modulus} (must be < 1)")]
    CoefficientOutsideDisk { index: usize, modulus: f64 },
    #[error("final coefficient has modulus {0}; expected a unimodular value")]
    FinalNotUnimodular(f64),
    #[error("index {k} out of range for word of length {len}")]
    IndexOutOfRange { k: usize, len: usize },
    #[error("polynomial degree {degree} exceeds reversal order {k}")]
    DegreeExceedsK { degree: usize, k: usize },
    #[error("point {0} is not on the unit circle")]
    NotOnCircle(f64),
    #[error("|alpha|^2 + rho^2 = {0}, expected 1")]
    NotNormalized(f64),
    #[error("finite CMV dimension {0} is odd")]
    OddDimension(usize),
    #[error("Floquet parameter has modulus {0}; expected 1")]
    BetaNotUnimodular(f64),
    #[error("rotation parameter has modulus {0}; expected 1")]
    LambdaNotUnimodular(f64),
    #[error("trace power {0} unsupported (only 1 and 2)")]
    UnsupportedPower(u32),
    #[error("matrix is not unitary (defect {0:e})")]
    NotUnitary(f64),
    #[error("eigenvalue iteration did not converge")]
    NoConvergence,
    #[error("found {found} roots of Phi_p - Phi_p^*, expected {expected}")]
    RootCountMismatch { found: usize, expected: usize },
    #[error("weight denominator {value:e} at point {index} is not positive")]
    NonpositiveDenominator { index: usize, value: f64 },
    #[error("band edges do not follow the (+ - - +) pattern")]
    PatternMismatch,
    #[error("gap {0} has no Dirichlet point in its closure")]
    PairingFailure(usize),
    #[error("band layout unavailable: {0}")]
    LayoutUnavailable(String),
    #[error("period {0} too small for this identity (needs p >= 4)")]
    PeriodTooSmall(usize),
}

impl Error {
    /// True for failures of the numerical machinery, as opposed to bad input.
    pub fn is_numerical(&self) -> bool {
        matches!(
            self,
            Error::NoConvergence
                | Error::RootCountMismatch { .. }
                | Error::NonpositiveDenominator { .. }
                | Error::PatternMismatch
                | Error::PairingFailure(_)
                | Error::LayoutUnavailable(_)
                | Error::NotUnitary(_)
        )
    }
}
