use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("matrix is not Hermitian (deviation {deviation:.3e})")]
    NotHermitian { deviation: f64 },

    #[error("matrix does not follow the two-mode covariance layout (deviation {deviation:.3e})")]
    NotCovarianceLayout { deviation: f64 },

    #[error("upper-left block is singular (|det| = {det:.3e})")]
    SingularBlock { det: f64 },

    #[error("closed-form bound is degenerate (denominator {denominator:.3e})")]
    DegenerateBound { denominator: f64 },

    #[error("domain error: {0}")]
    Domain(String),

    #[error(
        "reduction prescription inapplicable: residual {residual:.3e} exceeds {tolerance:.1e}"
    )]
    PrescriptionInapplicable { residual: f64, tolerance: f64 },

    #[error("sampling budget exhausted after {draws} draws")]
    SamplingBudget { draws: u64 },
}
