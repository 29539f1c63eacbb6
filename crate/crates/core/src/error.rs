use thiserror::Error;

#[derive(Debug, Error)]
pub enum RiaError {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("matrix is not Hermitian (max asymmetry {0})")]
    NotHermitian(String),

    #[error("backend mismatch: {0}")]
    BackendMismatch(String),

    #[error("parse error: {0}")]
    Parse(String),

    /// A linear matrix equation has no solution; the payload names the failed condition.
    #[error("inconsistent equation: {0}")]
    Inconsistent(String),

    #[error("infeasible inequality: {0}")]
    Infeasible(String),

    #[error("constraint is infeasible: {0}")]
    InfeasibleConstraint(String),

    #[error("constraint equation is inconsistent: {0}")]
    InconsistentConstraint(String),

    #[error("sign condition violated: {0}")]
    SignConditionViolated(String),

    #[error("unsupported relation: {0}")]
    UnsupportedRelation(String),

    #[error("parameter rejected: {0}")]
    ParameterRejected(String),

    /// A closed form disagreed with its direct computation.
    #[error("identity '{identity}' failed: {detail}")]
    IdentityFailure { identity: String, detail: String },

    #[error("instance generation exhausted after {0} attempts")]
    GenerationExhausted(usize),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl RiaError {
    pub(crate) fn identity(identity: &str, detail: impl Into<String>) -> Self {
        RiaError::IdentityFailure { identity: identity.to_string(), detail: detail.into() }
    }
}

pub type Result<T> = std::result::Result<T, RiaError>;
