use thiserror::Error;

/// Errors surfaced by model construction, fitting and the optimizers.
#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("invalid model parameter: {0}")]
    InvalidModel(String),

    #[error("invalid schedule: {0}")]
    InvalidSchedule(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("fitting failed: {0}")]
    Fit(String),

    #[error("SDO sequence left the support of the rate distribution after {kept} terms")]
    SdoTruncated {
        kept: usize,
        partial: Vec<f64>,
    },

    #[error("no feasible schedule under the given constraints: {0}")]
    Infeasible(String),

    #[error("enumeration budget of {budget} schedules exceeded; supply a search window")]
    EnumerationBudget { budget: u64 },

    #[error("numerical failure: {0}")]
    Numerical(String),
}

pub type Result<T> = std::result::Result<T, Error>;
