use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid instance: {field}: {reason}")]
    InvalidInstance { field: String, reason: String },

    #[error("malformed instance JSON: {0}")]
    Parse(#[from] serde_json::Error),

    #[error("invalid profile: {0}")]
    InvalidProfile(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("graph is disconnected")]
    Disconnected,

    #[error("player {player} has an empty Voronoi cell")]
    EmptyCell { player: usize },

    #[error("profile {profile:?} is not a Nash equilibrium")]
    NotEquilibrium { profile: Vec<usize> },

    #[error("budget exceeded: {required} checks required, budget is {budget}")]
    BudgetExceeded { required: u128, budget: u64 },

    #[error("search examined {budget} candidates without a hit")]
    SearchExhausted { budget: u64 },

    #[error("invalid 3-Partition instance: {0}")]
    InvalidThreePartition(String),

    #[error("gadget rejected: {0}")]
    GadgetRejected(String),

    #[error("verification failed: {0}")]
    Verification(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn invalid(field: impl Into<String>, reason: impl Into<String>) -> Error {
    Error::InvalidInstance {
        field: field.into(),
        reason: reason.into(),
    }
}
