use thiserror::Error;

pub type Result<T, E = TuranError> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TuranError {
    #[error("malformed edge {vertices:?} for n = {n}, r = {r}")]
    MalformedEdge { vertices: Vec<usize>, n: usize, r: usize },

    #[error("edge rank {rank} out of range for C({n}, {r}) = {len}")]
    RankOutOfRange {
        rank: usize,
        n: usize,
        r: usize,
        len: usize,
    },

    #[error("invalid parameters: {0}")]
    InvalidParameters(String),

    #[error("ambient mismatch: expected (n = {expected_n}, r = {expected_r}), found (n = {found_n}, r = {found_r})")]
    AmbientMismatch {
        expected_n: usize,
        expected_r: usize,
        found_n: usize,
        found_r: usize,
    },

    #[error("instance too large: {what} is {size}, cap is {cap}")]
    CapExceeded {
        what: &'static str,
        size: usize,
        cap: usize,
    },

    #[error("integer overflow while computing {0}")]
    Overflow(&'static str),

    #[error("optima enumeration truncated at {0} sets")]
    Truncated(usize),

    #[error("type II witness unavailable: {0}")]
    WitnessUnavailable(String),

    #[error("witness construction failed verification: {0}")]
    WitnessInvalid(String),

    #[error("linear program is infeasible")]
    Infeasible,

    #[error("linear program is unbounded")]
    Unbounded,

    #[error("Chvátal-Gomory derivation does not check: {0}")]
    DerivationMismatch(String),

    #[error("parse error: {0}")]
    Parse(String),
}

impl TuranError {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        TuranError::InvalidParameters(msg.into())
    }
}
