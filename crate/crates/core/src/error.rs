use std::path::PathBuf;

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("coupling γ = {0} outside the admissible range")]
    CouplingDomain(f64),

    #[error("invalid angular-momentum channel l = {l}, 2j = {twice_j}")]
    InvalidChannel { l: u32, twice_j: u32 },

    #[error("radial quantum number n must be ≥ 1, got {0}")]
    InvalidRadialNumber(u32),

    #[error("{what} = {value:?} outside accepted range [{min:?}, {max:?}]")]
    OutOfRange {
        what: &'static str,
        value: f64,
        min: f64,
        max: f64,
    },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("tolerance {tol:e} unreachable: residual bound {bound:e} after {l_max} channels")]
    ToleranceUnreachable { tol: f64, bound: f64, l_max: u64 },

    #[error("shooting did not converge: {0}")]
    NonConvergence(String),

    #[error("total charge {charge} is insufficient for an exchange hole of charge 1/2")]
    InsufficientCharge { charge: f64 },

    #[error("line {line}: {message}")]
    Parse { line: u64, message: String },

    #[error("cannot read {}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error(transparent)]
    Csv(#[from] csv::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
