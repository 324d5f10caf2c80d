use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("{family}: {constraint}")]
    Size { family: String, constraint: String },
    #[error("construction failed: {0}")]
    Construction(String),
    #[error("not a subalgebra: [{left}, {right}] leaves the span")]
    NotSubalgebra { left: String, right: String },
    #[error("degree {requested} exceeds the bound {bound}")]
    DegreeBound { requested: usize, bound: usize },
    #[error("non-integral weight: {0}")]
    NonIntegral(String),
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("no compatible positive system after {0} attempts")]
    Retries(usize),
    #[error("sphericity tests disagree; reproduction bundle: {0}")]
    Conflict(String),
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
