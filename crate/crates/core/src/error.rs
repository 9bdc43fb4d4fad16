use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("element has a component outside the Levi subalgebra (basis index {0})")]
    NotInLevi(usize),
    #[error("invalid parabolic index {0}, expected 1 or 2")]
    InvalidParabolic(u8),
    #[error("singular matrix")]
    SingularMatrix,
    #[error("form is not integral: {0}")]
    NotIntegral(String),
    #[error("form has zero discriminant")]
    ZeroDiscriminant,
    #[error("modulus {0} is divisible by 3")]
    ModulusDivisibleBy3(u64),
    #[error("modulus {0} must be prime for this check")]
    ModulusNotPrime(u64),
    #[error("invalid modulus {0}")]
    InvalidModulus(u64),
    #[error("invalid axis set {0:?}, expected [4] or [3, 4]")]
    InvalidAxes(Vec<usize>),
    #[error("evaluation at pole s = {0}")]
    AtPole(String),
    #[error("s = {0} outside the allowed range: {1}")]
    OutOfRange(f64, &'static str),
    #[error("non-positive bundle field `{0}`")]
    NonPositive(&'static str),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("input is not integrable: {0}")]
    NonIntegrable(String),
    #[error("resource guard: {0}")]
    ResourceGuard(String),
    #[error("missing input: {0}")]
    Missing(&'static str),
    #[error("invalid config: {0}")]
    Config(String),
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}
