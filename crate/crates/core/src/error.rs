use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("leading coefficient {0} is not a unit")]
    NonUnit(String),

    #[error("operation undefined on the zero series")]
    ZeroSeries,

    #[error("operator parameter must be positive, got {0}")]
    NonPositiveParameter(i64),

    #[error("precision shortfall: need coefficients below q^{needed}, have below q^{available}")]
    PrecisionShortfall { needed: i64, available: i64 },

    #[error("non-integral q-prefactor {0}")]
    NonIntegralPrefactor(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),

    #[error("residual has q-order {found} below the admissible minimum {min}")]
    BelowMinExponent { found: i64, min: i64 },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("identity failure: {0}")]
    IdentityFailure(String),

    #[error("cache i/o: {0}")]
    Io(#[from] std::io::Error),

    #[error("cache format: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
