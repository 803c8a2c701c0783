use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("processor count must be at least 1")]
    ZeroProcessors,

    #[error("{name} = {value} is outside {range}")]
    OutOfRange {
        name: &'static str,
        value: f64,
        range: &'static str,
    },

    #[error("unstable queue: utilization {0} >= 1")]
    Unstable(f64),

    #[error("underdetermined fit: {0}")]
    Underdetermined(String),

    #[error(
        "no baseline throughput: the series has no p=1 measurement, supply an explicit baseline"
    )]
    MissingBaseline,

    #[error("invalid benchmark series: {0}")]
    InvalidSeries(String),

    #[error("invalid Coxian specification: {0}")]
    InvalidCoxian(String),

    #[error("invalid simulation configuration: {0}")]
    InvalidSimConfig(String),

    #[error("numeric failure: {0}")]
    Numeric(String),
}

impl Error {
    pub(crate) fn out_of_range(name: &'static str, value: f64, range: &'static str) -> Self {
        Error::OutOfRange { name, value, range }
    }
}
