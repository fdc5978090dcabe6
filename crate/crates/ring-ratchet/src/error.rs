use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// The field or state picked up a non-finite value mid-integration.
    #[error("numerical blow-up at step {step} (t = {time:.6})")]
    NumericalBlowup { step: usize, time: f64 },

    #[error("bisection bracket invalid: {0}")]
    Bracket(String),

    #[error("solver failed at {parameter} = {value}: {source}")]
    SweepPoint {
        parameter: &'static str,
        value: f64,
        #[source]
        source: Box<Error>,
    },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
