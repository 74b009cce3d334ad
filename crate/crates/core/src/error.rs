use thiserror::Error;

/// Errors raised by the simulator, gate constructors and game engines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("register size {0} out of range (1..={max})", max = crate::MAX_QUBITS)]
    Size(usize),

    #[error("dimension mismatch: expected {expected}, got {actual}")]
    Dimension { expected: usize, actual: usize },

    #[error("invalid target list: {0}")]
    Target(String),

    #[error("{name} = {value} outside [{lo}, {hi}]")]
    Domain {
        name: &'static str,
        value: f64,
        lo: f64,
        hi: f64,
    },

    #[error("non-finite value in {0}")]
    NonFinite(&'static str),

    #[error("state is not normalized (norm^2 = {0})")]
    Norm(f64),

    #[error("matrix is not unitary (max deviation {0:e})")]
    NotUnitary(f64),

    #[error("consistency error: {0}")]
    Consistency(String),

    #[error("unknown gate `{0}`")]
    UnknownGate(String),

    #[error("{0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn check_range(name: &'static str, value: f64, lo: f64, hi: f64) -> Result<f64> {
    if !value.is_finite() {
        return Err(Error::NonFinite(name));
    }
    if value < lo || value > hi {
        return Err(Error::Domain {
            name,
            value,
            lo,
            hi,
        });
    }
    Ok(value)
}
