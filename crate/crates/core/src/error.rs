use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("{name} = {value} is outside {domain}")]
    Domain {
        name: &'static str,
        value: f64,
        domain: &'static str,
    },

    #[error("spectrum sums to {sum}, expected 1")]
    SpectrumNotNormalized { sum: f64 },

    #[error("eigenvalue {value:e} is below -1e-8, operator is not positive")]
    NotPositive { value: f64 },

    #[error("cutoff {dim} leaves tail mass {tail:e} beyond the truncation (limit 1e-10)")]
    CutoffTooSmall { dim: usize, tail: f64 },

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("mode index {index} out of range for a {modes}-mode state")]
    ModeIndex { index: usize, modes: usize },

    #[error("degenerate cell: {0}")]
    DegenerateCell(String),

    #[error("invalid transmitter: {0}")]
    InvalidTransmitter(String),

    #[error("unphysical state: {0}")]
    Unphysical(String),

    #[error("Fock entropy {fock} and Gaussian entropy {gaussian} disagree by more than 1e-6")]
    CrossCheck { fock: f64, gaussian: f64 },
}

impl Error {
    pub(crate) fn domain(name: &'static str, value: f64, domain: &'static str) -> Self {
        Error::Domain {
            name,
            value,
            domain,
        }
    }
}
