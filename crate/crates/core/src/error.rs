use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("argument {re}{im:+}i is outside the supported domain: {reason}")]
    OutOfDomain { re: f64, im: f64, reason: &'static str },

    #[error("result overflows f64 at argument {re}{im:+}i; use the scaled erfcx form")]
    Overflow { re: f64, im: f64 },

    #[error("separation L/sigma must be positive, got {0}")]
    NonPositiveSeparation(f64),

    #[error("coupling must be positive and finite, got {0}")]
    InvalidCoupling(f64),

    #[error("energy gap must be finite, got {0}")]
    InvalidGap(f64),

    #[error("invalid geometry: {0}")]
    Geometry(String),

    #[error("matrix is not Hermitian (max deviation {deviation:e})")]
    NotHermitian { deviation: f64 },

    #[error("invalid density matrix: {0}")]
    InvalidDensityMatrix(String),

    #[error("dimension mismatch: expected {expected}, got {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("subsystem {label} is not valid for a {dim}-dimensional state")]
    InvalidSubsystem { label: &'static str, dim: usize },

    #[error("eigenvalue {eigenvalue:e} is below the clamp threshold -{threshold:e}")]
    Nonphysical { eigenvalue: f64, threshold: f64 },

    #[error("eigenvalues sum to {sum}, expected 1")]
    TraceMismatch { sum: f64 },

    #[error("Jacobi eigensolver did not converge after {sweeps} sweeps")]
    NoConvergence { sweeps: usize },

    #[error("{0} is only available in closed form for the equilateral configuration")]
    UnsupportedConfiguration(&'static str),

    #[error("invalid sweep: {0}")]
    InvalidSweep(String),

    #[error("unknown figure preset {0:?} (expected fig1, fig3, fig4 or fig5)")]
    UnknownPreset(String),

    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(err: std::io::Error) -> Self {
        Error::Io(err.to_string())
    }
}
