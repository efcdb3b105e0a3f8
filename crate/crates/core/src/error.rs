use thiserror::Error;

/// Errors surfaced by the numerical routines.
///
/// Tolerance misses in *checks* (residuals, probes) are reported as values,
/// not errors; `Error` is reserved for contract violations and solver
/// breakdowns.
#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("grid mismatch: operands live on different grids")]
    GridMismatch,

    #[error("grid is not symmetric under x -> 1-x")]
    AsymmetricGrid,

    #[error("angular momentum l={0} outside the supported range (<= {1})")]
    UnsupportedOrder(u32, u32),

    #[error("derivative order {requested} exceeds grid capability {max}")]
    DerivativeOrder { requested: usize, max: usize },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("step size collapsed at r={r:.6e} (lambda={lambda:.6e})")]
    StepSizeCollapse { lambda: f64, r: f64 },

    #[error("missed-root audit: expected {expected} sign changes, found {found}")]
    RootAudit { expected: usize, found: usize },

    #[error("root bracketing failed for index {index}: {detail}")]
    Bracketing { index: usize, detail: String },

    #[error("query too close to a Bessel zero: |z - j_{{nu,{n}}}| = {dist:.3e}")]
    NearZero { n: usize, dist: f64 },

    #[error("numerical rank is ambiguous: singular values straddle the tolerance ({0})")]
    RankAmbiguous(String),

    #[error("Gauss-Newton diverged: {0}")]
    Divergence(String),

    #[error("io: {0}")]
    Io(String),

    #[error("parse: {0}")]
    Parse(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
