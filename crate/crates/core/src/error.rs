use thiserror::Error;

/// Errors raised by the bound catalogue and its numerical back ends.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// A map was evaluated at (or numerically at) a pole, or produced a non-finite value.
    #[error("pole or non-finite value at z = {re} + {im}i")]
    Pole { re: f64, im: f64 },

    /// Two successive quadrature refinements disagree by more than the divergence threshold.
    #[error("quadrature diverged: successive refinements differ by {rel_diff:.3e} (relative)")]
    QuadratureDivergence { rel_diff: f64 },

    /// An argument lies outside the domain of an operation.
    #[error("domain error: {0}")]
    Domain(String),

    #[error("derivative sup-norm is not finite")]
    InfiniteNorm,

    /// The gap estimates need an image of area pi.
    #[error("image area {area} differs from pi by {rel:.3e} (relative)")]
    AreaMismatch { area: f64, rel: f64 },

    #[error("no valid lower bound among {count} results")]
    NoValidBound { count: usize },

    #[error("raster error: {0}")]
    Raster(String),

    #[error("eigensolver did not converge after {iterations} iterations (residual {residual:.3e})")]
    Convergence { iterations: usize, residual: f64 },

    /// Malformed domain-spec document.
    #[error("invalid domain spec: {0}")]
    Spec(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain(msg: impl Into<String>) -> Error {
    Error::Domain(msg.into())
}
