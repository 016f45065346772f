//! Error type shared across the solver modules.

/// Errors reported by the solver library.
#[derive(Debug, Clone, thiserror::Error)]
pub enum Error {
    /// A parameter is outside its documented domain.
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// An input violates a structural contract (e.g. a non-symmetric matrix).
    #[error("contract violation: {0}")]
    Contract(String),

    /// A root finder was called without a sign change on the bracket.
    #[error("no sign change on [{lo:e}, {hi:e}]: f(lo) = {f_lo:e}, f(hi) = {f_hi:e}")]
    Bracket { lo: f64, hi: f64, f_lo: f64, f_hi: f64 },

    /// An iteration ran out of budget; `best` is the last iterate's value.
    #[error("no convergence after {iterations} iterations (residual {residual:e}, best {best:e})")]
    Convergence {
        iterations: usize,
        residual: f64,
        best: f64,
    },

    /// Two refinement levels disagree beyond the accuracy target.
    #[error("accuracy target not met for {context}: coarse {coarse:e} vs fine {fine:e}")]
    Accuracy {
        context: String,
        coarse: f64,
        fine: f64,
    },

    /// The requested computation is outside the regime the solver supports.
    #[error("unsupported regime: {0}")]
    UnsupportedRegime(String),
}

pub type Result<T> = std::result::Result<T, Error>;
