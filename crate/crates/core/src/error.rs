use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Failure modes shared across the crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("matrix is not Hermitian (deviation {deviation:.3e})")]
    NonHermitian { deviation: f64 },

    #[error("time argument must be non-negative, got {0}")]
    NegativeTime(f64),

    #[error("Laplace transform diverges at s = {s}")]
    DivergentTransform { s: f64 },

    #[error("quadrature stalled: error estimate {estimate:.3e} above tolerance {tolerance:.3e}")]
    QuadratureFailure { estimate: f64, tolerance: f64 },

    #[error("resolvent denominator vanished (|1 - r g~| = {denominator:.3e})")]
    PoleHit { denominator: f64 },

    #[error("waiting-time mean diverges, first-detection mean is infinite")]
    InfiniteMean,

    #[error("distribution has no power-law tail")]
    NotHeavyTailed,

    #[error("tail exponent {mu_tail} is integer; the asymptote needs a non-integer exponent")]
    IntegerExponent { mu_tail: f64 },

    #[error("scaling parameter must be positive and finite, got {0}")]
    InvalidMu(f64),

    #[error("objective decreases monotonically; no finite optimum exists")]
    NoFiniteOptimum,

    #[error("no bracketing triple found: function looks monotone over the search range")]
    MonotoneFunction,

    #[error("bracket must satisfy a < b < c and f(b) < min(f(a), f(c))")]
    BracketInvalid,

    #[error("poles separated by {separation:.3e} need explicit multiplicities")]
    ConfluentPoles { separation: f64 },

    #[error("inverse transform is not real (residue imbalance {imag:.3e})")]
    NonRealInverse { imag: f64 },

    #[error("Talbot inversion unstable at t = {t}: node-refinement difference {diff:.3e}")]
    InversionUnstable { t: f64, diff: f64 },

    #[error("density at zero is unbounded")]
    UnboundedDensity,

    #[error("{0}")]
    InvalidParameter(String),
}
