use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("signature (genus {genus}, cusps {cusps}, boundary {boundary}) is not hyperbolic")]
    NonHyperbolic {
        genus: u32,
        cusps: u32,
        boundary: u32,
    },

    #[error("coordinate vector has length {found}, expected {expected}")]
    LengthMismatch { expected: usize, found: usize },

    #[error("intersection number {0} is odd")]
    OddIntersection(usize),

    #[error("intersection number {0} is negative")]
    NegativeIntersection(usize),

    #[error("twist {0} is negative while its intersection number is zero")]
    NegativeTwistAtZero(usize),

    #[error("multicurves live in different coordinate spaces")]
    SpaceMismatch,

    #[error("sample set is empty")]
    EmptySample,

    #[error("quasi-comparison constants are degenerate (c_lo = {c_lo}, c_hi = {c_hi})")]
    DegenerateConstants { c_lo: f64, c_hi: f64 },

    #[error("length must be positive, got {0}")]
    NonPositiveLength(f64),

    #[error("invalid chart: {0}")]
    InvalidChart(String),

    #[error("trace {0} is not hyperbolic")]
    NonHyperbolicTrace(f64),

    #[error("({p}, {q}) is not a primitive integer vector")]
    NotPrimitive { p: i64, q: i64 },

    #[error("matrix determinant is {0}, expected ±1")]
    NotUnimodular(i64),

    #[error("Stern-Brocot descent exceeded depth cap {cap}")]
    DepthCapExceeded { cap: usize },

    #[error("Markov reduction did not converge after {0} steps")]
    NonConvergent(usize),

    #[error("enumeration box of L1 radius {radius} could not be made complete")]
    IncompleteBox { radius: i64 },

    #[error("insufficient series: {0}")]
    InsufficientSeries(String),

    #[error("count at L = {0} is not positive")]
    NonPositiveCount(f64),

    #[error("no mapping class action implemented for this orbit")]
    UnsupportedOrbit,

    #[error("no boundary-length volume polynomial for this cut surface")]
    UnsupportedSurface,

    #[error("effective sample size {ess:.1} is below 10% of {samples} samples")]
    SamplerDegenerate { ess: f64, samples: usize },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

impl Error {
    /// Numeric diagnostics, as opposed to malformed input.
    pub fn is_numeric(&self) -> bool {
        matches!(
            self,
            Error::DepthCapExceeded { .. }
                | Error::SamplerDegenerate { .. }
                | Error::NonConvergent(_)
                | Error::IncompleteBox { .. }
                | Error::NonHyperbolicTrace(_)
        )
    }
}
