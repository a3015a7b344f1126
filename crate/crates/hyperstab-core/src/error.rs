use thiserror::Error;

/// Errors produced by the exact engine.
#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum Error {
    #[error("radicand mismatch: cannot combine sqrt({lhs}) with sqrt({rhs})")]
    RadicandMismatch { lhs: String, rhs: String },

    #[error("division by zero")]
    DivisionByZero,

    #[error("negative radicand {0} is not representable")]
    NegativeRadicand(String),

    #[error("radius must satisfy 0 < a <= 1, got {0}")]
    InvalidRadius(String),

    #[error("curvature ratio t must be >= 0, got {0}")]
    InvalidCurvatureRatio(String),

    #[error("no positive critical radius for the given target curvature")]
    NoProperRadius,

    #[error("leading coefficient must be positive and rational, got {0}")]
    BadLeadingCoefficient(String),

    #[error("polynomial coefficients are not all rational")]
    IrrationalCoefficients,

    #[error("cannot bound the zero polynomial")]
    ZeroPolynomial,

    #[error("interpolation needs at least one sample")]
    EmptySamples,

    #[error("duplicate interpolation node m={0}")]
    DuplicateSample(u32),

    #[error("interpolant of degree <= {degree} fails on held-out sample m={m}")]
    InconsistentSamples { degree: usize, m: u32 },

    #[error("interpolant has non-integer coefficient {0}")]
    NonIntegerCoefficient(String),

    #[error("norm-combination route is only defined at t=3 with unit target curvature")]
    OffCriticalRadius,

    #[error("quadratic form has negative leading coefficient; index would be infinite")]
    UnboundedIndex,
}

pub type Result<T> = std::result::Result<T, Error>;
