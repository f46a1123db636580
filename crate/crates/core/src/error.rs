use thiserror::Error;

/// Errors produced by the bound machinery.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum PinskerError {
    #[error("dimension mismatch: P has {left} atoms, Q has {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("invalid distribution: {0}")]
    InvalidDistribution(String),

    #[error("{what} = {value} is outside its domain {domain}")]
    Domain {
        what: &'static str,
        value: f64,
        domain: &'static str,
    },

    #[error("unknown divergence `{name}`; valid names: {valid}")]
    UnknownDivergence { name: String, valid: String },

    #[error("weight of `{name}` is atomic at pi = {location}; use the atom mass instead")]
    AtomLocation { name: &'static str, location: f64 },

    #[error("constraint {index}: v = {v} at pi = {pi} must lie in [0, {max}]")]
    InfeasibleValue {
        index: usize,
        pi: f64,
        v: f64,
        max: f64,
    },

    #[error(
        "no concave risk curve interpolates the constraints (slope box empty at index {index})"
    )]
    Infeasible { index: usize },

    #[error("invalid constraints: {0}")]
    InvalidConstraints(String),

    #[error("slope a[{index}] = {value} lies outside [{lower}, {upper}]")]
    SlopeOutOfBox {
        index: usize,
        value: f64,
        lower: f64,
        upper: f64,
    },

    #[error("`{name}` does not satisfy the hypothesis: {reason}")]
    Hypothesis {
        name: &'static str,
        reason: &'static str,
    },

    #[error("risk profile is not realizable: {0}")]
    NonRealizable(String),

    #[error("objective paths disagree: closed form {closed}, quadrature {quadrature}")]
    PathDisagreement { closed: f64, quadrature: f64 },

    #[error("parameter t = {t} overflows the hyperbolic evaluation")]
    Overflow { t: f64 },
}

pub type Result<T> = std::result::Result<T, PinskerError>;
