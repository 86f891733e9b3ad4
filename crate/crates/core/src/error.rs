use num_complex::Complex64;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("invalid argument: {0}")]
    Domain(String),

    #[error("series did not converge within {terms} terms (last relative term {last:e})")]
    Truncation { terms: usize, last: f64 },

    #[error("singular term in K_{j} ({term}): vanishing bottom Pochhammer before termination")]
    SingularTerm { j: i64, term: &'static str },

    #[error("2F1 vanishes on the branch cut at x = {x}")]
    PoleOnCut { x: f64 },

    #[error("denominator 2F1 vanishes at z = {z}")]
    Pole { z: Complex64 },

    #[error("degenerate parameters: {0}")]
    Degenerate(String),

    #[error("zero count ambiguous: xi = {xi} is within {tol:e} of a non-positive integer")]
    Ambiguous { xi: f64, tol: f64 },

    #[error("zero search failed: expected {expected} zeros, found {found}")]
    SearchFailure { expected: u32, found: u32 },

    #[error("zero at {z} is not simple (|F'| = {deriv:e})")]
    Multiplicity { z: Complex64, deriv: f64 },

    #[error("quadrature did not converge after {levels} levels (last gap {gap:e})")]
    Quadrature { levels: usize, gap: f64 },

    #[error("ill-conditioned fit (condition estimate {cond:e})")]
    IllConditioned { cond: f64 },

    #[error("ODE step size underflow near z = {z}")]
    StepUnderflow { z: Complex64 },

    #[error("condition not satisfied: {0}")]
    Condition(String),

    #[error("point {z} lies within the cut neighbourhood; a bank must be given")]
    NeedsBank { z: Complex64 },
}

impl Error {
    /// Short stable name of the variant.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::InvalidParams(_) => "invalid_params",
            Error::Domain(_) => "domain",
            Error::Truncation { .. } => "truncation",
            Error::SingularTerm { .. } => "singular_term",
            Error::PoleOnCut { .. } => "pole_on_cut",
            Error::Pole { .. } => "pole",
            Error::Degenerate(_) => "degenerate",
            Error::Ambiguous { .. } => "ambiguous",
            Error::SearchFailure { .. } => "search_failure",
            Error::Multiplicity { .. } => "multiplicity",
            Error::Quadrature { .. } => "quadrature",
            Error::IllConditioned { .. } => "ill_conditioned",
            Error::StepUnderflow { .. } => "step_underflow",
            Error::Condition(_) => "condition",
            Error::NeedsBank { .. } => "needs_bank",
        }
    }

    /// True for errors caused by inadmissible input rather than a numerical failure.
    pub fn is_parameter_error(&self) -> bool {
        matches!(
            self,
            Error::InvalidParams(_)
                | Error::Domain(_)
                | Error::Degenerate(_)
                | Error::Condition(_)
                | Error::NeedsBank { .. }
                | Error::PoleOnCut { .. }
                | Error::Pole { .. }
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
