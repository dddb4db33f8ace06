use thiserror::Error;

/// Errors shared by every module of the crate.
#[derive(Error, Debug, Clone, PartialEq)]
pub enum Error {
    /// Evaluation was requested outside the convergence domain of a series
    /// or integral representation.
    #[error("domain error: {0}")]
    Domain(String),

    /// A gamma factor (or series lower parameter) hit a non-positive integer.
    #[error("pole error: {0}")]
    Pole(String),

    /// A series did not satisfy its stopping rule within `max_terms`.
    #[error("series did not converge: {0}")]
    NonConvergence(String),

    /// A quadrature did not reach the requested tolerance at the maximum
    /// refinement level.
    #[error("quadrature tolerance not met: requested {requested:e}, achieved {achieved:e}")]
    ToleranceNotMet { requested: f64, achieved: f64 },

    /// One of the structural parameter hypotheses is violated; the message
    /// names the hypothesis.
    #[error("hypothesis violated: {0}")]
    Hypothesis(String),

    /// Division of p1 by t(1-t) left a remainder.
    #[error("operator data rejected: {0}")]
    P1Violation(String),

    /// An iteration divisor of the operator construction vanished.
    #[error("degenerate parameters: {0}")]
    Degenerate(String),

    /// Adaptive step control collapsed below the minimum step size.
    #[error("step size underflow at path parameter {0}")]
    StepUnderflow(f64),

    /// A continued state stopped being finite.
    #[error("non-finite state encountered: {0}")]
    NonFinite(String),

    /// A least-squares fit was too ill-conditioned to trust.
    #[error("ill-conditioned fit: condition estimate {0:e}")]
    IllConditioned(f64),

    /// Exact integer arithmetic exceeded the sanity bound on digit count.
    #[error("coefficient blow-up: an integer exceeded {0} digits")]
    CoefficientBlowup(usize),

    /// Invalid input that is not a parameter-hypothesis failure (bad fraction
    /// string, empty polynomial, inconsistent basis, ...).
    #[error("invalid input: {0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
