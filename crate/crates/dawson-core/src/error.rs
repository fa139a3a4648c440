//! Crate-wide error type.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("need {needed} derivative values of b at 0, got {got}")]
    InsufficientDerivatives { needed: usize, got: usize },

    #[error("floating-point overflow computing the derivative of order {order}")]
    DerivativeOverflow { order: usize },

    #[error("factorial of {order} is not representable in this scalar type")]
    FactorialOverflow { order: usize },

    #[error("index out of range: {what}")]
    IndexOutOfRange { what: String },

    #[error("exponent range exceeded evaluating at x = {x}")]
    ExponentOverflow { x: f64 },

    #[error("quadrature stalled at {best} (estimated error {est_error:.3e} > tolerance {tol:.3e})")]
    QuadratureStalled { best: f64, est_error: f64, tol: f64 },

    #[error("ODE state became non-finite near x = {x}")]
    OdeDiverged { x: f64 },

    #[error("Riccati residual {residual:.3e} exceeds {threshold:.3e} at x = {x}")]
    WitnessRejected { x: f64, residual: f64, threshold: f64 },

    #[error("non-finite input: {what}")]
    NonFinite { what: String },

    #[error("invalid b-spec `{input}`: {reason}")]
    BadBSpec { input: String, reason: String },

    #[error("invalid matrix: {0}")]
    BadMatrix(String),

    #[error("invalid argument: {0}")]
    BadArgument(String),
}
