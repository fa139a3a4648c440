//! Evaluation reports: a value, the route that produced it, and an honest
//! error estimate.

use std::fmt;

/// Computational route behind a value.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Method {
    Series,
    Quadrature,
    Ode,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Method::Series => write!(f, "series"),
            Method::Quadrature => write!(f, "quadrature"),
            Method::Ode => write!(f, "ode"),
        }
    }
}

/// Work metric behind an evaluation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Detail {
    /// Highest retained order of a truncated series.
    TruncationOrder(usize),
    /// Number of accepted quadrature panels.
    Panels(usize),
    /// Number of fixed integration steps.
    Steps(usize),
}

impl fmt::Display for Detail {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Detail::TruncationOrder(k) => write!(f, "order={k}"),
            Detail::Panels(p) => write!(f, "panels={p}"),
            Detail::Steps(s) => write!(f, "steps={s}"),
        }
    }
}

/// Outcome of evaluating one of the function families at a point.
#[derive(Clone, Debug)]
pub struct EvalReport<T> {
    pub value: T,
    pub method: Method,
    /// Estimated absolute error: truncation-term magnitude for series,
    /// accumulated two-level difference for quadrature, Richardson-style
    /// difference for ODE integration.
    pub est_error: f64,
    pub detail: Detail,
}
