//! Generalized Dawson integral functions.
//!
//! The classical Dawson function F(2,x) = exp(-x²)·∫₀ˣ exp(t²) dt extends,
//! for any coefficient function b with antiderivative B(x) = ∫₀ˣ b, to
//!
//! ```text
//! D_b(x) = exp(-B(x)) · ∫₀ˣ exp(B(t)) dt
//! ```
//!
//! the unique solution of y'' + (b·y)' = 0 with y(0) = 0, y'(0) = 1. The
//! crate computes this family three independent ways and cross-checks them:
//!
//! - [`series`]: MacLaurin derivatives of D_b at 0 from the derivatives of b
//!   by an exact forward recursion, plus truncated-series evaluation;
//! - [`triangular`]: the same derivatives through the unit lower-triangular
//!   linear system they satisfy — forward substitution, a closed-form
//!   expression for every cofactor, and bordered determinants, each with a
//!   brute-force oracle;
//! - [`quad`]: direct adaptive quadrature of the defining integral in an
//!   overflow-safe shifted form, covering the one-parameter extension F(p,x)
//!   and the two-parameter family exp(-λx^p)·∫₀ˣ exp(μt^s) dt;
//! - [`ode`]: fixed-step integration of the defining Cauchy problems, the
//!   Riccati-witness construction of general solutions, and residual tables
//!   comparing every route.
//!
//! All algebraic machinery is generic over [`Scalar`], so the recursion and
//! triangular paths run bit-exact over [`Rational`] and fast over `f64`;
//! quadrature and ODE integration are generic over the float kind via
//! [`Real`]. Everything is immutable values and pure functions, safe to use
//! from any number of threads.

pub mod binomial;
pub mod bspec;
pub mod error;
pub mod ode;
pub mod quad;
pub mod report;
pub mod scalar;
pub mod series;
pub mod triangular;

pub use bspec::{BSpec, FamilyParams};
pub use error::{Error, Result};
pub use ode::{
    central_diff1, central_diff2, family_coeffs, general_solution, integrate_cauchy,
    residual_report, wronskian_at_zero, OdeCoeffs, ResidualOptions, ResidualRow, ResidualTable,
    RiccatiWitness, Sample,
};
pub use quad::{
    eval_db, eval_db_with, eval_f_classical, eval_f_family, eval_f_family_with, integrate,
    QuadOptions, Quadrature,
};
pub use report::{Detail, EvalReport, Method};
pub use scalar::{Real, Scalar};
pub use series::{
    dawson_derivatives, derivs_to_taylor, series_dump, series_eval, taylor_to_derivs,
    DerivativeSeq, RadiusHint, ScalarKind, SeriesDump, TaylorPoly,
};
pub use triangular::{
    bordered_det, build_system, chain_counts, cofactor_closed_form, cofactor_oracle,
    dawson_derivative_cramer, det_dense, for_each_chain, forward_solve, BorderedSystem,
    UniTriangular,
};

/// Exact arbitrary-precision rational scalar.
pub type Rational = num_rational::BigRational;

/// Derivative sequence over exact rationals.
pub type RationalSeq = DerivativeSeq<Rational>;
/// Derivative sequence over double precision.
pub type FloatSeq = DerivativeSeq<f64>;
/// Unit lower-triangular matrix over exact rationals.
pub type RationalTriangular = UniTriangular<Rational>;
/// Coefficient-function spec over exact rationals.
pub type RationalBSpec = BSpec<Rational>;
/// Coefficient-function spec over double precision — the CLI's working type.
pub type FloatBSpec = BSpec<f64>;
