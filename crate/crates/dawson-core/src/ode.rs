//! Independent verification layer: classical fixed-step integration of the
//! defining Cauchy problems, the Riccati-based general solution, and residual
//! reports comparing every evaluation route.
//!
//! The integrator is deliberately fixed-step fourth-order: the harness needs
//! a clean order-of-convergence signal, which adaptive stepping would
//! confound.

use std::cell::RefCell;
use std::sync::Arc;

use serde::Serialize;

use crate::bspec::{BSpec, FamilyParams};
use crate::error::{Error, Result};
use crate::quad::{eval_db_with, integrate, QuadOptions};
use crate::scalar::Real;
use crate::series::{dawson_derivatives, series_eval};

/// Number of sample points for witness residual checks.
const WITNESS_SAMPLES: usize = 33;
/// Hard acceptance threshold on the witness residual.
const WITNESS_THRESHOLD: f64 = 1e-8;

type CoeffFn<T> = Arc<dyn Fn(T) -> T + Send + Sync>;

/// Coefficient pair of a homogeneous linear second-order equation
/// y'' + b₁(x)·y' + b₂(x)·y = 0.
#[derive(Clone)]
pub struct OdeCoeffs<T> {
    b1: CoeffFn<T>,
    b2: CoeffFn<T>,
    description: String,
}

impl<T: Real> OdeCoeffs<T> {
    pub fn new(
        b1: impl Fn(T) -> T + Send + Sync + 'static,
        b2: impl Fn(T) -> T + Send + Sync + 'static,
        description: impl Into<String>,
    ) -> Self {
        OdeCoeffs {
            b1: Arc::new(b1),
            b2: Arc::new(b2),
            description: description.into(),
        }
    }

    /// The pair (b, b'), making y'' + (b·y)' = 0 — the equation the
    /// generalized Dawson function solves with y(0)=0, y'(0)=1.
    pub fn from_bspec(b: &BSpec<T>) -> Self {
        let value = b.clone();
        let slope = b.clone();
        let description = format!("y'' + (b y)' = 0 for b = {b}");
        OdeCoeffs {
            b1: Arc::new(move |x| value.value_at(&x)),
            b2: Arc::new(move |x| slope.derivative_at(&x)),
            description,
        }
    }

    pub fn b1(&self, x: T) -> T {
        (self.b1)(x)
    }

    pub fn b2(&self, x: T) -> T {
        (self.b2)(x)
    }

    pub fn description(&self) -> &str {
        &self.description
    }
}

impl<T> std::fmt::Debug for OdeCoeffs<T> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("OdeCoeffs")
            .field("description", &self.description)
            .finish()
    }
}

/// Closed-form coefficients of the Cauchy problem solved by the
/// two-parameter family:
///
/// ```text
/// b₁(x) = 2λp·x^(p-1) - μs·x^(s-1)
/// b₂(x) = λ²p²·x^(2p-2) - λμps·x^(p+s-2) + λp(p-1)·x^(p-2)
/// ```
///
/// The x^(p-2) term carries the prefactor λp(p-1), which vanishes for p = 1;
/// the term is suppressed before evaluation so no negative power is formed.
pub fn family_coeffs<T: Real>(fp: &FamilyParams<T>) -> OdeCoeffs<T> {
    let FamilyParams { lambda, p, mu, s } = *fp;
    let two = T::from(2.0).unwrap();
    let pf = T::from(p).unwrap();
    let sf = T::from(s).unwrap();
    let b1 = move |x: T| {
        two * lambda * pf * x.powi(p as i32 - 1) - mu * sf * x.powi(s as i32 - 1)
    };
    let b2 = move |x: T| {
        let square = lambda * lambda * pf * pf * x.powi(2 * (p as i32 - 1));
        let cross = lambda * mu * pf * sf * x.powi(p as i32 + s as i32 - 2);
        let curvature = if p >= 2 {
            lambda * pf * (pf - T::one()) * x.powi(p as i32 - 2)
        } else {
            T::zero()
        };
        square - cross + curvature
    };
    OdeCoeffs::new(b1, b2, format!("family ({fp})"))
}

/// A particular solution of the Riccati equation z' + z² + b₁z + b₂ = 0
/// paired with its coefficient functions. The pairing is checked, not
/// assumed: [`validate_on`](Self::validate_on) samples the residual.
#[derive(Clone)]
pub struct RiccatiWitness<T> {
    zbar: CoeffFn<T>,
    coeffs: OdeCoeffs<T>,
}

impl<T: Real> RiccatiWitness<T> {
    pub fn new(zbar: impl Fn(T) -> T + Send + Sync + 'static, coeffs: OdeCoeffs<T>) -> Self {
        RiccatiWitness {
            zbar: Arc::new(zbar),
            coeffs,
        }
    }

    /// The witness z̄ = -b that turns y'' + b₁y' + b₂y = 0 with b₂ = b₁' into
    /// the generalized Dawson construction.
    pub fn from_bspec(b: &BSpec<T>) -> Self {
        let neg = b.clone();
        RiccatiWitness {
            zbar: Arc::new(move |x| -neg.value_at(&x)),
            coeffs: OdeCoeffs::from_bspec(b),
        }
    }

    pub fn zbar(&self, x: T) -> T {
        (self.zbar)(x)
    }

    pub fn coeffs(&self) -> &OdeCoeffs<T> {
        &self.coeffs
    }

    /// Sample the Riccati residual z̄' + z̄² + b₁z̄ + b₂ (z̄' by central
    /// difference) at 33 equally spaced points of [a, b]; any residual above
    /// 1e-8 is a hard error.
    pub fn validate_on(&self, a: T, b: T) -> Result<()> {
        let n = WITNESS_SAMPLES;
        for idx in 0..n {
            let frac = T::from(idx).unwrap() / T::from(n - 1).unwrap();
            let x = a + (b - a) * frac;
            let slope = central_diff1(|u| self.zbar(u), x);
            let z = self.zbar(x);
            let residual = slope + z * z + self.coeffs.b1(x) * z + self.coeffs.b2(x);
            let residual = residual.abs().to_f64().unwrap_or(f64::INFINITY);
            if residual > WITNESS_THRESHOLD {
                return Err(Error::WitnessRejected {
                    x: x.to_f64().unwrap_or(f64::NAN),
                    residual,
                    threshold: WITNESS_THRESHOLD,
                });
            }
        }
        Ok(())
    }
}

/// One point of an integrated trajectory.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Sample<T> {
    pub x: T,
    pub y: T,
    pub dy: T,
}

/// Classical fourth-order fixed-step integration of
/// y'' + b₁y' + b₂y = 0 from (y, y')(0) = (0, 1) to `x_end` (either sign).
///
/// The step count is ⌈|x_end|/step⌉ so the trajectory lands exactly on the
/// endpoint; the effective step is never larger than `step`.
pub fn integrate_cauchy<T: Real>(
    coeffs: &OdeCoeffs<T>,
    x_end: T,
    step: T,
) -> Result<Vec<Sample<T>>> {
    if !(step > T::zero()) || !step.is_finite() {
        return Err(Error::BadArgument("step must be positive and finite".into()));
    }
    if !x_end.is_finite() {
        return Err(Error::NonFinite { what: "x_end".into() });
    }
    let start = Sample {
        x: T::zero(),
        y: T::zero(),
        dy: T::one(),
    };
    if x_end == T::zero() {
        return Ok(vec![start]);
    }
    let ratio = (x_end.abs() / step).to_f64().unwrap_or(f64::INFINITY);
    if !ratio.is_finite() || ratio > 1e9 {
        return Err(Error::BadArgument("step too small for the interval".into()));
    }
    let rounded = ratio.round();
    let n = if (ratio - rounded).abs() <= 1e-9 * ratio.max(1.0) {
        rounded as usize
    } else {
        ratio.ceil() as usize
    }
    .max(1);
    let h = x_end / T::from(n).unwrap();
    let two = T::from(2.0).unwrap();
    let six = T::from(6.0).unwrap();
    let half = T::from(0.5).unwrap();

    let rhs = |x: T, y: T, dy: T| (dy, -coeffs.b1(x) * dy - coeffs.b2(x) * y);

    let mut out = Vec::with_capacity(n + 1);
    out.push(start);
    let (mut x, mut y, mut dy) = (T::zero(), T::zero(), T::one());
    for _ in 0..n {
        let (k1y, k1d) = rhs(x, y, dy);
        let (k2y, k2d) = rhs(x + h * half, y + h * half * k1y, dy + h * half * k1d);
        let (k3y, k3d) = rhs(x + h * half, y + h * half * k2y, dy + h * half * k2d);
        let (k4y, k4d) = rhs(x + h, y + h * k3y, dy + h * k3d);
        y = y + h * (k1y + two * k2y + two * k3y + k4y) / six;
        dy = dy + h * (k1d + two * k2d + two * k3d + k4d) / six;
        x = x + h;
        if !y.is_finite() || !dy.is_finite() {
            return Err(Error::OdeDiverged {
                x: out.last().map(|s: &Sample<T>| s.x.to_f64().unwrap_or(f64::NAN)).unwrap_or(f64::NAN),
            });
        }
        out.push(Sample { x, y, dy });
    }
    Ok(out)
}

/// General solution of y'' + b₁y' + b₂y = 0 built from a Riccati witness:
///
/// ```text
/// y(x) = exp(∫₀ˣ z̄)·[C₁ + C₂·∫₀ˣ exp(-∫₀ᵗ (2z̄ + b₁)) dt]
/// ```
///
/// by nested adaptive quadrature (the inner integral runs at a hundredth of
/// the outer tolerance). The witness residual check on [0, x] must pass
/// first. With C₁ = 0 this is the unique solution vanishing at 0 with
/// y'(0) = C₂.
pub fn general_solution<T: Real>(
    witness: &RiccatiWitness<T>,
    c1: T,
    c2: T,
    x: T,
    tol: f64,
) -> Result<T> {
    witness.validate_on(T::zero(), x)?;
    let outer = QuadOptions::with_tol(tol);
    let inner = QuadOptions::with_tol((tol * 1e-2).max(1e-13));

    let growth = integrate(&|t| witness.zbar(t), T::zero(), x, &outer)?;

    let two = T::from(2.0).unwrap();
    let inner_error: RefCell<Option<Error>> = RefCell::new(None);
    let damped = |t: T| -> T {
        let damping = integrate(
            &|u| two * witness.zbar(u) + witness.coeffs().b1(u),
            T::zero(),
            t,
            &inner,
        );
        match damping {
            Ok(q) => (-q.value).exp(),
            Err(e) => {
                inner_error.borrow_mut().get_or_insert(e);
                T::nan()
            }
        }
    };
    let integral = match integrate(&damped, T::zero(), x, &outer) {
        Ok(q) => q,
        Err(e) => return Err(inner_error.into_inner().unwrap_or(e)),
    };

    let y = growth.value.exp() * (c1 + c2 * integral.value);
    if !y.is_finite() {
        return Err(Error::ExponentOverflow {
            x: x.to_f64().unwrap_or(f64::NAN),
        });
    }
    Ok(y)
}

/// Wronskian table of the two constructed solutions at 0:
/// rows (y₁, y₂) and (y₁', y₂') give ((1, 0), (z̄(0), 1)), determinant 1.
pub fn wronskian_at_zero<T: Real>(witness: &RiccatiWitness<T>) -> [[T; 2]; 2] {
    [
        [T::one(), T::zero()],
        [witness.zbar(T::zero()), T::one()],
    ]
}

/// Central first difference with step ∛ε·max(1, |x|).
pub fn central_diff1<T: Real>(f: impl Fn(T) -> T, x: T) -> T {
    let h = T::epsilon().cbrt() * x.abs().max(T::one());
    (f(x + h) - f(x - h)) / (T::from(2.0).unwrap() * h)
}

/// Central second difference with step ε^(1/4)·max(1, |x|).
pub fn central_diff2<T: Real>(f: impl Fn(T) -> T, x: T) -> T {
    let h = T::epsilon().sqrt().sqrt() * x.abs().max(T::one());
    (f(x + h) - T::from(2.0).unwrap() * f(x) + f(x - h)) / (h * h)
}

/// Controls for [`residual_report`].
#[derive(Clone, Copy, Debug)]
pub struct ResidualOptions {
    /// Quadrature tolerance for the reference values.
    pub tol: f64,
    /// Fixed step for the ODE route.
    pub ode_step: f64,
    /// Series truncation order.
    pub series_order: usize,
    /// Flag level for |quadrature - ode|.
    pub ode_threshold: f64,
    /// Flag level for the first-order identity residual.
    pub identity_threshold: f64,
}

impl Default for ResidualOptions {
    fn default() -> Self {
        ResidualOptions {
            tol: 1e-10,
            ode_step: 1e-3,
            series_order: 16,
            ode_threshold: 1e-6,
            identity_threshold: 1e-6,
        }
    }
}

/// One row of a residual table. Missing values mean the route failed at that
/// point; the flag says why.
#[derive(Clone, Debug, Serialize)]
pub struct ResidualRow {
    pub x: f64,
    pub quad: Option<f64>,
    pub ode: Option<f64>,
    pub series: Option<f64>,
    pub resid_ode: Option<f64>,
    pub resid_series: Option<f64>,
    pub resid_identity: Option<f64>,
    pub flag: String,
}

/// Residual table over a grid; serializes to CSV and JSON.
#[derive(Clone, Debug, Serialize)]
pub struct ResidualTable {
    pub rows: Vec<ResidualRow>,
}

impl ResidualTable {
    pub fn all_ok(&self) -> bool {
        self.rows.iter().all(|r| r.flag == "ok")
    }

    /// CSV with a header row; 17 significant digits, `nan` for missing.
    pub fn to_csv(&self) -> String {
        let mut out =
            String::from("x,quad,ode,series,resid_ode,resid_series,resid_identity,flag\n");
        let cell = |v: &Option<f64>| match v {
            Some(v) => format!("{v:.16e}"),
            None => "nan".into(),
        };
        for r in &self.rows {
            out.push_str(&format!(
                "{:.16e},{},{},{},{},{},{},{}\n",
                r.x,
                cell(&r.quad),
                cell(&r.ode),
                cell(&r.series),
                cell(&r.resid_ode),
                cell(&r.resid_series),
                cell(&r.resid_identity),
                r.flag
            ));
        }
        out
    }

    /// JSON array of row objects, shortest-round-trip numbers, null for
    /// missing.
    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.rows).expect("rows serialize")
    }
}

/// Compare every route at each grid point: quadrature vs fixed-step ODE, vs
/// the truncated series, and the first-order identity D' = 1 - b·D by
/// central differences. Evaluation errors flag their row without aborting
/// the table.
pub fn residual_report<T: Real>(
    b: &BSpec<T>,
    grid: &[T],
    opts: &ResidualOptions,
) -> ResidualTable {
    let coeffs = OdeCoeffs::from_bspec(b);
    let series_data = b
        .derivs_at_zero(opts.series_order.saturating_sub(1))
        .and_then(|bd| dawson_derivatives(&bd, opts.series_order))
        .ok();
    let quad_opts = QuadOptions::with_tol(opts.tol);
    // Differencing amplifies value noise by 1/(2h): evaluate the stencil at a
    // tighter tolerance so the quotient stays below the flag level.
    let fd_opts = QuadOptions::with_tol((opts.tol * 1e-3).max(5e-15));

    let rows = grid
        .iter()
        .map(|&x| {
            let xf = x.to_f64().unwrap_or(f64::NAN);
            let mut failures: Vec<String> = Vec::new();
            let mut flags: Vec<&str> = Vec::new();

            let quad = match eval_db_with(b, x, &quad_opts) {
                Ok(r) => Some(r),
                Err(e) => {
                    failures.push(format!("quad: {e}"));
                    None
                }
            };
            let quad_value = quad.as_ref().map(|r| r.value.to_f64().unwrap_or(f64::NAN));

            let ode = match integrate_cauchy(&coeffs, x, T::from(opts.ode_step).unwrap()) {
                Ok(traj) => traj.last().map(|s| s.y.to_f64().unwrap_or(f64::NAN)),
                Err(e) => {
                    failures.push(format!("ode: {e}"));
                    None
                }
            };

            let series = series_data.as_ref().and_then(|d| {
                match series_eval(d, &x) {
                    Ok(r) => Some((r.value.to_f64().unwrap_or(f64::NAN), r.est_error)),
                    Err(e) => {
                        failures.push(format!("series: {e}"));
                        None
                    }
                }
            });

            let resid_ode = match (quad_value, ode) {
                (Some(q), Some(o)) => {
                    let r = (q - o).abs();
                    if r > opts.ode_threshold {
                        flags.push("ode");
                    }
                    Some(r)
                }
                _ => None,
            };

            let resid_series = match (quad_value, &series) {
                (Some(q), Some((s, est))) => {
                    let r = (q - s).abs();
                    if r > est + 1e-9 {
                        flags.push("series");
                    }
                    Some(r)
                }
                _ => None,
            };

            let resid_identity = quad_value.and_then(|q0| {
                let h = T::epsilon().cbrt() * x.abs().max(T::one());
                let plus = eval_db_with(b, x + h, &fd_opts);
                let minus = eval_db_with(b, x - h, &fd_opts);
                match (plus, minus) {
                    (Ok(p), Ok(m)) => {
                        let slope = (p.value - m.value) / (T::from(2.0).unwrap() * h);
                        let slope = slope.to_f64().unwrap_or(f64::NAN);
                        let bx = b.value_at(&x).to_f64().unwrap_or(f64::NAN);
                        let r = (slope - 1.0 + bx * q0).abs();
                        if r > opts.identity_threshold {
                            flags.push("identity");
                        }
                        Some(r)
                    }
                    _ => {
                        failures.push("identity: stencil evaluation failed".into());
                        None
                    }
                }
            });

            let flag = if !failures.is_empty() {
                format!("error:{}", failures.join("; ").replace(',', ";"))
            } else if !flags.is_empty() {
                format!("flag:{}", flags.join("+"))
            } else {
                "ok".into()
            };

            ResidualRow {
                x: xf,
                quad: quad_value,
                ode,
                series: series.map(|(s, _)| s),
                resid_ode,
                resid_series,
                resid_identity,
                flag,
            }
        })
        .collect();

    ResidualTable { rows }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quad::eval_db;

    const TOL: f64 = 1e-10;

    fn bspec(text: &str) -> BSpec<f64> {
        BSpec::parse(text).unwrap()
    }

    #[test]
    fn free_particle_is_linear() {
        let coeffs = OdeCoeffs::new(|_: f64| 0.0, |_| 0.0, "free");
        let traj = integrate_cauchy(&coeffs, 1.0, 1e-2).unwrap();
        let end = traj.last().unwrap();
        assert!((end.y - 1.0).abs() < 1e-12);
        assert!((end.dy - 1.0).abs() < 1e-12);
        assert_eq!(traj.first().unwrap().y, 0.0);
    }

    #[test]
    fn classical_dawson_by_ode() {
        let coeffs = OdeCoeffs::from_bspec(&bspec("poly:0,2"));
        let traj = integrate_cauchy(&coeffs, 1.0, 1e-3).unwrap();
        let end = traj.last().unwrap();
        assert!((end.x - 1.0).abs() < 1e-12);
        assert!((end.y - 0.5380795069127684).abs() < 1e-6);
    }

    #[test]
    fn family_coefficients_reduce_to_classical() {
        // (1,2,1,2): b₁ = 2x, b₂ = 2.
        let fp = FamilyParams::<f64>::new(1.0, 2, 1.0, 2).unwrap();
        let coeffs = family_coeffs(&fp);
        for x in [0.0f64, 0.3, 1.0, -0.7] {
            assert!((coeffs.b1(x) - 2.0 * x).abs() < 1e-14);
            assert!((coeffs.b2(x) - 2.0).abs() < 1e-14);
        }
        let traj = integrate_cauchy(&coeffs, 1.0, 1e-3).unwrap();
        assert!((traj.last().unwrap().y - 0.5380795069127684).abs() < 1e-6);
    }

    #[test]
    fn family_coefficients_constant_and_mixed() {
        // (λ,1,μ,1): b₁ = 2λ - μ, b₂ = λ² - λμ; no negative powers at x = 0.
        let fp = FamilyParams::<f64>::new(3.0, 1, 5.0, 1).unwrap();
        let coeffs = family_coeffs(&fp);
        assert!((coeffs.b1(0.0) - 1.0).abs() < 1e-14);
        assert!((coeffs.b2(0.0) - (9.0 - 15.0)).abs() < 1e-14);

        // (1,2,1,1): b₁ = 4x - 1, b₂ = 4x² - 2x + 2.
        let fp = FamilyParams::<f64>::new(1.0, 2, 1.0, 1).unwrap();
        let coeffs = family_coeffs(&fp);
        for x in [0.0f64, 0.5, 1.0] {
            assert!((coeffs.b1(x) - (4.0 * x - 1.0)).abs() < 1e-14);
            assert!((coeffs.b2(x) - (4.0 * x * x - 2.0 * x + 2.0)).abs() < 1e-13);
        }
    }

    #[test]
    fn divergence_reports_last_good_point() {
        // y'' = 10⁸·y explodes well before x = 40.
        let coeffs = OdeCoeffs::new(|_: f64| 0.0, |_| -1e8, "explosive");
        match integrate_cauchy(&coeffs, 40.0, 1e-2) {
            Err(Error::OdeDiverged { x }) => assert!(x > 0.0 && x < 40.0),
            other => panic!("expected divergence, got {other:?}"),
        }
    }

    #[test]
    fn step_validation() {
        let coeffs = OdeCoeffs::new(|_: f64| 0.0, |_| 0.0, "free");
        assert!(matches!(
            integrate_cauchy(&coeffs, 1.0, 0.0),
            Err(Error::BadArgument(_))
        ));
        let single = integrate_cauchy(&coeffs, 0.0, 1e-3).unwrap();
        assert_eq!(single.len(), 1);
    }

    #[test]
    fn negative_direction_integration() {
        let coeffs = OdeCoeffs::from_bspec(&bspec("poly:0,2"));
        let traj = integrate_cauchy(&coeffs, -1.0, 1e-3).unwrap();
        let end = traj.last().unwrap();
        // Odd function: y(-1) = -y(1).
        assert!((end.y + 0.5380795069127684).abs() < 1e-6);
    }

    #[test]
    fn general_solution_recovers_both_basis_solutions() {
        let b = bspec("poly:0,2");
        let w = RiccatiWitness::from_bspec(&b);
        // C₁=1, C₂=0 with z̄ = -b gives exp(-B(x)).
        let y1 = general_solution(&w, 1.0, 0.0, 0.8, 1e-10).unwrap();
        assert!((y1 - (-0.64f64).exp()).abs() < 1e-8);
        // C₁=0, C₂=1 reproduces the generalized Dawson value.
        let y2 = general_solution(&w, 0.0, 1.0, 1.0, 1e-10).unwrap();
        assert!((y2 - 0.5380795069127684).abs() < 1e-7);
        // x = 0 collapses to C₁.
        let y0 = general_solution(&w, 2.5, 7.0, 0.0, 1e-10).unwrap();
        assert_eq!(y0, 2.5);
    }

    #[test]
    fn general_solution_cauchy_data() {
        // Numeric differentiation at 0: y(0) = C₁, y'(0) = C₁·z̄(0) + C₂.
        let b = bspec("poly:1,1"); // b(0) = 1 so z̄(0) = -1
        let w = RiccatiWitness::from_bspec(&b);
        let (c1, c2) = (0.7, 1.3);
        let y = |x: f64| general_solution(&w, c1, c2, x, 1e-11).unwrap();
        let slope = central_diff1(y, 0.0);
        assert!((y(0.0) - c1).abs() < 1e-12);
        assert!((slope - (c1 * -1.0 + c2)).abs() < 1e-6, "slope {slope}");
    }

    #[test]
    fn witness_validation_accepts_and_rejects() {
        let b = bspec("poly:0,2,0,1");
        let w = RiccatiWitness::from_bspec(&b);
        w.validate_on(0.0, 1.0).unwrap();

        // Mispaired coefficients: b₂ off by one breaks the Riccati identity.
        let bad = RiccatiWitness::new(
            |x: f64| -2.0 * x,
            OdeCoeffs::new(|x: f64| 2.0 * x, |_| 3.0, "mispaired"),
        );
        match bad.validate_on(0.0, 1.0) {
            Err(Error::WitnessRejected { residual, .. }) => assert!(residual > 0.9),
            other => panic!("expected rejection, got {other:?}"),
        }
        assert!(matches!(
            general_solution(&bad, 0.0, 1.0, 1.0, 1e-10),
            Err(Error::WitnessRejected { .. })
        ));
    }

    #[test]
    fn wronskian_structure() {
        let id = RiccatiWitness::new(|_: f64| 0.0, OdeCoeffs::new(|_: f64| 0.0, |_| 0.0, "zero"));
        assert_eq!(wronskian_at_zero(&id), [[1.0, 0.0], [0.0, 1.0]]);

        let b2x = RiccatiWitness::from_bspec(&bspec("poly:0,2"));
        assert_eq!(wronskian_at_zero(&b2x), [[1.0, 0.0], [0.0, 1.0]]);

        let c = 4.0;
        let constant = RiccatiWitness::new(
            move |_: f64| -c,
            OdeCoeffs::new(|_: f64| 4.0, |_| 0.0, "constant"),
        );
        let w = wronskian_at_zero(&constant);
        assert_eq!(w, [[1.0, 0.0], [-4.0, 1.0]]);
        let det = w[0][0] * w[1][1] - w[0][1] * w[1][0];
        assert_eq!(det, 1.0);
    }

    #[test]
    fn residual_report_clean_for_zero_b() {
        let b = bspec("poly:0");
        let grid: Vec<f64> = (1..=10).map(|i| i as f64 * 0.1).collect();
        let table = residual_report(&b, &grid, &ResidualOptions::default());
        assert!(table.all_ok(), "{}", table.to_csv());
        for row in &table.rows {
            assert!(row.resid_ode.unwrap() < 1e-10);
            assert!(row.resid_series.unwrap() < 1e-10);
            assert!(row.resid_identity.unwrap() < 1e-8);
        }
    }

    #[test]
    fn residual_report_classical() {
        let b = bspec("poly:0,2");
        let table = residual_report(&b, &[0.25, 0.5, 1.0], &ResidualOptions::default());
        assert!(table.all_ok(), "{}", table.to_csv());
        for row in &table.rows {
            assert!(row.resid_ode.unwrap() < 1e-6);
            assert!(row.resid_identity.unwrap() < 1e-6);
        }
    }

    #[test]
    fn residual_report_isolates_failures() {
        let b = bspec("poly:0,2");
        let table = residual_report(&b, &[0.5, 1e200], &ResidualOptions::default());
        assert_eq!(table.rows.len(), 2);
        assert!(table.rows[0].flag == "ok", "{}", table.rows[0].flag);
        assert!(table.rows[1].flag.starts_with("error:"));
        assert!(table.rows[1].quad.is_none());
        let csv = table.to_csv();
        assert!(csv.lines().count() == 3);
        let json = table.to_json();
        assert!(json.contains("\"flag\":\"ok\""));
    }

    #[test]
    fn ode_and_quadrature_agree_on_trajectory() {
        // The (1,2,1,2) family trajectory matches b = 2x pointwise.
        let fam = family_coeffs(&FamilyParams::<f64>::new(1.0, 2, 1.0, 2).unwrap());
        let direct = OdeCoeffs::from_bspec(&bspec("poly:0,2"));
        let t1 = integrate_cauchy(&fam, 1.0, 1e-3).unwrap();
        let t2 = integrate_cauchy(&direct, 1.0, 1e-3).unwrap();
        for (a, b) in t1.iter().zip(&t2).step_by(100) {
            assert!((a.y - b.y).abs() < 1e-12);
        }
    }

    #[test]
    fn rk4_order_of_convergence() {
        let b = bspec("poly:0,2");
        let coeffs = OdeCoeffs::from_bspec(&b);
        let reference = eval_db(&b, 1.0, 1e-13).unwrap().value;
        let errs: Vec<f64> = [0.1, 0.05, 0.025]
            .iter()
            .map(|&h| {
                let traj = integrate_cauchy(&coeffs, 1.0, h).unwrap();
                (traj.last().unwrap().y - reference).abs()
            })
            .collect();
        for pair in errs.windows(2) {
            let ratio = pair[0] / pair[1];
            assert!((12.0..=20.0).contains(&ratio), "ratio {ratio}");
        }
    }

    #[test]
    fn family_ode_satisfied_by_quadrature_values() {
        // Central second differences of the family evaluation satisfy its
        // Cauchy problem away from the coefficient singularities at 0.
        use crate::quad::eval_f_family;
        for (fp, label) in [
            (FamilyParams::<f64>::new(1.0, 2, 1.0, 2).unwrap(), "p=s=2"),
            (FamilyParams::<f64>::new(1.0, 2, 1.0, 1).unwrap(), "p=2,s=1"),
        ] {
            let coeffs = family_coeffs(&fp);
            let f = |x: f64| eval_f_family(&fp, x, 1e-12).unwrap().value;
            for x in [0.1, 0.5, 1.0] {
                let y = f(x);
                let dy = central_diff1(f, x);
                let d2y = central_diff2(f, x);
                let resid = d2y + coeffs.b1(x) * dy + coeffs.b2(x) * y;
                // Second differences at ε^(1/4) leave ~√ε·scale noise.
                assert!(resid.abs() < 1e-4, "{label} x={x}: residual {resid}");
            }
        }
    }
}
