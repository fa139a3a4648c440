//! MacLaurin machinery for the generalized Dawson function: the derivative
//! recursion at 0, truncated-series evaluation, and conversion between
//! derivative values and Taylor coefficients.
//!
//! Sequences store raw derivative values `d[n] = f^(n)(0)` rather than Taylor
//! coefficients: the recursion is stated in derivative values and its binomial
//! weights stay integral, so rational runs are exact end to end. Conversion to
//! coefficients is explicit via [`derivs_to_taylor`].

use num_bigint::BigInt;
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::binomial::PascalTriangle;
use crate::error::{Error, Result};
use crate::report::{Detail, EvalReport, Method};
use crate::scalar::Scalar;

/// Whether a sequence stores exact or rounding scalars.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ScalarKind {
    ExactRational,
    Floating,
}

/// Convergence-radius annotation carried by Taylor data. A finite hint is
/// advisory: callers warn past it, they do not refuse to evaluate.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum RadiusHint {
    Finite(f64),
    Unbounded,
}

impl RadiusHint {
    /// True when |x| reaches a finite hint.
    pub fn exceeded_by(&self, x: f64) -> bool {
        match self {
            RadiusHint::Finite(r) => x.abs() >= *r,
            RadiusHint::Unbounded => false,
        }
    }
}

/// Finite sequence of derivative values at 0: entry `n` holds the n-th
/// derivative. Immutable after construction.
#[derive(Clone, Debug, PartialEq)]
pub struct DerivativeSeq<T> {
    values: Vec<T>,
}

impl<T: Scalar> DerivativeSeq<T> {
    /// Requires at least one entry, every entry finite.
    pub fn new(values: Vec<T>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::BadArgument(
                "derivative sequence must have at least one entry".into(),
            ));
        }
        if let Some(n) = values.iter().position(|v| !v.is_finite_scalar()) {
            return Err(Error::NonFinite {
                what: format!("derivative of order {n}"),
            });
        }
        Ok(DerivativeSeq { values })
    }

    pub fn values(&self) -> &[T] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        false // construction guarantees at least one entry
    }

    /// Highest stored derivative order.
    pub fn max_order(&self) -> usize {
        self.values.len() - 1
    }

    pub fn scalar_kind(&self) -> ScalarKind {
        if T::EXACT {
            ScalarKind::ExactRational
        } else {
            ScalarKind::Floating
        }
    }
}

/// Truncated Taylor polynomial: coefficient `n` equals derivative(n)/n!.
#[derive(Clone, Debug, PartialEq)]
pub struct TaylorPoly<T> {
    coeffs: Vec<T>,
    radius_hint: RadiusHint,
}

impl<T: Scalar> TaylorPoly<T> {
    pub fn new(coeffs: Vec<T>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::BadArgument(
                "Taylor polynomial must have at least one coefficient".into(),
            ));
        }
        if let Some(n) = coeffs.iter().position(|v| !v.is_finite_scalar()) {
            return Err(Error::NonFinite {
                what: format!("Taylor coefficient of order {n}"),
            });
        }
        Ok(TaylorPoly {
            coeffs,
            radius_hint: RadiusHint::Unbounded,
        })
    }

    pub fn with_radius_hint(mut self, hint: RadiusHint) -> Self {
        self.radius_hint = hint;
        self
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn radius_hint(&self) -> RadiusHint {
        self.radius_hint
    }
}

/// Derivatives of the generalized Dawson function at 0 through `order`, from
/// the derivatives of the coefficient function b at 0.
///
/// Entry 0 is 0 and entry 1 is 1 (the defining Cauchy data); every higher
/// entry follows by the forward recursion
///
/// ```text
/// D^(k+1)(0) = -k·b^(k-1)(0) - Σ_{n=2..k} C(k,n)·D^(n)(0)·b^(k-n)(0)
/// ```
///
/// with the sum empty at k = 1. Orders up to `order` need b-derivatives up to
/// order `order - 2`, i.e. `b_derivs.len() >= order - 1`. Exact in rational
/// mode.
pub fn dawson_derivatives<T: Scalar>(
    b_derivs: &DerivativeSeq<T>,
    order: usize,
) -> Result<DerivativeSeq<T>> {
    if order == 0 {
        return Err(Error::BadArgument("order must be at least 1".into()));
    }
    let needed = order - 1;
    if b_derivs.len() < needed {
        return Err(Error::InsufficientDerivatives {
            needed,
            got: b_derivs.len(),
        });
    }
    let b = b_derivs.values();
    let pascal = PascalTriangle::up_to(order.saturating_sub(1));
    let mut d: Vec<T> = Vec::with_capacity(order + 1);
    d.push(T::zero());
    d.push(T::one());
    for k in 1..order {
        let mut acc = -(T::from_usize(k).expect("small integer") * b[k - 1].clone());
        for n in 2..=k {
            let binom = T::from_bigint(pascal.choose(k, n));
            acc = acc - binom * d[n].clone() * b[k - n].clone();
        }
        if !acc.is_finite_scalar() {
            return Err(Error::DerivativeOverflow { order: k + 1 });
        }
        d.push(acc);
    }
    DerivativeSeq::new(d)
}

/// Horner evaluation of the truncated MacLaurin series Σ d[n]·xⁿ/n!.
///
/// The error estimate is the magnitude of the highest-order nonzero retained
/// term: an honest proxy for the first dropped term while terms are still
/// decreasing.
pub fn series_eval<T: Scalar>(d: &DerivativeSeq<T>, x: &T) -> Result<EvalReport<T>> {
    if !x.is_finite_scalar() {
        return Err(Error::NonFinite { what: "x".into() });
    }
    let coeffs = taylor_coeffs(d.values())?;
    let mut value = T::zero();
    for c in coeffs.iter().rev() {
        value = value * x.clone() + c.clone();
    }
    let est_error = coeffs
        .iter()
        .enumerate()
        .rev()
        .find(|(_, c)| !c.is_zero())
        .map(|(n, c)| c.magnitude() * x.magnitude().powi(n as i32))
        .unwrap_or(0.0);
    Ok(EvalReport {
        value,
        method: Method::Series,
        est_error,
        detail: Detail::TruncationOrder(d.max_order()),
    })
}

/// Divide each derivative by n!. Errors when n! stops being representable in
/// the scalar type (order 171 for f64, order 35 for f32, never for rationals).
pub fn derivs_to_taylor<T: Scalar>(d: &DerivativeSeq<T>) -> Result<TaylorPoly<T>> {
    TaylorPoly::new(taylor_coeffs(d.values())?)
}

/// Multiply each coefficient by n!; the exact inverse of [`derivs_to_taylor`]
/// in rational mode.
pub fn taylor_to_derivs<T: Scalar>(t: &TaylorPoly<T>) -> Result<DerivativeSeq<T>> {
    let mut values = Vec::with_capacity(t.coeffs().len());
    let mut fact = BigInt::one();
    for (n, c) in t.coeffs().iter().enumerate() {
        if n > 0 {
            fact *= n;
        }
        let f = T::from_bigint(&fact);
        if !f.is_finite_scalar() {
            return Err(Error::FactorialOverflow { order: n });
        }
        let v = c.clone() * f;
        if !v.is_finite_scalar() {
            return Err(Error::FactorialOverflow { order: n });
        }
        values.push(v);
    }
    DerivativeSeq::new(values)
}

fn taylor_coeffs<T: Scalar>(derivs: &[T]) -> Result<Vec<T>> {
    let mut coeffs = Vec::with_capacity(derivs.len());
    let mut fact = BigInt::one();
    for (n, v) in derivs.iter().enumerate() {
        if n > 0 {
            fact *= n;
        }
        let f = T::from_bigint(&fact);
        if !f.is_finite_scalar() {
            return Err(Error::FactorialOverflow { order: n });
        }
        coeffs.push(v.clone() / f);
    }
    Ok(coeffs)
}

/// JSON payload of the `series` CLI subcommand. Scalars serialize as exact
/// fraction strings in rational mode and shortest-round-trip decimals in
/// floating mode.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SeriesDump {
    pub b_spec: String,
    pub order: usize,
    pub derivatives: Vec<String>,
    pub taylor_coefficients: Vec<String>,
}

pub fn series_dump<T: Scalar>(
    b_spec: &str,
    order: usize,
    derivs: &DerivativeSeq<T>,
    taylor: &TaylorPoly<T>,
) -> SeriesDump {
    SeriesDump {
        b_spec: b_spec.to_owned(),
        order,
        derivatives: derivs.values().iter().map(T::to_string).collect(),
        taylor_coefficients: taylor.coeffs().iter().map(T::to_string).collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Rational;
    use num_bigint::BigInt;
    use num_traits::{One, Zero};
    use proptest::prelude::*;

    fn rat(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    fn rats(entries: &[(i64, i64)]) -> DerivativeSeq<Rational> {
        DerivativeSeq::new(entries.iter().map(|&(n, d)| rat(n, d)).collect()).unwrap()
    }

    fn ints(entries: &[i64]) -> DerivativeSeq<Rational> {
        DerivativeSeq::new(entries.iter().map(|&n| rat(n, 1)).collect()).unwrap()
    }

    #[test]
    fn classical_dawson_derivatives() {
        // b(x) = 2x: the classical Dawson series x - (2/3)x^3 + (4/15)x^5 - ...
        let b = ints(&[0, 2, 0, 0]);
        let d = dawson_derivatives(&b, 5).unwrap();
        assert_eq!(d, ints(&[0, 1, 0, -4, 0, 32]));
    }

    #[test]
    fn zero_b_gives_identity() {
        let b = ints(&[0, 0, 0]);
        let d = dawson_derivatives(&b, 4).unwrap();
        assert_eq!(d, ints(&[0, 1, 0, 0, 0]));
    }

    #[test]
    fn constant_b_matches_exponential_form() {
        // b = c constant: D(x) = (1 - e^{-cx})/c, so derivatives 0, 1, -c, c^2.
        let c = rat(3, 2);
        let b = DerivativeSeq::new(vec![c.clone(), rat(0, 1), rat(0, 1)]).unwrap();
        let d = dawson_derivatives(&b, 3).unwrap();
        assert_eq!(
            d.values(),
            &[rat(0, 1), rat(1, 1), -c.clone(), c.clone() * c]
        );
    }

    #[test]
    fn order_one_needs_no_b_data() {
        let b = ints(&[7]);
        let d = dawson_derivatives(&b, 1).unwrap();
        assert_eq!(d, ints(&[0, 1]));
    }

    #[test]
    fn insufficient_data_is_reported() {
        let b = ints(&[0, 2]);
        match dawson_derivatives(&b, 5) {
            Err(Error::InsufficientDerivatives { needed: 4, got: 2 }) => {}
            other => panic!("expected length error, got {other:?}"),
        }
    }

    #[test]
    fn float_overflow_carries_first_failing_order() {
        let b = DerivativeSeq::new(vec![1e308f64, 0.0, 0.0]).unwrap();
        match dawson_derivatives(&b, 4) {
            // D''(0) = -b(0) is fine; D'''(0) = -2 b'(0) - C(2,2) D''(0) b(0) overflows.
            Err(Error::DerivativeOverflow { order: 3 }) => {}
            other => panic!("expected overflow at order 3, got {other:?}"),
        }
    }

    #[test]
    fn series_eval_at_zero_and_identity() {
        let d = ints(&[0, 1, 0, -4, 0, 32]);
        let r = series_eval(&d, &rat(0, 1)).unwrap();
        assert_eq!(r.value, rat(0, 1));
        assert_eq!(r.method, Method::Series);

        let id = DerivativeSeq::new(vec![0.0, 1.0, 0.0, 0.0, 0.0]).unwrap();
        let r = series_eval(&id, &0.7).unwrap();
        assert_eq!(r.value, 0.7);
        assert_eq!(r.est_error, 0.7);
    }

    #[test]
    fn series_eval_matches_quadrature_oracle_near_zero() {
        // F(2, 0.2) = 0.19475103336802805 (independent high-order quadrature).
        let d = DerivativeSeq::new(vec![0.0f64, 1.0, 0.0, -4.0, 0.0, 32.0]).unwrap();
        let r = series_eval(&d, &0.2).unwrap();
        assert!(r.est_error > 0.0);
        assert!(
            (r.value - 0.19475103336802805).abs() <= r.est_error,
            "value {} est {}",
            r.value,
            r.est_error
        );
        assert!((r.value - 0.194751).abs() < 2e-6);
    }

    #[test]
    fn taylor_conversion_and_round_trip() {
        let d = ints(&[0, 1, 0, -4]);
        let t = derivs_to_taylor(&d).unwrap();
        assert_eq!(
            t.coeffs(),
            &[rat(0, 1), rat(1, 1), rat(0, 1), rat(-2, 3)]
        );

        let single = ints(&[1]);
        assert_eq!(derivs_to_taylor(&single).unwrap().coeffs(), &[rat(1, 1)]);

        let d = ints(&[0, 1, 0, -4, 0, 32]);
        let back = taylor_to_derivs(&derivs_to_taylor(&d).unwrap()).unwrap();
        assert_eq!(back, d);
    }

    #[test]
    fn factorial_overflow_in_float_mode() {
        let d = DerivativeSeq::new(vec![1.0f64; 180]).unwrap();
        match derivs_to_taylor(&d) {
            Err(Error::FactorialOverflow { order }) => assert_eq!(order, 171),
            other => panic!("expected factorial overflow, got {other:?}"),
        }
        let r = DerivativeSeq::new(vec![rat(1, 1); 180]).unwrap();
        assert!(derivs_to_taylor(&r).is_ok());
    }

    #[test]
    fn odd_b_gives_odd_dawson_series() {
        // b odd (even-order derivatives vanish) forces even-order D derivatives
        // to vanish: check b = 2x and b = 4x^3 through order 12.
        for b in [ints(&[0, 2, 0, 0, 0, 0, 0, 0, 0, 0, 0]),
                  ints(&[0, 0, 0, 24, 0, 0, 0, 0, 0, 0, 0])] {
            let d = dawson_derivatives(&b, 12).unwrap();
            for n in (0..=12).step_by(2) {
                assert!(d.values()[n].is_zero(), "order {n} should vanish");
            }
        }
    }

    #[test]
    fn radius_hint_annotation() {
        let t = TaylorPoly::new(vec![0.0, 1.0]).unwrap();
        assert_eq!(t.radius_hint(), RadiusHint::Unbounded);
        assert!(!t.radius_hint().exceeded_by(1e12));
        let t = t.with_radius_hint(RadiusHint::Finite(0.5));
        assert!(t.radius_hint().exceeded_by(0.5));
        assert!(!t.radius_hint().exceeded_by(0.49));
    }

    #[test]
    fn dump_uses_fraction_strings() {
        let d = ints(&[0, 1, 0, -4, 0, 32]);
        let t = derivs_to_taylor(&d).unwrap();
        let dump = series_dump("poly:0,2", 5, &d, &t);
        assert_eq!(dump.derivatives, vec!["0", "1", "0", "-4", "0", "32"]);
        assert_eq!(
            dump.taylor_coefficients,
            vec!["0", "1", "0", "-2/3", "0", "4/15"]
        );
    }

    #[test]
    fn scalar_kind_tracks_type() {
        assert_eq!(ints(&[0]).scalar_kind(), ScalarKind::ExactRational);
        let f = DerivativeSeq::new(vec![0.0f64]).unwrap();
        assert_eq!(f.scalar_kind(), ScalarKind::Floating);
    }

    prop_compose! {
        fn rational()(n in -9i64..=9, d in 1i64..=9) -> Rational {
            rat(n, d)
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        /// Independent re-derivation: the generated sequence must satisfy the
        /// full Leibniz expansion of D'' = -(D·b)' at 0, order by order.
        #[test]
        fn leibniz_expansion_agrees(b_data in proptest::collection::vec(rational(), 0..9)) {
            let order = 10usize;
            let mut padded = b_data.clone();
            padded.resize(order, rat(0, 1));
            let b = DerivativeSeq::new(padded.clone()).unwrap();
            let d = dawson_derivatives(&b, order).unwrap();
            let dv = d.values();
            let pascal = PascalTriangle::up_to(order);
            for m in 0..order - 1 {
                // D^(m+2)(0) = -Σ_{j=0..m+1} C(m+1,j) D^(j)(0) b^(m+1-j)(0)
                let mut rhs = rat(0, 1);
                for j in 0..=m + 1 {
                    let c = Rational::from_bigint(pascal.choose(m + 1, j));
                    rhs = rhs - c * dv[j].clone() * padded[m + 1 - j].clone();
                }
                prop_assert_eq!(&dv[m + 2], &rhs);
            }
        }

        /// Cauchy data is pinned for every generated sequence.
        #[test]
        fn cauchy_data_fixed(b_data in proptest::collection::vec(rational(), 0..12), order in 1usize..12) {
            let mut padded = b_data;
            padded.resize(order.max(1), rat(0, 1));
            let b = DerivativeSeq::new(padded).unwrap();
            let d = dawson_derivatives(&b, order).unwrap();
            prop_assert!(d.values()[0].is_zero());
            prop_assert!(d.values()[1].is_one());
        }
    }

    #[test]
    fn big_binomials_stay_exact() {
        // An order-40 run keeps integral binomials exact through BigInt.
        let b = ints(&[1; 40]);
        let d = dawson_derivatives(&b, 40).unwrap();
        let expect: BigInt = d.values()[40].numer().clone();
        assert!(expect.to_string().len() > 5);
    }
}
