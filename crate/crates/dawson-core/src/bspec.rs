//! Coefficient-function specifications: how callers describe b(x).
//!
//! Every kind can produce pointwise values b(x) and b'(x), the derivatives
//! b^(n)(0), and the exact antiderivative B(x) = ∫₀ˣ b — everything the
//! series recursion, the quadrature evaluator, and the ODE harness consume.
//! The text grammar shared with the CLI is `poly:c0,c1,...`, `mono:LAMBDA,P`,
//! `series:d0,d1,...` with scalars as decimals or fractions `p/q`.

use std::fmt;

use crate::binomial::factorial;
use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::series::{DerivativeSeq, RadiusHint};

/// Specification of the coefficient function b(x).
#[derive(Clone, Debug, PartialEq)]
pub enum BSpec<T> {
    /// b(x) = Σ c_j x^j.
    Poly(Vec<T>),
    /// b(x) = λ·p·x^(p-1), so B(x) = λ·x^p.
    Monomial { lambda: T, power: u32 },
    /// b given by its derivatives at 0, evaluated on the finite truncation.
    /// The caller owns truncation adequacy; a finite radius hint only warns.
    Series {
        derivs: DerivativeSeq<T>,
        radius_hint: RadiusHint,
    },
}

impl<T: Scalar> BSpec<T> {
    pub fn poly(coeffs: Vec<T>) -> Result<Self> {
        let coeffs = if coeffs.is_empty() {
            vec![T::zero()]
        } else {
            coeffs
        };
        if let Some(j) = coeffs.iter().position(|c| !c.is_finite_scalar()) {
            return Err(Error::NonFinite {
                what: format!("polynomial coefficient {j}"),
            });
        }
        Ok(BSpec::Poly(coeffs))
    }

    pub fn monomial(lambda: T, power: u32) -> Result<Self> {
        if lambda.is_zero() || !lambda.is_finite_scalar() {
            return Err(Error::BadArgument(
                "monomial family requires a nonzero finite lambda".into(),
            ));
        }
        if power == 0 {
            return Err(Error::BadArgument(
                "monomial family requires power >= 1".into(),
            ));
        }
        Ok(BSpec::Monomial { lambda, power })
    }

    pub fn series(derivs: DerivativeSeq<T>) -> Self {
        BSpec::Series {
            derivs,
            radius_hint: RadiusHint::Unbounded,
        }
    }

    pub fn with_radius_hint(self, hint: RadiusHint) -> Self {
        match self {
            BSpec::Series { derivs, .. } => BSpec::Series {
                derivs,
                radius_hint: hint,
            },
            other => other,
        }
    }

    /// Parse the text grammar.
    pub fn parse(text: &str) -> Result<Self> {
        let bad = |reason: String| Error::BadBSpec {
            input: text.to_owned(),
            reason,
        };
        let (kind, payload) = text
            .split_once(':')
            .ok_or_else(|| bad("expected `poly:`, `mono:` or `series:` prefix".into()))?;
        let scalars = |s: &str| -> Result<Vec<T>> {
            s.split(',')
                .map(|tok| T::parse_scalar(tok).map_err(&bad))
                .collect()
        };
        match kind {
            "poly" => Self::poly(scalars(payload)?),
            "mono" => {
                let (lam, p) = payload
                    .split_once(',')
                    .ok_or_else(|| bad("mono takes `LAMBDA,P`".into()))?;
                let lambda = T::parse_scalar(lam).map_err(&bad)?;
                let power: u32 = p
                    .trim()
                    .parse()
                    .map_err(|_| bad(format!("bad power `{p}`")))?;
                Self::monomial(lambda, power)
            }
            "series" => Ok(Self::series(DerivativeSeq::new(scalars(payload)?)?)),
            other => Err(bad(format!("unknown kind `{other}`"))),
        }
    }

    /// b(x).
    pub fn value_at(&self, x: &T) -> T {
        match self {
            BSpec::Poly(coeffs) => horner(coeffs, x),
            BSpec::Monomial { lambda, power } => {
                lambda.clone() * T::from_u32(*power).expect("small integer") * pow(x, power - 1)
            }
            BSpec::Series { derivs, .. } => {
                let coeffs = factorial_scaled(derivs.values(), 0);
                horner(&coeffs, x)
            }
        }
    }

    /// b'(x), exact in each representation. Needed because the verification
    /// ODE uses the coefficient pair (b, b').
    pub fn derivative_at(&self, x: &T) -> T {
        match self {
            BSpec::Poly(coeffs) => {
                let dcoeffs: Vec<T> = coeffs
                    .iter()
                    .enumerate()
                    .skip(1)
                    .map(|(j, c)| T::from_usize(j).expect("small integer") * c.clone())
                    .collect();
                horner(&dcoeffs, x)
            }
            BSpec::Monomial { lambda, power } => {
                if *power == 1 {
                    T::zero()
                } else {
                    let p = T::from_u32(*power).expect("small integer");
                    let pm1 = T::from_u32(*power - 1).expect("small integer");
                    lambda.clone() * p * pm1 * pow(x, power - 2)
                }
            }
            BSpec::Series { derivs, .. } => {
                if derivs.len() == 1 {
                    return T::zero();
                }
                let coeffs = factorial_scaled(&derivs.values()[1..], 0);
                horner(&coeffs, x)
            }
        }
    }

    /// Derivatives b^(0)(0), ..., b^(max_order)(0), zero-padded past the
    /// stored data.
    pub fn derivs_at_zero(&self, max_order: usize) -> Result<DerivativeSeq<T>> {
        let mut values = vec![T::zero(); max_order + 1];
        match self {
            BSpec::Poly(coeffs) => {
                for (j, c) in coeffs.iter().enumerate().take(max_order + 1) {
                    let f = T::from_bigint(&factorial(j));
                    let v = c.clone() * f;
                    if !v.is_finite_scalar() {
                        return Err(Error::FactorialOverflow { order: j });
                    }
                    values[j] = v;
                }
            }
            BSpec::Monomial { lambda, power } => {
                let order = (*power - 1) as usize;
                if order <= max_order {
                    // b^(p-1)(0) = λ·p·(p-1)! = λ·p!
                    let v = lambda.clone() * T::from_bigint(&factorial(*power as usize));
                    if !v.is_finite_scalar() {
                        return Err(Error::FactorialOverflow {
                            order: *power as usize,
                        });
                    }
                    values[order] = v;
                }
            }
            BSpec::Series { derivs, .. } => {
                for (n, v) in derivs.values().iter().take(max_order + 1).enumerate() {
                    values[n] = v.clone();
                }
            }
        }
        DerivativeSeq::new(values)
    }

    /// B(x) = ∫₀ˣ b(t) dt, term-wise exact: Σ c_j x^(j+1)/(j+1) for
    /// polynomials, λ·x^p for the monomial family, Σ d_n x^(n+1)/(n+1)! for
    /// truncated series.
    pub fn big_b(&self, x: &T) -> T {
        match self {
            BSpec::Poly(coeffs) => {
                let icoeffs: Vec<T> = coeffs
                    .iter()
                    .enumerate()
                    .map(|(j, c)| c.clone() / T::from_usize(j + 1).expect("small integer"))
                    .collect();
                horner(&icoeffs, x) * x.clone()
            }
            BSpec::Monomial { lambda, power } => lambda.clone() * pow(x, *power),
            BSpec::Series { derivs, .. } => {
                let icoeffs = factorial_scaled(derivs.values(), 1);
                horner(&icoeffs, x) * x.clone()
            }
        }
    }

    pub fn radius_hint(&self) -> RadiusHint {
        match self {
            BSpec::Series { radius_hint, .. } => *radius_hint,
            _ => RadiusHint::Unbounded,
        }
    }
}

impl<T: Scalar> fmt::Display for BSpec<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BSpec::Poly(coeffs) => {
                let parts: Vec<String> = coeffs.iter().map(T::to_string).collect();
                write!(f, "poly:{}", parts.join(","))
            }
            BSpec::Monomial { lambda, power } => write!(f, "mono:{lambda},{power}"),
            BSpec::Series { derivs, .. } => {
                let parts: Vec<String> = derivs.values().iter().map(T::to_string).collect();
                write!(f, "series:{}", parts.join(","))
            }
        }
    }
}

fn horner<T: Scalar>(coeffs: &[T], x: &T) -> T {
    let mut acc = T::zero();
    for c in coeffs.iter().rev() {
        acc = acc * x.clone() + c.clone();
    }
    acc
}

/// x^e by binary exponentiation; works for any scalar.
fn pow<T: Scalar>(x: &T, mut e: u32) -> T {
    let mut base = x.clone();
    let mut acc = T::one();
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base.clone();
        }
        base = base.clone() * base;
        e >>= 1;
    }
    acc
}

/// Coefficients d_n / (n + shift)! for n = 0, 1, ...
fn factorial_scaled<T: Scalar>(derivs: &[T], shift: usize) -> Vec<T> {
    derivs
        .iter()
        .enumerate()
        .map(|(n, v)| v.clone() / T::from_bigint(&factorial(n + shift)))
        .collect()
}

/// Parameters of the two-parameter family
/// exp(-λ·x^p)·∫₀ˣ exp(μ·t^s) dt with λ, μ ≠ 0 and p, s ≥ 1.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FamilyParams<T> {
    pub lambda: T,
    pub p: u32,
    pub mu: T,
    pub s: u32,
}

impl<T: Scalar> FamilyParams<T> {
    pub fn new(lambda: T, p: u32, mu: T, s: u32) -> Result<Self> {
        if lambda.is_zero() || mu.is_zero() {
            return Err(Error::BadArgument(
                "family parameters require nonzero lambda and mu".into(),
            ));
        }
        if !lambda.is_finite_scalar() || !mu.is_finite_scalar() {
            return Err(Error::NonFinite {
                what: "family parameter".into(),
            });
        }
        if p == 0 || s == 0 {
            return Err(Error::BadArgument(
                "family exponents must be positive integers".into(),
            ));
        }
        Ok(FamilyParams { lambda, p, mu, s })
    }

    /// Parse `LAMBDA,P,MU,S`.
    pub fn parse(text: &str) -> Result<Self> {
        let parts: Vec<&str> = text.split(',').collect();
        if parts.len() != 4 {
            return Err(Error::BadArgument(format!(
                "family takes `LAMBDA,P,MU,S`, got `{text}`"
            )));
        }
        let lambda = T::parse_scalar(parts[0]).map_err(Error::BadArgument)?;
        let mu = T::parse_scalar(parts[2]).map_err(Error::BadArgument)?;
        let p: u32 = parts[1]
            .trim()
            .parse()
            .map_err(|_| Error::BadArgument(format!("bad exponent `{}`", parts[1])))?;
        let s: u32 = parts[3]
            .trim()
            .parse()
            .map_err(|_| Error::BadArgument(format!("bad exponent `{}`", parts[3])))?;
        Self::new(lambda, p, mu, s)
    }
}

impl<T: Scalar> fmt::Display for FamilyParams<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{},{},{}", self.lambda, self.p, self.mu, self.s)
    }
}
