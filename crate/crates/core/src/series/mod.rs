//! Exact scalars, Laurent polynomials in `q` and truncated power series.
//!
//! Every coefficient in this crate is exact: [`Rational`] for ordinary
//! values and [`LaurentPoly`] once a `q`-deformation is switched on.

mod laurent;
mod truncated;

use std::fmt::Debug;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

pub use laurent::{q_integer, LaurentPoly, LaurentPolyQ, RationalLaurent};
pub use truncated::{binomial_power, power_of_binomial, TruncatedSeries};

/// Arbitrary-precision rational number, always kept in lowest terms.
pub type Rational = BigRational;

/// Commutative ring with owned arithmetic; blanket-implemented.
pub trait Ring:
    Clone
    + PartialEq
    + Debug
    + Send
    + Sync
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
}

impl<T> Ring for T where
    T: Clone
        + PartialEq
        + Debug
        + Send
        + Sync
        + Zero
        + One
        + Add<Output = T>
        + Sub<Output = T>
        + Mul<Output = T>
        + Neg<Output = T>
{
}

/// Coefficient ring of Fock-space vectors.
///
/// Plain computations run over [`Rational`]; `q`-deformed pairings need
/// [`RationalLaurent`] so that values like `q + q^-1` stay symbolic.
pub trait Scalar: Ring {
    fn from_rational(r: &Rational) -> Self;

    /// Embeds an integer Laurent polynomial, failing if the ring cannot hold it.
    fn from_q_laurent(p: &LaurentPolyQ) -> Result<Self>;

    /// Scalar specialised at a rational value of `q`.
    fn eval_q(&self, q: &Rational) -> Result<Rational>;

    fn to_json(&self) -> serde_json::Value;

    fn from_json(v: &serde_json::Value) -> Result<Self>;

    fn from_int(n: i64) -> Self {
        Self::from_rational(&Rational::from_integer(BigInt::from(n)))
    }
}

impl Scalar for Rational {
    fn from_rational(r: &Rational) -> Self {
        r.clone()
    }

    fn from_q_laurent(p: &LaurentPolyQ) -> Result<Self> {
        match p.as_constant() {
            Some(c) => Ok(Rational::from_integer(c)),
            None => Err(Error::Unsupported(format!(
                "value {p} depends on q; use Laurent coefficients or evaluate at a rational q"
            ))),
        }
    }

    fn eval_q(&self, _q: &Rational) -> Result<Rational> {
        Ok(self.clone())
    }

    fn to_json(&self) -> serde_json::Value {
        serde_json::Value::String(self.to_string())
    }

    fn from_json(v: &serde_json::Value) -> Result<Self> {
        match v {
            serde_json::Value::String(s) => parse_rational(s),
            serde_json::Value::Number(n) => parse_rational(&n.to_string()),
            other => Err(Error::Parse(format!("expected a rational, got {other}"))),
        }
    }
}

impl Scalar for RationalLaurent {
    fn from_rational(r: &Rational) -> Self {
        LaurentPoly::constant(r.clone())
    }

    fn from_q_laurent(p: &LaurentPolyQ) -> Result<Self> {
        Ok(p.to_rational())
    }

    fn eval_q(&self, q: &Rational) -> Result<Rational> {
        self.eval_at(q)
    }

    fn to_json(&self) -> serde_json::Value {
        let map = self
            .terms()
            .map(|(e, c)| (e.to_string(), serde_json::Value::String(c.to_string())))
            .collect::<serde_json::Map<_, _>>();
        serde_json::Value::Object(map)
    }

    fn from_json(v: &serde_json::Value) -> Result<Self> {
        match v {
            serde_json::Value::Object(map) => {
                let mut out = LaurentPoly::zero();
                for (k, c) in map {
                    let e: i64 = k
                        .parse()
                        .map_err(|_| Error::Parse(format!("bad q exponent {k:?}")))?;
                    out = out + LaurentPoly::monomial(e, Rational::from_json(c)?);
                }
                Ok(out)
            }
            other => Ok(LaurentPoly::constant(Rational::from_json(other)?)),
        }
    }
}

/// Parses `"p/q"` or `"p"` into a rational in lowest terms.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let parsed = match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad_rational(s))?;
            let d: BigInt = d.trim().parse().map_err(|_| bad_rational(s))?;
            if d.is_zero() {
                return Err(Error::Parse(format!("zero denominator in {s:?}")));
            }
            Rational::new(n, d)
        }
        None => Rational::from_integer(s.parse().map_err(|_| bad_rational(s))?),
    };
    Ok(parsed)
}

fn bad_rational(s: &str) -> Error {
    Error::Parse(format!("not a rational number: {s:?}"))
}

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}
