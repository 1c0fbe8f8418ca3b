use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{Rational, Ring};
use crate::error::{usage, Error, Result};

/// Finite sum `Σ c_e q^e` with integer exponents. No zero coefficient is stored.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct LaurentPoly<T> {
    coeffs: BTreeMap<i64, T>,
}

/// Laurent polynomial with integer coefficients, e.g. a quantum integer.
pub type LaurentPolyQ = LaurentPoly<BigInt>;

/// Laurent polynomial with rational coefficients; the `q`-deformed scalar ring.
pub type RationalLaurent = LaurentPoly<Rational>;

impl<T: Ring> LaurentPoly<T> {
    pub fn monomial(exp: i64, c: T) -> Self {
        let mut coeffs = BTreeMap::new();
        if !c.is_zero() {
            coeffs.insert(exp, c);
        }
        LaurentPoly { coeffs }
    }

    pub fn constant(c: T) -> Self {
        Self::monomial(0, c)
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (i64, T)>) -> Self {
        let mut out = Self::zero();
        for (e, c) in terms {
            out.add_term(e, c);
        }
        out
    }

    fn add_term(&mut self, exp: i64, c: T) {
        if c.is_zero() {
            return;
        }
        let slot = self.coeffs.entry(exp).or_insert_with(T::zero);
        let sum = std::mem::replace(slot, T::zero()) + c;
        if sum.is_zero() {
            self.coeffs.remove(&exp);
        } else {
            *slot = sum;
        }
    }

    pub fn coeff(&self, exp: i64) -> T {
        self.coeffs.get(&exp).cloned().unwrap_or_else(T::zero)
    }

    /// Terms in increasing exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &T)> {
        self.coeffs.iter().map(|(e, c)| (*e, c))
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn min_exp(&self) -> Option<i64> {
        self.coeffs.keys().next().copied()
    }

    pub fn max_exp(&self) -> Option<i64> {
        self.coeffs.keys().next_back().copied()
    }

    /// The value when the polynomial has no `q`-dependence.
    pub fn as_constant(&self) -> Option<T> {
        match self.coeffs.len() {
            0 => Some(T::zero()),
            1 => self.coeffs.get(&0).cloned(),
            _ => None,
        }
    }

    /// Image under `q ↦ q^-1`.
    pub fn invert_q(&self) -> Self {
        LaurentPoly {
            coeffs: self.coeffs.iter().map(|(e, c)| (-e, c.clone())).collect(),
        }
    }

    /// Invariant under `q ↦ q^-1`.
    pub fn is_palindromic(&self) -> bool {
        *self == self.invert_q()
    }

    pub fn scale(&self, c: &T) -> Self {
        Self::from_terms(self.coeffs.iter().map(|(e, x)| (*e, x.clone() * c.clone())))
    }

    /// Sum of coefficients, i.e. the value at `q = 1`.
    pub fn at_one(&self) -> T {
        self.coeffs.values().cloned().fold(T::zero(), |a, b| a + b)
    }
}

impl LaurentPolyQ {
    pub fn to_rational(&self) -> RationalLaurent {
        LaurentPoly {
            coeffs: self
                .coeffs
                .iter()
                .map(|(e, c)| (*e, Rational::from_integer(c.clone())))
                .collect(),
        }
    }

    pub fn eval_at(&self, q: &Rational) -> Result<Rational> {
        self.to_rational().eval_at(q)
    }

    /// Exact quotient `self / divisor`, or `None` when the division leaves a remainder.
    pub fn div_exact(&self, divisor: &Self) -> Option<Self> {
        let (d_lo, d_hi) = (divisor.min_exp()?, divisor.max_exp()?);
        let lead = divisor.coeff(d_hi);
        let mut rem = self.clone();
        let mut quot = LaurentPolyQ::zero();
        while let Some(r_hi) = rem.max_exp() {
            let r_lo = rem.min_exp().unwrap_or(r_hi);
            if r_hi - r_lo < d_hi - d_lo {
                return None;
            }
            let (c, r) = rem.coeff(r_hi).div_rem(&lead);
            if !r.is_zero() {
                return None;
            }
            let shift = r_hi - d_hi;
            let step = LaurentPoly::monomial(shift, c);
            rem = rem - step.clone() * divisor.clone();
            quot = quot + step;
        }
        Some(quot)
    }
}

impl RationalLaurent {
    pub fn eval_at(&self, q: &Rational) -> Result<Rational> {
        if q.is_zero() && self.min_exp().is_some_and(|e| e < 0) {
            return Err(Error::Usage("cannot evaluate a negative power of q at q = 0".into()));
        }
        let mut acc = Rational::zero();
        for (e, c) in self.terms() {
            let p = if e >= 0 {
                num_traits::pow(q.clone(), e as usize)
            } else {
                num_traits::pow(q.recip(), (-e) as usize)
            };
            acc += c * p;
        }
        Ok(acc)
    }
}

/// The quantum integer `[n] = (q^n - q^-n)/(q - q^-1) = q^{n-1} + q^{n-3} + … + q^{1-n}`.
pub fn q_integer(n: i64) -> Result<LaurentPolyQ> {
    if n <= 0 {
        return usage(format!("q_integer needs n >= 1, got {n}"));
    }
    Ok(LaurentPoly::from_terms(
        (0..n).map(|j| (n - 1 - 2 * j, BigInt::one())),
    ))
}

impl<T: Ring> Zero for LaurentPoly<T> {
    fn zero() -> Self {
        LaurentPoly { coeffs: BTreeMap::new() }
    }

    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
}

impl<T: Ring> One for LaurentPoly<T> {
    fn one() -> Self {
        Self::constant(T::one())
    }
}

impl<T: Ring> Add for LaurentPoly<T> {
    type Output = Self;

    fn add(mut self, rhs: Self) -> Self {
        for (e, c) in rhs.coeffs {
            self.add_term(e, c);
        }
        self
    }
}

impl<T: Ring> Sub for LaurentPoly<T> {
    type Output = Self;

    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl<T: Ring> Neg for LaurentPoly<T> {
    type Output = Self;

    fn neg(self) -> Self {
        LaurentPoly {
            coeffs: self.coeffs.into_iter().map(|(e, c)| (e, -c)).collect(),
        }
    }
}

impl<T: Ring> Mul for LaurentPoly<T> {
    type Output = Self;

    fn mul(self, rhs: Self) -> Self {
        let mut out = Self::zero();
        for (a, x) in &self.coeffs {
            for (b, y) in &rhs.coeffs {
                out.add_term(a + b, x.clone() * y.clone());
            }
        }
        out
    }
}

impl<T: Ring + fmt::Display + Signed> fmt::Display for LaurentPoly<T> {
    /// Highest power of `q` first, e.g. `q^2 + 1 + q^-2`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        for (i, (e, c)) in self.coeffs.iter().rev().enumerate() {
            let mag = c.abs();
            if i == 0 {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            match (*e, mag.is_one()) {
                (0, _) => write!(f, "{mag}")?,
                (1, true) => write!(f, "q")?,
                (1, false) => write!(f, "{mag}*q")?,
                (e, true) => write!(f, "q^{e}")?,
                (e, false) => write!(f, "{mag}*q^{e}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::int;

    fn poly(terms: &[(i64, i64)]) -> LaurentPolyQ {
        LaurentPoly::from_terms(terms.iter().map(|&(e, c)| (e, BigInt::from(c))))
    }

    #[test]
    fn q_integer_small_values() {
        assert_eq!(q_integer(1).unwrap(), poly(&[(0, 1)]));
        assert_eq!(q_integer(2).unwrap(), poly(&[(1, 1), (-1, 1)]));
        assert_eq!(q_integer(3).unwrap(), poly(&[(2, 1), (0, 1), (-2, 1)]));
        assert!(q_integer(0).is_err());
        assert!(q_integer(-4).is_err());
    }

    #[test]
    fn q_integer_three_by_long_division() {
        // (q^3 - q^-3) / (q - q^-1)
        let num = poly(&[(3, 1), (-3, -1)]);
        let den = poly(&[(1, 1), (-1, -1)]);
        assert_eq!(num.div_exact(&den).unwrap(), q_integer(3).unwrap());
    }

    #[test]
    fn q_integer_symmetric_and_counts_at_one() {
        for n in 1..=50 {
            let p = q_integer(n).unwrap();
            assert!(p.is_palindromic(), "[{n}] not palindromic");
            assert_eq!(p.at_one(), BigInt::from(n));
            assert_eq!(p.eval_at(&int(1)).unwrap(), int(n));
            assert_eq!(p.len() as i64, n);
        }
    }

    #[test]
    fn div_exact_detects_remainder() {
        let num = poly(&[(2, 1), (0, 1)]);
        let den = poly(&[(1, 1), (0, 1)]);
        assert!(num.div_exact(&den).is_none());
        assert!(num.div_exact(&poly(&[(0, 2)])).is_none());
        assert_eq!(num.div_exact(&poly(&[(0, 1)])).unwrap(), num);
    }

    #[test]
    fn display_orders_high_to_low() {
        assert_eq!(q_integer(3).unwrap().to_string(), "q^2 + 1 + q^-2");
        assert_eq!(poly(&[(1, -2), (-1, 3)]).to_string(), "-2*q + 3*q^-1");
        assert_eq!(LaurentPolyQ::zero().to_string(), "0");
    }

    #[test]
    fn eval_at_rational_q() {
        let p = q_integer(2).unwrap();
        assert_eq!(p.eval_at(&int(2)).unwrap(), crate::series::rat(5, 2));
        assert!(p.eval_at(&int(0)).is_err());
    }
}
