//! Newton's identities between complete homogeneous and power-sum generators.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::hopf::multiply;
use super::state::FockState;
use crate::error::{usage, Result};
use crate::partitions::{enumerate_partitions, Partition};
use crate::series::{int, Rational};

/// Which family is written in terms of the other.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NewtonDirection {
    /// `h_k` as a polynomial in `p_1, …, p_k`.
    HInP,
    /// `p_k` as a polynomial in `h_1, …, h_k`.
    PInH,
}

/// Polynomial in graded generators `x_1, x_2, …`; the monomial `x_λ = Π x_{λ_i}` is keyed by `λ`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SymPoly {
    terms: BTreeMap<Partition, Rational>,
}

impl SymPoly {
    pub fn zero() -> Self {
        SymPoly::default()
    }

    pub fn one() -> Self {
        Self::generator_power(&Partition::empty(), Rational::one())
    }

    /// The single generator `x_k`.
    pub fn generator(k: usize) -> Self {
        Self::generator_power(&Partition::from_unsorted(vec![k]), Rational::one())
    }

    fn generator_power(lambda: &Partition, c: Rational) -> Self {
        let mut p = SymPoly::zero();
        p.add_term(lambda.clone(), c);
        p
    }

    fn add_term(&mut self, lambda: Partition, c: Rational) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(lambda.clone()).or_insert_with(Rational::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&lambda);
        }
    }

    pub fn coeff(&self, lambda: &Partition) -> Rational {
        self.terms.get(lambda).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Partition, &Rational)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (l, c) in &other.terms {
            out.add_term(l.clone(), c.clone());
        }
        out
    }

    pub fn scale(&self, c: &Rational) -> Self {
        let mut out = SymPoly::zero();
        for (l, d) in &self.terms {
            out.add_term(l.clone(), d * c);
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = SymPoly::zero();
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                let parts: Vec<usize> = a.parts().iter().chain(b.parts()).copied().collect();
                out.add_term(Partition::from_unsorted(parts), ca * cb);
            }
        }
        out
    }

    /// Replaces `x_k` by `values[k - 1]`.
    pub fn substitute(&self, values: &[SymPoly]) -> Result<SymPoly> {
        let mut out = SymPoly::zero();
        for (lambda, c) in &self.terms {
            let mut term = SymPoly::one().scale(c);
            for &k in lambda.parts() {
                let v = values.get(k - 1).ok_or_else(|| {
                    crate::Error::Usage(format!("no value supplied for generator {k}"))
                })?;
                term = term.mul(v);
            }
            out = out.add(&term);
        }
        Ok(out)
    }

    /// Evaluates in the Fock algebra with `x_k ↦ generators[k - 1]`.
    pub fn evaluate(&self, generators: &[FockState]) -> Result<FockState> {
        let Some(first) = generators.first() else {
            return usage("at least one generator is needed to fix the palette");
        };
        let palette = first.palette();
        let mut out = FockState::zero(palette);
        for (lambda, c) in &self.terms {
            let mut term = FockState::vacuum(palette).scale(c);
            for &k in lambda.parts() {
                let g = generators
                    .get(k - 1)
                    .ok_or_else(|| crate::Error::Usage(format!("no value supplied for generator {k}")))?;
                term = multiply(&term, g)?;
            }
            out = out.add(&term)?;
        }
        Ok(out)
    }

    /// Text form with variable name `var`, e.g. `1/2*p1^2 + 1/2*p2`.
    pub fn render(&self, var: &str) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut out = String::new();
        for (i, (lambda, c)) in self.terms.iter().rev().enumerate() {
            let neg = c < &Rational::zero();
            if i == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let a = c.abs();
            let mono: Vec<String> = lambda
                .exponent_form()
                .iter()
                .map(|(part, mult)| {
                    if mult == 1 {
                        format!("{var}{part}")
                    } else {
                        format!("{var}{part}^{mult}")
                    }
                })
                .collect();
            if mono.is_empty() {
                out.push_str(&a.to_string());
            } else {
                if !a.is_one() {
                    out.push_str(&format!("{a}*"));
                }
                out.push_str(&mono.join("*"));
            }
        }
        out
    }
}

impl fmt::Display for SymPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render("x"))
    }
}

/// Polynomials for `k = 1..=n` in the requested direction.
///
/// `HInP` uses `k h_k = Σ_{i=1}^k p_i h_{k-i}`; `PInH` uses
/// `p_k = k h_k - Σ_{i=1}^{k-1} p_i h_{k-i}`.
pub fn newton_convert(direction: NewtonDirection, n: usize) -> Result<Vec<SymPoly>> {
    if n == 0 {
        return usage("newton_convert needs n >= 1");
    }
    let mut out: Vec<SymPoly> = Vec::with_capacity(n);
    match direction {
        NewtonDirection::HInP => {
            // out[k-1] = h_k; h_0 = 1
            for k in 1..=n {
                let mut acc = SymPoly::generator(k);
                for i in 1..k {
                    acc = acc.add(&SymPoly::generator(i).mul(&out[k - i - 1]));
                }
                out.push(acc.scale(&Rational::new(BigInt::one(), BigInt::from(k))));
            }
        }
        NewtonDirection::PInH => {
            // out[k-1] = p_k
            for k in 1..=n {
                let mut acc = SymPoly::generator(k).scale(&int(k as i64));
                for i in 1..k {
                    acc = acc.add(&out[i - 1].mul(&SymPoly::generator(k - i)).scale(&int(-1)));
                }
                out.push(acc);
            }
        }
    }
    Ok(out)
}

/// `z_λ = Π_i i^{a_i} a_i!`.
pub fn z_lambda(lambda: &Partition) -> BigInt {
    lambda
        .exponent_form()
        .iter()
        .fold(BigInt::one(), |acc, (i, a)| {
            let fact: BigInt = (1..=a).map(BigInt::from).product();
            acc * BigInt::from(i).pow(a as u32) * fact
        })
}

/// `h_n = Σ_{λ ⊢ n} p_λ / z_λ`, the closed form of the `HInP` conversion.
pub fn h_from_cycle_index(n: usize) -> SymPoly {
    let mut out = SymPoly::zero();
    for lambda in enumerate_partitions(n) {
        let z = z_lambda(&lambda);
        out.add_term(lambda, Rational::new(BigInt::one(), z));
    }
    out
}
