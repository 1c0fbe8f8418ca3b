//! Integral lattices with a symmetric Gram matrix, root enumeration, the
//! bimultiplicative sign cocycle and the twisted group algebra `ℂ{L}`.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Roots;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{unsupported, usage, Error, Result};
use crate::linalg;
use crate::series::Rational;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn is_odd(self) -> bool {
        self == Parity::Odd
    }
}

/// A lattice given by its Gram matrix on a fixed basis `α^1 … α^k`.
///
/// Each basis generator carries a parity; odd generators only enter the Fock
/// factor as exterior variables, never as group-algebra labels.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Lattice {
    gram: Vec<Vec<i64>>,
    parity: Vec<Parity>,
}

/// On-disk form: `{"rank": k, "gram": [[…]], "parity": ["even"|"odd", …]}`.
///
/// `parity` defaults to all-even. `h0_h4_summand` appends a hyperbolic plane
/// of two even generators orthogonal to everything else.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LatticeDoc {
    pub rank: usize,
    pub gram: Vec<Vec<i64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub parity: Option<Vec<Parity>>,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub h0_h4_summand: bool,
}

impl Lattice {
    /// All-even lattice. Validates symmetry, even diagonal and nondegeneracy.
    pub fn new(gram: Vec<Vec<i64>>) -> Result<Self> {
        let n = gram.len();
        Self::with_parity(gram, vec![Parity::Even; n])
    }

    pub fn with_parity(gram: Vec<Vec<i64>>, parity: Vec<Parity>) -> Result<Self> {
        let n = gram.len();
        if parity.len() != n {
            return usage(format!("parity list has {} entries for rank {n}", parity.len()));
        }
        for (i, row) in gram.iter().enumerate() {
            if row.len() != n {
                return usage(format!("gram row {i} has length {}, expected {n}", row.len()));
            }
            for (j, &x) in row.iter().enumerate() {
                if x != gram[j][i] {
                    return usage(format!("gram matrix is not symmetric at ({i},{j})"));
                }
                if x != 0 && parity[i] != parity[j] {
                    return usage(format!(
                        "gram entry ({i},{j}) pairs an even with an odd generator"
                    ));
                }
            }
            if parity[i] == Parity::Even && row[i] % 2 != 0 {
                return usage(format!("even generator {i} has odd norm {}", row[i]));
            }
        }
        if linalg::determinant(&gram).is_zero() {
            return usage("gram matrix is degenerate");
        }
        Ok(Lattice { gram, parity })
    }

    pub fn from_doc(doc: &LatticeDoc) -> Result<Self> {
        if doc.gram.len() != doc.rank {
            return Err(Error::Parse(format!(
                "rank {} but gram has {} rows",
                doc.rank,
                doc.gram.len()
            )));
        }
        let mut gram = doc.gram.clone();
        let mut parity = doc.parity.clone().unwrap_or_else(|| vec![Parity::Even; doc.rank]);
        if doc.h0_h4_summand {
            let n = gram.len();
            for row in &mut gram {
                row.extend([0, 0]);
            }
            let mut a = vec![0; n + 2];
            a[n + 1] = 1;
            let mut b = vec![0; n + 2];
            b[n] = 1;
            gram.push(a);
            gram.push(b);
            parity.extend([Parity::Even, Parity::Even]);
        }
        Self::with_parity(gram, parity)
    }

    pub fn to_doc(&self) -> LatticeDoc {
        LatticeDoc {
            rank: self.rank(),
            gram: self.gram.clone(),
            parity: Some(self.parity.clone()),
            h0_h4_summand: false,
        }
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let doc: LatticeDoc =
            serde_json::from_str(s).map_err(|e| Error::Parse(format!("lattice JSON: {e}")))?;
        Self::from_doc(&doc)
    }

    /// Cartan matrix of type `A_n`.
    pub fn a_n(n: usize) -> Self {
        let gram = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| match i.abs_diff(j) {
                        0 => 2,
                        1 => -1,
                        _ => 0,
                    })
                    .collect()
            })
            .collect();
        Lattice::new(gram).expect("A_n Cartan matrix is a valid lattice")
    }

    pub fn rank(&self) -> usize {
        self.gram.len()
    }

    pub fn gram(&self) -> &[Vec<i64>] {
        &self.gram
    }

    pub fn parity(&self) -> &[Parity] {
        &self.parity
    }

    pub fn is_all_even(&self) -> bool {
        self.parity.iter().all(|p| *p == Parity::Even)
    }

    pub fn determinant(&self) -> BigInt {
        linalg::determinant(&self.gram)
    }

    pub fn is_positive_definite(&self) -> bool {
        linalg::is_positive_definite(&self.gram)
    }

    pub fn basis_vector(&self, i: usize) -> LatticeVector {
        let mut coords = vec![0; self.rank()];
        coords[i] = 1;
        LatticeVector(coords)
    }

    pub fn zero_vector(&self) -> LatticeVector {
        LatticeVector(vec![0; self.rank()])
    }

    fn check(&self, v: &LatticeVector) -> Result<()> {
        if v.0.len() != self.rank() {
            return usage(format!(
                "vector of length {} used in a rank-{} lattice",
                v.0.len(),
                self.rank()
            ));
        }
        Ok(())
    }

    /// Rejects vectors with a nonzero coordinate on an odd generator.
    pub fn check_charge(&self, v: &LatticeVector) -> Result<()> {
        self.check(v)?;
        if v.0.iter().zip(&self.parity).any(|(x, p)| *x != 0 && p.is_odd()) {
            return unsupported(format!("{v} has a component along an odd generator"));
        }
        Ok(())
    }

    /// `(λ, μ) = λᵀ G μ`.
    pub fn inner(&self, a: &LatticeVector, b: &LatticeVector) -> Result<i64> {
        self.check(a)?;
        self.check(b)?;
        Ok(self.inner_unchecked(a, b))
    }

    pub(crate) fn inner_unchecked(&self, a: &LatticeVector, b: &LatticeVector) -> i64 {
        let mut acc = 0;
        for (i, x) in a.0.iter().enumerate() {
            if *x == 0 {
                continue;
            }
            for (j, y) in b.0.iter().enumerate() {
                acc += x * self.gram[i][j] * y;
            }
        }
        acc
    }

    pub fn norm(&self, v: &LatticeVector) -> Result<i64> {
        self.inner(v, v)
    }

    /// Every nonzero vector with `(v, v) <= bound`, for positive definite lattices.
    ///
    /// Enumeration walks coordinates from last to first using an exact square
    /// completion of the form, so each partial sum bounds the next coordinate.
    pub fn vectors_up_to_norm(&self, bound: i64) -> Result<Vec<LatticeVector>> {
        let sc = linalg::complete_squares(&self.gram)
            .filter(|_| self.is_positive_definite())
            .ok_or_else(|| Error::Unsupported("lattice is not positive definite".into()))?;
        let n = self.rank();
        let mut out = Vec::new();
        let mut x = vec![0i64; n];
        let budget = Rational::from_integer(BigInt::from(bound));
        enumerate_level(&sc, n, &mut x, budget, &mut out);
        out.retain(|v| v.iter().any(|c| *c != 0));
        out.sort();
        Ok(out.into_iter().map(LatticeVector).collect())
    }

    /// Roots: all `α` with `(α, α) = 2`, sorted.
    pub fn roots(&self) -> Result<Vec<LatticeVector>> {
        if !self.is_positive_definite() {
            return unsupported("roots need a positive definite lattice");
        }
        let mut v = self.vectors_up_to_norm(2)?;
        v.retain(|a| self.inner_unchecked(a, a) == 2);
        Ok(v)
    }

    /// The sign `ε(α, β) = (-1)^{Σ_{i>j} a_i b_j G_ij}`: the bimultiplicative
    /// extension of `ε(α^i, α^j) = 1` for `i <= j` and `(-1)^{G_ij}` for `i > j`.
    pub fn epsilon(&self, a: &LatticeVector, b: &LatticeVector) -> Result<i8> {
        self.check(a)?;
        self.check(b)?;
        Ok(self.epsilon_unchecked(a, b))
    }

    pub(crate) fn epsilon_unchecked(&self, a: &LatticeVector, b: &LatticeVector) -> i8 {
        let mut acc = 0i64;
        for i in 0..self.rank() {
            for j in 0..i {
                acc += a.0[i] * b.0[j] * self.gram[i][j];
            }
        }
        if acc.rem_euclid(2) == 0 {
            1
        } else {
            -1
        }
    }

    /// `e^α · e^β = ε(α, β) e^{α+β}` in the twisted group algebra.
    pub fn group_mul(&self, a: &GroupElement, b: &GroupElement) -> Result<GroupElement> {
        self.check_charge(&a.label)?;
        self.check_charge(&b.label)?;
        let eps = self.epsilon_unchecked(&a.label, &b.label);
        Ok(GroupElement { sign: a.sign * b.sign * eps, label: a.label.add(&b.label) })
    }

    /// Whether the `ℤ`-span of the roots is the whole lattice.
    pub fn spanned_by_roots(&self) -> Result<bool> {
        let roots = self.roots()?;
        if self.rank() == 0 {
            return Ok(true);
        }
        let rows: Vec<Vec<i64>> = roots.iter().map(|r| r.0.clone()).collect();
        let basis = linalg::integer_row_basis(&rows);
        if basis.len() != self.rank() {
            return Ok(false);
        }
        Ok(linalg::determinant(&basis).abs() == BigInt::from(1))
    }
}

fn enumerate_level(
    sc: &linalg::SquareCompletion,
    level: usize,
    x: &mut Vec<i64>,
    budget: Rational,
    out: &mut Vec<Vec<i64>>,
) {
    if level == 0 {
        out.push(x.clone());
        return;
    }
    let i = level - 1;
    let n = x.len();
    // centre c = Σ_{j>i} mu[i][j] x_j ; need d_i (x_i + c)^2 <= budget
    let mut c = Rational::zero();
    for j in i + 1..n {
        c += &sc.mu[i][j] * Rational::from_integer(BigInt::from(x[j]));
    }
    let radius_sq = &budget / &sc.d[i];
    let r = radius_sq.floor().to_integer().to_u64().unwrap_or(0).sqrt() as i64 + 1;
    let centre = (-&c).round().to_integer().to_i64().unwrap_or(0);
    for xi in centre - r..=centre + r {
        let shifted = Rational::from_integer(BigInt::from(xi)) + &c;
        let used = &sc.d[i] * &shifted * &shifted;
        if used <= budget {
            x[i] = xi;
            enumerate_level(sc, i, x, &budget - used, out);
        }
    }
    x[i] = 0;
}

/// Integer coordinates of a lattice vector in the Gram basis.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct LatticeVector(pub Vec<i64>);

impl LatticeVector {
    pub fn coords(&self) -> &[i64] {
        &self.0
    }

    pub fn add(&self, other: &Self) -> Self {
        LatticeVector(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn neg(&self) -> Self {
        LatticeVector(self.0.iter().map(|a| -a).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|x| *x == 0)
    }
}

impl fmt::Debug for LatticeVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for LatticeVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(i64::to_string).collect();
        write!(f, "[{}]", parts.join(","))
    }
}

/// Signed basis element `±e^λ` of `ℂ{L}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupElement {
    pub sign: i8,
    pub label: LatticeVector,
}

impl GroupElement {
    pub fn new(label: LatticeVector) -> Self {
        GroupElement { sign: 1, label }
    }
}
