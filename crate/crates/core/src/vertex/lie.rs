use num_traits::Zero;
use rayon::prelude::*;

use crate::error::{unsupported, Error, Result};
use crate::fock::{FockState, Palette};
use crate::lattice::{Lattice, LatticeVector};
use crate::partitions::{Multipartition, Partition};
use crate::series::{int, Rational, Scalar};

use super::{heisenberg_mode, vertex_mode_apply, ChargedState};

/// Basis vectors of the conformal-weight-one space.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum WeightOneBasis {
    /// `α^i_{-1} · 1 ⊗ e^0`.
    Cartan(usize),
    /// `1 ⊗ e^α` for a root `α`.
    Root(LatticeVector),
}

impl WeightOneBasis {
    pub fn label(&self) -> String {
        match self {
            WeightOneBasis::Cartan(i) => format!("h{i}"),
            WeightOneBasis::Root(a) => format!("e{a}"),
        }
    }

    pub fn state(&self, lattice: &Lattice) -> Result<ChargedState> {
        match self {
            WeightOneBasis::Cartan(i) => ChargedState::basis_element(
                lattice,
                lattice.zero_vector(),
                Multipartition::from_components([(*i, Partition::new(vec![1])?)]),
                int(1),
            ),
            WeightOneBasis::Root(a) => {
                ChargedState::pure(lattice, a.clone(), FockState::vacuum(&Palette::from(lattice)))
            }
        }
    }
}

/// The Lie algebra on weight-one vectors with bracket `[a, b] = a_(0) b` and
/// invariant form `a_(1) b = (a, b) · 1`.
#[derive(Clone, Debug, PartialEq)]
pub struct WeightOneAlgebra {
    lattice: Lattice,
    basis: Vec<WeightOneBasis>,
    /// `brackets[a][b]` holds the coordinates of `[a, b]`.
    brackets: Vec<Vec<Vec<Rational>>>,
    form: Vec<Vec<Rational>>,
}

/// `a_(n) x` for a weight-one basis vector `a`.
fn basis_mode(
    lattice: &Lattice,
    a: &WeightOneBasis,
    n: i64,
    x: &ChargedState,
    order: usize,
) -> Result<ChargedState> {
    match a {
        WeightOneBasis::Cartan(i) => heisenberg_mode(lattice, &lattice.basis_vector(*i), n, x),
        WeightOneBasis::Root(alpha) => vertex_mode_apply(lattice, alpha, n, x, order),
    }
}

fn not_closed(x: &ChargedState) -> Error {
    Error::Internal(format!("bracket left the weight-one space: {}", x.to_json()))
}

/// Coordinates of a weight-one state in the standard basis.
fn decompose(basis: &[WeightOneBasis], x: &ChargedState) -> Result<Vec<Rational>> {
    let mut coords = vec![Rational::zero(); basis.len()];
    for (lambda, s) in x.sectors() {
        if lambda.is_zero() {
            for (m, c) in s.terms() {
                let idx = match m.gens() {
                    [(color, 1)] => basis.iter().position(|b| b == &WeightOneBasis::Cartan(*color)),
                    _ => None,
                };
                coords[idx.ok_or_else(|| not_closed(x))?] += c;
            }
        } else {
            let idx = basis
                .iter()
                .position(|b| b == &WeightOneBasis::Root(lambda.clone()))
                .ok_or_else(|| not_closed(x))?;
            if s.len() != 1 || s.vacuum_coeff().is_zero() {
                return Err(not_closed(x));
            }
            coords[idx] += s.vacuum_coeff();
        }
    }
    Ok(coords)
}

/// Builds the weight-one algebra of a positive definite even lattice spanned by its roots.
pub fn weight_one_algebra(lattice: &Lattice, order: usize) -> Result<WeightOneAlgebra> {
    if !lattice.is_all_even() || !lattice.is_positive_definite() {
        return unsupported("the weight-one algebra needs a positive definite even lattice");
    }
    if !lattice.spanned_by_roots()? {
        return unsupported("lattice is not spanned by its roots");
    }
    let mut basis: Vec<WeightOneBasis> = (0..lattice.rank()).map(WeightOneBasis::Cartan).collect();
    basis.extend(lattice.roots()?.into_iter().map(WeightOneBasis::Root));
    let states = basis.iter().map(|b| b.state(lattice)).collect::<Result<Vec<_>>>()?;
    let pairs: Vec<(usize, usize)> =
        (0..basis.len()).flat_map(|a| (0..basis.len()).map(move |b| (a, b))).collect();
    let entries: Vec<(Vec<Rational>, Rational)> = pairs
        .par_iter()
        .map(|&(a, b)| {
            let bracket = basis_mode(lattice, &basis[a], 0, &states[b], order)?;
            let pair = basis_mode(lattice, &basis[a], 1, &states[b], order)?;
            let mut value = Rational::zero();
            for (lambda, s) in pair.sectors() {
                if !lambda.is_zero() || s.len() != 1 || s.vacuum_coeff().is_zero() {
                    return Err(Error::Internal("a_(1) b is not a multiple of the vacuum".into()));
                }
                value = s.vacuum_coeff();
            }
            Ok((decompose(&basis, &bracket)?, value))
        })
        .collect::<Result<Vec<_>>>()?;
    let n = basis.len();
    let mut brackets = vec![Vec::with_capacity(n); n];
    let mut form = vec![Vec::with_capacity(n); n];
    for ((a, _), (br, f)) in pairs.iter().zip(entries) {
        brackets[*a].push(br);
        form[*a].push(f);
    }
    Ok(WeightOneAlgebra { lattice: lattice.clone(), basis, brackets, form })
}

impl WeightOneAlgebra {
    pub fn dimension(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[WeightOneBasis] {
        &self.basis
    }

    pub fn lattice(&self) -> &Lattice {
        &self.lattice
    }

    pub fn bracket(&self, a: usize, b: usize) -> &[Rational] {
        &self.brackets[a][b]
    }

    pub fn form(&self) -> &[Vec<Rational>] {
        &self.form
    }

    /// `[x, y]` for coordinate vectors.
    pub fn bracket_vectors(&self, x: &[Rational], y: &[Rational]) -> Vec<Rational> {
        let mut out = vec![Rational::zero(); self.dimension()];
        for (a, xa) in x.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
            for (b, yb) in y.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
                for (k, c) in self.brackets[a][b].iter().enumerate() {
                    if !c.is_zero() {
                        out[k] += xa * yb * c;
                    }
                }
            }
        }
        out
    }

    fn unit(&self, a: usize) -> Vec<Rational> {
        let mut v = vec![Rational::zero(); self.dimension()];
        v[a] = int(1);
        v
    }

    pub fn is_antisymmetric(&self) -> bool {
        let n = self.dimension();
        (0..n).all(|a| {
            (0..n).all(|b| {
                self.brackets[a][b].iter().zip(&self.brackets[b][a]).all(|(x, y)| (x + y).is_zero())
            })
        })
    }

    /// `[a, [b, c]] = [[a, b], c] + [b, [a, c]]` on all basis triples.
    pub fn jacobi_holds(&self) -> bool {
        let n = self.dimension();
        (0..n).all(|a| {
            (0..n).all(|b| {
                (0..n).all(|c| {
                    let lhs = self.bracket_vectors(&self.unit(a), &self.brackets[b][c]);
                    let r1 = self.bracket_vectors(&self.brackets[a][b], &self.unit(c));
                    let r2 = self.bracket_vectors(&self.unit(b), &self.brackets[a][c]);
                    lhs.iter().zip(r1.iter().zip(&r2)).all(|(l, (x, y))| *l == x + y)
                })
            })
        })
    }

    /// `([a, b], c) = (a, [b, c])` on all basis triples.
    pub fn form_is_invariant(&self) -> bool {
        let n = self.dimension();
        let pair = |x: &[Rational], c: usize| -> Rational {
            x.iter().enumerate().map(|(k, xk)| xk * &self.form[k][c]).sum()
        };
        let pair_left = |a: usize, y: &[Rational]| -> Rational {
            y.iter().enumerate().map(|(k, yk)| &self.form[a][k] * yk).sum()
        };
        (0..n).all(|a| {
            (0..n).all(|b| (0..n).all(|c| pair(&self.brackets[a][b], c) == pair_left(a, &self.brackets[b][c])))
        })
    }

    /// `[h_i, e^{α^j}]` read off the table when every basis vector `α^j` is a root:
    /// entry `(i, j)` is the coefficient of `e^{α^j}`.
    pub fn cartan_matrix(&self) -> Option<Vec<Vec<Rational>>> {
        let r = self.lattice.rank();
        let simple: Vec<usize> = (0..r)
            .map(|j| {
                let target = WeightOneBasis::Root(self.lattice.basis_vector(j));
                self.basis.iter().position(|b| *b == target)
            })
            .collect::<Option<_>>()?;
        Some(
            (0..r)
                .map(|i| simple.iter().map(|&sj| self.brackets[i][sj][sj].clone()).collect())
                .collect(),
        )
    }

    /// `{"basis": [...], "brackets": [[a, b, [coeffs]]...], "form": [[...]]}`; only
    /// nonzero brackets are listed.
    pub fn to_json(&self) -> serde_json::Value {
        let basis: Vec<String> = self.basis.iter().map(WeightOneBasis::label).collect();
        let mut brackets = Vec::new();
        for (a, row) in self.brackets.iter().enumerate() {
            for (b, v) in row.iter().enumerate() {
                if v.iter().any(|c| !c.is_zero()) {
                    let coeffs: Vec<serde_json::Value> = v.iter().map(Scalar::to_json).collect();
                    brackets.push(serde_json::json!([a, b, coeffs]));
                }
            }
        }
        let form: Vec<Vec<serde_json::Value>> =
            self.form.iter().map(|r| r.iter().map(Scalar::to_json).collect()).collect();
        serde_json::json!({ "basis": basis, "brackets": brackets, "form": form })
    }
}
