//! The space `F = S ⊗ ℂ{L}`, lattice vertex-operator modes, the weight-one Lie
//! algebra and the `L₀` character.
//!
//! Two degrees are attached to `x ⊗ e^λ` with `x ∈ S_n`: the `L₀` eigenvalue
//! `½(λ,λ) + n` and `ch₂ = ½(λ,λ) - n`. They always satisfy
//! `l0_eigenvalue + ch2_of = (λ,λ)`.

mod character;
mod charged;
mod lie;
mod modes;

pub use character::{character, level_basis, level_dimensions};
pub use charged::ChargedState;
pub use lie::{weight_one_algebra, WeightOneAlgebra, WeightOneBasis};
pub use modes::{heisenberg_mode, vertex_mode_apply, VertexMode};

use crate::error::Result;
use crate::lattice::{Lattice, LatticeVector};
use crate::series::{int, rat, Rational};

/// `½(λ,λ) + n`.
pub fn l0_eigenvalue(lattice: &Lattice, lambda: &LatticeVector, n: usize) -> Result<Rational> {
    Ok(rat(lattice.norm(lambda)?, 2) + int(n as i64))
}

/// `½(λ,λ) - n`, i.e. `½ c₁·c₁ - c₂` with `c₁ = λ`, `c₂ = n`.
pub fn ch2_of(lattice: &Lattice, lambda: &LatticeVector, n: usize) -> Result<Rational> {
    Ok(rat(lattice.norm(lambda)?, 2) - int(n as i64))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fock::{FockState, Palette};
    use crate::partitions::{Multipartition, Partition};
    use crate::Error;

    fn v(c: &[i64]) -> LatticeVector {
        LatticeVector(c.to_vec())
    }

    #[test]
    fn degree_examples() {
        let a1 = Lattice::a_n(1);
        assert_eq!(l0_eigenvalue(&a1, &v(&[0]), 0).unwrap(), int(0));
        assert_eq!(l0_eigenvalue(&a1, &v(&[1]), 0).unwrap(), int(1));
        assert_eq!(l0_eigenvalue(&a1, &v(&[0]), 1).unwrap(), int(1));
        assert_eq!(ch2_of(&a1, &v(&[0]), 0).unwrap(), int(0));
        assert_eq!(ch2_of(&a1, &v(&[0]), 3).unwrap(), int(-3));
        assert_eq!(ch2_of(&a1, &v(&[1]), 1).unwrap(), int(0));
        let a2 = Lattice::a_n(2);
        for a in -3..=3 {
            for b in -3..=3 {
                for n in 0..5 {
                    let l = v(&[a, b]);
                    let norm = int(a2.norm(&l).unwrap());
                    let l0 = l0_eigenvalue(&a2, &l, n).unwrap();
                    let ch = ch2_of(&a2, &l, n).unwrap();
                    assert_eq!(&l0 + &ch, norm);
                    assert_eq!(ch + int(n as i64) - &norm / int(2), int(0));
                    assert_eq!(l0 - int(n as i64) - &norm / int(2), int(0));
                }
            }
        }
    }

    #[test]
    fn vertex_mode_examples() {
        let a1 = Lattice::a_n(1);
        let alpha = v(&[1]);
        let vac = ChargedState::vacuum(&a1);
        // Γ_α(z)·1 = e^α + O(z): the lowest mode acting nonzero is m = -1
        let low = vertex_mode_apply(&a1, &alpha, -1, &vac, 4).unwrap();
        let e_alpha = ChargedState::pure(&a1, alpha.clone(), FockState::vacuum(&Palette::from(&a1))).unwrap();
        assert_eq!(low, e_alpha);
        for m in 0..4 {
            assert!(vertex_mode_apply(&a1, &alpha, m, &vac, 4).unwrap().is_zero());
        }
        // mode -2 gives α_{-1}·1 ⊗ e^α from the creation exponential alone
        let two = vertex_mode_apply(&a1, &alpha, -2, &vac, 4).unwrap();
        let expected = ChargedState::basis_element(
            &a1,
            alpha.clone(),
            Multipartition::from_components([(0, Partition::new(vec![1]).unwrap())]),
            int(1),
        )
        .unwrap();
        assert_eq!(two, expected);

        // Γ_α(0)(1 ⊗ e^{-α}) = ε(α,-α) α_{-1}·1 ⊗ e^0
        let minus = ChargedState::pure(&a1, alpha.neg(), FockState::vacuum(&Palette::from(&a1))).unwrap();
        let zero_mode = vertex_mode_apply(&a1, &alpha, 0, &minus, 4).unwrap();
        let eps = a1.epsilon(&alpha, &alpha.neg()).unwrap();
        let h = ChargedState::basis_element(
            &a1,
            v(&[0]),
            Multipartition::from_components([(0, Partition::new(vec![1]).unwrap())]),
            int(eps as i64),
        )
        .unwrap();
        assert_eq!(zero_mode, h);

        assert!(matches!(vertex_mode_apply(&a1, &alpha, -3, &vac, 1), Err(Error::Truncation { needed: 2, available: 1 })));
        assert!(matches!(vertex_mode_apply(&a1, &v(&[2]), 0, &vac, 4), Err(Error::Unsupported(_))));
    }

    #[test]
    fn modes_shift_l0() {
        let a2 = Lattice::a_n(2);
        let roots = a2.roots().unwrap();
        for (l, m) in level_basis(&a2, 2).unwrap() {
            let x = ChargedState::basis_element(&a2, l, m, int(1)).unwrap();
            let w = x.l0(&a2).unwrap().unwrap();
            for r in &roots {
                for k in -2..=2 {
                    let y = vertex_mode_apply(&a2, r, k, &x, 6).unwrap();
                    if !y.is_zero() {
                        assert_eq!(y.l0(&a2).unwrap(), Some(&w - int(k)));
                    }
                }
            }
        }
    }

    #[test]
    fn weight_one_dimensions_and_brackets() {
        let a1 = weight_one_algebra(&Lattice::a_n(1), 2).unwrap();
        assert_eq!(a1.dimension(), 3);
        let a2 = weight_one_algebra(&Lattice::a_n(2), 2).unwrap();
        assert_eq!(a2.dimension(), 8);
        for alg in [&a1, &a2] {
            assert!(alg.is_antisymmetric());
            assert!(alg.jacobi_holds());
            assert!(alg.form_is_invariant());
            let cartan = alg.cartan_matrix().unwrap();
            let gram = alg.lattice().gram();
            for (i, row) in cartan.iter().enumerate() {
                for (j, c) in row.iter().enumerate() {
                    assert_eq!(*c, int(gram[i][j]));
                }
            }
        }
        // [h, e^α] = 2 e^α on A1
        let e = a1.basis().iter().position(|b| *b == WeightOneBasis::Root(v(&[1]))).unwrap();
        assert_eq!(a1.bracket(0, e)[e], int(2));
        assert!(matches!(
            weight_one_algebra(&Lattice::new(vec![vec![4]]).unwrap(), 2),
            Err(Error::Unsupported(_))
        ));
    }

    #[test]
    fn weight_one_dimension_is_rank_plus_roots() {
        let d4 = Lattice::new(vec![
            vec![2, -1, 0, 0],
            vec![-1, 2, -1, -1],
            vec![0, -1, 2, 0],
            vec![0, -1, 0, 2],
        ])
        .unwrap();
        for l in [Lattice::a_n(1), Lattice::a_n(2), Lattice::a_n(3), d4] {
            let alg = weight_one_algebra(&l, 2).unwrap();
            assert_eq!(alg.dimension(), l.rank() + l.roots().unwrap().len());
            assert!(alg.is_antisymmetric());
            let ch = character(&l, 1).unwrap();
            assert_eq!(ch.coeff(&[1]), int(alg.dimension() as i64));
        }
    }

    #[test]
    fn character_examples() {
        let zero = Lattice::new(vec![]).unwrap();
        let c0 = character(&zero, 5).unwrap();
        assert_eq!(c0, crate::TruncatedSeries::one(&["q"], 5).unwrap());
        let a1 = Lattice::a_n(1);
        let c = character(&a1, 4).unwrap();
        let coeffs: Vec<_> = (0..=4).map(|n| c.coeff(&[n])).collect();
        assert_eq!(coeffs, [1, 3, 4, 7, 13].map(int));
        for l in [a1, Lattice::a_n(2)] {
            let ch = character(&l, 6).unwrap();
            let dims = level_dimensions(&l, 6).unwrap();
            for (n, d) in dims.iter().enumerate() {
                assert_eq!(ch.coeff(&[n]), int(*d as i64));
            }
        }
    }
}
