use crate::error::{unsupported, Result};
use crate::fock::{basis, Palette};
use crate::lattice::{Lattice, LatticeVector};
use crate::partitions::Multipartition;
use crate::series::{int, power_of_binomial, TruncatedSeries};

fn check(lattice: &Lattice) -> Result<()> {
    if !lattice.is_all_even() || !lattice.is_positive_definite() {
        return unsupported("characters need a positive definite even lattice");
    }
    Ok(())
}

/// Lattice vectors `λ` with `½(λ,λ) <= level`, zero included, sorted.
fn charges_up_to(lattice: &Lattice, level: usize) -> Result<Vec<LatticeVector>> {
    let mut out = vec![lattice.zero_vector()];
    if lattice.rank() > 0 {
        out.extend(lattice.vectors_up_to_norm(2 * level as i64)?);
    }
    out.sort();
    Ok(out)
}

/// `Σ_λ q^{½(λ,λ)} · Π_{m>=1} (1 - q^m)^{-rank}`, truncated at `q^order`.
pub fn character(lattice: &Lattice, order: usize) -> Result<TruncatedSeries> {
    check(lattice)?;
    let mut theta = TruncatedSeries::zero(&["q"], order)?;
    for l in charges_up_to(lattice, order)? {
        let e = (lattice.norm(&l)? / 2) as usize;
        theta = theta.add(&TruncatedSeries::monomial(&["q"], order, &[e], int(1))?)?;
    }
    let mut out = theta;
    for m in 1..=order {
        out = out.mul(&power_of_binomial(&["q"], order, &[m], -1, -(lattice.rank() as i64))?)?;
    }
    Ok(out)
}

/// Basis `M ⊗ e^λ` of the `L₀ = level` subspace of `F`.
pub fn level_basis(lattice: &Lattice, level: usize) -> Result<Vec<(LatticeVector, Multipartition)>> {
    check(lattice)?;
    let palette = Palette::from(lattice);
    let mut out = Vec::new();
    for l in charges_up_to(lattice, level)? {
        let half = (lattice.norm(&l)? / 2) as usize;
        out.extend(basis(&palette, level - half).into_iter().map(|m| (l.clone(), m)));
    }
    Ok(out)
}

/// `dim F_k` for `k = 0..=order` by direct enumeration.
pub fn level_dimensions(lattice: &Lattice, order: usize) -> Result<Vec<usize>> {
    (0..=order).map(|k| Ok(level_basis(lattice, k)?.len())).collect()
}
