use crate::error::{unsupported, Error, Result};
use crate::fock::{apply_combination, h_elements, multiply, FockState, PairingSpec};
use crate::lattice::{Lattice, LatticeVector};
use crate::series::{int, Rational};

use super::ChargedState;

/// A mode `Γ_α(m)` of the vertex operator of a root `α`.
///
/// `Γ_α(z) = Σ_m Γ_α(m) z^{-m-1}`, so `Γ_α(m)` lowers `L₀` by `m`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VertexMode {
    pub root: LatticeVector,
    pub mode: i64,
}

/// Heisenberg mode `α_n` of `α ∈ L` on `F`; the zero mode multiplies `S ⊗ e^λ` by `(α, λ)`.
pub fn heisenberg_mode(lattice: &Lattice, alpha: &LatticeVector, n: i64, x: &ChargedState) -> Result<ChargedState> {
    lattice.check_charge(alpha)?;
    let pairing = PairingSpec::classical(lattice);
    let mut out = ChargedState::zero(x.palette());
    for (l, s) in x.sectors() {
        let y = if n == 0 {
            s.scale(&int(lattice.inner(alpha, l)?))
        } else {
            apply_combination(alpha.coords(), n, s, &pairing)?
        };
        out.add_sector(l.clone(), y);
    }
    Ok(out)
}

/// `Γ_α(m) x`, from
/// `Γ_α(z)(x ⊗ e^λ) = ε(α,λ) z^{(α,λ)} exp(Σ α_{-n} z^n/n) exp(-Σ α_n z^{-n}/n) x ⊗ e^{α+λ}`.
///
/// `order` bounds the Fock degree of every state produced; needing more is a
/// [`Error::Truncation`].
pub fn vertex_mode_apply(
    lattice: &Lattice,
    alpha: &LatticeVector,
    m: i64,
    x: &ChargedState,
    order: usize,
) -> Result<ChargedState> {
    lattice.check_charge(alpha)?;
    if lattice.norm(alpha)? != 2 {
        return unsupported(format!("{alpha} is not a root"));
    }
    if x.palette() != &crate::fock::Palette::from(lattice) {
        return crate::error::usage("state palette does not match the lattice");
    }
    let pairing = PairingSpec::classical(lattice);
    let mut out = ChargedState::zero(x.palette());
    let mut hs: Vec<FockState> = Vec::new();
    for (lambda, s) in x.sectors() {
        // z-exponent (α,λ) + j - k must equal -m - 1
        let shift = -m - 1 - lattice.inner(alpha, lambda)?;
        let eps = lattice.epsilon(alpha, lambda)?;
        let mut acc = FockState::zero(x.palette());
        let mut e_k = vec![s.clone()];
        for k in 0..=s.max_degree() {
            if k > 0 {
                // k E_k = -Σ_{i=1}^k α_i E_{k-i}
                let mut next = FockState::zero(x.palette());
                for i in 1..=k {
                    next = next.add(&apply_combination(alpha.coords(), i as i64, &e_k[k - i], &pairing)?)?;
                }
                e_k.push(next.scale(&Rational::new((-1).into(), (k as i64).into())));
            }
            let j = k as i64 + shift;
            if j < 0 || e_k[k].is_zero() {
                continue;
            }
            let j = j as usize;
            let needed = e_k[k].max_degree() + j;
            if needed > order {
                return Err(Error::Truncation { needed, available: order });
            }
            if hs.len() <= j {
                hs = h_elements(x.palette(), alpha.coords(), j)?;
            }
            acc = acc.add(&multiply(&hs[j], &e_k[k])?)?;
        }
        if eps < 0 {
            acc = acc.neg();
        }
        out.add_sector(alpha.add(lambda), acc);
    }
    Ok(out)
}
