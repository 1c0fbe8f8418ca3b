//! Heisenberg action, commutators and group-like elements.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::Zero;

use super::hopf::inner_product;
use super::pairing::{PairingKind, PairingSpec};
use super::state::{FockState, FockVector, OperatorSymbol, Palette};
use crate::error::{unsupported, usage, Result};
use crate::series::{Rational, RationalLaurent, Scalar, TruncatedSeries};

fn check_pairing(palette: &Palette, pairing: &PairingSpec) -> Result<()> {
    if pairing.colors() != palette.len() {
        return usage(format!(
            "pairing has {} colors but the palette has {}",
            pairing.colors(),
            palette.len()
        ));
    }
    Ok(())
}

/// Action of `v^i_n` on a Fock vector.
///
/// Creation modes multiply by the generator; annihilation modes act as the
/// (super-)derivation with `v^i_n(v^j_{-m}) = δ_{nm} (v^i_n, v^j_n)`.
pub fn apply<R: Scalar>(
    op: OperatorSymbol,
    x: &FockVector<R>,
    pairing: &PairingSpec,
) -> Result<FockVector<R>> {
    OperatorSymbol::new(op.color, op.mode)?;
    x.palette().check_color(op.color)?;
    check_pairing(x.palette(), pairing)?;
    let n = op.mode.unsigned_abs() as usize;
    if op.is_creation() {
        Ok(x.create(op.color, n))
    } else {
        let row: Vec<R> = pairing.row(op.color, n)?;
        Ok(x.annihilate(op.color, n, |j| row[j].clone()))
    }
}

/// `Σ_i v_i · α^i_mode` applied to `x`.
pub fn apply_combination<R: Scalar>(
    v: &[i64],
    mode: i64,
    x: &FockVector<R>,
    pairing: &PairingSpec,
) -> Result<FockVector<R>> {
    if v.len() != x.palette().len() {
        return usage("combination length does not match the palette");
    }
    let mut out = FockVector::zero(x.palette());
    for (i, &c) in v.iter().enumerate() {
        if c != 0 {
            let term = apply(OperatorSymbol::new(i, mode)?, x, pairing)?;
            out.add_assign_unchecked(&term.scale(&R::from_int(c)));
        }
    }
    Ok(out)
}

/// Both sides of a Heisenberg relation on a given vector.
#[derive(Clone, Debug, PartialEq)]
pub struct CommutatorCheck<R> {
    /// `v^i_n v^j_m x ∓ v^j_m v^i_n x` (anticommutator when both colors are odd).
    pub actual: FockVector<R>,
    /// `δ_{n,-m}` times the generator pairing, times `x`.
    pub predicted: FockVector<R>,
}

impl<R: Scalar> CommutatorCheck<R> {
    pub fn holds(&self) -> bool {
        self.actual == self.predicted
    }
}

pub fn commutator_check<R: Scalar>(
    i: usize,
    j: usize,
    n: i64,
    m: i64,
    x: &FockVector<R>,
    pairing: &PairingSpec,
) -> Result<CommutatorCheck<R>> {
    let a = OperatorSymbol::new(i, n)?;
    let b = OperatorSymbol::new(j, m)?;
    let palette = x.palette();
    palette.check_color(i)?;
    palette.check_color(j)?;
    let anti = palette.is_odd(i) && palette.is_odd(j);
    let ab = apply(a, &apply(b, x, pairing)?, pairing)?;
    let ba = apply(b, &apply(a, x, pairing)?, pairing)?;
    let actual = if anti { ab.add(&ba)? } else { ab.sub(&ba)? };
    let predicted = if n + m != 0 {
        FockVector::zero(palette)
    } else if n > 0 {
        x.scale(&pairing.value::<R>(i, j, n as usize)?)
    } else {
        let v: R = pairing.value(j, i, m as usize)?;
        x.scale(&if anti { v } else { -v })
    };
    Ok(CommutatorCheck { actual, predicted })
}

/// All of `h^v_0, …, h^v_n`, the homogeneous pieces of `exp(Σ_{m>=1} v_{-m} t^m / m) · 1`.
///
/// Uses `k h_k = Σ_{m=1}^k v_{-m} h_{k-m}`.
pub fn h_elements(palette: &Palette, v: &[i64], n: usize) -> Result<Vec<FockState>> {
    if v.len() != palette.len() {
        return usage("color combination length does not match the palette");
    }
    if v.iter().enumerate().any(|(i, &c)| c != 0 && palette.is_odd(i)) {
        return unsupported("group-like elements need a combination of even colors");
    }
    let mut hs = vec![FockState::vacuum(palette)];
    for k in 1..=n {
        let mut acc = FockState::zero(palette);
        for m in 1..=k {
            for (i, &c) in v.iter().enumerate() {
                if c != 0 {
                    acc.add_assign_unchecked(&hs[k - m].create(i, m).scale(&crate::series::int(c)));
                }
            }
        }
        hs.push(acc.scale(&Rational::new(1.into(), BigInt::from(k))));
    }
    Ok(hs)
}

/// `h^v_n`, with `h^v_0 = 1`.
pub fn h_element(palette: &Palette, v: &[i64], n: usize) -> Result<FockState> {
    Ok(h_elements(palette, v, n)?.pop().expect("h_elements returns n + 1 entries"))
}

/// `(h^v_n, h^w_m)` for all `n, m <= order`, computed from the Fock model.
pub fn hh_pairing_table<R: Scalar>(
    pairing: &PairingSpec,
    v: &[i64],
    w: &[i64],
    order: usize,
) -> Result<BTreeMap<(usize, usize), R>> {
    let palette = Palette::even(pairing.colors());
    let lift = |s: &FockState| s.map_coeffs(|c| Ok(R::from_rational(c)));
    let hv = h_elements(&palette, v, order)?.iter().map(lift).collect::<Result<Vec<_>>>()?;
    let hw = h_elements(&palette, w, order)?.iter().map(lift).collect::<Result<Vec<_>>>()?;
    let mut out = BTreeMap::new();
    for (n, x) in hv.iter().enumerate() {
        for (m, y) in hw.iter().enumerate() {
            out.insert((n, m), inner_product(x, y, pairing)?);
        }
    }
    Ok(out)
}

/// Two generators `v, w` with `(v, v) = (w, w) = 0` and `(v, w) = k`.
fn hyperbolic_pair(kind: PairingKind, k: i64) -> Result<PairingSpec> {
    PairingSpec::new(kind, vec![vec![0, k], vec![k, 0]])
}

/// `Σ (h^v_n, h^w_m) t^n s^m` for `(v, w) = k`, truncated at `order`.
///
/// Only rational-valued pairings are accepted; see [`hh_pairing_series_q`].
pub fn hh_pairing_series(k: i64, order: usize, kind: PairingKind) -> Result<TruncatedSeries> {
    if let PairingKind::QDeformed(_) = kind {
        return unsupported("q-deformed pairings are Laurent-valued; use hh_pairing_series_q");
    }
    let table: BTreeMap<(usize, usize), Rational> =
        hh_pairing_table(&hyperbolic_pair(kind, k)?, &[1, 0], &[0, 1], order)?;
    TruncatedSeries::from_terms(
        &["t", "s"],
        order,
        table.into_iter().filter(|(_, c)| !c.is_zero()).map(|((n, m), c)| (vec![n, m], c)),
    )
}

/// The `q`-deformed table `(h^v_n, h^w_m)` at level `c`, keyed by `(n, m)`.
pub fn hh_pairing_series_q(
    k: i64,
    order: usize,
    c: u32,
) -> Result<BTreeMap<(usize, usize), RationalLaurent>> {
    let mut table = hh_pairing_table(&hyperbolic_pair(PairingKind::QDeformed(c), k)?, &[1, 0], &[0, 1], order)?;
    table.retain(|_, v: &mut RationalLaurent| !v.is_zero());
    Ok(table)
}

/// Homogeneous components of `x`, keyed by degree.
pub fn degree<R: Scalar>(x: &FockVector<R>) -> BTreeMap<usize, FockVector<R>> {
    x.degree_components()
}

/// `r_n^v = v_{-n} · 1`, the power-sum generator attached to `v`.
pub fn power_sum_element(palette: &Palette, v: &[i64], n: usize) -> Result<FockState> {
    if n == 0 {
        return usage("power-sum generators start at degree 1");
    }
    let pairing = PairingSpec::new(PairingKind::Classical, vec![vec![0; palette.len()]; palette.len()])?;
    apply_combination(v, -(n as i64), &FockState::vacuum(palette), &pairing)
}
