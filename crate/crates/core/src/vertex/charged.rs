use std::collections::BTreeMap;

use num_bigint::BigInt;

use crate::error::{usage, Error, Result};
use crate::fock::{FockState, Palette};
use crate::lattice::{Lattice, LatticeVector};
use crate::partitions::Multipartition;
use crate::series::Rational;

/// Element of `F = S ⊗ ℂ{L}`: one Fock state per lattice sector `S ⊗ e^λ`.
#[derive(Clone, Debug, PartialEq)]
pub struct ChargedState {
    palette: Palette,
    sectors: BTreeMap<LatticeVector, FockState>,
}

impl ChargedState {
    pub fn zero(palette: &Palette) -> Self {
        ChargedState { palette: palette.clone(), sectors: BTreeMap::new() }
    }

    /// `1 ⊗ e^0`.
    pub fn vacuum(lattice: &Lattice) -> Self {
        Self::pure(lattice, lattice.zero_vector(), FockState::vacuum(&Palette::from(lattice)))
            .expect("zero charge is always valid")
    }

    /// `x ⊗ e^λ`.
    pub fn pure(lattice: &Lattice, lambda: LatticeVector, x: FockState) -> Result<Self> {
        lattice.check_charge(&lambda)?;
        let palette = Palette::from(lattice);
        if x.palette() != &palette {
            return usage("Fock state palette does not match the lattice");
        }
        let mut out = Self::zero(&palette);
        out.add_sector(lambda, x);
        Ok(out)
    }

    /// `c · M ⊗ e^λ` for a single monomial `M`.
    pub fn basis_element(
        lattice: &Lattice,
        lambda: LatticeVector,
        m: Multipartition,
        c: Rational,
    ) -> Result<Self> {
        let palette = Palette::from(lattice);
        Self::pure(lattice, lambda, FockState::monomial(&palette, m, c)?)
    }

    pub(crate) fn add_sector(&mut self, lambda: LatticeVector, x: FockState) {
        if x.is_zero() {
            return;
        }
        let merged = match self.sectors.remove(&lambda) {
            Some(prev) => prev.add(&x).expect("sectors share one palette"),
            None => x,
        };
        if !merged.is_zero() {
            self.sectors.insert(lambda, merged);
        }
    }

    pub fn palette(&self) -> &Palette {
        &self.palette
    }

    pub fn sectors(&self) -> impl Iterator<Item = (&LatticeVector, &FockState)> {
        self.sectors.iter()
    }

    pub fn sector(&self, lambda: &LatticeVector) -> Option<&FockState> {
        self.sectors.get(lambda)
    }

    pub fn is_zero(&self) -> bool {
        self.sectors.is_empty()
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.palette != other.palette {
            return usage("charged states live on different palettes");
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let mut out = self.clone();
        for (l, x) in &other.sectors {
            out.add_sector(l.clone(), x.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(&Rational::from_integer(BigInt::from(-1))))
    }

    pub fn scale(&self, c: &Rational) -> Self {
        let mut out = Self::zero(&self.palette);
        for (l, x) in &self.sectors {
            out.add_sector(l.clone(), x.scale(c));
        }
        out
    }

    /// Largest Fock degree over all sectors.
    pub fn max_degree(&self) -> usize {
        self.sectors.values().map(FockState::max_degree).max().unwrap_or(0)
    }

    /// `L₀` eigenvalue when the state is homogeneous.
    pub fn l0(&self, lattice: &Lattice) -> Result<Option<Rational>> {
        let mut value: Option<Rational> = None;
        for (l, x) in &self.sectors {
            let Some(n) = x.homogeneous_degree() else {
                return Ok(None);
            };
            let v = super::l0_eigenvalue(lattice, l, n)?;
            match &value {
                Some(prev) if prev != &v => return Ok(None),
                _ => value = Some(v),
            }
        }
        Ok(value)
    }

    /// `{"sectors": [{"charge": [..], "state": <FockState>}]}`.
    pub fn to_json(&self) -> serde_json::Value {
        let sectors: Vec<serde_json::Value> = self
            .sectors
            .iter()
            .map(|(l, x)| serde_json::json!({ "charge": l, "state": x.to_json() }))
            .collect();
        serde_json::json!({ "sectors": sectors })
    }

    pub fn from_json(lattice: &Lattice, v: &serde_json::Value) -> Result<Self> {
        let sectors = v
            .get("sectors")
            .and_then(|s| s.as_array())
            .ok_or_else(|| Error::Parse("missing \"sectors\" array".into()))?;
        let mut out = Self::zero(&Palette::from(lattice));
        for s in sectors {
            let charge: LatticeVector = serde_json::from_value(
                s.get("charge").cloned().ok_or_else(|| Error::Parse("sector without \"charge\"".into()))?,
            )
            .map_err(|e| Error::Parse(format!("charge: {e}")))?;
            let state = FockState::from_json(
                s.get("state").ok_or_else(|| Error::Parse("sector without \"state\"".into()))?,
            )?;
            out = out.add(&Self::pure(lattice, charge, state)?)?;
        }
        Ok(out)
    }
}
