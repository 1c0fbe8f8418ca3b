use std::collections::BTreeMap;

use crate::error::{usage, Result};
use crate::lattice::{Lattice, Parity};
use crate::partitions::{gen_key, Multipartition};
use crate::series::{Rational, Scalar};

/// Colors of the Fock space: one per lattice basis vector, each even or odd.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Palette {
    parity: Vec<Parity>,
}

impl Palette {
    pub fn new(parity: Vec<Parity>) -> Self {
        Palette { parity }
    }

    pub fn even(colors: usize) -> Self {
        Palette { parity: vec![Parity::Even; colors] }
    }

    pub fn len(&self) -> usize {
        self.parity.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parity.is_empty()
    }

    pub fn parity(&self) -> &[Parity] {
        &self.parity
    }

    pub fn is_odd(&self, color: usize) -> bool {
        self.parity[color].is_odd()
    }

    pub(crate) fn check_color(&self, color: usize) -> Result<()> {
        if color >= self.len() {
            return usage(format!("color {color} outside palette of {} colors", self.len()));
        }
        Ok(())
    }

    /// Number of odd generators in a monomial, mod 2.
    pub fn monomial_parity(&self, m: &Multipartition) -> bool {
        m.gens().iter().filter(|g| self.is_odd(g.0)).count() % 2 == 1
    }

    /// Even colors, and the strictness mask used to enumerate monomials.
    pub fn strict_mask(&self) -> Vec<bool> {
        self.parity.iter().map(|p| p.is_odd()).collect()
    }
}

impl From<&Lattice> for Palette {
    fn from(l: &Lattice) -> Self {
        Palette::new(l.parity().to_vec())
    }
}

/// A single Heisenberg generator `v^i_n`: creation for `n < 0`, annihilation for `n > 0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct OperatorSymbol {
    pub color: usize,
    pub mode: i64,
}

impl OperatorSymbol {
    pub fn new(color: usize, mode: i64) -> Result<Self> {
        if mode == 0 {
            return usage("Heisenberg modes are nonzero");
        }
        Ok(OperatorSymbol { color, mode })
    }

    pub fn is_creation(&self) -> bool {
        self.mode < 0
    }
}

/// `g · M` with the Koszul sign of moving an odd `g` into canonical position.
/// `None` when an odd generator would repeat.
pub(crate) fn create_on(
    palette: &Palette,
    g: (usize, usize),
    m: &Multipartition,
) -> Option<(bool, Multipartition)> {
    let odd = palette.is_odd(g.0);
    let gens = m.gens();
    let pos = gens.partition_point(|h| gen_key(h) < gen_key(&g));
    if odd && gens.get(pos) == Some(&g) {
        return None;
    }
    let negate = odd && gens[..pos].iter().filter(|h| palette.is_odd(h.0)).count() % 2 == 1;
    let mut out = Vec::with_capacity(gens.len() + 1);
    out.extend_from_slice(&gens[..pos]);
    out.push(g);
    out.extend_from_slice(&gens[pos..]);
    Some((negate, Multipartition::from_sorted_gens(out)))
}

/// `A · B` for monomials, with the Koszul sign of merging the odd generators.
pub(crate) fn mul_monomials(
    palette: &Palette,
    a: &Multipartition,
    b: &Multipartition,
) -> Option<(bool, Multipartition)> {
    let (ga, gb) = (a.gens(), b.gens());
    let mut out = Vec::with_capacity(ga.len() + gb.len());
    let (mut i, mut j) = (0, 0);
    // odd generators of `a` not yet emitted; each `b` generator overtakes them
    let mut odd_a_left = ga.iter().filter(|g| palette.is_odd(g.0)).count();
    let mut negate = false;
    while i < ga.len() || j < gb.len() {
        let take_a = j == gb.len() || (i < ga.len() && gen_key(&ga[i]) <= gen_key(&gb[j]));
        if take_a {
            if palette.is_odd(ga[i].0) {
                if j < gb.len() && ga[i] == gb[j] {
                    return None;
                }
                odd_a_left -= 1;
            }
            out.push(ga[i]);
            i += 1;
        } else {
            if palette.is_odd(gb[j].0) && odd_a_left % 2 == 1 {
                negate = !negate;
            }
            out.push(gb[j]);
            j += 1;
        }
    }
    Some((negate, Multipartition::from_sorted_gens(out)))
}

/// Finite linear combination of Fock monomials with coefficients in `R`.
#[derive(Clone, Debug, PartialEq)]
pub struct FockVector<R> {
    palette: Palette,
    terms: BTreeMap<Multipartition, R>,
}

/// Fock vector with exact rational coefficients.
pub type FockState = FockVector<Rational>;

impl<R: Scalar> FockVector<R> {
    pub fn zero(palette: &Palette) -> Self {
        FockVector { palette: palette.clone(), terms: BTreeMap::new() }
    }

    /// The vacuum `1`.
    pub fn vacuum(palette: &Palette) -> Self {
        Self::monomial_unchecked(palette, Multipartition::empty(), R::one())
    }

    fn monomial_unchecked(palette: &Palette, m: Multipartition, c: R) -> Self {
        let mut v = Self::zero(palette);
        v.add_term(m, c);
        v
    }

    /// `c · M`, checking colors and that odd colors have distinct parts.
    pub fn monomial(palette: &Palette, m: Multipartition, c: R) -> Result<Self> {
        Self::check_monomial(palette, &m)?;
        Ok(Self::monomial_unchecked(palette, m, c))
    }

    fn check_monomial(palette: &Palette, m: &Multipartition) -> Result<()> {
        if let Some(c) = m.max_color() {
            palette.check_color(c)?;
        }
        if m.gens().windows(2).any(|w| w[0] == w[1] && palette.is_odd(w[0].0)) {
            return usage(format!("odd color repeats a generator in {m:?}"));
        }
        Ok(())
    }

    pub fn from_terms(
        palette: &Palette,
        terms: impl IntoIterator<Item = (Multipartition, R)>,
    ) -> Result<Self> {
        let mut v = Self::zero(palette);
        for (m, c) in terms {
            Self::check_monomial(palette, &m)?;
            v.add_term(m, c);
        }
        Ok(v)
    }

    pub(crate) fn add_term(&mut self, m: Multipartition, c: R) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(slot) => {
                let sum = std::mem::replace(slot, R::zero()) + c;
                if sum.is_zero() {
                    self.terms.remove(&m);
                } else {
                    *slot = sum;
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub(crate) fn add_signed(&mut self, m: Multipartition, c: R, negate: bool) {
        self.add_term(m, if negate { -c } else { c });
    }

    pub fn palette(&self) -> &Palette {
        &self.palette
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Multipartition, &R)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, m: &Multipartition) -> R {
        self.terms.get(m).cloned().unwrap_or_else(R::zero)
    }

    /// Coefficient of the vacuum.
    pub fn vacuum_coeff(&self) -> R {
        self.coeff(&Multipartition::empty())
    }

    pub(crate) fn check_palette(&self, other: &Self) -> Result<()> {
        if self.palette != other.palette {
            return usage("Fock vectors live on different palettes");
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_palette(other)?;
        let mut out = self.clone();
        out.add_assign_unchecked(other);
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub(crate) fn add_assign_unchecked(&mut self, other: &Self) {
        for (m, c) in &other.terms {
            self.add_term(m.clone(), c.clone());
        }
    }

    pub fn neg(&self) -> Self {
        FockVector {
            palette: self.palette.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c.clone())).collect(),
        }
    }

    pub fn scale(&self, c: &R) -> Self {
        let mut out = Self::zero(&self.palette);
        for (m, x) in &self.terms {
            out.add_term(m.clone(), x.clone() * c.clone());
        }
        out
    }

    /// Coefficient-wise image in another scalar ring.
    pub fn map_coeffs<S: Scalar>(&self, f: impl Fn(&R) -> Result<S>) -> Result<FockVector<S>> {
        let mut out = FockVector::zero(&self.palette);
        for (m, c) in &self.terms {
            out.add_term(m.clone(), f(c)?);
        }
        Ok(out)
    }

    /// Split into homogeneous components `S_n`, keyed by total mode weight.
    pub fn degree_components(&self) -> BTreeMap<usize, Self> {
        let mut out: BTreeMap<usize, Self> = BTreeMap::new();
        for (m, c) in &self.terms {
            out.entry(m.weight())
                .or_insert_with(|| Self::zero(&self.palette))
                .add_term(m.clone(), c.clone());
        }
        out
    }

    /// `Some(n)` when every term lies in `S_n` (the zero vector has no degree).
    pub fn homogeneous_degree(&self) -> Option<usize> {
        let mut degrees = self.terms.keys().map(Multipartition::weight);
        let first = degrees.next()?;
        degrees.all(|d| d == first).then_some(first)
    }

    pub fn max_degree(&self) -> usize {
        self.terms.keys().map(Multipartition::weight).max().unwrap_or(0)
    }

    /// JSON document `{"palette": [...], "terms": [{"mono": {...}, "coeff": ...}]}`.
    pub fn to_json(&self) -> serde_json::Value {
        let terms: Vec<serde_json::Value> = self
            .terms
            .iter()
            .map(|(m, c)| {
                serde_json::json!({
                    "mono": serde_json::to_value(m).expect("multipartition JSON"),
                    "coeff": c.to_json(),
                })
            })
            .collect();
        serde_json::json!({ "palette": self.palette.parity, "terms": terms })
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Self> {
        use crate::error::Error;
        let palette: Vec<Parity> = serde_json::from_value(
            v.get("palette").cloned().ok_or_else(|| Error::Parse("missing \"palette\"".into()))?,
        )
        .map_err(|e| Error::Parse(format!("palette: {e}")))?;
        let palette = Palette::new(palette);
        let terms = v
            .get("terms")
            .and_then(|t| t.as_array())
            .ok_or_else(|| Error::Parse("missing \"terms\" array".into()))?;
        let mut out = Self::zero(&palette);
        for t in terms {
            let m: Multipartition = serde_json::from_value(
                t.get("mono").cloned().ok_or_else(|| Error::Parse("term without \"mono\"".into()))?,
            )
            .map_err(|e| Error::Parse(format!("mono: {e}")))?;
            let c = R::from_json(
                t.get("coeff").ok_or_else(|| Error::Parse("term without \"coeff\"".into()))?,
            )?;
            Self::check_monomial(&palette, &m).map_err(|e| Error::Parse(e.to_string()))?;
            out.add_term(m, c);
        }
        Ok(out)
    }
}

impl<R: Scalar> FockVector<R> {
    /// Multiply by the creation generator `v^color_{-mode}`.
    pub(crate) fn create(&self, color: usize, mode: usize) -> Self {
        let mut out = Self::zero(&self.palette);
        for (m, c) in &self.terms {
            if let Some((neg, m2)) = create_on(&self.palette, (color, mode), m) {
                out.add_signed(m2, c.clone(), neg);
            }
        }
        out
    }

    /// Contract every generator `(j, mode)` against `v^color_mode`, using
    /// `value(j)` for the pairing; super-derivation for odd `color`.
    pub(crate) fn annihilate(&self, color: usize, mode: usize, value: impl Fn(usize) -> R) -> Self {
        let odd_op = self.palette.is_odd(color);
        let mut out = Self::zero(&self.palette);
        for (m, c) in &self.terms {
            let gens = m.gens();
            let mut odd_before = 0usize;
            for (p, g) in gens.iter().enumerate() {
                if g.1 == mode {
                    let v = value(g.0);
                    if !v.is_zero() {
                        let mut rest = gens.to_vec();
                        rest.remove(p);
                        let neg = odd_op && odd_before % 2 == 1;
                        out.add_signed(Multipartition::from_sorted_gens(rest), c.clone() * v, neg);
                    }
                }
                if self.palette.is_odd(g.0) {
                    odd_before += 1;
                }
            }
        }
        out
    }
}
