//! Product, coproduct and the Hopf-adjoint bilinear form.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::pairing::PairingSpec;
use super::state::{mul_monomials, FockVector, Palette};
use crate::error::{usage, Result};
use crate::partitions::Multipartition;
use crate::series::{Rational, Scalar};

/// Super-commutative product.
pub fn multiply<R: Scalar>(x: &FockVector<R>, y: &FockVector<R>) -> Result<FockVector<R>> {
    x.check_palette(y)?;
    let palette = x.palette();
    let mut out = FockVector::zero(palette);
    for (a, ca) in x.terms() {
        for (b, cb) in y.terms() {
            if let Some((neg, m)) = mul_monomials(palette, a, b) {
                out.add_signed(m, ca.clone() * cb.clone(), neg);
            }
        }
    }
    Ok(out)
}

/// Element of `S ⊗ S`.
#[derive(Clone, Debug, PartialEq)]
pub struct FockTensor<R> {
    palette: Palette,
    terms: BTreeMap<(Multipartition, Multipartition), R>,
}

impl<R: Scalar> FockTensor<R> {
    pub fn zero(palette: &Palette) -> Self {
        FockTensor { palette: palette.clone(), terms: BTreeMap::new() }
    }

    fn add_term(&mut self, key: (Multipartition, Multipartition), c: R) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(key.clone()).or_insert_with(R::zero);
        let sum = std::mem::replace(slot, R::zero()) + c;
        if sum.is_zero() {
            self.terms.remove(&key);
        } else {
            *slot = sum;
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(Multipartition, Multipartition), &R)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, left: &Multipartition, right: &Multipartition) -> R {
        self.terms
            .get(&(left.clone(), right.clone()))
            .cloned()
            .unwrap_or_else(R::zero)
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.palette != other.palette {
            return usage("tensors live on different palettes");
        }
        let mut out = self.clone();
        for (k, c) in &other.terms {
            out.add_term(k.clone(), c.clone());
        }
        Ok(out)
    }

    /// Terms whose left and right factors both have positive degree.
    pub fn reduced(&self) -> Self {
        FockTensor {
            palette: self.palette.clone(),
            terms: self
                .terms
                .iter()
                .filter(|((a, b), _)| !a.is_empty() && !b.is_empty())
                .map(|(k, c)| (k.clone(), c.clone()))
                .collect(),
        }
    }
}

/// `x ⊗ y`.
pub fn tensor<R: Scalar>(x: &FockVector<R>, y: &FockVector<R>) -> Result<FockTensor<R>> {
    x.check_palette(y)?;
    let mut out = FockTensor::zero(x.palette());
    for (a, ca) in x.terms() {
        for (b, cb) in y.terms() {
            out.add_term((a.clone(), b.clone()), ca.clone() * cb.clone());
        }
    }
    Ok(out)
}

/// The algebra map with every generator primitive: `Δ v_{-n} = v_{-n} ⊗ 1 + 1 ⊗ v_{-n}`.
pub fn coproduct<R: Scalar>(x: &FockVector<R>) -> FockTensor<R> {
    let palette = x.palette();
    let mut out = FockTensor::zero(palette);
    for (m, c) in x.terms() {
        // runs of identical generators: (generator, multiplicity)
        let mut runs: Vec<((usize, usize), usize)> = Vec::new();
        for g in m.gens() {
            match runs.last_mut() {
                Some((h, k)) if h == g => *k += 1,
                _ => runs.push((*g, 1)),
            }
        }
        split_runs(palette, &runs, 0, &mut Vec::new(), &mut Vec::new(), 0, false, Rational::one(), c, &mut out);
    }
    out
}

#[allow(clippy::too_many_arguments)]
fn split_runs<R: Scalar>(
    palette: &Palette,
    runs: &[((usize, usize), usize)],
    idx: usize,
    left: &mut Vec<(usize, usize)>,
    right: &mut Vec<(usize, usize)>,
    odd_right: usize,
    negate: bool,
    weight: Rational,
    coeff: &R,
    out: &mut FockTensor<R>,
) {
    if idx == runs.len() {
        let c = coeff.clone() * R::from_rational(&weight);
        let key = (
            Multipartition::from_sorted_gens(left.clone()),
            Multipartition::from_sorted_gens(right.clone()),
        );
        out.add_term(key, if negate { -c } else { c });
        return;
    }
    let (g, k) = runs[idx];
    let odd = palette.is_odd(g.0);
    let mut binom = BigInt::one();
    for j in 0..=k {
        // j copies go left, k - j go right; an odd generator moving left
        // passes every odd generator already placed on the right
        let flip = odd && j == 1 && odd_right % 2 == 1;
        let (ml, mr) = (left.len(), right.len());
        left.extend(std::iter::repeat_n(g, j));
        right.extend(std::iter::repeat_n(g, k - j));
        let new_odd_right = odd_right + if odd { k - j } else { 0 };
        split_runs(
            palette,
            runs,
            idx + 1,
            left,
            right,
            new_odd_right,
            negate ^ flip,
            &weight * Rational::from_integer(binom.clone()),
            coeff,
            out,
        );
        left.truncate(ml);
        right.truncate(mr);
        binom = binom * BigInt::from(k - j) / BigInt::from(j + 1);
    }
}

/// `(x, y)`: the form making product and coproduct adjoint, with `(1, 1) = 1`
/// and generator values from `pairing`.
///
/// Each monomial `g_1 ⋯ g_k · 1` of `x` is paired by stripping `g_1, …, g_k`
/// off `y` with the matching annihilators and reading the vacuum coefficient.
pub fn inner_product<R: Scalar>(
    x: &FockVector<R>,
    y: &FockVector<R>,
    pairing: &PairingSpec,
) -> Result<R> {
    x.check_palette(y)?;
    if pairing.colors() != x.palette().len() {
        return usage("pairing rank does not match the palette");
    }
    let mut rows: BTreeMap<(usize, usize), Vec<R>> = BTreeMap::new();
    let mut total = R::zero();
    let components = y.degree_components();
    for (m, c) in x.terms() {
        let Some(mut cur) = components.get(&m.weight()).cloned() else {
            continue;
        };
        for &(color, mode) in m.gens() {
            if cur.is_zero() {
                break;
            }
            if !rows.contains_key(&(color, mode)) {
                rows.insert((color, mode), pairing.row(color, mode)?);
            }
            let row = &rows[&(color, mode)];
            cur = cur.annihilate(color, mode, |j| row[j].clone());
        }
        total = total + c.clone() * cur.vacuum_coeff();
    }
    Ok(total)
}

/// `(x ⊗ y, a ⊗ b) = (x, a)(y, b)`, extended bilinearly.
///
/// No Koszul sign: with [`inner_product`] stripping generators left to right,
/// this is the form for which `(xy, z) = (x ⊗ y, Δz)` holds on odd colors too.
pub fn tensor_inner_product<R: Scalar>(
    s: &FockTensor<R>,
    t: &FockTensor<R>,
    pairing: &PairingSpec,
) -> Result<R> {
    if s.palette != t.palette {
        return usage("tensors live on different palettes");
    }
    let palette = &s.palette;
    let mut total = R::zero();
    for ((x, y), c) in &s.terms {
        for ((a, b), d) in &t.terms {
            if x.weight() != a.weight() || y.weight() != b.weight() {
                continue;
            }
            let mono = |m: &Multipartition| FockVector::<R>::vacuum(palette).times_monomial(m);
            let left = inner_product(&mono(x), &mono(a), pairing)?;
            if left.is_zero() {
                continue;
            }
            let right = inner_product(&mono(y), &mono(b), pairing)?;
            total = total + c.clone() * d.clone() * left * right;
        }
    }
    Ok(total)
}

impl<R: Scalar> FockVector<R> {
    /// `M · self` for a single monomial `M`.
    pub(crate) fn times_monomial(&self, m: &Multipartition) -> Self {
        let mut out = Self::zero(self.palette());
        for (a, c) in self.terms() {
            if let Some((neg, p)) = mul_monomials(self.palette(), m, a) {
                out.add_signed(p, c.clone(), neg);
            }
        }
        out
    }
}

/// Dimension of the primitive elements of `S_n`: the kernel of the reduced coproduct.
pub fn primitive_dimension(palette: &Palette, n: usize) -> usize {
    let basis = super::basis(palette, n);
    let images: Vec<FockTensor<Rational>> = basis
        .iter()
        .map(|m| coproduct(&FockVector::vacuum(palette).times_monomial(m)).reduced())
        .collect();
    let mut columns: BTreeMap<(Multipartition, Multipartition), usize> = BTreeMap::new();
    for img in &images {
        for (k, _) in img.terms() {
            let next = columns.len();
            columns.entry(k.clone()).or_insert(next);
        }
    }
    let rows: Vec<Vec<Rational>> = images
        .iter()
        .map(|img| {
            let mut row = vec![Rational::zero(); columns.len()];
            for (k, c) in img.terms() {
                row[columns[k]] = c.clone();
            }
            row
        })
        .collect();
    basis.len() - crate::linalg::rank(rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fock::{h_element, FockState};
    use crate::lattice::{Lattice, Parity};
    use crate::partitions::Partition;
    use crate::series::{int, power_of_binomial, TruncatedSeries};

    fn mono(c: &[(usize, &[usize])]) -> Multipartition {
        Multipartition::from_components(c.iter().map(|(k, p)| (*k, Partition::new(p.to_vec()).unwrap())))
    }

    fn gen(pal: &Palette, color: usize, part: usize) -> FockState {
        FockState::monomial(pal, mono(&[(color, &[part])]), int(1)).unwrap()
    }

    #[test]
    fn product_examples() {
        let pal = Palette::new(vec![Parity::Even, Parity::Odd]);
        let x = gen(&pal, 0, 2).add(&gen(&pal, 1, 1)).unwrap();
        assert_eq!(multiply(&FockState::vacuum(&pal), &x).unwrap(), x);
        assert!(multiply(&gen(&pal, 1, 1), &gen(&pal, 1, 1)).unwrap().is_zero());
        assert_eq!(
            multiply(&gen(&pal, 0, 1), &gen(&pal, 0, 1)).unwrap(),
            FockState::monomial(&pal, mono(&[(0, &[1, 1])]), int(1)).unwrap()
        );
        let ab = multiply(&gen(&pal, 1, 2), &gen(&pal, 1, 1)).unwrap();
        let ba = multiply(&gen(&pal, 1, 1), &gen(&pal, 1, 2)).unwrap();
        assert_eq!(ab, ba.neg());
    }

    /// Every monomial triple up to degree 5, odd colors included.
    #[test]
    fn adjointness_on_odd_monomials() {
        for (gram, parity) in [
            (vec![vec![3]], vec![Parity::Odd]),
            (vec![vec![3, 1], vec![1, 5]], vec![Parity::Odd, Parity::Odd]),
            (vec![vec![2, 0], vec![0, 3]], vec![Parity::Even, Parity::Odd]),
        ] {
            let l = Lattice::with_parity(gram, parity).unwrap();
            let pal = Palette::from(&l);
            let p = PairingSpec::classical(&l);
            let m = |q: &Multipartition| FockState::monomial(&pal, q.clone(), int(1)).unwrap();
            for dz in 1..=5 {
                for z in crate::fock::basis(&pal, dz) {
                    let dz_t = coproduct(&m(&z));
                    for dx in 0..=dz {
                        for x in crate::fock::basis(&pal, dx) {
                            for y in crate::fock::basis(&pal, dz - dx) {
                                let lhs = inner_product(&multiply(&m(&x), &m(&y)).unwrap(), &m(&z), &p).unwrap();
                                let rhs = tensor_inner_product(&tensor(&m(&x), &m(&y)).unwrap(), &dz_t, &p).unwrap();
                                assert_eq!(lhs, rhs, "x={x:?} y={y:?} z={z:?}");
                            }
                        }
                    }
                }
            }
        }
        // the smallest case where a Koszul sign on the tensor form would break adjointness
        let l = Lattice::with_parity(vec![vec![3]], vec![Parity::Odd]).unwrap();
        let pal = Palette::from(&l);
        let p = PairingSpec::classical(&l);
        let z = multiply(&gen(&pal, 0, 2), &gen(&pal, 0, 1)).unwrap();
        let rhs = tensor_inner_product(&tensor(&gen(&pal, 0, 1), &gen(&pal, 0, 2)).unwrap(), &coproduct(&z), &p).unwrap();
        assert_eq!(rhs, int(-18));
    }

    #[test]
    fn coproduct_examples() {
        let pal = Palette::even(2);
        let vac = FockState::vacuum(&pal);
        let d1 = coproduct(&vac);
        assert_eq!(d1.len(), 1);
        assert_eq!(d1.coeff(&Multipartition::empty(), &Multipartition::empty()), int(1));
        let g = mono(&[(1, &[3])]);
        let d = coproduct(&gen(&pal, 1, 3));
        assert_eq!(d, tensor(&gen(&pal, 1, 3), &vac).unwrap().add(&tensor(&vac, &gen(&pal, 1, 3)).unwrap()).unwrap());
        assert_eq!(d.coeff(&g, &Multipartition::empty()), int(1));
        // Δ(x²) = x²⊗1 + 2 x⊗x + 1⊗x²
        let sq = mono(&[(0, &[1, 1])]);
        let d = coproduct(&FockState::monomial(&pal, sq.clone(), int(1)).unwrap());
        assert_eq!(d.coeff(&mono(&[(0, &[1])]), &mono(&[(0, &[1])])), int(2));
        assert_eq!(d.coeff(&sq, &Multipartition::empty()), int(1));
    }

    #[test]
    fn group_like_law() {
        let pal = Palette::even(2);
        let v = [1, -2];
        for n in 0..=8 {
            let mut rhs = FockTensor::zero(&pal);
            for a in 0..=n {
                let t = tensor(&h_element(&pal, &v, a).unwrap(), &h_element(&pal, &v, n - a).unwrap()).unwrap();
                rhs = rhs.add(&t).unwrap();
            }
            assert_eq!(coproduct(&h_element(&pal, &v, n).unwrap()), rhs, "n = {n}");
        }
    }

    #[test]
    fn inner_product_examples() {
        let a2 = Lattice::a_n(2);
        let pal = Palette::from(&a2);
        let cl = PairingSpec::classical(&a2);
        for n in 1..=4 {
            assert_eq!(inner_product(&gen(&pal, 0, n), &gen(&pal, 1, n), &cl).unwrap(), int(-(n as i64)));
            assert!(inner_product(&gen(&pal, 0, n), &gen(&pal, 1, n + 1), &cl).unwrap().is_zero());
        }
        let hyp = PairingSpec::new(crate::fock::PairingKind::Classical, vec![vec![0, 2], vec![2, 0]]).unwrap();
        let pal2 = Palette::even(2);
        let hv = h_element(&pal2, &[1, 0], 2).unwrap();
        let hw = h_element(&pal2, &[0, 1], 2).unwrap();
        assert_eq!(inner_product(&hv, &hw, &hyp).unwrap(), int(3));
        assert_eq!(inner_product(&FockState::vacuum(&pal2), &FockState::vacuum(&pal2), &hyp).unwrap(), int(1));
    }

    #[test]
    fn primitive_dimension_equals_rank() {
        use Parity::{Even, Odd};
        let palettes = [
            vec![Even],
            vec![Odd],
            vec![Even, Even],
            vec![Even, Odd],
            vec![Even, Even, Odd],
            vec![Odd, Odd, Even],
            vec![Even, Even, Even],
        ];
        for p in palettes {
            let pal = Palette::new(p.clone());
            for n in 1..=5 {
                assert_eq!(primitive_dimension(&pal, n), p.len(), "{p:?} n = {n}");
            }
        }
    }

    #[test]
    fn free_generation_dimension_count() {
        for (k, l) in [(1usize, 0usize), (0, 1), (2, 1), (1, 2), (3, 0), (2, 2)] {
            let mut parity = vec![Parity::Even; k];
            parity.extend(vec![Parity::Odd; l]);
            let pal = Palette::new(parity);
            let mut series = TruncatedSeries::one(&["x"], 10).unwrap();
            for m in 1..=10 {
                series = series.mul(&power_of_binomial(&["x"], 10, &[m], 1, l as i64).unwrap()).unwrap();
                series = series.mul(&power_of_binomial(&["x"], 10, &[m], -1, -(k as i64)).unwrap()).unwrap();
            }
            for n in 0..=10 {
                assert_eq!(int(crate::fock::basis(&pal, n).len() as i64), series.coeff(&[n]), "k={k} l={l} n={n}");
            }
        }
    }
}
