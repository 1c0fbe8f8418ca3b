//! Partitions, multipartitions and Young-diagram corners.
//!
//! Cells are `(row, column)`, zero-based, rows listed from the longest part
//! down (English convention). Partitions of `n` are listed in
//! reverse-lexicographic order: `(4), (3,1), (2,2), (2,1,1), (1,1,1,1)`.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{usage, Error, Result};

/// Weakly decreasing list of positive integers.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Partition {
    parts: Vec<usize>,
}

impl Partition {
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        if parts.contains(&0) {
            return usage(format!("partition parts must be positive: {parts:?}"));
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return usage(format!("partition parts must be weakly decreasing: {parts:?}"));
        }
        Ok(Partition { parts })
    }

    /// Sorts the parts and drops zeros.
    pub fn from_unsorted(mut parts: Vec<usize>) -> Self {
        parts.retain(|&p| p > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition { parts }
    }

    pub fn empty() -> Self {
        Partition::default()
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn weight(&self) -> usize {
        self.parts.iter().sum()
    }

    /// Number of parts, `ℓ(λ)`.
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// All parts distinct.
    pub fn is_strict(&self) -> bool {
        self.parts.windows(2).all(|w| w[0] > w[1])
    }

    pub fn exponent_form(&self) -> ExponentForm {
        let mut multiplicities = BTreeMap::new();
        for &p in &self.parts {
            *multiplicities.entry(p).or_insert(0) += 1;
        }
        ExponentForm { multiplicities }
    }

    pub fn corners(&self) -> Corners {
        let rows = self.parts.len();
        let row_len = |i: usize| self.parts.get(i).copied().unwrap_or(0);
        let addable = (0..=rows)
            .filter(|&i| i == 0 || row_len(i - 1) > row_len(i))
            .map(|i| (i, row_len(i)))
            .collect();
        let removable = (0..rows)
            .filter(|&i| row_len(i) > row_len(i + 1))
            .map(|i| (i, row_len(i) - 1))
            .collect();
        Corners { addable, removable }
    }

    /// The diagram with one cell added; `None` if the result is not a partition.
    pub fn add_cell(&self, (row, col): Cell) -> Option<Partition> {
        let mut parts = self.parts.clone();
        match row.cmp(&parts.len()) {
            std::cmp::Ordering::Less if parts[row] == col => parts[row] += 1,
            std::cmp::Ordering::Equal if col == 0 => parts.push(1),
            _ => return None,
        }
        Partition::new(parts).ok()
    }

    pub fn remove_cell(&self, (row, col): Cell) -> Option<Partition> {
        let mut parts = self.parts.clone();
        if row >= parts.len() || parts[row] != col + 1 {
            return None;
        }
        parts[row] -= 1;
        if parts.last() == Some(&0) {
            parts.pop();
        }
        Partition::new(parts).ok()
    }
}

impl TryFrom<Vec<usize>> for Partition {
    type Error = Error;

    fn try_from(parts: Vec<usize>) -> Result<Self> {
        Partition::new(parts)
    }
}

impl From<Partition> for Vec<usize> {
    fn from(p: Partition) -> Self {
        p.parts
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.parts.iter().map(usize::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// Multiplicity notation `(1^{a_1} 2^{a_2} ⋯)`.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct ExponentForm {
    multiplicities: BTreeMap<usize, usize>,
}

impl ExponentForm {
    pub fn from_multiplicities(m: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut multiplicities = BTreeMap::new();
        for (part, count) in m {
            if part == 0 {
                return usage("exponent form indices start at 1");
            }
            if count > 0 {
                *multiplicities.entry(part).or_insert(0) += count;
            }
        }
        Ok(ExponentForm { multiplicities })
    }

    /// `a_i`, the number of parts equal to `i`.
    pub fn multiplicity(&self, i: usize) -> usize {
        self.multiplicities.get(&i).copied().unwrap_or(0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.multiplicities.iter().map(|(p, c)| (*p, *c))
    }

    pub fn weight(&self) -> usize {
        self.iter().map(|(i, a)| i * a).sum()
    }

    pub fn length(&self) -> usize {
        self.iter().map(|(_, a)| a).sum()
    }

    pub fn to_partition(&self) -> Partition {
        Partition::from_unsorted(
            self.iter()
                .flat_map(|(i, a)| std::iter::repeat_n(i, a))
                .collect(),
        )
    }
}

pub type Cell = (usize, usize);

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Corners {
    pub addable: Vec<Cell>,
    pub removable: Vec<Cell>,
}

impl Corners {
    /// `|addable| - |removable|`; always 1 for a single partition.
    pub fn excess(&self) -> i64 {
        self.addable.len() as i64 - self.removable.len() as i64
    }
}

/// All partitions of `n` in reverse-lexicographic order.
pub fn enumerate_partitions(n: usize) -> Vec<Partition> {
    fn rec(rest: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
        if rest == 0 {
            out.push(Partition { parts: cur.clone() });
            return;
        }
        for p in (1..=max.min(rest)).rev() {
            cur.push(p);
            rec(rest - p, p, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, n, &mut Vec::new(), &mut out);
    out
}

/// Partitions of `n` into distinct parts, reverse-lexicographic.
pub fn enumerate_strict_partitions(n: usize) -> Vec<Partition> {
    enumerate_partitions(n).into_iter().filter(Partition::is_strict).collect()
}

/// Complex dimension `2ℓ(α)` of the symmetric-product stratum of type `α`.
pub fn stratum_dim_sym(alpha: &Partition) -> usize {
    2 * alpha.len()
}

/// Dimension `n + ℓ(α)` of the Hilbert-scheme stratum over the type-`α` stratum.
pub fn stratum_dim_hilb(alpha: &Partition) -> usize {
    alpha.weight() + alpha.len()
}

/// Fibre dimension `Σ a_i (i - 1) = n - ℓ(α)` of the Hilbert–Chow map over the type-`α` stratum.
pub fn stratum_fiber_dim(alpha: &Partition) -> usize {
    alpha.exponent_form().iter().map(|(i, a)| a * (i - 1)).sum()
}

/// Dimension `n - 1` of the punctual fibre over `n·x`.
pub fn punctual_fiber_dim(n: usize) -> Result<usize> {
    if n == 0 {
        return usage("punctual fibre needs n >= 1");
    }
    Ok(n - 1)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ComponentCensus {
    /// Number of irreducible components, one per partition of `n`.
    pub components: usize,
    /// Their common (pure) dimension.
    pub dimension: usize,
}

pub fn component_census(n: usize) -> ComponentCensus {
    ComponentCensus { components: enumerate_partitions(n).len(), dimension: n }
}

/// Tuple of partitions indexed by color.
///
/// Stored as the sorted list of `(color, part)` generators: colors ascending,
/// parts descending within a color. Empty components are never stored.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Multipartition {
    gens: Vec<(usize, usize)>,
}

/// Ordering key of a generator in the canonical monomial order.
pub(crate) fn gen_key(g: &(usize, usize)) -> (usize, std::cmp::Reverse<usize>) {
    (g.0, std::cmp::Reverse(g.1))
}

impl Multipartition {
    pub fn empty() -> Self {
        Multipartition::default()
    }

    pub fn from_components(components: impl IntoIterator<Item = (usize, Partition)>) -> Self {
        let mut gens: Vec<(usize, usize)> = components
            .into_iter()
            .flat_map(|(c, p)| p.parts.into_iter().map(move |x| (c, x)))
            .collect();
        gens.sort_by_key(gen_key);
        Multipartition { gens }
    }

    pub(crate) fn from_sorted_gens(gens: Vec<(usize, usize)>) -> Self {
        debug_assert!(gens.windows(2).all(|w| gen_key(&w[0]) <= gen_key(&w[1])));
        Multipartition { gens }
    }

    /// Generators `(color, part)` in canonical order.
    pub fn gens(&self) -> &[(usize, usize)] {
        &self.gens
    }

    pub fn component(&self, color: usize) -> Partition {
        Partition {
            parts: self.gens.iter().filter(|g| g.0 == color).map(|g| g.1).collect(),
        }
    }

    pub fn components(&self) -> BTreeMap<usize, Partition> {
        let mut out: BTreeMap<usize, Partition> = BTreeMap::new();
        for &(c, p) in &self.gens {
            out.entry(c).or_default().parts.push(p);
        }
        out
    }

    pub fn weight(&self) -> usize {
        self.gens.iter().map(|g| g.1).sum()
    }

    /// Total number of parts across all colors.
    pub fn len(&self) -> usize {
        self.gens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn max_color(&self) -> Option<usize> {
        self.gens.last().map(|g| g.0)
    }
}

impl fmt::Debug for Multipartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map().entries(self.components()).finish()
    }
}

impl Serialize for Multipartition {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let m: BTreeMap<String, Partition> =
            self.components().into_iter().map(|(c, p)| (c.to_string(), p)).collect();
        m.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Multipartition {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let m = BTreeMap::<String, Partition>::deserialize(d)?;
        let mut comps = Vec::new();
        for (k, p) in m {
            let c: usize = k.parse().map_err(|_| D::Error::custom(format!("bad color {k:?}")))?;
            comps.push((c, p));
        }
        Ok(Multipartition::from_components(comps))
    }
}

/// All multipartitions over `colors` colors with total weight `n`.
pub fn enumerate_multipartitions(colors: usize, n: usize) -> Vec<Multipartition> {
    enumerate_monomials(&vec![false; colors], n)
}

/// Multipartitions of total weight `n`, where colors flagged `strict` only
/// take partitions with distinct parts.
pub fn enumerate_monomials(strict: &[bool], n: usize) -> Vec<Multipartition> {
    let by_weight: Vec<(Vec<Partition>, Vec<Partition>)> = (0..=n)
        .map(|w| (enumerate_partitions(w), enumerate_strict_partitions(w)))
        .collect();
    fn rec(
        color: usize,
        rest: usize,
        strict: &[bool],
        by_weight: &[(Vec<Partition>, Vec<Partition>)],
        cur: &mut Vec<(usize, usize)>,
        out: &mut Vec<Multipartition>,
    ) {
        if color == strict.len() {
            if rest == 0 {
                out.push(Multipartition::from_sorted_gens(cur.clone()));
            }
            return;
        }
        for w in (0..=rest).rev() {
            let choices = if strict[color] { &by_weight[w].1 } else { &by_weight[w].0 };
            for p in choices {
                let mark = cur.len();
                cur.extend(p.parts.iter().map(|&x| (color, x)));
                rec(color + 1, rest - w, strict, by_weight, cur, out);
                cur.truncate(mark);
            }
        }
    }
    let mut out = Vec::new();
    rec(0, n, strict, &by_weight, &mut Vec::new(), &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(parts: &[usize]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    /// p(n) from Euler's pentagonal recurrence.
    fn euler_counts(n: usize) -> Vec<i64> {
        let mut c = vec![0i64; n + 1];
        c[0] = 1;
        for m in 1..=n as i64 {
            let mut acc = 0;
            for k in 1.. {
                let g1 = k * (3 * k - 1) / 2;
                if g1 > m {
                    break;
                }
                let sign = if k % 2 == 1 { 1 } else { -1 };
                acc += sign * c[(m - g1) as usize];
                let g2 = k * (3 * k + 1) / 2;
                if g2 <= m {
                    acc += sign * c[(m - g2) as usize];
                }
            }
            c[m as usize] = acc;
        }
        c
    }

    #[test]
    fn validation() {
        assert!(Partition::new(vec![1, 2]).is_err());
        assert!(Partition::new(vec![2, 0]).is_err());
        assert_eq!(Partition::from_unsorted(vec![1, 0, 3, 2]), p(&[3, 2, 1]));
        assert!(serde_json::from_str::<Partition>("[1,3]").is_err());
        assert_eq!(serde_json::from_str::<Partition>("[3,1]").unwrap(), p(&[3, 1]));
    }

    #[test]
    fn small_enumerations() {
        assert_eq!(enumerate_partitions(0), vec![Partition::empty()]);
        assert_eq!(
            enumerate_partitions(4),
            vec![p(&[4]), p(&[3, 1]), p(&[2, 2]), p(&[2, 1, 1]), p(&[1, 1, 1, 1])]
        );
        assert_eq!(enumerate_partitions(10).len(), 42);
        assert_eq!(enumerate_strict_partitions(3), vec![p(&[3]), p(&[2, 1])]);
    }

    #[test]
    fn counts_follow_pentagonal_recurrence() {
        let want = euler_counts(60);
        for n in 0..=60 {
            assert_eq!(enumerate_partitions(n).len() as i64, want[n], "p({n})");
        }
    }

    #[test]
    fn corner_examples() {
        let c = Partition::empty().corners();
        assert_eq!((c.addable.len(), c.removable.len()), (1, 0));
        assert_eq!(c.addable, vec![(0, 0)]);

        let c = p(&[2, 1]).corners();
        assert_eq!(c.addable, vec![(0, 2), (1, 1), (2, 0)]);
        assert_eq!(c.removable, vec![(0, 1), (1, 0)]);

        let c = p(&[5, 5, 5]).corners();
        assert_eq!(c.addable, vec![(0, 5), (3, 0)]);
        assert_eq!(c.removable, vec![(2, 4)]);
    }

    #[test]
    fn corners_add_and_remove_correctly_up_to_12() {
        for n in 0..=12 {
            for lam in enumerate_partitions(n) {
                let c = lam.corners();
                for cell in &c.addable {
                    assert_eq!(lam.add_cell(*cell).unwrap().weight(), n + 1);
                }
                for cell in &c.removable {
                    assert_eq!(lam.remove_cell(*cell).unwrap().weight(), n - 1);
                }
                // brute force: every cell adjacent to the diagram
                let rows = lam.len();
                let cols = lam.parts().first().copied().unwrap_or(0);
                let add = (0..=rows)
                    .flat_map(|r| (0..=cols).map(move |c| (r, c)))
                    .filter(|&cell| lam.add_cell(cell).is_some())
                    .count();
                assert_eq!(add, c.addable.len());
            }
        }
    }

    #[test]
    fn corner_excess_exhaustive_to_25() {
        for n in 0..=25 {
            for lam in enumerate_partitions(n) {
                assert_eq!(lam.corners().excess(), 1, "{lam}");
            }
        }
    }

    #[test]
    fn strata_dimensions() {
        assert_eq!(stratum_dim_sym(&p(&[1; 5])), 10);
        assert_eq!(stratum_dim_sym(&p(&[5])), 2);
        assert_eq!(stratum_dim_sym(&p(&[2, 1])), 4);
        assert_eq!(stratum_dim_hilb(&p(&[1; 5])), 10);
        assert_eq!(stratum_dim_hilb(&p(&[5])), 6);
        assert_eq!(stratum_dim_hilb(&Partition::empty()), 0);
        assert_eq!(punctual_fiber_dim(1).unwrap(), 0);
        assert_eq!(punctual_fiber_dim(2).unwrap(), 1);
        assert_eq!(punctual_fiber_dim(7).unwrap(), 6);
        assert!(punctual_fiber_dim(0).is_err());
    }

    #[test]
    fn strata_relation_exhaustive_to_20() {
        for n in 0..=20 {
            for a in enumerate_partitions(n) {
                // stratum = base of dimension 2ℓ plus punctual fibres of total dimension n - ℓ
                let lhs = stratum_dim_hilb(&a) - stratum_dim_sym(&a);
                assert_eq!(lhs, a.weight() - a.len());
                assert_eq!(lhs, stratum_fiber_dim(&a));
                assert_eq!(stratum_dim_hilb(&a) - stratum_dim_sym(&a) / 2, a.weight());
            }
        }
    }

    #[test]
    fn census() {
        assert_eq!(component_census(0), ComponentCensus { components: 1, dimension: 0 });
        assert_eq!(component_census(4), ComponentCensus { components: 5, dimension: 4 });
        assert_eq!(component_census(6).components, 11);
    }

    #[test]
    fn exponent_form_roundtrip() {
        let a = p(&[3, 1, 1, 1]);
        let e = a.exponent_form();
        assert_eq!(e.multiplicity(1), 3);
        assert_eq!(e.multiplicity(3), 1);
        assert_eq!(e.multiplicity(2), 0);
        assert_eq!(e.weight(), 6);
        assert_eq!(e.length(), 4);
        assert_eq!(e.to_partition(), a);
        let e2 = ExponentForm::from_multiplicities([(2, 2), (1, 1)]).unwrap();
        assert_eq!(e2.to_partition(), p(&[2, 2, 1]));
    }

    #[test]
    fn multipartition_components_and_json() {
        let m = Multipartition::from_components([(1, p(&[2])), (0, p(&[3, 1]))]);
        assert_eq!(m.gens(), &[(0, 3), (0, 1), (1, 2)]);
        assert_eq!(m.weight(), 6);
        assert_eq!(m.component(0), p(&[3, 1]));
        assert_eq!(m.component(2), Partition::empty());
        let json = serde_json::to_string(&m).unwrap();
        assert_eq!(json, r#"{"0":[3,1],"1":[2]}"#);
        assert_eq!(serde_json::from_str::<Multipartition>(&json).unwrap(), m);
    }

    #[test]
    fn multipartition_counts_match_product_series() {
        use crate::series::{power_of_binomial, TruncatedSeries};
        for k in 1..=5usize {
            let mut prod = TruncatedSeries::one(&["x"], 12).unwrap();
            for m in 1..=12 {
                prod = prod
                    .mul(&power_of_binomial(&["x"], 12, &[m], -1, -(k as i64)).unwrap())
                    .unwrap();
            }
            for n in 0..=12 {
                let count = enumerate_multipartitions(k, n).len();
                assert_eq!(crate::series::int(count as i64), prod.coeff(&[n]), "k={k} n={n}");
            }
        }
    }
}
