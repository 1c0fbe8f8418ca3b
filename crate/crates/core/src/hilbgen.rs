//! Hodge and Betti generating functions for Hilbert schemes of points on a
//! surface, read off from the free generators of the Fock model.
//!
//! A class `Z ∈ H^{p,q}(X)` gives generators `r^Z_m` of bidegree
//! `(m + p - 1, m + q - 1)`; classes with `p + q` odd are exterior.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{usage, Error, Result};
use crate::fock::{apply_combination, basis, commutator_check, q_pairing, FockState, PairingKind, PairingSpec, Palette};
use crate::partitions::{enumerate_multipartitions, enumerate_partitions, enumerate_strict_partitions, Partition};
use crate::series::{int, Rational, TruncatedSeries};

/// Hodge numbers `h^{p,q}`, `0 <= p, q <= 2`, of a surface.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HodgeDiamond {
    h: [[u64; 3]; 3],
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct HodgeDoc {
    h: BTreeMap<String, u64>,
}

impl HodgeDiamond {
    /// Requires `h^{p,q} = h^{q,p}` and `h^{0,0} >= 1`.
    pub fn new(h: [[u64; 3]; 3]) -> Result<Self> {
        for p in 0..3 {
            for q in 0..3 {
                if h[p][q] != h[q][p] {
                    return usage(format!("h^{{{p},{q}}} != h^{{{q},{p}}}"));
                }
            }
        }
        if h[0][0] == 0 {
            return usage("h^{0,0} must be at least 1");
        }
        Ok(HodgeDiamond { h })
    }

    /// `h^{0,0} = h^{1,1} = h^{2,2} = 1`.
    pub fn p2_like() -> Self {
        HodgeDiamond { h: [[1, 0, 0], [0, 1, 0], [0, 0, 1]] }
    }

    /// `h^{2,0} = h^{0,2} = 1`, `h^{1,1} = 20`.
    pub fn k3_like() -> Self {
        HodgeDiamond { h: [[1, 0, 1], [0, 20, 0], [1, 0, 1]] }
    }

    pub fn get(&self, p: usize, q: usize) -> u64 {
        self.h.get(p).and_then(|r| r.get(q)).copied().unwrap_or(0)
    }

    pub fn numbers(&self) -> &[[u64; 3]; 3] {
        &self.h
    }

    /// Number of even (`p + q` even) and odd classes.
    pub fn color_counts(&self) -> (u64, u64) {
        let mut even = 0;
        let mut odd = 0;
        for p in 0..3 {
            for q in 0..3 {
                if (p + q) % 2 == 0 {
                    even += self.h[p][q];
                } else {
                    odd += self.h[p][q];
                }
            }
        }
        (even, odd)
    }

    /// `Σ h^{p,q} t^p s^q`.
    pub fn hodge_polynomial(&self) -> BTreeMap<(usize, usize), BigInt> {
        let mut out = BTreeMap::new();
        for p in 0..3 {
            for q in 0..3 {
                if self.h[p][q] > 0 {
                    out.insert((p, q), BigInt::from(self.h[p][q]));
                }
            }
        }
        out
    }

    /// Parses `{"h": {"p,q": n, ...}}`; absent entries are zero.
    pub fn from_json(s: &str) -> Result<Self> {
        let doc: HodgeDoc = serde_json::from_str(s).map_err(|e| Error::Parse(format!("Hodge diamond: {e}")))?;
        let mut h = [[0u64; 3]; 3];
        for (key, v) in doc.h {
            let (p, q) = key
                .split_once(',')
                .and_then(|(p, q)| Some((p.trim().parse::<usize>().ok()?, q.trim().parse::<usize>().ok()?)))
                .filter(|&(p, q)| p <= 2 && q <= 2)
                .ok_or_else(|| Error::Parse(format!("bad Hodge index \"{key}\"")))?;
            h[p][q] = v;
        }
        Self::new(h).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn to_json(&self) -> serde_json::Value {
        let mut h = BTreeMap::new();
        for p in 0..3 {
            for q in 0..3 {
                if self.h[p][q] > 0 {
                    h.insert(format!("{p},{q}"), self.h[p][q]);
                }
            }
        }
        serde_json::to_value(HodgeDoc { h }).expect("diamond JSON")
    }
}

/// Per-`n` Hodge polynomials `Σ_{a,b} c_{a,b} t^a s^b`, `n = 0..=order`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BigradedSeries {
    coeffs: Vec<BTreeMap<(usize, usize), BigInt>>,
}

impl BigradedSeries {
    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// The `z^n` coefficient.
    pub fn polynomial(&self, n: usize) -> Option<&BTreeMap<(usize, usize), BigInt>> {
        self.coeffs.get(n)
    }

    pub fn coeff(&self, n: usize, a: usize, b: usize) -> BigInt {
        self.coeffs.get(n).and_then(|m| m.get(&(a, b))).cloned().unwrap_or_else(BigInt::zero)
    }

    /// Value at `t = s = 1`.
    pub fn total(&self, n: usize) -> BigInt {
        self.coeffs.get(n).map(|m| m.values().sum()).unwrap_or_else(BigInt::zero)
    }

    /// `Σ_n c_{n,n}(n) z^n`.
    pub fn diagonal(&self) -> Vec<BigInt> {
        (0..self.coeffs.len()).map(|n| self.coeff(n, n, n)).collect()
    }

    pub fn is_symmetric(&self) -> bool {
        self.coeffs.iter().all(|m| m.iter().all(|((a, b), c)| m.get(&(*b, *a)) == Some(c)))
    }

    pub fn is_nonnegative(&self) -> bool {
        self.coeffs.iter().all(|m| m.values().all(|c| c >= &BigInt::zero()))
    }

    /// `{"order": N, "series": [{"n": n, "terms": [[a, b, "c"], ...]}, ...]}`.
    pub fn to_json(&self) -> serde_json::Value {
        let series: Vec<serde_json::Value> = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(n, m)| {
                let terms: Vec<serde_json::Value> =
                    m.iter().map(|((a, b), c)| serde_json::json!([a, b, c.to_string()])).collect();
                serde_json::json!({ "n": n, "terms": terms })
            })
            .collect();
        serde_json::json!({ "order": self.order(), "series": series })
    }

    /// One row per `n`: the value at `t = s = 1`, then the nonzero terms as `a,b:c`.
    pub fn to_tsv(&self) -> String {
        let mut out = String::from("n\ttotal\tterms\n");
        for (n, m) in self.coeffs.iter().enumerate() {
            let terms: Vec<String> = m.iter().map(|((a, b), c)| format!("{a},{b}:{c}")).collect();
            let _ = writeln!(out, "{n}\t{}\t{}", self.total(n), terms.join(" "));
        }
        out
    }
}

type ZSeries<K> = Vec<BTreeMap<K, BigInt>>;

fn mul_z<K: Ord + Copy>(a: &ZSeries<K>, b: &ZSeries<K>, add: impl Fn(K, K) -> K) -> ZSeries<K> {
    let order = a.len() - 1;
    let mut out: ZSeries<K> = vec![BTreeMap::new(); order + 1];
    for (i, ai) in a.iter().enumerate() {
        for (j, bj) in b.iter().enumerate().take(order + 1 - i) {
            for (ka, ca) in ai {
                for (kb, cb) in bj {
                    *out[i + j].entry(add(*ka, *kb)).or_insert_with(BigInt::zero) += ca * cb;
                }
            }
        }
    }
    for m in &mut out {
        m.retain(|_, c| !c.is_zero());
    }
    out
}

/// `(1 - x)^{-h}` (even) or `(1 + x)^{h}` (odd) for `x = key · z^m`, as `Σ_j c_j x^j`.
fn factor_coeffs(h: u64, odd: bool, max_j: usize) -> Vec<BigInt> {
    let h = BigInt::from(h);
    let mut out = Vec::with_capacity(max_j + 1);
    let mut c = BigInt::one();
    for j in 0..=max_j {
        out.push(c.clone());
        let jj = BigInt::from(j);
        c = if odd { c * (&h - &jj) / (&jj + 1) } else { c * (&h + &jj) / (&jj + 1) };
    }
    out
}

/// Product over generator classes with Hodge numbers `h`, without diamond validation:
/// `Π_{m,p,q} (1 - t^{m+p-1} s^{m+q-1} z^m)^{-h^{p,q}}` for `p + q` even, and
/// `(1 + t^{m+p-1} s^{m+q-1} z^m)^{h^{p,q}}` for `p + q` odd.
pub fn generator_series(h: &[[u64; 3]; 3], order: usize) -> BigradedSeries {
    let mut acc: ZSeries<(usize, usize)> = vec![BTreeMap::new(); order + 1];
    acc[0].insert((0, 0), BigInt::one());
    for m in 1..=order {
        for p in 0..3 {
            for q in 0..3 {
                if h[p][q] == 0 {
                    continue;
                }
                let (a, b) = (m + p - 1, m + q - 1);
                let mut f: ZSeries<(usize, usize)> = vec![BTreeMap::new(); order + 1];
                for (j, c) in factor_coeffs(h[p][q], (p + q) % 2 == 1, order / m).into_iter().enumerate() {
                    if !c.is_zero() {
                        f[j * m].insert((a * j, b * j), c);
                    }
                }
                acc = mul_z(&acc, &f, |x, y| (x.0 + y.0, x.1 + y.1));
            }
        }
    }
    BigradedSeries { coeffs: acc }
}

/// Hodge polynomials of `Hilb^n X` for `n <= order`.
pub fn hilb_hodge_series(x: &HodgeDiamond, order: usize) -> BigradedSeries {
    generator_series(&x.h, order)
}

/// The `u^0` coefficient of `Π_n ((1 - z^n u)(1 - z^n u^{-1}))^{-h20} (1 - z^n)^{-h11}`.
///
/// Every `u^{±1}` comes with at least one power of `z`, so the window `|u| <= order`
/// is exact.
pub fn u0_series(h20: u64, h11: u64, order: usize) -> Result<TruncatedSeries> {
    let mut acc: ZSeries<i64> = vec![BTreeMap::new(); order + 1];
    acc[0].insert(0, BigInt::one());
    for n in 1..=order {
        for (u, h) in [(1i64, h20), (-1, h20), (0, h11)] {
            if h == 0 {
                continue;
            }
            let mut f: ZSeries<i64> = vec![BTreeMap::new(); order + 1];
            for (j, c) in factor_coeffs(h, false, order / n).into_iter().enumerate() {
                f[j * n].insert(u * j as i64, c);
            }
            acc = mul_z(&acc, &f, |x, y| x + y);
        }
    }
    TruncatedSeries::from_terms(
        &["z"],
        order,
        acc.iter()
            .enumerate()
            .filter_map(|(n, m)| m.get(&0).map(|c| (vec![n], Rational::from_integer(c.clone())))),
    )
}

/// `dim S_n` for `k` even and `l` odd colors, by enumerating partitions and strict partitions.
pub fn fock_dim_oracle(k: usize, l: usize, n: usize) -> BigInt {
    let p: Vec<BigInt> = (0..=n).map(|m| BigInt::from(enumerate_partitions(m).len())).collect();
    let d: Vec<BigInt> = (0..=n).map(|m| BigInt::from(enumerate_strict_partitions(m).len())).collect();
    let convolve = |a: &[BigInt], b: &[BigInt]| -> Vec<BigInt> {
        (0..=n).map(|m| (0..=m).map(|i| &a[i] * &b[m - i]).sum()).collect()
    };
    let mut acc: Vec<BigInt> = (0..=n).map(|m| if m == 0 { BigInt::one() } else { BigInt::zero() }).collect();
    for _ in 0..k {
        acc = convolve(&acc, &p);
    }
    for _ in 0..l {
        acc = convolve(&acc, &d);
    }
    acc[n].clone()
}

/// One verified relation with its case count.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RelationCheck {
    pub relation: String,
    pub cases: usize,
    pub failures: Vec<String>,
}

impl RelationCheck {
    fn new(relation: &str) -> Self {
        RelationCheck { relation: relation.into(), cases: 0, failures: Vec::new() }
    }

    fn record(&mut self, ok: bool, case: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok {
            self.failures.push(case());
        }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Outcome of [`central_charge_check`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ChargeReport {
    pub level: u32,
    pub checks: Vec<RelationCheck>,
}

impl ChargeReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(RelationCheck::passed)
    }
}

/// Heisenberg relations at level `c` on every basis monomial of degree `<= order`:
/// `[v^i_n, v^j_{-n}] = c n (v^i, v^j)`, `[Σ_1, Σ'_{-1}] = c (Σ, Σ')` for all
/// `Σ, Σ'` with coordinates in `{-1, 0, 1}`, and the `q = 1` value of the
/// `q`-deformed pairing for `n <= 10`.
pub fn central_charge_check(c: u32, gram: &[Vec<i64>], order: usize) -> Result<ChargeReport> {
    let pairing = PairingSpec::new(PairingKind::Level(c), gram.to_vec())?;
    let r = gram.len();
    let palette = Palette::even(r);
    let states: Vec<FockState> = (0..=order)
        .flat_map(|d| basis(&palette, d))
        .map(|m| FockState::monomial(&palette, m, int(1)))
        .collect::<Result<_>>()?;
    let ci = c as i64;

    let mut modes = RelationCheck::new("[v^i_n, v^j_-n] = c n (v^i, v^j)");
    for x in &states {
        for i in 0..r {
            for j in 0..r {
                for n in 1..=order.max(1) as i64 {
                    let chk = commutator_check(i, j, n, -n, x, &pairing)?;
                    let ok = chk.holds() && chk.actual == x.scale(&int(ci * n * gram[i][j]));
                    modes.record(ok, || format!("i={i} j={j} n={n}"));
                }
            }
        }
    }

    let mut sigma = RelationCheck::new("[S_1, S'_-1] = c (S, S')");
    let combos: Vec<Vec<i64>> = (0..3usize.pow(r as u32))
        .map(|mut k| {
            (0..r)
                .map(|_| {
                    let d = (k % 3) as i64 - 1;
                    k /= 3;
                    d
                })
                .collect()
        })
        .collect();
    for s in &combos {
        for t in &combos {
            let st: i64 = (0..r).map(|i| (0..r).map(|j| s[i] * gram[i][j] * t[j]).sum::<i64>()).sum();
            for x in &states {
                let ab = apply_combination(s, 1, &apply_combination(t, -1, x, &pairing)?, &pairing)?;
                let ba = apply_combination(t, -1, &apply_combination(s, 1, x, &pairing)?, &pairing)?;
                let ok = ab.sub(&ba)? == x.scale(&int(ci * st));
                sigma.record(ok, || format!("S={s:?} S'={t:?}"));
            }
        }
    }

    let mut q_one = RelationCheck::new("q-pairing at q = 1 equals c n K");
    for row in gram {
        for &k in row {
            for n in 1..=10usize {
                let v = q_pairing(k, n, c)?.at_one();
                q_one.record(v == BigInt::from(ci * n as i64 * k), || format!("K={k} n={n}"));
            }
        }
    }

    Ok(ChargeReport { level: c, checks: vec![modes, sigma, q_one] })
}

/// Outcome of the corner census.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CornerReport {
    pub n_max: usize,
    pub partitions_checked: usize,
    /// Partitions whose excess `|addable| - |removable|` is not 1.
    pub failures: Vec<Vec<usize>>,
}

impl CornerReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// `|addable| - |removable| = 1` for every partition of every `n <= n_max`.
pub fn corner_excess_report(n_max: usize) -> CornerReport {
    let mut checked = 0;
    let mut failures = Vec::new();
    for n in 0..=n_max {
        for p in enumerate_partitions(n) {
            checked += 1;
            if p.corners().excess() != 1 {
                failures.push(p.parts().to_vec());
            }
        }
    }
    CornerReport { n_max, partitions_checked: checked, failures }
}

/// `Σ_i (addable_i - removable_i) = c` over `c`-tuples of partitions of total weight `<= max_weight`.
pub fn multipartition_excess_report(c: usize, max_weight: usize) -> RelationCheck {
    let mut check = RelationCheck::new("sum of corner excesses = c");
    for n in 0..=max_weight {
        for mp in enumerate_multipartitions(c, n) {
            let total: i64 = (0..c).map(|i| mp.component(i).corners().excess()).sum();
            check.record(total == c as i64, || format!("{:?}", mp.components()));
        }
    }
    check
}

/// Excess of one partition, exposed for callers that build their own censuses.
pub fn corner_excess(p: &Partition) -> i64 {
    p.corners().excess()
}
