use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::{parse_rational, Rational};
use crate::error::{usage, Error, Result};

/// Power series in one or two commuting variables, truncated so that no
/// variable exceeds exponent `order`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TruncatedSeries {
    vars: Vec<String>,
    order: usize,
    terms: BTreeMap<Vec<usize>, Rational>,
}

impl TruncatedSeries {
    pub fn zero(vars: &[&str], order: usize) -> Result<Self> {
        if vars.is_empty() || vars.len() > 2 {
            return usage(format!("series take 1 or 2 variables, got {}", vars.len()));
        }
        if vars.len() == 2 && vars[0] == vars[1] {
            return usage("series variables must be distinct");
        }
        Ok(TruncatedSeries {
            vars: vars.iter().map(|v| v.to_string()).collect(),
            order,
            terms: BTreeMap::new(),
        })
    }

    pub fn one(vars: &[&str], order: usize) -> Result<Self> {
        let mut s = Self::zero(vars, order)?;
        s.terms.insert(vec![0; vars.len()], Rational::one());
        Ok(s)
    }

    pub fn monomial(vars: &[&str], order: usize, exps: &[usize], c: Rational) -> Result<Self> {
        Self::from_terms(vars, order, [(exps.to_vec(), c)])
    }

    /// Builds a series from `(exponents, coefficient)` pairs; terms beyond
    /// `order` are dropped and duplicates are summed.
    pub fn from_terms(
        vars: &[&str],
        order: usize,
        terms: impl IntoIterator<Item = (Vec<usize>, Rational)>,
    ) -> Result<Self> {
        let mut s = Self::zero(vars, order)?;
        for (e, c) in terms {
            if e.len() != s.vars.len() {
                return usage(format!(
                    "exponent tuple {e:?} does not match {} variable(s)",
                    s.vars.len()
                ));
            }
            s.add_term(e, c);
        }
        Ok(s)
    }

    fn add_term(&mut self, exps: Vec<usize>, c: Rational) {
        if c.is_zero() || exps.iter().any(|&e| e > self.order) {
            return;
        }
        let slot = self.terms.entry(exps.clone()).or_insert_with(Rational::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&exps);
        }
    }

    pub fn variables(&self) -> Vec<&str> {
        self.vars.iter().map(String::as_str).collect()
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn coeff(&self, exps: &[usize]) -> Rational {
        self.terms.get(exps).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn constant_term(&self) -> Rational {
        self.coeff(&vec![0; self.vars.len()])
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Nonzero terms in graded-lexicographic order.
    pub fn terms(&self) -> Vec<(&[usize], &Rational)> {
        let mut v: Vec<_> = self.terms.iter().map(|(e, c)| (e.as_slice(), c)).collect();
        v.sort_by(|a, b| {
            let da: usize = a.0.iter().sum();
            let db: usize = b.0.iter().sum();
            da.cmp(&db).then_with(|| b.0.cmp(a.0))
        });
        v
    }

    /// Coefficients of `x^0 … x^order` for a one-variable series.
    pub fn coefficients(&self) -> Result<Vec<Rational>> {
        if self.vars.len() != 1 {
            return usage("coefficients() needs a one-variable series");
        }
        Ok((0..=self.order).map(|n| self.coeff(&[n])).collect())
    }

    fn check_compatible(&self, other: &Self) -> Result<()> {
        if self.vars != other.vars {
            return usage(format!(
                "variable sets differ: {:?} vs {:?}",
                self.vars, other.vars
            ));
        }
        if self.order != other.order {
            return usage(format!(
                "truncation orders differ: {} vs {}",
                self.order, other.order
            ));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn neg(&self) -> Self {
        self.scale(&-Rational::one())
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &Rational) -> Self {
        let mut out = TruncatedSeries {
            vars: self.vars.clone(),
            order: self.order,
            terms: BTreeMap::new(),
        };
        for (e, x) in &self.terms {
            out.add_term(e.clone(), x * c);
        }
        out
    }

    /// Product truncated to the common order.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let mut out = TruncatedSeries {
            vars: self.vars.clone(),
            order: self.order,
            terms: BTreeMap::new(),
        };
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let e: Vec<usize> = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                if e.iter().all(|&x| x <= self.order) {
                    out.add_term(e, ca * cb);
                }
            }
        }
        Ok(out)
    }

    /// `Σ_k a^k / k!` for a series with zero constant term.
    pub fn exp(&self) -> Result<Self> {
        if !self.constant_term().is_zero() {
            return usage("exp needs a series with zero constant term");
        }
        let vars = self.variables();
        let mut out = Self::one(&vars, self.order)?;
        let mut power = out.clone();
        // a^k has total degree >= k, and total degree never exceeds vars * order.
        let max_k = self.vars.len() * self.order;
        for k in 1..=max_k {
            power = power.mul(self)?.scale(&Rational::new(BigInt::one(), BigInt::from(k)));
            if power.is_zero() {
                break;
            }
            out = out.add(&power)?;
        }
        Ok(out)
    }

    /// Same series viewed at a smaller truncation order.
    pub fn truncate(&self, order: usize) -> Result<Self> {
        if order > self.order {
            return Err(Error::Truncation { needed: order, available: self.order });
        }
        let vars = self.variables();
        Self::from_terms(&vars, order, self.terms.iter().map(|(e, c)| (e.clone(), c.clone())))
    }

    /// Canonical JSON document `{variables, order, terms: [[exps…, "p/q"]…]}`.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("series JSON is infallible")
    }
}

/// Expansion of `(1 + c·x^exps)^k` for integer `k`, by the generalised binomial theorem.
pub fn power_of_binomial(
    vars: &[&str],
    order: usize,
    exps: &[usize],
    c: i64,
    k: i64,
) -> Result<TruncatedSeries> {
    if exps.len() != vars.len() {
        return usage("monomial exponents do not match the variables");
    }
    if exps.iter().all(|&e| e == 0) {
        return usage("binomial base must be a non-constant monomial");
    }
    let mut terms = Vec::new();
    let mut binom = BigInt::one();
    let base = BigInt::from(c);
    let mut cpow = BigInt::one();
    let mut j = 0usize;
    loop {
        let e: Vec<usize> = exps.iter().map(|x| x * j).collect();
        if e.iter().any(|&x| x > order) || binom.is_zero() {
            break;
        }
        terms.push((e, Rational::from_integer(&binom * &cpow)));
        // C(k, j+1) = C(k, j) * (k - j) / (j + 1)
        binom = binom * BigInt::from(k - j as i64) / BigInt::from(j as i64 + 1);
        cpow *= &base;
        j += 1;
    }
    TruncatedSeries::from_terms(vars, order, terms)
}

/// `(1 - ts)^{-k}` in the variables `t, s` to the given order.
pub fn binomial_power(k: i64, order: usize) -> TruncatedSeries {
    power_of_binomial(&["t", "s"], order, &[1, 1], -1, -k).expect("fixed variable set is valid")
}

impl fmt::Display for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = self.terms();
        if terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (exps, c)) in terms.iter().enumerate() {
            let mag = c.abs();
            match (i, c.is_negative()) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let mono: Vec<String> = exps
                .iter()
                .zip(&self.vars)
                .filter(|(e, _)| **e > 0)
                .map(|(e, v)| if *e == 1 { v.clone() } else { format!("{v}^{e}") })
                .collect();
            if mono.is_empty() {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{}", mono.join("*"))?;
            } else {
                write!(f, "{mag}*{}", mono.join("*"))?;
            }
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct SeriesDoc {
    variables: Vec<String>,
    order: usize,
    terms: Vec<Vec<serde_json::Value>>,
}

impl Serialize for TruncatedSeries {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let terms = self
            .terms()
            .into_iter()
            .map(|(e, c)| {
                let mut row: Vec<serde_json::Value> = e.iter().map(|x| (*x).into()).collect();
                row.push(c.to_string().into());
                row
            })
            .collect();
        SeriesDoc { variables: self.vars.clone(), order: self.order, terms }.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for TruncatedSeries {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let doc = SeriesDoc::deserialize(deserializer)?;
        let vars: Vec<&str> = doc.variables.iter().map(String::as_str).collect();
        let mut terms = Vec::new();
        for row in &doc.terms {
            let (coeff, exps) = row
                .split_last()
                .ok_or_else(|| D::Error::custom("empty term row"))?;
            let c = coeff
                .as_str()
                .ok_or_else(|| D::Error::custom("coefficient must be a \"p/q\" string"))
                .and_then(|s| parse_rational(s).map_err(D::Error::custom))?;
            let e = exps
                .iter()
                .map(|x| x.as_u64().map(|v| v as usize))
                .collect::<Option<Vec<_>>>()
                .ok_or_else(|| D::Error::custom("exponents must be non-negative integers"))?;
            terms.push((e, c));
        }
        TruncatedSeries::from_terms(&vars, doc.order, terms).map_err(D::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::{int, rat};
    use proptest::prelude::*;

    fn one_var(coeffs: &[Rational], order: usize) -> TruncatedSeries {
        TruncatedSeries::from_terms(
            &["x"],
            order,
            coeffs.iter().enumerate().map(|(i, c)| (vec![i], c.clone())),
        )
        .unwrap()
    }

    #[test]
    fn difference_of_squares() {
        let a = one_var(&[int(1), int(1)], 5);
        let b = one_var(&[int(1), int(-1)], 5);
        assert_eq!(a.mul(&b).unwrap(), one_var(&[int(1), int(0), int(-1)], 5));
    }

    #[test]
    fn geometric_inverse_two_variables() {
        let inv = binomial_power(1, 6);
        let lin = power_of_binomial(&["t", "s"], 6, &[1, 1], -1, 1).unwrap();
        assert_eq!(inv.mul(&lin).unwrap(), TruncatedSeries::one(&["t", "s"], 6).unwrap());
    }

    #[test]
    fn euler_product_counts_partitions() {
        let mut prod = TruncatedSeries::one(&["z"], 4).unwrap();
        for m in 1..=4 {
            prod = prod.mul(&power_of_binomial(&["z"], 4, &[m], -1, -1).unwrap()).unwrap();
        }
        let want: Vec<Rational> = [1, 1, 2, 3, 5].iter().map(|&n| int(n)).collect();
        assert_eq!(prod.coefficients().unwrap(), want);
    }

    #[test]
    fn mismatched_series_rejected() {
        let a = TruncatedSeries::one(&["t"], 3).unwrap();
        let b = TruncatedSeries::one(&["s"], 3).unwrap();
        assert!(matches!(a.mul(&b), Err(Error::Usage(_))));
        let c = TruncatedSeries::one(&["t"], 4).unwrap();
        assert!(a.mul(&c).is_err());
        assert!(TruncatedSeries::zero(&[], 3).is_err());
        assert!(TruncatedSeries::zero(&["t", "t"], 3).is_err());
    }

    #[test]
    fn exp_cases() {
        let zero = TruncatedSeries::zero(&["t"], 5).unwrap();
        assert_eq!(zero.exp().unwrap(), TruncatedSeries::one(&["t"], 5).unwrap());

        let t = one_var(&[int(0), int(1)], 3);
        assert_eq!(t.exp().unwrap(), one_var(&[int(1), int(1), rat(1, 2), rat(1, 6)], 3));

        assert!(one_var(&[int(1)], 3).exp().is_err());
    }

    #[test]
    fn exp_of_log_series_is_geometric() {
        // -log(1 - t) = Σ t^n / n; its exponential is 1/(1 - t).
        let order = 10;
        let mut log = vec![int(0)];
        log.extend((1..=order as i64).map(|n| rat(1, n)));
        let got = one_var(&log, order).exp().unwrap();
        assert_eq!(got, one_var(&vec![int(1); order + 1], order));
    }

    #[test]
    fn binomial_power_coefficients() {
        assert_eq!(binomial_power(0, 5), TruncatedSeries::one(&["t", "s"], 5).unwrap());
        let geo = binomial_power(1, 5);
        for n in 0..=5 {
            assert_eq!(geo.coeff(&[n, n]), int(1));
        }
        assert_eq!(binomial_power(2, 5).coeff(&[3, 3]), int(4));
        // (1 - ts)^2 is a polynomial
        let sq = binomial_power(-2, 5);
        assert_eq!(sq.coeff(&[1, 1]), int(-2));
        assert_eq!(sq.coeff(&[2, 2]), int(1));
        assert_eq!(sq.coeff(&[3, 3]), int(0));
    }

    #[test]
    fn binomial_power_two_matches_squared_geometric() {
        let geo = binomial_power(1, 8);
        assert_eq!(geo.mul(&geo).unwrap(), binomial_power(2, 8));
    }

    #[test]
    fn canonical_text_and_json() {
        let s = TruncatedSeries::from_terms(
            &["t", "s"],
            3,
            [(vec![0, 0], int(1)), (vec![1, 1], rat(-1, 2)), (vec![2, 0], int(3)), (vec![4, 0], int(9))],
        )
        .unwrap();
        assert_eq!(s.to_string(), "1 + 3*t^2 - 1/2*t*s");
        let json = s.to_json();
        assert_eq!(
            json,
            serde_json::json!({"variables": ["t", "s"], "order": 3,
                "terms": [[0, 0, "1"], [2, 0, "3"], [1, 1, "-1/2"]]})
        );
        let back: TruncatedSeries = serde_json::from_value(json).unwrap();
        assert_eq!(back, s);
    }

    fn arb_series(vars: &'static [&'static str], order: usize, zero_const: bool)
        -> impl Strategy<Value = TruncatedSeries>
    {
        let n = vars.len();
        proptest::collection::vec(
            (proptest::collection::vec(0..=order, n), -5i64..=5, 1i64..=4),
            0..8,
        )
        .prop_map(move |terms| {
            TruncatedSeries::from_terms(
                vars,
                order,
                terms
                    .into_iter()
                    .filter(|(e, _, _)| !zero_const || e.iter().any(|&x| x > 0))
                    .map(|(e, p, q)| (e, rat(p, q))),
            )
            .unwrap()
        })
    }

    proptest! {
        #[test]
        fn mul_commutative_associative(
            a in arb_series(&["t", "s"], 4, false),
            b in arb_series(&["t", "s"], 4, false),
            c in arb_series(&["t", "s"], 4, false),
        ) {
            prop_assert_eq!(a.mul(&b).unwrap(), b.mul(&a).unwrap());
            prop_assert_eq!(
                a.mul(&b).unwrap().mul(&c).unwrap(),
                a.mul(&b.mul(&c).unwrap()).unwrap()
            );
        }

        #[test]
        fn exp_turns_sums_into_products(
            a in arb_series(&["t", "s"], 3, true),
            b in arb_series(&["t", "s"], 3, true),
        ) {
            let lhs = a.add(&b).unwrap().exp().unwrap();
            let rhs = a.exp().unwrap().mul(&b.exp().unwrap()).unwrap();
            prop_assert_eq!(lhs, rhs);
        }
    }
}
