//! Seeded verification suites behind `check-all`.
//!
//! Each suite draws from its own ChaCha8 stream derived from the run seed, so
//! suites can run in parallel and the report order and content are fixed by
//! `(lattice, order, seed)` alone.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::fock::{
    basis, commutator_check, coproduct, h_element, h_elements, h_from_cycle_index, hh_pairing_series,
    inner_product, multiply, newton_convert, power_sum_element, primitive_dimension, q_pairing, random_state,
    tensor, tensor_inner_product, FockTensor, NewtonDirection, PairingKind, PairingSpec, Palette,
};
use crate::hilbgen::{
    central_charge_check, corner_excess_report, fock_dim_oracle, generator_series, hilb_hodge_series,
    multipartition_excess_report, u0_series, HodgeDiamond,
};
use crate::lattice::{Lattice, LatticeDoc};
use crate::partitions::{component_census, enumerate_partitions, stratum_dim_hilb, stratum_dim_sym, stratum_fiber_dim};
use crate::series::{binomial_power, int, power_of_binomial, Rational, TruncatedSeries};
use crate::vertex::{
    ch2_of, character, l0_eigenvalue, level_basis, level_dimensions, vertex_mode_apply, weight_one_algebra,
    ChargedState,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    /// Preconditions of the suite do not hold for this lattice.
    Skipped,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ReportEntry {
    pub id: String,
    /// The identity being verified.
    pub anchor: String,
    pub status: Status,
    pub cases: usize,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Report {
    pub seed: u64,
    pub order: usize,
    pub lattice: LatticeDoc,
    pub passed: bool,
    pub entries: Vec<ReportEntry>,
}

impl Report {
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("report JSON")
    }

    pub fn to_tsv(&self) -> String {
        let mut out = format!("# seed={} order={}\nid\tstatus\tcases\tanchor\tdetail\n", self.seed, self.order);
        for e in &self.entries {
            let status = serde_json::to_value(e.status).expect("status JSON");
            out.push_str(&format!(
                "{}\t{}\t{}\t{}\t{}\n",
                e.id,
                status.as_str().unwrap_or_default(),
                e.cases,
                e.anchor,
                e.detail
            ));
        }
        out
    }
}

/// Parameters shared by every suite.
#[derive(Clone, Debug)]
pub struct CheckConfig {
    pub lattice: Lattice,
    pub order: usize,
    pub seed: u64,
}

/// Accumulates cases for one suite.
struct Tally {
    cases: usize,
    first_failure: Option<String>,
}

impl Tally {
    fn new() -> Self {
        Tally { cases: 0, first_failure: None }
    }

    fn check(&mut self, ok: bool, case: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok && self.first_failure.is_none() {
            self.first_failure = Some(case());
        }
    }

    /// Folds in `cases` cases checked elsewhere.
    fn absorb(&mut self, cases: usize, ok: bool, case: impl FnOnce() -> String) {
        self.cases += cases.saturating_sub(1);
        self.check(ok, case);
    }

    fn finish(self, id: &str, anchor: &str) -> ReportEntry {
        let (status, detail) = match self.first_failure {
            None => (Status::Pass, String::new()),
            Some(f) => (Status::Fail, format!("first failure: {f}")),
        };
        ReportEntry { id: id.into(), anchor: anchor.into(), status, cases: self.cases, detail }
    }
}

fn skipped(id: &str, anchor: &str, why: &str) -> ReportEntry {
    ReportEntry { id: id.into(), anchor: anchor.into(), status: Status::Skipped, cases: 0, detail: why.into() }
}

type Suite = fn(&CheckConfig, &mut ChaCha8Rng) -> Result<ReportEntry>;

const SUITES: &[(&str, Suite)] = &[
    ("fock.heisenberg", heisenberg),
    ("fock.adjoint", adjoint),
    ("fock.group-like", group_like),
    ("fock.primitive", primitive),
    ("fock.free-generation", free_generation),
    ("fock.q-pairing", q_specialisation),
    ("fock.hh-series", hh_series),
    ("fock.newton", newton),
    ("partitions.strata", strata),
    ("vertex.degrees", degrees),
    ("vertex.weight-one", weight_one),
    ("vertex.commutation", commutation),
    ("vertex.character", character_suite),
    ("hilb.charge", charge),
    ("hilb.corners", corners),
    ("hilb.hodge", hodge),
    ("hilb.u0", u0),
];

/// Ids of every suite in report order.
pub fn suite_ids() -> Vec<&'static str> {
    SUITES.iter().map(|(id, _)| *id).collect()
}

/// Runs every suite; suites with unmet preconditions are reported as skipped.
pub fn check_all(cfg: &CheckConfig) -> Result<Report> {
    run_suites(cfg, |_| true)
}

/// Runs the suites whose id satisfies `select`.
pub fn run_suites(cfg: &CheckConfig, select: impl Fn(&str) -> bool + Sync) -> Result<Report> {
    let chosen: Vec<(usize, &(&str, Suite))> = SUITES.iter().enumerate().filter(|(_, (id, _))| select(id)).collect();
    let entries = chosen
        .par_iter()
        .map(|(k, (_, suite))| {
            let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
            rng.set_stream(*k as u64);
            suite(cfg, &mut rng)
        })
        .collect::<Result<Vec<_>>>()?;
    let passed = entries.iter().all(|e| e.status != Status::Fail);
    Ok(Report { seed: cfg.seed, order: cfg.order, lattice: cfg.lattice.to_doc(), passed, entries })
}

fn heisenberg(cfg: &CheckConfig, rng: &mut ChaCha8Rng) -> Result<ReportEntry> {
    let l = &cfg.lattice;
    let pal = Palette::from(l);
    let pairing = PairingSpec::classical(l);
    let max_mode = 6.min(cfg.order.max(1)) as i64;
    let mut t = Tally::new();
    for _ in 0..50 {
        let x = random_state(rng, &pal, cfg.order.min(8));
        for i in 0..l.rank() {
            for j in 0..l.rank() {
                for n in 1..=max_mode {
                    for m in 1..=max_mode {
                        for (a, b) in [(n, -m), (n, m), (-n, -m)] {
                            let ok = commutator_check(i, j, a, b, &x, &pairing)?.holds();
                            t.check(ok, || format!("i={i} j={j} modes ({a},{b})"));
                        }
                    }
                }
            }
        }
    }
    Ok(t.finish("fock.heisenberg", "[v_n, w_m] = δ_{n,-m} (v_n, w_n)"))
}

fn adjoint(cfg: &CheckConfig, rng: &mut ChaCha8Rng) -> Result<ReportEntry> {
    let l = &cfg.lattice;
    let pal = Palette::from(l);
    let pairing = PairingSpec::classical(l);
    let deg = cfg.order.min(6);
    let mut t = Tally::new();
    for k in 0..100 {
        let x = random_state(rng, &pal, deg / 2);
        let y = random_state(rng, &pal, deg - deg / 2);
        let z = random_state(rng, &pal, deg);
        let lhs = inner_product(&multiply(&x, &y)?, &z, &pairing)?;
        let rhs = tensor_inner_product(&tensor(&x, &y)?, &coproduct(&z), &pairing)?;
        t.check(lhs == rhs, || format!("triple {k}"));
    }
    Ok(t.finish("fock.adjoint", "(xy, z) = (x ⊗ y, Δz)"))
}

fn even_combination(l: &Lattice) -> Vec<i64> {
    l.parity().iter().enumerate().map(|(i, p)| if p.is_odd() { 0 } else { 1 + i as i64 }).collect()
}

fn group_like(cfg: &CheckConfig, _: &mut ChaCha8Rng) -> Result<ReportEntry> {
    let pal = Palette::from(&cfg.lattice);
    let v = even_combination(&cfg.lattice);
    let n_max = cfg.order.min(8);
    let hs = h_elements(&pal, &v, n_max)?;
    let mut t = Tally::new();
    for n in 0..=n_max {
        let mut rhs = FockTensor::zero(&pal);
        for a in 0..=n {
            rhs = rhs.add(&tensor(&hs[a], &hs[n - a])?)?;
        }
        t.check(coproduct(&hs[n]) == rhs, || format!("n={n}"));
        t.check(hs[n].homogeneous_degree() == Some(n), || format!("degree of h_{n}"));
    }
    Ok(t.finish("fock.group-like", "Δh_n = Σ_a h_a ⊗ h_{n-a}"))
}

fn primitive(cfg: &CheckConfig, _: &mut ChaCha8Rng) -> Result<ReportEntry> {
    let pal = Palette::from(&cfg.lattice);
    if pal.len() > 3 {
        return Ok(skipped("fock.primitive", "dim Prim(S_n) = rank", "rank above 3"));
    }
    let mut t = Tally::new();
    for n in 1..=cfg.order.min(5) {
        let d = primitive_dimension(&pal, n);
        t.check(d == pal.len(), || format!("n={n}: {d}"));
    }
    Ok(t.finish("fock.primitive", "dim Prim(S_n) = rank"))
}

fn free_generation(cfg: &CheckConfig, _: &mut ChaCha8Rng) -> Result<ReportEntry> {
    let pal = Palette::from(&cfg.lattice);
    let k = pal.parity().iter().filter(|p| !p.is_odd()).count() as i64;
    let l = pal.len() as i64 - k;
    let n_max = cfg.order.min(10);
    let mut series = TruncatedSeries::one(&["x"], n_max)?;
    for m in 1..=n_max {
        series = series.mul(&power_of_binomial(&["x"], n_max, &[m], 1, l)?)?;
        series = series.mul(&power_of_binomial(&["x"], n_max, &[m], -1, -k)?)?;
    }
    let mut t = Tally::new();
    for n in 0..=n_max {
        let count = basis(&pal, n).len();
        t.check(int(count as i64) == series.coeff(&[n]), || format!("n={n}"));
        t.check(
            Rational::from_integer(fock_dim_oracle(k as usize, l as usize, n)) == series.coeff(&[n]),
            || format!("oracle n={n}"),
        );
    }
    Ok(t.finish("fock.free-generation", "Σ dim S_n x^n = Π_m (1 + x^m)^l (1 - x^m)^{-k}"))
}

fn q_specialisation(cfg: &CheckConfig, _: &mut ChaCha8Rng) -> Result<ReportEntry> {
    let mut t = Tally::new();
    for row in cfg.lattice.gram() {
        for &k in row {
            for c in 1..=3u32 {
                for n in 1..=10usize {
                    let p = q_pairing(k, n, c)?;
                    t.check(p.is_palindromic(), || format!("K={k} n={n} c={c} palindromic"));
                    let expected = num_bigint::BigInt::from(n as i64 * c as i64 * k);
                    t.check(p.at_one() == expected, || format!("K={k} n={n} c={c} at q=1"));
                }
            }
        }
    }
    Ok(t.finish("fock.q-pairing", "n [ncK]/[n] at q = 1 equals ncK"))
}

fn hh_series(cfg: &CheckConfig, _: &mut ChaCha8Rng) -> Result<ReportEntry> {
    let n = cfg.order.min(8);
    let mut t = Tally::new();
    for k in -4..=4 {
        let s = hh_pairing_series(k, n, PairingKind::Classical)?;
        t.check(s == binomial_power(k, n), || format!("k={k}"));
    }
    Ok(t.finish("fock.hh-series", "Σ (h^v_n, h^w_m) t^n s^m = (1 - ts)^{-(v,w)}"))
}

fn newton(cfg: &CheckConfig, _: &mut ChaCha8Rng) -> Result<ReportEntry> {
    let n = cfg.order.clamp(1, 8);
    let h_in_p = newton_convert(NewtonDirection::HInP, n)?;
    let p_in_h = newton_convert(NewtonDirection::PInH, n)?;
    let pal = Palette::from(&cfg.lattice);
    let v = even_combination(&cfg.lattice);
    let gens = (1..=n).map(|k| power_sum_element(&pal, &v, k)).collect::<Result<Vec<_>>>()?;
    let mut t = Tally::new();
    for k in 1..=n {
        t.check(h_in_p[k - 1] == h_from_cycle_index(k), || format!("cycle index k={k}"));
        let back = p_in_h[k - 1].substitute(&h_in_p)?;
        t.check(back == crate::fock::SymPoly::generator(k), || format!("inverse k={k}"));
        t.check(h_in_p[k - 1].evaluate(&gens)? == h_element(&pal, &v, k)?, || format!("Fock k={k}"));
    }
    Ok(t.finish("fock.newton", "h_n = Σ_{λ ⊢ n} p_λ / z_λ with p_n = r_n"))
}

fn strata(cfg: &CheckConfig, _: &mut ChaCha8Rng) -> Result<ReportEntry> {
    let mut t = Tally::new();
    for n in 1..=cfg.order.max(1) {
        for a in enumerate_partitions(n) {
            let ok = stratum_dim_hilb(&a) - stratum_dim_sym(&a) == n - a.len() && stratum_fiber_dim(&a) == n - a.len();
            t.check(ok, || format!("{:?}", a.parts()));
        }
        let census = component_census(n);
        t.check(census.dimension == n && census.components == enumerate_partitions(n).len(), || format!("census n={n}"));
    }
    Ok(t.finish("partitions.strata", "dim Hilb_α - dim Sym_α = n - ℓ(α)"))
}

fn degrees(cfg: &CheckConfig, _: &mut ChaCha8Rng) -> Result<ReportEntry> {
    let l = &cfg.lattice;
    let anchor = "L₀ = ½(λ,λ) + n, ch₂ = ½(λ,λ) - n";
    let mut t = Tally::new();
    let charges: Vec<_> = if l.is_positive_definite() && l.is_all_even() {
        let mut v = l.vectors_up_to_norm(2 * cfg.order.min(4) as i64)?;
        v.push(l.zero_vector());
        v
    } else {
        (0..l.rank()).filter(|&i| !l.parity()[i].is_odd()).map(|i| l.basis_vector(i)).collect()
    };
    for lambda in &charges {
        let norm = int(l.norm(lambda)?);
        for n in 0..=cfg.order {
            let l0 = l0_eigenvalue(l, lambda, n)?;
            let ch = ch2_of(l, lambda, n)?;
            t.check(&l0 + &ch == norm, || format!("{lambda} n={n}"));
        }
    }
    Ok(t.finish("vertex.degrees", anchor))
}

fn vertex_ready(l: &Lattice) -> Result<Option<&'static str>> {
    if !l.is_all_even() || !l.is_positive_definite() {
        return Ok(Some("lattice is not positive definite and even"));
    }
    if !l.spanned_by_roots()? {
        return Ok(Some("lattice is not spanned by roots"));
    }
    Ok(None)
}

fn weight_one(cfg: &CheckConfig, _: &mut ChaCha8Rng) -> Result<ReportEntry> {
    let id = "vertex.weight-one";
    let anchor = "F_1 ≅ g: [h_i, e^{α_j}] = (α_i, α_j) e^{α_j}";
    if let Some(why) = vertex_ready(&cfg.lattice)? {
        return Ok(skipped(id, anchor, why));
    }
    let alg = weight_one_algebra(&cfg.lattice, cfg.order.max(1))?;
    let mut t = Tally::new();
    let roots = cfg.lattice.roots()?.len();
    t.check(alg.dimension() == cfg.lattice.rank() + roots, || "dimension".into());
    t.check(alg.is_antisymmetric(), || "antisymmetry".into());
    t.check(alg.jacobi_holds(), || "Jacobi".into());
    t.check(alg.form_is_invariant(), || "invariant form".into());
    if let Some(cartan) = alg.cartan_matrix() {
        for (i, row) in cartan.iter().enumerate() {
            for (j, c) in row.iter().enumerate() {
                t.check(*c == int(cfg.lattice.gram()[i][j]), || format!("Cartan ({i},{j})"));
            }
        }
    }
    Ok(t.finish(id, anchor))
}

fn commutation(cfg: &CheckConfig, _: &mut ChaCha8Rng) -> Result<ReportEntry> {
    let id = "vertex.commutation";
    let anchor = "[Γ_α(m), Γ_β(n)] = ε(α,β) Γ_{α+β}(m+n) for (α,β) = -1";
    let l = &cfg.lattice;
    if let Some(why) = vertex_ready(l)? {
        return Ok(skipped(id, anchor, why));
    }
    let order = cfg.order.max(4);
    let roots = l.roots()?;
    let states: Vec<ChargedState> = (0..=1)
        .map(|k| level_basis(l, k))
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .flatten()
        .map(|(lambda, m)| ChargedState::basis_element(l, lambda, m, int(1)))
        .collect::<Result<_>>()?;
    let mut t = Tally::new();
    for a in &roots {
        for b in &roots {
            let ab = l.inner(a, b)?;
            if ab == -2 {
                continue;
            }
            for m in -1..=1i64 {
                for n in -1..=1i64 {
                    for x in &states {
                        let lhs = vertex_mode_apply(l, a, m, &vertex_mode_apply(l, b, n, x, order)?, order)?;
                        let rhs = vertex_mode_apply(l, b, n, &vertex_mode_apply(l, a, m, x, order)?, order)?;
                        let actual = lhs.sub(&rhs)?;
                        let expected = if ab == -1 {
                            vertex_mode_apply(l, &a.add(b), m + n, x, order)?.scale(&int(l.epsilon(a, b)? as i64))
                        } else {
                            ChargedState::zero(x.palette())
                        };
                        t.check(actual == expected, || format!("α={a} β={b} m={m} n={n}"));
                    }
                }
            }
        }
    }
    Ok(t.finish(id, anchor))
}

fn character_suite(cfg: &CheckConfig, _: &mut ChaCha8Rng) -> Result<ReportEntry> {
    let id = "vertex.character";
    let anchor = "Σ dim F_k q^k = θ_L(q) Π_m (1 - q^m)^{-rank}";
    let l = &cfg.lattice;
    if !l.is_all_even() || !l.is_positive_definite() {
        return Ok(skipped(id, anchor, "lattice is not positive definite and even"));
    }
    let n = cfg.order.min(6);
    let ch = character(l, n)?;
    let dims = level_dimensions(l, n)?;
    let mut t = Tally::new();
    for (k, d) in dims.iter().enumerate() {
        t.check(ch.coeff(&[k]) == int(*d as i64), || format!("level {k}"));
    }
    Ok(t.finish(id, anchor))
}

fn charge(cfg: &CheckConfig, _: &mut ChaCha8Rng) -> Result<ReportEntry> {
    let mut t = Tally::new();
    for c in 1..=3 {
        let rep = central_charge_check(c, cfg.lattice.gram(), cfg.order.min(3))?;
        for chk in &rep.checks {
            t.absorb(chk.cases, chk.passed(), || format!("c={c}: {} {:?}", chk.relation, chk.failures.first()));
        }
    }
    Ok(t.finish("hilb.charge", "[h^Σ_1, h^{Σ'}_{-1}] = c (Σ, Σ')"))
}

fn corners(_: &CheckConfig, _: &mut ChaCha8Rng) -> Result<ReportEntry> {
    let mut t = Tally::new();
    let rep = corner_excess_report(25);
    t.absorb(rep.partitions_checked, rep.passed(), || format!("{:?}", rep.failures.first()));
    let multi = multipartition_excess_report(2, 10);
    t.absorb(multi.cases, multi.passed(), || format!("{:?}", multi.failures.first()));
    Ok(t.finish("hilb.corners", "#addable - #removable = 1"))
}

fn hodge(cfg: &CheckConfig, _: &mut ChaCha8Rng) -> Result<ReportEntry> {
    let n_max = cfg.order.min(8);
    let mut t = Tally::new();
    for x in [HodgeDiamond::p2_like(), HodgeDiamond::k3_like()] {
        let s = hilb_hodge_series(&x, n_max);
        let (k, l) = x.color_counts();
        t.check(s.is_symmetric(), || "t ↔ s symmetry".into());
        if n_max >= 1 {
            t.check(s.polynomial(1) == Some(&x.hodge_polynomial()), || "Hilb^1 X = X".into());
        }
        for n in 0..=n_max {
            t.check(s.total(n) == fock_dim_oracle(k as usize, l as usize, n), || format!("n={n}"));
        }
    }
    if n_max >= 2 {
        let total = hilb_hodge_series(&HodgeDiamond::p2_like(), 2).total(2);
        t.check(total == 9.into(), || format!("Hilb^2 P^2 total {total}"));
    }
    Ok(t.finish("hilb.hodge", "r^Z_n ∈ S_n^{n+p-1, n+q-1}, free generation"))
}

fn u0(cfg: &CheckConfig, _: &mut ChaCha8Rng) -> Result<ReportEntry> {
    let n = cfg.order.min(6);
    let mut t = Tally::new();
    for (h20, h11) in [(0u64, 1u64), (1, 20), (2, 3)] {
        let series = u0_series(h20, h11, n)?;
        let diag = generator_series(&[[0, 0, h20], [0, h11, 0], [h20, 0, 0]], n).diagonal();
        for (k, d) in diag.iter().enumerate() {
            t.check(series.coeff(&[k]) == Rational::from_integer(d.clone()), || format!("h20={h20} h11={h11} n={k}"));
        }
        if h20 == 0 {
            let mut prod = TruncatedSeries::one(&["z"], n)?;
            for m in 1..=n {
                prod = prod.mul(&power_of_binomial(&["z"], n, &[m], -1, -(h11 as i64))?)?;
            }
            t.check(series == prod, || "h20 = 0 degeneration".into());
        }
    }
    Ok(t.finish("hilb.u0", "[u^0] Π_n ((1 - z^n u)(1 - z^n u^{-1}))^{-h20} (1 - z^n)^{-h11}"))
}

/// Maps an error to the CLI exit status: 2 usage/parse, 3 unsupported, 4 truncation, 1 otherwise.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Usage(_) | Error::Parse(_) => 2,
        Error::Unsupported(_) => 3,
        Error::Truncation { .. } => 4,
        Error::Internal(_) => 1,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn a1_report_passes_and_is_deterministic() {
        let cfg = CheckConfig { lattice: Lattice::a_n(1), order: 4, seed: 7 };
        let a = check_all(&cfg).unwrap();
        let b = check_all(&cfg).unwrap();
        assert_eq!(a, b);
        assert!(a.passed, "{}", a.to_tsv());
        assert_eq!(a.entries.iter().map(|e| e.id.as_str()).collect::<Vec<_>>(), suite_ids());
        assert!(a.entries.iter().all(|e| e.status == Status::Pass));
    }

    #[test]
    fn indefinite_lattice_skips_vertex_suites() {
        let l = Lattice::new(vec![vec![2, 3], vec![3, -4]]).unwrap();
        let rep = check_all(&CheckConfig { lattice: l, order: 3, seed: 1 }).unwrap();
        assert!(rep.passed, "{}", rep.to_tsv());
        let status = |id: &str| rep.entries.iter().find(|e| e.id == id).unwrap().status;
        assert_eq!(status("vertex.weight-one"), Status::Skipped);
        assert_eq!(status("fock.heisenberg"), Status::Pass);
    }

    #[test]
    fn exit_codes() {
        assert_eq!(exit_code(&Error::Usage("x".into())), 2);
        assert_eq!(exit_code(&Error::Unsupported("x".into())), 3);
        assert_eq!(exit_code(&Error::Truncation { needed: 2, available: 1 }), 4);
    }
}
