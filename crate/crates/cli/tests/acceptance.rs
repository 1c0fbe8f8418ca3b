//! Acceptance gate: every criterion runs at zero tolerance and prints one
//! `PASS`/`FAIL` line. Exits nonzero if any criterion fails.

use std::process::{Command, ExitCode};
use std::time::Instant;

use fockforge::fock::{
    basis, commutator_check, coproduct, hh_pairing_table, inner_product, multiply, q_pairing, random_state, tensor,
    tensor_inner_product, PairingKind, PairingSpec, Palette,
};
use fockforge::hilbgen::{
    central_charge_check, corner_excess_report, fock_dim_oracle, generator_series, hilb_hodge_series,
    multipartition_excess_report, u0_series, HodgeDiamond,
};
use fockforge::series::{int, Rational};
use fockforge::vertex::{character, level_dimensions, weight_one_algebra, WeightOneBasis};
use fockforge::{Lattice, Parity};
use num_bigint::BigInt;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn indefinite() -> Lattice {
    Lattice::new(vec![vec![2, 3], vec![3, -4]]).unwrap()
}

/// Partition counts `p(0..=n)` by the standard part-size recurrence.
fn partition_counts(n: usize) -> Vec<u64> {
    let mut p = vec![0u64; n + 1];
    p[0] = 1;
    for part in 1..=n {
        for k in part..=n {
            p[k] += p[k - part];
        }
    }
    p
}

/// Coefficients of `Π_m (1 - z^m)^{-colors}`, i.e. `colors`-tuples of partitions by weight.
fn multipartition_counts(colors: usize, n: usize) -> Vec<u64> {
    let p = partition_counts(n);
    let mut acc = vec![0u64; n + 1];
    acc[0] = 1;
    for _ in 0..colors {
        let mut next = vec![0u64; n + 1];
        for (i, a) in acc.iter().enumerate() {
            for (j, b) in p.iter().enumerate().take(n + 1 - i) {
                next[i + j] += a * b;
            }
        }
        acc = next;
    }
    acc
}

/// 1. `[v^i_n, v^j_m] = n δ_{n+m,0} K_ij` on random states.
fn heisenberg() -> Outcome {
    let mut cases = 0;
    for (li, l) in [Lattice::a_n(1), Lattice::a_n(2), indefinite()].into_iter().enumerate() {
        let pal = Palette::from(&l);
        let pairing = PairingSpec::classical(&l);
        let mut rng = ChaCha8Rng::seed_from_u64(100 + li as u64);
        let modes: Vec<i64> = (-6..=6).filter(|&n| n != 0).collect();
        for _ in 0..50 {
            let x = random_state(&mut rng, &pal, 8);
            for i in 0..l.rank() {
                for j in 0..l.rank() {
                    for &n in &modes {
                        for &m in &modes {
                            let actual = commutator_check(i, j, n, m, &x, &pairing).map_err(|e| e.to_string())?.actual;
                            let expected = if n + m == 0 { x.scale(&int(n * l.gram()[i][j])) } else { x.scale(&int(0)) };
                            ensure(actual == expected, || format!("lattice {li}: i={i} j={j} n={n} m={m}"))?;
                            cases += 1;
                        }
                    }
                }
            }
        }
    }
    Ok(format!("{cases} commutators"))
}

/// 2. `(xy, z) = (x ⊗ y, Δz)`, all three of degree at most 6.
fn adjointness() -> Outcome {
    let mixed = Lattice::with_parity(
        vec![vec![2, 1, 0], vec![1, -2, 0], vec![0, 0, 3]],
        vec![Parity::Even, Parity::Even, Parity::Odd],
    )
    .unwrap();
    let mut cases = 0;
    let mut nonzero = 0;
    for (li, l) in [Lattice::a_n(1), Lattice::a_n(2), indefinite(), mixed].into_iter().enumerate() {
        let pal = Palette::from(&l);
        let pairing = PairingSpec::classical(&l);
        let mut rng = ChaCha8Rng::seed_from_u64(200 + li as u64);
        for t in 0..100 {
            let x = random_state(&mut rng, &pal, 3);
            let y = random_state(&mut rng, &pal, 3);
            let xy = multiply(&x, &y).unwrap();
            // folding xy into z keeps most pairings nonzero
            let z = random_state(&mut rng, &pal, 6).add(&xy).unwrap();
            let lhs = inner_product(&xy, &z, &pairing).map_err(|e| e.to_string())?;
            let rhs = tensor_inner_product(&tensor(&x, &y).unwrap(), &coproduct(&z), &pairing).map_err(|e| e.to_string())?;
            ensure(lhs == rhs, || format!("lattice {li} triple {t}: {lhs} vs {rhs}"))?;
            cases += 1;
            if lhs != int(0) {
                nonzero += 1;
            }
        }
    }
    ensure(nonzero > 0, || "every pairing vanished".into())?;
    Ok(format!("{cases} triples, {nonzero} nonzero"))
}

/// 3. `(h^v_n, h^w_m) = δ_{nm} k(k+1)⋯(k+n-1)/n!` for `(v, w) = k`.
fn generating_function() -> Outcome {
    let order = 8;
    for k in -4..=4i64 {
        let pairing = PairingSpec::new(PairingKind::Classical, vec![vec![0, k], vec![k, 0]]).unwrap();
        let table = hh_pairing_table::<Rational>(&pairing, &[1, 0], &[0, 1], order).map_err(|e| e.to_string())?;
        for n in 0..=order {
            for m in 0..=order {
                let expected = if n == m {
                    (0..n as i64).fold(int(1), |acc, j| acc * int(k + j) / int(j + 1))
                } else {
                    int(0)
                };
                ensure(table[&(n, m)] == expected, || format!("k={k} n={n} m={m}: {} vs {expected}", table[&(n, m)]))?;
            }
        }
    }
    Ok("|k| <= 4, n, m <= 8".into())
}

/// 4. Weight-one algebras of `A1`, `A2` at truncation 6.
fn frenkel_kac() -> Outcome {
    for (l, dim) in [(Lattice::a_n(1), 3), (Lattice::a_n(2), 8)] {
        let alg = weight_one_algebra(&l, 6).map_err(|e| e.to_string())?;
        ensure(alg.dimension() == dim, || format!("dimension {} != {dim}", alg.dimension()))?;
        ensure(alg.is_antisymmetric(), || "antisymmetry".into())?;
        ensure(alg.jacobi_holds(), || "Jacobi".into())?;
        for i in 0..l.rank() {
            for j in 0..l.rank() {
                let ej = alg
                    .basis()
                    .iter()
                    .position(|b| *b == WeightOneBasis::Root(l.basis_vector(j)))
                    .ok_or("simple root missing from the basis")?;
                let br = alg.bracket(i, ej);
                for (b, c) in br.iter().enumerate() {
                    let expected = if b == ej { int(l.gram()[i][j]) } else { int(0) };
                    ensure(*c == expected, || format!("[h_{i}, e^α_{j}] component {b}"))?;
                }
            }
        }
        let cartan = alg.cartan_matrix().ok_or("no Cartan matrix")?;
        let gram: Vec<Vec<Rational>> = l.gram().iter().map(|r| r.iter().map(|&x| int(x)).collect()).collect();
        ensure(cartan == gram, || "Cartan matrix differs from the Gram matrix".into())?;
    }
    Ok("dims 3, 8".into())
}

/// 5. `A1` character against two enumerations: the library's and `Σ_{λ² <= k} p(k - λ²)`.
fn character_consistency() -> Outcome {
    let a1 = Lattice::a_n(1);
    let ch = character(&a1, 6).map_err(|e| e.to_string())?.coefficients().map_err(|e| e.to_string())?;
    let enumerated = level_dimensions(&a1, 6).map_err(|e| e.to_string())?;
    let p = partition_counts(6);
    for k in 0..=6usize {
        let direct: u64 = (-3i64..=3).filter(|l| (l * l) as usize <= k).map(|l| p[k - (l * l) as usize]).sum();
        ensure(ch[k] == int(enumerated[k] as i64) && enumerated[k] as u64 == direct, || {
            format!("level {k}: product {} enumeration {} direct {direct}", ch[k], enumerated[k])
        })?;
    }
    Ok(format!("{enumerated:?}"))
}

/// 6. Level-`c` relations and `q = 1` specialisation.
fn central_charge() -> Outcome {
    for c in 1..=3u32 {
        for l in [Lattice::a_n(1), Lattice::a_n(2), indefinite()] {
            let rep = central_charge_check(c, l.gram(), 3).map_err(|e| e.to_string())?;
            ensure(rep.passed(), || format!("c={c}: {:?}", rep.checks.iter().flat_map(|r| r.failures.first()).collect::<Vec<_>>()))?;
        }
        for k in -4..=4i64 {
            for n in 1..=10usize {
                let at_one = q_pairing(k, n, c).map_err(|e| e.to_string())?.at_one();
                ensure(at_one == BigInt::from(c as i64 * n as i64 * k), || format!("c={c} K={k} n={n}"))?;
            }
        }
    }
    Ok("c = 1, 2, 3".into())
}

/// 7. Corner excess over all partitions of `n <= 25` and pairs of total weight `<= 10`.
fn corners() -> Outcome {
    let rep = corner_excess_report(25);
    let total: u64 = partition_counts(25).iter().sum();
    ensure(rep.passed(), || format!("failures {:?}", rep.failures))?;
    ensure(rep.partitions_checked as u64 == total, || format!("{} partitions, expected {total}", rep.partitions_checked))?;
    let multi = multipartition_excess_report(2, 10);
    let pairs: u64 = multipartition_counts(2, 10).iter().sum();
    ensure(multi.passed(), || format!("failures {:?}", multi.failures))?;
    ensure(multi.cases as u64 == pairs, || format!("{} pairs, expected {pairs}", multi.cases))?;
    Ok(format!("{total} partitions, {pairs} pairs"))
}

/// 8. Hilbert-scheme totals against monomial enumeration.
fn dimension_oracle() -> Outcome {
    for (name, x) in [("P2", HodgeDiamond::p2_like()), ("K3", HodgeDiamond::k3_like())] {
        let s = hilb_hodge_series(&x, 8);
        let (even, odd) = x.color_counts();
        let mut parity = vec![Parity::Even; even as usize];
        parity.extend(vec![Parity::Odd; odd as usize]);
        let pal = Palette::new(parity);
        for n in 0..=8 {
            let count = BigInt::from(basis(&pal, n).len());
            ensure(s.total(n) == count, || format!("{name} n={n}: {} vs {count}", s.total(n)))?;
            ensure(fock_dim_oracle(even as usize, odd as usize, n) == count, || format!("{name} n={n}: oracle"))?;
        }
        ensure(s.polynomial(1) == Some(&x.hodge_polynomial()), || format!("{name}: Hilb^1 X != X"))?;
    }
    let p2 = HodgeDiamond::p2_like();
    let enumerated = basis(&Palette::even(3), 2).len();
    ensure(enumerated == 9, || format!("enumeration gives {enumerated}"))?;
    ensure(hilb_hodge_series(&p2, 2).total(2) == BigInt::from(9), || "Hilb^2 P2 total Betti".into())?;
    Ok("n <= 8; Hilb^2 P2 total 9".into())
}

/// 9. `u^0` series against the `(n, n)` diagonal for the diamond with only `h20`, `h02`, `h11`.
fn u0_formula() -> Outcome {
    let p = partition_counts(6);
    for h20 in 0..=2u64 {
        for h11 in [0u64, 1, 2, 3, 20] {
            let series = u0_series(h20, h11, 6).map_err(|e| e.to_string())?.coefficients().map_err(|e| e.to_string())?;
            let diag = generator_series(&[[0, 0, h20], [0, h11, 0], [h20, 0, 0]], 6).diagonal();
            for n in 0..=6 {
                ensure(series[n] == Rational::from_integer(diag[n].clone()), || {
                    format!("h20={h20} h11={h11} n={n}: {} vs {}", series[n], diag[n])
                })?;
            }
            if h20 == 0 {
                let expected = multipartition_counts(h11 as usize, 6);
                for n in 0..=6 {
                    ensure(series[n] == int(expected[n] as i64), || format!("h11={h11} n={n}: degeneration"))?;
                }
            }
        }
    }
    ensure(p[6] == 11, || "partition oracle".into())?;
    Ok("n <= 6".into())
}

/// 10. `check-all` twice with the same seed, byte for byte, in both formats.
fn determinism() -> Outcome {
    let dir = std::env::temp_dir().join(format!("fockforge-acceptance-{}", std::process::id()));
    std::fs::create_dir_all(&dir).map_err(|e| e.to_string())?;
    let a1 = dir.join("a1.json");
    std::fs::write(&a1, r#"{"rank": 1, "gram": [[2]]}"#).map_err(|e| e.to_string())?;
    let run = |format: &str| {
        Command::new(env!("CARGO_BIN_EXE_fockforge"))
            .env_remove("FOCKFORGE_MAX_ORDER")
            .args(["check-all", "--lattice", a1.to_str().unwrap(), "--order", "6", "--seed", "7", "--format", format])
            .output()
            .map_err(|e| e.to_string())
    };
    let mut bytes = 0;
    for format in ["json", "tsv"] {
        let a = run(format)?;
        let b = run(format)?;
        ensure(a.status.code() == Some(0), || format!("exit {:?}: {}", a.status.code(), String::from_utf8_lossy(&a.stderr)))?;
        ensure(a.stdout == b.stdout && !a.stdout.is_empty(), || format!("{format} reports differ"))?;
        bytes += a.stdout.len();
    }
    let _ = std::fs::remove_dir_all(&dir);
    Ok(format!("{bytes} bytes identical"))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 10] = [
        ("heisenberg commutators", heisenberg),
        ("hopf adjointness", adjointness),
        ("(1 - ts)^-(v,w) generating function", generating_function),
        ("weight-one lie algebras", frenkel_kac),
        ("character vs enumeration", character_consistency),
        ("central charge", central_charge),
        ("corner census", corners),
        ("hilbert scheme dimension oracle", dimension_oracle),
        ("u^0 formula", u0_formula),
        ("check-all determinism", determinism),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = f();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS {:>2} {name} ({detail}) [{secs:.2}s]", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {:>2} {name}: {why} [{secs:.2}s]", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
