use std::path::Path;

use fockforge::fock::{
    apply, hh_pairing_series, hh_pairing_series_q, inner_product, FockVector, OperatorSymbol, PairingKind,
    PairingSpec, Palette,
};
use fockforge::hilbgen::{
    central_charge_check, corner_excess_report, hilb_hodge_series, multipartition_excess_report, u0_series,
    HodgeDiamond,
};
use fockforge::partitions::{
    component_census, enumerate_partitions, enumerate_strict_partitions, stratum_dim_hilb, stratum_dim_sym,
    stratum_fiber_dim,
};
use fockforge::series::Scalar;
use fockforge::verify::{check_all, run_suites, CheckConfig, Report};
use fockforge::vertex::{character, weight_one_algebra};
use fockforge::{Error, Lattice, Rational, RationalLaurent, Result};
use serde_json::{json, Value};

use crate::input::{self, capped};
use crate::output::{cell, grid, Output};
use crate::{Cli, Command, FockCommand, HilbCommand, PairingArgs, PairingChoice, PartitionCommand, VertexCommand};

pub fn run(cli: &Cli) -> Result<Output> {
    match &cli.command {
        Command::CheckAll { lattice, order } => {
            let cfg = CheckConfig { lattice: input::lattice(lattice)?, order: capped(*order)?, seed: cli.seed };
            Ok(report("check-all", check_all(&cfg)?))
        }
        Command::Fock(cmd) => fock(cmd, cli.seed),
        Command::Vertex(cmd) => vertex(cmd),
        Command::Hilb(cmd) => hilb(cmd),
        Command::Partition(cmd) => partition(cmd),
    }
}

fn report(command: &'static str, r: Report) -> Output {
    let passed = r.passed;
    let tsv = r.to_tsv();
    Output::new(command, r.to_json()).with_tsv(tsv).with_status(passed)
}

fn fock(cmd: &FockCommand, seed: u64) -> Result<Output> {
    match cmd {
        FockCommand::Apply { lattice, state, ops, pairing } => {
            let l = input::lattice(lattice)?;
            let ops = ops.iter().map(|s| input::operator(s)).collect::<Result<Vec<_>>>()?;
            let spec = pairing_spec(&l, pairing)?;
            let q = input::q_value(pairing.q.as_deref())?;
            let json = match spec.kind() {
                PairingKind::QDeformed(_) => apply_ops::<RationalLaurent>(&l, state, &ops, &spec, q.as_ref())?,
                _ => apply_ops::<Rational>(&l, state, &ops, &spec, q.as_ref())?,
            };
            Ok(Output::new("fock apply", json))
        }
        FockCommand::Pair { lattice, left, right, pairing } => {
            let l = input::lattice(lattice)?;
            let spec = pairing_spec(&l, pairing)?;
            let q = input::q_value(pairing.q.as_deref())?;
            let value = match spec.kind() {
                PairingKind::QDeformed(_) => pair::<RationalLaurent>(&l, left, right, &spec, q.as_ref())?,
                _ => pair::<Rational>(&l, left, right, &spec, q.as_ref())?,
            };
            let tsv = format!("{}\n", cell(&value));
            Ok(Output::new("fock pair", json!({ "value": value })).with_tsv(tsv))
        }
        FockCommand::HhSeries { k, order, pairing } => hh_series(*k, capped(*order)?, pairing),
        FockCommand::CheckAxioms { lattice, order } => {
            let cfg = CheckConfig { lattice: input::lattice(lattice)?, order: capped(*order)?, seed };
            Ok(report("fock check-axioms", run_suites(&cfg, |id| id.starts_with("fock."))?))
        }
    }
}

fn pairing_kind(args: &PairingArgs) -> PairingKind {
    match args.pairing {
        PairingChoice::Classical => PairingKind::Classical,
        PairingChoice::Level => PairingKind::Level(args.level),
        PairingChoice::QDeformed => PairingKind::QDeformed(args.level),
    }
}

fn pairing_spec(l: &Lattice, args: &PairingArgs) -> Result<PairingSpec> {
    PairingSpec::new(pairing_kind(args), l.gram().to_vec())
}

fn scalar_json<R: Scalar>(c: &R, q: Option<&Rational>) -> Result<Value> {
    Ok(match q {
        Some(q) => c.eval_q(q)?.to_json(),
        None => c.to_json(),
    })
}

fn load_state<R: Scalar>(l: &Lattice, path: &Path) -> Result<FockVector<R>> {
    let x: FockVector<R> = input::state(path)?;
    if x.palette() != &Palette::from(l) {
        return Err(Error::Usage(format!("{}: state palette does not match the lattice parities", path.display())));
    }
    Ok(x)
}

fn apply_ops<R: Scalar>(
    l: &Lattice,
    path: &Path,
    ops: &[(usize, i64)],
    spec: &PairingSpec,
    q: Option<&Rational>,
) -> Result<Value> {
    let mut x: FockVector<R> = load_state(l, path)?;
    for &(color, mode) in ops.iter().rev() {
        x = apply(OperatorSymbol::new(color, mode)?, &x, spec)?;
    }
    match q {
        Some(q) => Ok(x.map_coeffs(|c| c.eval_q(q))?.to_json()),
        None => Ok(x.to_json()),
    }
}

fn pair<R: Scalar>(l: &Lattice, left: &Path, right: &Path, spec: &PairingSpec, q: Option<&Rational>) -> Result<Value> {
    let x: FockVector<R> = load_state(l, left)?;
    let y: FockVector<R> = load_state(l, right)?;
    scalar_json(&inner_product(&x, &y, spec)?, q)
}

fn hh_series(k: i64, order: usize, args: &PairingArgs) -> Result<Output> {
    let q = input::q_value(args.q.as_deref())?;
    let mut terms: Vec<((usize, usize), Value)> = Vec::new();
    match pairing_kind(args) {
        PairingKind::QDeformed(c) => {
            for (key, v) in hh_pairing_series_q(k, order, c)? {
                terms.push((key, scalar_json(&v, q.as_ref())?));
            }
        }
        kind => {
            let s = hh_pairing_series(k, order, kind)?;
            for (e, c) in s.terms() {
                terms.push(((e[0], e[1]), c.to_json()));
            }
        }
    }
    let lookup = |n: usize, m: usize| {
        terms.iter().find(|(key, _)| *key == (n, m)).map(|(_, v)| cell(v)).unwrap_or_else(|| "0".into())
    };
    let tsv = grid("n\\m", order + 1, order + 1, lookup);
    let list: Vec<Value> = terms.iter().map(|((n, m), v)| json!([n, m, v])).collect();
    Ok(Output::new("fock hh-series", json!({ "k": k, "order": order, "terms": list })).with_tsv(tsv))
}

fn vertex(cmd: &VertexCommand) -> Result<Output> {
    match cmd {
        VertexCommand::WeightOne { lattice, order } => {
            let alg = weight_one_algebra(&input::lattice(lattice)?, capped(*order)?)?;
            let checks = json!({
                "antisymmetric": alg.is_antisymmetric(),
                "jacobi": alg.jacobi_holds(),
                "invariant_form": alg.form_is_invariant(),
            });
            let cartan = alg.cartan_matrix().map(|m| {
                m.iter().map(|r| r.iter().map(Scalar::to_json).collect::<Vec<_>>()).collect::<Vec<_>>()
            });
            let passed = alg.is_antisymmetric() && alg.jacobi_holds() && alg.form_is_invariant();
            let json = json!({
                "dimension": alg.dimension(),
                "algebra": alg.to_json(),
                "cartan_matrix": cartan,
                "checks": checks,
            });
            Ok(Output::new("vertex weight-one", json).with_status(passed))
        }
        VertexCommand::Character { lattice, order } => {
            let coeffs = character(&input::lattice(lattice)?, capped(*order)?)?.coefficients()?;
            let mut tsv = String::from("level\tdimension\n");
            for (n, c) in coeffs.iter().enumerate() {
                tsv.push_str(&format!("{n}\t{c}\n"));
            }
            let list: Vec<Value> = coeffs.iter().map(Scalar::to_json).collect();
            Ok(Output::new("vertex character", json!({ "order": order, "coefficients": list })).with_tsv(tsv))
        }
    }
}

fn hilb(cmd: &HilbCommand) -> Result<Output> {
    match cmd {
        HilbCommand::Hodge { surface, order } => {
            let x = HodgeDiamond::from_json(&input::read(surface)?)?;
            let s = hilb_hodge_series(&x, capped(*order)?);
            let json = json!({ "diamond": x.to_json(), "series": s.to_json() });
            Ok(Output::new("hilb hodge", json).with_tsv(s.to_tsv()))
        }
        HilbCommand::U0 { h20, h11, order } => {
            let coeffs = u0_series(*h20, *h11, capped(*order)?)?.coefficients()?;
            let mut tsv = String::from("n\tcoefficient\n");
            for (n, c) in coeffs.iter().enumerate() {
                tsv.push_str(&format!("{n}\t{c}\n"));
            }
            let list: Vec<Value> = coeffs.iter().map(Scalar::to_json).collect();
            let json = json!({ "h20": h20, "h11": h11, "order": order, "coefficients": list });
            Ok(Output::new("hilb u0", json).with_tsv(tsv))
        }
        HilbCommand::ChargeCheck { level, gram, order } => {
            let rep = central_charge_check(*level, &input::gram(gram)?, capped(*order)?)?;
            let mut tsv = String::from("relation\tcases\tfailures\n");
            for c in &rep.checks {
                tsv.push_str(&format!("{}\t{}\t{}\n", c.relation, c.cases, c.failures.len()));
            }
            let passed = rep.passed();
            let json = serde_json::to_value(&rep).map_err(|e| Error::Internal(e.to_string()))?;
            Ok(Output::new("hilb charge-check", json).with_tsv(tsv).with_status(passed))
        }
        HilbCommand::Corners { max, colors, weight } => {
            let single = corner_excess_report(capped(*max)?);
            let multi = multipartition_excess_report(*colors, capped(*weight)?);
            let passed = single.passed() && multi.passed();
            let tsv = format!(
                "check\tcases\tfailures\npartitions n<={}\t{}\t{}\n{}-multipartitions weight<={}\t{}\t{}\n",
                single.n_max,
                single.partitions_checked,
                single.failures.len(),
                colors,
                weight,
                multi.cases,
                multi.failures.len()
            );
            let json = json!({ "partitions": single, "multipartitions": { "colors": colors, "max_weight": weight, "check": multi } });
            Ok(Output::new("hilb corners", json).with_tsv(tsv).with_status(passed))
        }
    }
}

fn partition(cmd: &PartitionCommand) -> Result<Output> {
    match cmd {
        PartitionCommand::Enumerate { n, strict } => {
            let n = capped(*n)?;
            let parts = if *strict { enumerate_strict_partitions(n) } else { enumerate_partitions(n) };
            let tsv: String = parts.iter().map(|p| format!("{p}\n")).collect();
            let list: Vec<&[usize]> = parts.iter().map(|p| p.parts()).collect();
            let json = json!({ "n": n, "strict": strict, "count": parts.len(), "partitions": list });
            Ok(Output::new("partition enumerate", json).with_tsv(tsv))
        }
        PartitionCommand::Strata { n } => {
            let n = capped(*n)?;
            let mut tsv = String::from("type\tdim_sym\tdim_hilb\tfiber_dim\n");
            let mut rows = Vec::new();
            for p in enumerate_partitions(n) {
                let (s, h, f) = (stratum_dim_sym(&p), stratum_dim_hilb(&p), stratum_fiber_dim(&p));
                tsv.push_str(&format!("{p}\t{s}\t{h}\t{f}\n"));
                rows.push(json!({ "type": p.parts(), "dim_sym": s, "dim_hilb": h, "fiber_dim": f }));
            }
            let json = json!({ "n": n, "census": component_census(n), "strata": rows });
            Ok(Output::new("partition strata", json).with_tsv(tsv))
        }
    }
}
