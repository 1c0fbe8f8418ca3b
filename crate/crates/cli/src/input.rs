use std::path::Path;

use fockforge::lattice::LatticeDoc;
use fockforge::series::{parse_rational, Scalar};
use fockforge::fock::FockVector;
use fockforge::{Error, Lattice, Rational, Result};
use serde_json::Value;

/// Default for `FOCKFORGE_MAX_ORDER`.
const DEFAULT_MAX_ORDER: usize = 64;

pub fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::Usage(format!("cannot read {}: {e}", path.display())))
}

pub fn read_json(path: &Path) -> Result<Value> {
    serde_json::from_str(&read(path)?).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
}

pub fn lattice(path: &Path) -> Result<Lattice> {
    Lattice::from_json(&read(path)?)
}

/// Gram matrix from either a bare `[[...]]` array or a lattice document.
pub fn gram(path: &Path) -> Result<Vec<Vec<i64>>> {
    let v = read_json(path)?;
    if v.is_array() {
        return serde_json::from_value(v).map_err(|e| Error::Parse(format!("gram matrix: {e}")));
    }
    let doc: LatticeDoc = serde_json::from_value(v).map_err(|e| Error::Parse(format!("lattice JSON: {e}")))?;
    Ok(Lattice::from_doc(&doc)?.gram().to_vec())
}

pub fn state<R: Scalar>(path: &Path) -> Result<FockVector<R>> {
    FockVector::from_json(&read_json(path)?)
}

/// `color:mode`, e.g. `1:-3`.
pub fn operator(s: &str) -> Result<(usize, i64)> {
    let bad = || Error::Usage(format!("operator {s:?} is not of the form color:mode"));
    let (c, m) = s.split_once(':').ok_or_else(bad)?;
    Ok((c.trim().parse().map_err(|_| bad())?, m.trim().parse().map_err(|_| bad())?))
}

pub fn q_value(q: Option<&str>) -> Result<Option<Rational>> {
    q.map(parse_rational).transpose()
}

/// Rejects truncation orders above `FOCKFORGE_MAX_ORDER`.
pub fn capped(order: usize) -> Result<usize> {
    let cap = match std::env::var("FOCKFORGE_MAX_ORDER") {
        Ok(s) => s
            .trim()
            .parse::<usize>()
            .map_err(|_| Error::Usage(format!("FOCKFORGE_MAX_ORDER={s:?} is not a non-negative integer")))?,
        Err(_) => DEFAULT_MAX_ORDER,
    };
    if order > cap {
        return Err(Error::Usage(format!("order {order} exceeds FOCKFORGE_MAX_ORDER={cap}")));
    }
    Ok(order)
}
