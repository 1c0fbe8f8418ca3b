use clap::ValueEnum;
use fockforge::{Error, Result};
use serde_json::{json, Value};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Tsv,
}

/// Result of one command before formatting.
pub struct Output {
    pub command: &'static str,
    pub json: Value,
    pub tsv: Option<String>,
    /// False when a requested check failed; the process then exits with 1.
    pub passed: bool,
}

impl Output {
    pub fn new(command: &'static str, json: Value) -> Self {
        Output { command, json, tsv: None, passed: true }
    }

    pub fn with_tsv(mut self, tsv: String) -> Self {
        self.tsv = Some(tsv);
        self
    }

    pub fn with_status(mut self, passed: bool) -> Self {
        self.passed = passed;
        self
    }

    pub fn render(self, format: Format, seed: u64) -> Result<String> {
        match format {
            Format::Json => {
                let doc = json!({ "command": self.command, "seed": seed, "result": self.json });
                let mut s = serde_json::to_string_pretty(&doc).map_err(|e| Error::Internal(e.to_string()))?;
                s.push('\n');
                Ok(s)
            }
            Format::Tsv => match self.tsv {
                Some(t) => Ok(format!("# fockforge {} seed={seed}\n{t}", self.command)),
                None => Err(Error::Usage(format!("`{}` has no TSV form; use --format json", self.command))),
            },
        }
    }
}

/// A JSON scalar as a single TSV cell.
pub fn cell(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

/// `rows x cols` grid with row label `n` and column labels `0..cols`.
pub fn grid(corner: &str, rows: usize, cols: usize, value: impl Fn(usize, usize) -> String) -> String {
    let mut out = String::from(corner);
    for m in 0..cols {
        out.push_str(&format!("\t{m}"));
    }
    out.push('\n');
    for n in 0..rows {
        out.push_str(&n.to_string());
        for m in 0..cols {
            out.push('\t');
            out.push_str(&value(n, m));
        }
        out.push('\n');
    }
    out
}
