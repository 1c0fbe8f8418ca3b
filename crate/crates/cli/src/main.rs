//! `fockforge`: command-line front end for the exact Fock-space engine.

mod commands;
mod input;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::output::Format;

#[derive(Parser, Debug)]
#[command(name = "fockforge", version, about = "Exact lattice Fock spaces, vertex operators and Hilbert-scheme generating functions")]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,

    /// Seed for the randomized property suites; echoed in every output.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Run every verification suite on a lattice.
    CheckAll {
        #[arg(long)]
        lattice: PathBuf,
        #[arg(long, default_value_t = 6)]
        order: usize,
    },
    /// Fock space operations.
    #[command(subcommand)]
    Fock(FockCommand),
    /// Lattice vertex algebra.
    #[command(subcommand)]
    Vertex(VertexCommand),
    /// Hilbert schemes of points.
    #[command(subcommand)]
    Hilb(HilbCommand),
    /// Partition combinatorics.
    #[command(subcommand)]
    Partition(PartitionCommand),
}

#[derive(Subcommand, Debug)]
enum FockCommand {
    /// Apply Heisenberg modes to a state, rightmost `--op` first.
    Apply {
        #[arg(long)]
        lattice: PathBuf,
        #[arg(long)]
        state: PathBuf,
        /// Mode `color:n`, e.g. `0:-2` for `v^0_{-2}`. Repeatable.
        #[arg(long = "op", required = true)]
        ops: Vec<String>,
        #[command(flatten)]
        pairing: PairingArgs,
    },
    /// Inner product of two states.
    Pair {
        #[arg(long)]
        lattice: PathBuf,
        #[arg(long)]
        left: PathBuf,
        #[arg(long)]
        right: PathBuf,
        #[command(flatten)]
        pairing: PairingArgs,
    },
    /// Table of `(h^v_n, h^w_m)` for `(v, w) = k`.
    HhSeries {
        #[arg(long, allow_hyphen_values = true)]
        k: i64,
        #[arg(long, default_value_t = 6)]
        order: usize,
        #[command(flatten)]
        pairing: PairingArgs,
    },
    /// Run the Fock-space suites on a lattice.
    CheckAxioms {
        #[arg(long)]
        lattice: PathBuf,
        #[arg(long, default_value_t = 6)]
        order: usize,
    },
}

#[derive(Subcommand, Debug)]
enum VertexCommand {
    /// Brackets and invariant form of the weight-one Lie algebra.
    WeightOne {
        #[arg(long)]
        lattice: PathBuf,
        #[arg(long, default_value_t = 6)]
        order: usize,
    },
    /// `L0` character of `S ⊗ C{L}`.
    Character {
        #[arg(long)]
        lattice: PathBuf,
        #[arg(long, default_value_t = 6)]
        order: usize,
    },
}

#[derive(Subcommand, Debug)]
enum HilbCommand {
    /// Hodge polynomials of `Hilb^n X` for `n <= order`.
    Hodge {
        #[arg(long)]
        surface: PathBuf,
        #[arg(long, default_value_t = 6)]
        order: usize,
    },
    /// The `u^0` series for given `h^{2,0}`, `h^{1,1}`.
    U0 {
        #[arg(long)]
        h20: u64,
        #[arg(long)]
        h11: u64,
        #[arg(long, default_value_t = 6)]
        order: usize,
    },
    /// Heisenberg relations at level `c` on a Gram matrix.
    ChargeCheck {
        #[arg(long)]
        level: u32,
        /// A bare matrix `[[...]]` or a lattice document.
        #[arg(long)]
        gram: PathBuf,
        #[arg(long, default_value_t = 3)]
        order: usize,
    },
    /// Corner census of partitions and multipartitions.
    Corners {
        #[arg(long, default_value_t = 25)]
        max: usize,
        #[arg(long, default_value_t = 2)]
        colors: usize,
        #[arg(long, default_value_t = 10)]
        weight: usize,
    },
}

#[derive(Subcommand, Debug)]
enum PartitionCommand {
    /// All partitions of `n`.
    Enumerate {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        strict: bool,
    },
    /// Stratum dimensions of `Sym^n` and `Hilb^n` by partition type.
    Strata {
        #[arg(long)]
        n: usize,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum PairingChoice {
    Classical,
    Level,
    QDeformed,
}

#[derive(Args, Debug)]
struct PairingArgs {
    #[arg(long, value_enum, default_value_t = PairingChoice::Classical)]
    pairing: PairingChoice,
    /// Level `c` for `level` and `q-deformed` pairings.
    #[arg(long, default_value_t = 1)]
    level: u32,
    /// Evaluate Laurent-valued results at this rational `q`.
    #[arg(long, allow_hyphen_values = true)]
    q: Option<String>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(&cli) {
        Ok(out) => {
            let passed = out.passed;
            match out.render(cli.format, cli.seed) {
                Ok(text) => {
                    print!("{text}");
                    if passed {
                        ExitCode::SUCCESS
                    } else {
                        ExitCode::from(1)
                    }
                }
                Err(e) => fail(&e),
            }
        }
        Err(e) => fail(&e),
    }
}

fn fail(e: &fockforge::Error) -> ExitCode {
    eprintln!("fockforge: {e}");
    ExitCode::from(fockforge::verify::exit_code(e) as u8)
}
