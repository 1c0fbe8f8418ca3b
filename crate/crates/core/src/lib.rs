//! Exact computational algebra for lattice Fock spaces.
//!
//! The crate is organised bottom-up:
//!
//! * [`series`]: exact rationals, Laurent polynomials in `q`, truncated power series;
//! * [`partitions`]: partitions, multipartitions, Young-diagram corners, strata dimensions;
//! * [`lattice`]: even lattices, roots, the sign cocycle and `ℂ{L}`;
//! * [`fock`]: the Fock space with its Hopf structure and Heisenberg action;
//! * [`vertex`]: `F = S ⊗ ℂ{L}`, vertex-operator modes and the weight-one Lie algebra;
//! * [`hilbgen`]: Hodge/Betti generating functions of Hilbert schemes of points;
//! * [`verify`]: the seeded property suites behind `check-all`.

pub mod error;
pub mod fock;
pub mod hilbgen;
pub mod lattice;
pub mod linalg;
pub mod partitions;
pub mod series;
pub mod verify;
pub mod vertex;

pub use error::{Error, Result};
pub use lattice::{Lattice, LatticeVector, Parity};
pub use partitions::{Multipartition, Partition};
pub use series::{LaurentPolyQ, Rational, RationalLaurent, TruncatedSeries};
