use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::{usage, Error, Result};
use crate::lattice::Lattice;
use crate::series::{q_integer, LaurentPoly, LaurentPolyQ, Scalar};

/// How the generator pairing `(v^i_n, v^j_n)` depends on the mode `n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PairingKind {
    /// `n (v, w)`.
    Classical,
    /// `c n (v, w)`.
    Level(u32),
    /// `n [n c (v, w)] / [n]`, valued in Laurent polynomials in `q`.
    QDeformed(u32),
}

/// A generator pairing on a fixed Gram matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairingSpec {
    kind: PairingKind,
    gram: Vec<Vec<i64>>,
}

impl PairingSpec {
    pub fn new(kind: PairingKind, gram: Vec<Vec<i64>>) -> Result<Self> {
        match kind {
            PairingKind::Level(0) | PairingKind::QDeformed(0) => {
                return usage("pairing level must be at least 1");
            }
            _ => {}
        }
        let n = gram.len();
        if gram.iter().any(|r| r.len() != n) {
            return usage("pairing gram matrix must be square");
        }
        for i in 0..n {
            for j in 0..n {
                if gram[i][j] != gram[j][i] {
                    return usage("pairing gram matrix must be symmetric");
                }
            }
        }
        Ok(PairingSpec { kind, gram })
    }

    pub fn classical(l: &Lattice) -> Self {
        PairingSpec { kind: PairingKind::Classical, gram: l.gram().to_vec() }
    }

    pub fn level(l: &Lattice, c: u32) -> Result<Self> {
        Self::new(PairingKind::Level(c), l.gram().to_vec())
    }

    pub fn q_deformed(l: &Lattice, c: u32) -> Result<Self> {
        Self::new(PairingKind::QDeformed(c), l.gram().to_vec())
    }

    pub fn kind(&self) -> PairingKind {
        self.kind
    }

    pub fn gram(&self) -> &[Vec<i64>] {
        &self.gram
    }

    pub fn colors(&self) -> usize {
        self.gram.len()
    }

    /// Level `c`; classical counts as level 1.
    pub fn level_value(&self) -> u32 {
        match self.kind {
            PairingKind::Classical => 1,
            PairingKind::Level(c) | PairingKind::QDeformed(c) => c,
        }
    }

    /// Same Gram matrix with the `q`-deformation switched off.
    pub fn at_q_one(&self) -> Self {
        let kind = match self.kind {
            PairingKind::QDeformed(c) => PairingKind::Level(c),
            k => k,
        };
        PairingSpec { kind, gram: self.gram.clone() }
    }

    /// `(v^i_n, v^j_n)` for `n >= 1`.
    pub fn mode_value(&self, i: usize, j: usize, n: usize) -> Result<LaurentPolyQ> {
        if n == 0 {
            return usage("pairing modes start at 1");
        }
        if i >= self.colors() || j >= self.colors() {
            return usage(format!("colors ({i},{j}) outside a rank-{} pairing", self.colors()));
        }
        let k = self.gram[i][j];
        let n_i = n as i64;
        Ok(match self.kind {
            PairingKind::Classical => LaurentPoly::constant(BigInt::from(n_i * k)),
            PairingKind::Level(c) => LaurentPoly::constant(BigInt::from(c as i64 * n_i * k)),
            PairingKind::QDeformed(c) => q_pairing(k, n, c)?,
        })
    }

    pub fn value<R: Scalar>(&self, i: usize, j: usize, n: usize) -> Result<R> {
        R::from_q_laurent(&self.mode_value(i, j, n)?)
    }

    /// Table `[j] -> (v^color_n, v^j_n)` in the target scalar ring.
    pub(crate) fn row<R: Scalar>(&self, color: usize, n: usize) -> Result<Vec<R>> {
        (0..self.colors()).map(|j| self.value(color, j, n)).collect()
    }
}

/// `n · [n c K] / [n]`, the `q`-deformed generator pairing for Gram entry `K`.
///
/// Computed by exact Laurent division; `[-x] = -[x]` handles negative `K`.
pub fn q_pairing(k: i64, n: usize, c: u32) -> Result<LaurentPolyQ> {
    if n == 0 {
        return usage("q_pairing needs n >= 1");
    }
    if c == 0 {
        return usage("q_pairing needs level c >= 1");
    }
    if k == 0 {
        return Ok(LaurentPolyQ::zero());
    }
    let n_i = n as i64;
    let top = n_i * c as i64 * k.abs();
    let quotient = q_integer(top)?
        .div_exact(&q_integer(n_i)?)
        .ok_or_else(|| Error::Internal(format!("[{top}] is not divisible by [{n}]")))?;
    let scaled = quotient.scale(&BigInt::from(n_i));
    Ok(if k < 0 { -scaled } else { scaled })
}
