use num_bigint::BigInt;
use rand::Rng;

use super::state::{FockState, Palette};
use crate::series::Rational;

/// A random state with 1 to 4 monomials of degree at most `max_degree` and
/// small rational coefficients. Odd colors only receive strict partitions.
pub fn random_state<G: Rng + ?Sized>(rng: &mut G, palette: &Palette, max_degree: usize) -> FockState {
    let mut x = FockState::zero(palette);
    let count = rng.gen_range(1..=4);
    for _ in 0..count {
        let d = rng.gen_range(0..=max_degree);
        let basis = super::basis(palette, d);
        if basis.is_empty() {
            continue;
        }
        let m = basis[rng.gen_range(0..basis.len())].clone();
        let mut num = rng.gen_range(-5i64..=4);
        if num >= 0 {
            num += 1;
        }
        let den = rng.gen_range(1i64..=3);
        x.add_term(m, Rational::new(BigInt::from(num), BigInt::from(den)));
    }
    x
}
