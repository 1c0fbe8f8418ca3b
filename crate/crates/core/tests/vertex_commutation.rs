use fockforge::series::int;
use fockforge::vertex::{heisenberg_mode, level_basis, vertex_mode_apply, ChargedState};
use fockforge::{Lattice, LatticeVector};

const ORDER: usize = 6;

fn low_states(l: &Lattice) -> Vec<ChargedState> {
    (0..=2)
        .flat_map(|k| level_basis(l, k).unwrap())
        .map(|(lambda, m)| ChargedState::basis_element(l, lambda, m, int(1)).unwrap())
        .collect()
}

fn gamma(l: &Lattice, a: &LatticeVector, m: i64, x: &ChargedState) -> ChargedState {
    vertex_mode_apply(l, a, m, x, ORDER).unwrap()
}

/// `[Γ_α(m), Γ_β(n)]` against the lattice vertex algebra relations:
/// `ε(α,β) Γ_{α+β}(m+n)` when `(α,β) = -1`, zero when `(α,β) >= 0`, and
/// `ε(α,-α) (α_{m+n} + m δ_{m+n,0})` when `β = -α`.
#[test]
fn root_modes_satisfy_frenkel_kac_relations_on_a2() {
    let l = Lattice::a_n(2);
    let roots = l.roots().unwrap();
    let states = low_states(&l);
    let mut checked = 0;
    for a in &roots {
        for b in &roots {
            let ab = l.inner(a, b).unwrap();
            for m in -2..=2i64 {
                for n in -2..=2i64 {
                    for x in &states {
                        let lhs = gamma(&l, a, m, &gamma(&l, b, n, x));
                        let rhs = gamma(&l, b, n, &gamma(&l, a, m, x));
                        let actual = lhs.sub(&rhs).unwrap();
                        let expected = match ab {
                            -1 => gamma(&l, &a.add(b), m + n, x).scale(&int(l.epsilon(a, b).unwrap() as i64)),
                            -2 => {
                                let mut y = heisenberg_mode(&l, a, m + n, x).unwrap();
                                if m + n == 0 {
                                    y = y.add(&x.scale(&int(m))).unwrap();
                                }
                                y.scale(&int(l.epsilon(a, b).unwrap() as i64))
                            }
                            _ => ChargedState::zero(x.palette()),
                        };
                        assert_eq!(actual, expected, "α={a} β={b} m={m} n={n}");
                        checked += 1;
                    }
                }
            }
        }
    }
    assert!(checked > 0);
}

/// For `(α,β) = -1` the two orderings differ by `ε(α,β)ε(β,α) = (-1)^{(α,β)}`.
#[test]
fn cocycle_commutator_sign_matches_pairing() {
    let l = Lattice::a_n(2);
    let roots = l.roots().unwrap();
    for a in &roots {
        for b in &roots {
            let s = l.epsilon(a, b).unwrap() * l.epsilon(b, a).unwrap();
            let expected = if l.inner(a, b).unwrap() % 2 == 0 { 1 } else { -1 };
            assert_eq!(s, expected);
        }
    }
}
