//! The fixed state suite for realization checks.

use djkm_core::fock::{FockState, Var, VarKind};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const DEFAULT_SEED: u64 = 2024;

/// A degree-3 monomial in variables with indices in `[-3, 2]` (`y`
/// variables in `[-3, -1]`), tensored with a random `v_i`.
pub fn random_monomial(seed: u64) -> FockState {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut vars = Vec::with_capacity(3);
    for _ in 0..3 {
        let kind = [VarKind::X, VarKind::X1, VarKind::Y, VarKind::Y1][rng.gen_range(0..4)];
        let index = match kind {
            VarKind::X | VarKind::X1 => rng.gen_range(-3..=2),
            VarKind::Y | VarKind::Y1 => rng.gen_range(-3..=-1),
        };
        vars.push((Var::new(kind, index).expect("index range respects y < 0"), 1));
    }
    FockState::monomial(&vars, rng.gen_range(0..2))
}

/// `|0>v0`, `|0>v1`, `x[-1]|0>v0`, `x1[0] y[-2]|0>v1`, and the seeded
/// random monomial.
pub fn default_suite(seed: u64) -> Vec<(String, FockState)> {
    let states = vec![
        FockState::vacuum(0),
        FockState::vacuum(1),
        FockState::monomial(&[(Var::x(-1), 1)], 0),
        FockState::monomial(&[(Var::x1(0), 1), (Var::y(-2), 1)], 1),
        random_monomial(seed),
    ];
    states.into_iter().map(|s| (s.to_string(), s)).collect()
}
