//! Reproducible, splittable random number generation.
//!
//! Every Monte Carlo replication draws from its own generator whose seed is
//! a pure function of `(master_seed, replication_index)`. Replications are
//! therefore independent of scheduling: any thread may run any replication
//! in any order and the stream it sees is identical.
//!
//! The per-replication generator is ChaCha8 (a counter-mode stream cipher,
//! so jumps and independent streams are cheap); the 256-bit seed is expanded
//! from the pair by SplitMix64.

use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// One step of the SplitMix64 output function.
#[inline]
fn splitmix64(state: &mut u64) {
    *state = state.wrapping_add(0x9e37_79b9_7f4a_7c15);
    let mut z = *state;
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    *state = z ^ (z >> 31);
}

/// Derives the 256-bit ChaCha seed for one replication.
///
/// Pure in `(master_seed, replication)`; documented so that bindings in
/// other languages can reproduce the streams bit for bit.
pub fn derive_seed(master_seed: u64, replication: u64) -> [u8; 32] {
    let mut state = master_seed ^ 0x6a09_e667_f3bc_c908u64.wrapping_mul(replication.wrapping_add(1));
    let mut seed = [0u8; 32];
    for chunk in seed.chunks_exact_mut(8) {
        splitmix64(&mut state);
        chunk.copy_from_slice(&state.to_le_bytes());
    }
    seed
}

/// Generator for replication `replication` of a run seeded by `master_seed`.
pub fn replica_rng(master_seed: u64, replication: u64) -> ChaCha8Rng {
    ChaCha8Rng::from_seed(derive_seed(master_seed, replication))
}
