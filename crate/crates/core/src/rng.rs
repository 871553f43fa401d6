//! Seeded per-trial random streams.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// The stream for trial `trial` under `seed`. Independent of scheduling, so
/// parallel runs reproduce sequential ones.
pub fn trial_rng(seed: u64, trial: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    rng
}
