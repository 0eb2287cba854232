//! Seeded, counter-based randomness.
//!
//! Every random draw in the crate comes from ChaCha8 keyed by the user seed,
//! with the trial or restart index selecting the stream. Streams are
//! independent of how trials are distributed across threads.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub type Rng = ChaCha8Rng;

pub fn rng(seed: u64) -> Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Generator for trial `stream` under `seed`.
pub fn stream_rng(seed: u64, stream: u64) -> Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}
