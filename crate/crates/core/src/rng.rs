//! Seeded random streams.
//!
//! One root seed fans out into independent ChaCha streams, so parallel runs
//! draw from disjoint sequences and stay reproducible regardless of
//! scheduling.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub type Rng = ChaCha8Rng;

/// Stream `stream` of the generator rooted at `seed`.
pub fn stream(seed: u64, stream: u64) -> Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}
