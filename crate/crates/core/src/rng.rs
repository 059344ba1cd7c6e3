//! Seeded generators. ChaCha8 keeps streams identical across platforms and releases.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub type SeededRng = ChaCha8Rng;

pub fn seeded(seed: u64) -> SeededRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Independent stream `index` under a master seed; used to give every trial its own generator.
pub fn stream(seed: u64, index: u64) -> SeededRng {
    let mut rng = seeded(seed);
    rng.set_stream(index);
    rng
}
