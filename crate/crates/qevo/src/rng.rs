//! Seeded random streams for reproducible experiments.
//!
//! Every run of every algorithm draws from its own ChaCha stream derived
//! from a 64-bit master seed and a stream index, so campaigns are
//! deterministic regardless of execution order or thread count.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// SplitMix64 finalizer. Bijective on u64, used to decorrelate seeds.
pub fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Derives the generator for stream `stream_index` under `master_seed`.
pub fn derive_stream(master_seed: u64, stream_index: u64) -> ChaCha8Rng {
    let mixed =
        splitmix64(master_seed ^ splitmix64(stream_index.wrapping_add(0xA076_1D64_78BD_642F)));
    ChaCha8Rng::seed_from_u64(mixed)
}
