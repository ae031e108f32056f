//! Seeded, splittable random streams.
//!
//! Every sample or trajectory draws from its own ChaCha stream, keyed by
//! `(seed, stream_id)`, so results do not depend on how work is scheduled
//! across threads.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

pub type StreamRng = ChaCha8Rng;

pub fn rng_stream(seed: u64, stream_id: u64) -> StreamRng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream_id);
    rng
}

/// Packs a component tag and an index into one stream id so that different
/// parts of an experiment never share a stream.
pub fn stream_key(tag: u16, index: u64) -> u64 {
    debug_assert!(index < (1u64 << 48));
    ((tag as u64) << 48) | index
}

#[inline]
pub fn gaussian<R: Rng + ?Sized>(rng: &mut R) -> f64 {
    rng.sample(StandardNormal)
}
