//! Seed derivation for reproducible, order-independent substreams.
//!
//! Every random quantity in a run is drawn from a stream identified by
//! `(master seed, city index, purpose)`. Streams are independent of
//! iteration order and worker count, so parallel runs reproduce serial
//! ones bit for bit.

use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// What a substream is used for within one city.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Stream {
    /// City layout generation (building areas, shapes, placement, heights).
    Generate = 0,
    /// Aerial base station placement.
    PlaceAbs = 1,
    /// Ground user placement.
    PlaceUe = 2,
    /// Highway user placement (split runs only).
    PlaceHighwayUe = 3,
}

/// SplitMix64 avalanche finalizer.
fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Mix a master seed and a city index into a substream seed.
pub fn derive_seed(master: u64, index: u64) -> u64 {
    splitmix64(master.wrapping_add(splitmix64(index.wrapping_add(1))))
}

/// Build the RNG for one `(master seed, city index, purpose)` stream.
pub fn stream_rng(master: u64, city_index: u32, stream: Stream) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(derive_seed(master, city_index as u64));
    rng.set_stream(stream as u64);
    rng
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::Rng;

    #[test]
    fn derive_seed_is_stable() {
        assert_eq!(derive_seed(42, 0), derive_seed(42, 0));
        assert_ne!(derive_seed(42, 0), derive_seed(42, 1));
        assert_ne!(derive_seed(42, 0), derive_seed(43, 0));
        // index 0 must not collapse onto the raw master seed
        assert_ne!(derive_seed(0, 0), 0);
    }

    #[test]
    fn streams_are_distinct_and_reproducible() {
        let a: f64 = stream_rng(7, 3, Stream::Generate).gen();
        let b: f64 = stream_rng(7, 3, Stream::Generate).gen();
        let c: f64 = stream_rng(7, 3, Stream::PlaceAbs).gen();
        assert_eq!(a, b);
        assert_ne!(a, c);
    }
}
