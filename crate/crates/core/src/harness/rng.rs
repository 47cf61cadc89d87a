//! Seeded, splittable random streams.
//!
//! A stream is a ChaCha8 keystream keyed by a 64-bit seed. `substream` hashes a key path
//! into a fresh seed, so cells identified by `(p, a)` draw from streams that depend only on
//! the master seed and their own keys, never on scheduling order.

use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

const GOLDEN: u64 = 0x9E37_79B9_7F4A_7C15;

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(GOLDEN);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

#[derive(Debug, Clone)]
pub struct SeededRng {
    seed: u64,
    inner: ChaCha8Rng,
}

impl SeededRng {
    pub fn new(seed: u64) -> Self {
        let mut key = [0u8; 32];
        let mut state = seed;
        for chunk in key.chunks_exact_mut(8) {
            state = splitmix64(state);
            chunk.copy_from_slice(&state.to_le_bytes());
        }
        SeededRng { seed, inner: ChaCha8Rng::from_seed(key) }
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    /// An independent stream determined by this stream's seed and `keys`.
    pub fn substream(&self, keys: &[u64]) -> SeededRng {
        let derived = keys
            .iter()
            .fold(splitmix64(self.seed ^ GOLDEN), |acc, &k| splitmix64(acc.rotate_left(17) ^ splitmix64(k)));
        SeededRng::new(derived)
    }

    /// A substream keyed by a label, for purposes such as `"primes"` or `"a-sample"`.
    pub fn labelled(&self, label: &str, keys: &[u64]) -> SeededRng {
        let tag = label.bytes().fold(0xCBF2_9CE4_8422_2325u64, |h, b| (h ^ b as u64).wrapping_mul(0x100_0000_01B3));
        let mut path = Vec::with_capacity(keys.len() + 1);
        path.push(tag);
        path.extend_from_slice(keys);
        self.substream(&path)
    }
}

impl RngCore for SeededRng {
    fn next_u32(&mut self) -> u32 {
        self.inner.next_u32()
    }
    fn next_u64(&mut self) -> u64 {
        self.inner.next_u64()
    }
    fn fill_bytes(&mut self, dest: &mut [u8]) {
        self.inner.fill_bytes(dest)
    }
    fn try_fill_bytes(&mut self, dest: &mut [u8]) -> Result<(), rand::Error> {
        self.inner.try_fill_bytes(dest)
    }
}
