use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Seeded, reproducible random stream. Children derived with
/// [`RandomSource::child`] are independent streams that depend only on
/// `(seed, index)`, so fan-out order never changes results.
#[derive(Debug, Clone)]
pub struct RandomSource {
    seed: u64,
    rng: ChaCha8Rng,
}

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

impl RandomSource {
    pub fn new(seed: u64) -> Self {
        RandomSource {
            seed,
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    /// Seed of the `i`-th child stream.
    pub fn child_seed(&self, i: u64) -> u64 {
        splitmix64(self.seed ^ splitmix64(i.wrapping_add(0x5851_f42d_4c95_7f2d)))
    }

    pub fn child(&self, i: u64) -> RandomSource {
        RandomSource::new(self.child_seed(i))
    }
}

impl RngCore for RandomSource {
    fn next_u32(&mut self) -> u32 {
        self.rng.next_u32()
    }

    fn next_u64(&mut self) -> u64 {
        self.rng.next_u64()
    }

    fn fill_bytes(&mut self, dest: &mut [u8]) {
        self.rng.fill_bytes(dest)
    }

    fn try_fill_bytes(&mut self, dest: &mut [u8]) -> Result<(), rand::Error> {
        self.rng.try_fill_bytes(dest)
    }
}
