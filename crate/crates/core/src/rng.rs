//! Seeded, splittable random streams.
//!
//! Every random object in the crate is a pure function of a 64-bit seed.
//! The backing generator is ChaCha8, whose output is fixed by its seed on
//! every platform. Per-trial streams are derived from a master seed by
//! selecting ChaCha stream `trial + 1`; stream 0 is the master stream itself.

use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[derive(Clone, Debug)]
pub struct SeededRng {
    seed: u64,
    stream: u64,
    inner: ChaCha8Rng,
}

impl SeededRng {
    pub fn new(seed: u64) -> Self {
        Self {
            seed,
            stream: 0,
            inner: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    /// Independent stream for trial `trial` under `master`.
    pub fn for_trial(master: u64, trial: u64) -> Self {
        let stream = trial.wrapping_add(1);
        let mut inner = ChaCha8Rng::seed_from_u64(master);
        inner.set_stream(stream);
        Self {
            seed: master,
            stream,
            inner,
        }
    }

    /// Split off a child stream seeded from the next output of this one.
    pub fn fork(&mut self) -> SeededRng {
        SeededRng::new(self.inner.next_u64())
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn stream(&self) -> u64 {
        self.stream
    }
}

impl RngCore for SeededRng {
    fn next_u32(&mut self) -> u32 {
        self.inner.next_u32()
    }

    fn next_u64(&mut self) -> u64 {
        self.inner.next_u64()
    }

    fn fill_bytes(&mut self, dst: &mut [u8]) {
        self.inner.fill_bytes(dst)
    }
}
