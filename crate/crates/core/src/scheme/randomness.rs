//! Sources of the random participant symbols.

use rand::{CryptoRng, RngCore, SeedableRng};
use rand_chacha::ChaCha20Rng;

use crate::error::{Error, Result};

pub trait Randomness {
    fn fill(&mut self, buf: &mut [u8]) -> Result<()>;
}

impl<R: RngCore + CryptoRng> Randomness for R {
    fn fill(&mut self, buf: &mut [u8]) -> Result<()> {
        self.try_fill_bytes(buf).map_err(|_| Error::RandomnessExhausted)
    }
}

/// ChaCha20 keyed from the operating system's generator.
pub fn system() -> ChaCha20Rng {
    ChaCha20Rng::from_entropy()
}

/// Reproducible output for tests and fixtures. Not for real secrets.
pub fn insecure_seeded(seed: [u8; 32]) -> ChaCha20Rng {
    ChaCha20Rng::from_seed(seed)
}

/// Replays a fixed byte string, then fails.
#[derive(Clone, Debug)]
pub struct FixedRandomness {
    bytes: Vec<u8>,
    pos: usize,
}

impl FixedRandomness {
    pub fn new(bytes: Vec<u8>) -> Self {
        FixedRandomness { bytes, pos: 0 }
    }

    pub fn remaining(&self) -> usize {
        self.bytes.len() - self.pos
    }
}

impl Randomness for FixedRandomness {
    fn fill(&mut self, buf: &mut [u8]) -> Result<()> {
        let end = self.pos + buf.len();
        if end > self.bytes.len() {
            return Err(Error::RandomnessExhausted);
        }
        buf.copy_from_slice(&self.bytes[self.pos..end]);
        self.pos = end;
        Ok(())
    }
}
