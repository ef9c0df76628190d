//! Seeded random streams.
//!
//! Every consumer of randomness in a run gets its own ChaCha stream derived
//! from `(seed, replica)`, so agents, the update order and the mechanism's
//! coins never perturb each other.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub type SimRng = ChaCha8Rng;

/// Stream assignment within one replica.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Stream {
    Order,
    Coin,
    Init,
    Agent(usize),
}

impl Stream {
    fn id(self) -> u64 {
        match self {
            Stream::Order => 0,
            Stream::Coin => 1,
            Stream::Init => 2,
            Stream::Agent(i) => 16 + i as u64,
        }
    }
}

pub fn stream(seed: u64, replica: u64, which: Stream) -> SimRng {
    let mut key = [0u8; 32];
    key[..8].copy_from_slice(&seed.to_le_bytes());
    key[8..16].copy_from_slice(&replica.to_le_bytes());
    key[16..24].copy_from_slice(b"auctlab1");
    let mut rng = ChaCha8Rng::from_seed(key);
    rng.set_stream(which.id());
    rng
}

/// Plain generator for tests and instance sampling.
pub fn seeded(seed: u64) -> SimRng {
    ChaCha8Rng::seed_from_u64(seed)
}
