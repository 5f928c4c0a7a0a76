//! Reproducible random substreams addressed by a label path.
//!
//! A stream is identified by a 64-bit master seed and an ordered list of
//! `(name, index)` labels. The 256-bit ChaCha20 key is the SHA-256 digest of
//!
//! ```text
//! "sausage-rng-v1" || master_seed (u64 LE) || for each label: len(name) (u64 LE) || name || index (u64 LE)
//! ```
//!
//! so the output depends only on the label path, never on the order in which
//! streams are created or on which thread consumes them.

use rand::RngCore;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha20Rng;
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};

/// Identifier recorded in run metadata.
pub const RNG_ALGORITHM: &str = "chacha20 keyed by sha256(label path), v1";

const DOMAIN_TAG: &[u8] = b"sausage-rng-v1";

#[derive(Clone, Debug)]
pub struct RngStream {
    master_seed: u64,
    labels: Vec<(String, u64)>,
    rng: ChaCha20Rng,
}

impl RngStream {
    pub fn master_seed(&self) -> u64 {
        self.master_seed
    }

    pub fn labels(&self) -> &[(String, u64)] {
        &self.labels
    }

    /// Fresh stream one level below this one. The parent is not advanced.
    pub fn child(&self, name: &str, index: u64) -> RngStream {
        let mut labels = self.labels.clone();
        labels.push((name.to_owned(), index));
        RngStream::keyed(self.master_seed, labels)
    }

    fn keyed(master_seed: u64, labels: Vec<(String, u64)>) -> RngStream {
        let mut hasher = Sha256::new();
        hasher.update(DOMAIN_TAG);
        hasher.update(master_seed.to_le_bytes());
        for (name, index) in &labels {
            hasher.update((name.len() as u64).to_le_bytes());
            hasher.update(name.as_bytes());
            hasher.update(index.to_le_bytes());
        }
        let key: [u8; 32] = hasher.finalize().into();
        RngStream {
            master_seed,
            labels,
            rng: ChaCha20Rng::from_seed(key),
        }
    }

    /// Human-readable label path, e.g. `replica[3]/path[17]`.
    pub fn path_string(&self) -> String {
        self.labels
            .iter()
            .map(|(n, i)| format!("{n}[{i}]"))
            .collect::<Vec<_>>()
            .join("/")
    }
}

/// Builds the stream for `(master_seed, labels)`.
pub fn derive_stream(master_seed: u64, labels: &[(&str, u64)]) -> Result<RngStream> {
    if labels.is_empty() {
        return Err(Error::EmptyLabelPath);
    }
    Ok(RngStream::keyed(
        master_seed,
        labels.iter().map(|(n, i)| ((*n).to_owned(), *i)).collect(),
    ))
}

impl RngCore for RngStream {
    fn next_u32(&mut self) -> u32 {
        self.rng.next_u32()
    }

    fn next_u64(&mut self) -> u64 {
        self.rng.next_u64()
    }

    fn fill_bytes(&mut self, dst: &mut [u8]) {
        self.rng.fill_bytes(dst)
    }
}
