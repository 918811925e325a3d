//! Deterministic seed derivation.
//!
//! Randomised stages and experiment rows each get their own ChaCha stream,
//! derived from a base seed and a salt by hashing. Derivation is content
//! based, so reordering or parallelising work never changes which stream a
//! given row or stage sees.

use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use sha2::{Digest, Sha256};

/// Derives a child seed from a base seed and a salt string.
pub fn derive(base: u64, salt: &str) -> u64 {
    let mut hasher = Sha256::new();
    hasher.update(base.to_le_bytes());
    hasher.update(salt.as_bytes());
    let digest = hasher.finalize();
    u64::from_le_bytes(digest[..8].try_into().unwrap())
}

/// A ChaCha stream for the given seed. ChaCha keeps the stream identical
/// across platforms and releases, which the reproducibility tests rely on.
pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn derivation_is_stable_and_salted() {
        assert_eq!(derive(7, "stage"), derive(7, "stage"));
        assert_ne!(derive(7, "stage"), derive(7, "other"));
        assert_ne!(derive(7, "stage"), derive(8, "stage"));
    }
}
