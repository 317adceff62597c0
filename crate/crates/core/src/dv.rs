//! SHA-1 disturbance-vector machinery: message expansion, Hamming weights,
//! and the bit-template encoding between 16-word seeds and candidate
//! indices.

use crate::error::{Error, Result};

/// Words in a seed: the 16 consecutive components that determine a full
/// disturbance vector through the expansion rule.
pub const SEED_WORDS: usize = 16;

/// Words in a fully expanded disturbance vector.
pub const DV_WORDS: usize = 80;

/// Widest candidate index the encoding can produce (bits of a `u64`).
pub const MAX_ENCODING_BITS: u32 = 64;

/// The first sixteen 32-bit words of a disturbance vector.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct DvSeed {
    pub words: [u32; SEED_WORDS],
}

impl DvSeed {
    pub fn new(words: [u32; SEED_WORDS]) -> Self {
        Self { words }
    }

    /// Forward message expansion: copies the seed into words 0..16 and fills
    /// words 16..80 with `rotl1(v[i-3] ^ v[i-8] ^ v[i-14] ^ v[i-16])`.
    pub fn expand(&self) -> DisturbanceVector {
        let mut words = [0u32; DV_WORDS];
        words[..SEED_WORDS].copy_from_slice(&self.words);
        for i in SEED_WORDS..DV_WORDS {
            words[i] = (words[i - 3] ^ words[i - 8] ^ words[i - 14] ^ words[i - 16])
                .rotate_left(1);
        }
        DisturbanceVector { words }
    }
}

/// A full 80-word disturbance vector.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DisturbanceVector {
    pub words: [u32; DV_WORDS],
}

impl DisturbanceVector {
    /// Whether every word from 16 on satisfies the expansion rule.
    pub fn satisfies_expansion(&self) -> bool {
        (SEED_WORDS..DV_WORDS).all(|i| {
            self.words[i]
                == (self.words[i - 3] ^ self.words[i - 8] ^ self.words[i - 14]
                    ^ self.words[i - 16])
                    .rotate_left(1)
        })
    }

    /// Total and per-word set-bit counts.
    pub fn hamming_weight(&self) -> HammingWeight {
        let mut per_word = [0u32; DV_WORDS];
        let mut total = 0u64;
        for (count, word) in per_word.iter_mut().zip(&self.words) {
            *count = word.count_ones();
            total += u64::from(*count);
        }
        HammingWeight { total, per_word }
    }
}

/// Set-bit counts of a disturbance vector.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct HammingWeight {
    pub total: u64,
    pub per_word: [u32; DV_WORDS],
}

/// Backward message expansion. `window` holds sixteen consecutive words
/// `v[k] .. v[k+15]`; the return value holds the `steps` words before the
/// window, `v[k-steps] .. v[k-1]`, earliest first. Inverts the forward rule
/// via `v[i-16] = rotr1(v[i]) ^ v[i-3] ^ v[i-8] ^ v[i-14]`.
pub fn expand_backward(window: &[u32; SEED_WORDS], steps: usize) -> Vec<u32> {
    let mut w = *window;
    let mut out = vec![0u32; steps];
    for slot in out.iter_mut().rev() {
        let prev = w[15].rotate_right(1) ^ w[12] ^ w[7] ^ w[1];
        w.rotate_right(1);
        w[0] = prev;
        *slot = prev;
    }
    out
}

/// Per-word bit template restricting where candidate bits may sit.
///
/// `positions[k]` is the word bit carrying template bit `k`; candidate bit
/// `i * lambda + k` of the index maps to bit `positions[k]` of word `v[i]`,
/// with word 0's first template bit as the least significant candidate bit.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CandidateEncoding {
    positions: Vec<u8>,
}

impl CandidateEncoding {
    /// Template from explicit bit positions (strictly increasing, below 32).
    pub fn new(positions: &[u8]) -> Result<Self> {
        if positions.is_empty() {
            return Err(Error::Template {
                reason: "at least one bit position is required".into(),
            });
        }
        if positions.iter().any(|&p| p >= 32) {
            return Err(Error::Template {
                reason: "bit positions must lie in [0, 31]".into(),
            });
        }
        if positions.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::Template {
                reason: "bit positions must be strictly increasing".into(),
            });
        }
        let bits = SEED_WORDS as u32 * positions.len() as u32;
        if bits > MAX_ENCODING_BITS {
            return Err(Error::Template {
                reason: format!(
                    "{bits}-bit candidates exceed the {MAX_ENCODING_BITS}-bit index limit"
                ),
            });
        }
        Ok(Self {
            positions: positions.to_vec(),
        })
    }

    /// Weight-`lambda` template over the lowest word bits, `[0, lambda)`.
    pub fn low_bits(lambda: u8) -> Result<Self> {
        let positions: Vec<u8> = (0..lambda).collect();
        Self::new(&positions)
    }

    /// The word-edge template `{0, 1, 30, 31}` favored by low-weight
    /// candidate heuristics.
    pub fn edges() -> Self {
        Self::new(&[0, 1, 30, 31]).expect("static template is valid")
    }

    /// Bits allowed per word.
    pub fn lambda(&self) -> u32 {
        self.positions.len() as u32
    }

    /// Candidate index width `16 * lambda`.
    pub fn index_bits(&self) -> u32 {
        SEED_WORDS as u32 * self.lambda()
    }

    pub fn positions(&self) -> &[u8] {
        &self.positions
    }

    fn word_mask(&self) -> u32 {
        self.positions.iter().fold(0, |m, &p| m | (1u32 << p))
    }

    /// Pack a template-conforming seed into its candidate index.
    pub fn encode(&self, seed: &DvSeed) -> Result<u64> {
        let mask = self.word_mask();
        let lambda = self.lambda();
        let mut index = 0u64;
        for (i, &word) in seed.words.iter().enumerate() {
            if word & !mask != 0 {
                return Err(Error::SeedOutsideTemplate { word: i });
            }
            for (k, &p) in self.positions.iter().enumerate() {
                if word & (1u32 << p) != 0 {
                    index |= 1u64 << (i as u32 * lambda + k as u32);
                }
            }
        }
        Ok(index)
    }

    /// Unpack a candidate index back into a seed. Inverse of
    /// [`encode`](Self::encode).
    pub fn decode(&self, index: u64) -> Result<DvSeed> {
        let bits = self.index_bits();
        if bits < 64 && index >= 1u64 << bits {
            return Err(Error::CandidateRange { index, bits });
        }
        let lambda = self.lambda();
        let mut words = [0u32; SEED_WORDS];
        for (i, word) in words.iter_mut().enumerate() {
            for (k, &p) in self.positions.iter().enumerate() {
                if index & (1u64 << (i as u32 * lambda + k as u32)) != 0 {
                    *word |= 1u32 << p;
                }
            }
        }
        Ok(DvSeed { words })
    }
}
