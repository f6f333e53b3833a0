//! Plain bitvector with rank and select.
//!
//! 64-bit words plus one cumulative popcount per word; rank is a lookup and
//! a masked popcount, select binary-searches the cumulative counts and then
//! walks one word. Sized for block-local vectors (millions of bits), not for
//! whole-text scale.

/// Immutable bitvector with O(1) rank and O(log) select.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BitVec {
    words: Vec<u64>,
    len: usize,
    /// ranks[w] = number of ones in words[..w].
    ranks: Vec<u32>,
}

impl BitVec {
    /// Builds a vector of `len` bits with the given positions set.
    /// Positions must be strictly increasing and below `len`.
    pub fn from_set_bits(len: usize, set: impl IntoIterator<Item = usize>) -> Self {
        assert!(len < u32::MAX as usize, "bitvector too long for u32 ranks");
        let mut words = vec![0u64; len.div_ceil(64)];
        let mut prev = None;
        for i in set {
            assert!(i < len, "set bit {i} out of range (len {len})");
            debug_assert!(prev.is_none_or(|p| p < i), "positions must be increasing");
            prev = Some(i);
            words[i / 64] |= 1u64 << (i % 64);
        }
        Self::from_words(words, len)
    }

    pub fn from_bools(bits: &[bool]) -> Self {
        Self::from_set_bits(
            bits.len(),
            bits.iter().enumerate().filter(|(_, &b)| b).map(|(i, _)| i),
        )
    }

    /// Wraps raw words (e.g. read back from disk) and indexes them.
    pub fn from_words(words: Vec<u64>, len: usize) -> Self {
        assert!(len < u32::MAX as usize, "bitvector too long for u32 ranks");
        assert_eq!(words.len(), len.div_ceil(64), "word count does not match length");
        if !len.is_multiple_of(64) {
            let tail = words.last().copied().unwrap_or(0);
            assert_eq!(tail >> (len % 64), 0, "bits set past the declared length");
        }
        let mut ranks = Vec::with_capacity(words.len() + 1);
        let mut acc = 0u32;
        for &w in &words {
            ranks.push(acc);
            acc += w.count_ones();
        }
        ranks.push(acc);
        BitVec { words, len, ranks }
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }

    pub fn count_ones(&self) -> usize {
        *self.ranks.last().unwrap() as usize
    }

    pub fn get(&self, i: usize) -> bool {
        assert!(i < self.len, "bit {i} out of range (len {})", self.len);
        self.words[i / 64] >> (i % 64) & 1 == 1
    }

    /// Number of ones in bits `[0, i)`.
    pub fn rank1(&self, i: usize) -> usize {
        assert!(i <= self.len, "rank position {i} out of range (len {})", self.len);
        let w = i / 64;
        let within = if i.is_multiple_of(64) {
            0
        } else {
            (self.words[w] & ((1u64 << (i % 64)) - 1)).count_ones()
        };
        self.ranks[w] as usize + within as usize
    }

    /// Position of the k-th one, 0-based; `None` if fewer than k+1 ones.
    pub fn select1(&self, k: usize) -> Option<usize> {
        if k >= self.count_ones() {
            return None;
        }
        let k32 = k as u32;
        // last word whose cumulative rank is <= k
        let w = self.ranks.partition_point(|&r| r <= k32) - 1;
        let mut word = self.words[w];
        let mut remaining = k32 - self.ranks[w];
        while remaining > 0 {
            word &= word - 1; // clear lowest set bit
            remaining -= 1;
        }
        Some(w * 64 + word.trailing_zeros() as usize)
    }
}
