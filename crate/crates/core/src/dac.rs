//! Directly addressable codes: variable-width integers with random access.
//!
//! Values are cut into 8-bit chunks, one level per chunk. Level 0 holds the
//! low byte of every value plus a continuation bit; values that continue
//! place their next byte at the next level, indexed by rank over the
//! continuation bits. Access walks at most one chunk per level, so at most
//! 8 levels for 64-bit values and 4 for the u32-sized data stored here.

use crate::bits::BitVec;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DacLevel {
    chunks: Vec<u8>,
    /// Set where the value has more bytes at the next level.
    cont: BitVec,
}

impl DacLevel {
    pub fn chunks(&self) -> &[u8] {
        &self.chunks
    }

    pub fn cont(&self) -> &BitVec {
        &self.cont
    }

    pub fn from_parts(chunks: Vec<u8>, cont: BitVec) -> Self {
        assert_eq!(chunks.len(), cont.len());
        DacLevel { chunks, cont }
    }
}

/// A list of unsigned integers in 8-bit chunk levels.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DacList {
    levels: Vec<DacLevel>,
    len: usize,
}

impl DacList {
    pub fn new(values: &[u64]) -> Self {
        let mut levels = Vec::new();
        let mut carry: Vec<u64> = values.to_vec();
        while !carry.is_empty() {
            let chunks: Vec<u8> = carry.iter().map(|&v| v as u8).collect();
            let mut next = Vec::new();
            let cont = BitVec::from_bools(
                &carry
                    .iter()
                    .map(|&v| {
                        let more = v > 0xff;
                        if more {
                            next.push(v >> 8);
                        }
                        more
                    })
                    .collect::<Vec<bool>>(),
            );
            levels.push(DacLevel { chunks, cont });
            carry = next;
        }
        DacList { levels, len: values.len() }
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn get(&self, i: usize) -> u64 {
        assert!(i < self.len, "index {i} out of range (len {})", self.len);
        let mut idx = i;
        let mut value = 0u64;
        let mut shift = 0u32;
        for level in &self.levels {
            value |= (level.chunks[idx] as u64) << shift;
            if !level.cont.get(idx) {
                break;
            }
            idx = level.cont.rank1(idx);
            shift += 8;
        }
        value
    }

    pub fn iter(&self) -> impl Iterator<Item = u64> + '_ {
        (0..self.len).map(|i| self.get(i))
    }

    pub fn levels(&self) -> &[DacLevel] {
        &self.levels
    }

    pub fn from_levels(levels: Vec<DacLevel>, len: usize) -> Self {
        if let Some(first) = levels.first() {
            assert_eq!(first.chunks.len(), len);
        } else {
            assert_eq!(len, 0);
        }
        DacList { levels, len }
    }
}
