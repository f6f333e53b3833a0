//! Run-length representation of a BWT and the plain LF mapping.
//!
//! `lf` is the definitional rank-scan form, kept deliberately naive: it is
//! the reference every table-based evaluation is measured against. `lf_all`
//! is the same map materialized for all positions in one O(n) pass, used at
//! construction time and by exhaustive tests.

use crate::text::Alphabet;

/// A BWT stored as maximal runs: run k covers positions
/// `[run_heads[k], run_heads[k+1])` and holds `run_chars[k]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunLengthBwt {
    run_chars: Vec<u8>,
    run_heads: Vec<u32>,
    n: usize,
}

impl RunLengthBwt {
    /// Scans the BWT once and records each maximal run.
    pub fn from_bwt(bwt: &[u8]) -> Self {
        assert!(!bwt.is_empty(), "cannot run-length encode an empty BWT");
        let mut run_chars = Vec::new();
        let mut run_heads = Vec::new();
        for (i, &c) in bwt.iter().enumerate() {
            if run_chars.last() != Some(&c) {
                run_chars.push(c);
                run_heads.push(i as u32);
            }
        }
        RunLengthBwt { run_chars, run_heads, n: bwt.len() }
    }

    /// Total BWT length.
    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    /// Number of maximal runs.
    pub fn num_runs(&self) -> usize {
        self.run_chars.len()
    }

    pub fn run_chars(&self) -> &[u8] {
        &self.run_chars
    }

    pub fn run_heads(&self) -> &[u32] {
        &self.run_heads
    }

    pub fn head(&self, k: usize) -> usize {
        self.run_heads[k] as usize
    }

    pub fn char(&self, k: usize) -> u8 {
        self.run_chars[k]
    }

    pub fn run_len(&self, k: usize) -> usize {
        let end = self.run_heads.get(k + 1).map_or(self.n, |&h| h as usize);
        end - self.head(k)
    }

    /// Index of the run containing BWT position `i`.
    pub fn run_of(&self, i: usize) -> usize {
        assert!(i < self.n, "position {i} out of range (n = {})", self.n);
        self.run_heads.partition_point(|&h| h as usize <= i) - 1
    }

    /// Expands back to the full BWT.
    pub fn expand(&self) -> Vec<u8> {
        let mut out = Vec::with_capacity(self.n);
        for k in 0..self.num_runs() {
            out.extend(std::iter::repeat_n(self.char(k), self.run_len(k)));
        }
        out
    }
}

/// LF at a single position, straight from the definition:
/// `C[bwt[i]]` plus the occurrences of `bwt[i]` before position `i`.
pub fn lf(bwt: &[u8], alphabet: &Alphabet, i: usize) -> usize {
    assert!(i < bwt.len(), "position {i} out of range (n = {})", bwt.len());
    let c = bwt[i];
    let occ = bwt[..i].iter().filter(|&&b| b == c).count();
    alphabet.c(c) + occ
}

/// LF at every position, one counting pass.
pub fn lf_all(bwt: &[u8], alphabet: &Alphabet) -> Vec<u32> {
    let mut next = vec![0u32; 256];
    for &s in alphabet.symbols() {
        next[s as usize] = alphabet.c(s) as u32;
    }
    bwt.iter()
        .map(|&c| {
            let dest = next[c as usize];
            next[c as usize] += 1;
            dest
        })
        .collect()
}

/// Inverse of a permutation given as an array.
pub fn invert_permutation(perm: &[u32]) -> Vec<u32> {
    let mut inv = vec![0u32; perm.len()];
    for (i, &p) in perm.iter().enumerate() {
        inv[p as usize] = i as u32;
    }
    inv
}
