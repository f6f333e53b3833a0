//! Suffix array construction and the BWT derived from it.
//!
//! Prefix doubling over rank pairs, with a counting sort per round, so the
//! whole construction is O(n log n) with small constants. The terminator
//! guarantees all suffixes are distinct, which is what lets the doubling
//! stop as soon as every rank is unique.

use crate::text::Text;

/// Suffix array of `text` (terminator included), ascending suffix order.
pub fn suffix_array(text: &Text) -> Vec<u32> {
    let bytes = text.bytes();
    let n = bytes.len();
    let mut sa: Vec<u32> = vec![0; n];
    let mut rank: Vec<u32> = vec![0; n];
    let mut next_rank: Vec<u32> = vec![0; n];

    // Round 0: sort by first byte.
    let mut byte_count = [0u32; 257];
    for &b in bytes {
        byte_count[b as usize + 1] += 1;
    }
    for i in 0..256 {
        byte_count[i + 1] += byte_count[i];
    }
    {
        let mut cursor = byte_count;
        for i in 0..n {
            let slot = &mut cursor[bytes[i] as usize];
            sa[*slot as usize] = i as u32;
            *slot += 1;
        }
    }
    // Consecutive dense ranks, so "last rank == n - 1" means all distinct;
    // bucket start positions would not support that check.
    rank[sa[0] as usize] = 0;
    for j in 1..n {
        let prev = sa[j - 1] as usize;
        let cur = sa[j] as usize;
        rank[cur] = rank[prev] + (bytes[cur] != bytes[prev]) as u32;
    }

    let mut by_second: Vec<u32> = vec![0; n];
    let mut bucket_start: Vec<u32> = vec![0; n + 1];
    let mut k = 1;
    while k < n {
        if rank[sa[n - 1] as usize] as usize == n - 1 {
            break; // all ranks distinct, order is final
        }

        // Order suffixes by their second key rank[i + k] (suffixes with no
        // second half sort first), then stable counting sort by rank[i].
        let mut out = 0;
        for i in (n - k)..n {
            by_second[out] = i as u32;
            out += 1;
        }
        for &j in sa.iter() {
            if j as usize >= k {
                by_second[out] = j - k as u32;
                out += 1;
            }
        }

        bucket_start[..=n].fill(0);
        for &r in rank.iter() {
            bucket_start[r as usize + 1] += 1;
        }
        for i in 0..n {
            bucket_start[i + 1] += bucket_start[i];
        }
        for &i in by_second.iter() {
            let slot = &mut bucket_start[rank[i as usize] as usize];
            sa[*slot as usize] = i;
            *slot += 1;
        }

        let second = |i: usize| -> u32 {
            if i + k < n {
                rank[i + k] + 1
            } else {
                0
            }
        };
        next_rank[sa[0] as usize] = 0;
        for j in 1..n {
            let prev = sa[j - 1] as usize;
            let cur = sa[j] as usize;
            let bump = (rank[cur] != rank[prev] || second(cur) != second(prev)) as u32;
            next_rank[cur] = next_rank[prev] + bump;
        }
        std::mem::swap(&mut rank, &mut next_rank);
        k <<= 1;
    }
    sa
}

/// BWT of `text` under `sa`: output[i] is the byte preceding suffix sa[i],
/// cyclically, so the terminator's row contributes the last body byte.
pub fn bwt_from_sa(text: &Text, sa: &[u32]) -> Vec<u8> {
    let bytes = text.bytes();
    let n = bytes.len();
    debug_assert_eq!(sa.len(), n);
    sa.iter()
        .map(|&s| {
            let i = s as usize;
            bytes[if i == 0 { n - 1 } else { i - 1 }]
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn naive_suffix_sort(bytes: &[u8]) -> Vec<u32> {
        let mut sa: Vec<u32> = (0..bytes.len() as u32).collect();
        sa.sort_by(|&a, &b| bytes[a as usize..].cmp(&bytes[b as usize..]));
        sa
    }

    fn text(s: &[u8]) -> Text {
        Text::from_terminated(s.to_vec()).unwrap()
    }

    #[test]
    fn worked_example_suffix_array() {
        let t = text(b"GATTAGATACAT$");
        let expected = naive_suffix_sort(t.bytes());
        assert_eq!(expected, vec![12, 8, 4, 10, 6, 1, 9, 5, 0, 11, 7, 3, 2]);
        assert_eq!(suffix_array(&t), expected);
    }

    #[test]
    fn tiny_suffix_arrays() {
        assert_eq!(suffix_array(&text(b"A$")), vec![1, 0]);
        assert_eq!(suffix_array(&text(b"AAAA$")), vec![4, 3, 2, 1, 0]);
        assert_eq!(suffix_array(&text(b"$")), vec![0]);
    }

    #[test]
    fn worked_example_bwt() {
        let t = text(b"GATTAGATACAT$");
        let sa = suffix_array(&t);
        assert_eq!(bwt_from_sa(&t, &sa), b"TTTCGGAA$AATA");
    }

    #[test]
    fn tiny_bwts() {
        let t = text(b"A$");
        assert_eq!(bwt_from_sa(&t, &suffix_array(&t)), b"A$");
        let t = text(b"ABAB$");
        assert_eq!(bwt_from_sa(&t, &suffix_array(&t)), b"BB$AA");
    }

    #[test]
    fn bwt_is_permutation_of_text() {
        let t = text(b"GATTAGATACAT$");
        let mut bwt = bwt_from_sa(&t, &suffix_array(&t));
        let mut chars = t.bytes().to_vec();
        bwt.sort_unstable();
        chars.sort_unstable();
        assert_eq!(bwt, chars);
    }

    proptest! {
        #[test]
        fn matches_naive_sort(body in proptest::collection::vec(1u8..=4, 1..300)) {
            let t = Text::from_bytes(body).unwrap();
            prop_assert_eq!(suffix_array(&t), naive_suffix_sort(t.bytes()));
        }

        #[test]
        fn matches_naive_sort_wide_alphabet(body in proptest::collection::vec(1u8..=255, 1..200)) {
            let t = Text::from_bytes(body).unwrap();
            prop_assert_eq!(suffix_array(&t), naive_suffix_sort(t.bytes()));
        }
    }

    #[test]
    fn long_periodic_text_matches_naive() {
        // forces many doubling rounds: long common prefixes
        let body: Vec<u8> = b"AB".iter().cycle().take(4096).copied().collect();
        let t = Text::from_bytes(body).unwrap();
        assert_eq!(suffix_array(&t), naive_suffix_sort(t.bytes()));
    }
}
