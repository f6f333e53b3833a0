//! Deterministic text generators for tests and benchmarks.
//!
//! All generators are seeded, so every run over the same parameters produces
//! the same bytes. Symbols are drawn from 'A', 'B', ... so the generated
//! texts never contain the terminator byte.

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

/// Uniform random text over the first `sigma` symbols.
pub fn random_bytes(len: usize, sigma: u8, seed: u64) -> Vec<u8> {
    assert!((1..=8).contains(&sigma), "sigma must be in 1..=8");
    let mut rng = StdRng::seed_from_u64(seed);
    (0..len).map(|_| b'A' + rng.gen_range(0..sigma)).collect()
}

/// The shortest Fibonacci word of length at least `min_len`.
///
/// Fibonacci words are maximally repetitive: their transforms collapse to a
/// handful of runs, exercising the small-r extreme.
pub fn fibonacci_bytes(min_len: usize) -> Vec<u8> {
    let mut prev: Vec<u8> = vec![b'A'];
    let mut cur: Vec<u8> = vec![b'A', b'B'];
    while cur.len() < min_len {
        let next = [cur.as_slice(), prev.as_slice()].concat();
        prev = cur;
        cur = next;
    }
    cur
}

/// A transform crafted so nearly every unsplit table lookup scans far:
/// (BC)^{n/10} followed by A^{4n/5}.
///
/// The alternating prefix yields n/5 length-1 runs whose destinations all
/// land inside the giant A run, so without splitting the maximum scan is
/// r - 1 and 3n/5 of the mapping steps pay it.
pub fn adversarial_bwt(n: usize) -> Vec<u8> {
    assert!(n.is_multiple_of(10) && n >= 10, "length must be a positive multiple of 10");
    let mut out = Vec::with_capacity(n);
    for _ in 0..n / 10 {
        out.push(b'B');
        out.push(b'C');
    }
    out.resize(n, b'A');
    out
}

/// `copies` concatenated copies of `base`, each independently mutated:
/// every byte is replaced with probability `rate` by a different symbol
/// drawn from the distinct bytes of `base`.
///
/// Models the repetitive collections the run-length representation targets;
/// the run count grows with the mutation rate, not with the copy count.
pub fn mutate_copies(base: &[u8], copies: usize, rate: f64, seed: u64) -> Vec<u8> {
    assert!((0.0..=1.0).contains(&rate), "rate must be a probability");
    let mut symbols: Vec<u8> = base.to_vec();
    symbols.sort_unstable();
    symbols.dedup();
    let mut rng = StdRng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(base.len() * copies);
    for _ in 0..copies {
        for &b in base {
            if symbols.len() > 1 && rng.gen_bool(rate) {
                let mut repl = symbols[rng.gen_range(0..symbols.len())];
                while repl == b {
                    repl = symbols[rng.gen_range(0..symbols.len())];
                }
                out.push(repl);
            } else {
                out.push(b);
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn random_bytes_is_deterministic_and_bounded() {
        let a = random_bytes(5000, 4, 99);
        let b = random_bytes(5000, 4, 99);
        assert_eq!(a, b);
        assert!(a.iter().all(|&x| (b'A'..b'A' + 4).contains(&x)));
        let c = random_bytes(5000, 4, 100);
        assert_ne!(a, c);
        // all four symbols actually occur
        for s in 0..4u8 {
            assert!(a.contains(&(b'A' + s)));
        }
    }

    #[test]
    fn fibonacci_prefix_property() {
        let w = fibonacci_bytes(200);
        let shorter = fibonacci_bytes(50);
        assert!(w.len() >= 200);
        assert_eq!(&w[..shorter.len()], shorter.as_slice());
        assert_eq!(&w[..5], b"ABAAB");
    }

    #[test]
    fn adversarial_shape() {
        let b = adversarial_bwt(50);
        assert_eq!(b.len(), 50);
        assert_eq!(&b[..10], b"BCBCBCBCBC");
        assert!(b[10..].iter().all(|&x| x == b'A'));
        let runs = b.windows(2).filter(|w| w[0] != w[1]).count() + 1;
        assert_eq!(runs, 50 / 5 + 1);
    }

    #[test]
    fn mutate_copies_shape_and_rate() {
        let base = random_bytes(10_000, 4, 7);
        let text = mutate_copies(&base, 8, 0.01, 11);
        assert_eq!(text.len(), 80_000);
        let changed: usize = (0..8)
            .map(|c| {
                let copy = &text[c * base.len()..(c + 1) * base.len()];
                copy.iter().zip(&base).filter(|(a, b)| a != b).count()
            })
            .sum();
        let rate = changed as f64 / 80_000.0;
        assert!(rate > 0.005 && rate < 0.02, "observed mutation rate {rate}");
        assert_eq!(mutate_copies(&base, 8, 0.01, 11), text);
    }

    #[test]
    fn zero_rate_is_plain_repetition() {
        let base = b"ABCABD".to_vec();
        let text = mutate_copies(&base, 3, 0.0, 1);
        assert_eq!(text, b"ABCABDABCABDABCABD".to_vec());
    }
}
