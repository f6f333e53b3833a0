//! Input text with a sentinel terminator, and its alphabet.
//!
//! A [`Text`] always ends with a terminator byte that is strictly smaller
//! than every other byte and occurs exactly once. The library convention is
//! byte 0, appended on construction when absent; inputs that contain byte 0
//! anywhere else are rejected. Texts whose final byte already satisfies the
//! terminator property (e.g. a trailing `$` over an uppercase alphabet) can
//! be wrapped as-is with [`Text::from_terminated`].

use crate::{Error, Result};

/// A byte string terminated by its unique smallest byte.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Text {
    bytes: Vec<u8>,
}

impl Text {
    /// Wraps raw bytes, appending terminator byte 0 if it is not already the
    /// final byte. Rejects empty input and interior zero bytes.
    pub fn from_bytes(data: impl Into<Vec<u8>>) -> Result<Self> {
        let mut bytes = data.into();
        if bytes.is_empty() {
            return Err(Error::EmptyText);
        }
        let last = bytes.len() - 1;
        if let Some(position) = bytes[..last].iter().position(|&b| b == 0) {
            return Err(Error::InteriorTerminator { byte: 0, position });
        }
        if bytes[last] != 0 {
            bytes.push(0);
        }
        Self::check_len(bytes.len())?;
        Ok(Text { bytes })
    }

    /// Wraps bytes whose final byte already is the terminator: it must occur
    /// exactly once and be strictly smaller than every other byte.
    pub fn from_terminated(bytes: Vec<u8>) -> Result<Self> {
        let Some((&term, body)) = bytes.split_last() else {
            return Err(Error::EmptyText);
        };
        if body.iter().any(|&b| b <= term) {
            return Err(Error::BadTerminator { byte: term });
        }
        Self::check_len(bytes.len())?;
        Ok(Text { bytes })
    }

    /// Parses FASTA input: header lines (`>` or `;`) are dropped, sequence
    /// lines of every record are concatenated, line breaks are stripped.
    pub fn from_fasta(raw: &[u8]) -> Result<Self> {
        let mut data = Vec::with_capacity(raw.len());
        for line in raw.split(|&b| b == b'\n') {
            let line = line.strip_suffix(b"\r").unwrap_or(line);
            if line.first().is_some_and(|&b| b == b'>' || b == b';') {
                continue;
            }
            data.extend_from_slice(line);
        }
        Self::from_bytes(data)
    }

    fn check_len(n: usize) -> Result<()> {
        // Positions are stored as u32 throughout the index.
        if n > u32::MAX as usize {
            return Err(Error::TextTooLong { n });
        }
        Ok(())
    }

    /// Full contents including the terminator.
    pub fn bytes(&self) -> &[u8] {
        &self.bytes
    }

    /// Length including the terminator.
    pub fn len(&self) -> usize {
        self.bytes.len()
    }

    pub fn is_empty(&self) -> bool {
        false // a Text always holds at least the terminator
    }

    pub fn terminator(&self) -> u8 {
        *self.bytes.last().unwrap()
    }

    /// Contents without the trailing terminator.
    pub fn body(&self) -> &[u8] {
        &self.bytes[..self.bytes.len() - 1]
    }
}

/// Occurrences of `pattern` in the text body, by direct sliding-window scan.
///
/// This is the reference implementation that index-based counting is checked
/// against; the terminator position can never be part of a match.
pub fn naive_count(text: &Text, pattern: &[u8]) -> usize {
    let body = text.body();
    if pattern.is_empty() || pattern.len() > body.len() {
        return 0;
    }
    body.windows(pattern.len()).filter(|w| *w == pattern).count()
}

/// Symbol table of a text or BWT: per-byte counts and the C array.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Alphabet {
    /// Distinct bytes present, ascending.
    symbols: Vec<u8>,
    counts: Vec<u64>,
    /// c_array[b] = number of occurrences of bytes strictly smaller than b.
    c_array: Vec<u64>,
    terminator: Option<u8>,
    n: usize,
}

impl Alphabet {
    /// Alphabet of a terminated text; records which byte is the sentinel.
    pub fn from_text(text: &Text) -> Self {
        let mut a = Self::from_bytes(text.bytes());
        a.terminator = Some(text.terminator());
        a
    }

    /// Alphabet of an arbitrary byte string (e.g. a BWT given directly).
    /// The terminator is inferred: the smallest byte qualifies when it
    /// occurs exactly once, which holds for every transform of a properly
    /// terminated text.
    pub fn from_bytes(bytes: &[u8]) -> Self {
        let mut counts = vec![0u64; 256];
        for &b in bytes {
            counts[b as usize] += 1;
        }
        let mut c_array = vec![0u64; 257];
        for b in 0..256 {
            c_array[b + 1] = c_array[b] + counts[b];
        }
        c_array.truncate(256);
        let symbols: Vec<u8> =
            (0u16..256).filter(|&b| counts[b as usize] > 0).map(|b| b as u8).collect();
        let terminator = symbols.first().copied().filter(|&s| counts[s as usize] == 1);
        Alphabet { symbols, counts, c_array, terminator, n: bytes.len() }
    }

    /// Number of occurrences of bytes strictly smaller than `b`.
    pub fn c(&self, b: u8) -> usize {
        self.c_array[b as usize] as usize
    }

    pub fn count(&self, b: u8) -> usize {
        self.counts[b as usize] as usize
    }

    /// Distinct bytes present, ascending.
    pub fn symbols(&self) -> &[u8] {
        &self.symbols
    }

    /// Number of distinct bytes present (terminator included).
    pub fn sigma(&self) -> usize {
        self.symbols.len()
    }

    /// Number of distinct non-terminator bytes.
    pub fn data_sigma(&self) -> usize {
        match self.terminator {
            Some(t) if self.counts[t as usize] > 0 => self.symbols.len() - 1,
            _ => self.symbols.len(),
        }
    }

    pub fn terminator(&self) -> Option<u8> {
        self.terminator
    }

    pub fn set_terminator(&mut self, t: Option<u8>) {
        self.terminator = t;
    }

    pub fn contains(&self, b: u8) -> bool {
        self.counts[b as usize] > 0
    }

    /// Dense rank of `b` among the present symbols.
    pub fn index_of(&self, b: u8) -> Option<usize> {
        self.symbols.binary_search(&b).ok()
    }

    /// Total number of symbols counted.
    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    /// Rebuilds an alphabet from recorded (symbol, count) pairs.
    pub fn from_parts(pairs: &[(u8, u64)], terminator: Option<u8>) -> Self {
        let mut counts = vec![0u64; 256];
        for &(sym, cnt) in pairs {
            counts[sym as usize] = cnt;
        }
        let mut c_array = vec![0u64; 257];
        for b in 0..256 {
            c_array[b + 1] = c_array[b] + counts[b];
        }
        c_array.truncate(256);
        let n = pairs.iter().map(|&(_, c)| c).sum::<u64>() as usize;
        Alphabet {
            symbols: pairs.iter().map(|&(s, _)| s).collect(),
            counts,
            c_array,
            terminator,
            n,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn from_bytes_appends_terminator() {
        let t = Text::from_bytes(b"GATTAGATACAT".to_vec()).unwrap();
        assert_eq!(t.len(), 13);
        assert_eq!(t.terminator(), 0);
        assert_eq!(t.body(), b"GATTAGATACAT");
    }

    #[test]
    fn from_bytes_accepts_existing_terminator() {
        let t = Text::from_bytes(b"ABC\0".to_vec()).unwrap();
        assert_eq!(t.len(), 4);
    }

    #[test]
    fn from_bytes_rejects_interior_zero() {
        let err = Text::from_bytes(b"AB\0C".to_vec()).unwrap_err();
        assert!(matches!(err, Error::InteriorTerminator { position: 2, .. }));
    }

    #[test]
    fn from_bytes_rejects_empty() {
        assert!(matches!(Text::from_bytes(Vec::new()).unwrap_err(), Error::EmptyText));
    }

    #[test]
    fn from_terminated_validates_unique_minimum() {
        assert!(Text::from_terminated(b"GATTAGATACAT$".to_vec()).is_ok());
        // '$' also inside the body
        assert!(Text::from_terminated(b"GA$TA$".to_vec()).is_err());
        // final byte not strictly smallest
        assert!(Text::from_terminated(b"ABCB".to_vec()).is_err());
    }

    #[test]
    fn fasta_strips_headers_and_newlines() {
        let t = Text::from_fasta(b">r1 desc\nACGT\nAC\n>r2\nGGG\n").unwrap();
        assert_eq!(t.body(), b"ACGTACGGG");
    }

    #[test]
    fn fasta_handles_crlf() {
        let t = Text::from_fasta(b">r1\r\nAC\r\nGT\r\n").unwrap();
        assert_eq!(t.body(), b"ACGT");
    }

    #[test]
    fn naive_count_examples() {
        let t = Text::from_terminated(b"GATTAGATACAT$".to_vec()).unwrap();
        assert_eq!(naive_count(&t, b"AT"), 3);
        assert_eq!(naive_count(&t, b"GA"), 2);
        assert_eq!(naive_count(&t, b"TAG"), 1);
        assert_eq!(naive_count(&t, b"Z"), 0);
        assert_eq!(naive_count(&t, b"T$"), 0); // terminator position never matches
        assert_eq!(naive_count(&t, b"GATTAGATACAT"), 1);
    }

    #[test]
    fn alphabet_counts_and_c_array() {
        let t = Text::from_terminated(b"GATTAGATACAT$".to_vec()).unwrap();
        let a = Alphabet::from_text(&t);
        assert_eq!(a.symbols(), b"$ACGT");
        assert_eq!(a.sigma(), 5);
        assert_eq!(a.data_sigma(), 4);
        assert_eq!(a.count(b'A'), 5);
        assert_eq!(a.c(b'$'), 0);
        assert_eq!(a.c(b'A'), 1);
        assert_eq!(a.c(b'C'), 6);
        assert_eq!(a.c(b'G'), 7);
        assert_eq!(a.c(b'T'), 9);
        assert_eq!(a.index_of(b'G'), Some(3));
        assert_eq!(a.index_of(b'X'), None);
        assert_eq!(a.terminator(), Some(b'$'));
    }

    #[test]
    fn alphabet_from_parts_round_trip() {
        let t = Text::from_bytes(b"ACCGTT".to_vec()).unwrap();
        let a = Alphabet::from_text(&t);
        let pairs: Vec<(u8, u64)> =
            a.symbols().iter().map(|&s| (s, a.count(s) as u64)).collect();
        let b = Alphabet::from_parts(&pairs, a.terminator());
        assert_eq!(a, b);
    }
}
