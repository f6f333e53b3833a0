//! The user-facing index: build pipeline plus query front end.
//!
//! Building runs suffix array -> BWT -> run extraction -> optional run
//! splitting -> table -> optional block compression. Indexes can also be
//! built straight from an existing BWT, which skips suffix sorting and
//! allows transforms that never came from a text.

use crate::block::{compress, BlockedTable, CompressParams};
use crate::error::{Error, Result};
use crate::query;
use crate::query::ScanHistogram;
use crate::rlbwt::{lf_all, RunLengthBwt};
use crate::sa::{bwt_from_sa, suffix_array};
use crate::split::SplitConfig;
use crate::split::rebuild_table;
use crate::table::{LfTable, MoveRow, MoveTable, Position};
use crate::text::{Alphabet, Text};

/// Which table representation the index stores.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum BackendConfig {
    Uncompressed,
    Blocked(CompressParams),
}

/// Everything [`Index::build`] needs to know.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BuildConfig {
    pub split: SplitConfig,
    pub backend: BackendConfig,
}

impl Default for BuildConfig {
    fn default() -> Self {
        BuildConfig {
            split: SplitConfig::None,
            backend: BackendConfig::Blocked(CompressParams::default()),
        }
    }
}

/// The stored table, either representation.
#[derive(Debug, Clone, PartialEq)]
pub enum Backend {
    Uncompressed(MoveTable),
    Blocked(BlockedTable),
}

macro_rules! delegate {
    ($self:ident, $t:ident => $body:expr) => {
        match $self {
            Backend::Uncompressed($t) => $body,
            Backend::Blocked($t) => $body,
        }
    };
}

impl LfTable for Backend {
    fn text_len(&self) -> usize {
        delegate!(self, t => t.text_len())
    }

    fn num_rows(&self) -> usize {
        delegate!(self, t => t.num_rows())
    }

    fn alphabet(&self) -> &Alphabet {
        delegate!(self, t => t.alphabet())
    }

    fn row(&self, k: usize) -> MoveRow {
        delegate!(self, t => t.row(k))
    }

    fn row_length(&self, k: usize) -> usize {
        delegate!(self, t => t.row_length(k))
    }

    fn row_symbol(&self, k: usize) -> u8 {
        delegate!(self, t => t.row_symbol(k))
    }

    fn head(&self, k: usize) -> usize {
        delegate!(self, t => t.head(k))
    }

    fn position_to_pair(&self, i: usize) -> Position {
        delegate!(self, t => t.position_to_pair(i))
    }

    fn pair_to_index(&self, p: Position) -> usize {
        delegate!(self, t => t.pair_to_index(p))
    }

    fn run_rank(&self, k: usize, c: u8) -> usize {
        delegate!(self, t => t.run_rank(k, c))
    }

    fn run_select(&self, j: usize, c: u8) -> Option<usize> {
        delegate!(self, t => t.run_select(j, c))
    }

    fn next_run_of(&self, k: usize, c: u8) -> Option<usize> {
        delegate!(self, t => t.next_run_of(k, c))
    }

    fn prev_run_of(&self, k: usize, c: u8) -> Option<usize> {
        delegate!(self, t => t.prev_run_of(k, c))
    }

    fn lf_step_counted(&self, p: Position) -> (Position, usize) {
        delegate!(self, t => t.lf_step_counted(p))
    }
}

/// A searchable compressed full-text index.
#[derive(Debug, Clone, PartialEq)]
pub struct Index {
    pub(crate) backend: Backend,
    pub(crate) split: SplitConfig,
    /// Runs of the BWT before any splitting.
    pub(crate) original_runs: usize,
}

impl Index {
    /// Indexes a text end to end.
    pub fn build(text: &Text, config: &BuildConfig) -> Result<Index> {
        let sa = suffix_array(text);
        let bwt = bwt_from_sa(text, &sa);
        Self::from_bwt_impl(&bwt, Alphabet::from_text(text), config)
    }

    /// Indexes an existing BWT directly. The terminator, if any, is
    /// inferred: the smallest symbol qualifies when it occurs exactly once.
    pub fn from_bwt(bwt: &[u8], config: &BuildConfig) -> Result<Index> {
        if bwt.is_empty() {
            return Err(Error::EmptyText);
        }
        if bwt.len() > u32::MAX as usize {
            return Err(Error::TextTooLong { n: bwt.len() });
        }
        Self::from_bwt_impl(bwt, Alphabet::from_bytes(bwt), config)
    }

    fn from_bwt_impl(bwt: &[u8], alphabet: Alphabet, config: &BuildConfig) -> Result<Index> {
        let rlbwt = RunLengthBwt::from_bwt(bwt);
        let lf = lf_all(bwt, &alphabet);
        let splits = config.split.apply(&rlbwt, &lf);
        let table = rebuild_table(&rlbwt, &splits, &lf);
        let backend = match config.backend {
            BackendConfig::Uncompressed => Backend::Uncompressed(table),
            BackendConfig::Blocked(params) => Backend::Blocked(compress(&table, params)?),
        };
        Ok(Index { backend, split: config.split, original_runs: rlbwt.num_runs() })
    }

    pub fn backend(&self) -> &Backend {
        &self.backend
    }

    pub fn backend_name(&self) -> &'static str {
        match self.backend {
            Backend::Uncompressed(_) => "uncompressed",
            Backend::Blocked(_) => "blocked",
        }
    }

    pub fn split(&self) -> SplitConfig {
        self.split
    }

    /// Indexed length, terminator included.
    pub fn text_len(&self) -> usize {
        self.backend.text_len()
    }

    /// Runs of the BWT before splitting.
    pub fn original_runs(&self) -> usize {
        self.original_runs
    }

    /// Table rows, splitting included.
    pub fn num_rows(&self) -> usize {
        self.backend.num_rows()
    }

    pub fn alphabet(&self) -> &Alphabet {
        self.backend.alphabet()
    }

    /// Occurrences of `pattern` in the indexed text.
    pub fn count(&self, pattern: &[u8]) -> usize {
        query::count(&self.backend, pattern)
    }

    /// The indexed text, terminator included.
    pub fn invert(&self) -> Result<Vec<u8>> {
        query::invert(&self.backend)
    }

    /// Scan-length distribution over the searches for `patterns`.
    pub fn profile<I>(&self, patterns: I) -> ScanHistogram
    where
        I: IntoIterator,
        I::Item: AsRef<[u8]>,
    {
        query::profile_scans(&self.backend, patterns)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;
    use crate::dest::DestEncoding;

    fn blocked(block_size: usize) -> BackendConfig {
        BackendConfig::Blocked(CompressParams {
            block_size,
            encoding: DestEncoding::Bitvector,
            head_sample_rate: 4,
        })
    }

    #[test]
    fn build_and_query_both_backends() {
        let text = Text::from_terminated(b"GATTAGATACAT$".to_vec()).unwrap();
        for backend in [BackendConfig::Uncompressed, blocked(3)] {
            let index =
                Index::build(&text, &BuildConfig { split: SplitConfig::None, backend }).unwrap();
            assert_eq!(index.text_len(), 13);
            assert_eq!(index.original_runs(), 8);
            assert_eq!(index.num_rows(), 8);
            assert_eq!(index.count(b"AT"), 3);
            assert_eq!(index.count(b"GA"), 2);
            assert_eq!(index.count(b"TAG"), 1);
            assert_eq!(index.invert().unwrap(), text.bytes());
        }
    }

    #[test]
    fn splitting_changes_rows_not_answers() {
        let text = Text::from_bytes(corpus::random_bytes(4000, 3, 21)).unwrap();
        let plain = Index::build(
            &text,
            &BuildConfig { split: SplitConfig::None, backend: BackendConfig::Uncompressed },
        )
        .unwrap();
        let balanced = Index::build(
            &text,
            &BuildConfig { split: SplitConfig::Balanced { d: 2 }, backend: blocked(64) },
        )
        .unwrap();
        assert!(balanced.num_rows() >= plain.num_rows());
        assert!(balanced.num_rows() <= 2 * plain.num_rows());
        assert_eq!(balanced.original_runs(), plain.original_runs());
        for pattern in [b"AB".as_slice(), b"CAB", b"BBB", b"AC"] {
            assert_eq!(balanced.count(pattern), plain.count(pattern));
        }
        assert_eq!(balanced.invert().unwrap(), plain.invert().unwrap());
    }

    #[test]
    fn default_config_is_blocked() {
        let text = Text::from_bytes(b"mississippi".to_vec()).unwrap();
        let index = Index::build(&text, &BuildConfig::default()).unwrap();
        assert_eq!(index.backend_name(), "blocked");
        assert_eq!(index.count(b"ssi"), 2);
        assert_eq!(index.count(b"issi"), 2);
        assert_eq!(index.count(b"sss"), 0);
    }

    #[test]
    fn bwt_direct_construction() {
        let bwt = corpus::adversarial_bwt(100);
        let index = Index::from_bwt(&bwt, &BuildConfig::default()).unwrap();
        assert_eq!(index.text_len(), 100);
        assert_eq!(index.original_runs(), 21);
        assert!(index.alphabet().terminator().is_none());
        let hist = index.profile([b"BA".as_slice()]);
        assert!(hist.total() > 0);
    }

    #[test]
    fn rejects_empty_and_wide_inputs() {
        assert!(matches!(Index::from_bwt(b"", &BuildConfig::default()), Err(Error::EmptyText)));
        let wide = b"ABCDEFGHI\0";
        assert!(matches!(
            Index::from_bwt(wide, &BuildConfig::default()),
            Err(Error::AlphabetTooLarge { sigma: 9 })
        ));
        // the uncompressed backend has no alphabet cap
        let cfg = BuildConfig { split: SplitConfig::None, backend: BackendConfig::Uncompressed };
        assert!(Index::from_bwt(wide, &cfg).is_ok());
    }
}
