//! A compressed full-text index over the run-length BWT.
//!
//! LF mapping is evaluated by table lookup: each BWT run becomes one row
//! storing its length, its symbol, and the (run, offset) destination of the
//! run head under LF. A step lands near its target and fast-forwards over at
//! most a few rows; run splitting bounds that scan either by a length cap or
//! by the balancing construction (worst case `2d - 1` rows for a chosen
//! `d >= 2`). The row table can additionally be compressed into fixed-size
//! blocks with per-symbol bitvectors, DAC-coded columns, and one of three
//! destination encodings.
//!
//! Module map:
//! - [`text`], [`sa`], [`rlbwt`]: text handling, suffix array, BWT, runs, and
//!   the brute-force reference routines everything else is tested against.
//! - [`table`]: the uncompressed move table and the [`LfTable`] interface.
//! - [`split`]: run splitting (length cap and balancing).
//! - [`bits`], [`dac`], [`dest`], [`block`]: succinct pieces and the blocked
//!   store.
//! - [`query`]: backward search, counting, inversion, scan profiling.
//! - [`index`], [`io`]: the assembled index and its on-disk format.
//! - [`corpus`]: deterministic input generators (random, Fibonacci,
//!   mutated-copy collections, the pathological BWT).

pub mod bits;
pub mod block;
pub mod corpus;
pub mod dac;
pub mod dest;
mod error;
pub mod index;
pub mod io;
pub mod query;
pub mod rlbwt;
pub mod sa;
pub mod split;
pub mod table;
pub mod text;

pub use block::{compress, BlockedTable, CompressParams};
pub use dest::DestEncoding;
pub use error::{Error, Result};
pub use index::{Backend, BackendConfig, BuildConfig, Index};
pub use io::{load, load_from_path, save, save_to_path};
pub use query::{backward_step, count, invert, profile_scans, ScanHistogram, SearchState};
pub use rlbwt::RunLengthBwt;
pub use split::{balance, rebuild_table, split_max_length, SplitConfig, SplitRuns};
pub use table::{build_table, LfTable, MoveRow, MoveTable, Position};
pub use text::{Alphabet, Text};
