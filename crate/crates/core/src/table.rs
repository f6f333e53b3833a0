//! Table-lookup LF mapping over the run-length BWT.
//!
//! One row per run. A row stores the run's length and symbol plus the exact
//! (run, offset) location of the run head's LF image, so evaluating LF at
//! (run k, offset d) starts from the stored destination shifted by d and
//! fast-forwards over full rows until the offset fits. The scan only ever
//! moves forward: the stored destination is the image of the head, and the
//! target lies d positions after it, never before.

use crate::rlbwt::RunLengthBwt;
use crate::text::Alphabet;

/// A BWT position expressed as (run index, offset within the run).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Position {
    pub run: usize,
    pub offset: usize,
}

impl Position {
    pub fn new(run: usize, offset: usize) -> Self {
        Position { run, offset }
    }
}

/// One table row. `dest_run`/`dest_offset` locate LF(head of this run).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MoveRow {
    pub length: u32,
    pub dest_run: u32,
    pub dest_offset: u32,
    pub symbol: u8,
}

/// Shared interface of the uncompressed and blocked tables: everything
/// backward search, inversion, and profiling need.
pub trait LfTable {
    /// Total BWT length n.
    fn text_len(&self) -> usize;

    /// Number of rows (runs, or sub-runs after splitting).
    fn num_rows(&self) -> usize;

    fn alphabet(&self) -> &Alphabet;

    /// Decoded row `k`.
    fn row(&self, k: usize) -> MoveRow;

    fn row_length(&self, k: usize) -> usize {
        self.row(k).length as usize
    }

    fn row_symbol(&self, k: usize) -> u8 {
        self.row(k).symbol
    }

    /// Absolute BWT position of row k's first symbol.
    fn head(&self, k: usize) -> usize;

    /// (run, offset) of absolute position `i`.
    fn position_to_pair(&self, i: usize) -> Position;

    /// Absolute position of `p`.
    fn pair_to_index(&self, p: Position) -> usize {
        debug_assert!(p.offset < self.row_length(p.run));
        self.head(p.run) + p.offset
    }

    /// Number of rows with symbol `c` among rows `[0, k)`.
    fn run_rank(&self, k: usize, c: u8) -> usize;

    /// Index of the j-th row (1-based) with symbol `c`, if it exists.
    fn run_select(&self, j: usize, c: u8) -> Option<usize>;

    /// Smallest row index `>= k` with symbol `c`.
    fn next_run_of(&self, k: usize, c: u8) -> Option<usize> {
        self.run_select(self.run_rank(k, c) + 1, c)
    }

    /// Largest row index `< k` with symbol `c`.
    fn prev_run_of(&self, k: usize, c: u8) -> Option<usize> {
        match self.run_rank(k, c) {
            0 => None,
            j => self.run_select(j, c),
        }
    }

    /// LF of `p` in (run, offset) space.
    fn lf_step(&self, p: Position) -> Position {
        self.lf_step_counted(p).0
    }

    /// LF of `p`, plus the number of rows the fast-forward scan advanced.
    fn lf_step_counted(&self, p: Position) -> (Position, usize) {
        let row = self.row(p.run);
        debug_assert!(p.offset < row.length as usize, "offset out of run");
        let mut run = row.dest_run as usize;
        let mut offset = row.dest_offset as usize + p.offset;
        let mut scanned = 0usize;
        loop {
            let len = self.row_length(run);
            if offset < len {
                return (Position::new(run, offset), scanned);
            }
            offset -= len;
            run += 1;
            scanned += 1;
            debug_assert!(run < self.num_rows(), "scan ran past the last row");
        }
    }
}

/// The uncompressed table: rows in one contiguous array (scan locality),
/// plus run head positions and per-symbol row lists for rank/select.
#[derive(Debug, Clone, PartialEq)]
pub struct MoveTable {
    rows: Vec<MoveRow>,
    run_heads: Vec<u32>,
    n: usize,
    alphabet: Alphabet,
    /// Row indices per dense alphabet symbol, ascending.
    sym_rows: Vec<Vec<u32>>,
}

impl MoveTable {
    pub fn new(rows: Vec<MoveRow>, run_heads: Vec<u32>, n: usize, alphabet: Alphabet) -> Self {
        debug_assert_eq!(rows.len(), run_heads.len());
        debug_assert_eq!(
            rows.iter().map(|r| r.length as usize).sum::<usize>(),
            n,
            "row lengths must cover the BWT"
        );
        let mut sym_rows = vec![Vec::new(); alphabet.sigma()];
        for (k, row) in rows.iter().enumerate() {
            let dense = alphabet
                .index_of(row.symbol)
                .expect("row symbol missing from alphabet");
            sym_rows[dense].push(k as u32);
        }
        MoveTable { rows, run_heads, n, alphabet, sym_rows }
    }

    pub fn rows(&self) -> &[MoveRow] {
        &self.rows
    }

    pub fn run_heads(&self) -> &[u32] {
        &self.run_heads
    }
}

impl LfTable for MoveTable {
    fn text_len(&self) -> usize {
        self.n
    }

    fn num_rows(&self) -> usize {
        self.rows.len()
    }

    fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    fn row(&self, k: usize) -> MoveRow {
        self.rows[k]
    }

    fn row_length(&self, k: usize) -> usize {
        self.rows[k].length as usize
    }

    fn row_symbol(&self, k: usize) -> u8 {
        self.rows[k].symbol
    }

    fn head(&self, k: usize) -> usize {
        self.run_heads[k] as usize
    }

    fn position_to_pair(&self, i: usize) -> Position {
        assert!(i < self.n, "position {i} out of range (n = {})", self.n);
        let run = self.run_heads.partition_point(|&h| h as usize <= i) - 1;
        Position::new(run, i - self.run_heads[run] as usize)
    }

    fn run_rank(&self, k: usize, c: u8) -> usize {
        debug_assert!(k <= self.num_rows());
        match self.alphabet.index_of(c) {
            Some(dense) => self.sym_rows[dense].partition_point(|&r| (r as usize) < k),
            None => 0,
        }
    }

    fn run_select(&self, j: usize, c: u8) -> Option<usize> {
        if j == 0 {
            return None;
        }
        let dense = self.alphabet.index_of(c)?;
        self.sym_rows[dense].get(j - 1).map(|&r| r as usize)
    }
}

/// Builds the table for the unsplit runs: destination of each row is the LF
/// image of its head, located within the same head list by binary search.
pub fn build_table(rlbwt: &RunLengthBwt, lf: &[u32]) -> MoveTable {
    let heads = rlbwt.run_heads();
    let rows = (0..rlbwt.num_runs())
        .map(|k| {
            let dest_abs = lf[rlbwt.head(k)];
            let dest_run = heads.partition_point(|&h| h <= dest_abs) - 1;
            MoveRow {
                length: rlbwt.run_len(k) as u32,
                dest_run: dest_run as u32,
                dest_offset: dest_abs - heads[dest_run],
                symbol: rlbwt.char(k),
            }
        })
        .collect();
    let alphabet = Alphabet::from_bytes(&rlbwt.expand());
    MoveTable::new(rows, heads.to_vec(), rlbwt.len(), alphabet)
}

/// LF evaluated on absolute positions by predecessor search over run heads:
/// the pre-table formulation, kept as the comparison baseline.
#[derive(Debug, Clone)]
pub struct PredecessorLf {
    run_heads: Vec<u32>,
    /// LF image of each run head.
    dests: Vec<u32>,
    n: usize,
}

impl PredecessorLf {
    pub fn new(rlbwt: &RunLengthBwt, lf: &[u32]) -> Self {
        let run_heads = rlbwt.run_heads().to_vec();
        let dests = run_heads.iter().map(|&h| lf[h as usize]).collect();
        PredecessorLf { run_heads, dests, n: rlbwt.len() }
    }

    pub fn lf(&self, i: usize) -> usize {
        debug_assert!(i < self.n);
        let k = self.run_heads.partition_point(|&h| h as usize <= i) - 1;
        self.dests[k] as usize + (i - self.run_heads[k] as usize)
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    /// Rough storage footprint in bytes.
    pub fn size_bytes(&self) -> usize {
        (self.run_heads.len() + self.dests.len()) * std::mem::size_of::<u32>()
    }
}
