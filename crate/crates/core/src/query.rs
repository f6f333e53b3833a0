//! Backward search, counting, text reconstruction, and scan profiling.
//!
//! All operations run purely in (run, offset) space: a search interval is a
//! pair of positions, refined per pattern symbol to the first and last
//! in-interval runs of that symbol (rank/select on rows) and then mapped
//! through the table. Nothing here touches absolute positions except the
//! final width computation.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::table::{LfTable, Position};

/// A backward-search interval with inclusive endpoints, or a failed search.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SearchState {
    Interval { start: Position, end: Position },
    Empty,
}

impl SearchState {
    /// The interval covering the whole BWT: every position matches the
    /// empty suffix.
    pub fn full<T: LfTable + ?Sized>(table: &T) -> Self {
        let last = table.num_rows() - 1;
        SearchState::Interval {
            start: Position::new(0, 0),
            end: Position::new(last, table.row_length(last) - 1),
        }
    }

    pub fn is_empty(&self) -> bool {
        matches!(self, SearchState::Empty)
    }

    /// Number of positions in the interval.
    pub fn width<T: LfTable + ?Sized>(&self, table: &T) -> usize {
        match *self {
            SearchState::Empty => 0,
            SearchState::Interval { start, end } => {
                table.pair_to_index(end) - table.pair_to_index(start) + 1
            }
        }
    }
}

/// One backward-search step: restrict `state` to suffixes preceded by `c`,
/// reporting each mapping's scan length to `on_scan`.
fn step_with<T: LfTable + ?Sized>(
    table: &T,
    state: &SearchState,
    c: u8,
    on_scan: &mut impl FnMut(usize),
) -> SearchState {
    let SearchState::Interval { start, end } = *state else {
        return SearchState::Empty;
    };
    // first and last positions of symbol c inside [start, end]
    let lo = if table.row_symbol(start.run) == c {
        Some(start)
    } else {
        table.next_run_of(start.run + 1, c).map(|r| Position::new(r, 0))
    };
    let hi = if table.row_symbol(end.run) == c {
        Some(end)
    } else {
        table
            .prev_run_of(end.run, c)
            .map(|r| Position::new(r, table.row_length(r) - 1))
    };
    match (lo, hi) {
        (Some(lo), Some(hi)) if lo <= hi => {
            let (start, scanned) = table.lf_step_counted(lo);
            on_scan(scanned);
            let (end, scanned) = table.lf_step_counted(hi);
            on_scan(scanned);
            SearchState::Interval { start, end }
        }
        _ => SearchState::Empty,
    }
}

/// One backward-search step: restrict `state` to suffixes preceded by `c`.
pub fn backward_step<T: LfTable + ?Sized>(table: &T, state: &SearchState, c: u8) -> SearchState {
    step_with(table, state, c, &mut |_| {})
}

/// Number of occurrences of `pattern` in the indexed text. The terminator
/// is an internal sentinel, so patterns containing it (and the empty
/// pattern) match nowhere.
pub fn count<T: LfTable + ?Sized>(table: &T, pattern: &[u8]) -> usize {
    if pattern.is_empty() {
        return 0;
    }
    if let Some(t) = table.alphabet().terminator() {
        if pattern.contains(&t) {
            return 0;
        }
    }
    let mut state = SearchState::full(table);
    for &c in pattern.iter().rev() {
        state = backward_step(table, &state, c);
        if state.is_empty() {
            return 0;
        }
    }
    state.width(table)
}

/// Reconstructs the indexed text, terminator included, by walking the
/// mapping once around its cycle.
pub fn invert<T: LfTable + ?Sized>(table: &T) -> Result<Vec<u8>> {
    let term = table.alphabet().terminator().ok_or(Error::NoTerminator)?;
    let run = table
        .run_select(1, term)
        .ok_or_else(|| Error::Corrupt("terminator symbol has no run".into()))?;
    let mut out = Vec::with_capacity(table.text_len());
    let mut pos = Position::new(run, 0);
    for _ in 0..table.text_len() {
        out.push(table.row_symbol(pos.run));
        pos = table.lf_step(pos);
    }
    out.reverse();
    Ok(out)
}

/// Distribution of fast-forward scan lengths over a batch of mapping steps.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ScanHistogram {
    counts: BTreeMap<usize, u64>,
    total: u64,
}

impl ScanHistogram {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn record(&mut self, scans: usize) {
        *self.counts.entry(scans).or_insert(0) += 1;
        self.total += 1;
    }

    /// Steps recorded in total.
    pub fn total(&self) -> u64 {
        self.total
    }

    pub fn count_of(&self, scans: usize) -> u64 {
        self.counts.get(&scans).copied().unwrap_or(0)
    }

    /// Longest scan seen; 0 when nothing was recorded.
    pub fn max_scan(&self) -> usize {
        self.counts.keys().next_back().copied().unwrap_or(0)
    }

    /// Share of steps that needed no scan at all; 1.0 when nothing was
    /// recorded.
    pub fn zero_fraction(&self) -> f64 {
        if self.total == 0 {
            return 1.0;
        }
        self.count_of(0) as f64 / self.total as f64
    }

    /// (scan length, frequency) in increasing scan order.
    pub fn iter(&self) -> impl Iterator<Item = (usize, u64)> + '_ {
        self.counts.iter().map(|(&k, &v)| (k, v))
    }

    pub fn merge(&mut self, other: &ScanHistogram) {
        for (scans, freq) in other.iter() {
            *self.counts.entry(scans).or_insert(0) += freq;
        }
        self.total += other.total;
    }
}

/// Runs backward search for every pattern and collects the scan lengths of
/// all mapping steps performed, failed searches included.
pub fn profile_scans<T, I>(table: &T, patterns: I) -> ScanHistogram
where
    T: LfTable + ?Sized,
    I: IntoIterator,
    I::Item: AsRef<[u8]>,
{
    let mut hist = ScanHistogram::new();
    for pattern in patterns {
        let mut state = SearchState::full(table);
        for &c in pattern.as_ref().iter().rev() {
            state = step_with(table, &state, c, &mut |s| hist.record(s));
            if state.is_empty() {
                break;
            }
        }
    }
    hist
}
