//! Run splitting: bounding the fast-forward scan by adding row boundaries.
//!
//! Two strategies. `split_max_length` caps sub-run length at
//! `ceil(factor * n / r)`, cutting each long run into equal-as-possible
//! pieces. `balance` realizes the scan guarantee: starting from the run
//! heads P with images Q = LF(P), it inserts heads until every interval
//! between consecutive Q-values contains fewer than 2d elements of P', at a
//! cost of at most |P|/(d-1) insertions, so |P'| <= d|P|/(d-1) and every
//! later `lf_step` scans at most 2d-1 rows.
//!
//! Balancing works because row images tile [0, n): the interval between a
//! Q-value and its successor is exactly the LF image of one row, and a scan
//! starting at that image's base can only cross heads lying inside it. The
//! image of the last row ends at n, not at a successor Q-value, so that
//! final interval is kept in the worklist too; the insertion-counting
//! argument is unchanged by it.

use std::collections::{BTreeMap, BTreeSet};
use std::ops::Bound;

use crate::rlbwt::{invert_permutation, RunLengthBwt};
use crate::table::{MoveRow, MoveTable};
use crate::text::Alphabet;

/// How (and whether) runs are split before table construction.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SplitConfig {
    None,
    /// Cap sub-run length at `ceil(factor * n / r)`.
    MaxLength { factor: f64 },
    /// Balance with parameter `d >= 2`: every scan stays below `2d` rows.
    Balanced { d: u32 },
}

impl SplitConfig {
    pub fn apply(&self, rlbwt: &RunLengthBwt, lf: &[u32]) -> SplitRuns {
        match *self {
            SplitConfig::None => SplitRuns::identity(rlbwt),
            SplitConfig::MaxLength { factor } => split_max_length(rlbwt, factor),
            SplitConfig::Balanced { d } => balance(rlbwt.run_heads(), lf, d),
        }
    }
}

/// A refinement of the maximal runs: every original head is kept, and each
/// sub-run remembers which maximal run it came from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SplitRuns {
    pub sub_run_heads: Vec<u32>,
    pub parent_run: Vec<u32>,
}

impl SplitRuns {
    /// No splitting: sub-runs are the maximal runs themselves.
    pub fn identity(rlbwt: &RunLengthBwt) -> Self {
        SplitRuns {
            sub_run_heads: rlbwt.run_heads().to_vec(),
            parent_run: (0..rlbwt.num_runs() as u32).collect(),
        }
    }

    pub fn num_sub_runs(&self) -> usize {
        self.sub_run_heads.len()
    }

    /// Builds the parent map for a head set that contains all original heads.
    fn from_heads(heads: Vec<u32>, rlbwt: &RunLengthBwt) -> Self {
        let orig = rlbwt.run_heads();
        let mut parent_run = Vec::with_capacity(heads.len());
        let mut parent = 0usize;
        for &h in &heads {
            while parent + 1 < orig.len() && orig[parent + 1] <= h {
                parent += 1;
            }
            parent_run.push(parent as u32);
        }
        debug_assert_eq!(*parent_run.last().unwrap() as usize, rlbwt.num_runs() - 1);
        SplitRuns { sub_run_heads: heads, parent_run }
    }
}

/// Splits every run longer than `ceil(factor * n / r)` into equal-as-possible
/// pieces, none longer than the cap.
pub fn split_max_length(rlbwt: &RunLengthBwt, factor: f64) -> SplitRuns {
    assert!(factor > 0.0, "split factor must be positive");
    let n = rlbwt.len() as f64;
    let r = rlbwt.num_runs() as f64;
    let cap = ((factor * n / r).ceil() as usize).max(1);

    let mut heads = Vec::with_capacity(rlbwt.num_runs());
    for k in 0..rlbwt.num_runs() {
        let head = rlbwt.head(k);
        let len = rlbwt.run_len(k);
        let pieces = len.div_ceil(cap);
        let base = len / pieces;
        let extra = len % pieces; // first `extra` pieces get one more symbol
        let mut at = head;
        for p in 0..pieces {
            heads.push(at as u32);
            at += base + (p < extra) as usize;
        }
        debug_assert_eq!(at, head + len);
    }
    SplitRuns::from_heads(heads, rlbwt)
}

/// Balances `heads` under the permutation `lf` with parameter `d >= 2`.
///
/// Maintains the intervals between consecutive values of Q' = LF(P') (plus
/// the trailing interval ending at n) with the count of P' elements each
/// contains. While some interval holds at least 2d elements, the smallest
/// violating one is processed: the (d+1)-st largest P' element `p` inside it
/// becomes a new Q'-value by inserting the head LF^-1(p), which splits the
/// interval at `p`. Counts are updated arithmetically; element selection is
/// an O(d) tree walk.
pub fn balance(heads: &[u32], lf: &[u32], d: u32) -> SplitRuns {
    assert!(d >= 2, "balancing requires d >= 2");
    assert!(!heads.is_empty() && heads[0] == 0, "head set must start at 0");
    let n = lf.len() as u32;
    let limit = 2 * d as usize;
    let lf_inv = invert_permutation(lf);

    let mut head_set: BTreeSet<u32> = heads.iter().copied().collect();

    // interval start q -> number of P' elements in [q, successor q).
    let mut intervals: BTreeMap<u32, u32> = BTreeMap::new();
    {
        let mut qs: Vec<u32> = heads.iter().map(|&h| lf[h as usize]).collect();
        qs.sort_unstable();
        debug_assert_eq!(qs[0], 0, "row images must tile [0, n) starting at 0");
        let sorted_heads: Vec<u32> = head_set.iter().copied().collect();
        let mut h = 0usize;
        for (j, &q) in qs.iter().enumerate() {
            let end = qs.get(j + 1).copied().unwrap_or(n);
            let start_h = h;
            while h < sorted_heads.len() && sorted_heads[h] < end {
                h += 1;
            }
            intervals.insert(q, (h - start_h) as u32);
        }
        debug_assert_eq!(h, sorted_heads.len());
    }

    let mut worklist: BTreeSet<u32> =
        intervals.iter().filter(|&(_, &c)| c as usize >= limit).map(|(&q, _)| q).collect();

    let budget = heads.len() / (d as usize - 1);
    let mut insertions = 0usize;
    while let Some(q) = worklist.pop_first() {
        let count = intervals[&q];
        if (count as usize) < limit {
            continue; // count dropped since this entry was queued
        }
        let q_end = intervals
            .range((Bound::Excluded(q), Bound::Unbounded))
            .next()
            .map(|(&k, _)| k)
            .unwrap_or(n);

        let p = *head_set
            .range(q..q_end)
            .rev()
            .nth(d as usize)
            .expect("violating interval holds at least d+1 elements");
        let x = lf_inv[p as usize];
        debug_assert!(!head_set.contains(&x));

        // [p, q_end) keeps p itself plus the d elements above it.
        let mut right = d + 1;
        let mut left = count - (d + 1);
        if x >= q && x < q_end {
            if x < p {
                left += 1;
            } else {
                right += 1;
            }
        } else {
            let (&u, cnt) = intervals.range_mut(..=x).next_back().expect("x below smallest Q");
            *cnt += 1;
            if *cnt as usize >= limit {
                worklist.insert(u);
            }
        }
        intervals.insert(q, left);
        intervals.insert(p, right);
        if left as usize >= limit {
            worklist.insert(q);
        }
        if right as usize >= limit {
            worklist.insert(p);
        }

        head_set.insert(x);
        insertions += 1;
        assert!(
            insertions <= budget,
            "balancing exceeded its insertion budget of {budget} (d = {d})"
        );
    }

    let heads_out: Vec<u32> = head_set.into_iter().collect();
    debug_assert!(heads_out.len() * (d as usize - 1) <= heads.len() * d as usize);

    // parent_run[k] = index of the input head interval containing sub-run k
    let mut parent_run = Vec::with_capacity(heads_out.len());
    let mut parent = 0usize;
    for &h in &heads_out {
        while parent + 1 < heads.len() && heads[parent + 1] <= h {
            parent += 1;
        }
        parent_run.push(parent as u32);
    }
    SplitRuns { sub_run_heads: heads_out, parent_run }
}

/// Rebuilds the move table over split runs; destinations are recomputed from
/// the LF map, never patched incrementally.
pub fn rebuild_table(rlbwt: &RunLengthBwt, splits: &SplitRuns, lf: &[u32]) -> MoveTable {
    let heads = &splits.sub_run_heads;
    let n = rlbwt.len();
    debug_assert!(heads.windows(2).all(|w| w[0] < w[1]));
    let rows: Vec<MoveRow> = (0..heads.len())
        .map(|k| {
            let head = heads[k] as usize;
            let end = heads.get(k + 1).map_or(n, |&h| h as usize);
            let dest_abs = lf[head];
            let dest_run = heads.partition_point(|&h| h <= dest_abs) - 1;
            MoveRow {
                length: (end - head) as u32,
                dest_run: dest_run as u32,
                dest_offset: dest_abs - heads[dest_run],
                symbol: rlbwt.char(splits.parent_run[k] as usize),
            }
        })
        .collect();
    let alphabet = Alphabet::from_bytes(&rlbwt.expand());
    MoveTable::new(rows, heads.clone(), n, alphabet)
}
