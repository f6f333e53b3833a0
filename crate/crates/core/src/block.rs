//! Block-compressed table backend.
//!
//! Rows are cut into fixed-size blocks. Within a block, row symbols become
//! per-symbol bitvectors, lengths and destination offsets become DAC lists,
//! and destination runs become one encoded non-decreasing list per symbol
//! (the per-symbol destinations of a BWT are monotone, so slicing them by
//! block keeps them monotone). Per-symbol prefix counts and boundary
//! pointers let rank, select, and neighbor lookups cross blocks without
//! scanning them. Run head positions are sampled; recovering an absolute
//! position decodes at most `head_sample_rate - 1` lengths.

use crate::bits::BitVec;
use crate::dac::DacList;
use crate::dest::{DestEncoding, DestList};
use crate::error::{Error, Result};
use crate::table::{LfTable, MoveRow, MoveTable, Position};
use crate::text::Alphabet;

/// Knobs for [`compress`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CompressParams {
    /// Rows per block.
    pub block_size: usize,
    /// Destination-run list encoding.
    pub encoding: DestEncoding,
    /// Every `head_sample_rate`-th run head is stored verbatim.
    pub head_sample_rate: usize,
}

impl Default for CompressParams {
    fn default() -> Self {
        CompressParams {
            block_size: 1 << 20,
            encoding: DestEncoding::Bitvector,
            head_sample_rate: 16,
        }
    }
}

/// One block of compressed rows.
#[derive(Debug, Clone, PartialEq)]
pub(crate) struct Block {
    /// Per dense symbol: bit i set iff row (start + i) has that symbol.
    pub(crate) char_bvs: Vec<BitVec>,
    /// Per dense symbol: rows with that symbol in earlier blocks.
    pub(crate) cum_occ: Vec<u32>,
    /// Per dense symbol: last row with that symbol before this block.
    pub(crate) prev_run: Vec<Option<u32>>,
    /// Per dense symbol: first row with that symbol after this block.
    pub(crate) next_run: Vec<Option<u32>>,
    pub(crate) lengths: DacList,
    pub(crate) offsets: DacList,
    /// Per dense symbol: destination runs of this block's rows with that
    /// symbol, in row order.
    pub(crate) dests: Vec<DestList>,
}

/// The compressed table. Interchangeable with [`MoveTable`] through
/// [`LfTable`]; every query decodes only the rows it touches.
#[derive(Debug, Clone, PartialEq)]
pub struct BlockedTable {
    pub(crate) n: usize,
    pub(crate) num_rows: usize,
    pub(crate) alphabet: Alphabet,
    pub(crate) params: CompressParams,
    /// head(k) for every k divisible by `head_sample_rate`.
    pub(crate) sampled_heads: Vec<u64>,
    /// Total rows per dense symbol.
    pub(crate) sym_row_counts: Vec<u32>,
    pub(crate) blocks: Vec<Block>,
}

impl BlockedTable {
    pub fn params(&self) -> &CompressParams {
        &self.params
    }

    fn block_of(&self, k: usize) -> (usize, usize) {
        (k / self.params.block_size, k % self.params.block_size)
    }

    /// Dense symbol index of row `i` within `block`.
    fn dense_symbol(&self, block: &Block, i: usize) -> usize {
        block
            .char_bvs
            .iter()
            .position(|bv| bv.get(i))
            .expect("row belongs to no symbol")
    }
}

impl LfTable for BlockedTable {
    fn text_len(&self) -> usize {
        self.n
    }

    fn num_rows(&self) -> usize {
        self.num_rows
    }

    fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    fn row(&self, k: usize) -> MoveRow {
        assert!(k < self.num_rows, "row {k} out of range ({} rows)", self.num_rows);
        let (b, i) = self.block_of(k);
        let block = &self.blocks[b];
        let dense = self.dense_symbol(block, i);
        let nth = block.char_bvs[dense].rank1(i);
        MoveRow {
            length: block.lengths.get(i) as u32,
            dest_run: block.dests[dense].get(nth) as u32,
            dest_offset: block.offsets.get(i) as u32,
            symbol: self.alphabet.symbols()[dense],
        }
    }

    fn row_length(&self, k: usize) -> usize {
        let (b, i) = self.block_of(k);
        self.blocks[b].lengths.get(i) as usize
    }

    fn row_symbol(&self, k: usize) -> u8 {
        let (b, i) = self.block_of(k);
        let dense = self.dense_symbol(&self.blocks[b], i);
        self.alphabet.symbols()[dense]
    }

    fn head(&self, k: usize) -> usize {
        let rate = self.params.head_sample_rate;
        let mut pos = self.sampled_heads[k / rate] as usize;
        for j in (k / rate) * rate..k {
            pos += self.row_length(j);
        }
        pos
    }

    fn position_to_pair(&self, i: usize) -> Position {
        assert!(i < self.n, "position {i} out of range (n = {})", self.n);
        let rate = self.params.head_sample_rate;
        let s = self.sampled_heads.partition_point(|&h| h as usize <= i) - 1;
        let mut run = s * rate;
        let mut head = self.sampled_heads[s] as usize;
        loop {
            let len = self.row_length(run);
            if i < head + len {
                return Position::new(run, i - head);
            }
            head += len;
            run += 1;
        }
    }

    fn run_rank(&self, k: usize, c: u8) -> usize {
        debug_assert!(k <= self.num_rows);
        let Some(dense) = self.alphabet.index_of(c) else { return 0 };
        if k == self.num_rows {
            return self.sym_row_counts[dense] as usize;
        }
        let (b, i) = self.block_of(k);
        let block = &self.blocks[b];
        block.cum_occ[dense] as usize + block.char_bvs[dense].rank1(i)
    }

    fn run_select(&self, j: usize, c: u8) -> Option<usize> {
        if j == 0 {
            return None;
        }
        let dense = self.alphabet.index_of(c)?;
        if j > self.sym_row_counts[dense] as usize {
            return None;
        }
        let b = self
            .blocks
            .partition_point(|blk| (blk.cum_occ[dense] as usize) < j)
            - 1;
        let block = &self.blocks[b];
        let within = j - block.cum_occ[dense] as usize - 1;
        let pos = block.char_bvs[dense]
            .select1(within)
            .expect("select drifted out of its block");
        Some(b * self.params.block_size + pos)
    }

    fn next_run_of(&self, k: usize, c: u8) -> Option<usize> {
        if k >= self.num_rows {
            return None;
        }
        let dense = self.alphabet.index_of(c)?;
        let (b, i) = self.block_of(k);
        let block = &self.blocks[b];
        let bv = &block.char_bvs[dense];
        match bv.select1(bv.rank1(i)) {
            Some(pos) => Some(b * self.params.block_size + pos),
            None => block.next_run[dense].map(|r| r as usize),
        }
    }

    fn prev_run_of(&self, k: usize, c: u8) -> Option<usize> {
        if k == 0 {
            return None;
        }
        let k = k.min(self.num_rows);
        let dense = self.alphabet.index_of(c)?;
        let (b, i) = ((k - 1) / self.params.block_size, (k - 1) % self.params.block_size);
        let block = &self.blocks[b];
        let bv = &block.char_bvs[dense];
        match bv.rank1(i + 1) {
            0 => block.prev_run[dense].map(|r| r as usize),
            r => Some(b * self.params.block_size + bv.select1(r - 1).unwrap()),
        }
    }
}

/// Compresses an uncompressed table. Fails when the text uses more than 8
/// distinct symbols beside the terminator.
pub fn compress(table: &MoveTable, params: CompressParams) -> Result<BlockedTable> {
    assert!(params.block_size >= 1, "block size must be positive");
    assert!(params.head_sample_rate >= 1, "head sample rate must be positive");
    params.encoding.validate();
    let alphabet = table.alphabet().clone();
    if alphabet.data_sigma() > 8 {
        return Err(Error::AlphabetTooLarge { sigma: alphabet.data_sigma() });
    }
    let sigma = alphabet.sigma();
    let rows = table.rows();

    let mut cum = vec![0u32; sigma];
    let mut blocks = Vec::with_capacity(rows.len().div_ceil(params.block_size));
    for chunk in rows.chunks(params.block_size) {
        let mut bools = vec![vec![false; chunk.len()]; sigma];
        let mut dest_lists: Vec<Vec<u64>> = vec![Vec::new(); sigma];
        for (i, row) in chunk.iter().enumerate() {
            let dense = alphabet.index_of(row.symbol).expect("symbol outside alphabet");
            bools[dense][i] = true;
            dest_lists[dense].push(row.dest_run as u64);
        }
        let cum_occ = cum.clone();
        for (dense, list) in dest_lists.iter().enumerate() {
            cum[dense] += list.len() as u32;
        }
        blocks.push(Block {
            char_bvs: bools.iter().map(|b| BitVec::from_bools(b)).collect(),
            cum_occ,
            prev_run: vec![None; sigma],
            next_run: vec![None; sigma],
            lengths: DacList::new(
                &chunk.iter().map(|r| r.length as u64).collect::<Vec<_>>(),
            ),
            offsets: DacList::new(
                &chunk.iter().map(|r| r.dest_offset as u64).collect::<Vec<_>>(),
            ),
            dests: dest_lists
                .iter()
                .map(|l| DestList::encode(l, params.encoding))
                .collect(),
        });
    }

    // boundary pointers: forward pass for prev, backward pass for next
    let mut last_seen: Vec<Option<u32>> = vec![None; sigma];
    for (b, block) in blocks.iter_mut().enumerate() {
        block.prev_run.clone_from_slice(&last_seen);
        for (dense, bv) in block.char_bvs.iter().enumerate() {
            if let Some(pos) = bv.count_ones().checked_sub(1).and_then(|k| bv.select1(k)) {
                last_seen[dense] = Some((b * params.block_size + pos) as u32);
            }
        }
    }
    let mut first_seen: Vec<Option<u32>> = vec![None; sigma];
    for (b, block) in blocks.iter_mut().enumerate().rev() {
        block.next_run.clone_from_slice(&first_seen);
        for (dense, bv) in block.char_bvs.iter().enumerate() {
            if let Some(pos) = bv.select1(0) {
                first_seen[dense] = Some((b * params.block_size + pos) as u32);
            }
        }
    }

    let sampled_heads = table
        .run_heads()
        .iter()
        .step_by(params.head_sample_rate)
        .map(|&h| h as u64)
        .collect();

    Ok(BlockedTable {
        n: table.text_len(),
        num_rows: rows.len(),
        alphabet,
        params,
        sampled_heads,
        sym_row_counts: cum,
        blocks,
    })
}
