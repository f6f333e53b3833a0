//! On-disk index format.
//!
//! Little-endian throughout, fully sequential:
//!
//! ```text
//! magic "MVTB" | version u32 | backend u8 | split record | runs u64 |
//! n u64 | alphabet | backend payload
//! ```
//!
//! Saving is deterministic: the same index always produces the same bytes.
//! Loading validates structure before constructing anything, so magic,
//! version, truncation, and corruption failures surface as their own error
//! variants instead of panics. Semantic damage that still parses (say, a
//! destination pointing at the wrong run) is caught where it is cheap:
//! lengths must tile the text, destinations must stay in range, and
//! sampled head positions must match the lengths.

use std::fs::File;
use std::io::{Read, Write};
use std::path::Path;

use crate::bits::BitVec;
use crate::block::{Block, BlockedTable, CompressParams};
use crate::dac::{DacLevel, DacList};
use crate::dest::{BvList, DestEncoding, DestList, InterpList, SampledList};
use crate::error::{Error, Result};
use crate::index::{Backend, Index};
use crate::split::SplitConfig;
use crate::table::{LfTable, MoveRow, MoveTable};
use crate::text::Alphabet;

const MAGIC: &[u8; 4] = b"MVTB";
const VERSION: u32 = 1;

const BACKEND_UNCOMPRESSED: u8 = 0;
const BACKEND_BLOCKED: u8 = 1;

const SPLIT_NONE: u8 = 0;
const SPLIT_MAX_LENGTH: u8 = 1;
const SPLIT_BALANCED: u8 = 2;

const ENC_BITVECTOR: u8 = 0;
const ENC_DAC_SAMPLED: u8 = 1;
const ENC_INTERPOLATED: u8 = 2;

/// Sentinel for an absent boundary pointer.
const NO_RUN: u32 = u32::MAX;

/// Serializes `index` into `w`. Returns the number of bytes written.
pub fn save<W: Write>(index: &Index, mut w: W) -> Result<u64> {
    let bytes = to_bytes(index);
    w.write_all(&bytes)?;
    Ok(bytes.len() as u64)
}

/// Deserializes an index, consuming `r` to its end.
pub fn load<R: Read>(mut r: R) -> Result<Index> {
    let mut buf = Vec::new();
    r.read_to_end(&mut buf)?;
    from_bytes(&buf)
}

pub fn save_to_path(index: &Index, path: impl AsRef<Path>) -> Result<u64> {
    let path = path.as_ref();
    let file = File::create(path)
        .map_err(|source| Error::File { path: path.to_owned(), source })?;
    save(index, file).map_err(|e| with_path(e, path))
}

pub fn load_from_path(path: impl AsRef<Path>) -> Result<Index> {
    let path = path.as_ref();
    let file = File::open(path)
        .map_err(|source| Error::File { path: path.to_owned(), source })?;
    load(file).map_err(|e| with_path(e, path))
}

fn with_path(e: Error, path: &Path) -> Error {
    match e {
        Error::Io(source) => Error::File { path: path.to_owned(), source },
        other => other,
    }
}

fn to_bytes(index: &Index) -> Vec<u8> {
    let mut out = Vec::new();
    out.extend_from_slice(MAGIC);
    w_u32(&mut out, VERSION);
    out.push(match index.backend {
        Backend::Uncompressed(_) => BACKEND_UNCOMPRESSED,
        Backend::Blocked(_) => BACKEND_BLOCKED,
    });
    match index.split {
        SplitConfig::None => out.push(SPLIT_NONE),
        SplitConfig::MaxLength { factor } => {
            out.push(SPLIT_MAX_LENGTH);
            out.extend_from_slice(&factor.to_le_bytes());
        }
        SplitConfig::Balanced { d } => {
            out.push(SPLIT_BALANCED);
            w_u32(&mut out, d);
        }
    }
    w_u64(&mut out, index.original_runs as u64);
    w_u64(&mut out, index.backend.text_len() as u64);
    w_alphabet(&mut out, index.backend.alphabet());
    match &index.backend {
        Backend::Uncompressed(t) => w_uncompressed(&mut out, t),
        Backend::Blocked(t) => w_blocked(&mut out, t),
    }
    out
}

fn from_bytes(buf: &[u8]) -> Result<Index> {
    let mut r = Reader { buf, pos: 0 };
    if r.take(4, "magic")? != MAGIC {
        return Err(Error::BadMagic);
    }
    let version = r.u32("version")?;
    if version != VERSION {
        return Err(Error::UnsupportedVersion(version));
    }
    let backend_tag = r.u8("backend tag")?;
    let split = match r.u8("split tag")? {
        SPLIT_NONE => SplitConfig::None,
        SPLIT_MAX_LENGTH => {
            let factor = f64::from_le_bytes(r.take(8, "split factor")?.try_into().unwrap());
            if !factor.is_finite() || factor <= 0.0 {
                return Err(Error::Corrupt(format!("split factor {factor} not positive")));
            }
            SplitConfig::MaxLength { factor }
        }
        SPLIT_BALANCED => {
            let d = r.u32("split parameter")?;
            if d < 2 {
                return Err(Error::Corrupt(format!("balance parameter {d} below 2")));
            }
            SplitConfig::Balanced { d }
        }
        tag => return Err(Error::Corrupt(format!("unknown split tag {tag}"))),
    };
    let original_runs = r.usize("run count")?;
    let n = r.usize("text length")?;
    if n == 0 {
        return Err(Error::Corrupt("text length is zero".into()));
    }
    let alphabet = r_alphabet(&mut r, n)?;
    let backend = match backend_tag {
        BACKEND_UNCOMPRESSED => Backend::Uncompressed(r_uncompressed(&mut r, n, &alphabet)?),
        BACKEND_BLOCKED => Backend::Blocked(r_blocked(&mut r, n, &alphabet)?),
        tag => return Err(Error::Corrupt(format!("unknown backend tag {tag}"))),
    };
    if original_runs == 0 || original_runs > backend.num_rows() {
        return Err(Error::Corrupt(format!(
            "pre-split run count {original_runs} out of range (rows {})",
            backend.num_rows()
        )));
    }
    r.finish()?;
    Ok(Index { backend, split, original_runs })
}

// ---- primitive writers ----

fn w_u16(out: &mut Vec<u8>, v: u16) {
    out.extend_from_slice(&v.to_le_bytes());
}

fn w_u32(out: &mut Vec<u8>, v: u32) {
    out.extend_from_slice(&v.to_le_bytes());
}

fn w_u64(out: &mut Vec<u8>, v: u64) {
    out.extend_from_slice(&v.to_le_bytes());
}

fn w_alphabet(out: &mut Vec<u8>, a: &Alphabet) {
    w_u16(out, a.sigma() as u16);
    for &s in a.symbols() {
        out.push(s);
        w_u64(out, a.count(s) as u64);
    }
    match a.terminator() {
        Some(t) => {
            out.push(1);
            out.push(t);
        }
        None => out.push(0),
    }
}

fn w_bitvec(out: &mut Vec<u8>, bv: &BitVec) {
    w_u64(out, bv.len() as u64);
    for &w in bv.words() {
        w_u64(out, w);
    }
}

fn w_dac(out: &mut Vec<u8>, d: &DacList) {
    w_u64(out, d.len() as u64);
    out.push(d.levels().len() as u8);
    for level in d.levels() {
        w_u64(out, level.chunks().len() as u64);
        out.extend_from_slice(level.chunks());
        w_bitvec(out, level.cont());
    }
}

fn w_dest(out: &mut Vec<u8>, dest: &DestList) {
    match dest {
        DestList::Bitvector(l) => {
            w_u64(out, l.base);
            w_u64(out, l.len as u64);
            w_bitvec(out, &l.bits);
        }
        DestList::DacSampled(l) => {
            w_u64(out, l.base);
            w_u64(out, l.len as u64);
            w_dac(out, &l.samples);
            w_dac(out, &l.diffs);
        }
        DestList::Interpolated(l) => {
            w_u64(out, l.len as u64);
            w_dac(out, &l.samples);
            w_dac(out, &l.deltas);
            w_bitvec(out, &l.signs);
        }
    }
}

fn w_uncompressed(out: &mut Vec<u8>, t: &MoveTable) {
    w_u64(out, t.num_rows() as u64);
    for row in t.rows() {
        w_u32(out, row.length);
        w_u32(out, row.dest_run);
        w_u32(out, row.dest_offset);
        out.push(row.symbol);
    }
    for &h in t.run_heads() {
        w_u32(out, h);
    }
}

fn w_params(out: &mut Vec<u8>, p: &CompressParams) {
    w_u64(out, p.block_size as u64);
    match p.encoding {
        DestEncoding::Bitvector => out.push(ENC_BITVECTOR),
        DestEncoding::DacSampled { rate } => {
            out.push(ENC_DAC_SAMPLED);
            w_u64(out, rate as u64);
        }
        DestEncoding::Interpolated { rate } => {
            out.push(ENC_INTERPOLATED);
            w_u64(out, rate as u64);
        }
    }
    w_u64(out, p.head_sample_rate as u64);
}

fn w_blocked(out: &mut Vec<u8>, t: &BlockedTable) {
    w_params(out, &t.params);
    w_u64(out, t.num_rows as u64);
    w_u64(out, t.sampled_heads.len() as u64);
    for &h in &t.sampled_heads {
        w_u64(out, h);
    }
    for &c in &t.sym_row_counts {
        w_u32(out, c);
    }
    w_u64(out, t.blocks.len() as u64);
    for block in &t.blocks {
        for bv in &block.char_bvs {
            w_bitvec(out, bv);
        }
        for &c in &block.cum_occ {
            w_u32(out, c);
        }
        for &p in &block.prev_run {
            w_u32(out, p.unwrap_or(NO_RUN));
        }
        for &p in &block.next_run {
            w_u32(out, p.unwrap_or(NO_RUN));
        }
        w_dac(out, &block.lengths);
        w_dac(out, &block.offsets);
        for dest in &block.dests {
            w_dest(out, dest);
        }
    }
}

// ---- reader ----

struct Reader<'a> {
    buf: &'a [u8],
    pos: usize,
}

impl<'a> Reader<'a> {
    fn take(&mut self, n: usize, what: &'static str) -> Result<&'a [u8]> {
        if self.buf.len() - self.pos < n {
            return Err(Error::Truncated(what));
        }
        let slice = &self.buf[self.pos..self.pos + n];
        self.pos += n;
        Ok(slice)
    }

    fn u8(&mut self, what: &'static str) -> Result<u8> {
        Ok(self.take(1, what)?[0])
    }

    fn u16(&mut self, what: &'static str) -> Result<u16> {
        Ok(u16::from_le_bytes(self.take(2, what)?.try_into().unwrap()))
    }

    fn u32(&mut self, what: &'static str) -> Result<u32> {
        Ok(u32::from_le_bytes(self.take(4, what)?.try_into().unwrap()))
    }

    fn u64(&mut self, what: &'static str) -> Result<u64> {
        Ok(u64::from_le_bytes(self.take(8, what)?.try_into().unwrap()))
    }

    fn usize(&mut self, what: &'static str) -> Result<usize> {
        self.u64(what)?
            .try_into()
            .map_err(|_| Error::Corrupt(format!("{what} does not fit in memory")))
    }

    fn finish(self) -> Result<()> {
        if self.pos != self.buf.len() {
            return Err(Error::Corrupt(format!(
                "{} trailing bytes after the index",
                self.buf.len() - self.pos
            )));
        }
        Ok(())
    }
}

fn corrupt(msg: impl Into<String>) -> Error {
    Error::Corrupt(msg.into())
}

fn r_alphabet(r: &mut Reader, n: usize) -> Result<Alphabet> {
    let sigma = r.u16("alphabet size")? as usize;
    if sigma == 0 || sigma > 256 {
        return Err(corrupt(format!("alphabet size {sigma} out of range")));
    }
    let mut pairs = Vec::with_capacity(sigma);
    let mut total = 0u64;
    for _ in 0..sigma {
        let sym = r.u8("alphabet symbol")?;
        let cnt = r.u64("symbol count")?;
        if cnt == 0 {
            return Err(corrupt(format!("symbol {sym} listed with count 0")));
        }
        if let Some(&(prev, _)) = pairs.last() {
            if prev >= sym {
                return Err(corrupt("alphabet symbols not strictly increasing"));
            }
        }
        total = total
            .checked_add(cnt)
            .ok_or_else(|| corrupt("symbol counts overflow"))?;
        pairs.push((sym, cnt));
    }
    if total != n as u64 {
        return Err(corrupt(format!("symbol counts sum to {total}, expected {n}")));
    }
    let terminator = match r.u8("terminator flag")? {
        0 => None,
        1 => {
            let t = r.u8("terminator byte")?;
            if !pairs.iter().any(|&(s, _)| s == t) {
                return Err(corrupt(format!("terminator {t:#04x} not in the alphabet")));
            }
            Some(t)
        }
        f => return Err(corrupt(format!("terminator flag {f} not 0 or 1"))),
    };
    Ok(Alphabet::from_parts(&pairs, terminator))
}

fn r_bitvec(r: &mut Reader, what: &'static str) -> Result<BitVec> {
    let len = r.usize(what)?;
    if len >= u32::MAX as usize {
        return Err(corrupt(format!("{what}: bitvector length {len} too large")));
    }
    let byte_len = len
        .div_ceil(64)
        .checked_mul(8)
        .ok_or_else(|| corrupt(format!("{what}: bitvector length overflows")))?;
    let words: Vec<u64> = r
        .take(byte_len, what)?
        .chunks_exact(8)
        .map(|c| u64::from_le_bytes(c.try_into().unwrap()))
        .collect();
    if !len.is_multiple_of(64) {
        let tail = words.last().copied().unwrap_or(0);
        if tail >> (len % 64) != 0 {
            return Err(corrupt(format!("{what}: bits set past the declared length")));
        }
    }
    Ok(BitVec::from_words(words, len))
}

fn r_dac(r: &mut Reader, what: &'static str) -> Result<DacList> {
    let len = r.usize(what)?;
    let num_levels = r.u8(what)? as usize;
    if (num_levels == 0) != (len == 0) {
        return Err(corrupt(format!("{what}: level count does not match length")));
    }
    let mut levels = Vec::with_capacity(num_levels);
    let mut expected = len;
    for _ in 0..num_levels {
        let count = r.usize(what)?;
        if count != expected {
            return Err(corrupt(format!(
                "{what}: level holds {count} chunks, expected {expected}"
            )));
        }
        let chunks = r.take(count, what)?.to_vec();
        let cont = r_bitvec(r, what)?;
        if cont.len() != count {
            return Err(corrupt(format!("{what}: continuation bits do not match chunks")));
        }
        expected = cont.count_ones();
        levels.push(DacLevel::from_parts(chunks, cont));
    }
    if expected != 0 {
        return Err(corrupt(format!("{what}: {expected} values continue past the last level")));
    }
    Ok(DacList::from_levels(levels, len))
}

fn r_dest(r: &mut Reader, encoding: DestEncoding, what: &'static str) -> Result<DestList> {
    match encoding {
        DestEncoding::Bitvector => {
            let base = r.u64(what)?;
            let len = r.usize(what)?;
            let bits = r_bitvec(r, what)?;
            if bits.count_ones() != len {
                return Err(corrupt(format!("{what}: {} set bits for {len} values", bits.count_ones())));
            }
            Ok(DestList::Bitvector(BvList { base, bits, len }))
        }
        DestEncoding::DacSampled { rate } => {
            let base = r.u64(what)?;
            let len = r.usize(what)?;
            let samples = r_dac(r, what)?;
            let diffs = r_dac(r, what)?;
            if samples.len() != len.div_ceil(rate) || diffs.len() != len {
                return Err(corrupt(format!("{what}: sampled list sizes do not match")));
            }
            Ok(DestList::DacSampled(SampledList { rate, base, samples, diffs, len }))
        }
        DestEncoding::Interpolated { rate } => {
            let len = r.usize(what)?;
            let samples = r_dac(r, what)?;
            let deltas = r_dac(r, what)?;
            let signs = r_bitvec(r, what)?;
            let num_samples = len.div_ceil(rate);
            if samples.len() != num_samples
                || deltas.len() != len - num_samples.min(len)
                || signs.len() != deltas.len()
            {
                return Err(corrupt(format!("{what}: interpolated list sizes do not match")));
            }
            Ok(DestList::Interpolated(InterpList { rate, samples, deltas, signs, len }))
        }
    }
}

fn r_uncompressed(r: &mut Reader, n: usize, alphabet: &Alphabet) -> Result<MoveTable> {
    let num_rows = r.usize("row count")?;
    if num_rows == 0 || num_rows > n {
        return Err(corrupt(format!("row count {num_rows} out of range (n = {n})")));
    }
    let mut rows = Vec::with_capacity(num_rows);
    for _ in 0..num_rows {
        let length = r.u32("rows")?;
        let dest_run = r.u32("rows")?;
        let dest_offset = r.u32("rows")?;
        let symbol = r.u8("rows")?;
        if alphabet.index_of(symbol).is_none() {
            return Err(corrupt(format!("row symbol {symbol:#04x} not in the alphabet")));
        }
        if length == 0 {
            return Err(corrupt("zero-length row"));
        }
        if dest_run as usize >= num_rows {
            return Err(corrupt(format!("destination run {dest_run} out of range")));
        }
        rows.push(MoveRow { length, dest_run, dest_offset, symbol });
    }
    let mut heads = Vec::with_capacity(num_rows);
    for _ in 0..num_rows {
        heads.push(r.u32("run heads")?);
    }
    let mut expected = 0u64;
    for (k, row) in rows.iter().enumerate() {
        if heads[k] as u64 != expected {
            return Err(corrupt(format!("run head {k} does not match the row lengths")));
        }
        expected += row.length as u64;
        if (row.dest_offset) >= rows[row.dest_run as usize].length {
            return Err(corrupt(format!("row {k}: destination offset escapes its run")));
        }
    }
    if expected != n as u64 {
        return Err(corrupt(format!("row lengths cover {expected} positions, expected {n}")));
    }
    Ok(MoveTable::new(rows, heads, n, alphabet.clone()))
}

fn r_params(r: &mut Reader) -> Result<CompressParams> {
    let block_size = r.usize("block size")?;
    if block_size == 0 {
        return Err(corrupt("block size is zero"));
    }
    let encoding = match r.u8("encoding tag")? {
        ENC_BITVECTOR => DestEncoding::Bitvector,
        ENC_DAC_SAMPLED => {
            let rate = r.usize("encoding rate")?;
            if rate == 0 {
                return Err(corrupt("sampling rate is zero"));
            }
            DestEncoding::DacSampled { rate }
        }
        ENC_INTERPOLATED => {
            let rate = r.usize("encoding rate")?;
            if rate < 2 {
                return Err(corrupt(format!("interpolation rate {rate} below 2")));
            }
            DestEncoding::Interpolated { rate }
        }
        tag => return Err(corrupt(format!("unknown encoding tag {tag}"))),
    };
    let head_sample_rate = r.usize("head sample rate")?;
    if head_sample_rate == 0 {
        return Err(corrupt("head sample rate is zero"));
    }
    Ok(CompressParams { block_size, encoding, head_sample_rate })
}

fn r_blocked(r: &mut Reader, n: usize, alphabet: &Alphabet) -> Result<BlockedTable> {
    let params = r_params(r)?;
    let sigma = alphabet.sigma();
    let num_rows = r.usize("row count")?;
    if num_rows == 0 || num_rows > n {
        return Err(corrupt(format!("row count {num_rows} out of range (n = {n})")));
    }
    let num_samples = r.usize("head sample count")?;
    if num_samples != num_rows.div_ceil(params.head_sample_rate) {
        return Err(corrupt(format!("{num_samples} head samples for {num_rows} rows")));
    }
    let mut sampled_heads = Vec::with_capacity(num_samples);
    for _ in 0..num_samples {
        sampled_heads.push(r.u64("head samples")?);
    }
    let mut sym_row_counts = Vec::with_capacity(sigma);
    for _ in 0..sigma {
        sym_row_counts.push(r.u32("symbol row counts")?);
    }
    if sym_row_counts.iter().map(|&c| c as u64).sum::<u64>() != num_rows as u64 {
        return Err(corrupt("symbol row counts do not sum to the row count"));
    }
    let num_blocks = r.usize("block count")?;
    if num_blocks != num_rows.div_ceil(params.block_size) {
        return Err(corrupt(format!("{num_blocks} blocks for {num_rows} rows")));
    }

    let mut blocks = Vec::with_capacity(num_blocks);
    let mut running = vec![0u32; sigma];
    for b in 0..num_blocks {
        let rows_here = params.block_size.min(num_rows - b * params.block_size);
        let mut char_bvs = Vec::with_capacity(sigma);
        for _ in 0..sigma {
            let bv = r_bitvec(r, "symbol bitvector")?;
            if bv.len() != rows_here {
                return Err(corrupt(format!(
                    "block {b}: symbol bitvector holds {} bits, expected {rows_here}",
                    bv.len()
                )));
            }
            char_bvs.push(bv);
        }
        for i in 0..rows_here {
            if char_bvs.iter().filter(|bv| bv.get(i)).count() != 1 {
                return Err(corrupt(format!("block {b}: row {i} has no unique symbol")));
            }
        }
        let mut cum_occ = Vec::with_capacity(sigma);
        for _ in 0..sigma {
            cum_occ.push(r.u32("cumulative counts")?);
        }
        if cum_occ != running {
            return Err(corrupt(format!("block {b}: cumulative counts do not match")));
        }
        for (dense, bv) in char_bvs.iter().enumerate() {
            running[dense] += bv.count_ones() as u32;
        }
        let mut prev_run = Vec::with_capacity(sigma);
        let mut next_run = Vec::with_capacity(sigma);
        for list in [&mut prev_run, &mut next_run] {
            for _ in 0..sigma {
                let v = r.u32("boundary pointers")?;
                if v != NO_RUN && v as usize >= num_rows {
                    return Err(corrupt(format!("block {b}: boundary pointer {v} out of range")));
                }
                list.push((v != NO_RUN).then_some(v));
            }
        }
        let lengths = r_dac(r, "row lengths")?;
        let offsets = r_dac(r, "destination offsets")?;
        if lengths.len() != rows_here || offsets.len() != rows_here {
            return Err(corrupt(format!("block {b}: column lengths do not match")));
        }
        let mut dests = Vec::with_capacity(sigma);
        for bv in &char_bvs {
            let dest = r_dest(r, params.encoding, "destination lists")?;
            if dest.len() != bv.count_ones() {
                return Err(corrupt(format!(
                    "block {b}: destination list does not match its symbol count"
                )));
            }
            dests.push(dest);
        }
        blocks.push(Block { char_bvs, cum_occ, prev_run, next_run, lengths, offsets, dests });
    }
    if running != sym_row_counts {
        return Err(corrupt("per-symbol totals do not match the blocks"));
    }

    let table = BlockedTable {
        n,
        num_rows,
        alphabet: alphabet.clone(),
        params,
        sampled_heads,
        sym_row_counts,
        blocks,
    };

    // one pass over the rows: lengths tile [0, n), samples sit on run
    // heads, destinations stay in range
    let mut head = 0u64;
    for k in 0..num_rows {
        if k % table.params.head_sample_rate == 0
            && table.sampled_heads[k / table.params.head_sample_rate] != head
        {
            return Err(corrupt(format!("head sample at row {k} does not match the lengths")));
        }
        let row = table.row(k);
        if row.length == 0 {
            return Err(corrupt(format!("row {k} has zero length")));
        }
        if row.dest_run as usize >= num_rows {
            return Err(corrupt(format!("row {k}: destination run out of range")));
        }
        if row.dest_offset as usize >= table.row_length(row.dest_run as usize) {
            return Err(corrupt(format!("row {k}: destination offset escapes its run")));
        }
        head += row.length as u64;
    }
    if head != n as u64 {
        return Err(corrupt(format!("row lengths cover {head} positions, expected {n}")));
    }
    Ok(table)
}
