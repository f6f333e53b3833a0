//! Command-line front end for the move-table index.
//!
//! `build` writes an index file, `count`/`invert`/`stats` query one, and
//! `bench` compares the backends on a repetitive workload. Pattern files
//! are newline-delimited raw bytes; pass `-` to read a text or pattern
//! file from standard input.

use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::time::Instant;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use movebwt::rlbwt::lf_all;
use movebwt::sa::{bwt_from_sa, suffix_array};
use movebwt::table::PredecessorLf;
use movebwt::{
    corpus, load_from_path, save, Alphabet, BackendConfig, BuildConfig, CompressParams,
    DestEncoding, Index, LfTable, Position, RunLengthBwt, SplitConfig, Text,
};

#[derive(Parser)]
#[command(
    name = "movebwt",
    version,
    about = "Compressed full-text index with table-lookup LF mapping"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build an index file from a text or FASTA file
    Build(BuildArgs),
    /// Count pattern occurrences, one decimal count per pattern line
    Count(QueryArgs),
    /// Reconstruct the indexed text
    Invert(InvertArgs),
    /// Print the fast-forward scan histogram for a pattern workload
    Stats(QueryArgs),
    /// Compare backends on a repetitive workload, CSV on stdout
    Bench(BenchArgs),
}

#[derive(Args)]
struct BuildArgs {
    /// Text file to index (- for standard input)
    #[arg(long)]
    input: PathBuf,
    /// Parse the input as FASTA: drop headers, concatenate records
    #[arg(long)]
    fasta: bool,
    /// Output index file
    #[arg(long)]
    index: PathBuf,
    /// Split runs longer than ceil(F * n / r)
    #[arg(long, value_name = "F", conflicts_with = "balance")]
    split_factor: Option<f64>,
    /// Balance the table so every LF step scans fewer than 2D rows
    #[arg(long, value_name = "D", value_parser = clap::value_parser!(u32).range(2..))]
    balance: Option<u32>,
    /// Table representation stored in the index file
    #[arg(long, value_enum, default_value = "blocked")]
    backend: BackendArg,
    /// Destination column encoding for the blocked backend
    #[arg(long, value_enum, default_value = "bv")]
    dest_encoding: EncodingArg,
    /// Rows per block in the blocked backend
    #[arg(long, default_value_t = 1 << 20, value_parser = clap::value_parser!(u64).range(1..))]
    block_size: u64,
    /// Sample rate for --dest-encoding dac
    #[arg(long, default_value_t = 5, value_parser = clap::value_parser!(u64).range(1..))]
    dac_rate: u64,
    /// Sample rate for --dest-encoding interp
    #[arg(long, default_value_t = 16, value_parser = clap::value_parser!(u64).range(2..))]
    interp_rate: u64,
}

#[derive(Args)]
struct QueryArgs {
    /// Index file written by `movebwt build`
    #[arg(long)]
    index: PathBuf,
    /// Newline-delimited pattern file (- for standard input)
    #[arg(long)]
    patterns: PathBuf,
}

#[derive(Args)]
struct InvertArgs {
    /// Index file written by `movebwt build`
    #[arg(long)]
    index: PathBuf,
    /// Destination file (standard output if omitted)
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct BenchArgs {
    /// Base text to replicate (- for standard input); random if omitted
    #[arg(long)]
    input: Option<PathBuf>,
    /// Parse the base text as FASTA
    #[arg(long)]
    fasta: bool,
    /// Length of the generated random base text
    #[arg(long, default_value_t = 262_144, value_parser = clap::value_parser!(u64).range(1..))]
    base_len: u64,
    /// Alphabet size of the generated base text
    #[arg(long, default_value_t = 4, value_parser = clap::value_parser!(u8).range(1..=8))]
    sigma: u8,
    /// Copies of the base text in the workload
    #[arg(long, default_value_t = 16, value_parser = clap::value_parser!(u64).range(1..))]
    copies: u64,
    /// Per-symbol mutation probability applied to each copy
    #[arg(long, default_value_t = 0.001)]
    mutation_rate: f64,
    /// Seed for workload generation
    #[arg(long, default_value_t = 42)]
    seed: u64,
    /// Number of patterns sampled from the workload text
    #[arg(long, default_value_t = 1000)]
    pattern_count: u64,
    /// Length of each sampled pattern
    #[arg(long, default_value_t = 32, value_parser = clap::value_parser!(u64).range(1..))]
    pattern_len: u64,
}

#[derive(Clone, Copy, ValueEnum)]
enum BackendArg {
    Blocked,
    Uncompressed,
}

#[derive(Clone, Copy, ValueEnum)]
enum EncodingArg {
    Bv,
    Dac,
    Interp,
}

fn main() {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Build(args) => cmd_build(args),
        Command::Count(args) => cmd_count(args),
        Command::Invert(args) => cmd_invert(args),
        Command::Stats(args) => cmd_stats(args),
        Command::Bench(args) => cmd_bench(args),
    };
    if let Err(err) = result {
        eprintln!("error: {err:#}");
        std::process::exit(1);
    }
}

fn cmd_build(args: BuildArgs) -> Result<()> {
    let text = read_text(&args.input, args.fasta)?;
    let config = BuildConfig { split: split_config(&args)?, backend: backend_config(&args) };
    let index = Index::build(&text, &config)?;
    let mut bytes = Vec::new();
    save(&index, &mut bytes)?;
    fs::write(&args.index, &bytes)
        .with_context(|| format!("writing {}", args.index.display()))?;
    let n = index.text_len();
    let r = index.original_runs();
    println!("n = {n}");
    println!("r = {r}");
    println!("n/r = {:.3}", n as f64 / r as f64);
    println!("rows = {}", index.num_rows());
    println!("bytes = {}", bytes.len());
    Ok(())
}

fn cmd_count(args: QueryArgs) -> Result<()> {
    let index = load_index(&args.index)?;
    let patterns = read_patterns(&args.patterns)?;
    let stdout = io::stdout();
    let mut out = io::BufWriter::new(stdout.lock());
    for pattern in &patterns {
        writeln!(out, "{}", index.count(pattern))?;
    }
    out.flush()?;
    Ok(())
}

fn cmd_invert(args: InvertArgs) -> Result<()> {
    let index = load_index(&args.index)?;
    let mut bytes = index.invert()?;
    bytes.pop(); // the terminator is an indexing artifact, not text
    match &args.output {
        Some(path) => fs::write(path, &bytes)
            .with_context(|| format!("writing {}", path.display()))?,
        None => io::stdout().write_all(&bytes)?,
    }
    Ok(())
}

fn cmd_stats(args: QueryArgs) -> Result<()> {
    let index = load_index(&args.index)?;
    let patterns = read_patterns(&args.patterns)?;
    let hist = index.profile(&patterns);
    let total = hist.total();
    println!("scan_length,frequency,percent");
    for (scans, freq) in hist.iter() {
        println!("{scans},{freq},{:.3}", 100.0 * freq as f64 / total as f64);
    }
    Ok(())
}

fn cmd_bench(args: BenchArgs) -> Result<()> {
    if !(0.0..=1.0).contains(&args.mutation_rate) {
        bail!("--mutation-rate must lie in [0, 1]");
    }
    let base = match &args.input {
        Some(path) => read_text(path, args.fasta)?.body().to_vec(),
        None => corpus::random_bytes(args.base_len as usize, args.sigma, args.seed),
    };
    if base.is_empty() {
        bail!("benchmark base text is empty");
    }
    let body = corpus::mutate_copies(&base, args.copies as usize, args.mutation_rate, !args.seed);
    let text = Text::from_bytes(body)?;
    let sa = suffix_array(&text);
    let bwt = bwt_from_sa(&text, &sa);
    drop(sa);

    let body = text.body();
    let len = (args.pattern_len as usize).min(body.len());
    let mut rng = StdRng::seed_from_u64(args.seed.rotate_left(17));
    let patterns: Vec<Vec<u8>> = (0..args.pattern_count)
        .map(|_| {
            let start = rng.gen_range(0..=body.len() - len);
            body[start..start + len].to_vec()
        })
        .collect();
    let steps = text.len().min(2_000_000);

    println!("backend,build_ms,index_bytes,lf_ns,count_ns");
    {
        let t = Instant::now();
        let rlbwt = RunLengthBwt::from_bwt(&bwt);
        let lf = lf_all(&bwt, &Alphabet::from_bytes(&bwt));
        let baseline = PredecessorLf::new(&rlbwt, &lf);
        let build_ms = t.elapsed().as_secs_f64() * 1e3;
        let t = Instant::now();
        let mut i = 0usize;
        for _ in 0..steps {
            i = baseline.lf(i);
        }
        std::hint::black_box(i);
        let lf_ns = t.elapsed().as_nanos() as f64 / steps as f64;
        println!("baseline-binsearch,{build_ms:.1},{},{lf_ns:.1},", baseline.size_bytes());
    }
    for (label, backend) in backend_matrix() {
        let config = BuildConfig { split: SplitConfig::None, backend };
        let t = Instant::now();
        let index = Index::from_bwt(&bwt, &config)?;
        let build_ms = t.elapsed().as_secs_f64() * 1e3;
        let mut bytes = Vec::new();
        save(&index, &mut bytes)?;
        let t = Instant::now();
        let mut p = Position::new(0, 0);
        for _ in 0..steps {
            p = index.backend().lf_step(p);
        }
        std::hint::black_box(p);
        let lf_ns = t.elapsed().as_nanos() as f64 / steps as f64;
        let t = Instant::now();
        let mut occ = 0usize;
        for pattern in &patterns {
            occ += index.count(pattern);
        }
        std::hint::black_box(occ);
        let count_ns = t.elapsed().as_nanos() as f64 / patterns.len().max(1) as f64;
        println!("{label},{build_ms:.1},{},{lf_ns:.1},{count_ns:.1}", bytes.len());
    }
    Ok(())
}

fn backend_matrix() -> [(&'static str, BackendConfig); 4] {
    let blocked = |encoding| {
        BackendConfig::Blocked(CompressParams { encoding, ..CompressParams::default() })
    };
    [
        ("moves", BackendConfig::Uncompressed),
        ("blocked-bv", blocked(DestEncoding::Bitvector)),
        ("blocked-dac", blocked(DestEncoding::DacSampled { rate: 5 })),
        ("blocked-interp", blocked(DestEncoding::Interpolated { rate: 16 })),
    ]
}

fn split_config(args: &BuildArgs) -> Result<SplitConfig> {
    Ok(match (args.split_factor, args.balance) {
        (Some(factor), None) => {
            if !factor.is_finite() || factor <= 0.0 {
                bail!("--split-factor must be a positive number");
            }
            SplitConfig::MaxLength { factor }
        }
        (None, Some(d)) => SplitConfig::Balanced { d },
        (None, None) => SplitConfig::None,
        (Some(_), Some(_)) => unreachable!("the flags are declared mutually exclusive"),
    })
}

fn backend_config(args: &BuildArgs) -> BackendConfig {
    match args.backend {
        BackendArg::Uncompressed => BackendConfig::Uncompressed,
        BackendArg::Blocked => BackendConfig::Blocked(CompressParams {
            block_size: args.block_size as usize,
            encoding: match args.dest_encoding {
                EncodingArg::Bv => DestEncoding::Bitvector,
                EncodingArg::Dac => DestEncoding::DacSampled { rate: args.dac_rate as usize },
                EncodingArg::Interp => {
                    DestEncoding::Interpolated { rate: args.interp_rate as usize }
                }
            },
            ..CompressParams::default()
        }),
    }
}

fn load_index(path: &Path) -> Result<Index> {
    Ok(load_from_path(path)?)
}

fn read_text(path: &Path, fasta: bool) -> Result<Text> {
    let raw = read_bytes(path)?;
    let text = if fasta {
        Text::from_fasta(&raw)
    } else {
        let mut data = raw;
        // text files conventionally end with a newline that is not data
        if data.last() == Some(&b'\n') {
            data.pop();
            if data.last() == Some(&b'\r') {
                data.pop();
            }
        }
        Text::from_bytes(data)
    };
    text.with_context(|| format!("reading text from {}", path.display()))
}

fn read_patterns(path: &Path) -> Result<Vec<Vec<u8>>> {
    let mut raw = read_bytes(path)?;
    if raw.last() == Some(&b'\n') {
        raw.pop();
    }
    if raw.is_empty() {
        return Ok(Vec::new());
    }
    Ok(raw.split(|&b| b == b'\n').map(<[u8]>::to_vec).collect())
}

fn read_bytes(path: &Path) -> Result<Vec<u8>> {
    if path == Path::new("-") {
        let mut buf = Vec::new();
        io::stdin().read_to_end(&mut buf).context("reading standard input")?;
        Ok(buf)
    } else {
        fs::read(path).with_context(|| format!("reading {}", path.display()))
    }
}
