use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use par_eclat::counting::DEFAULT_MATRIX_GUARD_BYTES;
use par_eclat::pipeline::{self, MiningConfig, TriMatrixMode, Variant, DEFAULT_PARTITIONS};
use par_eclat::{dataset, synth, SupportThreshold};
use par_eclat_cli::bench::{self, BenchSpec, OUT_DIR_ENV};

#[derive(Parser)]
#[command(name = "par-eclat", version, about = "Parallel Eclat frequent-itemset miner")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Mine frequent itemsets from one dataset.
    Mine(MineArgs),
    /// Run a benchmark sweep and write a CSV report.
    Bench(BenchArgs),
    /// Write a synthetic dataset.
    Gen(GenArgs),
}

fn parse_min_sup(s: &str) -> Result<SupportThreshold, String> {
    s.parse::<SupportThreshold>().map_err(|e| e.to_string())
}

fn positive(s: &str) -> Result<usize, String> {
    match s.parse::<usize>() {
        Ok(0) => Err("must be at least 1".into()),
        Ok(n) => Ok(n),
        Err(e) => Err(e.to_string()),
    }
}

#[derive(Args)]
struct MineArgs {
    #[arg(long)]
    input: PathBuf,
    #[arg(long, default_value = "v5")]
    variant: Variant,
    /// Fraction in (0, 1] or an absolute count.
    #[arg(long, value_parser = parse_min_sup)]
    min_sup: SupportThreshold,
    /// Partitions for the hash partitioners (v4, v5).
    #[arg(long, default_value_t = DEFAULT_PARTITIONS, value_parser = positive)]
    partitions: usize,
    #[arg(long, value_parser = positive)]
    workers: Option<usize>,
    #[arg(long, default_value = "auto")]
    tri_matrix: TriMatrixMode,
    #[arg(long, default_value_t = DEFAULT_MATRIX_GUARD_BYTES)]
    matrix_guard_bytes: u64,
    /// Itemset file; stdout when omitted.
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct BenchArgs {
    #[arg(long = "dataset", required = true)]
    datasets: Vec<PathBuf>,
    #[arg(long, value_delimiter = ',', default_value = "v1,v2,v3,v4,v5")]
    variants: Vec<Variant>,
    #[arg(long, value_delimiter = ',', required = true, value_parser = parse_min_sup)]
    min_sup: Vec<SupportThreshold>,
    #[arg(long, value_delimiter = ',', value_parser = positive)]
    workers: Vec<usize>,
    #[arg(long, value_delimiter = ',', default_value = "1", value_parser = positive)]
    replication: Vec<usize>,
    #[arg(long, default_value_t = DEFAULT_PARTITIONS, value_parser = positive)]
    partitions: usize,
    #[arg(long, default_value = "auto")]
    tri_matrix: TriMatrixMode,
    #[arg(long, env = OUT_DIR_ENV, default_value = "bench-out")]
    output_dir: PathBuf,
    #[arg(long, default_value_t = 1, value_parser = positive)]
    repeat: usize,
    #[arg(long)]
    warmup: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum GenKind {
    Quest,
    ChessLike,
    MushroomLike,
}

#[derive(Args)]
struct GenArgs {
    #[arg(long, value_enum)]
    kind: GenKind,
    /// Average transaction length (quest).
    #[arg(long, default_value_t = 10.0)]
    avg_len: f64,
    /// Average pattern length (quest).
    #[arg(long, default_value_t = 4.0)]
    pattern_len: f64,
    #[arg(long, default_value_t = 100_000)]
    transactions: usize,
    #[arg(long, default_value_t = 1000)]
    items: usize,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    #[arg(long)]
    output: PathBuf,
}

fn default_workers() -> usize {
    std::thread::available_parallelism().map_or(1, |n| n.get())
}

fn mine(args: MineArgs) -> Result<()> {
    let db = dataset::load(&args.input)
        .with_context(|| format!("reading {}", args.input.display()))?;
    let cfg = MiningConfig::new(args.variant, args.min_sup)
        .with_partitions(args.partitions)
        .with_workers(args.workers.unwrap_or_else(default_workers))
        .with_tri_matrix(args.tri_matrix)
        .with_matrix_guard(args.matrix_guard_bytes);
    let result = pipeline::run(&db, &cfg)?;
    let summary = format!("variant={} {}", cfg.variant, result.summary());
    match &args.output {
        Some(path) => {
            let file = File::create(path)
                .with_context(|| format!("creating {}", path.display()))?;
            let mut out = BufWriter::new(file);
            result.write_spmf(&db, &mut out)?;
            out.flush()?;
            println!("{summary}");
        }
        None => {
            let stdout = io::stdout();
            let mut out = BufWriter::new(stdout.lock());
            result.write_spmf(&db, &mut out)?;
            out.flush()?;
            eprintln!("{summary}");
        }
    }
    Ok(())
}

fn run_bench(args: BenchArgs) -> Result<()> {
    let spec = BenchSpec {
        datasets: args.datasets,
        variants: args.variants,
        min_sups: args.min_sup,
        workers: if args.workers.is_empty() {
            vec![default_workers()]
        } else {
            args.workers
        },
        replication: args.replication,
        p: args.partitions,
        tri_matrix: args.tri_matrix,
        output_dir: args.output_dir,
        repeat: args.repeat,
        warmup: args.warmup,
    };
    let rows = bench::run_and_write(&spec)?;
    println!("{} rows written to {}", rows.len(), spec.csv_path().display());
    Ok(())
}

fn generate(args: GenArgs) -> Result<()> {
    let db = match args.kind {
        GenKind::Quest => {
            let mut p = synth::QuestParams::new(args.avg_len, args.pattern_len, args.transactions)
                .with_seed(args.seed);
            p.items = args.items;
            synth::quest(&p)
        }
        GenKind::ChessLike => synth::chess_like(args.seed),
        GenKind::MushroomLike => synth::mushroom_like(args.seed),
    };
    let file = File::create(&args.output)
        .with_context(|| format!("creating {}", args.output.display()))?;
    let mut out = BufWriter::new(file);
    db.write_to(&mut out)?;
    out.flush()?;
    println!(
        "{} transactions, {} items written to {}",
        db.n_transactions(),
        db.distinct_items(),
        args.output.display()
    );
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Mine(a) => mine(a),
        Command::Bench(a) => run_bench(a),
        Command::Gen(a) => generate(a),
    };
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
