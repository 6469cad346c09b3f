use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, Context};
use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};
use tempfile::NamedTempFile;

use dnacodec::analysis::{
    balance_probability, balance_window, big_to_f64, coding_efficiency, default_grid_step,
    gc_count_distribution, info_density, min_alpha, symbol_gc_distribution, Report,
    CHANNEL_CAPACITY,
};
use dnacodec::codec::io::{from_binary, read_archive, to_binary, write_fasta, write_sidecar};
use dnacodec::codec::{CodecParams, EncodedArchive, Method, Randomizer, MAX_ITERATIONS};
use dnacodec::constraints::{Alpha, ConstraintSet, GcScope};
use dnacodec::decimal::{format_ratio, parse_decimal};
use dnacodec::mapping::{
    average_bit_error, build_greedy_table, diff_tables, random_table_average_bit_error,
    MappingTable, SubstitutionMatrix,
};
use dnacodec::pipeline::{decode_bytes, encode_bytes, EncodeOptions};
use dnacodec::sequence::DnaSequence;
use dnacodec::Error;

const EXIT_IO: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_ENCODE: u8 = 3;
const EXIT_CORRUPT: u8 = 4;

const BINARY_MAGIC_PREFIX: &[u8] = b"DNACODE";

#[derive(Parser)]
#[command(
    name = "dnacodec",
    version,
    about = "Encode files into constrained DNA strands and back"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Encode a file into DNA strands.
    Encode(EncodeArgs),
    /// Restore a file from an archive.
    Decode { archive: PathBuf, output: PathBuf },
    /// Print analysis tables.
    Analyze(AnalyzeArgs),
    /// Print or rebuild the 48-ary mapping table.
    Table(TableArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum ArchiveFormat {
    /// FASTA strands plus a `<output>.meta` sidecar.
    Fasta,
    /// Single binary container.
    Binary,
}

#[derive(Args)]
struct EncodeArgs {
    input: PathBuf,
    output: PathBuf,
    #[arg(long, default_value = "block11")]
    method: String,
    /// Maximum homopolymer run length.
    #[arg(long, default_value_t = 3)]
    m: usize,
    /// GC window half-width, e.g. 0.05 or 1/20.
    #[arg(long, default_value = "0.05")]
    alpha: String,
    /// Payload nucleotides per full strand, excluding the prefix.
    #[arg(long, default_value_t = 198)]
    n: usize,
    #[arg(long = "max-iter", default_value_t = MAX_ITERATIONS)]
    max_iter: u8,
    /// Huffman source-symbol width in bits.
    #[arg(long, default_value_t = 16, conflicts_with = "no_source_coding")]
    k: u32,
    #[arg(long)]
    no_source_coding: bool,
    /// Region the GC window applies to: payload or full.
    #[arg(long, default_value = "payload")]
    gc_scope: String,
    /// Sequence that must not occur in any strand; repeatable.
    #[arg(long = "forbid")]
    forbid: Vec<String>,
    #[arg(long, value_enum, default_value = "fasta")]
    format: ArchiveFormat,
    /// Fail on the first strand that exhausts its iterations instead of
    /// re-partitioning it.
    #[arg(long)]
    strict: bool,
}

#[derive(Args)]
#[command(group(ArgGroup::new("report").required(true)
    .args(["min_alpha", "density", "bit_error", "gc_dist", "alpha_grid"])))]
struct AnalyzeArgs {
    /// Smallest alpha meeting the failure budget: I n epsilon.
    #[arg(long, num_args = 3, value_names = ["I", "N", "EPS"])]
    min_alpha: Option<Vec<String>>,
    /// Grid of minimum alpha for I in {4, 8} and n in {100, ..., 300}.
    #[arg(long)]
    alpha_grid: bool,
    /// Information density and coding efficiency for run-length limit m.
    #[arg(long, value_name = "M")]
    density: Option<usize>,
    /// Average bit error of the canonical table against a random one.
    #[arg(long)]
    bit_error: bool,
    /// Substitution probabilities as `from,to,probability` lines.
    #[arg(long, requires = "bit_error")]
    substitutions: Option<PathBuf>,
    /// GC-count distribution of an n-nt block-mapped payload.
    #[arg(long, value_name = "N")]
    gc_dist: Option<usize>,
    /// Window for the balance probability printed with --gc-dist.
    #[arg(long, default_value = "0.05")]
    alpha: String,
    /// Emit comma-separated values instead of an aligned table.
    #[arg(long)]
    csv: bool,
}

#[derive(Args)]
#[command(group(ArgGroup::new("action").required(true).args(["emit", "rebuild_greedy"])))]
struct TableArgs {
    /// Print the canonical table as `symbol,TUPLE` lines.
    #[arg(long)]
    emit: bool,
    /// Rebuild the table greedily from the substitution rates and diff it.
    #[arg(long)]
    rebuild_greedy: bool,
}

struct Failure {
    code: u8,
    error: anyhow::Error,
}

impl From<anyhow::Error> for Failure {
    fn from(error: anyhow::Error) -> Self {
        let code = error
            .chain()
            .find_map(|e| {
                if let Some(e) = e.downcast_ref::<Error>() {
                    Some(match e {
                        Error::EncodingFailure { .. } => EXIT_ENCODE,
                        e if e.is_corruption() => EXIT_CORRUPT,
                        Error::Io(_) => EXIT_IO,
                        _ => EXIT_USAGE,
                    })
                } else if e.is::<std::io::Error>() {
                    Some(EXIT_IO)
                } else {
                    None
                }
            })
            .unwrap_or(EXIT_USAGE);
        Failure { code, error }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        anyhow::Error::from(e).into()
    }
}

fn usage(msg: String) -> Failure {
    Failure {
        code: EXIT_USAGE,
        error: anyhow!(msg),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Encode(args) => encode(args),
        Command::Decode { archive, output } => decode(&archive, &output),
        Command::Analyze(args) => analyze(args),
        Command::Table(args) => table(args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {:#}", f.error);
            ExitCode::from(f.code)
        }
    }
}

fn sidecar_path(archive: &Path) -> PathBuf {
    let mut s = archive.as_os_str().to_owned();
    s.push(".meta");
    PathBuf::from(s)
}

/// Writes to a temporary file beside `path` and renames it into place.
fn write_atomic(path: &Path, contents: &[u8]) -> anyhow::Result<NamedTempFile> {
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    let mut tmp = NamedTempFile::new_in(dir)
        .with_context(|| format!("creating temporary file in {}", dir.display()))?;
    tmp.write_all(contents)?;
    tmp.as_file().sync_all()?;
    Ok(tmp)
}

fn persist(tmp: NamedTempFile, path: &Path) -> anyhow::Result<()> {
    tmp.persist(path)
        .map_err(|e| e.error)
        .with_context(|| format!("writing {}", path.display()))?;
    Ok(())
}

fn codec_params(args: &EncodeArgs) -> Result<CodecParams, Failure> {
    let method: Method = args.method.parse()?;
    let alpha: Alpha = args.alpha.parse()?;
    let forbidden = args
        .forbid
        .iter()
        .map(|p| p.parse::<DnaSequence>())
        .collect::<Result<Vec<_>, _>>()?;
    let constraints = ConstraintSet::new(args.m, alpha)?
        .with_forbidden(forbidden)?
        .with_gc_scope(args.gc_scope.parse::<GcScope>()?);
    Ok(CodecParams::new(method, constraints, args.n, args.max_iter)?.with_reflow(!args.strict))
}

fn encode(args: EncodeArgs) -> Result<(), Failure> {
    let params = codec_params(&args)?;
    let table = MappingTable::for_m(params.m())?;
    let data =
        fs::read(&args.input).with_context(|| format!("reading {}", args.input.display()))?;
    let options = EncodeOptions {
        params,
        source_symbol_bits: (!args.no_source_coding).then_some(args.k),
    };
    let (archive, _, report) = encode_bytes(&data, &options, &table, &Randomizer)?;
    // nothing is written unless every strand passed
    let bad = archive.violations()?;
    if !bad.is_empty() {
        return Err(anyhow!("internal error: {} strands violate constraints", bad.len()).into());
    }
    match args.format {
        ArchiveFormat::Fasta => {
            let meta = sidecar_path(&args.output);
            let fasta = write_atomic(&args.output, write_fasta(&archive.strands).as_bytes())?;
            let side = write_atomic(&meta, write_sidecar(&archive.header).as_bytes())?;
            persist(side, &meta)?;
            persist(fasta, &args.output)?;
        }
        ArchiveFormat::Binary => persist(
            write_atomic(&args.output, &to_binary(&archive))?,
            &args.output,
        )?,
    }
    print!("{report}");
    Ok(())
}

fn load_archive(path: &Path) -> Result<EncodedArchive, Failure> {
    let bytes = fs::read(path).with_context(|| format!("reading {}", path.display()))?;
    if bytes.starts_with(BINARY_MAGIC_PREFIX) {
        return Ok(from_binary(&bytes)?);
    }
    let fasta = String::from_utf8(bytes)
        .map_err(|_| Error::Corruption("archive is neither FASTA nor binary".into()))?;
    let meta = sidecar_path(path);
    if !meta.exists() {
        return Err(usage(format!(
            "sidecar {} not found; FASTA archives need their .meta file",
            meta.display()
        )));
    }
    let sidecar =
        fs::read_to_string(&meta).with_context(|| format!("reading {}", meta.display()))?;
    Ok(read_archive(&fasta, &sidecar)?)
}

fn decode(archive_path: &Path, output: &Path) -> Result<(), Failure> {
    let archive = load_archive(archive_path)?;
    let table = MappingTable::for_m(archive.header.m)?;
    let data = decode_bytes(&archive, &table, &Randomizer)?;
    persist(write_atomic(output, &data)?, output)?;
    println!(
        "restored {} bytes from {} strands",
        data.len(),
        archive.strands.len()
    );
    Ok(())
}

fn render(report: &Report, csv: bool) -> String {
    if csv {
        report.to_delimited(',')
    } else {
        report.to_pretty()
    }
}

fn analyze(args: AnalyzeArgs) -> Result<(), Failure> {
    if let Some(v) = &args.min_alpha {
        let iterations: u32 = v[0]
            .parse()
            .map_err(|_| usage(format!("invalid iteration count {:?}", v[0])))?;
        let n: usize = v[1]
            .parse()
            .map_err(|_| usage(format!("invalid length {:?}", v[1])))?;
        let eps = parse_decimal(&v[2])?;
        let dist = symbol_gc_distribution(&MappingTable::canonical())?;
        let alpha = min_alpha(&dist, n, iterations, &eps, &default_grid_step())?;
        println!("{}", format_ratio(&alpha));
    } else if args.alpha_grid {
        let dist = symbol_gc_distribution(&MappingTable::canonical())?;
        let eps = parse_decimal("1e-4")?;
        let ns = [100usize, 150, 200, 250, 300];
        let mut report = Report::new(
            std::iter::once("I".to_string()).chain(ns.iter().map(|n| format!("n={n}"))),
        );
        for iterations in [4u32, 8] {
            let mut row = vec![iterations.to_string()];
            for &n in &ns {
                row.push(format_ratio(&min_alpha(
                    &dist,
                    n,
                    iterations,
                    &eps,
                    &default_grid_step(),
                )?));
            }
            report.row(row);
        }
        print!("{}", render(&report, args.csv));
    } else if let Some(m) = args.density {
        let d = info_density(m)?;
        let mut report = Report::new(["m", "alphabet", "bits_per_nt", "efficiency"]);
        let alphabet = 3u128 * 4u128.pow(m.saturating_sub(1) as u32);
        report.row([
            m.to_string(),
            alphabet.to_string(),
            format!("{d:.4}"),
            format!("{:.4}", coding_efficiency(m, CHANNEL_CAPACITY)?),
        ]);
        print!("{}", render(&report, args.csv));
    } else if args.bit_error {
        let subs = match &args.substitutions {
            Some(p) => SubstitutionMatrix::parse(
                &fs::read_to_string(p).with_context(|| format!("reading {}", p.display()))?,
            )?,
            None => SubstitutionMatrix::measured(),
        };
        let result = average_bit_error(&MappingTable::canonical(), &subs);
        let mut report = Report::new(["from", "to", "probability", "events", "mean_bit_error"]);
        for p in &result.per_pair {
            let mean = p.mean().map_or("-".to_string(), |r| {
                format!("{:.3}", *r.numer() as f64 / *r.denom() as f64)
            });
            report.row([
                p.from.to_string(),
                p.to.to_string(),
                format!("{:.5}", p.probability),
                p.events.to_string(),
                mean,
            ]);
        }
        print!("{}", render(&report, args.csv));
        let random = random_table_average_bit_error(48);
        let random = *random.numer() as f64 / *random.denom() as f64;
        println!("greedy {:.4}", result.overall);
        println!("random {random:.4}");
        println!(
            "reduction {:.1}%",
            100.0 * (random - result.overall) / random
        );
    } else if let Some(n) = args.gc_dist {
        let dist = symbol_gc_distribution(&MappingTable::canonical())?;
        let a = gc_count_distribution(&dist, n)?;
        let alpha = parse_decimal(&args.alpha)?;
        let (lo, hi) = balance_window(&alpha, n)?;
        let mut report = Report::new(["gc", "probability"]);
        for (j, p) in a.to_f64().iter().enumerate() {
            report.row([j.to_string(), format!("{p:.6e}")]);
        }
        print!("{}", render(&report, args.csv));
        println!(
            "p(alpha={}, n={n}) = {:.6} over gc {lo}..={hi}",
            format_ratio(&alpha),
            big_to_f64(&balance_probability(&a, &alpha)?)
        );
    } else {
        return Err(usage("no analysis selected".into()));
    }
    Ok(())
}

fn table(args: TableArgs) -> Result<(), Failure> {
    let canonical = MappingTable::canonical();
    if args.emit {
        print!("{}", canonical.to_text());
        return Ok(());
    }
    let rebuilt = build_greedy_table(&SubstitutionMatrix::measured())?;
    let diff = diff_tables(&canonical, &rebuilt);
    if diff.is_empty() {
        println!("greedy rebuild matches the canonical table");
    } else {
        println!(
            "{} of {} symbols differ (symbol,canonical,greedy):",
            diff.len(),
            canonical.size()
        );
        for d in diff {
            println!("{},{},{}", d.symbol, d.expected, d.actual);
        }
    }
    Ok(())
}
