//! `slz77`: LZ77 factorization, LPF dumps, verification, benchmarks and index
//! inspection.
//!
//! Exit status 0 on success, 1 on a verification mismatch, 2 on I/O, input or
//! usage errors.

mod bench;
mod input;
mod verify;

use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;
use slz::container::{write_packed2, INDEX_MAGIC};
use slz::lpf::{LpfIndex, Variant};
use slz::lz77::{factorize, symbol_token, Factorization, Phrase, BINARY_MAGIC};
use slz::minocc::{Config, MinOccIndex};
use slz::text::PackedText;

use crate::input::Input;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Io(String),
    #[error("{0}")]
    Input(String),
    #[error("verification mismatch: {0}")]
    Mismatch(String),
    #[error(transparent)]
    Lib(#[from] slz::Error),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Mismatch(_) => 1,
            _ => 2,
        }
    }
}

#[derive(Parser, Debug)]
#[command(name = "slz77", version, about = "LZ77 and longest-previous-factor tools over a leftmost-occurrence index")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Greedy LZ77 factorization of a file.
    Factorize {
        input: PathBuf,
        #[command(flatten)]
        text: TextArgs,
        /// Output file (stdout if omitted).
        #[arg(short, long)]
        output: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Format::Tsv)]
        format: Format,
        /// Compare against the brute-force parser.
        #[arg(long)]
        verify: bool,
    },
    /// LPF (or LPnF) value and leftmost source for every position, as TSV.
    Lpf {
        input: PathBuf,
        #[command(flatten)]
        text: TextArgs,
        #[arg(short, long)]
        output: Option<PathBuf>,
        #[arg(long)]
        verify: bool,
    },
    /// Factorize and check against the brute-force parser (both variants
    /// unless --variant is given).
    Verify {
        input: PathBuf,
        #[command(flatten)]
        text: TextArgs,
    },
    /// Timing report as JSON.
    Bench {
        input: PathBuf,
        #[command(flatten)]
        text: TextArgs,
        #[arg(long, default_value_t = 3)]
        reps: usize,
    },
    /// Expand a phrase dump (TSV or binary) back to the text.
    Decode {
        input: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
        /// Write an SLZ2 packed file instead of raw bytes.
        #[arg(long)]
        packed: bool,
    },
    /// Print index statistics for a text or a saved index.
    Inspect {
        input: PathBuf,
        #[command(flatten)]
        text: TextArgs,
        /// Save the index built from the text.
        #[arg(long)]
        save: Option<PathBuf>,
    },
}

#[derive(Args, Debug, Clone)]
struct TextArgs {
    #[arg(long, value_enum)]
    variant: Option<VariantArg>,
    /// Alphabet size; default 256 for raw bytes, 4 with --packed.
    #[arg(long)]
    sigma: Option<u32>,
    /// Forces the full index with this τ.
    #[arg(long)]
    tau: Option<usize>,
    /// Input is an SLZ2 packed 2-bit file.
    #[arg(long)]
    packed: bool,
    /// Keep the inverse suffix array after construction.
    #[arg(long)]
    memory_relaxed: bool,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum VariantArg {
    Overlap,
    Nonoverlap,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum Format {
    Tsv,
    Bin,
}

pub fn variant_name(v: Variant) -> &'static str {
    match v {
        Variant::Overlapping => "overlap",
        Variant::NonOverlapping => "nonoverlap",
    }
}

impl TextArgs {
    fn check(&self) -> Result<(), CliError> {
        match self.sigma {
            Some(s) if s < 1 => return Err(CliError::Usage("--sigma must be at least 1".into())),
            Some(s) if self.packed && s > 4 => {
                return Err(CliError::Usage(format!("--packed holds 2-bit symbols; --sigma {s} exceeds 4")))
            }
            Some(s) if s >= 1 << 30 => return Err(CliError::Usage(format!("--sigma {s} is too large"))),
            _ => {}
        }
        if self.tau == Some(0) {
            return Err(CliError::Usage("--tau must be at least 1".into()));
        }
        Ok(())
    }

    fn variant(&self) -> Variant {
        match self.variant {
            Some(VariantArg::Nonoverlap) => Variant::NonOverlapping,
            _ => Variant::Overlapping,
        }
    }

    fn config(&self) -> Config {
        Config { tau: self.tau, force_full: self.tau.is_some(), memory_relaxed: self.memory_relaxed, ..Config::default() }
    }

    fn load(&self, path: &Path) -> Result<Input, CliError> {
        input::load(path, self.packed, self.sigma)
    }

    fn index(&self, input: &Input) -> Result<MinOccIndex, CliError> {
        let text = PackedText::new(&input.symbols, input.sigma, true)?;
        Ok(MinOccIndex::build(text, self.config())?)
    }
}

fn write_output(path: Option<&Path>, bytes: &[u8]) -> Result<(), CliError> {
    match path {
        Some(p) => std::fs::write(p, bytes).map_err(|e| CliError::Io(format!("{}: {e}", p.display()))),
        None => std::io::stdout().lock().write_all(bytes).map_err(|e| CliError::Io(format!("stdout: {e}"))),
    }
}

/// Peak resident set size from /proc, where available.
fn peak_rss() -> Option<u64> {
    let status = std::fs::read_to_string("/proc/self/status").ok()?;
    let line = status.lines().find(|l| l.starts_with("VmHWM:"))?;
    let kb: u64 = line.split_whitespace().nth(1)?.parse().ok()?;
    Some(kb * 1024)
}

fn restore_literals(input: &Input, mut f: Factorization) -> Factorization {
    for ph in &mut f.phrases {
        if let Phrase::Literal(c) = ph {
            *c = input.original(*c);
        }
    }
    f
}

fn cmd_factorize(path: &Path, args: &TextArgs, output: Option<&Path>, format: Format, check: bool) -> Result<(), CliError> {
    let input = args.load(path)?;
    let start = Instant::now();
    let idx = args.index(&input)?;
    let lpf = LpfIndex::new(&idx, args.variant())?;
    let f = factorize(&lpf)?;
    let seconds = start.elapsed().as_secs_f64();
    let verdict = if check { Some(verify::factorization(&input.symbols, &f)?) } else { None };
    let ratio = f.ratio(input.sigma);
    let z = f.len();
    let f = restore_literals(&input, f);
    let bytes = match format {
        Format::Tsv => f.to_tsv().into_bytes(),
        Format::Bin => f.to_binary(),
    };
    write_output(output, &bytes)?;
    let line = json!({
        "command": "factorize",
        "n": input.len(),
        "sigma": input.sigma,
        "variant": variant_name(args.variant()),
        "mode": format!("{:?}", idx.mode()).to_lowercase(),
        "tau": idx.tau(),
        "z": z,
        "ratio": ratio,
        "seconds": seconds,
        "peak_rss_bytes": peak_rss(),
        "verify": verdict,
    });
    eprintln!("{line}");
    Ok(())
}

fn lpf_rows(input: &Input, idx: &MinOccIndex, variant: Variant) -> Result<Vec<Phrase>, CliError> {
    let lpf = LpfIndex::new(idx, variant)?;
    Ok((1..=input.len()).map(|j| lpf.lpf_at(j)).collect::<Result<_, _>>()?)
}

fn cmd_lpf(path: &Path, args: &TextArgs, output: Option<&Path>, check: bool) -> Result<(), CliError> {
    use std::fmt::Write as _;
    let input = args.load(path)?;
    let start = Instant::now();
    let idx = args.index(&input)?;
    let rows = lpf_rows(&input, &idx, args.variant())?;
    let seconds = start.elapsed().as_secs_f64();
    let verdict = if check { Some(verify::lpf(&input.symbols, args.variant(), &rows)?) } else { None };
    let mut out = String::new();
    for (k, ph) in rows.iter().enumerate() {
        let _ = match *ph {
            Phrase::Literal(c) => writeln!(out, "{}\t0\t{}", k + 1, symbol_token(input.original(c))),
            Phrase::Copy { len, src } => writeln!(out, "{}\t{len}\t{src}", k + 1),
        };
    }
    write_output(output, out.as_bytes())?;
    let line = json!({
        "command": "lpf",
        "n": input.len(),
        "variant": variant_name(args.variant()),
        "seconds": seconds,
        "peak_rss_bytes": peak_rss(),
        "verify": verdict,
    });
    eprintln!("{line}");
    Ok(())
}

fn cmd_verify(path: &Path, args: &TextArgs) -> Result<(), CliError> {
    let input = args.load(path)?;
    let idx = args.index(&input)?;
    let variants = match args.variant {
        Some(_) => vec![args.variant()],
        None => vec![Variant::Overlapping, Variant::NonOverlapping],
    };
    let mut results = Vec::new();
    for v in variants {
        let lpf = LpfIndex::new(&idx, v)?;
        let f = factorize(&lpf)?;
        let phrases = verify::factorization(&input.symbols, &f).map_err(|e| match e {
            CliError::Mismatch(m) => CliError::Mismatch(format!("{} LZ77 {m}", variant_name(v))),
            e => e,
        })?;
        let rows = lpf_rows(&input, &idx, v)?;
        let values = verify::lpf(&input.symbols, v, &rows).map_err(|e| match e {
            CliError::Mismatch(m) => CliError::Mismatch(format!("{} LPF {m}", variant_name(v))),
            e => e,
        })?;
        results.push(json!({ "variant": variant_name(v), "z": f.len(), "lz77": phrases, "lpf": values }));
    }
    println!("{}", json!({ "n": input.len(), "mode": format!("{:?}", idx.mode()).to_lowercase(), "tau": idx.tau(), "ok": true, "results": results }));
    Ok(())
}

fn cmd_decode(path: &Path, output: Option<&Path>, packed: bool) -> Result<(), CliError> {
    let bytes = input::read(path)?;
    let parsed = if bytes.starts_with(BINARY_MAGIC) {
        Factorization::from_binary(&bytes)
    } else {
        let text = std::str::from_utf8(&bytes).map_err(|_| CliError::Input("dump is neither SLZ77v1 nor UTF-8 TSV".into()))?;
        Factorization::from_tsv(text)
    };
    let symbols = parsed.and_then(|f| f.decode()).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
    let out = if packed {
        write_packed2(&symbols)?
    } else {
        symbols
            .iter()
            .map(|&c| u8::try_from(c).map_err(|_| CliError::Input(format!("symbol {c} does not fit a byte; use --packed or a smaller alphabet"))))
            .collect::<Result<_, _>>()?
    };
    write_output(output, &out)
}

fn cmd_inspect(path: &Path, args: &TextArgs, save: Option<&Path>) -> Result<(), CliError> {
    let bytes = input::read(path)?;
    let (idx, source) = if bytes.starts_with(INDEX_MAGIC) {
        (MinOccIndex::from_bytes(&bytes)?, "index")
    } else {
        let input = if args.packed {
            args.load(path)?
        } else {
            input::from_bytes(&bytes, args.sigma.unwrap_or(256))?
        };
        (args.index(&input)?, "text")
    };
    if let Some(p) = save {
        idx.save(p).map_err(|e| CliError::Io(format!("{}: {e}", p.display())))?;
    }
    let s = idx.stats();
    let t = idx.build_times();
    let report = json!({
        "source": source,
        "n": idx.text().n(),
        "sigma": idx.text().sigma() - 1,
        "mode": format!("{:?}", idx.mode()).to_lowercase(),
        "tau": idx.tau(),
        "layout": format!("{:?}", idx.layout()),
        "memory_relaxed": idx.scaffold().has_isa(),
        "serialized_bytes": idx.to_bytes().len(),
        "core_entries": s.core_entries,
        "core_flat": s.core_flat,
        "sync_size": s.sync_size,
        "sync_scrambled": s.sync_scrambled,
        "r_size": s.r_size,
        "runs": s.runs,
        "dist_prefixes": s.dist_prefixes,
        "bmin_ones": s.bmin_ones,
        "build_seconds": {
            "scaffold": t.scaffold.as_secs_f64(),
            "core": t.core.as_secs_f64(),
            "nonperiodic": t.nonperiodic.as_secs_f64(),
            "periodic": t.periodic.as_secs_f64(),
        },
    });
    println!("{report}");
    Ok(())
}

fn run(cli: Cli) -> Result<(), CliError> {
    match &cli.command {
        Command::Factorize { text, .. }
        | Command::Lpf { text, .. }
        | Command::Verify { text, .. }
        | Command::Bench { text, .. }
        | Command::Inspect { text, .. } => text.check()?,
        Command::Decode { .. } => {}
    }
    match cli.command {
        Command::Factorize { input, text, output, format, verify } => cmd_factorize(&input, &text, output.as_deref(), format, verify),
        Command::Lpf { input, text, output, verify } => cmd_lpf(&input, &text, output.as_deref(), verify),
        Command::Verify { input, text } => cmd_verify(&input, &text),
        Command::Bench { input, text, reps } => {
            if reps == 0 {
                return Err(CliError::Usage("--reps must be at least 1".into()));
            }
            let data = text.load(&input)?;
            let report = bench::run(&data, text.config(), text.variant(), reps)?;
            println!("{}", serde_json::to_string(&report).expect("report serializes"));
            Ok(())
        }
        Command::Decode { input, output, packed } => cmd_decode(&input, output.as_deref(), packed),
        Command::Inspect { input, text, save } => cmd_inspect(&input, &text, save.as_deref()),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("slz77: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
