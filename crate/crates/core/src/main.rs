use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use mdrs::analysis::{self, CurveKind};
use mdrs::distance::{self, DistanceError};
use mdrs::encoder::{Code, EncodeError};
use mdrs::erasure::{self, DecodeError, ReceivedWord};
use mdrs::format::{self, ParseError};
use mdrs::gf::Field;
use mdrs::params::{CodeSpec, DegreeRegion, ParamsError, ParamsReport};

#[derive(Parser)]
#[command(name = "mdrs", version, about = "Multi-dimensional nonsystematic Reed-Solomon codes")]
struct Cli {
    /// Worker threads for verify and simulate (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone, Copy)]
struct CodeArgs {
    /// Field characteristic.
    #[arg(long)]
    p: u64,
    /// Extension degree.
    #[arg(long, default_value_t = 1)]
    m: u32,
    /// Number of variables.
    #[arg(long)]
    n: usize,
    /// Designed minimum distance.
    #[arg(long)]
    d: u64,
}

#[derive(Clone, Copy, ValueEnum)]
enum Which {
    Info,
    Checks,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Plain,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    Dim2,
    DimSweep,
    ProductCompare,
    GvCompare,
}

impl From<Kind> for CurveKind {
    fn from(k: Kind) -> Self {
        match k {
            Kind::Dim2 => CurveKind::Dim2,
            Kind::DimSweep => CurveKind::DimSweep,
            Kind::ProductCompare => CurveKind::ProductCompare,
            Kind::GvCompare => CurveKind::GvCompare,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Print code parameters and the degree region as JSON.
    Params(CodeArgs),
    /// Reproduce the information-symbol or check-symbol table.
    Tables {
        #[arg(long, value_enum)]
        which: Which,
        #[arg(long, value_enum, default_value = "plain")]
        format: Format,
    },
    /// Encode a message file into a codeword file.
    Encode {
        #[command(flatten)]
        code: CodeArgs,
        #[arg(long)]
        msg: PathBuf,
        /// Output file (default: stdout).
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Recover the message from a received word with `?` erasures.
    Decode {
        #[command(flatten)]
        code: CodeArgs,
        #[arg(long)]
        rx: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check the minimum weight, exhaustively or by sampling with --trials.
    Verify {
        #[command(flatten)]
        code: CodeArgs,
        #[arg(long, default_value_t = distance::DEFAULT_BUDGET)]
        budget: u64,
        /// Sample this many random messages instead of enumerating.
        #[arg(long)]
        trials: Option<u64>,
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Emit rate/distance curve data as CSV.
    Curves {
        #[arg(long, value_enum)]
        kind: Kind,
        #[arg(long)]
        q: u64,
        #[arg(long, value_delimiter = ',', default_value = "2,3,4")]
        dims: Vec<usize>,
        #[arg(long, value_delimiter = ',', default_value = "32,64,128")]
        lengths: Vec<u64>,
        /// CSV destination; without it the CSV goes to stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Monte Carlo erasure channel.
    Simulate {
        #[command(flatten)]
        code: CodeArgs,
        #[arg(long)]
        epsilon: f64,
        #[arg(long)]
        trials: u64,
        #[arg(long)]
        seed: Option<u64>,
    },
}

struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn new(code: u8, message: impl Into<String>) -> Self {
        Failure { code, message: message.into() }
    }
}

const EXIT_USAGE: u8 = 2;
const EXIT_LENGTH: u8 = 3;
const EXIT_RANK: u8 = 4;
const EXIT_INCONSISTENT: u8 = 5;
const EXIT_BUDGET: u8 = 6;

impl From<ParamsError> for Failure {
    fn from(e: ParamsError) -> Self {
        Failure::new(EXIT_USAGE, e.to_string())
    }
}

impl From<mdrs::gf::GfError> for Failure {
    fn from(e: mdrs::gf::GfError) -> Self {
        Failure::new(EXIT_USAGE, e.to_string())
    }
}

impl From<ParseError> for Failure {
    fn from(e: ParseError) -> Self {
        Failure::new(EXIT_LENGTH, e.to_string())
    }
}

impl From<EncodeError> for Failure {
    fn from(e: EncodeError) -> Self {
        Failure::new(EXIT_LENGTH, e.to_string())
    }
}

impl From<DistanceError> for Failure {
    fn from(e: DistanceError) -> Self {
        Failure::new(EXIT_BUDGET, e.to_string())
    }
}

impl From<analysis::AnalysisError> for Failure {
    fn from(e: analysis::AnalysisError) -> Self {
        Failure::new(EXIT_USAGE, e.to_string())
    }
}

fn build_code(args: CodeArgs) -> Result<Code, Failure> {
    let field = Field::new(args.p, args.m)?;
    Ok(Code::new(CodeSpec::new(field, args.n, args.d)?)?)
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::new(1, format!("{}: {e}", path.display())))
}

fn write_out(path: Option<&Path>, text: &str) -> Result<(), Failure> {
    match path {
        Some(p) => fs::write(p, text).map_err(|e| Failure::new(1, format!("{}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn print_json<T: Serialize>(value: &T) {
    println!("{}", serde_json::to_string(value).expect("serializable"));
}

/// Randomized commands must be given a seed when MDRS_CI=1.
fn resolve_seed(seed: Option<u64>) -> Result<u64, Failure> {
    match seed {
        Some(s) => Ok(s),
        None if std::env::var("MDRS_CI").is_ok_and(|v| v == "1") => {
            Err(Failure::new(EXIT_USAGE, "--seed is required when MDRS_CI=1"))
        }
        None => Ok(rand::random()),
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    if let Some(threads) = cli.threads {
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global()
            .map_err(|e| Failure::new(1, e.to_string()))?;
    }

    match cli.command {
        Command::Params(args) => {
            let field = Field::new(args.p, args.m)?;
            let spec = CodeSpec::new(field, args.n, args.d)?;
            print_json(&ParamsReport::new(&DegreeRegion::build(&spec)?));
        }
        Command::Tables { which, format } => match (which, format) {
            (Which::Info, Format::Plain) => print!("{}", analysis::render_info_table(&analysis::info_table())),
            (Which::Info, Format::Json) => print_json(&analysis::info_table()),
            (Which::Checks, Format::Plain) => print!("{}", analysis::render_check_table(&analysis::check_table())),
            (Which::Checks, Format::Json) => print_json(&analysis::check_table()),
        },
        Command::Encode { code, msg, out } => {
            let code = build_code(code)?;
            let coeffs = format::parse_elements(&read(&msg)?, code.field().order(), code.dimension())?;
            let cw = code.encode(&code.message(coeffs)?)?;
            write_out(out.as_deref(), &format::write_elements(cw.symbols()))?;
        }
        Command::Decode { code, rx, out } => {
            let code = build_code(code)?;
            let symbols = format::parse_symbols(&read(&rx)?, code.field().order(), code.length(), true)?;
            let rx = ReceivedWord::new(symbols);
            match erasure::decode_erasures(&rx, &code.generator_matrix()) {
                Ok(msg) => write_out(out.as_deref(), &format::write_elements(msg.coeffs()))?,
                Err(e @ DecodeError::RankDeficient { .. }) => {
                    return Err(Failure::new(EXIT_RANK, format!("{e}; erased positions {:?}", rx.pattern().erased())))
                }
                Err(e @ DecodeError::Inconsistent) => return Err(Failure::new(EXIT_INCONSISTENT, e.to_string())),
                Err(e @ DecodeError::LengthMismatch { .. }) => return Err(Failure::new(EXIT_LENGTH, e.to_string())),
            }
        }
        Command::Verify { code, budget, trials, seed } => {
            let code = build_code(code)?;
            let report = match trials {
                Some(t) => distance::min_weight_sampled(&code, t, resolve_seed(seed)?),
                None => distance::min_weight_exhaustive(&code, budget)?,
            };
            print_json(&report);
        }
        Command::Curves { kind, q, dims, lengths, out } => {
            let kind = CurveKind::from(kind);
            let points = analysis::emit_curves(kind, q, &dims, &lengths)?;
            let csv = analysis::curves_csv(&points);
            match out {
                Some(path) => {
                    write_out(Some(&path), &csv)?;
                    let mut meta = json!({ "q": q, "points": points.len(), "out": path.display().to_string() });
                    if kind == CurveKind::GvCompare {
                        meta["gv_formula"] = json!(analysis::GV_FORMULA);
                        meta["comparisons"] = serde_json::to_value(analysis::gv_comparisons(q, &lengths)?).unwrap();
                    }
                    print_json(&meta);
                }
                None => print!("{csv}"),
            }
        }
        Command::Simulate { code, epsilon, trials, seed } => {
            let code = build_code(code)?;
            let report = erasure::simulate_erasure_channel(&code, epsilon, trials, resolve_seed(seed)?)
                .map_err(|e| Failure::new(EXIT_USAGE, e.to_string()))?;
            print_json(&report);
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
