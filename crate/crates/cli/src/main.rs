//! `lpdecode`: nullspace-property certification, pseudo-weights, exact LP
//! decoders and the randomized theorem checks.
//!
//! Exit codes: 0 on success, 1 on usage or input errors, 2 when a soundness
//! check fails.

mod commands;
mod output;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};
use lpdecode::channels::ChannelSpec;
use lpdecode::pseudoweight::PseudoWeightKind;
use lpdecode::{BinaryMatrix, Rational};

use crate::output::OutFormat;

#[derive(Debug, Parser)]
#[command(name = "lpdecode", version, about = "Exact LP decoding for compressed sensing and channel coding")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum MatrixFormat {
    Alist,
    Dense,
}

#[derive(Debug, Args)]
struct MatrixArgs {
    /// Matrix file, or `corpus:NAME` for a built-in matrix.
    #[arg(long)]
    matrix: String,
    /// File format; inferred from a `.alist` extension when omitted.
    #[arg(long, value_enum)]
    format: Option<MatrixFormat>,
}

#[derive(Debug, Args)]
struct OptionalMatrixArgs {
    /// Matrix file, or `corpus:NAME`; random matrices when omitted.
    #[arg(long)]
    matrix: Option<String>,
    #[arg(long, value_enum)]
    format: Option<MatrixFormat>,
}

#[derive(Debug, Args)]
struct OutputArgs {
    /// Output file; standard output when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum)]
    out_format: Option<OutFormat>,
}

#[derive(Debug, Args)]
struct SeedArgs {
    #[arg(long, env = "LPDECODE_SEED", default_value_t = 0)]
    seed: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum CsDecoder {
    Lpd,
    Opt,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Norm {
    L1l1,
    L2l1,
    Linfl1,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Decide the nullspace property for one support or all supports of size k.
    #[command(group(ArgGroup::new("scope").required(true).args(["k", "support"])))]
    CertifyNsp {
        #[command(flatten)]
        matrix: MatrixArgs,
        #[arg(long)]
        k: Option<usize>,
        /// Comma-separated 0-based indices.
        #[arg(long)]
        support: Option<String>,
        #[arg(long, value_parser = parse_rational)]
        c: Rational,
        #[arg(long)]
        strict: bool,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// All five pseudo-weights of a nonnegative vector.
    Pseudoweight {
        /// Comma-separated rationals such as `2,1,1` or `1/2,3`.
        #[arg(long, allow_hyphen_values = true)]
        vector: String,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Minimum pseudo-weights over the fundamental cone.
    MinPseudoweight {
        #[command(flatten)]
        matrix: MatrixArgs,
        /// awgnc, bsc, bsc-prime, bec or maxfrac; all when omitted.
        #[arg(long, value_parser = parse_kind)]
        kind: Option<PseudoWeightKind>,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Recover a signal from its measurements.
    #[command(group(ArgGroup::new("input").required(true).args(["syndrome", "signal"])))]
    DecodeCs {
        #[command(flatten)]
        matrix: MatrixArgs,
        #[arg(long, allow_hyphen_values = true)]
        syndrome: Option<String>,
        /// A signal whose measurements are decoded and compared.
        #[arg(long, allow_hyphen_values = true)]
        signal: Option<String>,
        #[arg(long, value_enum, default_value = "lpd")]
        decoder: CsDecoder,
        /// Sparsity limit for the exhaustive decoder.
        #[arg(long, default_value_t = 2)]
        k: usize,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// LP and ML channel decoding of one input, or a channel sweep.
    #[command(group(ArgGroup::new("input").required(true).args(["llr", "received", "channel"])))]
    DecodeCc {
        #[command(flatten)]
        matrix: MatrixArgs,
        #[arg(long, allow_hyphen_values = true)]
        llr: Option<String>,
        /// Hard-decision bits, decoded with unit BSC LLRs.
        #[arg(long)]
        received: Option<String>,
        /// `bsc:p` or `awgnc:sigma`; compares LP and ML objectives over random trials.
        #[arg(long, value_parser = parse_channel)]
        channel: Option<ChannelSpec>,
        #[arg(long, default_value_t = 100, value_parser = clap::value_parser!(u64).range(1..))]
        trials: u64,
        #[command(flatten)]
        seed: SeedArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Map nullspace vectors to the fundamental cone and verify membership.
    BridgeCheck {
        #[command(flatten)]
        matrix: MatrixArgs,
        /// A single nullspace vector; random ones when omitted.
        #[arg(long, allow_hyphen_values = true)]
        vector: Option<String>,
        #[arg(long, default_value_t = 1000, value_parser = clap::value_parser!(u64).range(1..))]
        trials: u64,
        #[command(flatten)]
        seed: SeedArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Check that flip sets corrected by CC-LPD are recovered by CS-LPD.
    Translate {
        #[command(flatten)]
        matrix: MatrixArgs,
        #[arg(long)]
        k: usize,
        #[arg(long, default_value_t = 100, value_parser = clap::value_parser!(u64).range(1..))]
        trials: u64,
        /// Real signals tried per corrected flip set.
        #[arg(long, default_value_t = 1)]
        signals: usize,
        #[command(flatten)]
        seed: SeedArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Zero-violation runs of the ℓ1/ℓ1, ℓ2/ℓ1 and ℓ∞/ℓ1 recovery bounds.
    Guarantee {
        #[command(flatten)]
        matrix: MatrixArgs,
        #[arg(long)]
        k: usize,
        /// Bound to test; all three when omitted.
        #[arg(long, value_enum)]
        norm: Option<Norm>,
        /// Constant for ℓ1/ℓ1; the certified maximum when omitted.
        #[arg(long, value_parser = parse_rational)]
        c: Option<Rational>,
        /// Constant for ℓ2/ℓ1 and ℓ∞/ℓ1; the certified minimum weight when omitted.
        #[arg(long, value_parser = parse_rational)]
        cprime: Option<Rational>,
        #[arg(long, default_value_t = 1000, value_parser = clap::value_parser!(u64).range(1..))]
        trials: u64,
        #[command(flatten)]
        seed: SeedArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Compare erasure peeling with back-substitution on random supports.
    PeelEquiv {
        #[command(flatten)]
        matrix: OptionalMatrixArgs,
        /// Support size; random when omitted.
        #[arg(long)]
        k: Option<usize>,
        #[arg(long, default_value_t = 10000, value_parser = clap::value_parser!(u64).range(1..))]
        trials: u64,
        #[command(flatten)]
        seed: SeedArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
}

fn parse_rational(s: &str) -> Result<Rational, String> {
    s.parse::<Rational>().map_err(|e| e.to_string())
}

fn parse_kind(s: &str) -> Result<PseudoWeightKind, String> {
    s.parse().map_err(|e: lpdecode::Error| e.to_string())
}

fn parse_channel(s: &str) -> Result<ChannelSpec, String> {
    s.parse().map_err(|e: lpdecode::Error| e.to_string())
}

/// Why a command did not complete normally.
#[derive(Debug)]
enum Failure {
    Usage(String),
    Core(lpdecode::Error),
    Io(std::io::Error),
    /// Rows were written but some violated a theorem.
    Violations(usize),
}

impl From<lpdecode::Error> for Failure {
    fn from(e: lpdecode::Error) -> Self {
        Failure::Core(e)
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Io(e)
    }
}

fn load_matrix(spec: &str, format: Option<MatrixFormat>) -> Result<BinaryMatrix, Failure> {
    if let Some(name) = spec.strip_prefix("corpus:") {
        return lpdecode::corpus::by_name(name).ok_or_else(|| Failure::Usage(format!("no corpus matrix `{name}`")));
    }
    let text = std::fs::read_to_string(spec).map_err(|e| Failure::Usage(format!("cannot read `{spec}`: {e}")))?;
    let format = format.unwrap_or(if Path::new(spec).extension().is_some_and(|e| e == "alist") {
        MatrixFormat::Alist
    } else {
        MatrixFormat::Dense
    });
    Ok(match format {
        MatrixFormat::Alist => BinaryMatrix::parse_alist(&text)?,
        MatrixFormat::Dense => BinaryMatrix::parse_dense(&text)?,
    })
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    match commands::run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("{}", describe(&f));
            ExitCode::from(exit_code(&f))
        }
    }
}

fn describe(f: &Failure) -> String {
    match f {
        Failure::Violations(n) => format!("soundness violation: {n} trial(s) contradict a theorem"),
        Failure::Core(e @ lpdecode::Error::Soundness(_)) => e.to_string(),
        Failure::Core(e) => format!("error: {e}"),
        Failure::Usage(msg) => format!("error: {msg}"),
        Failure::Io(e) => format!("error: {e}"),
    }
}

fn exit_code(f: &Failure) -> u8 {
    match f {
        Failure::Violations(_) | Failure::Core(lpdecode::Error::Soundness(_)) => 2,
        _ => 1,
    }
}
