use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use hsbasis::BasisKind;

#[derive(Parser, Debug)]
#[command(
    name = "hsbasis",
    version,
    about = "Orthogonal matrix bases, operator expansions and sum-rule checks"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Expand SWAP, the Bell projector or the coherent state in a basis
    Build(BuildArgs),
    /// Run the identity catalogue against a basis
    Verify(VerifyArgs),
    /// Coefficient matrix connecting two bases
    Transform(TransformArgs),
    /// Apply a map through its basis expansion
    Map(MapArgs),
    /// Choi state of a map
    Choi(ChoiArgs),
    /// Squared concurrence of a pure two-party state
    Concurrence(ConcurrenceArgs),
    /// Bloch coefficients of a matrix in a basis
    Decompose(DecomposeArgs),
}

/// Where a basis comes from: `standard`, `gellmann`, `weyl`, `random`
/// (seeded) or `file:<path>`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BasisSpec {
    Builtin(BasisKind),
    Random,
    File(PathBuf),
}

impl FromStr for BasisSpec {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        if let Some(path) = s.strip_prefix("file:") {
            if path.is_empty() {
                return Err("`file:` needs a path".into());
            }
            return Ok(BasisSpec::File(PathBuf::from(path)));
        }
        match s {
            "random" => Ok(BasisSpec::Random),
            "standard" | "gellmann" | "weyl" => Ok(BasisSpec::Builtin(s.parse().map_err(|e| format!("{e}"))?)),
            other => Err(format!("unknown basis `{other}` (expected standard, gellmann, weyl, random or file:<path>)")),
        }
    }
}

impl fmt::Display for BasisSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BasisSpec::Builtin(kind) => write!(f, "{kind}"),
            BasisSpec::Random => f.write_str("random"),
            BasisSpec::File(path) => write!(f, "file:{}", path.display()),
        }
    }
}

#[derive(Args, Debug, Clone)]
pub struct BasisArgs {
    /// Matrix dimension d; optional when the basis comes from a file
    #[arg(long = "dim", short = 'd')]
    pub dim: Option<usize>,
    #[arg(long, default_value = "gellmann")]
    pub basis: BasisSpec,
    /// Seed for random bases and random test operators
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum BuildTarget {
    Swap,
    Bell,
    Coherent,
}

#[derive(Args, Debug)]
pub struct BuildArgs {
    #[arg(value_enum)]
    pub target: BuildTarget,
    #[command(flatten)]
    pub basis: BasisArgs,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum ReportFormat {
    #[default]
    Text,
    Machine,
}

impl ReportFormat {
    pub fn name(self) -> &'static str {
        match self {
            ReportFormat::Text => "text",
            ReportFormat::Machine => "machine",
        }
    }
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    #[command(flatten)]
    pub basis: BasisArgs,
    /// Comma-separated identity names; all identities when omitted
    #[arg(long)]
    pub ids: Option<String>,
    #[arg(long, value_enum, default_value_t = ReportFormat::Text)]
    pub report: ReportFormat,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct TransformArgs {
    #[arg(long)]
    pub from: BasisSpec,
    #[arg(long)]
    pub to: BasisSpec,
    #[arg(long = "dim", short = 'd')]
    pub dim: Option<usize>,
    /// Seed for a random `--from` basis; a random `--to` basis uses seed + 1
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum MapKind {
    Trace,
    Transpose,
    Pt,
    Reshuffle,
    Inversion,
}

#[derive(Args, Debug)]
pub struct MapArgs {
    #[arg(value_enum)]
    pub map: MapKind,
    #[command(flatten)]
    pub basis: BasisArgs,
    /// Matrix document; `d×d` for trace and transpose, `d²×d²` for pt and
    /// reshuffle, either for inversion
    #[arg(long)]
    pub input: PathBuf,
    /// Party transposed by `pt`
    #[arg(long, default_value_t = 2, value_parser = clap::value_parser!(u8).range(1..=2))]
    pub party: u8,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

/// `identity`, `trace`, `transpose` or `file:<path>` holding a `d²×d²`
/// superoperator matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MapSpec {
    Identity,
    Trace,
    Transpose,
    File(PathBuf),
}

impl FromStr for MapSpec {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        if let Some(path) = s.strip_prefix("file:") {
            if path.is_empty() {
                return Err("`file:` needs a path".into());
            }
            return Ok(MapSpec::File(PathBuf::from(path)));
        }
        match s {
            "identity" => Ok(MapSpec::Identity),
            "trace" => Ok(MapSpec::Trace),
            "transpose" => Ok(MapSpec::Transpose),
            other => Err(format!(
                "unknown map `{other}` (expected identity, trace, transpose or file:<path>)"
            )),
        }
    }
}

#[derive(Args, Debug)]
pub struct ChoiArgs {
    #[arg(long)]
    pub map: MapSpec,
    #[command(flatten)]
    pub basis: BasisArgs,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct ConcurrenceArgs {
    /// Vector document with d² amplitudes
    #[arg(long)]
    pub state: PathBuf,
    /// Print the concurrence itself instead of its square
    #[arg(long)]
    pub root: bool,
}

#[derive(Args, Debug)]
pub struct DecomposeArgs {
    #[command(flatten)]
    pub basis: BasisArgs,
    #[arg(long)]
    pub input: PathBuf,
    #[arg(long)]
    pub out: Option<PathBuf>,
}
