use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use qclone::phase_covariant::PcCase;
use qclone::qmat::LogBase;
use qclone::quadrature::QuadratureSpec;
use qclone::scalar::{format_rational, parse_rational};
use qclone::sdc::SdcSubcase;
use qclone::Rational;

/// Fidelity, Hilbert-Schmidt and entropy reports for 1→2 qubit cloners.
#[derive(Debug, Parser)]
#[command(name = "qclone", version)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Option<Command>,
    #[command(flatten)]
    pub global: Global,
}

#[derive(Debug, Clone, Args)]
pub struct Global {
    /// Logarithm base for entropies.
    #[arg(long, global = true, default_value = "2", value_parser = parse_log_base)]
    pub entropy_base: LogBase,
    /// Averaging rule over α, `gauss:N` or `simpson:N`.
    #[arg(long, global = true, default_value = "gauss:128")]
    pub quadrature: QuadratureSpec,
    #[arg(long, global = true, value_enum, default_value_t = Format::Table)]
    pub format: Format,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
    /// Re-run the command recorded in a JSON report.
    #[arg(long, global = true, value_name = "FILE")]
    pub from_json: Option<PathBuf>,
    /// Evaluate α grids and state samples on all cores.
    #[arg(long, global = true)]
    pub parallel: bool,
    /// Replace deterministic input grids by seeded random samples.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Also report the alternative, non-physical closed forms.
    #[arg(long, global = true)]
    pub as_printed: bool,
    /// Also report `∫ F dα`, next to the default `√(∫ F² dα)`.
    #[arg(long, global = true)]
    pub literal_mean_fidelity: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Table,
    Json,
    Csv,
}

#[derive(Debug, Clone, Subcommand)]
pub enum Command {
    /// Two-state-machine cloner with overlaps (A, C).
    Bh(BhArgs),
    /// Phase-covariant cloner with coefficients (a, b, c).
    Pcc(PccArgs),
    /// Four-state cloner with overlaps (A, B, C).
    Sdc(SdcArgs),
    /// Perfect-cloning curves and their feasible α-intervals.
    Figures(FiguresArgs),
}

#[derive(Debug, Clone, Args)]
pub struct BhArgs {
    /// Recompute the original and improved columns of the comparison table.
    #[arg(long, conflicts_with_all = ["a", "c"])]
    pub table1: bool,
    #[arg(long = "A", id = "a", value_parser = parse_exact, allow_hyphen_values = true, requires = "c")]
    pub a: Option<Rational>,
    #[arg(long = "C", id = "c", value_parser = parse_exact, allow_hyphen_values = true, requires = "a")]
    pub c: Option<Rational>,
    /// Real amplitude α of the input `α|0⟩ + β|1⟩`.
    #[arg(long, value_parser = parse_exact, allow_hyphen_values = true)]
    pub alpha: Option<Rational>,
    /// Check closed forms against matrices on `N` evenly spaced α values.
    #[arg(long, value_name = "N", value_parser = parse_grid)]
    pub alpha_grid: Option<usize>,
}

#[derive(Debug, Clone, Args)]
pub struct PccArgs {
    /// Optimise for case 1, 2 or 3.
    #[arg(long, conflicts_with_all = ["a", "b", "c"])]
    pub case: Option<PcCase>,
    #[arg(long, id = "a", value_parser = parse_exact, allow_hyphen_values = true, requires_all = ["b", "c"])]
    pub a: Option<Rational>,
    #[arg(long, id = "b", value_parser = parse_exact, allow_hyphen_values = true)]
    pub b: Option<Rational>,
    #[arg(long, id = "c", value_parser = parse_exact, allow_hyphen_values = true)]
    pub c: Option<Rational>,
    #[arg(long, value_parser = parse_exact, allow_hyphen_values = true)]
    pub alpha: Option<Rational>,
    /// Relative phase of β, in units of 2π.
    #[arg(long, value_parser = parse_exact, allow_hyphen_values = true, requires = "alpha")]
    pub phase: Option<Rational>,
    /// Number of input states for the universality residuals.
    #[arg(long, default_value_t = 101, value_parser = parse_grid)]
    pub samples: usize,
}

#[derive(Debug, Clone, Args)]
#[command(args_conflicts_with_subcommands = true)]
pub struct SdcArgs {
    #[command(subcommand)]
    pub action: Option<SdcAction>,
    #[arg(long = "A", id = "a", value_parser = parse_exact, allow_hyphen_values = true)]
    pub a: Option<Rational>,
    #[arg(long = "B", id = "b", value_parser = parse_exact, allow_hyphen_values = true)]
    pub b: Option<Rational>,
    #[arg(long = "C", id = "c", value_parser = parse_exact, allow_hyphen_values = true)]
    pub c: Option<Rational>,
    #[arg(long, value_parser = parse_exact, allow_hyphen_values = true)]
    pub alpha: Option<Rational>,
    #[arg(long, value_name = "N", value_parser = parse_grid)]
    pub alpha_grid: Option<usize>,
}

#[derive(Debug, Clone, Subcommand)]
pub enum SdcAction {
    /// Exact minimiser of the averaged Hilbert-Schmidt norm.
    Optimize {
        #[arg(long, default_value = "general")]
        subcase: SdcSubcase,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Figure {
    /// `A = α√(1 − α²)`, `C = 2α² − 1`.
    Fig1,
    /// `A = α/2β`, `B = β/2α`.
    Fig2,
}

impl Figure {
    pub fn subcase(self) -> SdcSubcase {
        match self {
            Figure::Fig1 => SdcSubcase::EqualAB,
            Figure::Fig2 => SdcSubcase::ZeroC,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Figure::Fig1 => "fig1",
            Figure::Fig2 => "fig2",
        }
    }
}

#[derive(Debug, Clone, Args)]
pub struct FiguresArgs {
    #[arg(value_enum)]
    pub figure: Figure,
    #[arg(long, default_value_t = 1001, value_parser = parse_grid)]
    pub samples: usize,
}

fn parse_log_base(s: &str) -> Result<LogBase, String> {
    s.parse()
}

/// Accepts `num/den`, integers and finite decimals, kept exact.
pub fn parse_exact(s: &str) -> Result<Rational, String> {
    parse_rational(s).ok_or_else(|| format!("`{s}` is not a number (use a decimal or num/den)"))
}

fn parse_grid(s: &str) -> Result<usize, String> {
    let n: usize = s.parse().map_err(|_| format!("`{s}` is not a count"))?;
    if n < 2 {
        return Err("need at least 2 points".to_string());
    }
    Ok(n)
}

/// Flags that shape the numbers, as `(flag, value)`; `None` marks a switch.
pub fn global_params(g: &Global) -> Vec<(String, Option<String>)> {
    let mut out = vec![
        ("entropy-base".to_string(), Some(g.entropy_base.to_string())),
        ("quadrature".to_string(), Some(g.quadrature.to_string())),
    ];
    if let Some(seed) = g.seed {
        out.push(("seed".to_string(), Some(seed.to_string())));
    }
    if g.as_printed {
        out.push(("as-printed".to_string(), None));
    }
    if g.literal_mean_fidelity {
        out.push(("literal-mean-fidelity".to_string(), None));
    }
    out
}

pub fn exact_param(name: &str, q: &Option<Rational>) -> Option<(String, Option<String>)> {
    q.as_ref()
        .map(|q| (name.to_string(), Some(format_rational(q))))
}
