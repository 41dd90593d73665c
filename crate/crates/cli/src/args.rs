use std::path::PathBuf;

use betadyn::dimension::Family;
use betadyn::numerics::{parse_rational, DEFAULT_PRECISION};
use betadyn::{BetaSpec, Word};
use clap::{Args, Parser, Subcommand, ValueEnum};
use num_rational::BigRational;

fn beta_arg(s: &str) -> Result<BetaSpec, String> {
    let b: BetaSpec = s.parse().map_err(|e: betadyn::Error| e.to_string())?;
    if b.to_f64() <= 1.0 {
        return Err("base must exceed 1".into());
    }
    Ok(b)
}

fn rational_arg(s: &str) -> Result<BigRational, String> {
    parse_rational(s).map_err(|e| e.to_string())
}

fn word_arg(s: &str) -> Result<Word, String> {
    s.parse::<Word>().map_err(|e| e.to_string())
}

fn family_arg(s: &str) -> Result<Family, String> {
    s.parse::<Family>().map_err(|e| e.to_string())
}

fn unit_f64(s: &str) -> Result<f64, String> {
    let x: f64 = s.parse().map_err(|_| format!("{s:?} is not a number"))?;
    if x.is_finite() {
        Ok(x)
    } else {
        Err("value must be finite".into())
    }
}

#[derive(Parser, Debug)]
#[command(name = "betadyn", version, about = "Beta-expansion run lengths, level sets and parameter space")]
pub struct Cli {
    /// Working precision in bits for base enclosures.
    #[arg(long, global = true, env = "BETADYN_PRECISION", default_value_t = DEFAULT_PRECISION,
          value_parser = clap::value_parser!(u32).range(8..=1_000_000))]
    pub precision: u32,

    /// Worker threads for multi-sample drivers.
    #[arg(long, global = true, default_value_t = 1, value_parser = clap::value_parser!(u32).range(1..=1024))]
    pub jobs: u32,

    /// Emit JSON instead of a text summary.
    #[arg(long, global = true)]
    pub json: bool,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Digits of a point, or the expansion of 1.
    Expand(ExpandArgs),
    /// Parry admissibility of a word.
    Admissible(AdmissibleArgs),
    /// All admissible words of one length, or their count.
    Enumerate(EnumerateArgs),
    /// Cylinder interval of a word or of the point x.
    Cylinder(CylinderArgs),
    /// Run-length profile of a point.
    Runlength(RunlengthArgs),
    /// Exponent estimates of a point.
    Exponents(ExponentsArgs),
    /// Scheduled point of a level set.
    Construct(ConstructArgs),
    /// Nearby point with a designed run pattern.
    Witness(WitnessArgs),
    /// Self-admissibility of a word.
    ParamAdmissible(ParamAdmissibleArgs),
    /// Parameter cylinder of a self-admissible word.
    ParamCylinder(ParamCylinderArgs),
    /// Scheduled base between two endpoints.
    ParamConstruct(ParamConstructArgs),
    /// Nearby base with a designed run pattern.
    ParamWitness(ParamWitnessArgs),
    /// Closed-form dimension values.
    Formula(FormulaArgs),
    /// Box-counting slope of a point sample.
    Boxcount(BoxcountArgs),
    /// Longest zero run statistics over random points.
    Montecarlo(MontecarloArgs),
}

#[derive(Args, Debug)]
pub struct ExpandArgs {
    #[arg(long, value_parser = beta_arg)]
    pub beta: BetaSpec,
    /// Point in [0, 1) as p/q or a decimal literal.
    #[arg(long, value_parser = rational_arg, required_unless_present = "one", conflicts_with = "one")]
    pub x: Option<BigRational>,
    /// Expand 1 instead of a point.
    #[arg(long)]
    pub one: bool,
    #[arg(long)]
    pub n: usize,
    /// Write the digits in chunked stream form.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct AdmissibleArgs {
    #[arg(long, value_parser = beta_arg)]
    pub beta: BetaSpec,
    /// Comma-separated digits.
    #[arg(long, value_parser = word_arg)]
    pub word: Word,
}

#[derive(Args, Debug)]
pub struct EnumerateArgs {
    #[arg(long, value_parser = beta_arg)]
    pub beta: BetaSpec,
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub count_only: bool,
    /// Include the zero-run table up to n.
    #[arg(long)]
    pub gamma: bool,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct CylinderArgs {
    #[arg(long, value_parser = beta_arg)]
    pub beta: BetaSpec,
    #[arg(long, value_parser = word_arg, required_unless_present = "x", conflicts_with = "x")]
    pub word: Option<Word>,
    /// Locate the order-n cylinder containing this point.
    #[arg(long, value_parser = rational_arg, requires = "n")]
    pub x: Option<BigRational>,
    #[arg(long)]
    pub n: Option<usize>,
    /// Also check the length identity for the concatenation with this word.
    #[arg(long, value_parser = word_arg)]
    pub concat: Option<Word>,
}

#[derive(Args, Debug)]
pub struct RunlengthArgs {
    #[arg(long, value_parser = beta_arg)]
    pub beta: BetaSpec,
    #[arg(long, value_parser = rational_arg)]
    pub x: BigRational,
    #[arg(long)]
    pub n: usize,
    /// CSV with columns n, r_n, r_n/n, r_n/log_beta_n.
    #[arg(long)]
    pub profile_out: Option<PathBuf>,
    /// First index of the tail window; defaults to the last fifth.
    #[arg(long)]
    pub tail_start: Option<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Method {
    Runs,
    Orbit,
}

#[derive(Args, Debug)]
pub struct ExponentsArgs {
    #[arg(long, value_parser = beta_arg)]
    pub beta: BetaSpec,
    #[arg(long, value_parser = rational_arg)]
    pub x: BigRational,
    #[arg(long)]
    pub depth: usize,
    #[arg(long, value_enum, default_value_t = Method::Runs)]
    pub method: Method,
    #[arg(long)]
    pub tail_start: Option<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ReportFormat {
    Text,
    Json,
}

#[derive(Args, Debug)]
pub struct ConstructArgs {
    #[arg(long, value_parser = beta_arg)]
    pub beta: BetaSpec,
    #[arg(long, value_parser = rational_arg)]
    pub a: BigRational,
    #[arg(long, value_parser = rational_arg)]
    pub b: BigRational,
    #[arg(long = "N", default_value_t = 2, value_parser = clap::value_parser!(u64).range(1..=64))]
    pub big_n: u64,
    #[arg(long = "K", value_parser = clap::value_parser!(u64).range(1..=16))]
    pub depth: u64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long)]
    pub digits_out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = ReportFormat::Text)]
    pub report: ReportFormat,
    /// Construct this many consecutive seeds and summarize them.
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..))]
    pub seeds: u64,
}

#[derive(Args, Debug)]
pub struct WitnessArgs {
    #[arg(long, value_parser = beta_arg)]
    pub beta: BetaSpec,
    #[arg(long, value_parser = rational_arg)]
    pub target: BigRational,
    #[arg(long, value_parser = rational_arg)]
    pub radius: BigRational,
    #[arg(long, default_value_t = 1)]
    pub n: usize,
}

#[derive(Args, Debug)]
pub struct ParamAdmissibleArgs {
    #[arg(long, value_parser = word_arg)]
    pub word: Word,
}

#[derive(Args, Debug)]
pub struct ParamCylinderArgs {
    #[arg(long, value_parser = word_arg)]
    pub word: Word,
}

#[derive(Args, Debug)]
pub struct ParamConstructArgs {
    #[arg(long, value_parser = beta_arg)]
    pub beta1: BetaSpec,
    #[arg(long, value_parser = beta_arg)]
    pub beta2: BetaSpec,
    #[arg(long, value_parser = rational_arg)]
    pub a: BigRational,
    #[arg(long, value_parser = rational_arg)]
    pub b: BigRational,
    /// Prefix index; chosen automatically when absent.
    #[arg(long = "N")]
    pub big_n: Option<usize>,
    #[arg(long = "K", value_parser = clap::value_parser!(u64).range(1..=16))]
    pub depth: u64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long)]
    pub digits_out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct ParamWitnessArgs {
    #[arg(long, value_parser = rational_arg)]
    pub target: BigRational,
    #[arg(long, value_parser = rational_arg)]
    pub radius: BigRational,
    #[arg(long, default_value_t = 1)]
    pub n: usize,
}

#[derive(Args, Debug)]
pub struct FormulaArgs {
    /// One of Eab, Ea, Fb, Vgeq, U, Uhat, PVgeq, PU, PUhat.
    #[arg(long, value_parser = family_arg)]
    pub family: Family,
    #[arg(long, value_parser = unit_f64)]
    pub a: Option<f64>,
    #[arg(long, value_parser = unit_f64)]
    pub b: Option<f64>,
    #[arg(long, value_parser = unit_f64)]
    pub v: Option<f64>,
    #[arg(long, value_parser = unit_f64)]
    pub vhat: Option<f64>,
}

#[derive(Args, Debug)]
pub struct BoxcountArgs {
    /// Base of the cylinder grid.
    #[arg(long, value_parser = beta_arg)]
    pub beta: BetaSpec,
    /// CSV whose first column holds points of [0, 1) or bases in (1, 2).
    #[arg(long)]
    pub points: PathBuf,
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    pub nmin: u64,
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    pub nmax: u64,
    /// Orders dropped at each end before fitting.
    #[arg(long, default_value_t = 2)]
    pub trim: usize,
}

#[derive(Args, Debug)]
pub struct MontecarloArgs {
    #[arg(long, value_parser = beta_arg)]
    pub beta: BetaSpec,
    #[arg(long, default_value_t = 2000)]
    pub samples: usize,
    #[arg(long, default_value_t = 65536)]
    pub n: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}
