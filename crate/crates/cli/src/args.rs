use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

#[derive(Debug, Parser)]
#[command(name = "fpcheb", version, about = "Factorization statistics of polynomial families over F_p")]
pub struct Cli {
    #[command(flatten)]
    pub global: Global,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Args, Serialize)]
pub struct Global {
    /// Output format; `selftest` prints a plain table when omitted.
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// Write the artifact here instead of stdout.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
    /// Worker threads for censuses and sweeps.
    #[arg(long, global = true, default_value_t = 1)]
    pub workers: usize,
    /// Seed for randomized sub-procedures (equal-degree splitting).
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Validate and print the resolved configuration without computing.
    #[arg(long, global = true)]
    pub dry_run: bool,
    /// Leave the timestamp and wall-clock fields out of the artifact.
    #[arg(long, global = true)]
    pub no_timestamp: bool,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Deterministic search for an irreducible f + b x + a.
    Forge(ForgeArgs),
    /// Forge cost across several primes with a log-log slope fit.
    Scaling(ScalingArgs),
    /// Factorization-type histogram of a family over an interval.
    Census(CensusArgs),
    /// Twisted class sums S(b) for the family f + a.
    Charsum(CharsumArgs),
    /// Interval count of one class, directly and through the completed sum.
    Complete(CompleteArgs),
    /// Joint cubic Artin classes of x^3 + h_i + a.
    Cubic(CubicArgs),
    /// Moebius correlation sum over shifts.
    Chowla(ChowlaArgs),
    /// Shifted divisor or Titchmarsh divisor sums.
    Divsum(DivsumArgs),
    /// Irreducible x^d + a_1 x + a_0 over a box of coefficients.
    Trinomials(TrinomialArgs),
    /// Morse test of a polynomial or a ratio f / g.
    Morse(MorseArgs),
    /// Exceptional set of a one-parameter family by exhaustive scan.
    Badset(BadsetArgs),
    /// Runs the built-in example checks and prints a pass/fail table.
    Selftest,
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Forge(_) => "forge",
            Command::Scaling(_) => "scaling",
            Command::Census(_) => "census",
            Command::Charsum(_) => "charsum",
            Command::Complete(_) => "complete",
            Command::Cubic(_) => "cubic",
            Command::Chowla(_) => "chowla",
            Command::Divsum(_) => "divsum",
            Command::Trinomials(_) => "trinomials",
            Command::Morse(_) => "morse",
            Command::Badset(_) => "badset",
            Command::Selftest => "selftest",
        }
    }
}

/// A prime and a base polynomial, given directly or as a degree.
#[derive(Debug, Args, Serialize)]
pub struct BaseArgs {
    #[arg(long)]
    pub p: u64,
    /// Degree of the default base.
    #[arg(long)]
    pub d: Option<usize>,
    /// Base polynomial in text form, e.g. `p:7;0,4,0,1`.
    #[arg(long)]
    pub base: Option<String>,
}

#[derive(Debug, Args, Serialize)]
pub struct ScheduleArgs {
    /// Number of b values tried per round (default 4d).
    #[arg(long)]
    pub b_prefix: Option<usize>,
    /// Explicit b order as a comma list; sequential when omitted.
    #[arg(long)]
    pub b_order: Option<String>,
    /// c in |I| = ceil(c sqrt(p) ln p), an integer or a fraction like 3/2.
    #[arg(long, default_value = "2")]
    pub interval_factor: String,
    #[arg(long, default_value_t = 0)]
    pub interval_start: u64,
    #[arg(long, default_value_t = 4)]
    pub max_doublings: u32,
}

#[derive(Debug, Args, Serialize)]
pub struct ForgeArgs {
    #[command(flatten)]
    pub base: BaseArgs,
    #[command(flatten)]
    pub schedule: ScheduleArgs,
}

#[derive(Debug, Args, Serialize)]
pub struct ScalingArgs {
    /// Comma list of primes.
    #[arg(long)]
    pub primes: String,
    #[arg(long)]
    pub d: usize,
    /// Integer coefficients of the base, lowest first; `x^d` when omitted.
    #[arg(long, allow_hyphen_values = true)]
    pub coeffs: Option<String>,
    #[command(flatten)]
    pub schedule: ScheduleArgs,
}

#[derive(Debug, Args, Serialize)]
pub struct CensusArgs {
    #[command(flatten)]
    pub base: BaseArgs,
    /// `add-const`, `linear`, `monomial:<m>` or `general:<poly>`.
    #[arg(long, default_value = "add-const")]
    pub shape: String,
    /// Value added to the fixed coefficient of the base.
    #[arg(long, default_value_t = 0)]
    pub fixed: u64,
    /// `M:length[:A:B]`; all of F_p when omitted.
    #[arg(long)]
    pub interval: Option<String>,
    /// Treat the family as having group S_d for the stated reason.
    #[arg(long)]
    pub assert_symmetric: Option<String>,
}

#[derive(Debug, Args, Serialize)]
pub struct CharsumArgs {
    #[arg(long)]
    pub p: u64,
    /// Partition as a comma list; its sum is the degree.
    #[arg(long)]
    pub lambda: String,
    #[arg(long)]
    pub base: Option<String>,
    #[arg(long, conflicts_with = "all_b")]
    pub b: Option<u64>,
    /// Every b in F_p via one FFT, with a Parseval check.
    #[arg(long)]
    pub all_b: bool,
}

#[derive(Debug, Args, Serialize)]
pub struct CompleteArgs {
    #[arg(long)]
    pub p: u64,
    #[arg(long)]
    pub lambda: String,
    #[arg(long)]
    pub base: Option<String>,
    #[arg(long)]
    pub interval: Option<String>,
}

#[derive(Debug, Args, Serialize)]
pub struct CubicArgs {
    #[arg(long)]
    pub p: u64,
    /// Distinct shifts h_i as a comma list.
    #[arg(long)]
    pub shifts: String,
    #[arg(long)]
    pub interval: Option<String>,
    /// Primitive cube root of unity; the smallest one when omitted.
    #[arg(long)]
    pub omega: Option<u64>,
}

#[derive(Debug, Args, Serialize)]
pub struct ChowlaArgs {
    #[command(flatten)]
    pub base: BaseArgs,
    #[arg(long, default_value = "0")]
    pub shifts: String,
    #[arg(long)]
    pub interval: Option<String>,
}

#[derive(Debug, Args, Serialize)]
pub struct DivsumArgs {
    #[command(flatten)]
    pub base: BaseArgs,
    #[arg(long, default_value_t = 2)]
    pub r: u32,
    /// `shifted` or `titchmarsh`.
    #[arg(long, default_value = "shifted")]
    pub mode: String,
    #[arg(long)]
    pub interval: Option<String>,
}

#[derive(Debug, Args, Serialize)]
pub struct TrinomialArgs {
    #[arg(long)]
    pub p: u64,
    #[arg(long)]
    pub d: usize,
    /// Interval for the constant coefficient.
    #[arg(long)]
    pub i0: Option<String>,
    /// Interval for the linear coefficient.
    #[arg(long)]
    pub i1: Option<String>,
}

#[derive(Debug, Args, Serialize)]
pub struct MorseArgs {
    #[command(flatten)]
    pub base: BaseArgs,
    /// Denominator g for the rational test.
    #[arg(long)]
    pub g: Option<String>,
}

#[derive(Debug, Args, Serialize)]
pub struct BadsetArgs {
    #[command(flatten)]
    pub base: BaseArgs,
    #[arg(long, default_value = "linear")]
    pub shape: String,
    #[arg(long, default_value_t = fpcheb::morse::DEFAULT_SCAN_LIMIT)]
    pub scan_limit: u64,
}
