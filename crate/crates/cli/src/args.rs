use clap::{Args, Parser, Subcommand, ValueEnum};

use qlacuna::{Family, QuadFormSpec};

use crate::report::Format;

#[derive(Debug, Parser)]
#[command(
    name = "qlacuna",
    version,
    about = "Exact q-series checks and growth profiles for lacunary partition identities"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Dump coefficients of one side of an identity
    Coeffs(CoeffsArgs),
    /// Exact verification suites
    #[command(subcommand)]
    Verify(VerifyCommand),
    /// Growth profile of a family's generating function near z = 1
    Asym(AsymArgs),
    /// Representation partial sums of a definite binary quadratic form
    Quadform(QuadformArgs),
    /// Calibration of the Tauberian comparison on known sequences
    TauberDemo(TauberArgs),
}

#[derive(Debug, Subcommand)]
pub enum VerifyCommand {
    /// Compare both sides of an identity coefficientwise
    Identity(IdentityArgs),
    /// Check the defining relation of a Bailey pair
    Bailey(BaileyArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FamilyArg {
    P1,
    P2,
    P3,
}

impl From<FamilyArg> for Family {
    fn from(f: FamilyArg) -> Family {
        match f {
            FamilyArg::P1 => Family::P1,
            FamilyArg::P2 => Family::P2,
            FamilyArg::P3 => Family::P3,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Side {
    Lhs,
    Rhs,
    Formula,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Which {
    #[value(name = "2.9")]
    P1,
    #[value(name = "2.10")]
    P2,
    #[value(name = "2.11")]
    P3,
}

impl From<Which> for Family {
    fn from(w: Which) -> Family {
        match w {
            Which::P1 => Family::P1,
            Which::P2 => Family::P2,
            Which::P3 => Family::P3,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum PairName {
    #[value(name = "C1")]
    C1,
    #[value(name = "C5")]
    C5,
    #[value(name = "L1")]
    L1,
    #[value(name = "L2")]
    L2,
    #[value(name = "lovejoy-C1")]
    LovejoyC1,
    #[value(name = "lovejoy-C5")]
    LovejoyC5,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Case {
    Geometric,
    GaussCircle,
    Indicator,
}

#[derive(Debug, Args)]
pub struct CoeffsArgs {
    #[arg(long, value_enum)]
    pub family: FamilyArg,
    #[arg(long, value_enum, default_value = "lhs")]
    pub side: Side,
    #[arg(long, default_value_t = 20)]
    pub n_max: u64,
    #[arg(long, value_enum, default_value = "json")]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct IdentityArgs {
    #[arg(long, value_enum)]
    pub which: Which,
    #[arg(long, default_value_t = 500)]
    pub order: i64,
    #[arg(long, value_enum, default_value = "json")]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct BaileyArgs {
    #[arg(long, value_enum)]
    pub pair: PairName,
    #[arg(long, default_value_t = 10)]
    pub n_max: u64,
    #[arg(long, default_value_t = 80)]
    pub order: i64,
    #[arg(long, value_enum, default_value = "json")]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct AsymArgs {
    #[arg(long, value_enum)]
    pub family: FamilyArg,
    #[arg(long, default_value_t = 12)]
    pub k_max: u32,
    #[arg(long, value_enum, default_value = "json")]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct QuadformArgs {
    /// Comma triple `a,b,c`
    #[arg(long, value_parser = parse_form, allow_hyphen_values = true)]
    pub form: QuadFormSpec,
    /// Comma list of increasing bounds
    #[arg(long, value_delimiter = ',', required = true)]
    pub xs: Vec<u64>,
    #[arg(long, value_enum, default_value = "json")]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct TauberArgs {
    #[arg(long, value_enum)]
    pub case: Case,
    #[arg(long, value_enum, default_value = "json")]
    pub format: Format,
}

fn parse_form(s: &str) -> Result<QuadFormSpec, String> {
    s.parse().map_err(|e: qlacuna::Error| e.to_string())
}

impl Command {
    pub fn format(&self) -> Format {
        match self {
            Command::Coeffs(a) => a.format,
            Command::Verify(VerifyCommand::Identity(a)) => a.format,
            Command::Verify(VerifyCommand::Bailey(a)) => a.format,
            Command::Asym(a) => a.format,
            Command::Quadform(a) => a.format,
            Command::TauberDemo(a) => a.format,
        }
    }
}
